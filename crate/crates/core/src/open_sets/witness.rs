//! Closed-form distance witnesses for the complements that the gallery needs.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::OpenR2;
use crate::rational::Rational;

/// `min |x − p|` over `points`; 1 when `points` is empty.
pub fn distance_to_finite(x: &Rational, points: &[Rational]) -> Rational {
    points.iter().map(|p| (x - p).abs()).min().unwrap_or_else(Rational::one)
}

/// As [`distance_to_finite`] for sorted `points`, by binary search.
pub fn distance_to_sorted(x: &Rational, points: &[Rational]) -> Rational {
    let i = points.partition_point(|p| p < x);
    let below = i.checked_sub(1).map(|j| x - &points[j]);
    let above = points.get(i).map(|p| p - x);
    match (below, above) {
        (Some(a), Some(b)) => Rational::min_of(&a, &b),
        (Some(a), None) => a,
        (None, Some(b)) => b,
        (None, None) => Rational::one(),
    }
}

/// Distance from `x ∈ [0,1]` to the nearest fraction with denominator at most `n`.
///
/// Walks the Stern–Brocot/Farey neighbours of `x` with batched mediant steps,
/// so the cost is logarithmic in the denominators involved.
pub fn farey_distance(x: &Rational, n: &BigInt) -> Rational {
    assert!(x.in_unit_interval(), "farey_distance outside [0,1]");
    let (a, b) = (x.numer().clone(), x.denom().clone());
    if &b <= n {
        return Rational::zero();
    }
    let (mut p1, mut q1) = (BigInt::zero(), BigInt::one());
    let (mut p2, mut q2) = (BigInt::one(), BigInt::one());
    while &(&q1 + &q2) <= n {
        // D = x − p1/q1 and E = p2/q2 − x, both scaled by b·q
        let d: BigInt = &a * &q1 - &b * &p1;
        let e: BigInt = &b * &p2 - &a * &q2;
        let mediant_above = (&p1 + &p2) * &b > &a * (&q1 + &q2);
        if mediant_above {
            let t: BigInt = ((&e - BigInt::one()) / &d).min((n - &q2) / &q1);
            p2 += &t * &p1;
            q2 += &t * &q1;
        } else {
            let t: BigInt = ((&d - BigInt::one()) / &e).min((n - &q1) / &q2);
            p1 += &t * &p2;
            q1 += &t * &q2;
        }
    }
    let left = x - Rational::new(p1, q1);
    let right = Rational::new(p2, q2) - x;
    Rational::min_of(&left, &right)
}

/// `[0,1]` minus every fraction with denominator at most `2^k`.
pub fn farey_complement(k: u32) -> OpenR2 {
    let n = BigInt::one() << k;
    OpenR2::from_fn(move |x, _| farey_distance(x, &n))
}

/// Distance from `x ∈ [0,1]` to the grid `{i/2^level : 0 < i < 2^level}`;
/// 1 when the grid is empty (`level = 0`).
pub fn interior_grid_distance(x: &Rational, level: u32) -> Rational {
    if level == 0 {
        return Rational::one();
    }
    let top = (BigInt::one() << level) - 1;
    let scaled = x.mul_pow2(level);
    let fl = scaled.floor();
    let mut best: Option<Rational> = None;
    for i in [fl.clone(), fl + 1] {
        if i < BigInt::one() || i > top {
            continue;
        }
        let d = (x - Rational::new(i, BigInt::one() << level)).abs();
        best = Some(match best {
            Some(b) if b <= d => b,
            _ => d,
        });
    }
    // x sits beyond the first or last grid point only at the two ends
    best.unwrap_or_else(|| {
        let first = Rational::pow2_neg(level);
        Rational::min_of(&(x - &first).abs(), &(Rational::one() - &first - x).abs())
    })
}

/// Distance from `x ∈ [0,1]` to the odd multiples of `2^{-(n+1)}` in `(0,1)`.
pub fn odd_dyadic_distance(x: &Rational, n: u32) -> Rational {
    let level = n + 1;
    let scaled = x.mul_pow2(level);
    let fl = scaled.floor();
    let lower_odd = if fl.is_odd() { fl } else { fl - 1 };
    let mut best: Option<Rational> = None;
    let top = BigInt::one() << level;
    for i in [lower_odd.clone(), lower_odd + 2] {
        if i < BigInt::one() || i >= top {
            continue;
        }
        let d = (x - Rational::new(i, top.clone())).abs();
        best = Some(match best {
            Some(b) if b <= d => b,
            _ => d,
        });
    }
    best.expect("some odd dyadic is adjacent to any point of [0,1]")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;
    use proptest::prelude::*;

    fn brute_farey(x: &Rational, n: i64) -> Rational {
        let mut best = Rational::one();
        for den in 1..=n {
            for num in 0..=den {
                let d = (x - q(num, den)).abs();
                if d < best {
                    best = d;
                }
            }
        }
        best
    }

    fn brute_grid(x: &Rational, points: impl Iterator<Item = Rational>) -> Rational {
        points.map(|p| (x - p).abs()).min().unwrap_or_else(Rational::one)
    }

    #[test]
    fn finite_distance() {
        assert_eq!(distance_to_finite(&q(1, 2), &[q(1, 3), q(2, 3)]), q(1, 6));
        assert_eq!(distance_to_finite(&q(1, 2), &[]), Rational::one());
        let pts = [q(0, 1), q(1, 3), q(1, 2), q(2, 3)];
        for x in [q(0, 1), q(1, 7), q(2, 5), q(1, 2), q(3, 4), q(1, 1)] {
            assert_eq!(distance_to_sorted(&x, &pts), distance_to_finite(&x, &pts));
        }
        assert_eq!(distance_to_sorted(&q(1, 2), &[]), Rational::one());
    }

    #[test]
    fn farey_small_cases() {
        let four = BigInt::from(4);
        assert_eq!(farey_distance(&q(1, 4), &four), Rational::zero());
        // neighbours of 2/7 in F_4 are 1/4 and 1/3
        assert_eq!(farey_distance(&q(2, 7), &four), q(1, 28));
        assert_eq!(farey_distance(&q(1, 5), &four), q(1, 20));
        assert_eq!(farey_distance(&q(1, 5), &BigInt::one()), q(1, 5));
    }

    #[test]
    fn farey_handles_huge_inputs() {
        let x = Rational::new(BigInt::from(3).pow(200u32), BigInt::from(2).pow(320u32));
        let n = BigInt::one() << 31u32;
        let d = farey_distance(&x, &n);
        assert!(d.is_positive());
        assert!(d < Rational::new(BigInt::one(), n));
    }

    #[test]
    fn grid_and_odd_dyadic() {
        assert_eq!(interior_grid_distance(&q(1, 3), 1), q(1, 6));
        assert_eq!(interior_grid_distance(&q(0, 1), 2), q(1, 4));
        assert_eq!(interior_grid_distance(&q(1, 1), 2), q(1, 4));
        assert_eq!(interior_grid_distance(&q(3, 8), 2), q(1, 8));
        assert_eq!(interior_grid_distance(&q(1, 2), 3), Rational::zero());
        assert_eq!(odd_dyadic_distance(&q(1, 2), 0), Rational::zero());
        assert_eq!(odd_dyadic_distance(&q(1, 2), 1), q(1, 4));
        assert_eq!(odd_dyadic_distance(&q(0, 1), 1), q(1, 4));
        assert_eq!(odd_dyadic_distance(&q(1, 1), 2), q(1, 8));
    }

    proptest! {
        #[test]
        fn farey_matches_brute_force(num in 0i64..500, den in 1i64..500, n in 1i64..24) {
            prop_assume!(num <= den);
            let x = q(num, den);
            prop_assert_eq!(farey_distance(&x, &BigInt::from(n)), brute_farey(&x, n));
        }

        #[test]
        fn grid_matches_brute_force(num in 0i64..=512, level in 0u32..7) {
            let x = q(num, 512);
            let pts = (1..(1i64 << level)).map(|i| q(i, 1 << level));
            prop_assert_eq!(interior_grid_distance(&x, level), brute_grid(&x, pts));
        }

        #[test]
        fn odd_dyadic_matches_brute_force(num in 0i64..=512, n in 0u32..7) {
            let x = q(num, 512);
            let top = 1i64 << (n + 1);
            let pts = (1..top).step_by(2).map(|i| q(i, top));
            prop_assert_eq!(odd_dyadic_distance(&x, n), brute_grid(&x, pts));
        }
    }
}
