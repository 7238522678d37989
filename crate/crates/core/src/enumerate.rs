//! Canonical enumerations and pairings used by every dovetailed search.
//!
//! Rationals of `[0,1]` are listed as `0, 1` followed by a breadth-first walk
//! of the Stern–Brocot subtree below `1/2`: `1/2, 1/3, 2/3, 1/4, 2/5, 3/5, 3/4, …`.
//! The walk hits every rational of `(0,1)` exactly once.

use num_bigint::BigInt;

use crate::interval::RationalInterval;
use crate::rational::Rational;

/// The `j`-th rational of the open unit interval in breadth-first Stern–Brocot order.
pub fn interior_rational(j: u64) -> Rational {
    let level = 63 - (j + 1).leading_zeros();
    let pos = j + 1 - (1u64 << level);
    let (mut lp, mut lq) = (BigInt::from(0), BigInt::from(1));
    let (mut hp, mut hq) = (BigInt::from(1), BigInt::from(1));
    let (mut cp, mut cq) = (BigInt::from(1), BigInt::from(2));
    for bit in (0..level).rev() {
        if (pos >> bit) & 1 == 0 {
            hp = cp;
            hq = cq;
        } else {
            lp = cp;
            lq = cq;
        }
        cp = &lp + &hp;
        cq = &lq + &hq;
    }
    Rational::new(cp, cq)
}

/// The `j`-th dyadic of `(0,1)` in breadth-first order: `1/2, 1/4, 3/4, 1/8, …`.
pub fn interior_dyadic(j: u64) -> Rational {
    let level = 63 - (j + 1).leading_zeros();
    let pos = j + 1 - (1u64 << level);
    Rational::new(BigInt::from(2 * pos + 1), BigInt::from(1u8) << (level + 1))
}

/// The `i`-th rational of `[0,1]` in canonical order (`q_0 = 0`, `q_1 = 1`).
pub fn canonical_rational(i: u64) -> Rational {
    match i {
        0 => Rational::zero(),
        1 => Rational::one(),
        _ => interior_rational(i - 2),
    }
}

/// The first `n` canonical rationals.
pub fn canonical_prefix(n: usize) -> Vec<Rational> {
    (0..n as u64).map(canonical_rational).collect()
}

/// The `j`-th rational of an open interval: the affine image of [`interior_rational`].
pub fn rational_in_interval(interval: &RationalInterval, j: u64) -> Rational {
    interval.affine(&interior_rational(j))
}

/// Iterator over the canonical rationals of `[0,1]`.
#[derive(Debug, Clone, Default)]
pub struct CanonicalRationals {
    next: u64,
}

impl CanonicalRationals {
    pub fn new() -> Self {
        CanonicalRationals { next: 0 }
    }
}

impl Iterator for CanonicalRationals {
    type Item = Rational;

    fn next(&mut self) -> Option<Rational> {
        let q = canonical_rational(self.next);
        self.next += 1;
        Some(q)
    }
}

/// Cantor pairing `π(a, b) = (a+b)(a+b+1)/2 + b`.
pub fn cantor_pair(a: u64, b: u64) -> u64 {
    let s = a + b;
    s * (s + 1) / 2 + b
}

/// Inverse of [`cantor_pair`].
pub fn cantor_unpair(z: u64) -> (u64, u64) {
    // diagonal index: largest s with s(s+1)/2 ≤ z
    let mut s = (((8.0 * z as f64 + 1.0).sqrt() - 1.0) / 2.0) as u64;
    while s * (s + 1) / 2 > z {
        s -= 1;
    }
    while (s + 1) * (s + 2) / 2 <= z {
        s += 1;
    }
    let b = z - s * (s + 1) / 2;
    (s - b, b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;
    use num_integer::Integer;
    use std::collections::HashSet;

    #[test]
    fn canonical_prefix_order() {
        let expected = [
            q(0, 1),
            q(1, 1),
            q(1, 2),
            q(1, 3),
            q(2, 3),
            q(1, 4),
            q(2, 5),
            q(3, 5),
            q(3, 4),
            q(1, 5),
        ];
        assert_eq!(canonical_prefix(expected.len()), expected);
    }

    #[test]
    fn enumeration_hits_every_small_fraction_once() {
        // Every p/q with q ≤ 12 appears within depth 12 of the tree (2^13 entries).
        let listed: Vec<Rational> = canonical_prefix((1 << 13) + 2);
        let set: HashSet<Rational> = listed.iter().cloned().collect();
        assert_eq!(set.len(), listed.len(), "duplicate in enumeration");
        for den in 1i64..=12 {
            for num in 0..=den {
                if num.gcd(&den) == 1 {
                    assert!(set.contains(&q(num, den)), "{num}/{den} missing");
                }
            }
        }
        assert!(listed.iter().all(Rational::in_unit_interval));
    }

    #[test]
    fn interval_enumeration_stays_inside() {
        let i = RationalInterval::of(q(1, 4), q(3, 4));
        assert_eq!(rational_in_interval(&i, 0), q(1, 2));
        assert_eq!(rational_in_interval(&i, 1), q(5, 12));
        for j in 0..500 {
            assert!(i.contains(&rational_in_interval(&i, j)));
        }
    }

    #[test]
    fn dyadic_order() {
        let got: Vec<Rational> = (0..7).map(interior_dyadic).collect();
        assert_eq!(got, [q(1, 2), q(1, 4), q(3, 4), q(1, 8), q(3, 8), q(5, 8), q(7, 8)]);
    }

    #[test]
    fn pairing_roundtrip() {
        assert_eq!(cantor_unpair(0), (0, 0));
        assert_eq!(cantor_unpair(1), (1, 0));
        assert_eq!(cantor_unpair(2), (0, 1));
        for a in 0..60 {
            for b in 0..60 {
                assert_eq!(cantor_unpair(cantor_pair(a, b)), (a, b));
            }
        }
        for z in [10u64.pow(12), 10u64.pow(15) + 7] {
            let (a, b) = cantor_unpair(z);
            assert_eq!(cantor_pair(a, b), z);
        }
    }
}
