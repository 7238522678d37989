use num_bigint::BigInt;
use num_integer::Integer;

use super::{EnrichedBaire1, OscillationValue};
use crate::error::Error;
use crate::open_sets::{witness, OpenR2};
use crate::rational::Rational;
use crate::real::ExactReal;

/// Thomae's function: `1/q` at `p/q` in lowest terms, 0 at irrationals.
#[derive(Debug, Clone, Copy, Default)]
pub struct Thomae;

pub fn thomae() -> Thomae {
    Thomae
}

impl Thomae {
    fn value(q: &Rational) -> Rational {
        Rational::new(BigInt::from(1), q.denom().clone())
    }
}

impl EnrichedBaire1 for Thomae {
    fn name(&self) -> String {
        "thomae".into()
    }

    fn eval_at_rational(&self, q: &Rational) -> Result<ExactReal, Error> {
        Ok(ExactReal::from_rational(Thomae::value(q)))
    }

    fn osc_at_rational(&self, q: &Rational) -> Result<OscillationValue, Error> {
        Ok(OscillationValue::exact(Thomae::value(q)))
    }

    fn osc_positive_witness(&self, q: &Rational, budget: u32) -> Option<u32> {
        // 1/d ≥ 2^{-m} iff d ≤ 2^m
        let m = (q.denom() - 1u32).bits() as u32;
        (m <= budget).then_some(m)
    }

    fn osc_zero_decision(&self, _q: &Rational) -> Option<bool> {
        Some(false)
    }

    fn rational_continuity_exists(&self) -> Option<bool> {
        Some(false)
    }

    fn complement_of_dk(&self, k: usize) -> OpenR2 {
        witness::farey_complement(k as u32)
    }
}

/// `D_k` for Thomae: the fractions of `[0,1]` with denominator at most `2^k`, sorted.
pub fn thomae_dk(k: u32) -> Vec<Rational> {
    let n: i64 = 1 << k;
    let mut out = Vec::new();
    for den in 1..=n {
        for num in 0..=den {
            if num.gcd(&den) == 1 {
                out.push(Rational::new(num, den));
            }
        }
    }
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    #[test]
    fn values() {
        let t = thomae();
        assert_eq!(t.eval_at_rational(&q(1, 2)).unwrap().as_rational(), Some(&q(1, 2)));
        assert_eq!(t.eval_at_rational(&q(2, 4)).unwrap().as_rational(), Some(&q(1, 2)));
        assert_eq!(t.osc_at_rational(&q(1, 3)).unwrap().exact, Some(q(1, 3)));
        assert_eq!(t.eval_at_rational(&q(0, 1)).unwrap().as_rational(), Some(&q(1, 1)));
    }

    #[test]
    fn positive_witness_is_least() {
        let t = thomae();
        for (x, m) in [(q(0, 1), 0), (q(1, 1), 0), (q(1, 2), 1), (q(1, 3), 2), (q(1, 4), 2), (q(1, 5), 3), (q(3, 64), 6)] {
            assert_eq!(t.osc_positive_witness(&x, 32), Some(m), "{x}");
        }
        assert_eq!(t.osc_positive_witness(&q(1, 5), 2), None);
    }

    #[test]
    fn dk_lists() {
        assert_eq!(thomae_dk(0), vec![q(0, 1), q(1, 1)]);
        assert_eq!(thomae_dk(1), vec![q(0, 1), q(1, 2), q(1, 1)]);
        assert_eq!(thomae_dk(2), vec![q(0, 1), q(1, 4), q(1, 3), q(1, 2), q(2, 3), q(3, 4), q(1, 1)]);
    }

    #[test]
    fn complement_matches_finite_list() {
        let t = thomae();
        for k in 0..5u32 {
            let list = thomae_dk(k);
            let o = t.complement_of_dk(k as usize);
            for num in 0..=300i64 {
                let x = q(num, 300);
                let expect = witness::distance_to_finite(&x, &list);
                assert_eq!(o.radius(&x, 0), expect, "k={k} x={x}");
            }
        }
    }
}
