use super::{EnrichedBaire1, OscillationValue};
use crate::error::Error;
use crate::open_sets::{witness, OpenR2};
use crate::rational::Rational;
use crate::real::ExactReal;

/// `F_X`: 1 on the finite set `X`, 0 elsewhere. Its own oscillation.
#[derive(Debug, Clone)]
pub struct FiniteIndicator {
    points: Vec<Rational>,
}

pub fn finite_indicator(mut points: Vec<Rational>) -> FiniteIndicator {
    points.sort();
    points.dedup();
    FiniteIndicator { points }
}

/// The constant zero function, i.e. `F_∅`.
pub fn zero() -> FiniteIndicator {
    finite_indicator(Vec::new())
}

impl FiniteIndicator {
    pub fn points(&self) -> &[Rational] {
        &self.points
    }

    fn value(&self, q: &Rational) -> Rational {
        if self.points.binary_search(q).is_ok() {
            Rational::one()
        } else {
            Rational::zero()
        }
    }
}

impl EnrichedBaire1 for FiniteIndicator {
    fn name(&self) -> String {
        if self.points.is_empty() {
            "zero".into()
        } else {
            "finite-indicator".into()
        }
    }

    fn eval_at_rational(&self, q: &Rational) -> Result<ExactReal, Error> {
        Ok(ExactReal::from_rational(self.value(q)))
    }

    fn osc_at_rational(&self, q: &Rational) -> Result<OscillationValue, Error> {
        Ok(OscillationValue::exact(self.value(q)))
    }

    fn osc_zero_decision(&self, q: &Rational) -> Option<bool> {
        Some(self.value(q).is_zero())
    }

    fn rational_continuity_exists(&self) -> Option<bool> {
        Some(true)
    }

    fn complement_of_dk(&self, _k: usize) -> OpenR2 {
        OpenR2::complement_of_finite(self.points.clone())
    }
}

/// `F_X` for `X` = odd multiples of `2^{-(level+1)}`, with a closed-form witness.
#[derive(Debug, Clone, Copy)]
pub struct DyadicLevelIndicator {
    pub level: u32,
}

pub fn dyadic_level_indicator(level: u32) -> DyadicLevelIndicator {
    DyadicLevelIndicator { level }
}

impl DyadicLevelIndicator {
    fn value(&self, q: &Rational) -> Rational {
        let d = q.denom();
        if d.bits() == u64::from(self.level) + 2 && d.trailing_zeros() == Some(u64::from(self.level) + 1) {
            Rational::one()
        } else {
            Rational::zero()
        }
    }
}

impl EnrichedBaire1 for DyadicLevelIndicator {
    fn name(&self) -> String {
        format!("dyadic-level-indicator-{}", self.level)
    }

    fn eval_at_rational(&self, q: &Rational) -> Result<ExactReal, Error> {
        Ok(ExactReal::from_rational(self.value(q)))
    }

    fn osc_at_rational(&self, q: &Rational) -> Result<OscillationValue, Error> {
        Ok(OscillationValue::exact(self.value(q)))
    }

    fn osc_zero_decision(&self, q: &Rational) -> Option<bool> {
        Some(self.value(q).is_zero())
    }

    fn rational_continuity_exists(&self) -> Option<bool> {
        Some(true)
    }

    fn complement_of_dk(&self, _k: usize) -> OpenR2 {
        let level = self.level;
        OpenR2::from_fn(move |x, _| witness::odd_dyadic_distance(x, level))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gallery::{brute_force_osc, rational_value};
    use crate::rational::q;

    #[test]
    fn values_and_osc() {
        let f = finite_indicator(vec![q(2, 3), q(1, 3), q(2, 6)]);
        assert_eq!(f.points(), &[q(1, 3), q(2, 3)]);
        assert_eq!(f.eval_at_rational(&q(1, 3)).unwrap().as_rational(), Some(&q(1, 1)));
        assert_eq!(f.eval_at_rational(&q(1, 2)).unwrap().as_rational(), Some(&q(0, 1)));
        assert_eq!(f.osc_at_rational(&q(1, 3)).unwrap().exact, Some(q(1, 1)));
        assert_eq!(f.osc_positive_witness(&q(1, 3), 0), Some(0));
        assert_eq!(f.osc_positive_witness(&q(1, 2), 50), None);
    }

    #[test]
    fn self_oscillation_exact_at_probes() {
        let f = finite_indicator(vec![q(1, 3), q(2, 3), q(1, 2)]);
        let eval = |x: &Rational| rational_value(&f, x).unwrap();
        for probe in crate::enumerate::canonical_prefix(40) {
            let brute = brute_force_osc(&eval, &probe, 8, 12);
            assert_eq!(brute, f.osc_at_rational(&probe).unwrap().exact.unwrap(), "{probe}");
        }
    }

    #[test]
    fn dyadic_level_matches_finite_list() {
        for level in 0..5u32 {
            let den = 1i64 << (level + 1);
            let list = finite_indicator((1..den).step_by(2).map(|k| Rational::new(k, den)).collect());
            let fast = dyadic_level_indicator(level);
            for i in 0..=128i64 {
                let x = Rational::new(i, 128);
                assert_eq!(fast.value(&x), list.value(&x), "level {level} x {x}");
                assert_eq!(fast.complement_of_dk(3).radius(&x, 0), list.complement_of_dk(3).radius(&x, 0));
            }
        }
    }
}
