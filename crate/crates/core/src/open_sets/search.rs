use super::OpenR2;
use crate::enumerate::{cantor_unpair, rational_in_interval};
use crate::error::{Budget, Error};
use crate::interval::RationalInterval;
use crate::rational::Rational;

/// A ball `(center ± radius)` inside a set, found with the witness queried at `precision`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessBall {
    pub center: Rational,
    pub radius: Rational,
    pub precision: u32,
}

/// Finds a ball inside `O ∩ I`.
///
/// Dovetails the canonical rationals of `I` against increasing probe precision
/// and returns the first `(q, r)` with a positive witness, `r` clipped so the
/// ball stays in `I`. Each probe costs one budget step.
pub fn dense_witness_search(
    o: &OpenR2,
    interval: &RationalInterval,
    budget: &mut Budget,
) -> Result<WitnessBall, Error> {
    let mut slot = 0u64;
    loop {
        budget.tick("dense witness search")?;
        let (j, p) = cantor_unpair(slot);
        let q = rational_in_interval(interval, j);
        let precision = u32::try_from(p).unwrap_or(u32::MAX);
        let r = o.radius(&q, precision);
        if r.is_positive() {
            let radius = Rational::min_of(&r, &interval.inner_radius(&q));
            return Ok(WitnessBall { center: q, radius, precision });
        }
        slot += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::open_sets::{r4_to_r2, OpenR4};
    use crate::rational::q;

    fn iv(a: Rational, b: Rational) -> RationalInterval {
        RationalInterval::of(a, b)
    }

    #[test]
    fn avoids_the_gap_point() {
        let o = r4_to_r2(&OpenR4::from_intervals(vec![iv(q(0, 1), q(1, 2)), iv(q(1, 2), q(1, 1))]));
        let i = iv(q(1, 4), q(3, 4));
        let WitnessBall { center: c, radius: r, .. } = dense_witness_search(&o, &i, &mut Budget::unlimited()).unwrap();
        assert_ne!(c, q(1, 2));
        let ball = RationalInterval::ball(&c, &r);
        assert!(ball.within(&i));
        assert!(!ball.contains(&q(1, 2)));
    }

    #[test]
    fn full_set_hits_first_rational() {
        let o = r4_to_r2(&OpenR4::from_intervals(vec![iv(q(0, 1), q(1, 1))]));
        let WitnessBall { center: c, radius: r, .. } = dense_witness_search(&o, &RationalInterval::unit(), &mut Budget::unlimited()).unwrap();
        assert_eq!(c, q(1, 2));
        assert_eq!(r, q(1, 2));
    }

    #[test]
    fn non_dense_exhausts() {
        let o = r4_to_r2(&OpenR4::from_intervals(vec![iv(q(1, 4), q(3, 4))]));
        let err = dense_witness_search(&o, &iv(q(0, 1), q(1, 8)), &mut Budget::limited(1000)).unwrap_err();
        assert!(matches!(err, Error::BudgetExhausted { steps: 1000, .. }));
    }
}
