use std::sync::Arc;

use super::{witness, OpenR2, OpenR4};
use crate::enumerate::{cantor_unpair, interior_dyadic};
use crate::interval::RationalInterval;
use crate::rational::Rational;

type LowerBoundFn = dyn Fn(&Rational, u32) -> Rational + Send + Sync;

/// Distance view: `lower_bound(x, m) ≤ d(x, [0,1] ∖ O)`, non-decreasing in `m`.
#[derive(Clone)]
pub struct OpenR3 {
    lb: Arc<LowerBoundFn>,
}

impl OpenR3 {
    pub fn from_fn(f: impl Fn(&Rational, u32) -> Rational + Send + Sync + 'static) -> Self {
        OpenR3 { lb: Arc::new(f) }
    }

    /// Exact distance to a finite complement; the constant 1 when the complement is empty.
    pub fn exact_complement_of_finite(points: Vec<Rational>) -> Self {
        OpenR3::from_fn(move |x, _| {
            if x.in_unit_interval() {
                witness::distance_to_finite(x, &points)
            } else {
                Rational::zero()
            }
        })
    }

    pub fn empty() -> Self {
        OpenR3::from_fn(|_, _| Rational::zero())
    }

    pub fn lower_bound(&self, x: &Rational, m: u32) -> Rational {
        let lb = (self.lb)(x, m);
        if lb.is_positive() {
            lb
        } else {
            Rational::zero()
        }
    }

    /// A distance lower bound is in particular a radius witness.
    pub fn to_r2(&self) -> OpenR2 {
        let s = self.clone();
        OpenR2::from_fn(move |x, m| s.lower_bound(x, m))
    }
}

/// Interval enumeration from distance bounds.
///
/// Slot `π(j, m)` holds `(q − ℓ, q + ℓ)` for the `j`-th dyadic `q` of `(0,1)` and
/// `ℓ` its stage-`m` lower bound, or nothing when `ℓ = 0`. Dyadic centres keep
/// every point of `O`, endpoints included, covered after a prefix polynomial in
/// its inverse distance.
pub fn r3_to_r4(o: &OpenR3) -> OpenR4 {
    let o = o.clone();
    OpenR4::from_slots(
        move |slot| {
            let (j, m) = cantor_unpair(slot as u64);
            let centre = interior_dyadic(j);
            let l = o.lower_bound(&centre, u32::try_from(m).unwrap_or(u32::MAX));
            l.is_positive().then(|| RationalInterval::ball(&centre, &l))
        },
        None,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::open_sets::r4_to_r3;
    use crate::rational::q;

    #[test]
    fn middle_interval_covers_half() {
        let o = OpenR3::from_fn(|x, _| Rational::max_of(&Rational::zero(), &Rational::min_of(&(x - q(1, 4)), &(q(3, 4) - x))));
        let r4 = r3_to_r4(&o);
        let hit = (0..200).filter_map(|s| r4.interval_at(s)).any(|i| i.inner_radius(&q(1, 2)) >= q(1, 8));
        assert!(hit);
    }

    #[test]
    fn full_set_first_emission_covers_everything() {
        let full = OpenR3::from_fn(|x, _| if x.in_unit_interval() { Rational::one() } else { Rational::zero() });
        let first = r3_to_r4(&full).interval_at(0).unwrap();
        for probe in [q(0, 1), q(1, 1), q(1, 3), q(999, 1000)] {
            assert!(first.contains(&probe));
        }
    }

    #[test]
    fn empty_set_emits_nothing() {
        let r4 = r3_to_r4(&OpenR3::empty());
        assert!((0..5000).all(|s| r4.interval_at(s).is_none()));
    }

    #[test]
    fn roundtrip_covers_endpoint_regions() {
        let base = OpenR4::from_intervals(vec![
            RationalInterval::of(q(-1, 8), q(1, 5)),
            RationalInterval::of(q(1, 3), q(1, 2)),
        ]);
        let back = r3_to_r4(&r4_to_r3(&base));
        let prefix = back.prefix(5000);
        for probe in [q(0, 1), q(1, 64), q(3, 16), q(2, 5), q(31, 64)] {
            assert!(prefix.iter().any(|i| i.contains(&probe)), "{probe} uncovered");
        }
        for outside in [q(1, 5), q(1, 4), q(1, 3), q(1, 2), q(1, 1)] {
            assert!(!prefix.iter().any(|i| i.contains(&outside)), "{outside} wrongly covered");
        }
    }
}
