//! Open subsets of `[0,1]` under four representations of increasing strength.
//!
//! * [`OpenR1`]: membership probe at rationals.
//! * [`OpenR2`]: radius witness, `r > 0` at `x` means `(x−r, x+r) ∩ [0,1] ⊆ O`.
//! * [`OpenR3`]: stage-indexed lower bounds on the distance to `[0,1] ∖ O`.
//! * [`OpenR4`]: an enumeration of rational intervals whose union is `O`.

mod r3;
mod r4;
mod search;
pub mod witness;

use std::fmt;
use std::sync::Arc;

use crate::rational::Rational;

pub use r3::{r3_to_r4, OpenR3};
pub use r4::{merge_components, r4_membership, r4_to_r2, r4_to_r3, r4_to_r3_lower_bound, Membership, OpenR4};
pub use search::{dense_witness_search, WitnessBall};

/// Membership oracle on rational probes. Interface only: nothing consumes it
/// except post-checks.
#[derive(Clone)]
pub struct OpenR1 {
    member: Arc<dyn Fn(&Rational) -> bool + Send + Sync>,
}

impl OpenR1 {
    pub fn from_fn(f: impl Fn(&Rational) -> bool + Send + Sync + 'static) -> Self {
        OpenR1 { member: Arc::new(f) }
    }

    pub fn member_at_rational(&self, q: &Rational) -> bool {
        (self.member)(q)
    }
}

type RadiusFn = dyn Fn(&Rational, u32) -> Rational + Send + Sync;

/// Radius-witness view of an open set.
#[derive(Clone)]
pub struct OpenR2 {
    witness: Arc<RadiusFn>,
    known_complement: Option<Arc<Vec<Rational>>>,
}

impl OpenR2 {
    /// Wraps a witness. The caller vouches for soundness.
    pub fn from_fn(f: impl Fn(&Rational, u32) -> Rational + Send + Sync + 'static) -> Self {
        OpenR2 { witness: Arc::new(f), known_complement: None }
    }

    /// `[0,1]` itself.
    pub fn full() -> Self {
        OpenR2 { witness: Arc::new(|_, _| Rational::one()), known_complement: Some(Arc::new(Vec::new())) }
    }

    /// `[0,1] ∖ X` for a finite `X`, with the exact distance as witness.
    pub fn complement_of_finite(mut points: Vec<Rational>) -> Self {
        points.sort();
        points.dedup();
        let pts = Arc::new(points);
        let inner = pts.clone();
        OpenR2 {
            witness: Arc::new(move |x, _| witness::distance_to_sorted(x, &inner)),
            known_complement: Some(pts),
        }
    }

    /// Witness radius at `x`; zero outside `[0,1]` and never negative.
    pub fn radius(&self, x: &Rational, precision: u32) -> Rational {
        if !x.in_unit_interval() {
            return Rational::zero();
        }
        let r = (self.witness)(x, precision);
        if r.is_positive() {
            r
        } else {
            Rational::zero()
        }
    }

    /// The finite complement, when the set was built as one.
    pub fn known_complement(&self) -> Option<&[Rational]> {
        self.known_complement.as_deref().map(Vec::as_slice)
    }

    /// Intersection via the smaller of the two radii.
    pub fn intersect(&self, other: &OpenR2) -> OpenR2 {
        OpenR2::intersect_all(vec![self.clone(), other.clone()])
    }

    pub fn intersect_all(sets: Vec<OpenR2>) -> OpenR2 {
        if sets.is_empty() {
            return OpenR2::full();
        }
        // all finite complements: one exact distance to the union, same radii
        if let Some(parts) = sets.iter().map(|s| s.known_complement.clone()).collect::<Option<Vec<_>>>() {
            return OpenR2::complement_of_finite(parts.iter().flat_map(|p| p.iter().cloned()).collect());
        }
        let sets = Arc::new(sets);
        OpenR2 {
            witness: Arc::new(move |x, p| {
                let mut best: Option<Rational> = None;
                for s in sets.iter() {
                    let r = s.radius(x, p);
                    if r.is_zero() {
                        return r;
                    }
                    best = Some(match best {
                        Some(b) if b <= r => b,
                        _ => r,
                    });
                }
                best.unwrap_or_else(Rational::one)
            }),
            known_complement: None,
        }
    }

    /// Membership probe: positive radius at some precision up to `cap`.
    pub fn to_r1(&self, cap: u32) -> OpenR1 {
        let s = self.clone();
        OpenR1::from_fn(move |q| (0..=cap).any(|p| s.radius(q, p).is_positive()))
    }
}

impl fmt::Debug for OpenR2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.known_complement {
            Some(pts) => write!(f, "OpenR2(complement of {} points)", pts.len()),
            None => write!(f, "OpenR2(witness)"),
        }
    }
}

/// A sequence of dense open sets in executable witness form.
#[derive(Clone)]
pub struct DenseOpenSequence {
    set_at: Arc<dyn Fn(usize) -> OpenR2 + Send + Sync>,
    raw_r4_at: Option<Arc<dyn Fn(usize) -> OpenR4 + Send + Sync>>,
}

impl DenseOpenSequence {
    pub fn new(f: impl Fn(usize) -> OpenR2 + Send + Sync + 'static) -> Self {
        DenseOpenSequence { set_at: Arc::new(f), raw_r4_at: None }
    }

    /// Builds the sequence from interval enumerations, keeping them as raw data.
    pub fn from_r4(f: impl Fn(usize) -> OpenR4 + Send + Sync + 'static) -> Self {
        let f: Arc<dyn Fn(usize) -> OpenR4 + Send + Sync> = Arc::new(f);
        let g = f.clone();
        DenseOpenSequence { set_at: Arc::new(move |n| r4_to_r2(&g(n))), raw_r4_at: Some(f) }
    }

    pub fn set_at(&self, n: usize) -> OpenR2 {
        (self.set_at)(n)
    }

    pub fn raw_r4_at(&self, n: usize) -> Option<OpenR4> {
        self.raw_r4_at.as_ref().map(|f| f(n))
    }

    /// Pointwise intersection with another sequence.
    pub fn intersect(&self, other: &DenseOpenSequence) -> DenseOpenSequence {
        let (a, b) = (self.clone(), other.clone());
        DenseOpenSequence::new(move |n| a.set_at(n).intersect(&b.set_at(n)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    #[test]
    fn full_and_finite_complements() {
        let full = OpenR2::full();
        assert_eq!(full.radius(&q(1, 3), 0), Rational::one());
        assert_eq!(full.radius(&q(3, 2), 0), Rational::zero());
        let c = OpenR2::complement_of_finite(vec![q(1, 3), q(2, 3)]);
        assert_eq!(c.radius(&q(1, 2), 0), q(1, 6));
        assert_eq!(c.radius(&q(1, 3), 9), Rational::zero());
        assert_eq!(c.known_complement().unwrap().len(), 2);
    }

    #[test]
    fn intersection_takes_minimum() {
        let a = OpenR2::complement_of_finite(vec![q(1, 2)]);
        let b = OpenR2::complement_of_finite(vec![q(1, 4)]);
        let both = a.intersect(&b);
        assert_eq!(both.radius(&q(3, 8), 0), q(1, 8));
        assert_eq!(both.radius(&q(7, 8), 0), q(3, 8));
        assert_eq!(both.radius(&q(1, 4), 0), Rational::zero());
        assert_eq!(both.known_complement().unwrap(), &[q(1, 4), q(1, 2)]);
        let unknown = a.intersect(&OpenR2::from_fn(|_, _| q(1, 100)));
        assert!(unknown.known_complement().is_none());
        assert_eq!(unknown.radius(&q(1, 4), 0), q(1, 100));
    }

    #[test]
    fn r1_probe_from_witness() {
        let r1 = OpenR2::complement_of_finite(vec![q(1, 2)]).to_r1(4);
        assert!(r1.member_at_rational(&q(1, 3)));
        assert!(!r1.member_at_rational(&q(1, 2)));
        assert!(!r1.member_at_rational(&q(-1, 2)));
    }
}
