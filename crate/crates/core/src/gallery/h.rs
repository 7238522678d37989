use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::One;

use super::{EnrichedBaire1, OscillationValue};
use crate::error::Error;
use crate::interval::RationalInterval;
use crate::open_sets::{r4_to_r2, witness, OpenR2, OpenR4};
use crate::rational::Rational;
use crate::real::ExactReal;

/// Decides membership of rationals in the sets `X_n`.
pub trait MembershipDecision: Send + Sync {
    fn contains(&self, q: &Rational, n: usize) -> bool;
    /// Least `n` with `q ∈ X_n`.
    fn least_index(&self, q: &Rational) -> Option<usize>;
}

type R4At = Arc<dyn Fn(usize) -> OpenR4 + Send + Sync>;
type R2At = Arc<dyn Fn(usize) -> OpenR2 + Send + Sync>;

/// Closed nowhere dense sets `X_n`, each given by its open complement.
///
/// `witness_at`, when present, is a closed-form radius witness for the
/// complement; it must agree with the interval enumeration.
#[derive(Clone)]
pub struct ClosedNowhereDenseSeq {
    complement_at: R4At,
    membership: Option<Arc<dyn MembershipDecision>>,
    witness_at: Option<R2At>,
}

impl ClosedNowhereDenseSeq {
    pub fn new(
        complement_at: impl Fn(usize) -> OpenR4 + Send + Sync + 'static,
        membership: Option<Arc<dyn MembershipDecision>>,
    ) -> Self {
        ClosedNowhereDenseSeq { complement_at: Arc::new(complement_at), membership, witness_at: None }
    }

    pub fn with_witness(mut self, witness_at: impl Fn(usize) -> OpenR2 + Send + Sync + 'static) -> Self {
        self.witness_at = Some(Arc::new(witness_at));
        self
    }

    pub fn without_membership(mut self) -> Self {
        self.membership = None;
        self
    }

    pub fn complement_r4(&self, n: usize) -> OpenR4 {
        (self.complement_at)(n)
    }

    /// Radius witness for `[0,1] ∖ X_n`.
    pub fn complement_witness(&self, n: usize) -> OpenR2 {
        match &self.witness_at {
            Some(w) => w(n),
            None => r4_to_r2(&self.complement_r4(n)),
        }
    }

    pub fn membership(&self) -> Option<&Arc<dyn MembershipDecision>> {
        self.membership.as_ref()
    }

    /// `X_n` = odd multiples of `2^{-(n+1)}` in `(0,1)`: `X_0 = {1/2}`, `X_1 = {1/4, 3/4}`, …
    pub fn dyadic_levels() -> Self {
        ClosedNowhereDenseSeq::new(odd_dyadic_complement, Some(Arc::new(DyadicLevels)))
            .with_witness(|n| OpenR2::from_fn(move |x, _| witness::odd_dyadic_distance(x, n as u32)))
    }

    /// Finite `X_n` listed explicitly; sets past the end are empty.
    pub fn finite_slices(slices: Vec<Vec<Rational>>) -> Self {
        let slices: Arc<Vec<Vec<Rational>>> = Arc::new(
            slices
                .into_iter()
                .map(|mut s| {
                    s.sort();
                    s.dedup();
                    s
                })
                .collect(),
        );
        let (a, b) = (slices.clone(), slices.clone());
        ClosedNowhereDenseSeq::new(
            move |n| complement_of_points(a.get(n).map_or(&[][..], Vec::as_slice)),
            Some(Arc::new(FiniteSlices { slices })),
        )
        .with_witness(move |n| OpenR2::complement_of_finite(b.get(n).cloned().unwrap_or_default()))
    }
}

impl fmt::Debug for ClosedNowhereDenseSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ClosedNowhereDenseSeq(membership: {})", self.membership.is_some())
    }
}

/// Intervals whose union over `[0,1]` is the complement of a finite set.
pub fn complement_of_points(points: &[Rational]) -> OpenR4 {
    let mut cuts = vec![Rational::from(-1)];
    cuts.extend(points.iter().cloned());
    cuts.push(Rational::from(2));
    OpenR4::from_intervals(cuts.windows(2).map(|w| RationalInterval::of(w[0].clone(), w[1].clone())).collect())
}

fn odd_dyadic_complement(n: usize) -> OpenR4 {
    let level = n as u32 + 1;
    let count = (1usize << n) + 1;
    OpenR4::from_slots(
        move |j| {
            let den = BigInt::one() << level;
            let lo = Rational::new(BigInt::from(2 * j as i64 - 1), den.clone());
            let hi = Rational::new(BigInt::from(2 * j as i64 + 1), den);
            Some(RationalInterval::of(lo, hi))
        },
        Some(count),
    )
}

#[derive(Debug, Clone, Copy)]
pub struct DyadicLevels;

impl MembershipDecision for DyadicLevels {
    fn contains(&self, q: &Rational, n: usize) -> bool {
        self.least_index(q) == Some(n)
    }

    fn least_index(&self, q: &Rational) -> Option<usize> {
        let d = q.denom();
        let is_pow2 = d.trailing_zeros() == Some(d.bits() - 1);
        let interior = q.is_positive() && *q < Rational::one();
        (is_pow2 && interior).then(|| d.bits() as usize - 2)
    }
}

#[derive(Debug, Clone)]
pub struct FiniteSlices {
    slices: Arc<Vec<Vec<Rational>>>,
}

impl MembershipDecision for FiniteSlices {
    fn contains(&self, q: &Rational, n: usize) -> bool {
        self.slices.get(n).is_some_and(|s| s.binary_search(q).is_ok())
    }

    fn least_index(&self, q: &Rational) -> Option<usize> {
        self.slices.iter().position(|s| s.binary_search(q).is_ok())
    }
}

/// `h(x) = 2^{-(n+1)}` for the least `n` with `x ∈ X_n`, else 0.
#[derive(Clone, Debug)]
pub struct HFunction {
    sets: ClosedNowhereDenseSeq,
}

pub fn make_h(sets: ClosedNowhereDenseSeq) -> HFunction {
    HFunction { sets }
}

impl HFunction {
    pub fn sets(&self) -> &ClosedNowhereDenseSeq {
        &self.sets
    }

    fn value(&self, q: &Rational) -> Result<Rational, Error> {
        let decide = self.sets.membership().ok_or(Error::NeedsMembershipDecision)?;
        Ok(match decide.least_index(q) {
            Some(n) => Rational::pow2_neg(n as u32 + 1),
            None => Rational::zero(),
        })
    }
}

impl EnrichedBaire1 for HFunction {
    fn name(&self) -> String {
        "h".into()
    }

    fn eval_at_rational(&self, q: &Rational) -> Result<ExactReal, Error> {
        self.value(q).map(ExactReal::from_rational)
    }

    fn osc_at_rational(&self, q: &Rational) -> Result<OscillationValue, Error> {
        self.value(q).map(OscillationValue::exact)
    }

    fn osc_zero_decision(&self, q: &Rational) -> Option<bool> {
        self.value(q).ok().map(|v| v.is_zero())
    }

    /// `D_k = X_0 ∪ … ∪ X_{k−1}`; `D_0` is empty since `h ≤ 1/2`.
    fn complement_of_dk(&self, k: usize) -> OpenR2 {
        OpenR2::intersect_all((0..k).map(|n| self.sets.complement_witness(n)).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gallery::{brute_force_osc, rational_value};
    use crate::open_sets::r4_membership;
    use crate::open_sets::Membership;
    use crate::rational::q;

    #[test]
    fn dyadic_h_values() {
        let h = make_h(ClosedNowhereDenseSeq::dyadic_levels());
        assert_eq!(rational_value(&h, &q(1, 2)).unwrap(), q(1, 2));
        assert_eq!(rational_value(&h, &q(1, 3)).unwrap(), Rational::zero());
        assert_eq!(h.osc_at_rational(&q(1, 4)).unwrap().exact, Some(q(1, 4)));
        assert_eq!(rational_value(&h, &q(3, 8)).unwrap(), q(1, 8));
        assert_eq!(rational_value(&h, &q(0, 1)).unwrap(), Rational::zero());
        assert_eq!(rational_value(&h, &q(1, 1)).unwrap(), Rational::zero());
    }

    #[test]
    fn needs_membership_hook() {
        let h = make_h(ClosedNowhereDenseSeq::dyadic_levels().without_membership());
        assert_eq!(h.eval_at_rational(&q(1, 2)).unwrap_err(), Error::NeedsMembershipDecision);
        assert_eq!(h.osc_zero_decision(&q(1, 2)), None);
    }

    #[test]
    fn fast_witness_agrees_with_enumeration() {
        let x = ClosedNowhereDenseSeq::dyadic_levels();
        for n in 0..5 {
            let r4 = x.complement_r4(n);
            let fast = x.complement_witness(n);
            for num in 0..=256i64 {
                let p = q(num, 256);
                let inside = matches!(r4_membership(&r4, &p, r4.len().unwrap()), Membership::InsideWithRadius(_));
                assert_eq!(inside, fast.radius(&p, 0).is_positive(), "n={n} p={p}");
            }
        }
    }

    #[test]
    fn d0_is_empty_and_dk_grows() {
        let h = make_h(ClosedNowhereDenseSeq::dyadic_levels());
        assert_eq!(h.complement_of_dk(0).radius(&q(1, 2), 0), Rational::one());
        assert!(h.complement_of_dk(1).radius(&q(1, 2), 0).is_zero());
        assert!(h.complement_of_dk(1).radius(&q(1, 4), 0).is_positive());
        assert!(h.complement_of_dk(2).radius(&q(1, 4), 0).is_zero());
    }

    #[test]
    fn self_oscillation_on_canonical_probes() {
        let h = make_h(ClosedNowhereDenseSeq::dyadic_levels());
        let eval = |x: &Rational| rational_value(&h, x).unwrap();
        for probe in crate::enumerate::canonical_prefix(30) {
            let brute = brute_force_osc(&eval, &probe, 6, 12);
            let exact = rational_value(&h, &probe).unwrap();
            assert!((brute - exact).abs() <= Rational::pow2_neg(6), "{probe}");
        }
    }

    #[test]
    fn finite_slices_instance() {
        let x = ClosedNowhereDenseSeq::finite_slices(vec![vec![q(1, 3)], vec![q(2, 3), q(1, 3)]]);
        let h = make_h(x.clone());
        assert_eq!(rational_value(&h, &q(1, 3)).unwrap(), q(1, 2));
        assert_eq!(rational_value(&h, &q(2, 3)).unwrap(), q(1, 4));
        assert!(x.complement_witness(5).radius(&q(1, 3), 0).is_positive());
        let r4 = x.complement_r4(1);
        assert_eq!(r4.len(), Some(3));
        assert_eq!(r4_membership(&r4, &q(1, 2), 3), Membership::InsideWithRadius(q(1, 6)));
    }
}
