//! Baire 1 functions carried together with their oscillation data.
//!
//! Reductions never evaluate a function at an irrational point. They read the
//! oscillation at rationals and the radius witnesses for `[0,1] ∖ D_k`, where
//! `D_k = {x : osc_f(x) ≥ 2^{-k}}`.

mod h;
mod indicator;
mod thomae;

use std::sync::Arc;

use crate::error::Error;
use crate::open_sets::OpenR2;
use crate::rational::Rational;
use crate::real::ExactReal;

pub use h::{make_h, ClosedNowhereDenseSeq, DyadicLevels, FiniteSlices, HFunction, MembershipDecision};
pub use indicator::{dyadic_level_indicator, finite_indicator, zero, DyadicLevelIndicator, FiniteIndicator};
pub use thomae::{thomae, thomae_dk, Thomae};

/// `osc_f(q)` as a real, with the exact rational when one is known.
#[derive(Clone, Debug)]
pub struct OscillationValue {
    pub value: ExactReal,
    pub exact: Option<Rational>,
}

impl OscillationValue {
    pub fn exact(q: Rational) -> Self {
        OscillationValue { value: ExactReal::from_rational(q.clone()), exact: Some(q) }
    }
}

pub trait EnrichedBaire1: Send + Sync {
    fn name(&self) -> String;

    fn eval_at_rational(&self, q: &Rational) -> Result<ExactReal, Error>;

    fn osc_at_rational(&self, q: &Rational) -> Result<OscillationValue, Error>;

    /// Least `m ≤ budget` certifying `osc_f(q) ≥ 2^{-m}`, if one is found.
    fn osc_positive_witness(&self, q: &Rational, budget: u32) -> Option<u32> {
        let osc = self.osc_at_rational(q).ok()?;
        if let Some(e) = &osc.exact {
            return e.least_pow2_exponent_below(budget);
        }
        (0..=budget).find(|&m| osc.value.approx(m + 2) - Rational::pow2_neg(m + 2) >= Rational::pow2_neg(m))
    }

    /// Decides `osc_f(q) = 0` when the instance can. `None` means no hook.
    fn osc_zero_decision(&self, _q: &Rational) -> Option<bool> {
        None
    }

    /// Whether some rational of `[0,1]` is a continuity point, when the instance knows.
    fn rational_continuity_exists(&self) -> Option<bool> {
        None
    }

    /// Radius witness for `[0,1] ∖ D_k`.
    fn complement_of_dk(&self, k: usize) -> OpenR2;
}

pub type SharedFunction = Arc<dyn EnrichedBaire1>;

/// The exact rational value of `f` at `q`; every gallery member has one.
pub fn rational_value(f: &dyn EnrichedBaire1, q: &Rational) -> Result<Rational, Error> {
    let v = f.eval_at_rational(q)?;
    v.as_rational()
        .cloned()
        .ok_or_else(|| Error::InvalidInput(format!("{} has no exact value at {q}", f.name())))
}

/// `max − min` of `f` over `{q + i·2^{-g} : |i| ≤ 2^{g−m}} ∩ [0,1]`. A test oracle.
pub fn brute_force_osc(f: &dyn Fn(&Rational) -> Rational, q: &Rational, m: u32, g: u32) -> Rational {
    assert!(g >= m, "grid must be at least as fine as the window");
    let reach = 1i64 << (g - m);
    let step = Rational::pow2_neg(g);
    let mut lo: Option<Rational> = None;
    let mut hi: Option<Rational> = None;
    for i in -reach..=reach {
        let x = q + &step * Rational::from(i);
        if !x.in_unit_interval() {
            continue;
        }
        let v = f(&x);
        if lo.as_ref().is_none_or(|l| &v < l) {
            lo = Some(v.clone());
        }
        if hi.as_ref().is_none_or(|h| &v > h) {
            hi = Some(v);
        }
    }
    match (lo, hi) {
        (Some(l), Some(h)) => h - l,
        _ => Rational::zero(),
    }
}
