use std::sync::{Arc, Mutex};

use serde::{Deserialize, Serialize};

use crate::error::{Budget, Error};
use crate::interval::RationalInterval;
use crate::open_sets::{dense_witness_search, DenseOpenSequence, WitnessBall};
use crate::rational::Rational;
use crate::real::ExactReal;

/// One nested-interval stage: `interval = (center − shrunk, center + shrunk)` and
/// `(center − radius, center + radius) ⊆ O_n ∩ I_{n−1}` per the stage-`n` witness.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Stage {
    pub n: usize,
    pub interval: RationalInterval,
    pub center: Rational,
    pub radius: Rational,
    /// Precision index the stage-`n` witness was queried at.
    pub witness_precision: u32,
    pub steps: u64,
}

struct BctState {
    seq: DenseOpenSequence,
    stages: Vec<Stage>,
    stage_budget: Option<u64>,
    failure: Option<Error>,
}

impl BctState {
    fn extend_to(&mut self, depth: usize) -> Result<(), Error> {
        while self.stages.len() < depth {
            if let Some(e) = &self.failure {
                return Err(e.clone());
            }
            let n = self.stages.len();
            let outer = self.stages.last().map_or_else(RationalInterval::unit, |s| s.interval.clone());
            let mut budget = Budget::new(self.stage_budget);
            let found = dense_witness_search(&self.seq.set_at(n), &outer, &mut budget);
            let WitnessBall { center, radius, precision } = match found {
                Ok(hit) => hit,
                Err(e) => {
                    let e = match e {
                        Error::BudgetExhausted { steps, .. } => Error::budget(format!("bct stage {n}"), steps),
                        other => other,
                    };
                    self.failure = Some(e.clone());
                    return Err(e);
                }
            };
            // largest power of two not above min(r/2, 2^{-(n+1)})
            let cap = Rational::min_of(&radius.div_pow2(1), &Rational::pow2_neg(n as u32 + 1));
            let shrunk = Rational::pow2_neg(cap.floor_pow2_exponent());
            self.stages.push(Stage {
                n,
                interval: RationalInterval::ball(&center, &shrunk),
                center,
                radius,
                witness_precision: precision,
                steps: budget.used(),
            });
        }
        Ok(())
    }
}

/// Output of a Baire realiser: a real plus, for our own realiser, its stage trace.
#[derive(Clone)]
pub struct BairePoint {
    value: ExactReal,
    state: Option<Arc<Mutex<BctState>>>,
}

impl BairePoint {
    /// A bare point with no trace, as an external oracle might return.
    pub fn from_value(value: ExactReal) -> Self {
        BairePoint { value, state: None }
    }

    /// The point. Its approximations extend the trace lazily and panic if a
    /// stage search fails, so call [`BairePoint::ensure_depth`] first.
    pub fn value(&self) -> &ExactReal {
        &self.value
    }

    pub fn has_trace(&self) -> bool {
        self.state.is_some()
    }

    /// Computes the first `depth` stages.
    pub fn ensure_depth(&self, depth: usize) -> Result<(), Error> {
        match &self.state {
            Some(s) => s.lock().expect("bct state poisoned").extend_to(depth),
            None => Ok(()),
        }
    }

    /// The first `depth` stages; empty for trace-less points.
    pub fn trace(&self, depth: usize) -> Result<Vec<Stage>, Error> {
        match &self.state {
            Some(s) => {
                let mut st = s.lock().expect("bct state poisoned");
                st.extend_to(depth)?;
                Ok(st.stages[..depth].to_vec())
            }
            None => Ok(Vec::new()),
        }
    }

    /// Total search steps spent so far.
    pub fn steps(&self) -> u64 {
        self.state.as_ref().map_or(0, |s| s.lock().expect("bct state poisoned").stages.iter().map(|st| st.steps).sum())
    }
}

impl std::fmt::Debug for BairePoint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("BairePoint").field("traced", &self.has_trace()).finish()
    }
}

/// Constructive Baire category: nested intervals `I_n ⊆ O_n`, `width(I_n) ≤ 2^{-n}`.
///
/// `stage_budget` bounds each stage's search. Stages are computed on demand.
pub fn bct_realiser(seq: DenseOpenSequence, stage_budget: Option<u64>) -> BairePoint {
    let state = Arc::new(Mutex::new(BctState { seq, stages: Vec::new(), stage_budget, failure: None }));
    let inner = state.clone();
    let value = ExactReal::from_cauchy_fn(move |k| {
        let mut st = inner.lock().expect("bct state poisoned");
        let depth = k as usize + 2;
        if let Err(e) = st.extend_to(depth) {
            panic!("bct point evaluated past a failed stage: {e}");
        }
        st.stages[k as usize + 1].interval.center()
    });
    BairePoint { value, state: Some(state) }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerate::canonical_rational;
    use crate::open_sets::{OpenR2, OpenR4};
    use crate::certificate::certify_apart;
    use crate::rational::q;

    fn avoid_all_rationals() -> DenseOpenSequence {
        DenseOpenSequence::new(|n| OpenR2::complement_of_finite(vec![canonical_rational(n as u64)]))
    }

    fn check_trace(trace: &[Stage]) {
        let mut outer = RationalInterval::unit();
        for s in trace {
            assert!(s.interval.width() <= Rational::pow2_neg(s.n as u32));
            assert!(s.interval.closure_within(&RationalInterval::ball(&s.center, &s.radius)));
            assert!(RationalInterval::ball(&s.center, &s.radius).within(&outer));
            outer = s.interval.clone();
        }
    }

    #[test]
    fn avoids_enumerated_rationals() {
        let p = bct_realiser(avoid_all_rationals(), Some(100_000));
        let trace = p.trace(32).unwrap();
        check_trace(&trace);
        for n in 0..32u64 {
            let c = certify_apart(p.value(), &canonical_rational(n), 80).unwrap();
            assert!(c.is_consistent());
        }
    }

    #[test]
    fn unconstrained_intervals_halve() {
        let p = bct_realiser(DenseOpenSequence::new(|_| OpenR2::full()), None);
        let trace = p.trace(10).unwrap();
        check_trace(&trace);
        for s in &trace {
            assert_eq!(s.interval.width(), Rational::pow2_neg(s.n as u32 + 1));
        }
        assert_eq!(p.value().approx(0), q(1, 2));
    }

    #[test]
    fn value_is_cauchy_and_inside_trace() {
        let p = bct_realiser(avoid_all_rationals(), None);
        let trace = p.trace(20).unwrap();
        for k in 0..18u32 {
            let a = p.value().approx(k);
            assert!(trace[k as usize + 1].interval.contains(&a));
            for i in 0..3 {
                assert!((&a - p.value().approx(k + i)).abs() <= Rational::pow2_neg(k));
            }
        }
    }

    #[test]
    fn non_dense_stage_exhausts() {
        let seq = DenseOpenSequence::from_r4(|n| {
            if n == 0 {
                OpenR4::from_intervals(vec![RationalInterval::of(q(1, 4), q(3, 4))])
            } else {
                OpenR4::from_intervals(vec![RationalInterval::of(q(0, 1), q(1, 16))])
            }
        });
        let p = bct_realiser(seq, Some(100));
        let err = p.ensure_depth(2).unwrap_err();
        assert!(matches!(err, Error::BudgetExhausted { .. }), "{err:?}");
        assert_eq!(p.trace(1).unwrap().len(), 1);
        assert!(p.trace(2).is_err(), "failure is sticky");
    }
}
