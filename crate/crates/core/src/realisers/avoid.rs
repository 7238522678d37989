use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::certificate::SeparationCertificate;
use crate::error::Error;
use crate::interval::ClosedInterval;
use crate::rational::Rational;
use crate::real::ExactReal;

/// One trisection step. `excluded` is the stage ball around `a_n`'s approximation
/// (`None` for an empty slot); `gap` is the distance from `interval` to it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrisectionStage {
    pub n: usize,
    pub third: usize,
    pub interval: ClosedInterval,
    pub precision: u32,
    pub excluded: Option<ClosedInterval>,
    pub gap: Option<Rational>,
}

pub type RealSequence = Arc<dyn Fn(usize) -> Option<ExactReal> + Send + Sync>;

struct AvoidState {
    seq: RealSequence,
    stages: Vec<TrisectionStage>,
}

impl AvoidState {
    fn extend_to(&mut self, depth: usize) {
        while self.stages.len() < depth {
            let n = self.stages.len();
            let outer = self
                .stages
                .last()
                .map_or_else(|| ClosedInterval::new(Rational::zero(), Rational::one()), |s| s.interval.clone());
            let third_width = outer.width() / Rational::from(3);
            let thirds: Vec<ClosedInterval> = (0..3)
                .map(|i| {
                    let lo = &outer.lo + &third_width * Rational::from(i);
                    ClosedInterval::new(lo.clone(), lo + &third_width)
                })
                .collect();
            let precision = stage_precision(n);
            let stage = match (self.seq)(n) {
                None => TrisectionStage { n, third: 1, interval: thirds[1].clone(), precision, excluded: None, gap: None },
                Some(a) => {
                    let c = a.approx(precision);
                    let rho = Rational::pow2_neg(precision);
                    let ball = ClosedInterval::new(&c - &rho, &c + &rho);
                    // largest positive gap, ties to the lowest index
                    let (third, gap) = thirds
                        .iter()
                        .enumerate()
                        .map(|(i, t)| (i, t.gap(&ball)))
                        .fold(None::<(usize, Rational)>, |best, (i, g)| match best {
                            Some((_, ref bg)) if *bg >= g => best,
                            _ => Some((i, g)),
                        })
                        .expect("three candidates");
                    assert!(gap.is_positive(), "stage ball is narrower than a third");
                    TrisectionStage { n, third, interval: thirds[third].clone(), precision, excluded: Some(ball), gap: Some(gap) }
                }
            };
            self.stages.push(stage);
        }
    }
}

/// Precision at which the stage-`n` ball `2·2^{-m}` is narrower than a third `3^{-(n+1)}`.
pub fn stage_precision(n: usize) -> u32 {
    BigInt::from(3u8).pow(n as u32 + 1).bits() as u32 + 1
}

/// A point avoiding every listed real, with its trisection trace.
#[derive(Clone)]
pub struct AvoidancePoint {
    value: ExactReal,
    state: Arc<Mutex<AvoidState>>,
}

impl std::fmt::Debug for AvoidancePoint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let depth = self.state.lock().map(|s| s.stages.len()).unwrap_or(0);
        f.debug_struct("AvoidancePoint").field("stages", &depth).finish()
    }
}

impl AvoidancePoint {
    pub fn value(&self) -> &ExactReal {
        &self.value
    }

    pub fn stages(&self, depth: usize) -> Vec<TrisectionStage> {
        let mut st = self.state.lock().expect("avoid state poisoned");
        st.extend_to(depth);
        st.stages[..depth].to_vec()
    }

    /// Certified lower bound on `|y − a_n|` from the trace; `None` for empty slots.
    pub fn separation_radius(&self, n: usize) -> Option<Rational> {
        self.stages(n + 1)[n].gap.clone()
    }

    /// Approximant-level certificate that `y ≠ a_n` when `a_n` is an exact rational.
    pub fn separation(&self, n: usize, budget: u32) -> Result<Option<SeparationCertificate>, Error> {
        let a = (self.state.lock().expect("avoid state poisoned").seq)(n);
        match a.as_ref().and_then(ExactReal::as_rational) {
            Some(q) => crate::certificate::certify_apart(&self.value, q, budget).map(Some),
            None => Ok(None),
        }
    }
}

/// Trisection avoidance: keeps the third farthest from each `a_n`'s stage ball.
pub fn cantor_avoid(seq: impl Fn(usize) -> Option<ExactReal> + Send + Sync + 'static) -> AvoidancePoint {
    let state = Arc::new(Mutex::new(AvoidState { seq: Arc::new(seq), stages: Vec::new() }));
    let inner = state.clone();
    let value = ExactReal::from_cauchy_fn(move |k| {
        let mut st = inner.lock().expect("avoid state poisoned");
        st.extend_to(k as usize + 1);
        st.stages[k as usize].interval.center()
    });
    AvoidancePoint { value, state }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerate::canonical_rational;
    use crate::rational::q;

    #[test]
    fn precision_beats_third_width() {
        for n in 0..60 {
            let m = stage_precision(n);
            let diameter = Rational::pow2_neg(m).mul_pow2(1);
            let third = Rational::new(BigInt::from(1), BigInt::from(3u8).pow(n as u32 + 1));
            assert!(diameter < third, "n={n}");
        }
    }

    #[test]
    fn avoids_canonical_rationals() {
        let y = cantor_avoid(|n| Some(ExactReal::from_rational(canonical_rational(n as u64))));
        for n in 0..=100 {
            let r = y.separation_radius(n).unwrap();
            assert!(r.is_positive());
            let cert = y.separation(n, 400).unwrap().unwrap();
            assert!(cert.is_consistent(), "n={n}");
            let a = canonical_rational(n as u64);
            // trace bound: a's ball is apart from J_n, so |y − a| ≥ gap
            let stages = y.stages(n + 1);
            assert!(stages[n].interval.gap(&ClosedInterval::new(a.clone(), a)) >= r);
        }
    }

    #[test]
    fn constant_sequence_keeps_one_side() {
        let y = cantor_avoid(|_| Some(ExactReal::from_rational(q(1, 2))));
        let stages = y.stages(12);
        assert_ne!(stages[0].third, 1);
        for s in &stages[1..] {
            assert!(!s.interval.contains(&q(1, 2)));
        }
    }

    #[test]
    fn garbage_sequence_still_nests() {
        let y = cantor_avoid(|n| {
            Some(ExactReal::from_cauchy_fn(move |k| Rational::new(BigInt::from((n * 7919 + k as usize) % 101), BigInt::from(101))))
        });
        let stages = y.stages(25);
        let mut outer = ClosedInterval::new(Rational::zero(), Rational::one());
        for (n, s) in stages.iter().enumerate() {
            assert!(s.interval.within(&outer));
            assert_eq!(s.interval.width(), Rational::new(BigInt::from(1), BigInt::from(3u8).pow(n as u32 + 1)));
            outer = s.interval.clone();
        }
    }

    #[test]
    fn empty_slots_take_the_middle() {
        let y = cantor_avoid(|_| None);
        assert_eq!(y.value().approx(5), q(1, 2));
        assert_eq!(y.separation_radius(3), None);
        assert_eq!(y.separation(3, 10).unwrap(), None);
    }
}
