use super::{outside_dk, realise, OwnBct, PointTag, ReductionConfig, TaggedPoint};
use crate::error::Error;
use crate::gallery::{EnrichedBaire1, SharedFunction};
use crate::open_sets::{r3_to_r4, DenseOpenSequence, OpenR2, OpenR3};
use crate::realisers::{enumerate_finite_closed, ClosedEnumeration};

/// Produces radius witnesses for `[0,1] ∖ D_n` from a function's evaluation and oscillation data.
pub trait WitnessProducer: Send + Sync {
    fn witness(&self, f: &dyn EnrichedBaire1, n: usize) -> OpenR2;
}

/// Reads the witness the enriched function already carries.
#[derive(Debug, Clone, Copy, Default)]
pub struct EnrichedWitness;

impl WitnessProducer for EnrichedWitness {
    fn witness(&self, f: &dyn EnrichedBaire1, n: usize) -> OpenR2 {
        f.complement_of_dk(n)
    }
}

/// Distance function for `[0,1] ∖ D_f`.
pub trait DeltaHook: Send + Sync {
    fn distance(&self, f: &dyn EnrichedBaire1) -> Result<OpenR3, Error>;
}

/// Serves functions whose `D_k` is one finite set for every `k ≥ 1`, such as `F_X`.
#[derive(Debug, Clone, Copy, Default)]
pub struct FiniteComplementDelta;

impl DeltaHook for FiniteComplementDelta {
    fn distance(&self, f: &dyn EnrichedBaire1) -> Result<OpenR3, Error> {
        let (low, high) = (f.complement_of_dk(1), f.complement_of_dk(64));
        match (low.known_complement(), high.known_complement()) {
            (Some(a), Some(b)) if a == b => Ok(OpenR3::exact_complement_of_finite(a.to_vec())),
            _ => Err(Error::DeltaHookUnavailable(format!("{} has no finite discontinuity set on record", f.name()))),
        }
    }
}

/// A continuity point from witnesses produced by `w`, realised by the own Baire realiser.
pub fn bootheel_continuity(
    f: SharedFunction,
    w: std::sync::Arc<dyn WitnessProducer>,
    cfg: &ReductionConfig,
) -> Result<TaggedPoint, Error> {
    let g = f.clone();
    let seq = DenseOpenSequence::new(move |n| w.witness(g.as_ref(), n));
    let mut p = realise(&OwnBct { stage_budget: cfg.stage_budget }, seq, cfg, PointTag::Unclassified)?;
    p.certificates = outside_dk(&p, f.as_ref(), 0, cfg)?;
    Ok(p)
}

/// Enumerates the finite discontinuity set of `f` through the distance hook,
/// the interval enumeration of `[0,1] ∖ D_f`, and the closed-set enumerator.
pub fn bootheel_omega_fin(
    f: &dyn EnrichedBaire1,
    delta: &dyn DeltaHook,
    k: u32,
    bound: usize,
    max_stage: usize,
) -> Result<ClosedEnumeration, Error> {
    let distance = delta.distance(f)?;
    enumerate_finite_closed(&r3_to_r4(&distance), bound, k, max_stage)
}
