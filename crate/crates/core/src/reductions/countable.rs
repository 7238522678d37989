use std::collections::HashMap;

use super::{outside_dk, realise, BaireRealiserOracle, Certificate, PointTag, ReductionConfig, TaggedPoint, VolterraMode};
use crate::certificate::OscCertificate;
use crate::enumerate::{canonical_rational, cantor_unpair, interior_dyadic};
use crate::error::Error;
use crate::gallery::SharedFunction;
use crate::open_sets::{DenseOpenSequence, OpenR2};
use crate::rational::Rational;

/// A countable dense subset `D ⊆ [0,1]` enumerated as `d_0, d_1, …`, with an
/// injection `Y : D → ℕ`.
pub trait CountableDenseSet: Send + Sync {
    fn name(&self) -> String;
    fn element(&self, i: u64) -> Rational;
    /// `Y(d_i)`.
    fn height(&self, i: u64) -> u64;
    /// Every `i` with `Y(d_i) ≤ n`.
    fn indices_up_to_height(&self, n: u64) -> Vec<u64>;
}

/// Dyadics of `(0,1)` in order `1/2, 1/4, 3/4, 1/8, …`; `Y` is the rank.
#[derive(Debug, Clone, Copy, Default)]
pub struct DyadicsD;

impl CountableDenseSet for DyadicsD {
    fn name(&self) -> String {
        "dyadics".into()
    }

    fn element(&self, i: u64) -> Rational {
        interior_dyadic(i)
    }

    fn height(&self, i: u64) -> u64 {
        i
    }

    fn indices_up_to_height(&self, n: u64) -> Vec<u64> {
        (0..=n).collect()
    }
}

/// The canonical enumeration of `ℚ ∩ [0,1]`; `Y` is the rank.
#[derive(Debug, Clone, Copy, Default)]
pub struct CanonicalRationalsD;

impl CountableDenseSet for CanonicalRationalsD {
    fn name(&self) -> String {
        "rationals".into()
    }

    fn element(&self, i: u64) -> Rational {
        canonical_rational(i)
    }

    fn height(&self, i: u64) -> u64 {
        i
    }

    fn indices_up_to_height(&self, n: u64) -> Vec<u64> {
        (0..=n).collect()
    }
}

#[derive(Clone, Debug)]
pub enum DenseAnswer {
    /// `f` is discontinuous at `d = d_index`.
    Discontinuity { index: u64, d: Rational, osc: OscCertificate },
    /// A continuity point apart from `d_i` for small `Y(d_i)`.
    Continuity(TaggedPoint),
}

fn check_injective(d: &dyn CountableDenseSet, prefix: u64) -> Result<(), Error> {
    let mut seen: HashMap<u64, u64> = HashMap::new();
    for i in 0..prefix {
        let y = d.height(i);
        if let Some(&first) = seen.get(&y) {
            return Err(Error::InjectivityViolation { first, second: i, height: y });
        }
        seen.insert(y, i);
    }
    Ok(())
}

fn search_step(d: &dyn CountableDenseSet, f: &SharedFunction, step: u64) -> Option<DenseAnswer> {
    let (i, b) = cantor_unpair(step);
    let q = d.element(i);
    let m = f.osc_positive_witness(&q, b.min(u32::MAX as u64) as u32)?;
    Some(DenseAnswer::Discontinuity { index: i, osc: OscCertificate { point: q.clone(), m }, d: q })
}

/// Either a point of `D` where `f` is discontinuous or a continuity point outside `D`.
///
/// The avoidance side feeds `[0,1] ∖ (D_n ∪ {d : Y(d) ≤ n})` to the Baire
/// realiser. `Dovetail` interleaves a discontinuity search over `D` with its stages.
/// `Y` is checked injective on the first `injectivity_prefix` elements.
pub fn countable_dense_volterra(
    d: std::sync::Arc<dyn CountableDenseSet>,
    f: SharedFunction,
    b: &dyn BaireRealiserOracle,
    mode: VolterraMode,
    injectivity_prefix: u64,
    cfg: &ReductionConfig,
) -> Result<DenseAnswer, Error> {
    check_injective(d.as_ref(), injectivity_prefix)?;
    let (d2, f2) = (d.clone(), f.clone());
    let seq = DenseOpenSequence::new(move |n| {
        let low: Vec<Rational> = d2.indices_up_to_height(n as u64).into_iter().map(|i| d2.element(i)).collect();
        f2.complement_of_dk(n).intersect(&OpenR2::complement_of_finite(low))
    });
    let certify = |mut p: TaggedPoint| -> Result<DenseAnswer, Error> {
        let mut certs = outside_dk(&p, f.as_ref(), 0, cfg)?;
        for i in d.indices_up_to_height(cfg.apart.saturating_sub(1)) {
            certs.push(Certificate::Apart { index: i, separation: p.apart(&d.element(i), cfg.cert_precision)? });
        }
        p.certificates = certs;
        Ok(DenseAnswer::Continuity(p))
    };
    match mode {
        VolterraMode::ForceIrrational => certify(realise(b, seq, cfg, PointTag::Unclassified)?),
        VolterraMode::Dovetail => {
            let point = b.realise(seq)?;
            let target = cfg.depth + 2;
            let mut stalled: Option<Error> = None;
            for round in 0..cfg.search_budget.max(target as u64) {
                if round < cfg.search_budget {
                    if let Some(hit) = search_step(d.as_ref(), &f, round) {
                        return Ok(hit);
                    }
                }
                if stalled.is_some() {
                    continue;
                }
                let stages = round as usize + 1;
                if let Err(e) = point.ensure_depth(stages.min(target)) {
                    stalled = Some(e);
                    continue;
                }
                if stages >= target {
                    return certify(TaggedPoint::from_baire(point, PointTag::Unclassified));
                }
            }
            Err(stalled.unwrap_or_else(|| Error::budget("countable dense dovetail", cfg.search_budget)))
        }
    }
}
