//! Reductions between the Baire-category-style principles, written against
//! oracle interfaces. Every output is re-certified here, so a non-conforming
//! oracle produces `CertificateFailure` rather than an answer.

mod bootheel;
mod continuity;
mod countable;
mod oracles;
mod volterra;

use serde::{Deserialize, Serialize};

use crate::certificate::{
    certify_apart_with, certify_ball_with, BallCertificate, OscCertificate, SeparationCertificate,
};
use crate::enumerate::{canonical_prefix, canonical_rational};
use crate::error::Error;
use crate::gallery::EnrichedBaire1;
use crate::open_sets::{DenseOpenSequence, OpenR2};
use crate::rational::Rational;
use crate::real::ExactReal;
use crate::realisers::BairePoint;

pub use bootheel::{
    bootheel_continuity, bootheel_omega_fin, DeltaHook, EnrichedWitness, FiniteComplementDelta, WitnessProducer,
};
pub use continuity::{baire_from_continuity, baire_from_minmax, continuity_point_from_baire};
pub use countable::{
    countable_dense_volterra, CanonicalRationalsD, CountableDenseSet, DenseAnswer, DyadicsD,
};
pub use oracles::{
    BaireRealiserOracle, ConstantBaire, ContinuityPointOracle, ContinuityViaBaire, FixedContinuity, FixedMinMax,
    FixedPair, FixedVolterra, MinMaxOracle, MinMaxViaContinuity, OwnBct, PairOracle, PairViaBaire, VolterraOracle,
    VolterraViaBaire,
};
pub use volterra::{
    common_continuity_point, continuity_from_volterra, pair_reduction, rational_discontinuity_search,
    volterra_from_baire, volterra_from_pair, FunctionSequence, VolterraMode,
};

/// Declared rationality of an oracle's point.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "tag", content = "q", rename_all = "kebab-case")]
pub enum PointTag {
    RationalLiteral(Rational),
    ApartFromRationals,
    /// No claim either way.
    Unclassified,
}

/// One piece of evidence attached to a reduction output.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Certificate {
    /// The point lies outside `D_k` of constituent function `function`.
    OutsideDk { function: usize, k: usize, ball: BallCertificate },
    /// The point lies in `O_n = [0,1] ∖ X_n` of the instance.
    InOpen { n: usize, ball: BallCertificate },
    /// The point differs from element `index` of the relevant enumeration.
    Apart { index: u64, separation: SeparationCertificate },
    /// `osc(point) ≥ 2^{-m}` for constituent function `function`.
    OscPositive { function: usize, osc: OscCertificate },
}

/// An oracle output together with its certificates.
#[derive(Clone, Debug)]
pub struct TaggedPoint {
    pub value: ExactReal,
    pub tag: PointTag,
    /// Stage trace when the point came from this library's Baire realiser.
    pub baire: Option<BairePoint>,
    pub certificates: Vec<Certificate>,
}

impl TaggedPoint {
    pub fn rational(q: Rational) -> Self {
        TaggedPoint {
            value: ExactReal::from_rational(q.clone()),
            tag: PointTag::RationalLiteral(q),
            baire: None,
            certificates: Vec::new(),
        }
    }

    pub fn from_baire(point: BairePoint, tag: PointTag) -> Self {
        TaggedPoint { value: point.value().clone(), tag, baire: Some(point), certificates: Vec::new() }
    }

    pub fn untagged(value: ExactReal) -> Self {
        TaggedPoint { value, tag: PointTag::Unclassified, baire: None, certificates: Vec::new() }
    }

    /// Extends the stage trace far enough to read `approx(m)` safely.
    fn prepare(&self, m: u32) -> Result<(), Error> {
        match &self.baire {
            Some(b) => b.ensure_depth(m as usize + 2),
            None => Ok(()),
        }
    }

    /// Certifies `value ∈ o`.
    pub fn ball(&self, set: usize, o: &OpenR2, max_precision: u32) -> Result<BallCertificate, Error> {
        certify_ball_with(set, o, &self.value, max_precision, |m| self.prepare(m))
    }

    /// Certifies `value ≠ other`.
    pub fn apart(&self, other: &Rational, budget: u32) -> Result<SeparationCertificate, Error> {
        certify_apart_with(&self.value, other, budget, |m| self.prepare(m))
    }

    /// The apart-from-rationals certifier: separation from the `n`-th canonical rational.
    pub fn apart_from_canonical(&self, n: u64, budget: u32) -> Result<SeparationCertificate, Error> {
        self.apart(&canonical_rational(n), budget)
    }

    /// The value's approximation at precision `k`, extending the trace first.
    pub fn approx(&self, k: u32) -> Result<Rational, Error> {
        self.prepare(k)?;
        Ok(self.value.approx(k))
    }
}

/// The two possible certified answers of a Volterra-type reduction.
#[derive(Clone, Debug)]
pub enum VolterraAnswer {
    RationalDiscontinuity { q: Rational, m: u32 },
    IrrationalContinuity(TaggedPoint),
}

impl VolterraAnswer {
    pub fn certificates(&self) -> Vec<Certificate> {
        match self {
            VolterraAnswer::RationalDiscontinuity { q, m } => {
                vec![Certificate::OscPositive { function: 0, osc: OscCertificate { point: q.clone(), m: *m } }]
            }
            VolterraAnswer::IrrationalContinuity(p) => p.certificates.clone(),
        }
    }
}

/// Shared knobs of the reductions.
#[derive(Debug, Clone)]
pub struct ReductionConfig {
    /// Certificates cover `D_k`, `O_n` for `k, n ≤ depth`.
    pub depth: usize,
    /// Apartness is certified from the first `apart` rationals or elements.
    pub apart: u64,
    /// Precision cap for ball and separation certificates.
    pub cert_precision: u32,
    /// Per-stage budget handed to the own Baire realiser.
    pub stage_budget: Option<u64>,
    /// Step cap for dovetailed searches.
    pub search_budget: u64,
    /// Intersect with complements of canonical rationals so outputs are apart from `ℚ`.
    pub augment: bool,
}

impl Default for ReductionConfig {
    fn default() -> Self {
        ReductionConfig {
            depth: 16,
            apart: 32,
            cert_precision: 256,
            stage_budget: Some(100_000),
            search_budget: 10_000,
            augment: false,
        }
    }
}

/// `n ↦ [0,1] ∖ {q_0, …, q_{n−1}}`.
pub fn avoid_rationals_sequence() -> DenseOpenSequence {
    DenseOpenSequence::new(|n| OpenR2::complement_of_finite(canonical_prefix(n)))
}

fn outside_dk(
    p: &TaggedPoint,
    f: &dyn EnrichedBaire1,
    function: usize,
    cfg: &ReductionConfig,
) -> Result<Vec<Certificate>, Error> {
    (0..=cfg.depth)
        .map(|k| {
            let ball = p.ball(k, &f.complement_of_dk(k), cfg.cert_precision).map_err(|_| {
                Error::cert(format!("point not certified outside D_{k} of {}", f.name()))
            })?;
            Ok(Certificate::OutsideDk { function, k, ball })
        })
        .collect()
}

fn apart_from_rationals(p: &TaggedPoint, cfg: &ReductionConfig) -> Result<Vec<Certificate>, Error> {
    (0..cfg.apart)
        .map(|i| Ok(Certificate::Apart { index: i, separation: p.apart_from_canonical(i, cfg.cert_precision)? }))
        .collect()
}

fn realise(
    b: &dyn BaireRealiserOracle,
    seq: DenseOpenSequence,
    cfg: &ReductionConfig,
    tag: PointTag,
) -> Result<TaggedPoint, Error> {
    let point = b.realise(seq)?;
    point.ensure_depth(cfg.depth + 2)?;
    Ok(TaggedPoint::from_baire(point, tag))
}
