use std::sync::Arc;

use super::{
    continuity_point_from_baire, pair_reduction, volterra_from_baire, ReductionConfig, TaggedPoint,
    VolterraAnswer, VolterraMode,
};
use crate::error::Error;
use crate::gallery::SharedFunction;
use crate::open_sets::DenseOpenSequence;
use crate::rational::Rational;
use crate::real::ExactReal;
use crate::realisers::{bct_realiser, BairePoint};

/// Returns a point of `⋂ O_n` for a dense open sequence.
pub trait BaireRealiserOracle: Send + Sync {
    fn name(&self) -> String;
    fn realise(&self, seq: DenseOpenSequence) -> Result<BairePoint, Error>;
}

/// Returns a continuity point of an enriched function.
pub trait ContinuityPointOracle: Send + Sync {
    fn name(&self) -> String;
    fn continuity_point(&self, f: SharedFunction) -> Result<TaggedPoint, Error>;
}

/// Returns a rational discontinuity or an irrational continuity point.
pub trait VolterraOracle: Send + Sync {
    fn name(&self) -> String;
    fn volterra(&self, f: SharedFunction) -> Result<VolterraAnswer, Error>;
}

/// Returns a common continuity point of two functions, with a mandatory tag.
pub trait PairOracle: Send + Sync {
    fn name(&self) -> String;
    fn common_point(&self, f: SharedFunction, g: SharedFunction) -> Result<TaggedPoint, Error>;
}

/// Returns `(a, b)` with `{x : f(a) ≤ f(x) ≤ f(b)}` infinite.
pub trait MinMaxOracle: Send + Sync {
    fn name(&self) -> String;
    fn min_max(&self, f: SharedFunction) -> Result<(TaggedPoint, TaggedPoint), Error>;
}

/// This library's nested-interval realiser.
#[derive(Debug, Clone, Copy)]
pub struct OwnBct {
    pub stage_budget: Option<u64>,
}

impl BaireRealiserOracle for OwnBct {
    fn name(&self) -> String {
        "bct".into()
    }

    fn realise(&self, seq: DenseOpenSequence) -> Result<BairePoint, Error> {
        Ok(bct_realiser(seq, self.stage_budget))
    }
}

/// Adversarial: ignores its input and answers a fixed rational.
#[derive(Debug, Clone)]
pub struct ConstantBaire(pub Rational);

impl BaireRealiserOracle for ConstantBaire {
    fn name(&self) -> String {
        format!("constant {}", self.0)
    }

    fn realise(&self, _seq: DenseOpenSequence) -> Result<BairePoint, Error> {
        Ok(BairePoint::from_value(ExactReal::from_rational(self.0.clone())))
    }
}

#[derive(Clone)]
pub struct ContinuityViaBaire {
    pub baire: Arc<dyn BaireRealiserOracle>,
    pub config: ReductionConfig,
}

impl ContinuityPointOracle for ContinuityViaBaire {
    fn name(&self) -> String {
        format!("continuity via {}", self.baire.name())
    }

    fn continuity_point(&self, f: SharedFunction) -> Result<TaggedPoint, Error> {
        continuity_point_from_baire(f, self.baire.as_ref(), &self.config)
    }
}

/// Adversarial: a fixed rational declared as such.
#[derive(Debug, Clone)]
pub struct FixedContinuity(pub Rational);

impl ContinuityPointOracle for FixedContinuity {
    fn name(&self) -> String {
        format!("fixed {}", self.0)
    }

    fn continuity_point(&self, _f: SharedFunction) -> Result<TaggedPoint, Error> {
        Ok(TaggedPoint::rational(self.0.clone()))
    }
}

#[derive(Clone)]
pub struct VolterraViaBaire {
    pub baire: Arc<dyn BaireRealiserOracle>,
    pub mode: VolterraMode,
    pub config: ReductionConfig,
}

impl VolterraOracle for VolterraViaBaire {
    fn name(&self) -> String {
        format!("volterra via {}", self.baire.name())
    }

    fn volterra(&self, f: SharedFunction) -> Result<VolterraAnswer, Error> {
        volterra_from_baire(f, self.baire.as_ref(), self.mode, &self.config)
    }
}

/// Adversarial: a fixed answer regardless of the function.
#[derive(Clone)]
pub struct FixedVolterra(pub VolterraAnswer);

impl VolterraOracle for FixedVolterra {
    fn name(&self) -> String {
        "fixed answer".into()
    }

    fn volterra(&self, _f: SharedFunction) -> Result<VolterraAnswer, Error> {
        Ok(self.0.clone())
    }
}

/// Common continuity points from the Baire realiser, always augmented so the tag is meaningful.
#[derive(Clone)]
pub struct PairViaBaire {
    pub baire: Arc<dyn BaireRealiserOracle>,
    pub config: ReductionConfig,
}

impl PairOracle for PairViaBaire {
    fn name(&self) -> String {
        format!("pair via {}", self.baire.name())
    }

    fn common_point(&self, f: SharedFunction, g: SharedFunction) -> Result<TaggedPoint, Error> {
        let config = ReductionConfig { augment: true, ..self.config.clone() };
        pair_reduction(f, g, self.baire.as_ref(), &config)
    }
}

/// Adversarial: a fixed tagged point.
#[derive(Clone)]
pub struct FixedPair(pub TaggedPoint);

impl PairOracle for FixedPair {
    fn name(&self) -> String {
        "fixed point".into()
    }

    fn common_point(&self, _f: SharedFunction, _g: SharedFunction) -> Result<TaggedPoint, Error> {
        Ok(self.0.clone())
    }
}

/// `a = b =` a continuity point. Honest for nonnegative functions that vanish
/// at their continuity points, such as `h`.
#[derive(Clone)]
pub struct MinMaxViaContinuity {
    pub continuity: Arc<dyn ContinuityPointOracle>,
}

impl MinMaxOracle for MinMaxViaContinuity {
    fn name(&self) -> String {
        format!("min-max via {}", self.continuity.name())
    }

    fn min_max(&self, f: SharedFunction) -> Result<(TaggedPoint, TaggedPoint), Error> {
        let y = self.continuity.continuity_point(f)?;
        Ok((y.clone(), y))
    }
}

/// Adversarial or hand-picked: fixed rationals `a`, `b`.
#[derive(Debug, Clone)]
pub struct FixedMinMax(pub Rational, pub Rational);

impl MinMaxOracle for FixedMinMax {
    fn name(&self) -> String {
        format!("fixed {} {}", self.0, self.1)
    }

    fn min_max(&self, _f: SharedFunction) -> Result<(TaggedPoint, TaggedPoint), Error> {
        Ok((TaggedPoint::rational(self.0.clone()), TaggedPoint::rational(self.1.clone())))
    }
}
