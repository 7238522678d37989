use baire_core::realisers::CantorRoute;
use baire_core::reductions::{ReductionConfig, VolterraMode};
use serde::{Deserialize, Serialize};

use crate::error::CliError;

/// The realiser or reduction a run dispatches to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Operation {
    Bct,
    ContinuityPoint,
    Volterra,
    Pair,
    Sequence,
    MinmaxToBaire,
    BaireFromContinuity,
    ContinuityFromVolterra,
    VolterraFromPair,
    CountableDense,
    StrongCantor,
    OmegaFin,
    Convert,
    EnumerateClosed,
    Bootheel,
}

impl Operation {
    pub fn name(self) -> &'static str {
        match self {
            Operation::Bct => "bct",
            Operation::ContinuityPoint => "continuity-point",
            Operation::Volterra => "volterra",
            Operation::Pair => "pair",
            Operation::Sequence => "sequence",
            Operation::MinmaxToBaire => "minmax-to-baire",
            Operation::BaireFromContinuity => "baire-from-continuity",
            Operation::ContinuityFromVolterra => "continuity-from-volterra",
            Operation::VolterraFromPair => "volterra-from-pair",
            Operation::CountableDense => "countable-dense",
            Operation::StrongCantor => "strong-cantor",
            Operation::OmegaFin => "omega-fin",
            Operation::Convert => "convert",
            Operation::EnumerateClosed => "enumerate-closed",
            Operation::Bootheel => "bootheel",
        }
    }
}

/// Target representation for `convert`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Representation {
    /// Radius witness values at the probes.
    R2,
    /// Distance lower bounds at the probes.
    R3,
    /// The first slots of the interval enumeration built from distances.
    R4,
}

/// Everything that determines a run besides the instance. Embedded in reports.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunConfig {
    pub operation: Operation,
    pub oracle: String,
    pub depth: usize,
    /// Answers are approximated to within `2^{-precision}`.
    pub precision: u32,
    /// Step budget for each realiser stage and for dovetailed searches.
    pub budget: u64,
    /// Stages recorded by `bct`; slots read by `convert`.
    pub stages: usize,
    pub apart: u64,
    pub cert_precision: u32,
    pub mode: VolterraMode,
    pub route: CantorRoute,
    pub augment: bool,
    /// Strong Cantor certificates cover `A_slice`.
    pub slice: usize,
    /// Enumerated closed components have width at most `2^{-k}`.
    pub k: u32,
    pub bound: usize,
    pub part: u8,
    pub to: Representation,
    pub injectivity_prefix: u64,
}

impl RunConfig {
    pub fn new(operation: Operation) -> Self {
        RunConfig {
            operation,
            oracle: "builtin".into(),
            depth: 16,
            precision: 32,
            budget: 100_000,
            stages: 32,
            apart: 32,
            cert_precision: 256,
            mode: match operation {
                Operation::ContinuityFromVolterra => VolterraMode::ForceIrrational,
                _ => VolterraMode::Dovetail,
            },
            route: CantorRoute::ViaBaire,
            augment: false,
            slice: 20,
            k: 8,
            bound: 64,
            part: 2,
            to: Representation::R3,
            injectivity_prefix: 256,
        }
    }

    pub fn validate(&self) -> Result<(), CliError> {
        let positive = [
            ("depth", self.depth as u64),
            ("precision", u64::from(self.precision)),
            ("budget", self.budget),
            ("stages", self.stages as u64),
            ("bound", self.bound as u64),
        ];
        if let Some((name, _)) = positive.iter().find(|(_, v)| *v == 0) {
            return Err(CliError::Malformed(format!("{name} must be positive")));
        }
        if !(1..=2).contains(&self.part) {
            return Err(CliError::Malformed(format!("bootheel part must be 1 or 2, got {}", self.part)));
        }
        Ok(())
    }

    pub fn reduction_config(&self) -> ReductionConfig {
        ReductionConfig {
            depth: self.depth,
            apart: self.apart,
            cert_precision: self.cert_precision,
            stage_budget: Some(self.budget),
            search_budget: self.budget,
            augment: self.augment,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_and_validation() {
        let c = RunConfig::new(Operation::Bct);
        assert!(c.validate().is_ok());
        assert_eq!((c.depth, c.precision, c.budget), (16, 32, 100_000));
        assert!(RunConfig { budget: 0, ..c.clone() }.validate().is_err());
        assert!(RunConfig { part: 3, ..c }.validate().is_err());
        assert_eq!(RunConfig::new(Operation::ContinuityFromVolterra).mode, VolterraMode::ForceIrrational);
    }

    #[test]
    fn operation_names_match_serde() {
        let op = Operation::ContinuityFromVolterra;
        assert_eq!(serde_json::to_string(&op).unwrap(), format!("\"{}\"", op.name()));
    }
}
