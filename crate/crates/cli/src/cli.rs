use std::path::PathBuf;

use baire_core::realisers::CantorRoute;
use baire_core::reductions::VolterraMode;
use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::config::{Operation, Representation, RunConfig};

#[derive(Debug, Parser)]
#[command(name = "baire", version, about = "Certified Baire-category realisers and reductions over [0,1]")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Human,
    /// JSON lines.
    Records,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Dovetail,
    ForceIrrational,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RouteArg {
    ViaBaire,
    ViaEnumeration,
}

#[derive(Debug, Clone, Args)]
pub struct RunArgs {
    /// Instance file (JSON).
    pub instance: PathBuf,
    /// Oracle selector: `builtin`, or a named stub such as `constant:1/2`.
    #[arg(long, default_value = "builtin")]
    pub oracle: String,
    /// Certificates cover D_k and O_n for k, n up to this depth.
    #[arg(long, default_value_t = 16)]
    pub depth: usize,
    /// Report approximations to within 2^-precision.
    #[arg(long, default_value_t = 32)]
    pub precision: u32,
    /// Step budget per realiser stage and per search.
    #[arg(long, env = "BAIRE_BUDGET", default_value_t = 100_000)]
    pub budget: u64,
    /// Stages recorded by `bct`; slots read by `convert`.
    #[arg(long, default_value_t = 32)]
    pub stages: usize,
    /// Separation certificates from the first this many rationals or elements.
    #[arg(long, default_value_t = 32)]
    pub apart: u64,
    /// Highest precision tried when certifying.
    #[arg(long, default_value_t = 256)]
    pub cert_precision: u32,
    #[arg(long, value_enum)]
    pub mode: Option<ModeArg>,
    #[arg(long, value_enum, default_value = "via-baire")]
    pub route: RouteArg,
    /// Also avoid every rational, so the point can be tagged apart from them.
    #[arg(long)]
    pub augment: bool,
    /// Strong Cantor certificates cover this slice A_n.
    #[arg(long, default_value_t = 20)]
    pub slice: usize,
    /// Closed components are resolved to width 2^-k.
    #[arg(long, default_value_t = 8)]
    pub k: u32,
    /// Most points a closed set may have.
    #[arg(long, default_value_t = 64)]
    pub bound: usize,
    /// Bootheel part: 1 (continuity point) or 2 (enumerate a finite discontinuity set).
    #[arg(long, default_value_t = 2)]
    pub part: u8,
    #[arg(long, value_enum, default_value = "r3")]
    pub to: Representation,
    /// Prefix of the dense set on which the height map is checked injective.
    #[arg(long, default_value_t = 256)]
    pub injectivity_prefix: u64,
    #[arg(long, value_enum, default_value = "human")]
    pub format: Format,
    /// Write the full JSON report here.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

impl RunArgs {
    pub fn config(&self, operation: Operation) -> RunConfig {
        let base = RunConfig::new(operation);
        RunConfig {
            operation,
            oracle: self.oracle.clone(),
            depth: self.depth,
            precision: self.precision,
            budget: self.budget,
            stages: self.stages,
            apart: self.apart,
            cert_precision: self.cert_precision,
            mode: match self.mode {
                Some(ModeArg::Dovetail) => VolterraMode::Dovetail,
                Some(ModeArg::ForceIrrational) => VolterraMode::ForceIrrational,
                None => base.mode,
            },
            route: match self.route {
                RouteArg::ViaBaire => CantorRoute::ViaBaire,
                RouteArg::ViaEnumeration => CantorRoute::ViaEnumeration,
            },
            augment: self.augment,
            slice: self.slice,
            k: self.k,
            bound: self.bound,
            part: self.part,
            to: self.to,
            injectivity_prefix: self.injectivity_prefix,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Nested-interval Baire realiser on a dense open sequence.
    Bct(RunArgs),
    /// Continuity point of a function from the Baire realiser.
    ContinuityPoint(RunArgs),
    /// Rational discontinuity or irrational continuity point.
    Volterra(RunArgs),
    /// Common continuity point of `function` and `second`.
    Pair(RunArgs),
    /// Common continuity point of a sequence of functions.
    Sequence(RunArgs),
    /// Point avoiding every closed set from a min-max oracle on h.
    MinmaxToBaire(RunArgs),
    /// Point avoiding every closed set from a continuity oracle on h.
    BaireFromContinuity(RunArgs),
    /// Continuity point from a Volterra oracle.
    ContinuityFromVolterra(RunArgs),
    /// Volterra answer from a pair oracle applied with Thomae's function.
    VolterraFromPair(RunArgs),
    /// Discontinuity in a countable dense set or a continuity point outside it.
    CountableDense(RunArgs),
    /// Point outside a height-countable set.
    StrongCantor(RunArgs),
    /// Enumerate a finite set given as a list.
    OmegaFin(RunArgs),
    /// Convert an open set between representations.
    Convert(RunArgs),
    /// Enumerate a finite closed set from its complement.
    EnumerateClosed(RunArgs),
    /// Witness-producer pipeline.
    Bootheel(RunArgs),
    /// Re-check a JSON report.
    Verify {
        report: PathBuf,
        #[arg(long, value_enum, default_value = "human")]
        format: Format,
    },
    /// Run a suite file of instances in parallel and verify every report.
    Suite {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "human")]
        format: Format,
    },
}

impl Command {
    /// The operation and arguments of a run subcommand.
    pub fn run_args(&self) -> Option<(Operation, &RunArgs)> {
        Some(match self {
            Command::Bct(a) => (Operation::Bct, a),
            Command::ContinuityPoint(a) => (Operation::ContinuityPoint, a),
            Command::Volterra(a) => (Operation::Volterra, a),
            Command::Pair(a) => (Operation::Pair, a),
            Command::Sequence(a) => (Operation::Sequence, a),
            Command::MinmaxToBaire(a) => (Operation::MinmaxToBaire, a),
            Command::BaireFromContinuity(a) => (Operation::BaireFromContinuity, a),
            Command::ContinuityFromVolterra(a) => (Operation::ContinuityFromVolterra, a),
            Command::VolterraFromPair(a) => (Operation::VolterraFromPair, a),
            Command::CountableDense(a) => (Operation::CountableDense, a),
            Command::StrongCantor(a) => (Operation::StrongCantor, a),
            Command::OmegaFin(a) => (Operation::OmegaFin, a),
            Command::Convert(a) => (Operation::Convert, a),
            Command::EnumerateClosed(a) => (Operation::EnumerateClosed, a),
            Command::Bootheel(a) => (Operation::Bootheel, a),
            Command::Verify { .. } | Command::Suite { .. } => return None,
        })
    }
}
