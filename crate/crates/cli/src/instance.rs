//! Instance files: JSON descriptions of functions, open sets and sequences.
//! Rationals are written as `"p/q"` strings.

use std::path::Path;
use std::sync::Arc;

use baire_core::enumerate::canonical_prefix;
use baire_core::gallery::{
    dyadic_level_indicator, finite_indicator, make_h, thomae, zero, ClosedNowhereDenseSeq, EnrichedBaire1,
    SharedFunction,
};
use baire_core::interval::RationalInterval;
use baire_core::open_sets::{r3_to_r4, r4_to_r2, DenseOpenSequence, OpenR2, OpenR3, OpenR4};
use baire_core::rational::Rational;
use baire_core::realisers::{ExplicitSlices, HeightCountableSet, HeightDenominator};
use baire_core::reductions::{CanonicalRationalsD, CountableDenseSet, DyadicsD, FunctionSequence};
use serde::{Deserialize, Serialize};

use crate::error::CliError;

/// Everything a run may read. Each subcommand uses the fields it needs.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Instance {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub function: Option<FunctionSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub second: Option<FunctionSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub functions: Option<FunctionsSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sequence: Option<SequenceSpec>,
    /// An open set, for `convert` and `enumerate-closed`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub open: Option<SetSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub probes: Option<Vec<Rational>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub closed: Option<ClosedSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub points: Option<Vec<Rational>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub countable: Option<CountableSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dense: Option<DenseSpec>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "name", rename_all = "kebab-case", deny_unknown_fields)]
pub enum FunctionSpec {
    Thomae,
    Zero,
    FiniteIndicator { points: Vec<Rational> },
    /// `h` over the dyadic levels `X_n` = odd multiples of `2^{-(n+1)}`.
    HDyadic,
    /// `h` over finite sets listed explicitly.
    H { slices: Vec<Vec<Rational>> },
    DyadicLevelIndicator { level: u32 },
}

impl FunctionSpec {
    pub fn build(&self) -> Result<SharedFunction, CliError> {
        Ok(match self {
            FunctionSpec::Thomae => Arc::new(thomae()),
            FunctionSpec::Zero => Arc::new(zero()),
            FunctionSpec::FiniteIndicator { points } => {
                in_unit("finite-indicator", points)?;
                Arc::new(finite_indicator(points.clone()))
            }
            FunctionSpec::HDyadic => Arc::new(make_h(ClosedNowhereDenseSeq::dyadic_levels())),
            FunctionSpec::H { slices } => {
                for s in slices {
                    in_unit("h", s)?;
                }
                Arc::new(make_h(ClosedNowhereDenseSeq::finite_slices(slices.clone())))
            }
            FunctionSpec::DyadicLevelIndicator { level } => Arc::new(dyadic_level_indicator(*level)),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FunctionGenerator {
    /// `f_n` = indicator of the odd multiples of `2^{-(n+1)}`.
    DyadicLevels,
    /// Every `f_n` is Thomae's function.
    Thomae,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FunctionsSpec {
    /// Past the end of the list every function is zero.
    List(Vec<FunctionSpec>),
    Generator { generator: FunctionGenerator },
}

impl FunctionsSpec {
    pub fn build(&self) -> Result<FunctionSequence, CliError> {
        Ok(match self {
            FunctionsSpec::List(specs) => {
                let fs: Vec<SharedFunction> = specs.iter().map(FunctionSpec::build).collect::<Result<_, _>>()?;
                let fs = Arc::new(fs);
                Arc::new(move |n| fs.get(n).cloned().unwrap_or_else(|| Arc::new(zero())))
            }
            FunctionsSpec::Generator { generator: FunctionGenerator::DyadicLevels } => {
                Arc::new(|n| Arc::new(dyadic_level_indicator(n as u32)) as SharedFunction)
            }
            FunctionsSpec::Generator { generator: FunctionGenerator::Thomae } => {
                Arc::new(|_| Arc::new(thomae()) as SharedFunction)
            }
        })
    }
}

/// One open subset of `[0,1]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum SetSpec {
    /// A finite interval enumeration.
    R4 { intervals: Vec<RationalInterval> },
    ComplementOfFinite { points: Vec<Rational> },
    Full,
}

impl SetSpec {
    pub fn validate(&self) -> Result<(), CliError> {
        match self {
            SetSpec::ComplementOfFinite { points } => in_unit("complement-of-finite", points),
            _ => Ok(()),
        }
    }

    pub fn witness(&self) -> OpenR2 {
        match self {
            SetSpec::R4 { intervals } => r4_to_r2(&OpenR4::from_intervals(intervals.clone())),
            SetSpec::ComplementOfFinite { points } => OpenR2::complement_of_finite(points.clone()),
            SetSpec::Full => OpenR2::full(),
        }
    }

    /// The interval enumeration: given for `r4`, derived from the exact distance otherwise.
    pub fn enumeration(&self) -> OpenR4 {
        match self {
            SetSpec::R4 { intervals } => OpenR4::from_intervals(intervals.clone()),
            SetSpec::ComplementOfFinite { points } => r3_to_r4(&OpenR3::exact_complement_of_finite(points.clone())),
            SetSpec::Full => r3_to_r4(&OpenR3::exact_complement_of_finite(Vec::new())),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SequenceGenerator {
    /// `O_n = [0,1] ∖ {q_0, …, q_n}` over the canonical rationals.
    AvoidAllRationals,
    /// `O_n = [0,1] ∖ X_n` for the dyadic levels.
    HDyadic,
    /// `O_n = [0,1] ∖ A_n`, `A_n` the fractions with denominator at most `n`.
    HeightDenominator,
    /// `O_n = [0,1] ∖ D_n` for Thomae's function.
    Thomae,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SequenceSpec {
    /// Past the end of the list every set is `[0,1]`.
    Sets(Vec<SetSpec>),
    Generator { generator: SequenceGenerator },
}

impl SequenceSpec {
    pub fn build(&self) -> Result<DenseOpenSequence, CliError> {
        Ok(match self {
            SequenceSpec::Sets(sets) => {
                for s in sets {
                    s.validate()?;
                }
                let sets = Arc::new(sets.clone());
                DenseOpenSequence::new(move |n| sets.get(n).map_or_else(OpenR2::full, SetSpec::witness))
            }
            SequenceSpec::Generator { generator } => match generator {
                SequenceGenerator::AvoidAllRationals => {
                    DenseOpenSequence::new(|n| OpenR2::complement_of_finite(canonical_prefix(n + 1)))
                }
                SequenceGenerator::HDyadic => {
                    let x = ClosedNowhereDenseSeq::dyadic_levels();
                    DenseOpenSequence::new(move |n| x.complement_witness(n))
                }
                SequenceGenerator::HeightDenominator => {
                    DenseOpenSequence::new(|n| OpenR2::complement_of_finite(HeightDenominator.slice(n)))
                }
                SequenceGenerator::Thomae => {
                    let t = thomae();
                    DenseOpenSequence::new(move |n| t.complement_of_dk(n))
                }
            },
        })
    }
}

/// Closed nowhere dense sets `X_n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum ClosedSpec {
    DyadicLevels,
    FiniteSlices { slices: Vec<Vec<Rational>> },
}

impl ClosedSpec {
    pub fn build(&self) -> Result<ClosedNowhereDenseSeq, CliError> {
        Ok(match self {
            ClosedSpec::DyadicLevels => ClosedNowhereDenseSeq::dyadic_levels(),
            ClosedSpec::FiniteSlices { slices } => {
                for s in slices {
                    in_unit("finite-slices", s)?;
                }
                ClosedNowhereDenseSeq::finite_slices(slices.clone())
            }
        })
    }
}

/// A height-countable set given by nested slices `A_n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum CountableSpec {
    HeightDenominator,
    Slices { slices: Vec<Vec<Rational>> },
}

impl CountableSpec {
    pub fn build(&self) -> Result<Arc<dyn HeightCountableSet>, CliError> {
        Ok(match self {
            CountableSpec::HeightDenominator => Arc::new(HeightDenominator),
            CountableSpec::Slices { slices } => Arc::new(ExplicitSlices::new(slices.clone())?),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DenseSpec {
    Dyadics,
    Rationals,
}

impl DenseSpec {
    pub fn build(&self) -> Arc<dyn CountableDenseSet> {
        match self {
            DenseSpec::Dyadics => Arc::new(DyadicsD),
            DenseSpec::Rationals => Arc::new(CanonicalRationalsD),
        }
    }
}

fn in_unit(what: &str, points: &[Rational]) -> Result<(), CliError> {
    match points.iter().find(|p| !p.in_unit_interval()) {
        Some(p) => Err(CliError::Malformed(format!("{what}: point {p} is outside [0,1]"))),
        None => Ok(()),
    }
}

impl Instance {
    pub fn load(path: &Path) -> Result<Instance, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Malformed(format!("cannot read {}: {e}", path.display())))?;
        Instance::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Instance, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Malformed(e.to_string()))
    }

    pub fn function(&self) -> Result<SharedFunction, CliError> {
        required(&self.function, "function")?.build()
    }

    pub fn second(&self) -> Result<SharedFunction, CliError> {
        required(&self.second, "second")?.build()
    }

    pub fn functions(&self) -> Result<FunctionSequence, CliError> {
        required(&self.functions, "functions")?.build()
    }

    pub fn sequence(&self) -> Result<DenseOpenSequence, CliError> {
        required(&self.sequence, "sequence")?.build()
    }

    pub fn open(&self) -> Result<&SetSpec, CliError> {
        let s = required(&self.open, "open")?;
        s.validate()?;
        Ok(s)
    }

    pub fn closed(&self) -> Result<ClosedNowhereDenseSeq, CliError> {
        required(&self.closed, "closed")?.build()
    }

    pub fn points(&self) -> Result<&[Rational], CliError> {
        Ok(required(&self.points, "points")?)
    }

    pub fn countable(&self) -> Result<Arc<dyn HeightCountableSet>, CliError> {
        required(&self.countable, "countable")?.build()
    }

    pub fn dense(&self) -> Result<Arc<dyn CountableDenseSet>, CliError> {
        Ok(required(&self.dense, "dense")?.build())
    }
}

fn required<'a, T>(field: &'a Option<T>, name: &str) -> Result<&'a T, CliError> {
    field.as_ref().ok_or_else(|| CliError::Malformed(format!("instance has no `{name}` field")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use baire_core::rational::q;

    #[test]
    fn parses_gallery_and_generators() {
        let i = Instance::parse(
            r#"{"function":{"name":"finite-indicator","points":["1/3","2/3"]},
                "sequence":{"generator":"avoid-all-rationals"},
                "functions":{"generator":"dyadic-levels"}}"#,
        )
        .unwrap();
        assert_eq!(i.function, Some(FunctionSpec::FiniteIndicator { points: vec![q(1, 3), q(2, 3)] }));
        assert_eq!(i.sequence, Some(SequenceSpec::Generator { generator: SequenceGenerator::AvoidAllRationals }));
        let seq = i.sequence().unwrap();
        assert_eq!(seq.set_at(1).known_complement().unwrap(), &[q(0, 1), q(1, 1)]);
        assert_eq!(i.functions().unwrap()(2).name(), "dyadic-level-indicator-2");
    }

    #[test]
    fn explicit_sets_default_to_full() {
        let i = Instance::parse(r#"{"sequence":[{"kind":"r4","intervals":[["1/4","3/4"]]}]}"#).unwrap();
        let seq = i.sequence().unwrap();
        assert_eq!(seq.set_at(0).radius(&q(1, 2), 1), q(1, 4));
        assert_eq!(seq.set_at(0).radius(&q(1, 8), 1), Rational::zero());
        assert_eq!(seq.set_at(5).radius(&q(1, 8), 0), Rational::one());
    }

    #[test]
    fn malformed_inputs_are_reported() {
        assert!(matches!(Instance::parse(r#"{"fnction":{"name":"thomae"}}"#), Err(CliError::Malformed(_))));
        assert!(matches!(Instance::parse(r#"{"function":{"name":"nope"}}"#), Err(CliError::Malformed(_))));
        assert!(matches!(Instance::parse(r#"{"points":["1/0"]}"#), Err(CliError::Malformed(_))));
        let i = Instance::parse(r#"{"function":{"name":"finite-indicator","points":["3/2"]}}"#).unwrap();
        assert!(matches!(i.function(), Err(CliError::Malformed(_))));
        assert!(matches!(Instance::default().function(), Err(CliError::Malformed(_))));
    }

    #[test]
    fn round_trips_through_json() {
        let i = Instance {
            function: Some(FunctionSpec::H { slices: vec![vec![q(1, 2)], vec![q(1, 3)]] }),
            dense: Some(DenseSpec::Dyadics),
            countable: Some(CountableSpec::HeightDenominator),
            ..Instance::default()
        };
        let text = serde_json::to_string(&i).unwrap();
        assert_eq!(Instance::parse(&text).unwrap(), i);
    }
}
