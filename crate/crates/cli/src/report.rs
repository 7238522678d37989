use std::fmt::Write as _;

use baire_core::interval::{ClosedInterval, RationalInterval};
use baire_core::rational::Rational;
use baire_core::realisers::{Stage, TrisectionStage};
use baire_core::reductions::{Certificate, PointTag};
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::config::{RunConfig, Representation};
use crate::instance::Instance;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case")]
pub enum Answer {
    /// A real, reported through `approximations`.
    Point { tag: PointTag },
    RationalDiscontinuity { q: Rational, m: u32 },
    /// Element `index` of the dense set, where the function is discontinuous.
    DenseDiscontinuity { index: u64, d: Rational, m: u32 },
    /// Finitely many reals, each approximated to `2^{-precision}`.
    Points { points: Vec<Rational> },
    Conversion,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Approximation {
    pub k: u32,
    /// Within `2^{-k}` of the answer.
    pub value: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumerationRecord {
    /// Enumeration slots read.
    pub stage: usize,
    pub components: Vec<ClosedInterval>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProbeValue {
    pub x: Rational,
    pub value: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConversionRecord {
    pub to: Representation,
    pub probes: Vec<ProbeValue>,
    pub intervals: Vec<RationalInterval>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub check: String,
    pub pass: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl Verdict {
    pub fn pass(check: impl Into<String>) -> Self {
        Verdict { check: check.into(), pass: true, detail: None }
    }

    pub fn fail(check: impl Into<String>, detail: impl Into<String>) -> Self {
        Verdict { check: check.into(), pass: false, detail: Some(detail.into()) }
    }

    /// Passes when `problems` is empty, otherwise fails with them joined.
    pub fn from_problems(check: impl Into<String>, problems: Vec<String>) -> Self {
        if problems.is_empty() {
            Verdict::pass(check)
        } else {
            Verdict::fail(check, problems.join("; "))
        }
    }
}

/// Everything a run produced, with the raw instance and configuration needed
/// to re-check it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub config: RunConfig,
    pub instance: Instance,
    /// Name of the oracle actually used.
    pub oracle: String,
    pub answer: Answer,
    #[serde(default)]
    pub approximations: Vec<Approximation>,
    #[serde(default)]
    pub certificates: Vec<Certificate>,
    #[serde(default)]
    pub trace: Vec<Stage>,
    #[serde(default)]
    pub trisection: Vec<TrisectionStage>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub enumeration: Option<EnumerationRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub conversion: Option<ConversionRecord>,
    /// Witness-search steps spent by the realiser.
    pub steps: u64,
    /// Self-check run before the report was emitted.
    #[serde(default)]
    pub verdicts: Vec<Verdict>,
}

fn decimal(q: &Rational) -> String {
    q.to_decimal(12)
}

impl Report {
    /// Human summary. Decimals appear only here.
    pub fn human(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "{} (oracle: {})", self.config.operation.name(), self.oracle);
        match &self.answer {
            Answer::Point { tag } => {
                let tag = match tag {
                    PointTag::RationalLiteral(q) => format!("rational literal {q}"),
                    PointTag::ApartFromRationals => "apart from the rationals".into(),
                    PointTag::Unclassified => "unclassified".into(),
                };
                let _ = writeln!(s, "answer: point, {tag}");
            }
            Answer::RationalDiscontinuity { q, m } => {
                let _ = writeln!(s, "answer: rational discontinuity at {q}, osc >= 2^-{m}");
            }
            Answer::DenseDiscontinuity { index, d, m } => {
                let _ = writeln!(s, "answer: discontinuity at d_{index} = {d}, osc >= 2^-{m}");
            }
            Answer::Points { points } => {
                let _ = writeln!(s, "answer: {} point(s)", points.len());
                for p in points {
                    let _ = writeln!(s, "  {} ~ {}", p, decimal(p));
                }
            }
            Answer::Conversion => {
                let _ = writeln!(s, "answer: conversion");
            }
        }
        for a in &self.approximations {
            let _ = writeln!(s, "approx[2^-{}] = {} ~ {}", a.k, a.value, decimal(&a.value));
        }
        if let Some(c) = &self.conversion {
            for p in &c.probes {
                let _ = writeln!(s, "  {:?} at {}: {} ~ {}", c.to, p.x, p.value, decimal(&p.value));
            }
            for i in &c.intervals {
                let _ = writeln!(s, "  interval {i}");
            }
        }
        if let Some(e) = &self.enumeration {
            let _ = writeln!(s, "enumeration: {} component(s) after {} slot(s)", e.components.len(), e.stage);
        }
        if !self.trace.is_empty() {
            let last = self.trace.last().expect("non-empty");
            let _ = writeln!(s, "trace: {} stage(s), last width {}", self.trace.len(), last.interval.width());
        }
        if !self.trisection.is_empty() {
            let _ = writeln!(s, "trisection: {} stage(s)", self.trisection.len());
        }
        let _ = writeln!(s, "certificates: {}", self.certificates.len());
        let _ = writeln!(s, "steps: {}", self.steps);
        let failed = self.verdicts.iter().filter(|v| !v.pass).count();
        let _ = writeln!(s, "self-check: {} check(s), {} failed", self.verdicts.len(), failed);
        s
    }

    /// One JSON object per line: config, answer, approximations, stages, certificates, verdicts.
    pub fn records(&self) -> Vec<String> {
        let mut out = vec![
            json!({"record": "run", "config": self.config, "instance": self.instance, "oracle": self.oracle, "steps": self.steps}),
            json!({"record": "answer", "answer": self.answer}),
        ];
        out.extend(self.approximations.iter().map(|a| json!({"record": "approximation", "k": a.k, "value": a.value})));
        out.extend(self.trace.iter().map(|st| json!({"record": "stage", "stage": st})));
        out.extend(self.trisection.iter().map(|st| json!({"record": "trisection", "stage": st})));
        if let Some(e) = &self.enumeration {
            out.push(json!({"record": "enumeration", "enumeration": e}));
        }
        if let Some(c) = &self.conversion {
            out.push(json!({"record": "conversion", "conversion": c}));
        }
        out.extend(self.certificates.iter().map(|c| json!({"record": "certificate", "certificate": c})));
        out.extend(self.verdicts.iter().map(|v| json!({"record": "verdict", "verdict": v})));
        out.into_iter().map(|v| v.to_string()).collect()
    }
}
