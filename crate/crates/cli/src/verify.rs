//! Re-checks a report from its embedded raw instance. Nothing produced by the
//! run is trusted except as a claim to test.

use std::collections::BTreeSet;
use std::sync::Arc;

use baire_core::certificate::{BallCertificate, OscCertificate, SeparationCertificate};
use baire_core::enumerate::canonical_rational;
use baire_core::gallery::{brute_force_osc, make_h, rational_value, thomae, EnrichedBaire1, SharedFunction};
use baire_core::interval::{ClosedInterval, RationalInterval};
use baire_core::open_sets::{r3_to_r4, DenseOpenSequence, OpenR2};
use baire_core::rational::Rational;
use baire_core::realisers::{closed_components, enumeration_slots, omega_fin, stage_precision};
use baire_core::reductions::{avoid_rationals_sequence, Certificate, DeltaHook, FiniteComplementDelta, PointTag};

use crate::config::{Operation, RunConfig};
use crate::error::CliError;
use crate::instance::Instance;
use crate::report::{Answer, Report, Verdict};
use crate::run::convert;

/// Window and grid exponents of the brute-force oscillation cross-check.
const BRUTE_WINDOW: u32 = 10;
const BRUTE_GRID: u32 = 20;

struct Ctx<'a> {
    r: &'a Report,
    cfg: &'a RunConfig,
    inst: &'a Instance,
}

impl Ctx<'_> {
    fn op(&self) -> Operation {
        self.cfg.operation
    }

    /// Constituent function `i` of the run.
    fn function(&self, i: usize) -> Result<SharedFunction, CliError> {
        match (self.op(), i) {
            (Operation::Sequence, n) => Ok(self.inst.functions()?(n)),
            (Operation::Pair, 1) => self.inst.second(),
            (Operation::MinmaxToBaire | Operation::BaireFromContinuity, 0) => {
                Ok(Arc::new(make_h(self.inst.closed()?)))
            }
            (
                Operation::ContinuityPoint
                | Operation::Volterra
                | Operation::Pair
                | Operation::ContinuityFromVolterra
                | Operation::VolterraFromPair
                | Operation::CountableDense
                | Operation::Bootheel,
                0,
            ) => self.inst.function(),
            _ => Err(CliError::Malformed(format!("{} has no constituent function {i}", self.op().name()))),
        }
    }

    /// The open set `O_n` an `in-open` certificate refers to.
    fn open_set(&self, n: usize) -> Result<OpenR2, CliError> {
        match self.op() {
            Operation::Bct => Ok(self.inst.sequence()?.set_at(n)),
            Operation::MinmaxToBaire | Operation::BaireFromContinuity => Ok(self.inst.closed()?.complement_witness(n)),
            op => Err(CliError::Malformed(format!("{} has no open-set certificates", op.name()))),
        }
    }

    /// The element an `apart` certificate with this index must separate from.
    fn apart_target(&self, index: u64) -> Result<Rational, CliError> {
        match self.op() {
            Operation::CountableDense => Ok(self.inst.dense()?.element(index)),
            Operation::StrongCantor => self
                .inst
                .countable()?
                .slice(self.cfg.slice)
                .get(index as usize)
                .cloned()
                .ok_or_else(|| CliError::Malformed(format!("A_{} has no element {index}", self.cfg.slice))),
            Operation::Bct => Err(CliError::Malformed("bct has no separation certificates".into())),
            _ => Ok(canonical_rational(index)),
        }
    }

    /// The dense open sequence this operation feeds to its own Baire realiser.
    fn fed_sequence(&self) -> Result<Option<DenseOpenSequence>, CliError> {
        let augment = |seq: DenseOpenSequence, on: bool| if on { seq.intersect(&avoid_rationals_sequence()) } else { seq };
        let dk = |f: SharedFunction| DenseOpenSequence::new(move |n| f.complement_of_dk(n));
        let seq = match self.op() {
            Operation::Bct => self.inst.sequence()?,
            Operation::ContinuityPoint => augment(dk(self.inst.function()?), self.cfg.augment),
            Operation::Volterra | Operation::ContinuityFromVolterra => augment(dk(self.inst.function()?), true),
            Operation::Pair => {
                let (f, g) = (self.inst.function()?, self.inst.second()?);
                let both = DenseOpenSequence::new(move |n| f.complement_of_dk(n).intersect(&g.complement_of_dk(n)));
                augment(both, self.cfg.augment)
            }
            Operation::VolterraFromPair => {
                let f = self.inst.function()?;
                let t = thomae();
                let both = DenseOpenSequence::new(move |n| f.complement_of_dk(n).intersect(&t.complement_of_dk(n)));
                augment(both, true)
            }
            Operation::Sequence => {
                let fs = self.inst.functions()?;
                DenseOpenSequence::new(move |m| OpenR2::intersect_all((0..=m).map(|n| fs(n).complement_of_dk(m)).collect()))
            }
            Operation::MinmaxToBaire | Operation::BaireFromContinuity => {
                augment(dk(Arc::new(make_h(self.inst.closed()?))), self.cfg.augment)
            }
            Operation::CountableDense => {
                let (d, f) = (self.inst.dense()?, self.inst.function()?);
                DenseOpenSequence::new(move |n| {
                    let low = d.indices_up_to_height(n as u64).into_iter().map(|i| d.element(i)).collect();
                    f.complement_of_dk(n).intersect(&OpenR2::complement_of_finite(low))
                })
            }
            Operation::StrongCantor => {
                let set = self.inst.countable()?;
                DenseOpenSequence::new(move |n| OpenR2::complement_of_finite(set.slice(n)))
            }
            Operation::Bootheel => dk(self.inst.function()?),
            Operation::OmegaFin | Operation::Convert | Operation::EnumerateClosed => return Ok(None),
        };
        Ok(Some(seq))
    }

    /// The point's approximation at precision `m`, read off the recorded evidence.
    fn point_approx(&self, m: u32) -> Option<Rational> {
        if let Answer::Point { tag: PointTag::RationalLiteral(q) } = &self.r.answer {
            return Some(q.clone());
        }
        if !self.r.trace.is_empty() {
            return self.r.trace.get(m as usize + 1).map(|s| s.interval.center());
        }
        if !self.r.trisection.is_empty() {
            return self.r.trisection.get(m as usize).map(|s| s.interval.center());
        }
        None
    }
}

/// Re-checks every piece of evidence in the report; one verdict per item.
pub fn verify(report: &Report) -> Vec<Verdict> {
    let ctx = Ctx { r: report, cfg: &report.config, inst: &report.instance };
    let mut out = Vec::new();
    if let Err(e) = report.config.validate() {
        out.push(Verdict::fail("config", e.to_string()));
        return out;
    }
    match ctx.fed_sequence() {
        Ok(seq) => out.extend(check_trace(&ctx, seq.as_ref())),
        Err(e) => out.push(Verdict::fail("instance", e.to_string())),
    }
    out.extend(check_trisection(&ctx));
    out.extend(report.certificates.iter().enumerate().map(|(i, c)| check_certificate(&ctx, i, c)));
    out.extend(check_coverage(&ctx));
    out.extend(check_answer(&ctx));
    out
}

fn err_verdict(check: String, r: Result<Vec<String>, CliError>) -> Verdict {
    match r {
        Ok(problems) => Verdict::from_problems(check, problems),
        Err(e) => Verdict::fail(check, e.to_string()),
    }
}

/// The interval a stage must have: `ball(center, ρ)` with `ρ` the largest power
/// of two not above `min(r/2, 2^{-(n+1)})`.
fn expected_stage_interval(n: usize, center: &Rational, radius: &Rational) -> RationalInterval {
    let cap = Rational::min_of(&radius.div_pow2(1), &Rational::pow2_neg(n as u32 + 1));
    RationalInterval::ball(center, &Rational::pow2_neg(cap.floor_pow2_exponent()))
}

fn check_trace(ctx: &Ctx, seq: Option<&DenseOpenSequence>) -> Vec<Verdict> {
    let mut out = Vec::new();
    let mut outer = RationalInterval::unit();
    for (i, s) in ctx.r.trace.iter().enumerate() {
        let mut problems = Vec::new();
        if s.n != i {
            problems.push(format!("index {} out of order", s.n));
        }
        if !s.radius.is_positive() {
            problems.push("radius not positive".into());
            out.push(Verdict::from_problems(format!("stage {i}"), problems));
            outer = s.interval.clone();
            continue;
        }
        let ball = RationalInterval::ball(&s.center, &s.radius);
        if !ball.within(&outer) {
            problems.push(format!("witness ball {ball} leaves the previous interval {outer}"));
        }
        if s.interval != expected_stage_interval(i, &s.center, &s.radius) {
            problems.push(format!("interval {} does not follow the shrink rule", s.interval));
        }
        if s.interval.width() > Rational::pow2_neg(i as u32) {
            problems.push(format!("width {} exceeds 2^-{i}", s.interval.width()));
        }
        if !s.interval.closure_within(&ball) {
            problems.push("interval closure not inside the witness ball".into());
        }
        match seq {
            Some(seq) => {
                let r = seq.set_at(i).radius(&s.center, s.witness_precision);
                if r < s.radius {
                    problems.push(format!("witness gives radius {r} < claimed {}", s.radius));
                }
            }
            None => problems.push("no fed sequence to re-query".into()),
        }
        out.push(Verdict::from_problems(format!("stage {i}"), problems));
        outer = s.interval.clone();
    }
    out
}

fn check_trisection(ctx: &Ctx) -> Vec<Verdict> {
    if ctx.r.trisection.is_empty() {
        return Vec::new();
    }
    let slots = match ctx.inst.countable() {
        Ok(set) => enumeration_slots(set, ctx.r.trisection.len()),
        Err(e) => return vec![Verdict::fail("trisection", e.to_string())],
    };
    let mut out = Vec::new();
    let mut outer = ClosedInterval::new(Rational::zero(), Rational::one());
    for (i, s) in ctx.r.trisection.iter().enumerate() {
        let mut problems = Vec::new();
        let third = &outer.width() / Rational::from(3);
        let thirds: Vec<ClosedInterval> = (0..3i64)
            .map(|j| {
                let lo = &outer.lo + &third * Rational::from(j);
                ClosedInterval::new(lo.clone(), lo + &third)
            })
            .collect();
        if s.n != i {
            problems.push(format!("index {} out of order", s.n));
        }
        if s.third > 2 || s.interval != thirds[s.third.min(2)] {
            problems.push(format!("interval {:?} is not third {} of the previous interval", s.interval, s.third));
        }
        let expected_width = (0..=i).fold(Rational::one(), |w, _| w / Rational::from(3));
        if s.interval.width() != expected_width {
            problems.push(format!("width {} is not 3^-{}", s.interval.width(), i + 1));
        }
        if s.precision != stage_precision(i) {
            problems.push(format!("precision {} is not {}", s.precision, stage_precision(i)));
        }
        match (&slots[i], &s.excluded, &s.gap) {
            (None, None, None) => {
                if s.third != 1 {
                    problems.push("empty slot must keep the middle third".into());
                }
            }
            (Some(a), Some(ball), Some(gap)) => {
                if !ball.contains(a) || ball.width() != Rational::pow2_neg(s.precision).mul_pow2(1) {
                    problems.push(format!("excluded ball {ball:?} is not the stage ball around {a}"));
                }
                if *gap != s.interval.gap(ball) || !gap.is_positive() {
                    problems.push(format!("gap {gap} is not a positive distance to the excluded ball"));
                }
                let best = thirds.iter().map(|t| t.gap(ball)).max().expect("three thirds");
                if best > *gap {
                    problems.push("a farther third was available".into());
                }
            }
            (slot, _, _) => problems.push(format!("exclusion does not match slot {slot:?}")),
        }
        out.push(Verdict::from_problems(format!("trisection {i}"), problems));
        outer = s.interval.clone();
    }
    out
}

fn check_ball_center(ctx: &Ctx, ball: &BallCertificate, problems: &mut Vec<String>) {
    match ball.precision {
        Some(m) => match ctx.point_approx(m) {
            Some(c) if c == ball.center => {}
            Some(c) => problems.push(format!("centre {} is not the point's approximation {c} at 2^-{m}", ball.center)),
            None => problems.push(format!("no recorded evidence places the point at precision {m}")),
        },
        None => match &ctx.r.answer {
            Answer::Point { tag: PointTag::RationalLiteral(q) } if *q == ball.center => {}
            _ => problems.push("exact-point ball on a point not declared as that rational".into()),
        },
    }
}

fn check_ball(ctx: &Ctx, ball: &BallCertificate, o: &OpenR2, problems: &mut Vec<String>) {
    if !ball.is_consistent() {
        problems.push(format!("radius {} does not exceed the approximation error", ball.radius));
    }
    if !ball.verify(o) {
        problems.push(format!("witness does not confirm radius {} at {}", ball.radius, ball.center));
    }
    check_ball_center(ctx, ball, problems);
}

fn check_separation(ctx: &Ctx, s: &SeparationCertificate, target: &Rational, problems: &mut Vec<String>) {
    if &s.other != target || &s.other_approx != target {
        problems.push(format!("separates from {} instead of {target}", s.other));
    }
    if !s.is_consistent() {
        problems.push(format!("approximations not 2^-{} apart", s.precision));
    }
    match ctx.point_approx(s.precision) {
        Some(c) if c == s.approx => {}
        Some(c) => problems.push(format!("approximation {} is not the point's {c}", s.approx)),
        None => problems.push(format!("no recorded evidence places the point at precision {}", s.precision)),
    }
}

/// Exact oscillation and a brute-force grid estimate must both reach `2^{-m}`
/// (the grid estimate up to `2^{-10}`).
fn check_osc(f: &dyn EnrichedBaire1, osc: &OscCertificate) -> Result<Vec<String>, CliError> {
    let mut problems = Vec::new();
    let bound = Rational::pow2_neg(osc.m);
    match f.osc_at_rational(&osc.point)?.exact {
        Some(v) if v >= bound => {}
        Some(v) => problems.push(format!("osc {v} at {} is below 2^-{}", osc.point, osc.m)),
        None => problems.push("no exact oscillation to compare".into()),
    }
    if !osc.point.in_unit_interval() {
        problems.push(format!("{} is outside [0,1]", osc.point));
        return Ok(problems);
    }
    let eval = |q: &Rational| rational_value(f, q).expect("gallery functions have rational values");
    let brute = brute_force_osc(&eval, &osc.point, BRUTE_WINDOW, BRUTE_GRID);
    if brute < &bound - Rational::pow2_neg(BRUTE_WINDOW) {
        problems.push(format!("brute-force osc {brute} at {} is below 2^-{}", osc.point, osc.m));
    }
    Ok(problems)
}

fn check_certificate(ctx: &Ctx, i: usize, c: &Certificate) -> Verdict {
    let (name, result) = match c {
        Certificate::OutsideDk { function, k, ball } => (
            format!("certificate {i}: outside D_{k} of function {function}"),
            ctx.function(*function).map(|f| {
                let mut p = Vec::new();
                if ball.set != *k {
                    p.push(format!("ball names set {} instead of {k}", ball.set));
                }
                check_ball(ctx, ball, &f.complement_of_dk(*k), &mut p);
                p
            }),
        ),
        Certificate::InOpen { n, ball } => (
            format!("certificate {i}: in O_{n}"),
            ctx.open_set(*n).map(|o| {
                let mut p = Vec::new();
                if ball.set != *n {
                    p.push(format!("ball names set {} instead of {n}", ball.set));
                }
                check_ball(ctx, ball, &o, &mut p);
                p
            }),
        ),
        Certificate::Apart { index, separation } => (
            format!("certificate {i}: apart from element {index}"),
            ctx.apart_target(*index).map(|t| {
                let mut p = Vec::new();
                check_separation(ctx, separation, &t, &mut p);
                p
            }),
        ),
        Certificate::OscPositive { function, osc } => (
            format!("certificate {i}: osc at {} >= 2^-{}", osc.point, osc.m),
            ctx.function(*function).and_then(|f| check_osc(f.as_ref(), osc)),
        ),
    };
    err_verdict(name, result)
}

/// Point answers must carry the full set of certificates their operation promises.
fn check_coverage(ctx: &Ctx) -> Vec<Verdict> {
    let Answer::Point { tag } = &ctx.r.answer else { return Vec::new() };
    let depth = ctx.cfg.depth;
    let mut outside = BTreeSet::new();
    let mut inside = BTreeSet::new();
    let mut apart = BTreeSet::new();
    for c in &ctx.r.certificates {
        match c {
            Certificate::OutsideDk { function, k, .. } => {
                outside.insert((*function, *k));
            }
            Certificate::InOpen { n, .. } => {
                inside.insert(*n);
            }
            Certificate::Apart { index, .. } => {
                apart.insert(*index);
            }
            Certificate::OscPositive { .. } => {}
        }
    }
    let functions: Vec<usize> = match ctx.op() {
        Operation::Pair => vec![0, 1],
        Operation::Sequence => (0..=depth).collect(),
        Operation::Bct | Operation::MinmaxToBaire | Operation::BaireFromContinuity | Operation::StrongCantor => {
            Vec::new()
        }
        _ => vec![0],
    };
    let mut missing = Vec::new();
    for f in &functions {
        missing.extend((0..=depth).filter(|k| !outside.contains(&(*f, *k))).map(|k| format!("D_{k} of function {f}")));
    }
    let opens = match ctx.op() {
        Operation::Bct => 0..ctx.cfg.stages,
        Operation::MinmaxToBaire | Operation::BaireFromContinuity => 0..depth + 1,
        _ => 0..0,
    };
    missing.extend(opens.filter(|n| !inside.contains(n)).map(|n| format!("O_{n}")));
    let needed_apart: Vec<u64> = match (ctx.op(), tag) {
        (Operation::StrongCantor, _) => match ctx.inst.countable() {
            Ok(set) => (0..set.slice(ctx.cfg.slice).len() as u64).collect(),
            Err(e) => return vec![Verdict::fail("coverage", e.to_string())],
        },
        (Operation::CountableDense, _) => match ctx.inst.dense() {
            Ok(d) => d.indices_up_to_height(ctx.cfg.apart.saturating_sub(1)),
            Err(e) => return vec![Verdict::fail("coverage", e.to_string())],
        },
        (_, PointTag::ApartFromRationals) => (0..ctx.cfg.apart).collect(),
        _ => Vec::new(),
    };
    missing.extend(needed_apart.into_iter().filter(|i| !apart.contains(i)).map(|i| format!("apart from element {i}")));
    vec![Verdict::from_problems("coverage", missing.into_iter().map(|m| format!("missing {m}")).collect())]
}

fn has_osc(ctx: &Ctx, q: &Rational, m: u32) -> bool {
    ctx.r.certificates.iter().any(|c| matches!(c, Certificate::OscPositive { osc, .. } if osc.point == *q && osc.m == m))
}

fn check_answer(ctx: &Ctx) -> Vec<Verdict> {
    let r = ctx.r;
    let mut problems = Vec::new();
    match &r.answer {
        Answer::Point { tag } => {
            if r.approximations.is_empty() {
                problems.push("no approximation recorded".into());
            }
            for a in &r.approximations {
                match ctx.point_approx(a.k) {
                    Some(c) if c == a.value => {}
                    Some(c) => problems.push(format!("approximation {} at 2^-{} should be {c}", a.value, a.k)),
                    None => problems.push(format!("no recorded evidence places the point at precision {}", a.k)),
                }
            }
            if let PointTag::RationalLiteral(q) = tag {
                if !q.in_unit_interval() {
                    problems.push(format!("{q} is outside [0,1]"));
                }
            }
        }
        Answer::RationalDiscontinuity { q, m } => {
            if !has_osc(ctx, q, *m) {
                problems.push("no oscillation certificate for the answer".into());
            }
        }
        Answer::DenseDiscontinuity { index, d, m } => {
            match ctx.inst.dense() {
                Ok(set) if set.element(*index) == *d => {}
                Ok(set) => problems.push(format!("d_{index} is {}, not {d}", set.element(*index))),
                Err(e) => problems.push(e.to_string()),
            }
            if !has_osc(ctx, d, *m) {
                problems.push("no oscillation certificate for the answer".into());
            }
        }
        Answer::Points { points } => match ctx.op() {
            Operation::OmegaFin => match ctx.inst.points() {
                Ok(input) => {
                    let expected: Vec<Rational> = omega_fin(input).iter().map(|x| x.approx(ctx.cfg.precision)).collect();
                    if &expected != points {
                        problems.push("enumeration differs from the input's distinct points".into());
                    }
                }
                Err(e) => problems.push(e.to_string()),
            },
            _ => problems.extend(check_enumeration(ctx, points)),
        },
        Answer::Conversion => match (convert(ctx.inst, ctx.cfg), &r.conversion) {
            (Ok(expected), Some(got)) if expected == *got => {}
            (Ok(_), Some(_)) => problems.push("conversion values differ on recomputation".into()),
            (Ok(_), None) => problems.push("no conversion recorded".into()),
            (Err(e), _) => problems.push(e.to_string()),
        },
    }
    vec![Verdict::from_problems("answer", problems)]
}

/// Recomputes the closed components at the recorded stage and, for infinite
/// enumerations, the stability check at half that stage.
fn check_enumeration(ctx: &Ctx, points: &[Rational]) -> Vec<String> {
    let mut problems = Vec::new();
    let Some(e) = &ctx.r.enumeration else { return vec!["no enumeration recorded".into()] };
    let complement = match ctx.op() {
        Operation::EnumerateClosed => ctx.inst.open().map(|s| s.enumeration()),
        Operation::Bootheel => {
            ctx.inst.function().and_then(|f| Ok(r3_to_r4(&FiniteComplementDelta.distance(f.as_ref())?)))
        }
        op => Err(CliError::Malformed(format!("{} records no enumeration", op.name()))),
    };
    let complement = match complement {
        Ok(c) => c,
        Err(err) => return vec![err.to_string()],
    };
    let tol = Rational::pow2_neg(ctx.cfg.k);
    let acceptable =
        |cs: &[ClosedInterval]| cs.len() <= ctx.cfg.bound && cs.iter().all(|c| c.width() <= tol);
    let comps = closed_components(complement.prefix(e.stage));
    if comps != e.components {
        problems.push(format!("components differ from a recomputation at {} slots", e.stage));
    }
    match complement.len() {
        Some(len) => {
            if e.stage != len || comps.iter().any(|c| c.width().is_positive()) {
                problems.push("finite enumeration not read in full or not a finite set".into());
            }
        }
        None => {
            let half = closed_components(complement.prefix(e.stage / 2));
            if !acceptable(&comps) || !acceptable(&half) || half.len() != comps.len() {
                problems.push("stability rule not met".into());
            }
        }
    }
    if points.len() != e.components.len() {
        problems.push(format!("{} points for {} components", points.len(), e.components.len()));
    }
    let slack = Rational::pow2_neg(ctx.cfg.precision);
    for (p, c) in points.iter().zip(&e.components) {
        let widened = ClosedInterval::new(&c.lo - &slack, &c.hi + &slack);
        if !widened.contains(p) {
            problems.push(format!("point {p} is outside its component {c:?}"));
        }
    }
    problems
}
