use std::str::FromStr;
use std::sync::Arc;

use baire_core::certificate::OscCertificate;
use baire_core::gallery::SharedFunction;
use baire_core::open_sets::{r4_to_r3, OpenR3};
use baire_core::rational::Rational;
use baire_core::real::ExactReal;
use baire_core::realisers::{
    enumerate_finite_closed, omega_fin, strong_cantor_realiser, ClosedEnumeration, StrongCantorPoint,
};
use baire_core::reductions::{
    baire_from_continuity, baire_from_minmax, bootheel_continuity, bootheel_omega_fin, common_continuity_point,
    continuity_from_volterra, continuity_point_from_baire, countable_dense_volterra, pair_reduction,
    volterra_from_baire, volterra_from_pair, BaireRealiserOracle, Certificate, ConstantBaire,
    ContinuityPointOracle, ContinuityViaBaire, DenseAnswer, EnrichedWitness, FiniteComplementDelta, FixedContinuity,
    FixedMinMax, FixedPair, FixedVolterra, MinMaxOracle, MinMaxViaContinuity, OwnBct, PairOracle, PairViaBaire,
    PointTag, TaggedPoint, VolterraAnswer, VolterraOracle, VolterraViaBaire,
};

use crate::config::{Operation, Representation, RunConfig};
use crate::error::CliError;
use crate::instance::{Instance, SetSpec};
use crate::report::{Answer, Approximation, ConversionRecord, EnumerationRecord, ProbeValue, Report};
use crate::verify::verify;

fn rational(s: &str) -> Result<Rational, CliError> {
    Rational::from_str(s).map_err(|e| CliError::Malformed(format!("oracle selector: {e}")))
}

fn unknown(kind: &str, sel: &str, accepted: &str) -> CliError {
    CliError::Malformed(format!("unknown {kind} oracle `{sel}` (expected {accepted})"))
}

/// `builtin` / `bct`, or the adversarial `constant:<q>`.
pub fn baire_oracle(sel: &str, cfg: &RunConfig) -> Result<Arc<dyn BaireRealiserOracle>, CliError> {
    match sel.split_once(':') {
        None if sel == "builtin" || sel == "bct" => Ok(Arc::new(OwnBct { stage_budget: Some(cfg.budget) })),
        Some(("constant", q)) => Ok(Arc::new(ConstantBaire(rational(q)?))),
        _ => Err(unknown("baire", sel, "bct | constant:<q>")),
    }
}

/// `builtin` / `continuity`, or `fixed:<q>`.
pub fn continuity_oracle(sel: &str, cfg: &RunConfig) -> Result<Arc<dyn ContinuityPointOracle>, CliError> {
    match sel.split_once(':') {
        None if sel == "builtin" || sel == "continuity" => Ok(Arc::new(ContinuityViaBaire {
            baire: baire_oracle("bct", cfg)?,
            config: cfg.reduction_config(),
        })),
        Some(("fixed", q)) => Ok(Arc::new(FixedContinuity(rational(q)?))),
        _ => Err(unknown("continuity", sel, "continuity | fixed:<q>")),
    }
}

/// `builtin` / `volterra`, `fixed-discontinuity:<q>:<m>`, or `fixed-continuity:<q>`
/// (a rational passed off as a continuity point).
pub fn volterra_oracle(sel: &str, cfg: &RunConfig) -> Result<Arc<dyn VolterraOracle>, CliError> {
    match sel.split_once(':') {
        None if sel == "builtin" || sel == "volterra" => Ok(Arc::new(VolterraViaBaire {
            baire: baire_oracle("bct", cfg)?,
            mode: cfg.mode,
            config: cfg.reduction_config(),
        })),
        Some(("fixed-discontinuity", rest)) => {
            let (q, m) = rest
                .rsplit_once(':')
                .ok_or_else(|| unknown("volterra", sel, "fixed-discontinuity:<q>:<m>"))?;
            let m = m.parse().map_err(|_| unknown("volterra", sel, "an integer m"))?;
            Ok(Arc::new(FixedVolterra(VolterraAnswer::RationalDiscontinuity { q: rational(q)?, m })))
        }
        Some(("fixed-continuity", q)) => {
            Ok(Arc::new(FixedVolterra(VolterraAnswer::IrrationalContinuity(TaggedPoint::rational(rational(q)?)))))
        }
        _ => Err(unknown("volterra", sel, "volterra | fixed-discontinuity:<q>:<m> | fixed-continuity:<q>")),
    }
}

/// `builtin` / `pair`, `fixed:<q>` (tagged rational), `untagged:<q>`, or
/// `irrational:<q>` (a rational falsely tagged apart from the rationals).
pub fn pair_oracle(sel: &str, cfg: &RunConfig) -> Result<Arc<dyn PairOracle>, CliError> {
    match sel.split_once(':') {
        None if sel == "builtin" || sel == "pair" => {
            Ok(Arc::new(PairViaBaire { baire: baire_oracle("bct", cfg)?, config: cfg.reduction_config() }))
        }
        Some(("fixed", q)) => Ok(Arc::new(FixedPair(TaggedPoint::rational(rational(q)?)))),
        Some(("untagged", q)) => Ok(Arc::new(FixedPair(TaggedPoint::untagged(ExactReal::from_rational(rational(q)?))))),
        Some(("irrational", q)) => {
            let mut p = TaggedPoint::untagged(ExactReal::from_rational(rational(q)?));
            p.tag = PointTag::ApartFromRationals;
            Ok(Arc::new(FixedPair(p)))
        }
        _ => Err(unknown("pair", sel, "pair | fixed:<q> | untagged:<q> | irrational:<q>")),
    }
}

/// `builtin` / `continuity` (`a = b =` a continuity point), or `fixed:<a>,<b>`.
pub fn minmax_oracle(sel: &str, cfg: &RunConfig) -> Result<Arc<dyn MinMaxOracle>, CliError> {
    match sel.split_once(':') {
        None if sel == "builtin" || sel == "continuity" => {
            Ok(Arc::new(MinMaxViaContinuity { continuity: continuity_oracle("continuity", cfg)? }))
        }
        Some(("fixed", ab)) => {
            let (a, b) = ab.split_once(',').ok_or_else(|| unknown("min-max", sel, "fixed:<a>,<b>"))?;
            Ok(Arc::new(FixedMinMax(rational(a)?, rational(b)?)))
        }
        _ => Err(unknown("min-max", sel, "continuity | fixed:<a>,<b>")),
    }
}

struct Outcome {
    oracle: String,
    answer: Answer,
    point: Option<TaggedPoint>,
    cantor: Option<StrongCantorPoint>,
    certificates: Vec<Certificate>,
    enumeration: Option<(ClosedEnumeration, u32)>,
    conversion: Option<ConversionRecord>,
}

impl Outcome {
    fn new(oracle: String, answer: Answer) -> Self {
        Outcome { oracle, answer, point: None, cantor: None, certificates: Vec::new(), enumeration: None, conversion: None }
    }

    fn point(oracle: String, p: TaggedPoint) -> Self {
        let mut o = Outcome::new(oracle, Answer::Point { tag: p.tag.clone() });
        o.certificates = p.certificates.clone();
        o.point = Some(p);
        o
    }

    fn volterra(oracle: String, a: VolterraAnswer) -> Self {
        match a {
            VolterraAnswer::RationalDiscontinuity { q, m } => {
                let mut o = Outcome::new(oracle, Answer::RationalDiscontinuity { q: q.clone(), m });
                o.certificates = vec![Certificate::OscPositive { function: 0, osc: OscCertificate { point: q, m } }];
                o
            }
            VolterraAnswer::IrrationalContinuity(p) => Outcome::point(oracle, p),
        }
    }
}

fn highest_precision(certs: &[Certificate]) -> u32 {
    certs
        .iter()
        .filter_map(|c| match c {
            Certificate::OutsideDk { ball, .. } | Certificate::InOpen { ball, .. } => ball.precision,
            Certificate::Apart { separation, .. } => Some(separation.precision),
            Certificate::OscPositive { .. } => None,
        })
        .max()
        .unwrap_or(0)
}

fn dispatch(instance: &Instance, cfg: &RunConfig) -> Result<Outcome, CliError> {
    let rc = cfg.reduction_config();
    let sel = cfg.oracle.as_str();
    Ok(match cfg.operation {
        Operation::Bct => {
            let seq = instance.sequence()?;
            let b = baire_oracle(sel, cfg)?;
            let point = b.realise(seq.clone())?;
            point.ensure_depth(cfg.stages)?;
            let mut p = TaggedPoint::from_baire(point, PointTag::Unclassified);
            p.certificates = (0..cfg.stages)
                .map(|n| Ok(Certificate::InOpen { n, ball: p.ball(n, &seq.set_at(n), cfg.cert_precision)? }))
                .collect::<Result<_, baire_core::error::Error>>()?;
            Outcome::point(b.name(), p)
        }
        Operation::ContinuityPoint => {
            let b = baire_oracle(sel, cfg)?;
            Outcome::point(b.name(), continuity_point_from_baire(instance.function()?, b.as_ref(), &rc)?)
        }
        Operation::Volterra => {
            let b = baire_oracle(sel, cfg)?;
            Outcome::volterra(b.name(), volterra_from_baire(instance.function()?, b.as_ref(), cfg.mode, &rc)?)
        }
        Operation::Pair => {
            let b = baire_oracle(sel, cfg)?;
            Outcome::point(b.name(), pair_reduction(instance.function()?, instance.second()?, b.as_ref(), &rc)?)
        }
        Operation::Sequence => {
            let b = baire_oracle(sel, cfg)?;
            Outcome::point(b.name(), common_continuity_point(instance.functions()?, b.as_ref(), &rc)?)
        }
        Operation::MinmaxToBaire => {
            let m = minmax_oracle(sel, cfg)?;
            Outcome::point(m.name(), baire_from_minmax(&instance.closed()?, m.as_ref(), &rc)?)
        }
        Operation::BaireFromContinuity => {
            let c = continuity_oracle(sel, cfg)?;
            Outcome::point(c.name(), baire_from_continuity(&instance.closed()?, c.as_ref(), &rc)?)
        }
        Operation::ContinuityFromVolterra => {
            let v = volterra_oracle(sel, cfg)?;
            Outcome::point(v.name(), continuity_from_volterra(instance.function()?, v.as_ref(), &rc)?)
        }
        Operation::VolterraFromPair => {
            let p = pair_oracle(sel, cfg)?;
            Outcome::volterra(p.name(), volterra_from_pair(instance.function()?, p.as_ref(), &rc)?)
        }
        Operation::CountableDense => {
            let b = baire_oracle(sel, cfg)?;
            let d = instance.dense()?;
            let f: SharedFunction = instance.function()?;
            match countable_dense_volterra(d, f, b.as_ref(), cfg.mode, cfg.injectivity_prefix, &rc)? {
                DenseAnswer::Discontinuity { index, d, osc } => {
                    let mut o = Outcome::new(b.name(), Answer::DenseDiscontinuity { index, d, m: osc.m });
                    o.certificates = vec![Certificate::OscPositive { function: 0, osc }];
                    o
                }
                DenseAnswer::Continuity(p) => Outcome::point(b.name(), p),
            }
        }
        Operation::StrongCantor => {
            let set = instance.countable()?;
            let p = strong_cantor_realiser(set.clone(), cfg.route, Some(cfg.budget));
            p.ensure_depth(cfg.slice + 2)?;
            let certificates = p
                .certificates(set.as_ref(), cfg.slice, cfg.cert_precision)?
                .into_iter()
                .enumerate()
                .map(|(i, separation)| Certificate::Apart { index: i as u64, separation })
                .collect();
            let mut o = Outcome::new("strong-cantor".into(), Answer::Point { tag: PointTag::Unclassified });
            o.certificates = certificates;
            o.cantor = Some(p);
            o
        }
        Operation::OmegaFin => {
            let pts = omega_fin(instance.points()?);
            let exact = pts.iter().map(|x| x.approx(cfg.precision)).collect();
            Outcome::new("omega-fin".into(), Answer::Points { points: exact })
        }
        Operation::Convert => {
            let o = Outcome::new("convert".into(), Answer::Conversion);
            Outcome { conversion: Some(convert(instance, cfg)?), ..o }
        }
        Operation::EnumerateClosed => {
            let e = enumerate_finite_closed(&instance.open()?.enumeration(), cfg.bound, cfg.k, budget_stage(cfg))?;
            let mut o = Outcome::new("enumerate-closed".into(), Answer::Points { points: Vec::new() });
            o.enumeration = Some((e, cfg.precision));
            o
        }
        Operation::Bootheel => {
            let f = instance.function()?;
            if cfg.part == 1 {
                Outcome::point("bootheel".into(), bootheel_continuity(f, Arc::new(EnrichedWitness), &rc)?)
            } else {
                let e = bootheel_omega_fin(f.as_ref(), &FiniteComplementDelta, cfg.k, cfg.bound, budget_stage(cfg))?;
                let mut o = Outcome::new("bootheel".into(), Answer::Points { points: Vec::new() });
                o.enumeration = Some((e, cfg.precision));
                o
            }
        }
    })
}

fn budget_stage(cfg: &RunConfig) -> usize {
    usize::try_from(cfg.budget).unwrap_or(usize::MAX)
}

/// The set's distance view: exact for finite complements, from the enumeration for `r4`.
pub fn distance_view(set: &SetSpec) -> OpenR3 {
    match set {
        SetSpec::R4 { .. } => r4_to_r3(&set.enumeration()),
        SetSpec::ComplementOfFinite { points } => OpenR3::exact_complement_of_finite(points.clone()),
        SetSpec::Full => OpenR3::exact_complement_of_finite(Vec::new()),
    }
}

/// Probe values in the target representation, read at stage `cfg.stages`.
pub fn convert(instance: &Instance, cfg: &RunConfig) -> Result<ConversionRecord, CliError> {
    let set = instance.open()?;
    let probes = instance.probes.clone().unwrap_or_default();
    let stage = u32::try_from(cfg.stages).unwrap_or(u32::MAX);
    let (probes, intervals) = match cfg.to {
        Representation::R2 => {
            let w = set.witness();
            (probes.iter().map(|x| ProbeValue { x: x.clone(), value: w.radius(x, stage) }).collect(), Vec::new())
        }
        Representation::R3 => {
            let d = distance_view(set);
            (probes.iter().map(|x| ProbeValue { x: x.clone(), value: d.lower_bound(x, stage) }).collect(), Vec::new())
        }
        Representation::R4 => {
            let e = baire_core::open_sets::r3_to_r4(&distance_view(set));
            (Vec::new(), e.prefix(cfg.stages))
        }
    };
    Ok(ConversionRecord { to: cfg.to, probes, intervals })
}

/// Runs one operation and self-verifies the report.
pub fn run(instance: &Instance, cfg: &RunConfig) -> Result<Report, CliError> {
    cfg.validate()?;
    let out = dispatch(instance, cfg)?;
    let mut report = Report {
        config: cfg.clone(),
        instance: instance.clone(),
        oracle: out.oracle,
        answer: out.answer,
        approximations: Vec::new(),
        certificates: out.certificates,
        trace: Vec::new(),
        trisection: Vec::new(),
        enumeration: None,
        conversion: out.conversion,
        steps: 0,
        verdicts: Vec::new(),
    };
    let needed = highest_precision(&report.certificates).max(cfg.precision);
    if let Some(p) = &out.point {
        report.approximations.push(Approximation { k: cfg.precision, value: p.approx(cfg.precision)? });
        if let Some(b) = p.baire.as_ref().filter(|b| b.has_trace()) {
            report.trace = b.trace((needed as usize + 2).max(cfg.stages))?;
            report.steps = b.steps();
        }
    }
    if let Some(c) = &out.cantor {
        c.ensure_depth(needed as usize + 2)?;
        report.approximations.push(Approximation { k: cfg.precision, value: c.value().approx(cfg.precision) });
        if let Some(b) = c.baire_point() {
            report.trace = b.trace(needed as usize + 2)?;
            report.steps = b.steps();
        }
        if let Some(a) = c.avoidance_point() {
            report.trisection = a.stages(needed as usize + 1);
        }
    }
    if let Some((e, k)) = out.enumeration {
        report.answer = Answer::Points { points: e.points.iter().map(|x| x.approx(k)).collect() };
        report.enumeration = Some(EnumerationRecord { stage: e.stage, components: e.components });
    }
    report.verdicts = verify(&report);
    if let Some(v) = report.verdicts.iter().find(|v| !v.pass) {
        return Err(CliError::Unverified(format!("{}: {}", v.check, v.detail.clone().unwrap_or_default())));
    }
    Ok(report)
}
