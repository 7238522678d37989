use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{
    apart_from_rationals, avoid_rationals_sequence, outside_dk, realise, BaireRealiserOracle, PairOracle,
    PointTag, ReductionConfig, TaggedPoint, VolterraAnswer, VolterraOracle,
};
use crate::certificate::OscCertificate;
use crate::enumerate::{canonical_rational, cantor_unpair};
use crate::error::Error;
use crate::gallery::{thomae, EnrichedBaire1, SharedFunction};
use crate::open_sets::{DenseOpenSequence, OpenR2};
use crate::rational::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum VolterraMode {
    Dovetail,
    ForceIrrational,
}

pub type FunctionSequence = Arc<dyn Fn(usize) -> SharedFunction + Send + Sync>;

/// One step of the dovetailed search: pair `(i, b)` tests `q_i` with witness budget `b`.
fn search_step(f: &dyn EnrichedBaire1, step: u64) -> Option<(Rational, u32)> {
    let (i, b) = cantor_unpair(step);
    let q = canonical_rational(i);
    let m = f.osc_positive_witness(&q, b.min(u32::MAX as u64) as u32)?;
    Some((q, m))
}

/// First certified `(q, m)` with `osc_f(q) ≥ 2^{-m}` within `budget` steps.
/// `None` only means nothing was found yet.
pub fn rational_discontinuity_search(f: &dyn EnrichedBaire1, budget: u64) -> Option<(Rational, u32)> {
    (0..budget).find_map(|s| search_step(f, s))
}

fn force_irrational_sequence(f: SharedFunction) -> DenseOpenSequence {
    DenseOpenSequence::new(move |n| f.complement_of_dk(n)).intersect(&avoid_rationals_sequence())
}

fn certify_irrational(p: &mut TaggedPoint, f: &dyn EnrichedBaire1, cfg: &ReductionConfig) -> Result<(), Error> {
    p.certificates = outside_dk(p, f, 0, cfg)?;
    p.certificates.extend(apart_from_rationals(p, cfg)?);
    Ok(())
}

/// Either a rational discontinuity of `f` or a continuity point apart from the rationals.
///
/// `ForceIrrational` runs the Baire realiser on `[0,1] ∖ (D_n ∪ {q_0..q_{n−1}})`.
/// `Dovetail` alternates one search step with one realiser stage and returns
/// whichever side is certified first; the realiser side is done after `depth + 2` stages.
pub fn volterra_from_baire(
    f: SharedFunction,
    b: &dyn BaireRealiserOracle,
    mode: VolterraMode,
    cfg: &ReductionConfig,
) -> Result<VolterraAnswer, Error> {
    let seq = force_irrational_sequence(f.clone());
    match mode {
        VolterraMode::ForceIrrational => {
            let mut p = realise(b, seq, cfg, PointTag::ApartFromRationals)?;
            certify_irrational(&mut p, f.as_ref(), cfg)?;
            Ok(VolterraAnswer::IrrationalContinuity(p))
        }
        VolterraMode::Dovetail => {
            let point = b.realise(seq)?;
            let target = cfg.depth + 2;
            let mut stalled: Option<Error> = None;
            for round in 0..cfg.search_budget.max(target as u64) {
                if round < cfg.search_budget {
                    if let Some((q, m)) = search_step(f.as_ref(), round) {
                        return Ok(VolterraAnswer::RationalDiscontinuity { q, m });
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
                    let mut p = TaggedPoint::from_baire(point, PointTag::ApartFromRationals);
                    certify_irrational(&mut p, f.as_ref(), cfg)?;
                    return Ok(VolterraAnswer::IrrationalContinuity(p));
                }
            }
            Err(stalled.unwrap_or_else(|| Error::budget("volterra dovetail", cfg.search_budget)))
        }
    }
}

/// A continuity point of `f` from a Volterra oracle.
///
/// Rational continuity points are searched first with the osc-zero hook. If
/// the instance states that none exists, the oracle is called and its
/// irrational continuity point re-certified.
pub fn continuity_from_volterra(
    f: SharedFunction,
    v: &dyn VolterraOracle,
    cfg: &ReductionConfig,
) -> Result<TaggedPoint, Error> {
    let exists = f.rational_continuity_exists();
    if exists != Some(false) {
        for i in 0..cfg.search_budget {
            let q = canonical_rational(i);
            match f.osc_zero_decision(&q) {
                None => return Err(Error::NeedsOscZeroDecision),
                Some(true) => {
                    let mut p = TaggedPoint::rational(q);
                    p.certificates = outside_dk(&p, f.as_ref(), 0, cfg)?;
                    return Ok(p);
                }
                Some(false) => {}
            }
        }
        return match exists {
            Some(true) => Err(Error::budget("rational continuity search", cfg.search_budget)),
            _ => Err(Error::NeedsOscZeroDecision),
        };
    }
    match v.volterra(f.clone())? {
        VolterraAnswer::IrrationalContinuity(mut p) => {
            if p.tag != PointTag::ApartFromRationals {
                return Err(Error::cert("volterra oracle returned an untagged continuity point"));
            }
            certify_irrational(&mut p, f.as_ref(), cfg)?;
            Ok(p)
        }
        VolterraAnswer::RationalDiscontinuity { q, .. } => Err(Error::cert(format!(
            "volterra oracle answered the rational discontinuity {q}; no continuity point can be derived from it"
        ))),
    }
}

/// A common continuity point of `f` and `g`: a Baire point of `[0,1] ∖ (D_n ∪ E_n)`.
pub fn pair_reduction(
    f: SharedFunction,
    g: SharedFunction,
    b: &dyn BaireRealiserOracle,
    cfg: &ReductionConfig,
) -> Result<TaggedPoint, Error> {
    let (f2, g2) = (f.clone(), g.clone());
    let mut seq = DenseOpenSequence::new(move |n| f2.complement_of_dk(n).intersect(&g2.complement_of_dk(n)));
    let tag = if cfg.augment {
        seq = seq.intersect(&avoid_rationals_sequence());
        PointTag::ApartFromRationals
    } else {
        PointTag::Unclassified
    };
    let mut p = realise(b, seq, cfg, tag)?;
    let mut certs = outside_dk(&p, f.as_ref(), 0, cfg)?;
    certs.extend(outside_dk(&p, g.as_ref(), 1, cfg)?);
    if cfg.augment {
        certs.extend(apart_from_rationals(&p, cfg)?);
    }
    p.certificates = certs;
    Ok(p)
}

/// Volterra answer from a pair oracle applied to `(f, T)`.
///
/// Thomae's function is discontinuous exactly at the rationals, so a rational
/// common point is a discontinuity of `f` and an irrational one a continuity point.
pub fn volterra_from_pair(f: SharedFunction, p: &dyn PairOracle, cfg: &ReductionConfig) -> Result<VolterraAnswer, Error> {
    let mut point = p.common_point(f.clone(), Arc::new(thomae()))?;
    match point.tag.clone() {
        PointTag::RationalLiteral(q) => {
            if point.value.as_rational() != Some(&q) {
                return Err(Error::cert(format!("point tagged {q} is not that rational")));
            }
            let m = f
                .osc_positive_witness(&q, cfg.cert_precision)
                .ok_or_else(|| Error::cert(format!("osc of {} at {q} not certified positive", f.name())))?;
            Ok(VolterraAnswer::RationalDiscontinuity { q, m })
        }
        PointTag::ApartFromRationals => {
            certify_irrational(&mut point, f.as_ref(), cfg)?;
            Ok(VolterraAnswer::IrrationalContinuity(point))
        }
        PointTag::Unclassified => Err(Error::cert("pair oracle returned an untagged point")),
    }
}

/// A common continuity point of every `f_n`.
///
/// The `m`-th fed set is `⋂_{n ≤ m} [0,1] ∖ D_{m,n}`, which is contained in
/// `[0,1] ∖ D_{k,n}` for all `k, n ≤ m`. Certificates cover `k, n ≤ depth`.
pub fn common_continuity_point(
    fs: FunctionSequence,
    b: &dyn BaireRealiserOracle,
    cfg: &ReductionConfig,
) -> Result<TaggedPoint, Error> {
    let g = fs.clone();
    let seq = DenseOpenSequence::new(move |m| OpenR2::intersect_all((0..=m).map(|n| g(n).complement_of_dk(m)).collect()));
    let mut p = realise(b, seq, cfg, PointTag::Unclassified)?;
    let mut certs = Vec::new();
    for n in 0..=cfg.depth {
        certs.extend(outside_dk(&p, fs(n).as_ref(), n, cfg)?);
    }
    p.certificates = certs;
    Ok(p)
}

impl VolterraAnswer {
    /// Re-derives the osc certificate of a rational answer from `f`.
    pub fn osc_certificate(&self) -> Option<OscCertificate> {
        match self {
            VolterraAnswer::RationalDiscontinuity { q, m } => Some(OscCertificate { point: q.clone(), m: *m }),
            VolterraAnswer::IrrationalContinuity(_) => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerate::canonical_prefix;
    use crate::gallery::{finite_indicator, zero, OscillationValue};
    use crate::open_sets::witness::odd_dyadic_distance;
    use crate::real::ExactReal;
    use crate::rational::q;
    use crate::reductions::{ConstantBaire, FixedPair, FixedVolterra, OwnBct, PairViaBaire, VolterraViaBaire};

    fn cfg() -> ReductionConfig {
        ReductionConfig::default()
    }

    fn bct() -> Arc<OwnBct> {
        Arc::new(OwnBct { stage_budget: Some(100_000) })
    }

    fn gallery() -> Vec<SharedFunction> {
        vec![
            Arc::new(thomae()),
            Arc::new(zero()),
            Arc::new(finite_indicator(vec![q(1, 3)])),
            Arc::new(crate::gallery::make_h(crate::gallery::ClosedNowhereDenseSeq::dyadic_levels())),
        ]
    }

    #[test]
    fn search_examples() {
        assert_eq!(rational_discontinuity_search(&thomae(), 10), Some((q(0, 1), 0)));
        assert_eq!(rational_discontinuity_search(&zero(), 10_000), None);
        assert_eq!(rational_discontinuity_search(&finite_indicator(vec![q(1, 3)]), 100), Some((q(1, 3), 0)));
    }

    #[test]
    fn volterra_modes() {
        let t: SharedFunction = Arc::new(thomae());
        match volterra_from_baire(t.clone(), bct().as_ref(), VolterraMode::Dovetail, &cfg()).unwrap() {
            VolterraAnswer::RationalDiscontinuity { q: r, m } => assert_eq!((r, m), (q(0, 1), 0)),
            other => panic!("{other:?}"),
        }
        match volterra_from_baire(t, bct().as_ref(), VolterraMode::ForceIrrational, &cfg()).unwrap() {
            VolterraAnswer::IrrationalContinuity(p) => assert_eq!(p.certificates.len(), 17 + 32),
            other => panic!("{other:?}"),
        }
        match volterra_from_baire(Arc::new(zero()), bct().as_ref(), VolterraMode::Dovetail, &cfg()).unwrap() {
            VolterraAnswer::IrrationalContinuity(p) => assert_eq!(p.tag, PointTag::ApartFromRationals),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn force_irrational_is_apart_for_every_gallery_function() {
        for f in gallery() {
            let VolterraAnswer::IrrationalContinuity(p) =
                volterra_from_baire(f.clone(), bct().as_ref(), VolterraMode::ForceIrrational, &cfg()).unwrap()
            else {
                panic!()
            };
            for (i, r) in canonical_prefix(32).iter().enumerate() {
                let c = p.apart_from_canonical(i as u64, 256).unwrap();
                assert!(c.is_consistent() && c.radius().is_positive() && c.other == *r, "{}", f.name());
            }
        }
    }

    #[test]
    fn continuity_from_volterra_examples() {
        let v = VolterraViaBaire { baire: bct(), mode: VolterraMode::ForceIrrational, config: cfg() };
        let p = continuity_from_volterra(Arc::new(finite_indicator(vec![q(1, 3)])), &v, &cfg()).unwrap();
        assert_eq!(p.tag, PointTag::RationalLiteral(q(0, 1)));
        let p = continuity_from_volterra(Arc::new(thomae()), &v, &cfg()).unwrap();
        assert_eq!(p.tag, PointTag::ApartFromRationals);

        struct NoHook;
        impl EnrichedBaire1 for NoHook {
            fn name(&self) -> String {
                "no-hook".into()
            }
            fn eval_at_rational(&self, _q: &Rational) -> Result<ExactReal, Error> {
                Ok(ExactReal::from_rational(Rational::zero()))
            }
            fn osc_at_rational(&self, _q: &Rational) -> Result<OscillationValue, Error> {
                Ok(OscillationValue::exact(Rational::zero()))
            }
            fn complement_of_dk(&self, _k: usize) -> OpenR2 {
                OpenR2::full()
            }
        }
        assert!(matches!(continuity_from_volterra(Arc::new(NoHook), &v, &cfg()), Err(Error::NeedsOscZeroDecision)));
        let liar = FixedVolterra(VolterraAnswer::RationalDiscontinuity { q: q(1, 2), m: 1 });
        assert!(matches!(continuity_from_volterra(Arc::new(thomae()), &liar, &cfg()), Err(Error::CertificateFailure(_))));
    }

    #[test]
    fn pair_examples() {
        let t: SharedFunction = Arc::new(thomae());
        let third: SharedFunction = Arc::new(finite_indicator(vec![q(1, 3)]));
        let p = pair_reduction(t.clone(), third.clone(), bct().as_ref(), &cfg()).unwrap();
        assert_eq!(p.certificates.len(), 34);
        assert!(p.apart(&q(1, 3), 100).is_ok());
        let z: SharedFunction = Arc::new(zero());
        let p = pair_reduction(z.clone(), z.clone(), bct().as_ref(), &cfg()).unwrap();
        assert_eq!(p.value.approx(0), q(1, 2));
        let a = pair_reduction(t.clone(), t.clone(), bct().as_ref(), &cfg()).unwrap();
        let b = crate::reductions::continuity_point_from_baire(t, bct().as_ref(), &cfg()).unwrap();
        assert_eq!(a.value.approx(20), b.value.approx(20));
        assert!(pair_reduction(third, z, &ConstantBaire(q(1, 3)), &cfg()).is_err());
    }

    #[test]
    fn volterra_from_pair_examples() {
        let third: SharedFunction = Arc::new(finite_indicator(vec![q(1, 3)]));
        let fixed = FixedPair(TaggedPoint::rational(q(1, 3)));
        match volterra_from_pair(third, &fixed, &cfg()).unwrap() {
            VolterraAnswer::RationalDiscontinuity { q: r, m } => assert_eq!((r, m), (q(1, 3), 0)),
            other => panic!("{other:?}"),
        }
        let honest = PairViaBaire { baire: bct(), config: cfg() };
        assert!(matches!(
            volterra_from_pair(Arc::new(zero()), &honest, &cfg()).unwrap(),
            VolterraAnswer::IrrationalContinuity(_)
        ));
        let liar = FixedPair(TaggedPoint::rational(q(1, 2)));
        assert!(matches!(volterra_from_pair(Arc::new(zero()), &liar, &cfg()), Err(Error::CertificateFailure(_))));
        let untagged = FixedPair(TaggedPoint::untagged(ExactReal::from_rational(q(1, 2))));
        assert!(volterra_from_pair(Arc::new(zero()), &untagged, &cfg()).is_err());
    }

    fn dyadic_level(n: usize) -> SharedFunction {
        Arc::new(crate::gallery::dyadic_level_indicator(n as u32))
    }

    #[test]
    fn sequence_examples() {
        let c = ReductionConfig { depth: 10, ..cfg() };
        let fs: FunctionSequence = Arc::new(dyadic_level);
        let p = common_continuity_point(fs, bct().as_ref(), &c).unwrap();
        assert_eq!(p.certificates.len(), 11 * 11);
        for n in 0..10u32 {
            assert!(odd_dyadic_distance(&p.approx(40).unwrap(), n).is_positive());
        }
        let zeros: FunctionSequence = Arc::new(|_| Arc::new(zero()) as SharedFunction);
        assert_eq!(common_continuity_point(zeros, bct().as_ref(), &c).unwrap().value.approx(0), q(1, 2));
        let ts: FunctionSequence = Arc::new(|_| Arc::new(thomae()) as SharedFunction);
        let single = crate::reductions::continuity_point_from_baire(Arc::new(thomae()), bct().as_ref(), &c).unwrap();
        let many = common_continuity_point(ts, bct().as_ref(), &c).unwrap();
        assert_eq!(single.value.approx(12), many.value.approx(12));
    }
}
