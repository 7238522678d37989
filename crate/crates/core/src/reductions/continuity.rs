use std::sync::Arc;

use super::{
    apart_from_rationals, avoid_rationals_sequence, outside_dk, realise, BaireRealiserOracle, Certificate,
    ContinuityPointOracle, MinMaxOracle, PointTag, ReductionConfig, TaggedPoint,
};
use crate::error::Error;
use crate::gallery::{make_h, ClosedNowhereDenseSeq, SharedFunction};
use crate::open_sets::DenseOpenSequence;

/// A continuity point of `f`: a Baire point of `n ↦ [0,1] ∖ D_n`.
///
/// With `cfg.augment` the sequence is also intersected with the complements of
/// the canonical rationals and the point is tagged apart from them.
pub fn continuity_point_from_baire(
    f: SharedFunction,
    b: &dyn BaireRealiserOracle,
    cfg: &ReductionConfig,
) -> Result<TaggedPoint, Error> {
    let g = f.clone();
    let mut seq = DenseOpenSequence::new(move |n| g.complement_of_dk(n));
    let tag = if cfg.augment {
        seq = seq.intersect(&avoid_rationals_sequence());
        PointTag::ApartFromRationals
    } else {
        PointTag::Unclassified
    };
    let mut p = realise(b, seq, cfg, tag)?;
    p.certificates = outside_dk(&p, f.as_ref(), 0, cfg)?;
    if cfg.augment {
        p.certificates.extend(apart_from_rationals(&p, cfg)?);
    }
    Ok(p)
}

fn in_every_open(p: &TaggedPoint, x: &ClosedNowhereDenseSeq, cfg: &ReductionConfig) -> Result<Vec<Certificate>, Error> {
    (0..=cfg.depth)
        .map(|n| {
            let ball = p
                .ball(n, &x.complement_witness(n), cfg.cert_precision)
                .map_err(|_| Error::cert(format!("oracle point not certified outside X_{n}")))?;
            Ok(Certificate::InOpen { n, ball })
        })
        .collect()
}

/// A point of `⋂ ([0,1] ∖ X_n)` from a continuity point of `h`.
///
/// `h` vanishes exactly off `⋃ X_n` and is its own oscillation, so its
/// continuity points avoid every `X_n`. The returned point is re-certified
/// against each complement directly.
pub fn baire_from_continuity(
    x: &ClosedNowhereDenseSeq,
    c: &dyn ContinuityPointOracle,
    cfg: &ReductionConfig,
) -> Result<TaggedPoint, Error> {
    let h: SharedFunction = Arc::new(make_h(x.clone()));
    let mut p = c.continuity_point(h)?;
    p.certificates = in_every_open(&p, x, cfg)?;
    Ok(p)
}

/// A point of `⋂ ([0,1] ∖ X_n)` from a min-max oracle applied to `h`.
///
/// If `h(a) > 0` then `{x : h(a) ≤ h(x) ≤ h(b)}` is finite, so an honest
/// oracle has `h(a) = 0`, i.e. `a` avoids every `X_n`.
pub fn baire_from_minmax(
    x: &ClosedNowhereDenseSeq,
    m: &dyn MinMaxOracle,
    cfg: &ReductionConfig,
) -> Result<TaggedPoint, Error> {
    let h: SharedFunction = Arc::new(make_h(x.clone()));
    let (mut a, _b) = m.min_max(h)?;
    if let PointTag::RationalLiteral(q) = &a.tag {
        if a.value.as_rational() != Some(q) {
            return Err(Error::cert(format!("point tagged {q} is not that rational")));
        }
        let decision = x.membership().ok_or(Error::NeedsMembershipDecision)?;
        if let Some(n) = decision.least_index(q) {
            return Err(Error::cert(format!(
                "h({q}) = 2^-{} > 0, so the set between h(a) and h(b) is finite",
                n + 1
            )));
        }
    }
    a.certificates = in_every_open(&a, x, cfg)?;
    Ok(a)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gallery::{finite_indicator, thomae, thomae_dk, zero};
    use crate::rational::{q, Rational};
    use crate::reductions::{ConstantBaire, ContinuityViaBaire, FixedContinuity, FixedMinMax, MinMaxViaContinuity, OwnBct};

    fn cfg() -> ReductionConfig {
        ReductionConfig::default()
    }

    fn bct() -> OwnBct {
        OwnBct { stage_budget: Some(100_000) }
    }

    #[test]
    fn thomae_continuity_point_avoids_small_denominators() {
        let p = continuity_point_from_baire(Arc::new(thomae()), &bct(), &cfg()).unwrap();
        assert_eq!(p.certificates.len(), 17);
        let trace = p.baire.as_ref().unwrap().trace(17).unwrap();
        for k in 0..=8u32 {
            // stage k lies inside [0,1] ∖ D_k
            assert!(thomae_dk(k).iter().all(|d| !trace[k as usize].interval.contains(d)));
        }
        for d in thomae_dk(6) {
            assert!(p.apart(&d, 200).unwrap().is_consistent());
        }
    }

    #[test]
    fn indicator_and_zero() {
        let p = continuity_point_from_baire(Arc::new(finite_indicator(vec![q(1, 3), q(2, 3)])), &bct(), &cfg()).unwrap();
        assert!(p.apart(&q(1, 3), 100).is_ok() && p.apart(&q(2, 3), 100).is_ok());
        let z = continuity_point_from_baire(Arc::new(zero()), &bct(), &cfg()).unwrap();
        let trace = z.baire.as_ref().unwrap().trace(8).unwrap();
        for s in &trace {
            assert_eq!(s.interval.width(), Rational::pow2_neg(s.n as u32 + 1));
        }
    }

    #[test]
    fn adversarial_baire_point_is_rejected() {
        let r = continuity_point_from_baire(Arc::new(thomae()), &ConstantBaire(q(1, 2)), &cfg());
        assert!(matches!(r, Err(Error::CertificateFailure(_))));
    }

    #[test]
    fn round_trip_on_dyadic_instance() {
        let x = ClosedNowhereDenseSeq::dyadic_levels();
        let c = ContinuityViaBaire { baire: Arc::new(bct()), config: cfg() };
        let p = baire_from_continuity(&x, &c, &cfg()).unwrap();
        assert_eq!(p.certificates.len(), 17);
        for cert in &p.certificates {
            let Certificate::InOpen { n, ball } = cert else { panic!() };
            assert!(ball.verify(&x.complement_witness(*n)));
        }
        let empty = ClosedNowhereDenseSeq::finite_slices(vec![]);
        assert!(baire_from_continuity(&empty, &FixedContinuity(q(1, 2)), &cfg()).is_ok());
        let r = baire_from_continuity(&x, &FixedContinuity(q(1, 2)), &cfg());
        assert!(matches!(r, Err(Error::CertificateFailure(_))));
    }

    #[test]
    fn minmax_examples() {
        let x = ClosedNowhereDenseSeq::dyadic_levels();
        let a = baire_from_minmax(&x, &FixedMinMax(q(1, 3), q(1, 3)), &cfg()).unwrap();
        assert_eq!(a.value.as_rational(), Some(&q(1, 3)));
        assert_eq!(a.certificates.len(), 17);
        let r = baire_from_minmax(&x, &FixedMinMax(q(1, 2), q(1, 2)), &cfg());
        assert!(matches!(r, Err(Error::CertificateFailure(_))));
        let empty = ClosedNowhereDenseSeq::finite_slices(vec![]);
        assert!(baire_from_minmax(&empty, &FixedMinMax(q(1, 2), q(1, 2)), &cfg()).is_ok());
        let honest = MinMaxViaContinuity {
            continuity: Arc::new(ContinuityViaBaire { baire: Arc::new(bct()), config: cfg() }),
        };
        assert!(baire_from_minmax(&x, &honest, &cfg()).is_ok());
        let blind = ClosedNowhereDenseSeq::dyadic_levels().without_membership();
        assert!(matches!(
            baire_from_minmax(&blind, &FixedMinMax(q(1, 3), q(1, 3)), &cfg()),
            Err(Error::NeedsMembershipDecision)
        ));
    }
}
