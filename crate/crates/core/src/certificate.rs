//! Finite evidence attached to realiser and reduction outputs.

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::open_sets::OpenR2;
use crate::rational::Rational;
use crate::real::{separated_at, ExactReal};

/// A point lies in set `set` because a ball around its approximation does.
///
/// With `precision = Some(m)`, `center` is the point's `m`-th approximation,
/// so the point is within `2^{-m}` of it, and `radius > 2^{-m}`. With `None`
/// the point is exactly `center`. `witness_precision` is the index the radius
/// witness was queried at.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BallCertificate {
    pub set: usize,
    pub center: Rational,
    pub radius: Rational,
    pub precision: Option<u32>,
    pub witness_precision: u32,
}

impl BallCertificate {
    /// Internal consistency: the ball reaches past the point's uncertainty.
    pub fn is_consistent(&self) -> bool {
        match self.precision {
            Some(m) => self.radius > Rational::pow2_neg(m),
            None => self.radius.is_positive(),
        }
    }

    /// Re-queries the witness and checks the claimed radius against it.
    pub fn verify(&self, o: &OpenR2) -> bool {
        self.is_consistent() && o.radius(&self.center, self.witness_precision) >= self.radius
    }
}

/// Certifies `x ∈ O` by scanning precisions `0..=max_precision`.
pub fn certify_ball(set: usize, o: &OpenR2, x: &ExactReal, max_precision: u32) -> Result<BallCertificate, Error> {
    certify_ball_with(set, o, x, max_precision, |_| Ok(()))
}

/// As [`certify_ball`], calling `prepare(m)` before reading `x.approx(m)`.
pub fn certify_ball_with(
    set: usize,
    o: &OpenR2,
    x: &ExactReal,
    max_precision: u32,
    mut prepare: impl FnMut(u32) -> Result<(), Error>,
) -> Result<BallCertificate, Error> {
    if let Some(q) = x.as_rational() {
        for p in 0..=max_precision {
            let r = o.radius(q, p);
            if r.is_positive() {
                return Ok(BallCertificate { set, center: q.clone(), radius: r, precision: None, witness_precision: p });
            }
        }
    } else {
        for m in 0..=max_precision {
            prepare(m)?;
            let c = x.approx(m);
            let r = o.radius(&c, m);
            if r > Rational::pow2_neg(m) {
                return Ok(BallCertificate { set, center: c, radius: r, precision: Some(m), witness_precision: m });
            }
        }
    }
    Err(Error::cert(format!("point not certified inside set {set} up to precision {max_precision}")))
}

/// `|x − other| > 0`, certified by `|approx − other_approx| > 2^{-m+1}` at precision `m`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeparationCertificate {
    pub other: Rational,
    pub precision: u32,
    pub approx: Rational,
    pub other_approx: Rational,
}

impl SeparationCertificate {
    pub fn is_consistent(&self) -> bool {
        separated_at(&self.approx, &self.other_approx, self.precision)
    }

    /// A lower bound on `|x − other|` implied by the certificate.
    pub fn radius(&self) -> Rational {
        (&self.approx - &self.other_approx).abs() - Rational::pow2_neg(self.precision).mul_pow2(1)
    }
}

/// Separates `x` from the exact rational `other`.
pub fn certify_apart(x: &ExactReal, other: &Rational, budget: u32) -> Result<SeparationCertificate, Error> {
    certify_apart_with(x, other, budget, |_| Ok(()))
}

/// As [`certify_apart`], calling `prepare(m)` before reading `x.approx(m)`.
pub fn certify_apart_with(
    x: &ExactReal,
    other: &Rational,
    budget: u32,
    mut prepare: impl FnMut(u32) -> Result<(), Error>,
) -> Result<SeparationCertificate, Error> {
    for m in 0..=budget {
        prepare(m)?;
        let a = x.approx(m);
        if separated_at(&a, other, m) {
            return Ok(SeparationCertificate { other: other.clone(), precision: m, approx: a, other_approx: other.clone() });
        }
    }
    Err(Error::cert(format!("no separation from {other} up to precision {budget}")))
}

/// `osc_f(point) ≥ 2^{-m}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OscCertificate {
    pub point: Rational,
    pub m: u32,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    #[test]
    fn ball_for_rational_and_stream() {
        let o = OpenR2::complement_of_finite(vec![q(1, 2)]);
        let c = certify_ball(0, &o, &ExactReal::from_rational(q(1, 3)), 4).unwrap();
        assert_eq!(c.precision, None);
        assert_eq!(c.radius, q(1, 6));
        assert!(c.is_consistent());
        assert!(certify_ball(0, &o, &ExactReal::from_rational(q(1, 2)), 20).is_err());
        // a stream converging to 1/3 from above
        let x = ExactReal::from_cauchy_fn(|k| q(1, 3) + Rational::pow2_neg(k + 1));
        let c = certify_ball(3, &o, &x, 20).unwrap();
        assert_eq!(c.set, 3);
        assert!(c.is_consistent());
        let m = c.precision.unwrap();
        assert!((&c.center - q(1, 3)).abs() <= Rational::pow2_neg(m));
        assert!(c.verify(&o));
        let mut widened = c.clone();
        widened.radius = &widened.radius * Rational::from(2);
        assert!(!widened.verify(&o));
        assert!(!c.verify(&OpenR2::complement_of_finite(vec![c.center.clone()])));
    }

    #[test]
    fn separation_certificates() {
        let x = ExactReal::from_rational(q(1, 3));
        let c = certify_apart(&x, &q(1, 2), 30).unwrap();
        assert_eq!(c.precision, 4);
        assert!(c.is_consistent());
        assert!(c.radius().is_positive() && c.radius() <= q(1, 6));
        assert!(certify_apart(&x, &q(1, 3), 30).is_err());
    }
}
