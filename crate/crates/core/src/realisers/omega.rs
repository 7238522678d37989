use std::sync::Arc;

use crate::error::Error;
use crate::rational::Rational;
use crate::real::ExactReal;

/// The given form of a finite set.
#[derive(Clone)]
pub enum FiniteSetInput {
    Enumerated(Vec<Rational>),
    /// Characteristic function. No computable realiser accepts this form.
    Characteristic(Arc<dyn Fn(&Rational) -> bool + Send + Sync>),
}

/// Outputs a finite list of reals containing every element of the input set.
pub trait FinitenessRealiser {
    fn realise(&self, input: &FiniteSetInput) -> Result<Vec<ExactReal>, Error>;
}

/// The shipped realiser: handles enumerated inputs only.
#[derive(Debug, Clone, Copy, Default)]
pub struct EnumeratedOmegaFin;

impl FinitenessRealiser for EnumeratedOmegaFin {
    fn realise(&self, input: &FiniteSetInput) -> Result<Vec<ExactReal>, Error> {
        match input {
            FiniteSetInput::Enumerated(points) => Ok(omega_fin(points)),
            FiniteSetInput::Characteristic(_) => {
                Err(Error::InvalidInput("characteristic-function input has no computable finiteness realiser".into()))
            }
        }
    }
}

/// `X` as exact reals, deduplicated, first occurrence kept.
pub fn omega_fin(points: &[Rational]) -> Vec<ExactReal> {
    let mut seen: Vec<&Rational> = Vec::new();
    let mut out = Vec::new();
    for p in points {
        if !seen.contains(&p) {
            seen.push(p);
            out.push(ExactReal::from_rational(p.clone()));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    fn values(v: &[ExactReal]) -> Vec<Rational> {
        v.iter().map(|x| x.as_rational().unwrap().clone()).collect()
    }

    #[test]
    fn examples() {
        assert_eq!(values(&omega_fin(&[q(1, 3), q(2, 3)])), vec![q(1, 3), q(2, 3)]);
        assert!(omega_fin(&[]).is_empty());
        assert_eq!(values(&omega_fin(&[q(1, 2), q(2, 4)])), vec![q(1, 2)]);
    }

    #[test]
    fn characteristic_input_is_refused() {
        let r = EnumeratedOmegaFin;
        assert!(r.realise(&FiniteSetInput::Characteristic(Arc::new(|x| *x == q(1, 2)))).is_err());
        assert_eq!(r.realise(&FiniteSetInput::Enumerated(vec![q(1, 5)])).unwrap().len(), 1);
    }
}
