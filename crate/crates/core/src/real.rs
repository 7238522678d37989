//! Exact reals coded as fast-converging Cauchy sequences of rationals.
//!
//! An [`ExactReal`] answers `approx(k)` with a rational within `2^{-k}` of the
//! represented real, and successive answers satisfy
//! `|approx(n) - approx(n+i)| ≤ 2^{-n}`. Equality is never decided: callers get
//! precision-indexed comparisons and apartness certificates instead.

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::rational::Rational;

type ApproxFn = dyn Fn(u32) -> Rational + Send + Sync;

/// A real number given by an on-demand approximation stream.
#[derive(Clone)]
pub struct ExactReal {
    approx: Arc<ApproxFn>,
    exact: Option<Rational>,
}

/// Outcome of a comparison at a fixed precision.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Comparison {
    Less,
    Greater,
    IndistinguishableAt(u32),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactRealError {
    /// No separation was found up to the given precision. This never means "equal".
    #[error("no separation found up to precision {tried}")]
    BudgetExhausted { tried: u32 },
}

/// The operations of the minimal arithmetic layer.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Neg,
    Abs,
    Min,
    Max,
    Midpoint,
}

impl ExactReal {
    /// The constant sequence at `q`.
    pub fn from_rational(q: Rational) -> Self {
        let value = q.clone();
        ExactReal { approx: Arc::new(move |_| value.clone()), exact: Some(q) }
    }

    /// Wraps a sequence that already satisfies the Cauchy discipline.
    ///
    /// The caller guarantees `|f(n) - f(n+i)| ≤ 2^{-n}` for all `n, i`.
    pub fn from_cauchy_fn(f: impl Fn(u32) -> Rational + Send + Sync + 'static) -> Self {
        ExactReal { approx: Arc::new(f), exact: None }
    }

    /// Normalizes an arbitrary rational sequence into a valid real.
    ///
    /// The sequence is shifted by one precision digit and then frozen at the
    /// first index where adjacent terms differ by more than `2^{-(k+1)}`. A
    /// sequence that already obeys the Cauchy bound is left pointwise equal to
    /// its shift, and every input yields some real.
    pub fn normalized(f: impl Fn(u32) -> Rational + Send + Sync + 'static) -> Self {
        let hat = move |k: u32| {
            let mut prev = f(1);
            for j in 0..k {
                let next = f(j + 2);
                if (&next - &prev).abs() > Rational::pow2_neg(j + 1) {
                    return prev;
                }
                prev = next;
            }
            prev
        };
        ExactReal { approx: Arc::new(hat), exact: None }
    }

    /// A rational within `2^{-k}` of the represented real.
    pub fn approx(&self, k: u32) -> Rational {
        match &self.exact {
            Some(q) => q.clone(),
            None => (self.approx)(k),
        }
    }

    /// The exact rational value when the real was built from one.
    pub fn as_rational(&self) -> Option<&Rational> {
        self.exact.as_ref()
    }

    pub fn arith(op: ArithOp, x: &ExactReal, y: Option<&ExactReal>) -> ExactReal {
        let binary = || y.expect("binary arithmetic needs a second operand");
        match op {
            ArithOp::Add => x.add(binary()),
            ArithOp::Sub => x.sub(binary()),
            ArithOp::Neg => x.neg(),
            ArithOp::Abs => x.abs(),
            ArithOp::Min => x.min(binary()),
            ArithOp::Max => x.max(binary()),
            ArithOp::Midpoint => x.midpoint(binary()),
        }
    }

    pub fn add(&self, other: &ExactReal) -> ExactReal {
        if let (Some(a), Some(b)) = (&self.exact, &other.exact) {
            return ExactReal::from_rational(a + b);
        }
        let (x, y) = (self.clone(), other.clone());
        ExactReal::from_cauchy_fn(move |k| x.approx(k + 1) + y.approx(k + 1))
    }

    pub fn neg(&self) -> ExactReal {
        if let Some(a) = &self.exact {
            return ExactReal::from_rational(-a);
        }
        let x = self.clone();
        ExactReal::from_cauchy_fn(move |k| -x.approx(k))
    }

    pub fn sub(&self, other: &ExactReal) -> ExactReal {
        self.add(&other.neg())
    }

    pub fn abs(&self) -> ExactReal {
        if let Some(a) = &self.exact {
            return ExactReal::from_rational(a.abs());
        }
        let x = self.clone();
        ExactReal::from_cauchy_fn(move |k| x.approx(k).abs())
    }

    pub fn min(&self, other: &ExactReal) -> ExactReal {
        if let (Some(a), Some(b)) = (&self.exact, &other.exact) {
            return ExactReal::from_rational(Rational::min_of(a, b));
        }
        let (x, y) = (self.clone(), other.clone());
        ExactReal::from_cauchy_fn(move |k| Rational::min_of(&x.approx(k), &y.approx(k)))
    }

    pub fn max(&self, other: &ExactReal) -> ExactReal {
        if let (Some(a), Some(b)) = (&self.exact, &other.exact) {
            return ExactReal::from_rational(Rational::max_of(a, b));
        }
        let (x, y) = (self.clone(), other.clone());
        ExactReal::from_cauchy_fn(move |k| Rational::max_of(&x.approx(k), &y.approx(k)))
    }

    pub fn midpoint(&self, other: &ExactReal) -> ExactReal {
        if let (Some(a), Some(b)) = (&self.exact, &other.exact) {
            return ExactReal::from_rational(Rational::midpoint(a, b));
        }
        let (x, y) = (self.clone(), other.clone());
        ExactReal::from_cauchy_fn(move |k| Rational::midpoint(&x.approx(k), &y.approx(k)))
    }

    /// Compares at precision `k`; `Less`/`Greater` are always sound.
    pub fn cmp_at_precision(&self, other: &ExactReal, k: u32) -> Comparison {
        let a = self.approx(k + 2);
        let b = other.approx(k + 2);
        let gap = Rational::pow2_neg(k + 1);
        if &a + &gap < b {
            Comparison::Less
        } else if &b + &gap < a {
            Comparison::Greater
        } else {
            Comparison::IndistinguishableAt(k)
        }
    }

    /// Least precision `m` with `|approx(m) - other.approx(m)| > 2^{-m+1}`.
    ///
    /// With `budget = None` the search runs until a separation appears, so it
    /// diverges on equal inputs.
    pub fn separation_certificate(
        &self,
        other: &ExactReal,
        budget: Option<u32>,
    ) -> Result<u32, ExactRealError> {
        let mut m = 0u32;
        loop {
            if separated_at(&self.approx(m), &other.approx(m), m) {
                return Ok(m);
            }
            if let Some(limit) = budget {
                if m >= limit {
                    return Err(ExactRealError::BudgetExhausted { tried: limit });
                }
            }
            m += 1;
        }
    }
}

/// `|a - b| > 2^{-m+1}`: two precision-`m` approximants that certify distinct reals.
pub fn separated_at(a: &Rational, b: &Rational, m: u32) -> bool {
    (a - b).abs().mul_pow2(m) > Rational::from_integer(2)
}

impl From<Rational> for ExactReal {
    fn from(q: Rational) -> Self {
        ExactReal::from_rational(q)
    }
}

impl fmt::Debug for ExactReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.exact {
            Some(q) => write!(f, "ExactReal({q})"),
            None => write!(f, "ExactReal(~{})", self.approx(16)),
        }
    }
}
