use thiserror::Error;

use crate::real::ExactRealError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A search ran out of steps. Says nothing about whether a witness exists.
    #[error("budget exhausted after {steps} steps ({context})")]
    BudgetExhausted { context: String, steps: u64 },
    #[error("evaluation needs a membership decision for the closed sets")]
    NeedsMembershipDecision,
    #[error("search needs an osc-zero decision hook")]
    NeedsOscZeroDecision,
    #[error("certificate failure: {0}")]
    CertificateFailure(String),
    #[error("injectivity violated: elements {first} and {second} share height {height}")]
    InjectivityViolation { first: u64, second: u64, height: u64 },
    #[error("delta hook unavailable: {0}")]
    DeltaHookUnavailable(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

impl Error {
    pub fn budget(context: impl Into<String>, steps: u64) -> Self {
        Error::BudgetExhausted { context: context.into(), steps }
    }

    pub fn cert(msg: impl Into<String>) -> Self {
        Error::CertificateFailure(msg.into())
    }
}

impl From<ExactRealError> for Error {
    fn from(e: ExactRealError) -> Self {
        match e {
            ExactRealError::BudgetExhausted { tried } => {
                Error::budget("separation search", u64::from(tried) + 1)
            }
        }
    }
}

/// Step counter for budgeted searches. `None` means unbounded.
#[derive(Debug, Clone)]
pub struct Budget {
    limit: Option<u64>,
    used: u64,
}

impl Budget {
    pub fn new(limit: Option<u64>) -> Self {
        Budget { limit, used: 0 }
    }

    pub fn limited(limit: u64) -> Self {
        Budget::new(Some(limit))
    }

    pub fn unlimited() -> Self {
        Budget::new(None)
    }

    pub fn used(&self) -> u64 {
        self.used
    }

    pub fn limit(&self) -> Option<u64> {
        self.limit
    }

    /// Spends one step.
    pub fn tick(&mut self, context: &str) -> Result<(), Error> {
        if let Some(limit) = self.limit {
            if self.used >= limit {
                return Err(Error::budget(context, self.used));
            }
        }
        self.used += 1;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn budget_counts_and_stops() {
        let mut b = Budget::limited(3);
        for _ in 0..3 {
            b.tick("t").unwrap();
        }
        assert_eq!(b.tick("t"), Err(Error::budget("t", 3)));
        let mut u = Budget::unlimited();
        for _ in 0..10_000 {
            u.tick("t").unwrap();
        }
        assert_eq!(u.used(), 10_000);
    }
}
