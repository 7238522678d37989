use baire_core::error::Error;
use thiserror::Error;

pub const EXIT_OK: i32 = 0;
pub const EXIT_OTHER: i32 = 1;
pub const EXIT_BUDGET: i32 = 2;
pub const EXIT_MALFORMED: i32 = 3;
pub const EXIT_CERTIFICATE: i32 = 4;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("malformed input: {0}")]
    Malformed(String),
    #[error(transparent)]
    Core(#[from] Error),
    /// The run finished but its own report did not re-verify.
    #[error("report failed verification: {0}")]
    Unverified(String),
    #[error("{0}")]
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Malformed(_) => EXIT_MALFORMED,
            CliError::Core(Error::BudgetExhausted { .. }) => EXIT_BUDGET,
            CliError::Core(Error::InvalidInput(_) | Error::InjectivityViolation { .. }) => EXIT_MALFORMED,
            CliError::Core(Error::CertificateFailure(_)) | CliError::Unverified(_) => EXIT_CERTIFICATE,
            CliError::Core(_) | CliError::Io(_) => EXIT_OTHER,
        }
    }
}
