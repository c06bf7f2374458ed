use std::process::ExitCode;
use thiserror::Error;
use xop_core::classical::ClassicalError;
use xop_core::pearson::PearsonError;
use xop_core::quadrature::QuadError;
use xop_core::x1::X1Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("{0}")]
    Constraint(String),
    #[error("degenerate: {0}")]
    Degenerate(String),
    #[error("verification failed: {0}")]
    Verify(String),
    /// Complete output whose checks did not all pass.
    #[error("some checks failed")]
    Report(String),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn code(&self) -> ExitCode {
        ExitCode::from(match self {
            CliError::Verify(_) | CliError::Report(_) => 1,
            CliError::Usage(_) | CliError::Constraint(_) | CliError::Io(_) => 2,
            CliError::Degenerate(_) => 3,
        })
    }
}

pub fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

impl From<X1Error> for CliError {
    fn from(e: X1Error) -> Self {
        let msg = e.to_string();
        match e {
            X1Error::ComplexRoots(_)
            | X1Error::InvalidSpec(_)
            | X1Error::InconsistentSpec
            | X1Error::Positivity(_)
            | X1Error::Pearson(_) => CliError::Constraint(msg),
            X1Error::NoPolynomialEigenfunction { .. }
            | X1Error::DegenerateEigenvalue { .. }
            | X1Error::EigenvalueCollision { .. }
            | X1Error::PivotZero { .. }
            | X1Error::NoClosedReduction(_) => CliError::Degenerate(msg),
            X1Error::BasisInvarianceViolated { .. } | X1Error::ClosedFormMismatch => {
                CliError::Verify(msg)
            }
            X1Error::Classical(c) => c.into(),
        }
    }
}

impl From<ClassicalError> for CliError {
    fn from(e: ClassicalError) -> Self {
        let msg = e.to_string();
        match e {
            ClassicalError::InvalidSpec | ClassicalError::Constraint(_) => CliError::Constraint(msg),
            ClassicalError::Degenerate { .. } => CliError::Degenerate(msg),
            ClassicalError::Quadrature(_) => CliError::Verify(msg),
        }
    }
}

impl From<PearsonError> for CliError {
    fn from(e: PearsonError) -> Self {
        CliError::Constraint(e.to_string())
    }
}

impl From<QuadError> for CliError {
    fn from(e: QuadError) -> Self {
        CliError::Verify(e.to_string())
    }
}
