use thiserror::Error;

use tdkernel::kernels::KernelError;
use tdkernel::oracles::OracleError;
use tdkernel::treedecomp::DecompositionError;

use crate::generate::GenError;
use crate::io::ParseError;

/// Every failure the harness reports, each mapped to one exit code class.
#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Parse { path: String, source: ParseError },
    /// An oracle query above the size cap.
    #[error("{0}")]
    Contract(OracleError),
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("{0}")]
    Precondition(String),
}

impl HarnessError {
    pub fn exit_code(&self) -> i32 {
        match self {
            HarnessError::Usage(_) | HarnessError::Io { .. } => 1,
            HarnessError::Parse { .. } => 2,
            HarnessError::Contract(_) => 3,
            HarnessError::Verification(_) => 4,
            HarnessError::Precondition(_) => 5,
        }
    }
}

impl From<OracleError> for HarnessError {
    fn from(e: OracleError) -> Self {
        match e {
            OracleError::ContractViolation { .. } => HarnessError::Contract(e),
            OracleError::InvalidAnswer { .. } | OracleError::Inconsistent(_) => {
                HarnessError::Verification(e.to_string())
            }
            other => HarnessError::Precondition(other.to_string()),
        }
    }
}

impl From<KernelError> for HarnessError {
    fn from(e: KernelError) -> Self {
        match e {
            KernelError::Oracle(o) => o.into(),
            other => HarnessError::Precondition(other.to_string()),
        }
    }
}

impl From<DecompositionError> for HarnessError {
    fn from(e: DecompositionError) -> Self {
        HarnessError::Precondition(e.to_string())
    }
}

impl From<GenError> for HarnessError {
    fn from(e: GenError) -> Self {
        HarnessError::Precondition(e.to_string())
    }
}

impl From<tdkernel::GraphError> for HarnessError {
    fn from(e: tdkernel::GraphError) -> Self {
        HarnessError::Precondition(e.to_string())
    }
}
