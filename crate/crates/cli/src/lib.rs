//! Command implementations behind the `ttcp` binary: the contraction
//! benchmark, the operation-count table and file-based contraction.

pub mod bench;
pub mod contract_cmd;
pub mod ops_table;

use thiserror::Error;

/// CLI failure classes; each maps to a process exit code.
#[derive(Error, Debug)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Data(String),
    #[error("{0}")]
    Numerical(String),
}

impl CliError {
    /// Exit codes: 2 usage, 3 data/format, 4 numerical failure.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Data(_) => 3,
            CliError::Numerical(_) => 4,
        }
    }
}

impl From<ttcp_core::Error> for CliError {
    fn from(e: ttcp_core::Error) -> Self {
        use ttcp_core::Error as E;
        match e {
            E::NonFinite { .. } => CliError::Numerical(e.to_string()),
            E::NegativeEpsilon => CliError::Usage(e.to_string()),
            other => CliError::Data(other.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Data(e.to_string())
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Data(e.to_string())
    }
}

pub type CliResult<T> = Result<T, CliError>;
