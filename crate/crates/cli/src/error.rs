//! Error type of the command-line layer and its mapping onto exit codes.

use seesaw_core::{FemError, MechanicsError, OpticsError, SearchError};
use thiserror::Error;

use crate::config::ConfigError;

/// Exit code for success.
pub const EXIT_OK: i32 = 0;
/// Exit code for usage, configuration, and I/O problems.
pub const EXIT_USAGE: i32 = 1;
/// Exit code for constraint violations and infeasible requests.
pub const EXIT_CONSTRAINT: i32 = 2;
/// Exit code for internal numerical failures.
pub const EXIT_NUMERICAL: i32 = 3;

/// Anything a command can fail with, each variant tied to one exit code.
#[derive(Debug, Error)]
pub enum CliError {
    /// Bad flags or flag combinations.
    #[error("{0}")]
    Usage(String),

    /// Configuration file could not be parsed or validated.
    #[error("{0}")]
    Config(#[from] ConfigError),

    /// Reading or writing a file failed.
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    /// The requested operation violates a physical or service constraint.
    #[error("{0}")]
    Constraint(String),

    /// A search or analysis has no feasible answer.
    #[error("{0}")]
    Infeasible(String),

    /// The underlying numerics failed (singular or non-converged system).
    #[error("{0}")]
    Numerical(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Usage(_) | Self::Config(_) | Self::Io { .. } => EXIT_USAGE,
            Self::Constraint(_) | Self::Infeasible(_) => EXIT_CONSTRAINT,
            Self::Numerical(_) => EXIT_NUMERICAL,
        }
    }

    pub fn io(path: impl Into<String>, source: std::io::Error) -> Self {
        Self::Io {
            path: path.into(),
            source,
        }
    }
}

impl From<MechanicsError> for CliError {
    fn from(err: MechanicsError) -> Self {
        match err {
            MechanicsError::OutOfRegime { .. } => Self::Constraint(err.to_string()),
            MechanicsError::SingularSystem => Self::Numerical(err.to_string()),
            _ => Self::Usage(err.to_string()),
        }
    }
}

impl From<FemError> for CliError {
    fn from(err: FemError) -> Self {
        match err {
            FemError::UnderConstrained
            | FemError::Unconverged { .. }
            | FemError::DegenerateSolution => Self::Numerical(err.to_string()),
            FemError::Mechanics(inner) => inner.into(),
            _ => Self::Usage(err.to_string()),
        }
    }
}

impl From<OpticsError> for CliError {
    fn from(err: OpticsError) -> Self {
        Self::Usage(err.to_string())
    }
}

impl From<SearchError> for CliError {
    fn from(err: SearchError) -> Self {
        match err {
            SearchError::InfeasibleStart => Self::Infeasible(err.to_string()),
            SearchError::Mechanics(inner) => inner.into(),
            SearchError::Optics(inner) => inner.into(),
            _ => Self::Usage(err.to_string()),
        }
    }
}
