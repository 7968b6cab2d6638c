use std::path::PathBuf;

use zassenhaus_core::budget::BudgetBreach;

/// Failures surfaced by the command-line front end, each with its exit status.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    /// A cache file that cannot be read back as a series.
    #[error("{path}: {message}")]
    CorruptCache { path: PathBuf, message: String },

    /// One or more checks failed; the report has already been printed.
    #[error("verification failed")]
    VerificationFailed,

    #[error("stopped at order {order}: {breach}; last completed order: {}",
        last_completed.map_or_else(|| "none".to_string(), |n| n.to_string()))]
    Budget {
        order: usize,
        last_completed: Option<usize>,
        breach: BudgetBreach,
    },

    #[error(transparent)]
    Engine(zassenhaus_core::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::VerificationFailed | CliError::CorruptCache { .. } => 1,
            CliError::Engine(zassenhaus_core::Error::Structure(_)) => 1,
            CliError::Usage(_) | CliError::Io { .. } | CliError::Engine(_) => 2,
            CliError::Budget { .. } => 3,
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.into(),
            source,
        }
    }
}

impl From<zassenhaus_core::Error> for CliError {
    fn from(e: zassenhaus_core::Error) -> Self {
        match e {
            zassenhaus_core::Error::BudgetExceeded {
                order,
                last_completed,
                breach,
            } => CliError::Budget {
                order,
                last_completed,
                breach,
            },
            other => CliError::Engine(other),
        }
    }
}
