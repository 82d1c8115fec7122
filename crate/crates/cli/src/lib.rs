//! Front end for `ddc-core`: p-grid sweeps of the capacity bounds, oracle
//! suites and the data behind the bound-comparison figure, all written as
//! deterministic CSV.

pub mod bounds;
pub mod config;
pub mod figure;
pub mod oracle;
pub mod simulate;
pub mod table;

pub use config::{GridSpec, RunConfig};

/// Default p-grid for sweeps.
pub const DEFAULT_GRID: &str = "0.01:0.99:99";

/// Command failures, each mapped to a process exit status.
#[derive(Debug, thiserror::Error)]
pub enum Failure {
    #[error("usage: {0}")]
    Usage(String),
    #[error("oracle failure: {0}")]
    Oracle(String),
    #[error("budget exceeded: {0}")]
    Budget(String),
    #[error("{0}")]
    Io(String),
    #[error(transparent)]
    Core(ddc_core::Error),
}

impl Failure {
    pub fn exit_code(&self) -> i32 {
        match self {
            Failure::Usage(_) => 1,
            Failure::Oracle(_) => 2,
            Failure::Budget(_) => 3,
            Failure::Io(_) | Failure::Core(_) => 4,
        }
    }
}

impl From<ddc_core::Error> for Failure {
    fn from(e: ddc_core::Error) -> Self {
        match e {
            ddc_core::Error::BudgetExceeded(m) => Failure::Budget(m),
            ddc_core::Error::InvalidProbability { .. } | ddc_core::Error::InvalidArgument(_) => {
                Failure::Usage(e.to_string())
            }
            other => Failure::Core(other),
        }
    }
}
