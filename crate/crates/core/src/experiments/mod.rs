//! Seeded sampling of matrices, batch count and orbit experiments, log-log fits, the
//! empirical good-function checker and the brute-force measure oracles.

mod config;
mod fit;
mod good;
mod oracle;
mod run;
mod sample;

pub use config::{ExperimentConfig, OrbitTarget, TrialRecord};
pub use fit::{fit_loglog_slope, normalized_error, quantile};
pub use good::{good_function_check, GoodCheckReport, GoodCheckRow, MultiPoly};
pub use oracle::{exhaustive_average, grid_depth_needed, grid_measure_oracle};
pub use run::{
    count_centering, orbit_target, run_count_experiment, run_orbit_experiment, summarize_counts, summarize_orbits,
    CountSummary, OrbitSummary,
};
pub use sample::{sample_matrix, trial_seed};

use crate::diophantine::DiophantineError;
use crate::dynamics::DynamicsError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ExperimentError {
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("{have} digits per entry, {needed} are needed")]
    InsufficientDepth { needed: u32, have: u32 },
    #[error("more than {budget} cells to enumerate")]
    BudgetExceeded { budget: u64 },
    #[error("a log-log fit needs two positive points with distinct abscissae")]
    DegenerateFit,
    #[error(transparent)]
    Diophantine(#[from] DiophantineError),
    #[error(transparent)]
    Dynamics(#[from] DynamicsError),
}

impl ExperimentError {
    /// Precision or budget failures, as opposed to malformed input.
    pub fn is_resource_error(&self) -> bool {
        match self {
            ExperimentError::InsufficientDepth { .. } | ExperimentError::BudgetExceeded { .. } => true,
            ExperimentError::Diophantine(e) => {
                matches!(e, DiophantineError::InsufficientPrecision { .. } | DiophantineError::BudgetExceeded { .. })
            }
            ExperimentError::Dynamics(e) => e.is_resource_error(),
            _ => false,
        }
    }
}
