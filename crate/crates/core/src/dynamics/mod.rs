//! The diagonal flow `g_a`, the slice `u_A`, Siegel transforms of region indicators and
//! Birkhoff averages along orbits `g_a^n u_A Z^d`.

mod flow;
mod orbit;
mod siegel;
mod weights;

pub use flow::{flow_apply, flow_exponents, ua_basis};
pub use orbit::{birkhoff_series, orbit_values, Observable, OrbitWalker};
pub(crate) use orbit::running_means;
pub use siegel::{
    ball_siegel, comparison_bounds_hold, count_lattice_points, domination_check, sandwich_counts, siegel_count,
    translate_covers, Domination, SandwichCounts,
};
pub use weights::{InvalidWeights, Weights};

use crate::diophantine::DiophantineError;
use crate::lattice::LatticeError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DynamicsError {
    #[error("matrix carries {have} fractional digits, {needed} are needed")]
    InsufficientPrecision { needed: u32, have: u32 },
    #[error("more than {budget} lattice points to enumerate")]
    BudgetExceeded { budget: u64 },
    #[error("{0}")]
    Parse(String),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Diophantine(#[from] DiophantineError),
}

impl DynamicsError {
    /// Precision or budget failures, as opposed to malformed input.
    pub fn is_resource_error(&self) -> bool {
        matches!(
            self,
            DynamicsError::InsufficientPrecision { .. }
                | DynamicsError::BudgetExceeded { .. }
                | DynamicsError::Lattice(LatticeError::BudgetExceeded { .. })
                | DynamicsError::Diophantine(DiophantineError::InsufficientPrecision { .. })
                | DynamicsError::Diophantine(DiophantineError::BudgetExceeded { .. })
        )
    }
}
