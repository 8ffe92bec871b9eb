//! Weighted quasi-norms, the regions `E_{T,R}` / `F_{S,R}` and their directional
//! refinements, exact volumes, solution counts and the expectation oracle.

mod count;
mod expect;
mod measure;
mod norm;
mod region;

pub use count::{
    count_solutions, count_solutions_budgeted, count_solutions_directional, precision_required, ApproxMatrix,
    CountResult, DEFAULT_BUDGET,
};
pub use expect::{expected_count, expected_multiplicity, solution_probability};
pub use measure::{cylinder_measure, measure_e, measure_e_directional, measure_f, region_measure};
pub use norm::{direction_project, level, quasi_norm, DigitTable, Side};
pub use region::{Cylinder, RegionSpec};

use crate::algebra::AlgebraError;
use crate::dynamics::InvalidWeights;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DiophantineError {
    #[error("expected {expected} components, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("the zero vector has no direction")]
    ZeroVector,
    #[error("matrix carries {have} fractional digits, {needed} are needed")]
    InsufficientPrecision { needed: u32, have: u32 },
    #[error("more than {budget} candidates to scan")]
    BudgetExceeded { budget: u64 },
    #[error("{0}")]
    Parse(String),
    #[error(transparent)]
    InvalidWeights(#[from] InvalidWeights),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}
