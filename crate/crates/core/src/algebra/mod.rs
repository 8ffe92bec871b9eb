//! Exact arithmetic in `F_q`, `F_q[t]` and finite-support elements of `F_q((1/t))`.

mod field;
mod laurent;
mod linalg;
mod lognorm;
mod parse;
mod poly;

pub use field::{Fq, FqElem, MAX_ORDER};
pub use laurent::LaurentNum;
pub use linalg::{fq_matrix_rank, laurent_matrix_det, poly_matrix_det};
pub use lognorm::{Exponent, LogNorm};
pub use poly::FqPoly;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AlgebraError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("division is not exact")]
    Inexact,
    #[error("field order {0} is not a supported prime")]
    UnsupportedOrder(u32),
    #[error("cannot parse {0:?}")]
    Parse(String),
}
