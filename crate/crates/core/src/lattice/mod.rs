//! `F_q[t]`-lattices in `K^d`: weak Popov reduction, shortest vectors, the height
//! `alpha`, wedge covolumes and exact point enumeration.

mod basis;
mod enumerate;
mod reduce;

pub use basis::{is_unimodular, sup_norm, LatticeBasis};
pub use enumerate::{ball_point_count, enumerate_points, for_each_point};
pub use reduce::{alpha_value, delta_shortest, weak_popov_reduce, ReducedBasis};

use crate::algebra::{laurent_matrix_det, AlgebraError, Fq, LaurentNum, LogNorm};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LatticeError {
    #[error("basis matrix is not square")]
    NotSquare,
    #[error("basis rows are linearly dependent")]
    SingularBasis,
    #[error("lattice is not unimodular (log covolume {0})")]
    NonUnimodular(i64),
    #[error("vectors are linearly dependent")]
    DependentVectors,
    #[error("enumeration needs more than {budget} points")]
    BudgetExceeded { budget: u64 },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// Sup norm of `v_1 ^ ... ^ v_r`: the largest absolute value of an `r x r` minor.
pub fn covolume_wedge(field: Fq, vectors: &[Vec<LaurentNum>]) -> Result<LogNorm, LatticeError> {
    let r = vectors.len();
    if r == 0 {
        return Ok(LogNorm::one());
    }
    let d = vectors[0].len();
    if r > d || vectors.iter().any(|v| v.len() != d) {
        return Err(LatticeError::DependentVectors);
    }
    let mut best = LogNorm::Zero;
    let mut cols: Vec<usize> = (0..r).collect();
    loop {
        let minor: Vec<Vec<LaurentNum>> = vectors
            .iter()
            .map(|v| cols.iter().map(|&c| v[c].clone()).collect())
            .collect();
        best = best.max(laurent_matrix_det(field, &minor).abs_log());
        // next r-subset of 0..d in lexicographic order
        let Some(i) = (0..r).rev().find(|&i| cols[i] < d - r + i) else {
            break;
        };
        cols[i] += 1;
        for j in i + 1..r {
            cols[j] = cols[j - 1] + 1;
        }
    }
    if best.is_zero() {
        Err(LatticeError::DependentVectors)
    } else {
        Ok(best)
    }
}
