//! Exact linear algebra over `F_q` and `F_q[t]`.

use super::field::{Fq, FqElem};
use super::laurent::LaurentNum;
use super::poly::FqPoly;

/// Rank over `F_q` by Gaussian elimination. Rows may have different lengths; missing
/// entries are zero.
pub fn fq_matrix_rank(field: Fq, rows: &[Vec<FqElem>]) -> usize {
    let cols = rows.iter().map(Vec::len).max().unwrap_or(0);
    let mut m: Vec<Vec<FqElem>> = rows
        .iter()
        .map(|r| {
            let mut r = r.clone();
            r.resize(cols, FqElem::ZERO);
            r
        })
        .collect();
    let mut rank = 0;
    for col in 0..cols {
        let Some(p) = (rank..m.len()).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        let inv = field.inv(m[rank][col]).expect("pivot is nonzero");
        for i in rank + 1..m.len() {
            let factor = field.mul(m[i][col], inv);
            if factor.is_zero() {
                continue;
            }
            for j in col..cols {
                let v = field.mul(factor, m[rank][j]);
                m[i][j] = field.sub(m[i][j], v);
            }
        }
        rank += 1;
        if rank == m.len() {
            break;
        }
    }
    rank
}

/// Determinant of a square polynomial matrix (fraction-free Bareiss elimination).
///
/// # Panics
/// If the matrix is not square.
pub fn poly_matrix_det(field: Fq, rows: &[Vec<FqPoly>]) -> FqPoly {
    let n = rows.len();
    assert!(rows.iter().all(|r| r.len() == n), "matrix must be square");
    if n == 0 {
        return FqPoly::one(field);
    }
    let mut m: Vec<Vec<FqPoly>> = rows.to_vec();
    let mut negate = false;
    let mut prev = FqPoly::one(field);
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    negate = !negate;
                }
                None => return FqPoly::zero(field),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&m[i][j] * &m[k][k]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = num.div_exact(&prev).expect("Bareiss division is exact");
            }
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if negate {
        -&det
    } else {
        det
    }
}

/// Determinant of a square matrix with Laurent entries.
///
/// Each row is scaled by `t^w` (`w` = deepest fractional exponent) to become
/// polynomial; the result is shifted back by `t^(-n w)`.
pub fn laurent_matrix_det(field: Fq, rows: &[Vec<LaurentNum>]) -> LaurentNum {
    let n = rows.len() as i64;
    let w = rows
        .iter()
        .flatten()
        .filter_map(LaurentNum::bottom_degree)
        .map(|lo| -lo)
        .max()
        .unwrap_or(0)
        .max(0);
    let poly_rows: Vec<Vec<FqPoly>> = rows
        .iter()
        .map(|r| {
            r.iter()
                .map(|x| x.shift(w).to_poly().expect("scaled entry is polynomial"))
                .collect()
        })
        .collect();
    LaurentNum::from_poly(&poly_matrix_det(field, &poly_rows)).shift(-n * w)
}
