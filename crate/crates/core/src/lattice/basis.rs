use std::fmt;

use crate::algebra::{laurent_matrix_det, Fq, FqElem, FqPoly, LaurentNum, LogNorm};

use super::LatticeError;

/// A basis of an `F_q[t]`-lattice in `K^d`: `d` row vectors with Laurent entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeBasis {
    field: Fq,
    rows: Vec<Vec<LaurentNum>>,
}

impl LatticeBasis {
    /// Wraps `rows`, checking the matrix is square. Independence is checked lazily by
    /// reduction.
    pub fn new(field: Fq, rows: Vec<Vec<LaurentNum>>) -> Result<Self, LatticeError> {
        let d = rows.len();
        if d == 0 || rows.iter().any(|r| r.len() != d) {
            return Err(LatticeError::NotSquare);
        }
        Ok(LatticeBasis { field, rows })
    }

    pub fn identity(field: Fq, d: usize) -> Self {
        Self::diagonal(field, &vec![0; d])
    }

    /// `diag(t^e_1, ..., t^e_d) Z^d`.
    pub fn diagonal(field: Fq, exps: &[i64]) -> Self {
        let d = exps.len();
        let rows = (0..d)
            .map(|i| {
                (0..d)
                    .map(|j| {
                        if i == j {
                            LaurentNum::monomial(field, FqElem::ONE, exps[i])
                        } else {
                            LaurentNum::zero(field)
                        }
                    })
                    .collect()
            })
            .collect();
        LatticeBasis { field, rows }
    }

    /// Parses rows separated by newlines (or `|`), entries separated by `;`.
    pub fn parse(field: Fq, text: &str) -> Result<Self, LatticeError> {
        let rows = text
            .split(['\n', '|'])
            .map(str::trim)
            .filter(|l| !l.is_empty())
            .map(|line| {
                line.split(';')
                    .map(|e| LaurentNum::parse(field, e.trim()))
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(field, rows)
    }

    #[inline]
    pub fn field(&self) -> Fq {
        self.field
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<LaurentNum>] {
        &self.rows
    }

    pub fn into_rows(self) -> Vec<Vec<LaurentNum>> {
        self.rows
    }

    /// Smallest `W >= 0` such that `t^W` times every entry is a polynomial.
    pub fn scale_hint(&self) -> i64 {
        self.rows
            .iter()
            .flatten()
            .map(|x| x.depth() as i64)
            .max()
            .unwrap_or(0)
    }

    pub fn det(&self) -> LaurentNum {
        laurent_matrix_det(self.field, &self.rows)
    }

    /// Multiplies coordinate `i` of every basis vector by `t^exps[i]`.
    pub fn scale_columns(&self, exps: &[i64]) -> Self {
        assert_eq!(exps.len(), self.dim());
        let rows = self
            .rows
            .iter()
            .map(|r| r.iter().zip(exps).map(|(x, &e)| x.shift(e)).collect())
            .collect();
        LatticeBasis {
            field: self.field,
            rows,
        }
    }

    /// `sum_i coeffs[i] * row_i`.
    pub fn combination(&self, coeffs: &[FqPoly]) -> Vec<LaurentNum> {
        let mut acc = vec![LaurentNum::zero(self.field); self.dim()];
        for (row, c) in self.rows.iter().zip(coeffs) {
            if c.is_zero() {
                continue;
            }
            let c = LaurentNum::from_poly(c);
            for (a, x) in acc.iter_mut().zip(row) {
                *a = &*a + &(x * &c);
            }
        }
        acc
    }
}

impl fmt::Display for LatticeBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, row) in self.rows.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
            f.write_str(&cells.join(";"))?;
        }
        Ok(())
    }
}

/// Supremum norm `max_i |v_i|`.
pub fn sup_norm(v: &[LaurentNum]) -> LogNorm {
    v.iter().map(LaurentNum::abs_log).max().unwrap_or(LogNorm::Zero)
}

/// True iff `|det B| = 1`.
pub fn is_unimodular(b: &LatticeBasis) -> bool {
    b.det().abs_log() == LogNorm::one()
}
