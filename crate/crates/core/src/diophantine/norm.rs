//! Weighted quasi-norms, shell levels and direction projection.

use crate::algebra::{Exponent, LaurentNum, LogNorm};
use crate::dynamics::Weights;

use super::DiophantineError;

/// Which block of `K^(m+n)` a vector lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    Alpha,
    Beta,
}

impl Side {
    pub fn weights(self, w: &Weights) -> &[u32] {
        match self {
            Side::Alpha => w.alpha(),
            Side::Beta => w.beta(),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Side::Alpha => "alpha",
            Side::Beta => "beta",
        }
    }
}

/// Per coordinate, the leading digits of a normalized vector.
pub type DigitTable = Vec<Vec<u32>>;

/// Exponent of `max_i |x_i|^(1/a_i)`; `None` for the zero vector.
pub fn level(x: &[LaurentNum], weights: &[u32]) -> Option<Exponent> {
    x.iter()
        .zip(weights)
        .filter_map(|(v, &a)| v.top_degree().map(|d| Exponent::new(d, a as i64)))
        .max()
}

/// Same as [`level`] but from coordinate degrees.
pub(crate) fn level_of_degrees(degrees: &[Option<i64>], weights: &[u32]) -> Option<Exponent> {
    degrees
        .iter()
        .zip(weights)
        .filter_map(|(d, &a)| d.map(|d| Exponent::new(d, a as i64)))
        .max()
}

/// `||x||_alpha` or `||x||_beta` depending on `side`.
pub fn quasi_norm(x: &[LaurentNum], side: Side, w: &Weights) -> Result<LogNorm, DiophantineError> {
    let a = side.weights(w);
    if x.len() != a.len() {
        return Err(DiophantineError::DimensionMismatch {
            expected: a.len(),
            got: x.len(),
        });
    }
    Ok(level(x, a).map_or(LogNorm::Zero, LogNorm::Exp))
}

/// Digits of `x` after dilating into the shell `(q^-1, 1]`: coordinate `i`,
/// position `l`, is the coefficient of `x_i` at degree `ceil(level) a_i - l`.
pub(crate) fn table_at(x: &[LaurentNum], weights: &[u32], top: i64, depth: u32) -> DigitTable {
    x.iter()
        .zip(weights)
        .map(|(v, &a)| {
            (0..depth as i64)
                .map(|l| v.coeff(top * a as i64 - l).value())
                .collect()
        })
        .collect()
}

/// Returns `(s, table)`: `s` is the integer dilation putting the quasi-norm in
/// `(q^-1, 1]`, and `table` the first `depth` digits of each dilated coordinate.
pub fn direction_project(
    x: &[LaurentNum],
    side: Side,
    w: &Weights,
    depth: u32,
) -> Result<(i64, DigitTable), DiophantineError> {
    let a = side.weights(w);
    if x.len() != a.len() {
        return Err(DiophantineError::DimensionMismatch {
            expected: a.len(),
            got: x.len(),
        });
    }
    let k = level(x, a).ok_or(DiophantineError::ZeroVector)?;
    let top = k.ceil().to_integer();
    Ok((-top, table_at(x, a, top, depth)))
}
