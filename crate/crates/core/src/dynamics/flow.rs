use crate::algebra::{FqElem, LaurentNum};
use crate::diophantine::ApproxMatrix;
use crate::lattice::LatticeBasis;

use super::Weights;

/// Exponents of `g_a^n`: `n a_i` on the `x` block, `-n a_{m+j}` on the `y` block.
pub fn flow_exponents(w: &Weights, n: i64) -> Vec<i64> {
    w.alpha()
        .iter()
        .map(|&a| n * a as i64)
        .chain(w.beta().iter().map(|&b| -n * b as i64))
        .collect()
}

/// `g_a^n B`. Negative `n` runs the flow backwards.
pub fn flow_apply(b: &LatticeBasis, w: &Weights, n: i64) -> LatticeBasis {
    b.scale_columns(&flow_exponents(w, n))
}

/// Basis of `u_A Z^d`: the unit vectors `e_i` (`i <= m`) and `(A e_j, e_j)`, so that
/// `(-p, q)` maps to `(Aq - p, q)`.
pub fn ua_basis(a: &ApproxMatrix) -> LatticeBasis {
    let field = a.field();
    let (m, n) = (a.m(), a.n());
    let unit = |k: usize, d: usize| -> Vec<LaurentNum> {
        (0..d)
            .map(|c| if c == k { LaurentNum::monomial(field, FqElem::ONE, 0) } else { LaurentNum::zero(field) })
            .collect()
    };
    let mut rows: Vec<Vec<LaurentNum>> = (0..m).map(|i| unit(i, m + n)).collect();
    for j in 0..n {
        let mut row = unit(m + j, m + n);
        for (i, cell) in row.iter_mut().enumerate().take(m) {
            *cell = a.get(i, j).clone();
        }
        rows.push(row);
    }
    LatticeBasis::new(field, rows).expect("square by construction")
}
