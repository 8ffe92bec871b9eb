use num_bigint::BigUint;

use crate::algebra::{LaurentNum, LogNorm};

use super::reduce::ReducedBasis;
use super::LatticeError;

/// Largest integer `c` with `q^c <= bound`; `None` when only zero fits.
fn bound_degree(bound: LogNorm) -> Option<i64> {
    bound.exponent().map(|k| k.floor().to_integer())
}

/// Number of free coefficient digits per basis row: `max(0, c - d_i + 1)`.
fn box_shape(r: &ReducedBasis, c: i64) -> Vec<u64> {
    r.row_degrees()
        .iter()
        .map(|&d| (c - d + 1).max(0) as u64)
        .collect()
}

/// `#{v in L : ||v|| <= bound}` (including 0), read off the reduced degrees.
pub fn ball_point_count(r: &ReducedBasis, bound: LogNorm) -> BigUint {
    match bound_degree(bound) {
        None => BigUint::from(1u8),
        Some(c) => {
            let digits: u64 = box_shape(r, c).iter().sum();
            BigUint::from(r.field().order()).pow(digits as u32)
        }
    }
}

/// Calls `visit` once for every lattice vector with `||v|| <= bound`, including 0.
///
/// Walks the coefficient box `deg f_i <= c - d_i` as a `q`-ary odometer, updating the
/// current vector by one generator `t^k b_i` per digit change.
pub fn for_each_point(
    r: &ReducedBasis,
    bound: LogNorm,
    budget: u64,
    mut visit: impl FnMut(&[LaurentNum]),
) -> Result<(), LatticeError> {
    let field = r.field();
    let d = r.dim();
    let mut v = vec![LaurentNum::zero(field); d];
    let Some(c) = bound_degree(bound) else {
        visit(&v);
        return Ok(());
    };
    let shape = box_shape(r, c);
    let total: u64 = shape.iter().sum();
    let q = field.order() as u64;
    let fits = q
        .checked_pow(total.try_into().unwrap_or(u32::MAX))
        .is_some_and(|n| n <= budget);
    if !fits {
        return Err(LatticeError::BudgetExceeded { budget });
    }

    let generators: Vec<Vec<LaurentNum>> = r
        .basis()
        .rows()
        .iter()
        .zip(&shape)
        .flat_map(|(row, &e)| (0..e as i64).map(move |k| row.iter().map(|x| x.shift(k)).collect()))
        .collect();
    let add = |v: &mut [LaurentNum], g: &[LaurentNum]| {
        for (a, b) in v.iter_mut().zip(g) {
            *a = &*a + b;
        }
    };

    let mut digits = vec![0u64; generators.len()];
    visit(&v);
    loop {
        let Some(p) = digits.iter().position(|&x| x + 1 < q) else {
            return Ok(());
        };
        // positions below p roll over from q-1 to 0: one more addition wraps them
        for i in 0..p {
            digits[i] = 0;
            add(&mut v, &generators[i]);
        }
        digits[p] += 1;
        add(&mut v, &generators[p]);
        visit(&v);
    }
}

/// All lattice vectors with `||v|| <= bound`, including 0.
pub fn enumerate_points(
    r: &ReducedBasis,
    bound: LogNorm,
    budget: u64,
) -> Result<Vec<Vec<LaurentNum>>, LatticeError> {
    let mut out = Vec::new();
    for_each_point(r, bound, budget, |v| out.push(v.to_vec()))?;
    Ok(out)
}
