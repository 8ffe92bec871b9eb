//! Brute-force oracles and generators shared by the integration suites.
#![allow(dead_code)]

use ffda::algebra::{laurent_matrix_det, Fq, FqPoly, LaurentNum, LogNorm};
use ffda::lattice::{covolume_wedge, sup_norm, LatticeBasis};
use rand::Rng;

pub fn rat(n: i64, d: i64) -> ffda::Rational {
    ffda::Rational::new(n.into(), d.into())
}

pub fn random_poly<R: Rng>(field: Fq, max_deg: usize, rng: &mut R) -> FqPoly {
    let coeffs: Vec<i64> = (0..=max_deg).map(|_| rng.gen_range(0..field.order()) as i64).collect();
    FqPoly::from_coeffs(field, &coeffs)
}

/// Nonsingular `d x d` basis with polynomial entries of degree at most `max_deg`.
pub fn random_poly_basis<R: Rng>(field: Fq, d: usize, max_deg: usize, rng: &mut R) -> LatticeBasis {
    loop {
        let rows: Vec<Vec<LaurentNum>> = (0..d)
            .map(|_| (0..d).map(|_| LaurentNum::from_poly(&random_poly(field, max_deg, rng))).collect())
            .collect();
        if let Ok(b) = LatticeBasis::new(field, rows) {
            if !b.det().is_zero() {
                return b;
            }
        }
    }
}

/// A random polynomial basis with columns rescaled so the determinant has norm 1.
pub fn random_unimodular<R: Rng>(field: Fq, d: usize, max_deg: usize, rng: &mut R) -> LatticeBasis {
    let b = random_poly_basis(field, d, max_deg, rng);
    let mut left = b.det().top_degree().expect("nonsingular");
    let mut shifts = vec![0i64; d];
    while left != 0 {
        let i = rng.gen_range(0..d);
        shifts[i] -= left.signum();
        left -= left.signum();
    }
    b.scale_columns(&shifts)
}

/// Largest degree of an entry of `B^-1`, from cofactors.
pub fn inverse_degree_bound(b: &LatticeBasis) -> i64 {
    let d = b.dim();
    let det = b.det().top_degree().expect("nonsingular");
    if d == 1 {
        return -det;
    }
    let mut best = i64::MIN;
    for skip_r in 0..d {
        for skip_c in 0..d {
            let minor: Vec<Vec<LaurentNum>> = b
                .rows()
                .iter()
                .enumerate()
                .filter(|(i, _)| *i != skip_r)
                .map(|(_, row)| row.iter().enumerate().filter(|(j, _)| *j != skip_c).map(|(_, x)| x.clone()).collect())
                .collect();
            if let Some(deg) = laurent_matrix_det(b.field(), &minor).top_degree() {
                best = best.max(deg);
            }
        }
    }
    best - det
}

/// Calls `f` on `c B` for every nonzero coefficient vector with `deg c_i <= max_deg`.
pub fn for_each_combination(b: &LatticeBasis, max_deg: i64, mut f: impl FnMut(&[LaurentNum])) {
    if max_deg < 0 {
        return;
    }
    let field = b.field();
    let q = field.order();
    let d = b.dim();
    let len = max_deg as usize + 1;
    let mut digits = vec![0u32; d * len];
    while let Some(p) = digits.iter().position(|&x| x + 1 < q) {
        digits[..p].iter_mut().for_each(|x| *x = 0);
        digits[p] += 1;
        let coeffs: Vec<FqPoly> = digits
            .chunks(len)
            .map(|c| FqPoly::from_coeffs(field, &c.iter().map(|&x| x as i64).collect::<Vec<_>>()))
            .collect();
        f(&b.combination(&coeffs));
    }
}

/// Shortest nonzero vector norm by exhaustive search over coefficient vectors.
///
/// `c = v B^-1`, so a vector of norm `q^k` has coefficients of degree at most
/// `k + inverse_degree_bound`; the bound tightens as shorter vectors turn up.
pub fn brute_delta(b: &LatticeBasis) -> LogNorm {
    let inv = inverse_degree_bound(b);
    let mut best = b.rows().iter().map(|r| sup_norm(r)).min().expect("nonempty");
    let deg = |n: LogNorm| n.exponent().expect("nonzero").ceil().to_integer();
    let mut searched = -1i64;
    loop {
        let need = deg(best) + inv;
        if searched >= need {
            return best;
        }
        searched += 1;
        for_each_combination(b, searched, |v| best = best.min(sup_norm(v)));
    }
}

/// `max(1, max over rank-1 and rank-2 sublattices of 1 / covolume)`, for `d <= 3`
/// unimodular lattices.
///
/// A rank-2 sublattice with covolume below 1 has an orthogonal basis `v1, v2` with
/// `|v1| >= delta`, hence `|v2| < 1 / delta`; every such pair is enumerated.
pub fn brute_alpha(b: &LatticeBasis) -> LogNorm {
    assert!(b.dim() <= 3);
    let delta = brute_delta(b);
    let mut best = LogNorm::one().max(delta.inv().expect("nonzero"));
    let limit = delta.inv().expect("nonzero");
    let inv = inverse_degree_bound(b);
    let k = limit.exponent().unwrap().ceil().to_integer();
    let mut short: Vec<Vec<LaurentNum>> = Vec::new();
    for_each_combination(b, k + inv, |v| {
        if sup_norm(v) < limit {
            short.push(v.to_vec());
        }
    });
    for i in 0..short.len() {
        for j in i + 1..short.len() {
            if let Ok(c) = covolume_wedge(b.field(), &[short[i].clone(), short[j].clone()]) {
                best = best.max(c.inv().expect("nonzero"));
            }
        }
    }
    best
}
