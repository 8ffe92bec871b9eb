//! Exact volumes of `E_{T,R}`, `F_{S,R}` and their directional refinements, as shell
//! sums over the rational levels `l / a_j`.

use std::collections::BTreeMap;

use crate::algebra::Exponent;
use crate::dynamics::Weights;
use crate::scalar::{sum, Scalar};

use super::norm::Side;
use super::region::{Cylinder, RegionSpec};

/// Largest enumeration of digit tables a cylinder measure may perform.
const TABLE_LIMIT: u64 = 1 << 26;

/// Sorted distinct levels `l / a` in `[0, top]` over all weights `a`.
pub(crate) fn shell_levels(weights: &[u32], top: u32) -> Vec<Exponent> {
    let mut ks: Vec<Exponent> = weights
        .iter()
        .flat_map(|&a| (0..=top as i64 * a as i64).map(move |l| Exponent::new(l, a as i64)))
        .collect();
    ks.sort();
    ks.dedup();
    ks
}

fn ceil(k: Exponent) -> i64 {
    k.ceil().to_integer()
}

fn floor(k: Exponent) -> i64 {
    k.floor().to_integer()
}

/// `sum_i ceil(k a_i)`.
pub(crate) fn sum_ceil(k: Exponent, weights: &[u32]) -> i64 {
    weights.iter().map(|&a| ceil(k * a as i64)).sum()
}

/// `sum_i floor(k a_i)`.
pub(crate) fn sum_floor(k: Exponent, weights: &[u32]) -> i64 {
    weights.iter().map(|&a| floor(k * a as i64)).sum()
}

/// Shell sum with `outer` the block whose level runs over `[0, top]` and `inner` the
/// block bounded by `q^(R - level)`.
fn shell_sum<S: Scalar>(q: u32, outer: &[u32], inner: &[u32], r: i64, top: u32) -> S {
    let (n_out, n_in) = (outer.len() as i64, inner.len() as i64);
    sum(shell_levels(outer, top).into_iter().map(|k| {
        let inner_exp = sum_ceil(Exponent::from_integer(r) - k, inner) - n_in;
        let shell = S::int_pow(q, sum_floor(k, outer)) - S::int_pow(q, sum_ceil(k, outer) - n_out);
        S::int_pow(q, inner_exp) * shell
    }))
}

/// `lambda(E_{T,R})` with `lambda(O) = 1` per coordinate.
pub fn measure_e<S: Scalar>(q: u32, w: &Weights, r: i64, t: u32) -> S {
    shell_sum(q, w.beta(), w.alpha(), r, t)
}

/// `lambda(F_{S,R})`: the same sum with the roles of `x` and `y` exchanged.
pub fn measure_f<S: Scalar>(q: u32, w: &Weights, r: i64, s: u32) -> S {
    shell_sum(q, w.alpha(), w.beta(), r, s)
}

/// For each exact level `k0` in `(-1, 0]`, the measure of the vectors on that level
/// whose leading digits lie in the cylinder.
///
/// Tables are enumerated at depth `max(D, max a_i)`, deep enough to see every level.
pub(crate) fn level_masses<S: Scalar>(c: &Cylinder, side: Side, w: &Weights, q: u32) -> Vec<(Exponent, S)> {
    let depth = match c {
        Cylinder::Empty => return Vec::new(),
        Cylinder::Full => 0,
        Cylinder::Digits { depth, .. } => *depth,
    };
    let a = side.weights(w);
    let coords = a.len();
    let eff = depth.max(*a.iter().max().unwrap()) as usize;
    let cells = coords * eff;
    assert!(
        (q as u64).checked_pow(cells as u32).is_some_and(|n| n <= TABLE_LIMIT),
        "cylinder table enumeration too large"
    );

    let mut counts: BTreeMap<Exponent, u64> = BTreeMap::new();
    let mut digits = vec![0u32; cells];
    let minus_one = Exponent::from_integer(-1);
    loop {
        let level = (0..coords)
            .filter_map(|i| {
                let col = &digits[i * eff..(i + 1) * eff];
                col.iter()
                    .position(|&d| d != 0)
                    .map(|l| Exponent::new(-(l as i64), a[i] as i64))
            })
            .max();
        if let Some(k) = level.filter(|&k| k > minus_one) {
            let inside = match c {
                Cylinder::Digits { allowed, .. } => {
                    let table: Vec<Vec<u32>> = (0..coords)
                        .map(|i| digits[i * eff..i * eff + depth as usize].to_vec())
                        .collect();
                    allowed.contains(&table)
                }
                _ => true,
            };
            if inside {
                *counts.entry(k).or_default() += 1;
            }
        }
        let Some(p) = digits.iter().position(|&d| d + 1 < q) else {
            break;
        };
        digits[..p].iter_mut().for_each(|d| *d = 0);
        digits[p] += 1;
    }
    let cell = S::int_pow(q, -(cells as i64));
    counts
        .into_iter()
        .map(|(k, n)| (k, S::from_i64(n as i64) * cell.clone()))
        .collect()
}

/// Normalized measure of the cylinder as a fraction of the unit shell.
pub fn cylinder_measure<S: Scalar>(c: &Cylinder, side: Side, w: &Weights, q: u32) -> S {
    let shell = S::one() - S::int_pow(q, -(w.block_sum() as i64));
    sum(level_masses::<S>(c, side, w, q).into_iter().map(|(_, m)| m)) / shell
}

/// `lambda(E_{T,R}(C1, C2))`: vectors of `E_{T,R}` with `x != 0` whose directions lie
/// in `c1` (for `x`) and `c2` (for `y`).
///
/// Each direction mass is resolved per exact sub-level, because the `x` constraint
/// `||x|| < q^(R-k)` cuts through the shell at a level-dependent point.
pub fn measure_e_directional<S: Scalar>(
    q: u32,
    w: &Weights,
    r: i64,
    t: u32,
    c1: &Cylinder,
    c2: &Cylinder,
) -> S {
    let total_a = w.block_sum() as i64;
    let ys = level_masses::<S>(c2, Side::Beta, w, q);
    let xs = level_masses::<S>(c1, Side::Alpha, w, q);
    let geometric = S::one() / (S::one() - S::int_pow(q, -total_a));
    let top = Exponent::from_integer(t as i64);
    let mut total = S::zero();
    for (k0y, nu) in &ys {
        let first = if k0y.is_integer() { 0 } else { 1 };
        let last = floor(top - k0y);
        for sigma in first..=last {
            let k = *k0y + sigma;
            let y_mass = S::int_pow(q, sigma * total_a) * nu.clone();
            // x ranges over levels k0x + s < R - k: sum_{s <= smax} q^(s A) = q^(smax A) / (1 - q^-A)
            let x_mass = sum(xs.iter().map(|(k0x, mu)| {
                let smax = ceil(Exponent::from_integer(r) - k - k0x) - 1;
                S::int_pow(q, smax * total_a) * mu.clone()
            })) * geometric.clone();
            total = total + y_mass * x_mass;
        }
    }
    total
}

/// Volume of any [`RegionSpec`]; the ball `{deg v_i < r}` has volume `q^(d (r - 1))`.
pub fn region_measure<S: Scalar>(q: u32, w: &Weights, region: &RegionSpec) -> S {
    match region {
        RegionSpec::E { t, r } => measure_e(q, w, *r, *t),
        RegionSpec::F { s, r } => measure_f(q, w, *r, *s),
        RegionSpec::Ball { r } => S::int_pow(q, w.d() as i64 * (r - 1)),
        RegionSpec::EDir { t, r, c1, c2 } => measure_e_directional(q, w, *r, *t, c1, c2),
    }
}
