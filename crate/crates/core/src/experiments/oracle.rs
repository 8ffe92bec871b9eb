//! Brute-force oracles: region volumes from digit grids and expectations from
//! exhaustive averages over all matrices of a given depth.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::algebra::{Exponent, Fq, FqElem, LaurentNum};
use crate::diophantine::{count_solutions, level, precision_required, ApproxMatrix, Cylinder, RegionSpec, Side};
use crate::dynamics::Weights;
use crate::{Rational, Scalar};

use super::ExperimentError;

/// Per level, the number of grid cells on one block, and the common cell log-measure.
struct SideHistogram {
    counts: BTreeMap<Exponent, u64>,
    cell_exp: i64,
}

impl SideHistogram {
    fn mass(&self, q: u32, count: u64) -> Rational {
        Rational::from_i64(count as i64) * Rational::int_pow(q, self.cell_exp)
    }
}

/// Enumerates every digit pattern of one block, coordinate `i` carrying the `depth`
/// digits at degrees `tops[i]` down to `tops[i] - depth + 1`, and tallies the cells that
/// `accept` their level and lie in `cyl`. A cell of that grid has measure `q^(lo - 1)`.
fn side_histogram(
    field: Fq,
    side: Side,
    w: &Weights,
    tops: &[i64],
    depth: u32,
    cyl: &Cylinder,
    budget: u64,
    accept: impl Fn(Exponent) -> bool,
) -> Result<SideHistogram, ExperimentError> {
    let q = field.order() as u64;
    let digits = tops.len() * depth as usize;
    let cells = q
        .checked_pow(digits as u32)
        .filter(|&c| c <= budget)
        .ok_or(ExperimentError::BudgetExceeded { budget })?;
    let weights = side.weights(w);
    let mut counts = BTreeMap::new();
    let mut pattern = vec![0u32; digits];
    for _ in 0..cells {
        let v: Vec<LaurentNum> = pattern
            .chunks(depth as usize)
            .zip(tops)
            .map(|(c, &top)| {
                let lo = top - depth as i64 + 1;
                LaurentNum::from_window(field, lo, c.iter().map(|&d| field.elem_unchecked(d)).collect())
            })
            .collect();
        if let Some(k) = level(&v, weights) {
            if accept(k) && cyl.contains(side, w, &v) {
                *counts.entry(k).or_insert(0u64) += 1;
            }
        }
        if let Some(p) = pattern.iter().position(|&d| (d as u64) + 1 < q) {
            pattern[..p].iter_mut().for_each(|d| *d = 0);
            pattern[p] += 1;
        }
    }
    let cell_exp = tops.iter().map(|&top| top - depth as i64).sum();
    Ok(SideHistogram { counts, cell_exp })
}

fn cylinder_depth(c: &Cylinder) -> i64 {
    match c {
        Cylinder::Digits { depth, .. } => *depth as i64,
        _ => 0,
    }
}

/// Grid digits per coordinate needed to decide membership in the split region below.
fn split_depth_needed(w: &Weights, bounded: Side, t: u32, c_bounded: &Cylinder, c_small: &Cylinder) -> u32 {
    let small = if bounded == Side::Beta { Side::Alpha } else { Side::Beta };
    let extra_b = (cylinder_depth(c_bounded) - 1).max(0);
    let extra_s = (cylinder_depth(c_small) - 1).max(0);
    let b = bounded.weights(w).iter().map(|&b| t as i64 * b as i64 + 1 + extra_b);
    let s = small
        .weights(w)
        .iter()
        .map(|&a| (t as i64 * a as i64).max(a as i64) + extra_s);
    b.chain(s).max().unwrap_or(1) as u32
}

/// Volume of `{level(u) in [0, T], level(v) + level(u) < R, u in c_bounded, v in c_small}`
/// where `u` is the block on `bounded` and `v` the other one.
///
/// Cells of `v` with `level(v) >= R - T` are enumerated. The rest of `v`, which meets
/// the level condition for every admissible `u`, is a union of dilates of the shell
/// `level(v) in [-1, 0)`; cylinders are dilation invariant, so its mass is the shell's
/// (enumerated) times a geometric series.
#[allow(clippy::too_many_arguments)]
fn split_measure(
    field: Fq,
    w: &Weights,
    bounded: Side,
    t: u32,
    r: i64,
    c_bounded: &Cylinder,
    c_small: &Cylinder,
    depth: u32,
    budget: u64,
) -> Result<Rational, ExperimentError> {
    let q = field.order();
    let needed = split_depth_needed(w, bounded, t, c_bounded, c_small);
    if depth < needed {
        return Err(ExperimentError::InsufficientDepth { needed, have: depth });
    }
    let small = if bounded == Side::Beta { Side::Alpha } else { Side::Beta };
    let (bw, sw) = (bounded.weights(w), small.weights(w));
    let t_exp = Exponent::from_integer(t as i64);
    let r_exp = Exponent::from_integer(r);
    let zero = Exponent::from_integer(0);
    let floor = Exponent::from_integer(r - t as i64);

    let b_tops: Vec<i64> = bw.iter().map(|&b| t as i64 * b as i64).collect();
    let hb = side_histogram(field, bounded, w, &b_tops, depth, c_bounded, budget, |k| k >= zero && k <= t_exp)?;
    let s_tops: Vec<i64> = sw.iter().map(|&a| r * a as i64 - 1).collect();
    let hs = side_histogram(field, small, w, &s_tops, depth, c_small, budget, |k| k >= floor)?;
    let shell_tops = vec![-1i64; sw.len()];
    let one = Exponent::from_integer(-1);
    let shell = side_histogram(field, small, w, &shell_tops, depth, c_small, budget, |k| k >= one && k < zero)?;

    let big_a: i64 = sw.iter().map(|&a| a as i64).sum();
    let shell_mass = shell.mass(q, shell.counts.values().sum());
    let tail = shell_mass * Rational::int_pow(q, (r - t as i64) * big_a)
        / (Rational::from_i64(1) - Rational::int_pow(q, -big_a));

    let mut total = Rational::from_i64(0);
    for (&ku, &cu) in &hb.counts {
        let u_mass = hb.mass(q, cu);
        let mut v_mass = tail.clone();
        for (&kv, &cv) in &hs.counts {
            if ku + kv < r_exp {
                v_mass += hs.mass(q, cv);
            }
        }
        total += u_mass * v_mass;
    }
    Ok(total)
}

/// Volume of `region` (with the ring of integers having volume 1) from exhaustive digit
/// grids of `depth` digits per coordinate.
pub fn grid_measure_oracle(
    q: u32,
    w: &Weights,
    region: &RegionSpec,
    depth: u32,
    budget: u64,
) -> Result<Rational, ExperimentError> {
    let field = Fq::new(q).map_err(|e| ExperimentError::Config(e.to_string()))?;
    region.validate(w, q)?;
    match region {
        RegionSpec::Ball { r } => {
            // each coordinate independently: every pattern of the window below degree r
            let tops = [r - 1];
            let one = side_histogram(field, Side::Alpha, &Weights::uniform(1, 1).expect("balanced"), &tops, depth, &Cylinder::Full, budget, |_| true)?;
            let nonzero: u64 = one.counts.values().sum();
            let per_coord = one.mass(q, nonzero + 1);
            Ok((0..w.d()).fold(Rational::from_i64(1), |acc, _| acc * &per_coord))
        }
        RegionSpec::E { t, r } => split_measure(field, w, Side::Beta, *t, *r, &Cylinder::Full, &Cylinder::Full, depth, budget),
        RegionSpec::F { s, r } => split_measure(field, w, Side::Alpha, *s, *r, &Cylinder::Full, &Cylinder::Full, depth, budget),
        RegionSpec::EDir { t, r, c1, c2 } => split_measure(field, w, Side::Beta, *t, *r, c2, c1, depth, budget),
    }
}

/// Least grid depth accepted by [`grid_measure_oracle`] for `region`.
pub fn grid_depth_needed(w: &Weights, region: &RegionSpec) -> u32 {
    match region {
        RegionSpec::Ball { .. } => 1,
        RegionSpec::E { t, .. } => split_depth_needed(w, Side::Beta, *t, &Cylinder::Full, &Cylinder::Full),
        RegionSpec::F { s, .. } => split_depth_needed(w, Side::Alpha, *s, &Cylinder::Full, &Cylinder::Full),
        RegionSpec::EDir { t, c1, c2, .. } => split_depth_needed(w, Side::Beta, *t, c2, c1),
    }
}

/// Exact mean of `N_R(T, A)` over all `q^(mn P)` matrices with `P` fractional digits,
/// `P` the least sufficient precision.
pub fn exhaustive_average(q: u32, w: &Weights, r: i64, t: u32, budget: u64) -> Result<Rational, ExperimentError> {
    let field = Fq::new(q).map_err(|e| ExperimentError::Config(e.to_string()))?;
    let depth = precision_required(w, r, t);
    let (m, n) = (w.m(), w.n());
    let digits = (m * n) as u32 * depth;
    let total = (q as u64)
        .checked_pow(digits)
        .filter(|&c| c <= budget)
        .ok_or(ExperimentError::BudgetExceeded { budget })?;
    let sum = (0..total)
        .into_par_iter()
        .map(|idx| -> Result<u64, ExperimentError> {
            let mut v = idx;
            let entries = (0..m * n)
                .map(|_| {
                    let c: Vec<FqElem> = (0..depth)
                        .map(|_| {
                            let d = (v % q as u64) as u32;
                            v /= q as u64;
                            field.elem_unchecked(d)
                        })
                        .collect();
                    LaurentNum::from_window(field, -(depth as i64), c)
                })
                .collect();
            let a = ApproxMatrix::new(field, m, n, entries, Some(depth))?;
            Ok(count_solutions(&a, w, r, t)?.count)
        })
        .try_reduce(|| 0, |x, y| Ok(x + y))?;
    Ok(Rational::new((sum as i64).into(), (total as i64).into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diophantine::{expected_count, measure_e};

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn grid_examples() {
        let w = Weights::uniform(1, 1).unwrap();
        // Ball r=1: |x_i| <= 1 for both coordinates
        assert_eq!(grid_measure_oracle(2, &w, &RegionSpec::Ball { r: 1 }, 3, 1 << 20).unwrap(), r(1, 1));
        assert_eq!(grid_measure_oracle(3, &w, &RegionSpec::Ball { r: 0 }, 2, 1 << 20).unwrap(), r(1, 9));
        assert_eq!(grid_measure_oracle(2, &w, &RegionSpec::E { t: 0, r: 0 }, 4, 1 << 20).unwrap(), r(1, 4));
        assert_eq!(grid_measure_oracle(2, &w, &RegionSpec::E { t: 3, r: 0 }, 5, 1 << 20).unwrap(), r(1, 1));
        let w2: Weights = "(2;1,1)".parse().unwrap();
        assert_eq!(grid_measure_oracle(2, &w2, &RegionSpec::E { t: 1, r: 0 }, 4, 1 << 20).unwrap(), r(3, 4));
        assert!(matches!(
            grid_measure_oracle(2, &w2, &RegionSpec::E { t: 1, r: 0 }, 1, 1 << 20),
            Err(ExperimentError::InsufficientDepth { .. })
        ));
    }

    #[test]
    fn deeper_grids_agree() {
        let w: Weights = "(1,1;2)".parse().unwrap();
        let e = RegionSpec::E { t: 1, r: 1 };
        let need = grid_depth_needed(&w, &e);
        let a = grid_measure_oracle(2, &w, &e, need, 1 << 22).unwrap();
        assert_eq!(a, grid_measure_oracle(2, &w, &e, need + 1, 1 << 22).unwrap());
        assert_eq!(a, measure_e::<Rational>(2, &w, 1, 1));
    }

    #[test]
    fn exhaustive_average_examples() {
        let w = Weights::uniform(1, 1).unwrap();
        for t in 0..=2 {
            assert_eq!(exhaustive_average(2, &w, 0, t, 1 << 20).unwrap(), expected_count::<Rational>(2, &w, 0, t));
        }
    }
}
