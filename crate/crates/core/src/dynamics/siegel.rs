//! Siegel transforms of region indicators and the lattice inequalities built on them.

use num_bigint::BigUint;
use num_traits::ToPrimitive;

use crate::algebra::{Exponent, LaurentNum, LogNorm};
use crate::diophantine::{level, RegionSpec};
use crate::lattice::{alpha_value, ball_point_count, for_each_point, weak_popov_reduce, LatticeBasis, ReducedBasis};
use crate::{Rational, Scalar};

use super::{DynamicsError, Weights};

/// Number of nonzero lattice vectors with `deg v_i <= tops[i]` accepted by `pred`.
///
/// The lattice is rescaled by `t^(-tops[i])` per coordinate so the box becomes the
/// unit ball, which a reduced basis enumerates exactly.
pub fn count_lattice_points(
    b: &LatticeBasis,
    tops: &[i64],
    budget: u64,
    mut pred: impl FnMut(&[LaurentNum]) -> bool,
) -> Result<u64, DynamicsError> {
    let shrink: Vec<i64> = tops.iter().map(|t| -t).collect();
    let scaled = weak_popov_reduce(&b.scale_columns(&shrink))?;
    let mut count = 0u64;
    let mut v = Vec::with_capacity(tops.len());
    for_each_point(&scaled, LogNorm::one(), budget, |u| {
        if u.iter().all(LaurentNum::is_zero) {
            return;
        }
        v.clear();
        v.extend(u.iter().zip(tops).map(|(x, &t)| x.shift(t)));
        if pred(&v) {
            count += 1;
        }
    })?;
    Ok(count)
}

/// `#(open ball of radius q^r) - 1`, read off the reduced degrees.
pub fn ball_siegel(reduced: &ReducedBasis, r: i64) -> BigUint {
    ball_point_count(reduced, LogNorm::from_degree(r - 1)) - 1u8
}

/// Siegel transform of the indicator of `region`: nonzero lattice vectors inside it.
pub fn siegel_count(region: &RegionSpec, b: &LatticeBasis, w: &Weights, budget: u64) -> Result<u64, DynamicsError> {
    if b.dim() != w.d() {
        return Err(DynamicsError::Parse(format!("basis of dimension {} for weights {w}", b.dim())));
    }
    region.validate(w, b.field().order())?;
    count_lattice_points(b, &region.top_degrees(w), budget, |v| region.contains(w, v))
}

/// `q^(-dr) alpha <= chi_B <= q^(dr) alpha` for the open ball of radius `q^r`.
pub fn comparison_bounds_hold(reduced: &ReducedBasis, r: i64) -> Result<bool, DynamicsError> {
    let q = reduced.field().order();
    let k = alpha_value(reduced)?.exponent().expect("alpha is nonzero").to_integer();
    let d = reduced.dim() as i64;
    let chi = Rational::from_integer(ball_siegel(reduced, r).into());
    Ok(Rational::int_pow(q, k - d * r) <= chi && chi <= Rational::int_pow(q, k + d * r))
}

/// Per-step counts needed to bracket `sum_{n<N} chi_{E_T}(g^n L)` by lattice counts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SandwichCounts {
    pub t: u32,
    pub steps: u32,
    /// `sum_{n<N} chi_{E_T}(g^n L)`.
    pub orbit_sum: u64,
    /// Per `n`, vectors of `L` with `level(y)` in `[n, n+1)`.
    band: Vec<u64>,
    /// Per `n`, vectors of `L` with `level(y) = n`.
    on_level: Vec<u64>,
}

impl SandwichCounts {
    /// `#(L cap E_K)` for integer `K <= N + T`.
    pub fn count_upto(&self, k: u32) -> u64 {
        let k = k as usize;
        self.band[..k].iter().sum::<u64>() + self.on_level[k]
    }

    /// `#(L cap (E_hi minus E_lo))`, levels in `(lo, hi]`.
    pub fn count_between(&self, lo: u32, hi: u32) -> u64 {
        if hi <= lo {
            return 0;
        }
        self.count_upto(hi) - self.count_upto(lo)
    }

    /// `T #(E_{N-1} minus E_T) <= S <= (T+1) #E_{N+T-1}`: a vector at level `k` is seen
    /// by `T + 1` steps when `k` is an integer and by `T` steps otherwise.
    pub fn holds(&self) -> bool {
        let (t, n) = (self.t as u64, self.steps);
        t * self.count_between(self.t, n - 1) <= self.orbit_sum
            && self.orbit_sum <= (t + 1) * self.count_upto(n + self.t - 1)
    }

    /// The bracket with `E_N` on the left and `T #E_{N+T}` on the right.
    pub fn literal_holds(&self) -> bool {
        let (t, n) = (self.t as u64, self.steps);
        t * self.count_between(self.t, n) <= self.orbit_sum && self.orbit_sum <= t * self.count_upto(n + self.t)
    }
}

/// Walks `g^n L` for `n = 0..=N+T` and records the sandwich counts. `t >= 1`.
pub fn sandwich_counts(
    b: &LatticeBasis,
    w: &Weights,
    r: i64,
    t: u32,
    steps: u32,
    budget: u64,
) -> Result<SandwichCounts, DynamicsError> {
    assert!(t >= 1 && steps >= 1);
    let region = RegionSpec::E { t, r };
    let tops = region.top_degrees(w);
    let one = Exponent::from_integer(1);
    let zero = Exponent::from_integer(0);
    let mut current = weak_popov_reduce(b)?;
    let (mut orbit_sum, mut band, mut on_level) = (0u64, Vec::new(), Vec::new());
    for n in 0..=steps + t {
        let (mut in_e, mut in_band, mut at_zero) = (0u64, 0u64, 0u64);
        count_lattice_points(current.basis(), &tops, budget, |v| {
            let (x, y) = v.split_at(w.m());
            let ky = level(y, w.beta());
            let kx = level(x, w.alpha());
            let below = match (kx, ky) {
                (Some(a), Some(b)) => a + b < Exponent::from_integer(r),
                _ => true,
            };
            if let (Some(k), true) = (ky, below) {
                in_e += (k >= zero && k <= Exponent::from_integer(t as i64)) as u64;
                in_band += (k >= zero && k < one) as u64;
                at_zero += (k == zero) as u64;
            }
            false
        })?;
        if n < steps {
            orbit_sum += in_e;
        }
        band.push(in_band);
        on_level.push(at_zero);
        current = weak_popov_reduce(&super::flow_apply(current.basis(), w, 1))?;
    }
    Ok(SandwichCounts { t, steps, orbit_sum, band, on_level })
}

/// Outcome of the domination cover-check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Domination {
    /// A lattice vector `v` with `B + v` inside `E cup F` was found, so
    /// `chi_B + 1 <= chi_E + chi_F` must hold.
    Certified { ball: u64, e: u64, f: u64, holds: bool },
    /// No covering translate within the search range.
    Uncertified,
}

/// Whether every point within `q^r` (open) of `v` lies in `E_{T,R} cup F_{T,R}`.
///
/// Membership depends only on coordinate degrees; coordinates with `deg v_i >= r` keep
/// their degree, the others range over all degrees `< r` (and zero).
pub fn translate_covers(v: &[LaurentNum], w: &Weights, r: i64, t: u32, big_r: i64) -> bool {
    let floor = -((t as i64) + big_r.abs() + 2);
    let candidates = |vals: &[LaurentNum], weights: &[u32]| -> Vec<Option<Exponent>> {
        let fixed = vals
            .iter()
            .zip(weights)
            .filter_map(|(x, &a)| x.top_degree().filter(|&d| d >= r).map(|d| Exponent::new(d, a as i64)))
            .max();
        let mut out = vec![fixed];
        for (x, &a) in vals.iter().zip(weights) {
            if x.top_degree().is_some_and(|d| d >= r) {
                continue;
            }
            for d in (floor * a as i64)..r {
                let k = Exponent::new(d, a as i64);
                if fixed.is_none_or(|f| k > f) {
                    out.push(Some(k));
                }
            }
        }
        out
    };
    let (x, y) = v.split_at(w.m());
    let kxs = candidates(x, w.alpha());
    let kys = candidates(y, w.beta());
    let top = Exponent::from_integer(t as i64);
    let zero = Exponent::from_integer(0);
    let cap = Exponent::from_integer(big_r);
    kxs.iter().all(|&kx| {
        kys.iter().all(|&ky| {
            let below = match (kx, ky) {
                (Some(a), Some(b)) => a + b < cap,
                _ => true,
            };
            let in_e = ky.is_some_and(|k| k >= zero && k <= top) && below;
            let in_f = kx.is_some_and(|k| k >= zero && k <= top) && below;
            in_e || in_f
        })
    })
}

/// Looks for a covering translate among lattice vectors of norm `<= q^max_degree`;
/// when found, compares `chi_B + 1` with `chi_E + chi_F`.
pub fn domination_check(
    b: &LatticeBasis,
    w: &Weights,
    r: i64,
    t: u32,
    big_r: i64,
    max_degree: i64,
    budget: u64,
) -> Result<Domination, DynamicsError> {
    let reduced = weak_popov_reduce(b)?;
    let mut found = false;
    for c in r..=max_degree {
        let mut hit = false;
        let res = for_each_point(&reduced, LogNorm::from_degree(c), budget, |v| {
            if !hit && translate_covers(v, w, r, t, big_r) {
                hit = true;
            }
        });
        if res.is_err() {
            break;
        }
        if hit {
            found = true;
            break;
        }
    }
    if !found {
        return Ok(Domination::Uncertified);
    }
    let ball = ball_siegel(&reduced, r).to_u64().ok_or(DynamicsError::BudgetExceeded { budget })?;
    let e = siegel_count(&RegionSpec::E { t, r: big_r }, b, w, budget)?;
    let f = siegel_count(&RegionSpec::F { s: t, r: big_r }, b, w, budget)?;
    Ok(Domination::Certified { ball, e, f, holds: ball < e + f })
}
