use num_bigint::BigInt;
use num_traits::{Float, Signed, Zero};

use crate::{Rational, Scalar};

use super::ExperimentError;

/// Least-squares fit of `ln y` against `ln x`; returns `(slope, intercept)`.
pub fn fit_loglog_slope<F: Float>(points: &[(F, F)]) -> Result<(F, F), ExperimentError> {
    if points.len() < 2 || points.iter().any(|&(x, y)| !(x > F::zero() && y > F::zero())) {
        return Err(ExperimentError::DegenerateFit);
    }
    let n = F::from(points.len()).unwrap();
    let logs: Vec<(F, F)> = points.iter().map(|&(x, y)| (x.ln(), y.ln())).collect();
    let mx = logs.iter().fold(F::zero(), |s, p| s + p.0) / n;
    let my = logs.iter().fold(F::zero(), |s, p| s + p.1) / n;
    let sxx = logs.iter().fold(F::zero(), |s, p| s + (p.0 - mx) * (p.0 - mx));
    if sxx <= F::epsilon() {
        return Err(ExperimentError::DegenerateFit);
    }
    let sxy = logs.iter().fold(F::zero(), |s, p| s + (p.0 - mx) * (p.1 - my));
    let slope = sxy / sxx;
    Ok((slope, my - slope * mx))
}

/// Nearest-rank quantile of already sorted values.
pub fn quantile(sorted: &[Rational], p: f64) -> Option<Rational> {
    if sorted.is_empty() {
        return None;
    }
    let idx = ((p * sorted.len() as f64).ceil() as usize).clamp(1, sorted.len()) - 1;
    Some(sorted[idx].clone())
}

/// `sqrt(c)` rounded down to a multiple of `2^-20`.
fn approx_sqrt(c: &Rational) -> Rational {
    let scaled: BigInt = (c * Rational::from_integer(BigInt::from(1u64 << 40))).floor().to_integer();
    Rational::new(scaled.sqrt(), BigInt::from(1u64 << 20))
}

/// The integer nearest to `log_q c`, for `c > 0`.
fn nearest_log(c: &Rational, q: u32) -> i64 {
    let mut k = 0i64;
    let qr = Rational::from_i64(q as i64);
    let mut v = c.clone();
    while v >= qr {
        v /= &qr;
        k += 1;
    }
    while v < Rational::from_i64(1) {
        v *= &qr;
        k -= 1;
    }
    // v in [1, q): round up when v^2 >= q
    k + (&v * &v >= qr) as i64
}

/// `(value - centering) / (sqrt(centering) * l^2)` with `l = max(1, round(log_q centering))`
/// and a dyadic square root, so the result stays an exact rational. Returns the raw
/// difference when the centering is not positive.
pub fn normalized_error(value: &Rational, centering: &Rational, q: u32) -> Rational {
    let diff = value - centering;
    if !centering.is_positive() {
        return diff;
    }
    let root = approx_sqrt(centering);
    if root.is_zero() {
        return diff;
    }
    let l = Rational::from_i64(nearest_log(centering, q).max(1));
    diff / (root * &l * &l)
}
