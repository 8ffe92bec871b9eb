//! Empirical check of the `(C, 1/(rs))`-good property of polynomials on `O^r`.

use std::fmt;
use std::str::FromStr;

use crate::algebra::{Fq, FqElem, LaurentNum, LogNorm};
use crate::{Rational, Scalar};

use super::fit::fit_loglog_slope;
use super::ExperimentError;

/// A polynomial in `r` variables with coefficients in `F_q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiPoly {
    field: Fq,
    vars: usize,
    /// `(exponents, coefficient)` with nonzero coefficients and distinct exponents.
    terms: Vec<(Vec<u32>, FqElem)>,
}

impl MultiPoly {
    pub fn new(field: Fq, vars: usize, terms: Vec<(Vec<u32>, i64)>) -> Result<Self, ExperimentError> {
        let mut merged: Vec<(Vec<u32>, FqElem)> = Vec::new();
        for (e, c) in terms {
            if e.len() != vars {
                return Err(ExperimentError::Config(format!("monomial {e:?} in {vars} variables")));
            }
            let c = field.elem(c);
            match merged.iter_mut().find(|(m, _)| *m == e) {
                Some(slot) => slot.1 = field.add(slot.1, c),
                None => merged.push((e, c)),
            }
        }
        merged.retain(|(_, c)| !c.is_zero());
        Ok(MultiPoly { field, vars, terms: merged })
    }

    /// Parses `"x0^2*x1 + 2*x1"` style sums; `vars` fixes the number of variables.
    pub fn parse(field: Fq, vars: usize, text: &str) -> Result<Self, ExperimentError> {
        let bad = || ExperimentError::Config(format!("bad polynomial {text:?}"));
        let mut terms = Vec::new();
        for term in text.split('+').map(str::trim).filter(|t| !t.is_empty()) {
            let mut exps = vec![0u32; vars];
            let mut coeff = 1i64;
            for factor in term.split('*').map(str::trim) {
                if let Some(v) = factor.strip_prefix('x') {
                    let (idx, pow) = v.split_once('^').unwrap_or((v, "1"));
                    let idx: usize = idx.parse().map_err(|_| bad())?;
                    *exps.get_mut(idx).ok_or_else(bad)? += pow.parse::<u32>().map_err(|_| bad())?;
                } else {
                    coeff *= factor.parse::<i64>().map_err(|_| bad())?;
                }
            }
            terms.push((exps, coeff));
        }
        Self::new(field, vars, terms)
    }

    pub fn field(&self) -> Fq {
        self.field
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total degree; 0 for constants and for the zero polynomial.
    pub fn degree(&self) -> u32 {
        self.terms.iter().map(|(e, _)| e.iter().sum()).max().unwrap_or(0)
    }

    pub fn eval(&self, x: &[LaurentNum]) -> LaurentNum {
        self.terms.iter().fold(LaurentNum::zero(self.field), |acc, (e, c)| {
            let mono = e.iter().zip(x).fold(LaurentNum::monomial(self.field, *c, 0), |m, (&k, xi)| {
                (0..k).fold(m, |m, _| &m * xi)
            });
            &acc + &mono
        })
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(e, c)| {
                let mut factors = vec![c.to_string()];
                factors.extend(e.iter().enumerate().filter(|(_, &k)| k > 0).map(|(i, &k)| {
                    if k == 1 { format!("x{i}") } else { format!("x{i}^{k}") }
                }));
                factors.join("*")
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

impl FromStr for MultiPoly {
    type Err = ExperimentError;

    /// Binary-field polynomial in as many variables as the highest index mentioned.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let vars = s
            .split(|c: char| !c.is_ascii_alphanumeric())
            .filter_map(|w| w.strip_prefix('x')?.parse::<usize>().ok())
            .max()
            .map_or(1, |i| i + 1);
        Self::parse(Fq::new(2).expect("prime"), vars, s)
    }
}

/// One sublevel set: `lambda{x in O^r : |f(x)| < eps} / lambda(O^r)` next to
/// `(eps / sup |f|)^(1/(rs))`.
#[derive(Clone, Debug, PartialEq)]
pub struct GoodCheckRow {
    /// `eps = q^eps_exponent`.
    pub eps_exponent: i64,
    pub ratio: Rational,
    pub bound: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct GoodCheckReport {
    pub rows: Vec<GoodCheckRow>,
    pub sup: LogNorm,
    /// `1 / (r s)`.
    pub exponent: f64,
    /// Largest `ratio / bound`; the empirical constant `C`.
    pub constant: f64,
    /// Slope of `ln ratio` against `ln eps` over rows with a nonzero ratio.
    pub slope: Option<f64>,
}

/// Exact sublevel ratios of `f` on `O^r` for `eps = q^e`, `e` in `eps_exponents` (all
/// negative), using the digits of `x` at degrees `0..=-(depth-1)`.
///
/// A cell of that grid fixes `f` up to terms of degree `<= -depth`, so `|f| < q^e` is
/// decided on every cell when `depth >= 1 - e`.
pub fn good_function_check(
    f: &MultiPoly,
    eps_exponents: &[i64],
    depth: u32,
    budget: u64,
) -> Result<GoodCheckReport, ExperimentError> {
    if f.is_zero() {
        return Err(ExperimentError::Config("the zero polynomial is not good".into()));
    }
    let deepest = eps_exponents.iter().copied().min().unwrap_or(0);
    if eps_exponents.iter().any(|&e| e >= 0) {
        return Err(ExperimentError::Config("epsilons must be below 1".into()));
    }
    let needed = (1 - deepest) as u32;
    if depth < needed {
        return Err(ExperimentError::InsufficientDepth { needed, have: depth });
    }
    let field = f.field();
    let q = field.order() as u64;
    let digits = f.vars() * depth as usize;
    let cells = q.checked_pow(digits as u32).filter(|&c| c <= budget).ok_or(ExperimentError::BudgetExceeded { budget })?;

    // histogram of deg f over the cells; index 0 collects f = 0 and degrees <= -depth
    let floor = -(depth as i64);
    let mut hist = vec![0u64; depth as usize + 1];
    let mut sup: Option<i64> = None;
    let mut pattern = vec![0u32; digits];
    for _ in 0..cells {
        let x: Vec<LaurentNum> = pattern
            .chunks(depth as usize)
            .map(|c| LaurentNum::from_window(field, 1 - depth as i64, c.iter().rev().map(|&d| field.elem_unchecked(d)).collect()))
            .collect();
        let deg = f.eval(&x).top_degree().filter(|&d| d > floor);
        sup = sup.max(deg);
        hist[deg.map_or(0, |d| (d - floor) as usize)] += 1;
        if let Some(p) = pattern.iter().position(|&d| (d as u64) + 1 < q) {
            pattern[..p].iter_mut().for_each(|d| *d = 0);
            pattern[p] += 1;
        }
    }
    let sup_norm = sup.map_or(LogNorm::Zero, LogNorm::from_degree);
    let rs = (f.vars() as u32 * f.degree().max(1)) as f64;
    let exponent = 1.0 / rs;
    let rows: Vec<GoodCheckRow> = eps_exponents
        .iter()
        .map(|&e| {
            // |f| < q^e  <=>  deg f <= e - 1
            let hits: u64 = hist[..=((e - 1 - floor) as usize)].iter().sum();
            let gap = sup.map_or(0, |s| e - s) as f64;
            GoodCheckRow {
                eps_exponent: e,
                ratio: Rational::new(hits.into(), cells.into()),
                bound: (field.order() as f64).powf(gap * exponent),
            }
        })
        .collect();
    let constant = rows.iter().map(|r| r.ratio.to_f64() / r.bound).fold(0.0, f64::max);
    let points: Vec<(f64, f64)> = rows
        .iter()
        .filter(|r| r.ratio > Rational::from_i64(0))
        .map(|r| ((field.order() as f64).powi(r.eps_exponent as i32), r.ratio.to_f64()))
        .collect();
    Ok(GoodCheckReport {
        rows,
        sup: sup_norm,
        exponent,
        constant,
        slope: fit_loglog_slope(&points).ok().map(|f| f.0),
    })
}
