//! Observables on lattices and their Birkhoff averages along `g_a^n u_A Z^d`.

use std::fmt;

use crate::algebra::LogNorm;
use crate::diophantine::{precision_required, ApproxMatrix, RegionSpec};
use crate::lattice::{alpha_value, delta_shortest, weak_popov_reduce, ReducedBasis};
use crate::{Rational, Scalar};

use super::siegel::{ball_siegel, siegel_count};
use super::{flow_apply, ua_basis, DynamicsError, Weights};

/// A function on the space of unimodular lattices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Observable {
    SiegelCount(RegionSpec),
    /// `1` when `delta(L) >= eps`, else `0`.
    IndicatorDeltaGe(LogNorm),
    AlphaHeight,
}

impl Observable {
    /// Parses `siegel:E`, `siegel:F`, `siegel:ball:r`, `indicator:delta_ge:k` and
    /// `alpha`; `t` and `r` fill in the parameters of `E` and `F`.
    pub fn from_name(name: &str, t: u32, r: i64) -> Result<Self, DynamicsError> {
        let bad = || DynamicsError::Parse(format!("unknown observable {name:?}"));
        let parts: Vec<&str> = name.trim().split(':').collect();
        Ok(match parts.as_slice() {
            ["siegel", "E"] => Observable::SiegelCount(RegionSpec::E { t, r }),
            ["siegel", "F"] => Observable::SiegelCount(RegionSpec::F { s: t, r }),
            ["siegel", "ball", r] => Observable::SiegelCount(RegionSpec::Ball { r: r.parse().map_err(|_| bad())? }),
            ["indicator", "delta_ge", k] => {
                Observable::IndicatorDeltaGe(LogNorm::from_degree(k.parse().map_err(|_| bad())?))
            }
            ["alpha"] => Observable::AlphaHeight,
            _ => return Err(bad()),
        })
    }

    /// Value on the lattice spanned by `reduced`.
    pub fn evaluate(&self, reduced: &ReducedBasis, w: &Weights, budget: u64) -> Result<Rational, DynamicsError> {
        let q = reduced.field().order();
        Ok(match self {
            Observable::SiegelCount(RegionSpec::Ball { r }) => Rational::from_integer(ball_siegel(reduced, *r).into()),
            Observable::SiegelCount(region) => Rational::from_i64(siegel_count(region, reduced.basis(), w, budget)? as i64),
            Observable::IndicatorDeltaGe(eps) => Rational::from_i64((delta_shortest(reduced) >= *eps) as i64),
            Observable::AlphaHeight => {
                let k = alpha_value(reduced)?.exponent().expect("alpha is positive");
                Rational::int_pow(q, k.to_integer())
            }
        })
    }

    /// Fractional digits of `A` needed so that every value along the first `steps`
    /// orbit points agrees with the one for any extension of `A`.
    pub fn required_depth(&self, w: &Weights, steps: u32) -> u32 {
        let last = steps.saturating_sub(1);
        match self {
            Observable::SiegelCount(RegionSpec::E { t, r }) | Observable::SiegelCount(RegionSpec::EDir { t, r, .. }) => {
                precision_required(w, *r, last + t)
            }
            // F_{S,R} at step n only sees y of level at most R + n
            Observable::SiegelCount(RegionSpec::F { s, r }) => {
                precision_required(w, *r, last + (*r).max(0) as u32 + s)
            }
            Observable::SiegelCount(RegionSpec::Ball { r }) => precision_required(w, *r, last + (*r).max(0) as u32),
            Observable::IndicatorDeltaGe(_) | Observable::AlphaHeight => precision_required(w, 0, last),
        }
    }
}

impl fmt::Display for Observable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Observable::SiegelCount(RegionSpec::E { .. }) => write!(f, "siegel:E"),
            Observable::SiegelCount(RegionSpec::F { .. }) => write!(f, "siegel:F"),
            Observable::SiegelCount(RegionSpec::Ball { r }) => write!(f, "siegel:ball:{r}"),
            Observable::SiegelCount(other) => write!(f, "siegel:{other}"),
            Observable::IndicatorDeltaGe(eps) => match eps.exponent() {
                Some(k) => write!(f, "indicator:delta_ge:{k}"),
                None => write!(f, "indicator:delta_ge:zero"),
            },
            Observable::AlphaHeight => write!(f, "alpha"),
        }
    }
}

/// The orbit `g_a^n u_A Z^d`, one step at a time, re-reduced after every step.
#[derive(Clone, Debug)]
pub struct OrbitWalker {
    w: Weights,
    step: i64,
    current: ReducedBasis,
}

impl OrbitWalker {
    pub fn new(a: &ApproxMatrix, w: &Weights) -> Result<Self, DynamicsError> {
        if a.m() != w.m() || a.n() != w.n() {
            return Err(DynamicsError::Parse(format!("{}x{} matrix for weights {w}", a.m(), a.n())));
        }
        Ok(OrbitWalker { w: w.clone(), step: 0, current: weak_popov_reduce(&ua_basis(a))? })
    }

    pub fn step(&self) -> i64 {
        self.step
    }

    pub fn lattice(&self) -> &ReducedBasis {
        &self.current
    }

    pub fn advance(&mut self) -> Result<(), DynamicsError> {
        self.current = weak_popov_reduce(&flow_apply(self.current.basis(), &self.w, 1))?;
        self.step += 1;
        Ok(())
    }
}

fn check_precision(obs: &Observable, a: &ApproxMatrix, w: &Weights, steps: u32) -> Result<(), DynamicsError> {
    let needed = obs.required_depth(w, steps);
    match a.precision() {
        Some(have) if have < needed => Err(DynamicsError::InsufficientPrecision { needed, have }),
        _ => Ok(()),
    }
}

/// `obs(g_a^n u_A Z^d)` for `n < steps`.
pub fn orbit_values(
    obs: &Observable,
    a: &ApproxMatrix,
    w: &Weights,
    steps: u32,
    budget: u64,
) -> Result<Vec<Rational>, DynamicsError> {
    check_precision(obs, a, w, steps)?;
    let mut walker = OrbitWalker::new(a, w)?;
    let mut out = Vec::with_capacity(steps as usize);
    for n in 0..steps {
        if n > 0 {
            walker.advance()?;
        }
        out.push(obs.evaluate(walker.lattice(), w, budget)?);
    }
    Ok(out)
}

/// Running means: entry `k - 1` is `(1/k) sum_{n<k} obs(g_a^n u_A Z^d)`.
pub fn birkhoff_series(
    obs: &Observable,
    a: &ApproxMatrix,
    w: &Weights,
    steps: u32,
    budget: u64,
) -> Result<Vec<Rational>, DynamicsError> {
    if steps == 0 {
        return Err(DynamicsError::Parse("an orbit needs at least one step".into()));
    }
    Ok(running_means(&orbit_values(obs, a, w, steps, budget)?))
}

pub(crate) fn running_means(values: &[Rational]) -> Vec<Rational> {
    let mut acc = Rational::from_i64(0);
    values
        .iter()
        .enumerate()
        .map(|(k, v)| {
            acc += v;
            &acc / Rational::from_i64(k as i64 + 1)
        })
        .collect()
}
