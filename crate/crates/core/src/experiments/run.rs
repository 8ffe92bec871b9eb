use std::time::Instant;

use rayon::prelude::*;

use crate::diophantine::{
    count_solutions_budgeted, count_solutions_directional, expected_count, measure_e, measure_e_directional,
    measure_f, ApproxMatrix, RegionSpec,
};
use crate::dynamics::{orbit_values, running_means, Observable};
use crate::{Rational, Scalar};

use super::config::{ExperimentConfig, OrbitTarget, TrialRecord};
use super::fit::{fit_loglog_slope, normalized_error, quantile};
use super::sample::{sample_matrix, trial_seed};
use super::ExperimentError;

/// Runs `job` on a pool of `workers` threads (rayon's global pool when 0).
pub(crate) fn with_workers<T: Send>(workers: usize, job: impl FnOnce() -> T + Send) -> Result<T, ExperimentError> {
    if workers == 0 {
        return Ok(job());
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| ExperimentError::Config(e.to_string()))?;
    Ok(pool.install(job))
}

fn trial_matrix(cfg: &ExperimentConfig, trial: u32, depth: u32) -> Result<(u64, ApproxMatrix), ExperimentError> {
    let field = cfg.field()?;
    let (m, n) = (cfg.weights.m(), cfg.weights.n());
    let seed = trial_seed(cfg.master_seed, trial as u64);
    let a = if cfg.force_zero {
        ApproxMatrix::zero(field, m, n)
    } else {
        sample_matrix(field, m, n, depth, seed)
    };
    Ok((seed, a))
}

/// Centering of a count: the expectation, or `q^d` times the directional volume.
pub fn count_centering(cfg: &ExperimentConfig, t: u32) -> Rational {
    let w = &cfg.weights;
    if cfg.directional() {
        Rational::int_pow(cfg.q, w.d() as i64) * measure_e_directional::<Rational>(cfg.q, w, cfg.r, t, &cfg.c1, &cfg.c2)
    } else {
        expected_count(cfg.q, w, cfg.r, t)
    }
}

/// One record per `(trial, T)`, ordered by trial then by position in the sweep.
pub fn run_count_experiment(cfg: &ExperimentConfig) -> Result<Vec<TrialRecord>, ExperimentError> {
    cfg.validate_count()?;
    let depth = cfg.count_depth();
    let centerings: Vec<Rational> = cfg.t_values.iter().map(|&t| count_centering(cfg, t)).collect();
    let per_trial = with_workers(cfg.workers, || {
        (0..cfg.trials)
            .into_par_iter()
            .map(|trial| -> Result<Vec<TrialRecord>, ExperimentError> {
                let (seed, a) = trial_matrix(cfg, trial, depth)?;
                cfg.t_values
                    .iter()
                    .zip(&centerings)
                    .map(|(&t, centering)| {
                        let start = Instant::now();
                        let count = if cfg.directional() {
                            count_solutions_directional(&a, &cfg.weights, cfg.r, t, &cfg.c1, &cfg.c2)?.count
                        } else {
                            count_solutions_budgeted(&a, &cfg.weights, cfg.r, t, cfg.budget)?.count
                        };
                        let value = Rational::from_i64(count as i64);
                        Ok(TrialRecord {
                            trial,
                            seed,
                            t_or_n: t,
                            norm_error: normalized_error(&value, centering, cfg.q),
                            value,
                            centering: centering.clone(),
                            micros: start.elapsed().as_micros() as u64,
                        })
                    })
                    .collect()
            })
            .collect::<Result<Vec<_>, _>>()
    })??;
    Ok(per_trial.into_iter().flatten().collect())
}

/// Aggregate view of a count experiment.
#[derive(Clone, Debug, PartialEq)]
pub struct CountSummary {
    /// Per `T`: mean of `value / centering` over trials.
    pub mean_ratio: Vec<(u32, Rational)>,
    /// 5%, 50% and 95% quantiles of the normalized errors over all records.
    pub error_quantiles: [Rational; 3],
    /// Least-squares slope of `ln |value - centering|` against `ln centering` over all
    /// records; exact hits (zero deviation) have no logarithm and are left out.
    pub slope: Option<f64>,
}

pub fn summarize_counts(records: &[TrialRecord]) -> Option<CountSummary> {
    if records.is_empty() {
        return None;
    }
    let mut ts: Vec<u32> = records.iter().map(|r| r.t_or_n).collect();
    ts.sort_unstable();
    ts.dedup();
    let mut mean_ratio = Vec::new();
    for &t in &ts {
        let rows: Vec<&TrialRecord> = records.iter().filter(|r| r.t_or_n == t).collect();
        let k = Rational::from_i64(rows.len() as i64);
        let centering = rows[0].centering.clone();
        if centering > Rational::from_i64(0) {
            let ratio = rows.iter().map(|r| &r.value / &centering).fold(Rational::from_i64(0), |a, b| a + b) / &k;
            mean_ratio.push((t, ratio));
        }
    }
    let points: Vec<(f64, f64)> = records
        .iter()
        .map(|r| (r.centering.to_f64(), num_traits::Signed::abs(&(&r.value - &r.centering)).to_f64()))
        .filter(|p| p.1 > 0.0)
        .collect();
    let mut errs: Vec<Rational> = records.iter().map(|r| r.norm_error.clone()).collect();
    errs.sort();
    let q = |p| quantile(&errs, p).expect("nonempty");
    Some(CountSummary {
        mean_ratio,
        error_quantiles: [q(0.05), q(0.5), q(0.95)],
        slope: fit_loglog_slope(&points).ok().map(|f| f.0),
    })
}

/// Target of the Birkhoff averages, when the observable has one.
pub fn orbit_target(cfg: &ExperimentConfig, obs: &Observable) -> Option<Rational> {
    let (q, w, r) = (cfg.q, &cfg.weights, cfg.r);
    let scale = Rational::int_pow(q, w.d() as i64);
    match obs {
        Observable::SiegelCount(RegionSpec::E { t, .. }) | Observable::SiegelCount(RegionSpec::F { s: t, .. }) => {
            Some(match (&cfg.target, obs) {
                (OrbitTarget::ShellSlope { n0 }, _) => {
                    let n0 = (*n0).max(1);
                    let shell = expected_count::<Rational>(q, w, r, n0) - expected_count::<Rational>(q, w, r, n0 - 1);
                    Rational::from_i64(*t as i64) * shell
                }
                (OrbitTarget::MeanValue, Observable::SiegelCount(RegionSpec::F { .. })) => scale * measure_f::<Rational>(q, w, r, *t),
                (OrbitTarget::MeanValue, _) => scale * measure_e::<Rational>(q, w, r, *t),
            })
        }
        Observable::SiegelCount(RegionSpec::EDir { t, r, c1, c2 }) => {
            Some(scale * measure_e_directional::<Rational>(q, w, *r, *t, c1, c2))
        }
        // the ball {deg v_i < r} has volume q^(d(r-1)) with the ring of integers of volume 1
        Observable::SiegelCount(RegionSpec::Ball { r }) => Some(Rational::int_pow(q, w.d() as i64 * r)),
        Observable::IndicatorDeltaGe(_) | Observable::AlphaHeight => None,
    }
}

/// Per trial, the running averages `k = 1..=N` of the observable against the target
/// (zero when the observable has none).
pub fn run_orbit_experiment(cfg: &ExperimentConfig) -> Result<Vec<TrialRecord>, ExperimentError> {
    cfg.validate_orbit()?;
    let obs = cfg.observable()?;
    let depth = cfg.orbit_depth()?;
    let target = orbit_target(cfg, &obs).unwrap_or_else(|| Rational::from_i64(0));
    let per_trial = with_workers(cfg.workers, || {
        (0..cfg.trials)
            .into_par_iter()
            .map(|trial| -> Result<Vec<TrialRecord>, ExperimentError> {
                let (seed, a) = trial_matrix(cfg, trial, depth)?;
                let start = Instant::now();
                let values = orbit_values(&obs, &a, &cfg.weights, cfg.steps, cfg.budget)?;
                let micros = start.elapsed().as_micros() as u64;
                Ok(running_means(&values)
                    .into_iter()
                    .enumerate()
                    .map(|(k, avg)| TrialRecord {
                        trial,
                        seed,
                        t_or_n: k as u32 + 1,
                        norm_error: &avg - &target,
                        value: avg,
                        centering: target.clone(),
                        micros,
                    })
                    .collect())
            })
            .collect::<Result<Vec<_>, _>>()
    })??;
    Ok(per_trial.into_iter().flatten().collect())
}

/// Final state of one orbit trial.
#[derive(Clone, Debug, PartialEq)]
pub struct OrbitSummary {
    pub trial: u32,
    pub final_average: Rational,
    pub deviation: Rational,
    /// Slope of `ln |average_k - target|` against `ln k` over `k = 16, 32, ...`.
    pub slope: Option<f64>,
}

pub fn summarize_orbits(records: &[TrialRecord]) -> Vec<OrbitSummary> {
    let mut trials: Vec<u32> = records.iter().map(|r| r.trial).collect();
    trials.dedup();
    trials
        .into_iter()
        .map(|trial| {
            let rows: Vec<&TrialRecord> = records.iter().filter(|r| r.trial == trial).collect();
            let last = rows.last().expect("trial has records");
            let points: Vec<(f64, f64)> = rows
                .iter()
                .filter(|r| r.t_or_n >= 16 && r.t_or_n.is_power_of_two())
                .map(|r| (r.t_or_n as f64, num_traits::Signed::abs(&r.norm_error).to_f64()))
                .filter(|p| p.1 > 0.0)
                .collect();
            OrbitSummary {
                trial,
                final_average: last.value.clone(),
                deviation: last.norm_error.clone(),
                slope: fit_loglog_slope(&points).ok().map(|f| f.0),
            }
        })
        .collect()
}
