use crate::algebra::Fq;
use crate::diophantine::{precision_required, Cylinder, RegionSpec, Side, DEFAULT_BUDGET};
use crate::dynamics::{Observable, Weights};
use crate::Rational;

use super::ExperimentError;

/// What the Birkhoff averages of `siegel:E` are compared with.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OrbitTarget {
    /// `T c`, with `c = E[N(n0)] - E[N(n0 - 1)]` the per-shell increment.
    ShellSlope { n0: u32 },
    /// The Siegel mean value: `q^d` times the volume of the region.
    MeanValue,
}

/// Parameters of a batch of count or orbit trials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExperimentConfig {
    pub q: u32,
    pub weights: Weights,
    pub r: i64,
    /// Sweep of `T` for count experiments; the first entry is the `T` of orbit regions.
    pub t_values: Vec<u32>,
    /// Orbit length `N`.
    pub steps: u32,
    pub trials: u32,
    /// Fractional digits sampled per entry; defaults to the least sufficient depth.
    pub depth: Option<u32>,
    pub master_seed: u64,
    pub observable: String,
    pub c1: Cylinder,
    pub c2: Cylinder,
    pub target: OrbitTarget,
    pub budget: u64,
    /// Worker threads; 0 uses rayon's default.
    pub workers: usize,
    /// Replace every sampled matrix by zero (debugging).
    pub force_zero: bool,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            q: 2,
            weights: Weights::uniform(1, 1).expect("balanced"),
            r: 0,
            t_values: vec![3],
            steps: 64,
            trials: 1,
            depth: None,
            master_seed: 0,
            observable: "siegel:E".into(),
            c1: Cylinder::Full,
            c2: Cylinder::Full,
            target: OrbitTarget::ShellSlope { n0: 8 },
            budget: DEFAULT_BUDGET,
            workers: 0,
            force_zero: false,
        }
    }
}

impl ExperimentConfig {
    pub fn field(&self) -> Result<Fq, ExperimentError> {
        Fq::new(self.q).map_err(|e| ExperimentError::Config(e.to_string()))
    }

    pub fn max_t(&self) -> u32 {
        self.t_values.iter().copied().max().unwrap_or(0)
    }

    /// `T` of the orbit observable's region.
    pub fn orbit_t(&self) -> u32 {
        self.t_values.first().copied().unwrap_or(0)
    }

    pub fn directional(&self) -> bool {
        self.c1 != Cylinder::Full || self.c2 != Cylinder::Full
    }

    /// The named observable; `siegel:E` picks up the cylinders when they restrict anything.
    pub fn observable(&self) -> Result<Observable, ExperimentError> {
        Ok(match Observable::from_name(&self.observable, self.orbit_t(), self.r)? {
            Observable::SiegelCount(RegionSpec::E { t, r }) if self.directional() => {
                Observable::SiegelCount(RegionSpec::EDir { t, r, c1: self.c1.clone(), c2: self.c2.clone() })
            }
            obs => obs,
        })
    }

    pub fn count_depth(&self) -> u32 {
        self.depth.unwrap_or_else(|| precision_required(&self.weights, self.r, self.max_t()))
    }

    pub fn orbit_depth(&self) -> Result<u32, ExperimentError> {
        let need = self.observable()?.required_depth(&self.weights, self.steps);
        Ok(self.depth.unwrap_or(need))
    }

    /// Structural checks shared by all experiment kinds.
    pub fn validate(&self) -> Result<(), ExperimentError> {
        self.field()?;
        if self.trials == 0 {
            return Err(ExperimentError::Config("trials must be at least 1".into()));
        }
        if self.t_values.is_empty() {
            return Err(ExperimentError::Config("no T values given".into()));
        }
        self.c1.validate(Side::Alpha, &self.weights, self.q)?;
        self.c2.validate(Side::Beta, &self.weights, self.q)?;
        Ok(())
    }

    pub fn validate_count(&self) -> Result<(), ExperimentError> {
        self.validate()?;
        let needed = precision_required(&self.weights, self.r, self.max_t());
        if self.count_depth() < needed {
            return Err(ExperimentError::InsufficientDepth { needed, have: self.count_depth() });
        }
        Ok(())
    }

    pub fn validate_orbit(&self) -> Result<(), ExperimentError> {
        self.validate()?;
        if self.steps == 0 {
            return Err(ExperimentError::Config("an orbit needs at least one step".into()));
        }
        let needed = self.observable()?.required_depth(&self.weights, self.steps);
        let have = self.orbit_depth()?;
        if have < needed {
            return Err(ExperimentError::InsufficientDepth { needed, have });
        }
        Ok(())
    }
}

/// One row of an experiment: a count (or a running average) next to its centering.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrialRecord {
    pub trial: u32,
    pub seed: u64,
    /// `T` for counts, the number of averaged steps for orbits.
    pub t_or_n: u32,
    pub value: Rational,
    pub centering: Rational,
    /// Counts: the deviation scaled by `sqrt(c) log_q(c)^2`. Orbits: the plain deviation.
    pub norm_error: Rational,
    pub micros: u64,
}
