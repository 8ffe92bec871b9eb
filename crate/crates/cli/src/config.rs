//! Experiment settings from a TOML file, patched by command-line flags.

use serde::Deserialize;

use ffda::diophantine::{precision_required, Cylinder, Side};
use ffda::dynamics::Weights;
use ffda::experiments::{ExperimentConfig, OrbitTarget};

use crate::CliError;

/// `T` in a file: `3`, `[4, 8, 12]` or `"4..12"`.
#[derive(Clone, Debug, PartialEq, Eq, Deserialize)]
#[serde(untagged)]
pub enum TSpec {
    One(u32),
    Many(Vec<u32>),
    Text(String),
}

impl TSpec {
    pub fn values(&self) -> Result<Vec<u32>, CliError> {
        match self {
            TSpec::One(t) => Ok(vec![*t]),
            TSpec::Many(ts) => Ok(ts.clone()),
            TSpec::Text(s) => parse_t_list(s),
        }
    }
}

/// Comma separated values or inclusive ranges: `3`, `4,6,8`, `4..12`.
pub fn parse_t_list(s: &str) -> Result<Vec<u32>, CliError> {
    let bad = || CliError::Config(format!("bad T list {s:?}"));
    let mut out = Vec::new();
    for item in s.split(',').map(str::trim).filter(|x| !x.is_empty()) {
        if let Some((lo, hi)) = item.split_once("..") {
            let lo: u32 = lo.trim().parse().map_err(|_| bad())?;
            let hi: u32 = hi.trim().parse().map_err(|_| bad())?;
            if lo > hi {
                return Err(bad());
            }
            out.extend(lo..=hi);
        } else {
            out.push(item.parse().map_err(|_| bad())?);
        }
    }
    if out.is_empty() {
        return Err(bad());
    }
    Ok(out)
}

/// Every key is optional; absent keys keep the library defaults.
#[derive(Clone, Debug, Default, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Settings {
    pub q: Option<u32>,
    /// `m:n:a1,...,ad` or `(a1,..;b1,..)`.
    pub weights: Option<String>,
    #[serde(rename = "R")]
    pub r: Option<i64>,
    #[serde(rename = "T")]
    pub t: Option<TSpec>,
    #[serde(rename = "N")]
    pub n: Option<u32>,
    pub trials: Option<u32>,
    pub depth: Option<u32>,
    pub seed: Option<u64>,
    pub observable: Option<String>,
    /// `shell:<n0>` or `mean`.
    pub target: Option<String>,
    pub c1: Option<String>,
    pub c2: Option<String>,
    pub budget: Option<u64>,
    pub workers: Option<usize>,
    pub force_zero: Option<bool>,
    /// `count` or `orbit`, read by the `experiment` subcommand.
    pub kind: Option<String>,
}

impl Settings {
    pub fn from_toml(text: &str) -> Result<Self, CliError> {
        toml::from_str(text).map_err(|e| CliError::Config(e.message().to_string()))
    }

    /// `self` with every key set in `over` replaced.
    pub fn overridden_by(self, over: Settings) -> Settings {
        Settings {
            q: over.q.or(self.q),
            weights: over.weights.or(self.weights),
            r: over.r.or(self.r),
            t: over.t.or(self.t),
            n: over.n.or(self.n),
            trials: over.trials.or(self.trials),
            depth: over.depth.or(self.depth),
            seed: over.seed.or(self.seed),
            observable: over.observable.or(self.observable),
            target: over.target.or(self.target),
            c1: over.c1.or(self.c1),
            c2: over.c2.or(self.c2),
            budget: over.budget.or(self.budget),
            workers: over.workers.or(self.workers),
            force_zero: over.force_zero.or(self.force_zero),
            kind: over.kind.or(self.kind),
        }
    }

    /// Validated experiment parameters. An explicit depth must reach the least precision
    /// sufficient for the largest `T`.
    pub fn build(&self) -> Result<ExperimentConfig, CliError> {
        let mut cfg = ExperimentConfig::default();
        if let Some(q) = self.q {
            cfg.q = q;
        }
        cfg.field()?;
        if let Some(w) = &self.weights {
            cfg.weights = w.parse::<Weights>()?;
        }
        if let Some(r) = self.r {
            cfg.r = r;
        }
        if let Some(t) = &self.t {
            cfg.t_values = t.values()?;
        }
        if let Some(n) = self.n {
            cfg.steps = n;
        }
        if let Some(trials) = self.trials {
            cfg.trials = trials;
        }
        cfg.depth = self.depth;
        if let Some(seed) = self.seed {
            cfg.master_seed = seed;
        }
        if let Some(obs) = &self.observable {
            cfg.observable = obs.clone();
        }
        if let Some(target) = &self.target {
            cfg.target = parse_target(target)?;
        }
        if let Some(c) = &self.c1 {
            cfg.c1 = parse_cylinder(c)?;
        }
        if let Some(c) = &self.c2 {
            cfg.c2 = parse_cylinder(c)?;
        }
        if let Some(b) = self.budget {
            cfg.budget = b;
        }
        if let Some(k) = self.workers {
            cfg.workers = k;
        }
        cfg.force_zero = self.force_zero.unwrap_or(false);
        cfg.validate().map_err(|e| CliError::Config(e.to_string()))?;
        if let Some(depth) = cfg.depth {
            let needed = precision_required(&cfg.weights, cfg.r, cfg.max_t());
            if depth < needed {
                return Err(CliError::Config(format!("depth {depth} is below the required precision {needed}")));
            }
        }
        Ok(cfg)
    }
}

/// Parses a TOML experiment description into validated parameters.
pub fn parse_config(text: &str) -> Result<ExperimentConfig, CliError> {
    Settings::from_toml(text)?.build()
}

pub fn parse_target(s: &str) -> Result<OrbitTarget, CliError> {
    match s.trim() {
        "mean" => Ok(OrbitTarget::MeanValue),
        other => other
            .strip_prefix("shell:")
            .and_then(|n| n.parse().ok())
            .map(|n0| OrbitTarget::ShellSlope { n0 })
            .ok_or_else(|| CliError::Config(format!("bad target {s:?}"))),
    }
}

fn parse_cylinder(s: &str) -> Result<Cylinder, CliError> {
    s.parse().map_err(|e: ffda::diophantine::DiophantineError| CliError::Config(e.to_string()))
}

/// Assigns `--cylinder` values: an optional `C1=`/`C2=` prefix, else the cylinder's side
/// (`alpha` is the `x` direction, `beta` the `y` direction).
pub fn assign_cylinders(values: &[String], settings: &mut Settings) -> Result<(), CliError> {
    for v in values {
        let v = v.trim();
        if let Some(c) = v.strip_prefix("C1=") {
            settings.c1 = Some(c.to_string());
            continue;
        }
        if let Some(c) = v.strip_prefix("C2=") {
            settings.c2 = Some(c.to_string());
            continue;
        }
        match parse_cylinder(v)? {
            Cylinder::Digits { side: Side::Alpha, .. } => settings.c1 = Some(v.to_string()),
            Cylinder::Digits { side: Side::Beta, .. } => settings.c2 = Some(v.to_string()),
            _ => return Err(CliError::Config(format!("cylinder {v:?} needs a C1= or C2= prefix"))),
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn t_lists() {
        assert_eq!(parse_t_list("4..6, 9").unwrap(), vec![4, 5, 6, 9]);
        assert!(parse_t_list("6..4").is_err());
        assert!(parse_t_list("").is_err());
    }

    #[test]
    fn flags_win() {
        let file = Settings { q: Some(3), r: Some(1), ..Default::default() };
        let flags = Settings { q: Some(2), ..Default::default() };
        let merged = file.overridden_by(flags);
        assert_eq!((merged.q, merged.r), (Some(2), Some(1)));
    }

    #[test]
    fn targets() {
        assert_eq!(parse_target("mean").unwrap(), OrbitTarget::MeanValue);
        assert_eq!(parse_target("shell:5").unwrap(), OrbitTarget::ShellSlope { n0: 5 });
        assert!(parse_target("shell").is_err());
    }
}
