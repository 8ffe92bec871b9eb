//! Batch front end: TOML configs with flag overrides, one subcommand per library entry
//! point, exact CSV/JSON reports.

pub mod commands;
pub mod config;
pub mod report;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use ffda::diophantine::DiophantineError;
use ffda::dynamics::{DynamicsError, InvalidWeights};
use ffda::experiments::ExperimentError;

pub use config::{parse_config, Settings};
pub use report::{emit_report, parse_report, Format};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    InvalidWeights(#[from] InvalidWeights),
    #[error("configuration error: {0}")]
    Config(String),
    #[error(transparent)]
    Experiment(#[from] ExperimentError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error("{0}")]
    Failed(String),
}

impl From<DiophantineError> for CliError {
    fn from(e: DiophantineError) -> Self {
        CliError::Experiment(e.into())
    }
}

impl From<DynamicsError> for CliError {
    fn from(e: DynamicsError) -> Self {
        CliError::Experiment(e.into())
    }
}

impl CliError {
    /// 2 for bad input, 3 for precision or budget exhaustion, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::InvalidWeights(_) | CliError::Config(_) => 2,
            CliError::Experiment(e) if e.is_resource_error() => 3,
            CliError::Experiment(e) if is_input_error(e) => 2,
            CliError::Experiment(_) | CliError::Io(_) | CliError::Failed(_) => 1,
        }
    }
}

fn is_input_error(e: &ExperimentError) -> bool {
    match e {
        ExperimentError::Config(_) => true,
        ExperimentError::Diophantine(d) => matches!(
            d,
            DiophantineError::Parse(_)
                | DiophantineError::InvalidWeights(_)
                | DiophantineError::DimensionMismatch { .. }
                | DiophantineError::Algebra(_)
        ),
        ExperimentError::Dynamics(DynamicsError::Parse(_)) => true,
        ExperimentError::Dynamics(DynamicsError::Diophantine(d)) => is_input_error(&ExperimentError::Diophantine(d.clone())),
        _ => false,
    }
}

#[derive(Debug, Parser)]
#[command(name = "ffda", version, about = "Exact Diophantine approximation experiments over F_q((1/t))")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

/// Flags shared by every subcommand; each overrides the matching key of `--config`.
#[derive(Debug, Clone, Args)]
pub struct Common {
    /// TOML file with experiment settings.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long)]
    pub q: Option<u32>,
    /// `m:n:a1,...,ad` or `(a1,..;b1,..)`.
    #[arg(long)]
    pub weights: Option<String>,
    #[arg(long = "R", allow_hyphen_values = true)]
    pub r: Option<i64>,
    /// `3`, `4,8,12` or `4..12`.
    #[arg(long = "T")]
    pub t: Option<String>,
    /// Orbit length.
    #[arg(long = "N")]
    pub n: Option<u32>,
    #[arg(long)]
    pub trials: Option<u32>,
    /// Fractional digits per matrix entry (or per coordinate for grid oracles).
    #[arg(long)]
    pub depth: Option<u32>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Direction cylinder, `[C1=|C2=]<spec>`; repeat for both sides.
    #[arg(long)]
    pub cylinder: Vec<String>,
    #[arg(long)]
    pub budget: Option<u64>,
    /// Worker threads for trials (0: all cores).
    #[arg(long)]
    pub workers: Option<usize>,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
    /// Output file; standard output when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

impl Common {
    fn flag_settings(&self) -> Result<Settings, CliError> {
        let mut s = Settings {
            q: self.q,
            weights: self.weights.clone(),
            r: self.r,
            t: self.t.clone().map(config::TSpec::Text),
            n: self.n,
            trials: self.trials,
            depth: self.depth,
            seed: self.seed,
            budget: self.budget,
            workers: self.workers,
            ..Default::default()
        };
        config::assign_cylinders(&self.cylinder, &mut s)?;
        Ok(s)
    }

    /// File settings (if any) patched by `extra`, then by the flags.
    pub fn settings(&self, extra: Settings) -> Result<Settings, CliError> {
        let file = match &self.config {
            Some(path) => Settings::from_toml(&std::fs::read_to_string(path)?)?,
            None => Settings::default(),
        };
        Ok(file.overridden_by(extra).overridden_by(self.flag_settings()?))
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Exact volume of a region, cross-checked against the grid oracle.
    Volume {
        #[command(flatten)]
        common: Common,
        /// `E:T=3,R=0`, `F:S=3,R=0`, `ball:r=1`, `EDir:T=..,R=..;C1=..;C2=..`; default `E` from `--T`/`--R`.
        #[arg(long)]
        region: Option<String>,
        /// Skip the grid oracle.
        #[arg(long)]
        no_oracle: bool,
    },
    /// Solution counts for one matrix or for sampled trials.
    Count {
        #[command(flatten)]
        common: Common,
        /// Rows separated by `|`, entries by `;`, e.g. `t^-1+t^-3;t^-2`.
        #[arg(long)]
        matrix: Option<String>,
    },
    /// Running Birkhoff averages along the diagonal orbit.
    Orbit {
        #[command(flatten)]
        common: Common,
        /// `siegel:E`, `siegel:F`, `siegel:ball:r`, `indicator:delta_ge:k`, `alpha`.
        #[arg(long)]
        observable: Option<String>,
        /// `shell:<n0>` or `mean`.
        #[arg(long)]
        target: Option<String>,
        #[arg(long)]
        matrix: Option<String>,
    },
    /// A full count or orbit sweep with its summary.
    Experiment {
        #[command(flatten)]
        common: Common,
        /// `count` or `orbit`.
        #[arg(long)]
        kind: Option<String>,
        #[arg(long)]
        observable: Option<String>,
        #[arg(long)]
        target: Option<String>,
    },
    /// Empirical sublevel-set constants of a polynomial on the unit polydisc.
    Goodcheck {
        #[command(flatten)]
        common: Common,
        /// E.g. `x0^2*x1 + x1`.
        #[arg(long)]
        poly: String,
        #[arg(long, default_value_t = 1)]
        vars: usize,
        /// Exponents `e < 0` of `eps = q^e`.
        #[arg(long, allow_hyphen_values = true, default_value = "-1,-2,-3,-4")]
        eps: String,
    },
    /// Brute-force oracles: grid volume of a region, or the exhaustive matrix average.
    Oracle {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        region: Option<String>,
        /// Average the count over every matrix of the least sufficient depth.
        #[arg(long)]
        exhaustive: bool,
    },
}

impl Command {
    pub fn common(&self) -> &Common {
        match self {
            Command::Volume { common, .. }
            | Command::Count { common, .. }
            | Command::Orbit { common, .. }
            | Command::Experiment { common, .. }
            | Command::Goodcheck { common, .. }
            | Command::Oracle { common, .. } => common,
        }
    }
}
