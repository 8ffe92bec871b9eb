//! Subcommand bodies. Each returns the bytes to write; nothing here touches stdout.

use std::time::Instant;

use serde_json::{json, Value};

use ffda::algebra::Fq;
use ffda::diophantine::{
    count_solutions_budgeted, count_solutions_directional, expected_count, region_measure, ApproxMatrix, RegionSpec,
    DEFAULT_BUDGET,
};
use ffda::dynamics::birkhoff_series;
use ffda::experiments::{
    count_centering, exhaustive_average, good_function_check, grid_depth_needed, grid_measure_oracle, normalized_error,
    orbit_target, run_count_experiment, run_orbit_experiment, summarize_counts, summarize_orbits, ExperimentConfig,
    MultiPoly, TrialRecord,
};
use ffda::{Rational, Scalar};

use crate::report::{emit_pairs, emit_report_with_summary, emit_table, Format};
use crate::{CliError, Command, Settings};

/// Grid and exhaustive oracles run inside `volume` stop at this many cells unless
/// `--budget` says otherwise.
const ORACLE_BUDGET: u64 = 1 << 22;

#[derive(Debug, Default)]
pub struct Output {
    /// The report proper.
    pub body: Vec<u8>,
    /// JSON aggregate accompanying a CSV report.
    pub summary: Option<Vec<u8>>,
    /// Set when an oracle cross-check disagreed.
    pub failure: Option<String>,
}

pub fn run(command: &Command) -> Result<Output, CliError> {
    let common = command.common();
    let format = common.format;
    match command {
        Command::Volume { region, no_oracle, .. } => {
            let s = common.settings(Settings::default())?;
            let mode = if *no_oracle { OracleMode::Skip } else { OracleMode::IfAffordable };
            measure_output(&s, region.as_deref(), mode, format)
        }
        Command::Count { matrix, .. } => {
            let cfg = common.settings(Settings::default())?.build()?;
            let records = match matrix {
                Some(text) => count_matrix(&cfg, text)?,
                None => run_count_experiment(&cfg)?,
            };
            Ok(records_output(records, format, count_summary))
        }
        Command::Orbit { observable, target, matrix, .. } => {
            let extra = Settings { observable: observable.clone(), target: target.clone(), ..Default::default() };
            let cfg = common.settings(extra)?.build()?;
            let records = match matrix {
                Some(text) => orbit_matrix(&cfg, text)?,
                None => run_orbit_experiment(&cfg)?,
            };
            Ok(records_output(records, format, orbit_summary))
        }
        Command::Experiment { kind, observable, target, .. } => {
            let extra = Settings {
                observable: observable.clone(),
                target: target.clone(),
                kind: kind.clone(),
                ..Default::default()
            };
            let s = common.settings(extra)?;
            let cfg = s.build()?;
            match s.kind.as_deref().unwrap_or("count") {
                "count" => Ok(records_output(run_count_experiment(&cfg)?, format, count_summary)),
                "orbit" => Ok(records_output(run_orbit_experiment(&cfg)?, format, orbit_summary)),
                other => Err(CliError::Config(format!("unknown experiment kind {other:?}"))),
            }
        }
        Command::Goodcheck { poly, vars, eps, .. } => {
            let s = common.settings(Settings::default())?;
            goodcheck(&s, poly, *vars, eps, format)
        }
        Command::Oracle { region, exhaustive, .. } => {
            let s = common.settings(Settings::default())?;
            if *exhaustive {
                exhaustive_oracle(&s, format)
            } else {
                measure_output(&s, region.as_deref(), OracleMode::Required, format)
            }
        }
    }
}

fn records_output(records: Vec<TrialRecord>, format: Format, summarize: fn(&[TrialRecord]) -> Value) -> Output {
    let summary = summarize(&records);
    match format {
        Format::Json => Output { body: emit_report_with_summary(&records, format, Some(summary)), ..Default::default() },
        Format::Csv => Output {
            body: emit_report_with_summary(&records, format, None),
            summary: Some(json_bytes(&summary)),
            failure: None,
        },
    }
}

fn json_bytes(v: &Value) -> Vec<u8> {
    let mut out = serde_json::to_vec_pretty(v).expect("serializable");
    out.push(b'\n');
    out
}

pub fn count_summary(records: &[TrialRecord]) -> Value {
    match summarize_counts(records) {
        None => json!({ "kind": "count", "records": 0 }),
        Some(s) => json!({
            "kind": "count",
            "records": records.len(),
            "mean_ratio": s.mean_ratio.iter().map(|(t, r)| json!({ "T": t, "ratio": r.to_string() })).collect::<Vec<_>>(),
            "error_quantiles": {
                "p05": s.error_quantiles[0].to_string(),
                "p50": s.error_quantiles[1].to_string(),
                "p95": s.error_quantiles[2].to_string(),
            },
            "slope": s.slope,
        }),
    }
}

pub fn orbit_summary(records: &[TrialRecord]) -> Value {
    let trials: Vec<Value> = summarize_orbits(records)
        .iter()
        .map(|s| {
            json!({
                "trial": s.trial,
                "final_average": s.final_average.to_string(),
                "deviation": s.deviation.to_string(),
                "slope": s.slope,
            })
        })
        .collect();
    json!({ "kind": "orbit", "records": records.len(), "trials": trials })
}

fn parse_matrix(cfg: &ExperimentConfig, text: &str) -> Result<ApproxMatrix, CliError> {
    let a = ApproxMatrix::parse(cfg.field()?, text, cfg.depth)?;
    if (a.m(), a.n()) != (cfg.weights.m(), cfg.weights.n()) {
        return Err(CliError::Config(format!(
            "matrix is {}x{}, the weights need {}x{}",
            a.m(),
            a.n(),
            cfg.weights.m(),
            cfg.weights.n()
        )));
    }
    Ok(a)
}

/// Counts for one given matrix over the `T` sweep, as trial 0 with seed 0.
fn count_matrix(cfg: &ExperimentConfig, text: &str) -> Result<Vec<TrialRecord>, CliError> {
    let a = parse_matrix(cfg, text)?;
    cfg.t_values
        .iter()
        .map(|&t| {
            let start = Instant::now();
            let count = if cfg.directional() {
                count_solutions_directional(&a, &cfg.weights, cfg.r, t, &cfg.c1, &cfg.c2)?.count
            } else {
                count_solutions_budgeted(&a, &cfg.weights, cfg.r, t, cfg.budget)?.count
            };
            let value = Rational::from_i64(count as i64);
            let centering = count_centering(cfg, t);
            Ok(TrialRecord {
                trial: 0,
                seed: 0,
                t_or_n: t,
                norm_error: normalized_error(&value, &centering, cfg.q),
                value,
                centering,
                micros: start.elapsed().as_micros() as u64,
            })
        })
        .collect()
}

fn orbit_matrix(cfg: &ExperimentConfig, text: &str) -> Result<Vec<TrialRecord>, CliError> {
    let a = parse_matrix(cfg, text)?;
    let obs = cfg.observable()?;
    let target = orbit_target(cfg, &obs).unwrap_or_else(|| Rational::from_i64(0));
    let start = Instant::now();
    let series = birkhoff_series(&obs, &a, &cfg.weights, cfg.steps, cfg.budget)?;
    let micros = start.elapsed().as_micros() as u64;
    Ok(series
        .into_iter()
        .enumerate()
        .map(|(k, avg)| TrialRecord {
            trial: 0,
            seed: 0,
            t_or_n: k as u32 + 1,
            norm_error: &avg - &target,
            value: avg,
            centering: target.clone(),
            micros,
        })
        .collect())
}

/// Region given explicitly, or `E` from the first `T` and `R`.
fn region_of(s: &Settings, region: Option<&str>) -> Result<(ExperimentConfig, RegionSpec), CliError> {
    // a grid depth is not a matrix precision; keep it out of the config checks
    let cfg = Settings { depth: None, ..s.clone() }.build()?;
    let spec = match region {
        Some(text) => text.parse::<RegionSpec>()?,
        None => RegionSpec::E { t: cfg.orbit_t(), r: cfg.r },
    };
    spec.validate(&cfg.weights, cfg.q)?;
    Ok((cfg, spec))
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum OracleMode {
    Skip,
    /// Skipped with a note when it would exceed the budget.
    IfAffordable,
    Required,
}

/// Closed-form volume next to the grid oracle's value.
fn measure_rows(s: &Settings, region: Option<&str>, mode: OracleMode) -> Result<(Vec<Vec<String>>, Option<String>), CliError> {
    let (cfg, spec) = region_of(s, region)?;
    let exact = region_measure::<Rational>(cfg.q, &cfg.weights, &spec);
    let row = |k: &str, v: String| vec![k.to_string(), v];
    let mut rows = vec![
        row("region", spec.to_string()),
        row("weights", cfg.weights.to_string()),
        row("q", cfg.q.to_string()),
        row("measure", exact.to_string()),
        row("measure_f64", exact.to_f64().to_string()),
    ];
    if mode == OracleMode::Skip {
        return Ok((rows, None));
    }
    let depth = s.depth.unwrap_or_else(|| grid_depth_needed(&cfg.weights, &spec));
    let mut failure = None;
    match grid_measure_oracle(cfg.q, &cfg.weights, &spec, depth, s.budget.unwrap_or(ORACLE_BUDGET)) {
        Ok(grid) => {
            if grid != exact {
                failure = Some(format!("grid oracle gives {grid}, the closed form {exact}"));
            }
            rows.push(row("oracle", grid.to_string()));
            rows.push(row("oracle_depth", depth.to_string()));
            rows.push(row("agree", (grid == exact).to_string()));
        }
        Err(e) if mode == OracleMode::IfAffordable && e.is_resource_error() => {
            rows.push(row("oracle", format!("skipped: {e}")));
        }
        Err(e) => return Err(e.into()),
    }
    Ok((rows, failure))
}

fn measure_output(s: &Settings, region: Option<&str>, mode: OracleMode, format: Format) -> Result<Output, CliError> {
    let (rows, failure) = measure_rows(s, region, mode)?;
    Ok(Output { body: emit_pairs(&rows, format), summary: None, failure })
}

fn exhaustive_oracle(s: &Settings, format: Format) -> Result<Output, CliError> {
    let cfg = Settings { depth: None, ..s.clone() }.build()?;
    let budget = s.budget.unwrap_or(ORACLE_BUDGET);
    let mut rows = Vec::new();
    let mut failure = None;
    for &t in &cfg.t_values {
        let avg = exhaustive_average(cfg.q, &cfg.weights, cfg.r, t, budget)?;
        let expected = expected_count::<Rational>(cfg.q, &cfg.weights, cfg.r, t);
        if avg != expected && failure.is_none() {
            failure = Some(format!("T={t}: exhaustive average {avg}, expectation {expected}"));
        }
        rows.push(vec![t.to_string(), avg.to_string(), expected.to_string(), (avg == expected).to_string()]);
    }
    Ok(Output { body: emit_table(&["T", "average", "expected", "agree"], &rows, format), summary: None, failure })
}

fn goodcheck(s: &Settings, poly: &str, vars: usize, eps: &str, format: Format) -> Result<Output, CliError> {
    let field = Fq::new(s.q.unwrap_or(2)).map_err(|e| CliError::Config(e.to_string()))?;
    let f = MultiPoly::parse(field, vars, poly)?;
    let exps: Vec<i64> = eps
        .split(',')
        .map(|e| e.trim().parse().map_err(|_| CliError::Config(format!("bad epsilon exponent {e:?}"))))
        .collect::<Result<_, _>>()?;
    let deepest = exps.iter().copied().min().ok_or_else(|| CliError::Config("no epsilons".into()))?;
    let depth = s.depth.unwrap_or((1 - deepest).max(1) as u32);
    let report = good_function_check(&f, &exps, depth, s.budget.unwrap_or(DEFAULT_BUDGET))?;
    let rows: Vec<Vec<String>> = report
        .rows
        .iter()
        .map(|r| vec![r.eps_exponent.to_string(), r.ratio.to_string(), r.bound.to_string()])
        .collect();
    let summary = json!({
        "polynomial": f.to_string(),
        "sup_log_norm": report.sup.to_string(),
        "exponent": report.exponent,
        "constant": report.constant,
        "slope": report.slope,
    });
    let columns = ["eps_exponent", "ratio", "bound"];
    Ok(match format {
        Format::Csv => Output { body: emit_table(&columns, &rows, format), summary: Some(json_bytes(&summary)), failure: None },
        Format::Json => {
            let table: Value = serde_json::from_slice(&emit_table(&columns, &rows, format)).expect("own output");
            Output { body: json_bytes(&json!({ "rows": table, "summary": summary })), summary: None, failure: None }
        }
    })
}
