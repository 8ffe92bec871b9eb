//! Byte-deterministic CSV and JSON reports. Exact values are written as `num/den`
//! (plain decimal when integral) and read back without loss.

use std::str::FromStr;

use serde::{Deserialize, Serialize};

use ffda::experiments::TrialRecord;
use ffda::Rational;

use crate::CliError;

pub const CSV_HEADER: [&str; 7] = ["trial", "seed", "T_or_N", "value", "centering", "norm_error", "micros"];

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Serialize, Deserialize)]
struct Row {
    trial: u32,
    seed: u64,
    #[serde(rename = "T_or_N")]
    t_or_n: u32,
    value: String,
    centering: String,
    norm_error: String,
    micros: u64,
}

impl From<&TrialRecord> for Row {
    fn from(r: &TrialRecord) -> Self {
        Row {
            trial: r.trial,
            seed: r.seed,
            t_or_n: r.t_or_n,
            value: r.value.to_string(),
            centering: r.centering.to_string(),
            norm_error: r.norm_error.to_string(),
            micros: r.micros,
        }
    }
}

impl TryFrom<Row> for TrialRecord {
    type Error = CliError;

    fn try_from(r: Row) -> Result<Self, CliError> {
        Ok(TrialRecord {
            trial: r.trial,
            seed: r.seed,
            t_or_n: r.t_or_n,
            value: parse_rational(&r.value)?,
            centering: parse_rational(&r.centering)?,
            norm_error: parse_rational(&r.norm_error)?,
            micros: r.micros,
        })
    }
}

pub fn parse_rational(s: &str) -> Result<Rational, CliError> {
    Rational::from_str(s.trim()).map_err(|_| CliError::Config(format!("bad rational {s:?}")))
}

fn csv_error(e: csv::Error) -> CliError {
    CliError::Config(format!("csv: {e}"))
}

/// Records as CSV (header always present) or as a JSON object `{"records": [...]}`.
pub fn emit_report(records: &[TrialRecord], format: Format) -> Vec<u8> {
    emit_report_with_summary(records, format, None)
}

/// As [`emit_report`]; in JSON the summary becomes a `"summary"` field, CSV ignores it.
pub fn emit_report_with_summary(records: &[TrialRecord], format: Format, summary: Option<serde_json::Value>) -> Vec<u8> {
    match format {
        Format::Csv => {
            let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(Vec::new());
            w.write_record(CSV_HEADER).expect("in-memory write");
            for r in records {
                w.serialize(Row::from(r)).expect("in-memory write");
            }
            w.into_inner().expect("in-memory write")
        }
        Format::Json => {
            let rows: Vec<Row> = records.iter().map(Row::from).collect();
            let mut doc = serde_json::json!({ "records": rows });
            if let Some(s) = summary {
                doc["summary"] = s;
            }
            let mut out = serde_json::to_vec_pretty(&doc).expect("serializable");
            out.push(b'\n');
            out
        }
    }
}

/// Inverse of [`emit_report`].
pub fn parse_report(bytes: &[u8], format: Format) -> Result<Vec<TrialRecord>, CliError> {
    let rows: Vec<Row> = match format {
        Format::Csv => {
            let mut r = csv::Reader::from_reader(bytes);
            let header = r.headers().map_err(csv_error)?;
            if header.iter().ne(CSV_HEADER) {
                return Err(CliError::Config(format!("unexpected csv header {header:?}")));
            }
            r.deserialize().collect::<Result<_, _>>().map_err(csv_error)?
        }
        Format::Json => {
            #[derive(Deserialize)]
            struct Doc {
                records: Vec<Row>,
            }
            serde_json::from_slice::<Doc>(bytes).map_err(|e| CliError::Config(format!("json: {e}")))?.records
        }
    };
    rows.into_iter().map(TrialRecord::try_from).collect()
}

/// Small tables: CSV with a header, or a JSON array with one object per row.
pub fn emit_table(columns: &[&str], rows: &[Vec<String>], format: Format) -> Vec<u8> {
    match format {
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(columns).expect("in-memory write");
            for row in rows {
                w.write_record(row).expect("in-memory write");
            }
            w.into_inner().expect("in-memory write")
        }
        Format::Json => {
            let objs: Vec<serde_json::Map<String, serde_json::Value>> = rows
                .iter()
                .map(|row| columns.iter().zip(row).map(|(c, v)| (c.to_string(), v.clone().into())).collect())
                .collect();
            let mut out = serde_json::to_vec_pretty(&objs).expect("serializable");
            out.push(b'\n');
            out
        }
    }
}

/// `quantity,value` rows: CSV with that header, or one JSON object keyed by quantity.
pub fn emit_pairs(rows: &[Vec<String>], format: Format) -> Vec<u8> {
    match format {
        Format::Csv => emit_table(&["quantity", "value"], rows, format),
        Format::Json => {
            let obj: serde_json::Map<String, serde_json::Value> =
                rows.iter().map(|r| (r[0].clone(), r[1].clone().into())).collect();
            let mut out = serde_json::to_vec_pretty(&obj).expect("serializable");
            out.push(b'\n');
            out
        }
    }
}
