use ffda::experiments::{run_count_experiment, ExperimentConfig, TrialRecord};
use ffda::Rational;
use ffda_cli::report::{emit_report_with_summary, parse_rational, CSV_HEADER};
use ffda_cli::{emit_report, parse_report, Format};

fn rat(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

fn record(value: Rational) -> TrialRecord {
    TrialRecord {
        trial: 3,
        seed: u64::MAX,
        t_or_n: 12,
        centering: rat(5, 1),
        norm_error: &value - rat(5, 1),
        value,
        micros: 17,
    }
}

#[test]
fn empty_csv_is_the_header_only() {
    let out = emit_report(&[], Format::Csv);
    assert_eq!(String::from_utf8(out).unwrap(), format!("{}\n", CSV_HEADER.join(",")));
    assert!(parse_report(&emit_report(&[], Format::Csv), Format::Csv).unwrap().is_empty());
}

#[test]
fn rationals_are_written_exactly() {
    let text = String::from_utf8(emit_report(&[record(rat(3, 4))], Format::Csv)).unwrap();
    assert_eq!(text.lines().nth(1).unwrap(), "3,18446744073709551615,12,3/4,5,-17/4,17");
    assert_eq!(parse_rational("3/4").unwrap(), rat(3, 4));
}

#[test]
fn emit_then_parse_round_trips() {
    let records = vec![record(rat(3, 4)), record(rat(-7, 3)), record(rat(10, 1))];
    for format in [Format::Csv, Format::Json] {
        assert_eq!(parse_report(&emit_report(&records, format), format).unwrap(), records);
    }
    let with_summary = emit_report_with_summary(&records, Format::Json, Some(serde_json::json!({ "k": 1 })));
    assert_eq!(parse_report(&with_summary, Format::Json).unwrap(), records);
}

#[test]
fn sampled_reports_are_deterministic_apart_from_timing() {
    let cfg = ExperimentConfig { t_values: vec![2, 3, 4], trials: 6, master_seed: 11, ..Default::default() };
    let strip = |mut rs: Vec<TrialRecord>| {
        rs.iter_mut().for_each(|r| r.micros = 0);
        rs
    };
    let one = strip(run_count_experiment(&ExperimentConfig { workers: 1, ..cfg.clone() }).unwrap());
    let four = strip(run_count_experiment(&ExperimentConfig { workers: 4, ..cfg }).unwrap());
    assert_eq!(emit_report(&one, Format::Csv), emit_report(&four, Format::Csv));
    assert_eq!(emit_report(&one, Format::Json), emit_report(&four, Format::Json));
    assert_eq!(parse_report(&emit_report(&one, Format::Csv), Format::Csv).unwrap(), one);
}

#[test]
fn malformed_reports_are_rejected() {
    assert!(parse_report(b"a,b\n1,2\n", Format::Csv).is_err());
    let bad = format!("{}\n0,0,1,0.5,1,0,0\n", CSV_HEADER.join(","));
    assert!(parse_report(bad.as_bytes(), Format::Csv).is_err());
    assert!(parse_report(b"[]", Format::Json).is_err());
}
