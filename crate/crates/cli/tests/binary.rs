//! End-to-end runs of the `ffda` binary: outputs and exit codes.

use std::process::{Command, Output};

fn ffda(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ffda")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn volume_agrees_with_the_grid_oracle() {
    let out = ffda(&["volume", "--weights", "(2;1,1)", "--R=-1", "--T", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("agree,true"), "{text}");
    let out = ffda(&["volume", "--region", "F:S=2,R=0", "--format", "json"]);
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["measure"], doc["oracle"]);
}

#[test]
fn count_for_a_given_matrix() {
    // A = 1/t + 1/t^3 + 1/t^4 carries the 5 digits T = 2 needs
    let out = ffda(&["count", "--matrix", "t^-1+t^-3+t^-4", "--T", "2"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).lines().nth(1).unwrap().split(',').take(6).collect::<Vec<_>>(), ["0", "0", "2", "3", "3", "0"]);
}

#[test]
fn sampled_counts_do_not_depend_on_worker_count() {
    let strip = |out: Output| -> Vec<String> {
        stdout(&out).lines().map(|l| l.rsplit_once(',').unwrap().0.to_string()).collect()
    };
    let base = ["count", "--T", "2..5", "--trials", "5", "--seed", "9"];
    let one = strip(ffda(&[&base[..], &["--workers", "1"]].concat()));
    let three = strip(ffda(&[&base[..], &["--workers", "3"]].concat()));
    assert_eq!(one.len(), 21);
    assert_eq!(one, three);
}

#[test]
fn flags_override_the_config_file() {
    let dir = std::env::temp_dir().join(format!("ffda-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("sweep.toml");
    std::fs::write(&path, "q = 3\nT = [1, 2]\ntrials = 2\nseed = 4\n").unwrap();
    let out_path = dir.join("out.csv");
    let out = ffda(&[
        "experiment",
        "--config",
        path.to_str().unwrap(),
        "--trials",
        "3",
        "--out",
        out_path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let csv = std::fs::read_to_string(&out_path).unwrap();
    assert_eq!(csv.lines().count(), 1 + 3 * 2);
    let summary: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.join("out.summary.json")).unwrap()).unwrap();
    assert_eq!(summary["kind"], "count");
    assert_eq!(summary["records"], 6);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn orbit_series_reports_every_prefix() {
    let out = ffda(&["orbit", "--N", "8", "--T", "1", "--seed", "2", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["records"].as_array().unwrap().len(), 8);
    assert_eq!(doc["summary"]["kind"], "orbit");
}

#[test]
fn goodcheck_and_exhaustive_oracle() {
    let out = ffda(&["goodcheck", "--poly", "x0", "--eps=-1,-2"]);
    assert_eq!(out.status.code(), Some(0));
    // |x| < q^e on O has relative measure q^(e-1)
    assert_eq!(stdout(&out).lines().skip(1).map(|l| l.split(',').nth(1).unwrap().to_string()).collect::<Vec<_>>(), ["1/4", "1/8"]);
    let out = ffda(&["oracle", "--exhaustive", "--T", "1,2"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).lines().skip(1).all(|l| l.ends_with(",true")));
}

#[test]
fn exit_codes() {
    assert_eq!(ffda(&["count", "--weights", "(1;2)"]).status.code(), Some(2));
    assert_eq!(ffda(&["count", "--T", "3", "--depth", "2"]).status.code(), Some(2));
    assert_eq!(ffda(&["volume", "--region", "G:T=1"]).status.code(), Some(2));
    assert_eq!(ffda(&["orbit", "--observable", "nope"]).status.code(), Some(2));
    assert_eq!(ffda(&["oracle", "--region", "E:T=9,R=0", "--budget", "10"]).status.code(), Some(3));
    assert_eq!(ffda(&["count", "--T", "12", "--budget", "10"]).status.code(), Some(3));
    // an exact matrix given too few digits for the orbit length
    assert_eq!(ffda(&["orbit", "--matrix", "t^-1", "--depth", "7", "--T", "3", "--N", "4"]).status.code(), Some(3));
}
