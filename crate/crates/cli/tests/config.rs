use ffda_cli::config::{parse_t_list, Settings};
use ffda_cli::{parse_config, CliError};

#[test]
fn minimal_config_parses() {
    let cfg = parse_config("q = 2\nweights = \"(1;1)\"\nR = 0\nT = 3\ntrials = 1\nseed = 7\n").unwrap();
    assert_eq!(cfg.q, 2);
    assert_eq!(cfg.weights.to_string(), "1:1:1,1");
    assert_eq!((cfg.r, cfg.t_values.clone(), cfg.trials, cfg.master_seed), (0, vec![3], 1, 7));
}

#[test]
fn unbalanced_weights_are_rejected() {
    let err = parse_config("weights = \"(1;2)\"\n").unwrap_err();
    assert!(matches!(err, CliError::InvalidWeights(_)), "{err:?}");
    assert_eq!(err.exit_code(), 2);
}

#[test]
fn unknown_keys_are_rejected() {
    let err = parse_config("q = 2\nfoo = 1\n").unwrap_err();
    assert!(matches!(err, CliError::Config(_)), "{err:?}");
    assert_eq!(err.exit_code(), 2);
}

#[test]
fn depth_below_required_precision_is_a_config_error() {
    // P* for (1;1), R=0, T=3 is 3 + 3 + 1 = 7
    assert!(parse_config("T = 3\ndepth = 7\n").is_ok());
    assert!(matches!(parse_config("T = 3\ndepth = 6\n"), Err(CliError::Config(_))));
}

#[test]
fn t_accepts_scalars_lists_and_ranges() {
    assert_eq!(parse_config("T = [4, 8]\n").unwrap().t_values, vec![4, 8]);
    assert_eq!(parse_config("T = \"4..6\"\n").unwrap().t_values, vec![4, 5, 6]);
    assert_eq!(parse_t_list("1,3..4").unwrap(), vec![1, 3, 4]);
}

#[test]
fn other_malformed_values() {
    assert!(matches!(parse_config("q = 4\n"), Err(e) if e.exit_code() == 2));
    assert!(matches!(parse_config("trials = 0\n"), Err(e) if e.exit_code() == 2));
    assert!(matches!(parse_config("target = \"nope\"\n"), Err(CliError::Config(_))));
    assert!(matches!(parse_config("c1 = \"side=alpha\"\n"), Err(CliError::Config(_))));
    assert!(matches!(parse_config("q = \"two\"\n"), Err(CliError::Config(_))));
}

#[test]
fn directional_config() {
    let cfg = parse_config("q = 3\nc2 = \"side=beta,depth=1,allow=[1]\"\ntarget = \"mean\"\n").unwrap();
    assert!(cfg.directional());
}

#[test]
fn later_settings_win() {
    let file = Settings::from_toml("q = 3\nR = 1\n").unwrap();
    let flags = Settings::from_toml("q = 2\n").unwrap();
    let cfg = file.overridden_by(flags).build().unwrap();
    assert_eq!((cfg.q, cfg.r), (2, 1));
}
