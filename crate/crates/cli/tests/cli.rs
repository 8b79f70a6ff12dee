use std::fs;
use std::process::{Command, Output};

fn eda_lab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_eda-lab"))
        .args(args)
        .env_remove("EDA_LAB_SEED")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn grid_prints_one_k_per_line() {
    let out = eda_lab(&["grid", "--min", "995", "--max", "1010"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "995\n1000\n");

    let out = eda_lab(&["grid", "--min", "6", "--max", "10000"]);
    let text = stdout(&out);
    assert_eq!(text.lines().next(), Some("6"));
    assert_eq!(text.lines().last(), Some("10000"));
}

#[test]
fn empty_grid_is_a_usage_error() {
    let out = eda_lab(&["grid", "--min", "1001", "--max", "1010"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn oracle_reports_the_three_bit_golden_values() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("freqs.txt");
    fs::write(&path, "0.5\n0.5\n\n0.5\n").unwrap();
    let out = eda_lab(&["oracle", "--freqs", path.to_str().unwrap(), "--bit", "1", "--k", "10"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = stdout(&out);
    let value = |key: &str| -> f64 {
        text.lines()
            .find_map(|l| l.strip_prefix(&format!("{key}: ")))
            .unwrap_or_else(|| panic!("missing {key} in {text}"))
            .parse()
            .unwrap()
    };
    assert!((value("signal_probability") - 7.0 / 12.0).abs() < 1e-12);
    assert!((value("p_up") - 19.0 / 48.0).abs() < 1e-12);
    assert!((value("p_down") - 5.0 / 48.0).abs() < 1e-12);
    assert!((value("p_stay") - 0.5).abs() < 1e-12);
    assert!((value("expected_drift") - 7.0 / 240.0).abs() < 1e-12);
    assert_eq!(value("n"), 3.0);
}

#[test]
fn oracle_errors() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("freqs.txt");
    fs::write(&path, "0.5\n0.5\n").unwrap();
    let p = path.to_str().unwrap();
    assert_eq!(eda_lab(&["oracle", "--freqs", p, "--bit", "3", "--k", "10"]).status.code(), Some(2));
    assert_eq!(eda_lab(&["oracle", "--freqs", p, "--bit", "0", "--k", "10"]).status.code(), Some(2));
    let missing = dir.path().join("nope.txt");
    let out = eda_lab(&["oracle", "--freqs", missing.to_str().unwrap(), "--bit", "1", "--k", "10"]);
    assert_eq!(out.status.code(), Some(3));
    fs::write(&path, "0.5\n1.7\n").unwrap();
    assert_eq!(eda_lab(&["oracle", "--freqs", p, "--bit", "1", "--k", "10"]).status.code(), Some(2));
}

#[test]
fn run_writes_the_run_csv() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("runs.csv");
    let out = eda_lab(&[
        "run", "--benchmark", "dynbv", "--n", "20", "--k", "8", "--runs", "3", "--seed", "42",
        "--cap", "5000", "--pbar-one-over-n", "--out", path.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(stdout(&out).starts_with("K,runs,median_iterations"));
    let csv = fs::read_to_string(&path).unwrap();
    let mut lines = csv.lines();
    assert!(lines.next().unwrap().starts_with("benchmark,mode,n,K,pbar,run_id,seed,"));
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 3);
    assert!(rows.iter().all(|r| r.starts_with("dynbv,fast,20,8.0,0.05,")));
}

#[test]
fn seed_environment_variable_overrides_the_flag() {
    let args = ["run", "--n", "20", "--k", "8", "--runs", "2", "--cap", "2000"];
    let with_flag = {
        let mut a = args.to_vec();
        a.extend(["--seed", "7"]);
        eda_lab(&a)
    };
    let with_env = Command::new(env!("CARGO_BIN_EXE_eda-lab"))
        .args(args)
        .args(["--seed", "1"])
        .env("EDA_LAB_SEED", "7")
        .output()
        .unwrap();
    assert!(with_flag.status.success() && with_env.status.success());
    assert_eq!(with_flag.stdout, with_env.stdout);
    assert_ne!(with_flag.stdout, eda_lab(&args).stdout);

    let bad = Command::new(env!("CARGO_BIN_EXE_eda-lab"))
        .args(args)
        .env("EDA_LAB_SEED", "not-a-seed")
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(eda_lab(&["run", "--k", "10", "--benchmark", "trap"]).status.code(), Some(2));
    assert_eq!(eda_lab(&["run", "--k", "0.5", "--runs", "1"]).status.code(), Some(2));
    assert_eq!(eda_lab(&["run", "--k", "10", "--pbar", "0.7"]).status.code(), Some(2));
    assert_eq!(eda_lab(&["sweep", "--preset", "fig9", "--out-dir", "x"]).status.code(), Some(2));
    assert_eq!(eda_lab(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn unwritable_output_exits_with_three() {
    let dir = tempfile::tempdir().unwrap();
    let blocker = dir.path().join("file");
    fs::write(&blocker, "x").unwrap();
    let target = blocker.join("runs.csv");
    let out = eda_lab(&[
        "run", "--n", "10", "--k", "5", "--runs", "1", "--cap", "10", "--out", target.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn spec_file_sweep_is_parallelism_invariant() {
    let dir = tempfile::tempdir().unwrap();
    let spec = dir.path().join("sweep.txt");
    fs::write(&spec, "n = 24\nk = 6, 12\nruns = 4\ncap = 3000\nseed = 5\n").unwrap();
    let mut outputs = Vec::new();
    for parallelism in ["1", "3"] {
        let out_dir = dir.path().join(format!("out{parallelism}"));
        let out = eda_lab(&[
            "sweep", "--spec", spec.to_str().unwrap(), "--out-dir", out_dir.to_str().unwrap(),
            "--parallelism", parallelism,
        ]);
        assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
        let runs = fs::read(out_dir.join("runs.csv")).unwrap();
        let cells = fs::read_to_string(out_dir.join("cells.csv")).unwrap();
        assert_eq!(cells.lines().count(), 3);
        outputs.push(runs);
    }
    assert_eq!(outputs[0], outputs[1]);
}
