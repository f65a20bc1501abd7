use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_planarcount"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let o = run(args);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_slice(&o.stdout).unwrap()
}

fn constant<'a>(v: &'a Value, name: &str) -> &'a Value {
    v["constants"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["name"] == name)
        .unwrap()
}

#[test]
fn constants_report_gamma() {
    let v = json(&["--digits", "10", "constants"]);
    let gamma = constant(&v, "gamma");
    assert_eq!(gamma["value"], "27.22687777");
    assert_eq!(gamma["agrees"], true);
}

#[test]
fn constants_are_stable_under_precision_doubling() {
    let lo = json(&["--digits", "30", "constants"]);
    let hi = json(&["--digits", "30", "--precision-bits", "512", "constants"]);
    for (a, b) in lo["constants"].as_array().unwrap().iter().zip(hi["constants"].as_array().unwrap()) {
        assert_eq!(a["value"], b["value"], "{}", a["name"]);
    }
}

#[test]
fn output_is_deterministic() {
    let a = run(&["--digits", "25", "constants"]);
    let b = run(&["--digits", "25", "constants"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn series_rows() {
    let v = json(&["--order", "6", "series", "--which", "g"]);
    let counts: Vec<&str> = v["counts"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["count"].as_str().unwrap())
        .collect();
    assert_eq!(counts, ["1", "2", "8", "64", "1023", "32071"]);

    let o = run(&["--order", "4", "--format", "csv", "series", "--which", "c"]);
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "n,count,egf_coefficient");
    assert_eq!(lines[4], "4,38,19/12");
    let bare = run(&["--order", "4", "--format", "csv", "--no-header", "series", "--which", "c"]);
    assert_eq!(stdout(&bare).lines().next(), Some("1,1,1"));
}

#[test]
fn bivariate_series_rows() {
    let o = run(&["--order", "3", "--format", "csv", "series", "--which", "b", "--bivariate"]);
    let text = stdout(&o);
    assert!(text.lines().any(|l| l == "3,3,1,1/6"));
    assert!(text.lines().any(|l| l == "2,1,1,1/2"));
}

#[test]
fn curve_has_one_row_per_step() {
    let o = run(&["curve"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 101);
    assert_eq!(lines[0], "mu,u,lambda_mu,growth_ratio");
    assert!(lines[1].starts_with("1.05"));
    assert!(lines[100].starts_with("2.95"));
}

#[test]
fn local_law_at_kappa_gives_gamma() {
    let c = json(&["--digits", "30", "constants"]);
    let kappa = constant(&c, "kappa")["value"].as_str().unwrap().to_string();
    let v = json(&["--digits", "10", "law", "local", "--mu", &kappa]);
    assert_eq!(v["growth_ratio"], "27.22687777");
    assert_eq!(v["u"], "1.000000000");
}

#[test]
fn law_subcommands_run() {
    for args in [
        &["law", "edges"][..],
        &["law", "blocks"],
        &["law", "components"],
        &["law", "appearances", "--h", "1", "--z", "0.05"],
        &["law", "family", "--kind", "vertex"],
        &["law", "tau"],
    ] {
        json(args);
    }
}

#[test]
fn verify_passes_and_detects_faults() {
    let ok = run(&["--order", "6", "--oracle-nmax", "5", "verify"]);
    assert_eq!(ok.status.code(), Some(0), "{}", stdout(&ok));
    assert!(stdout(&ok).lines().all(|l| l.starts_with("PASS")));
    let bad = run(&["--order", "6", "--oracle-nmax", "5", "verify", "--inject-fault", "series-coefficient"]);
    assert_eq!(bad.status.code(), Some(1));
    assert!(stdout(&bad).lines().any(|l| l.starts_with("FAIL")));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&["bogus"]).status.code(), Some(2));
    assert_eq!(run(&["--precision-bits", "64", "constants"]).status.code(), Some(2));
    assert_eq!(run(&["law", "local", "--mu", "3.5"]).status.code(), Some(2));
    assert_eq!(run(&["--oracle-nmax", "9", "verify"]).status.code(), Some(2));
}

#[test]
fn writes_to_out_file() {
    let dir = std::env::temp_dir().join(format!("planarcount-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("tau.json");
    let o = run(&["--out", path.to_str().unwrap(), "law", "tau"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert!(v["tau"].as_str().unwrap().starts_with("6.0374"));
    std::fs::remove_dir_all(&dir).unwrap();
}
