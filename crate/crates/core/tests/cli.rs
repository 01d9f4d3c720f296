use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use adicergo::cli::config_from_args;
use adicergo::config::{validate, CommandName, ExperimentConfig};
use serde_json::Value;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_adicergo"));
    c.env_remove("ADICERGO_MAX_N");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn ok(args: &[&str]) -> String {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn json(path: &Path) -> Value {
    serde_json::from_str(&fs::read_to_string(path).unwrap()).unwrap()
}

fn base(dir: &Path, name: &str) -> String {
    dir.join(name).to_str().unwrap().to_string()
}

#[test]
fn parses_the_documented_example() {
    let c = config_from_args(["adicergo", "weyl", "--basis", "const:2", "--rho", "0,0,1", "--char", "1/8", "--N", "1000000"])
        .unwrap();
    assert_eq!(c.command, Some(CommandName::Weyl));
    assert_eq!(c.n, vec![1_000_000]);
    let v = validate(&c).unwrap();
    assert_eq!(v.r, Some(2));
    let c = config_from_args(["adicergo", "weyl", "--N", "1e4,1e5"]).unwrap();
    assert_eq!(c.n, vec![10_000, 100_000]);
}

#[test]
fn gauss_sum_of_five() {
    let dir = tempfile::tempdir().unwrap();
    let out = base(dir.path(), "g");
    let stdout = ok(&["gauss", "--q", "5", "--out", &out]);
    assert!(stdout.contains("|S| = 2.236067977"), "{stdout}");
    let v = json(&dir.path().join("g.json"));
    let abs = v["results"]["sum"]["abs"].as_f64().unwrap();
    assert!((abs - 5f64.sqrt()).abs() < 1e-12);
}

#[test]
fn trivial_character_prints_one() {
    let stdout = ok(&["multiplier", "--char", "0/1"]);
    assert!(stdout.contains("1+0i"), "{stdout}");
    let stdout = ok(&["multiplier", "--basis", "cycle:2,3,5", "--char", "0@level:2", "--kind", "natural"]);
    assert!(stdout.contains("1+0i"), "{stdout}");
}

#[test]
fn natural_weyl_sum_over_a_period_equals_the_multiplier() {
    let dir = tempfile::tempdir().unwrap();
    let (m, w) = (base(dir.path(), "m"), base(dir.path(), "w"));
    let common = ["--basis", "cycle:2,3,5", "--rho", "1,1,1", "--char", "7/30"];
    ok(&[&["multiplier", "--kind", "natural", "--out", &m][..], &common[..]].concat());
    let mv = json(&dir.path().join("m.json"));
    let entry = &mv["results"]["multipliers"][0];
    let d = entry["D"].as_u64().unwrap();
    let n = (d * 7).to_string();
    ok(&[&["weyl", "--source", "naturals", "--N", &n, "--out", &w][..], &common[..]].concat());
    let wv = json(&dir.path().join("w.json"));
    let s = &wv["results"]["series"][0];
    for part in ["re", "im"] {
        let a = s[part].as_f64().unwrap();
        let b = entry["value"][part].as_f64().unwrap();
        assert!((a - b).abs() < 1e-10, "{part}: {a} vs {b}");
    }
}

#[test]
fn validation_failures_exit_nonzero() {
    let out = run(&["multiplier", "--basis", "list:3,1,2", "--char", "1/3"]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("basis entries must be ≥ 2"));

    let out = run(&["multiplier", "--char", "8/8"]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("characters"));

    let out = run(&["weyl", "--char", "1/8", "--N", "1000", "--max-n", "100"]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("N"));

    let out = bin().args(["weyl", "--char", "1/8", "--N", "1000"]).env("ADICERGO_MAX_N", "100").output().unwrap();
    assert!(!out.status.success());

    let out = run(&["gauss"]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("q"));

    let out = run(&["bogus"]);
    assert!(!out.status.success());
}

#[test]
fn empty_schedule_gives_header_only_csv() {
    let dir = tempfile::tempdir().unwrap();
    let out = base(dir.path(), "e");
    ok(&["weyl", "--char", "1/8", "--N", "", "--out", &out]);
    assert_eq!(fs::read_to_string(dir.path().join("e.csv")).unwrap(), "N,re,im,abs_err\n");
}

#[test]
fn compare_reports_one_distance_per_n() {
    let dir = tempfile::tempdir().unwrap();
    let out = base(dir.path(), "c");
    ok(&["compare", "--char", "1/16", "--char", "5/16", "--N", "100,1000,10000", "--out", &out]);
    let v = json(&dir.path().join("c.json"));
    assert_eq!(v["results"]["sup_norm"].as_array().unwrap().len(), 3);
    assert_eq!(v["results"]["l2_norm"].as_array().unwrap().len(), 3);
    let csv = fs::read_to_string(dir.path().join("c.csv")).unwrap();
    assert_eq!(csv.lines().next(), Some("N,sup_norm,l2_norm"));
    assert_eq!(csv.lines().count(), 4);
}

#[test]
fn wiener_rows() {
    let dir = tempfile::tempdir().unwrap();
    let out = base(dir.path(), "w");
    ok(&["wiener", "--r-max", "4", "--out", &out]);
    let csv = fs::read_to_string(dir.path().join("w.csv")).unwrap();
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "r,A_r,W_r");
    assert_eq!(lines.len(), 6);
    assert!(lines[1].starts_with("0,2,1.0000000000000000e0"));
    assert_eq!(lines[4], "3,16,5.0000000000000000e-1");
}

#[test]
fn summary_config_round_trips_and_reruns_identically() {
    let dir = tempfile::tempdir().unwrap();
    let first = base(dir.path(), "first");
    let second = base(dir.path(), "second");
    ok(&["weyl", "--basis", "cycle:2,3,5", "--char", "2/30", "--N", "1000,20000", "--threads", "1", "--out", &first]);
    let summary = json(&dir.path().join("first.json"));
    let echoed: ExperimentConfig = serde_json::from_value(summary["config"].clone()).unwrap();
    let text = fs::read_to_string(dir.path().join("first.json")).unwrap();
    assert_eq!(ExperimentConfig::from_json(&text).unwrap(), echoed);
    assert_eq!(echoed.characters, vec!["2/30".to_string()]);

    // rerun from the summary itself, overriding thread count and output
    let cfg = dir.path().join("first.json");
    ok(&["--config", cfg.to_str().unwrap(), "--threads", "4", "--out", &second]);
    assert_eq!(
        fs::read_to_string(dir.path().join("first.csv")).unwrap(),
        fs::read_to_string(dir.path().join("second.csv")).unwrap()
    );
}

#[test]
fn flags_override_the_config_file() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("cfg.json");
    fs::write(&cfg, r#"{"command": "multiplier", "basis": "const:3", "characters": ["1/9"]}"#).unwrap();
    let stdout = ok(&["--config", cfg.to_str().unwrap()]);
    assert!(stdout.starts_with("1/9"), "{stdout}");
    let stdout = ok(&["--config", cfg.to_str().unwrap(), "--char", "2/9"]);
    assert!(stdout.starts_with("2/9"), "{stdout}");
    fs::write(&cfg, r#"{"basis": "const:3", "charcters": []}"#).unwrap();
    assert!(!run(&["multiplier", "--config", cfg.to_str().unwrap()]).status.success());
}

#[test]
fn degree_one_prime_notice() {
    let out = run(&["multiplier", "--rho", "0,1", "--char", "1/8"]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("notice"));
    let out = run(&["multiplier", "--rho", "0,0,1", "--char", "1/8"]);
    assert!(!String::from_utf8_lossy(&out.stderr).contains("notice"));
}

#[test]
fn average_and_limit_from_a_function_file() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("f.json");
    let values: Vec<[f64; 2]> = (0..8).map(|c| [c as f64, if c % 2 == 0 { 1.0 } else { -1.0 }]).collect();
    fs::write(&f, serde_json::json!({"basis": "const:2", "r": 2, "values": values}).to_string()).unwrap();
    let (avg, lim) = (base(dir.path(), "avg"), base(dir.path(), "lim"));
    ok(&["average", "--function", f.to_str().unwrap(), "--N", "100000", "--out", &avg]);
    ok(&["limit", "--function", f.to_str().unwrap(), "--out", &lim]);
    let a = json(&dir.path().join("avg.json"));
    let l = json(&dir.path().join("lim.json"));
    let av = a["results"]["average"]["values"].as_array().unwrap();
    let lv = l["results"]["limit"]["values"].as_array().unwrap();
    assert_eq!(av.len(), 8);
    let err = av
        .iter()
        .zip(lv)
        .map(|(x, y)| (x[0].as_f64().unwrap() - y[0].as_f64().unwrap()).hypot(x[1].as_f64().unwrap() - y[1].as_f64().unwrap()))
        .fold(0.0, f64::max);
    // only p = 2 escapes the odd residue classes: error ≈ const/π(N)
    assert!(err < 1e-3, "{err}");
    assert_eq!(fs::read_to_string(dir.path().join("lim.csv")).unwrap().lines().count(), 9);
}

#[test]
fn torus_command() {
    let dir = tempfile::tempdir().unwrap();
    let out = base(dir.path(), "t");
    ok(&["torus", "--beta", "0,0,1.4142135623730951;0,0,1.7320508075688772", "--term", "1,0=1,0", "--term", "0,1=1,0", "--N", "1000,10000", "--out", &out]);
    let v = json(&dir.path().join("t.json"));
    assert_eq!(v["results"]["series"].as_array().unwrap().len(), 2);
    assert_eq!(v["results"]["x"], serde_json::json!([0.0, 0.0]));
}
