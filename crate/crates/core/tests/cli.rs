use std::path::Path;
use std::process::{Command, Output};

fn dlinear(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dlinear")).args(args).output().unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

fn write_config(dir: &Path, extra_train: &str) -> String {
    let path = dir.join("cfg.toml");
    let text = format!(
        r#"
name = "cli"
lookback = 48
horizon = 24
model = "dlinear-s"

[dataset.synthetic]
kind = "sinusoid"
length = 600
noise_std = 0.1

[train]
max_epochs = 2
patience = 2
{extra_train}

[sweep]
lookbacks = [24, 48]
horizons = [24]
"#
    );
    std::fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

fn read_csv(path: &Path) -> (Vec<String>, Vec<Vec<f64>>) {
    let mut rdr = csv::Reader::from_path(path).unwrap();
    let header = rdr.headers().unwrap().iter().map(String::from).collect();
    let rows = rdr
        .records()
        .map(|r| r.unwrap().iter().skip(1).map(|v| v.parse().unwrap()).collect())
        .collect();
    (header, rows)
}

#[test]
fn run_prints_one_summary_and_writes_artifacts() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "");
    let out_dir = dir.path().join("runs");
    let out = dlinear(&[
        "run",
        "--config",
        &cfg,
        "--seed",
        "3",
        "--out",
        out_dir.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let stdout = String::from_utf8(out.stdout).unwrap();
    let summary: serde_json::Value = serde_json::from_str(stdout.trim()).unwrap();
    assert_eq!(summary["model_id"], "dlinear-s");
    let run_dir = out_dir.join("cli-synthetic-sinusoid-dlinear-s-L48-T24");
    for f in [
        "summary.json",
        "train_report.json",
        "model.json",
        "split.json",
        "manifest.json",
    ] {
        assert!(run_dir.join(f).is_file(), "{f}");
    }
    let manifest: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(run_dir.join("manifest.json")).unwrap()).unwrap();
    assert_eq!(manifest["seed"], 3);

    let again = dlinear(&["run", "--config", &cfg, "--seed", "3"]);
    assert_eq!(String::from_utf8(again.stdout).unwrap(), stdout);
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "");
    assert_eq!(code(&dlinear(&["run", "--config", "/nonexistent.toml"])), 2);
    assert_eq!(code(&dlinear(&["run"])), 2);

    let bad = dir.path().join("bad.toml");
    std::fs::write(
        &bad,
        "lookback = 0\nhorizon = 1\nmodel = \"linear\"\n[dataset]\npath = \"x.csv\"\n",
    )
    .unwrap();
    assert_eq!(code(&dlinear(&["run", "--config", bad.to_str().unwrap()])), 2);

    let empty = dlinear(&["sweep", "--config", &cfg, "--lookbacks", "5000"]);
    assert_eq!(code(&empty), 3);
    assert!(empty.stdout.is_empty());

    let hot = write_config(dir.path(), "optimizer = \"sgd\"\nlearning_rate = 1e12");
    assert_eq!(code(&dlinear(&["run", "--config", &hot])), 4);
}

#[test]
fn sweep_emits_one_line_per_point() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "");
    let out = dlinear(&[
        "sweep",
        "--config",
        &cfg,
        "--out",
        dir.path().join("o").to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    assert_eq!(String::from_utf8(out.stdout).unwrap().lines().count(), 2);
    assert!(dir
        .path()
        .join("o/cli-synthetic-sinusoid-dlinear-s-curve.csv")
        .is_file());
}

#[test]
fn ablations_report_pairs() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "");
    let out = dlinear(&["ablate-decomp", "--config", &cfg]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["second"]["model_id"], "linear");
    let out = dlinear(&["ablate-trainsize", "--config", &cfg, "--short-steps", "120"]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["label"], "full-vs-short-train");
}

#[test]
fn decompose_keeps_headers_and_reconstructs() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("in.csv");
    let mut text = String::from("stamp,load,temp\n");
    for i in 0..40 {
        text.push_str(&format!("t{i:03},{},{}\n", (i * i) % 17, i as f64 * 0.5));
    }
    std::fs::write(&input, text).unwrap();
    let out_dir = dir.path().join("dec");
    let out = dlinear(&[
        "decompose",
        "--input",
        input.to_str().unwrap(),
        "--kernel",
        "5",
        "--timestamp-column",
        "stamp",
        "--out",
        out_dir.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let (h0, x) = read_csv(&input);
    let (h1, trend) = read_csv(&out_dir.join("trend.csv"));
    let (h2, rem) = read_csv(&out_dir.join("remainder.csv"));
    assert_eq!(h0, h1);
    assert_eq!(h0, h2);
    for r in 0..x.len() {
        for c in 0..2 {
            assert!((trend[r][c] + rem[r][c] - x[r][c]).abs() < 1e-12);
        }
    }
}

#[test]
fn synth_and_export_weights() {
    let out = dlinear(&["synth", "--kind", "linear-trend", "--length", "6", "--slope", "2"]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().next(), Some("date,x0"));
    assert_eq!(text.lines().nth(6), Some("5,10"));

    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "");
    let w = dir.path().join("w");
    let out = dlinear(&["export-weights", "--config", &cfg, "--out", w.to_str().unwrap()]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let grid = std::fs::read_to_string(w.join("trend_weights.csv")).unwrap();
    assert_eq!(grid.lines().count(), 24);
    assert!(grid.lines().all(|l| l.split(',').count() == 48));
}

#[test]
fn bench_efficiency_counts() {
    let out = dlinear(&["bench-efficiency", "--channels", "321", "--batch-size", "1"]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["params"], 139_680);
    assert_eq!(v["macs"], 44_375_040);
    assert_eq!(v["timed_runs"], 5);
}
