use dlinear_core::bench::*;
use dlinear_core::model::ModelKind;
use dlinear_core::synthetic::{SyntheticKind, SyntheticSpec};

fn sinusoid(noise_std: f64, seed: u64) -> DatasetConfig {
    DatasetConfig::synthetic(SyntheticSpec {
        kind: SyntheticKind::Sinusoid,
        length: 2000,
        noise_std,
        seed,
        ..SyntheticSpec::default()
    })
}

#[test]
fn longer_history_cannot_hurt_an_exactly_predictable_series() {
    let base = ExperimentConfig::new(sinusoid(0.0, 0), ModelKind::DLinearShared, 24, 24);
    let out = sweep(&SweepSpec {
        base,
        lookbacks: vec![24, 96],
        horizons: vec![24],
    })
    .unwrap();
    assert_eq!(out.summaries.len(), 2);
    let (short, long) = (out.summaries[0].mse, out.summaries[1].mse);
    // both reach the exact solution; compare at float resolution
    assert!(short < 1e-20 && long < 1e-20, "{short} {long}");
    assert!(long <= short + 1e-20);
}

#[test]
fn sweep_is_monotone_up_to_two_periods() {
    for seed in 0..2 {
        let mut base = ExperimentConfig::new(sinusoid(0.3, seed), ModelKind::DLinearShared, 4, 24);
        base.train.seed = seed;
        let dir = tempfile::tempdir().unwrap();
        base.output_dir = Some(dir.path().to_path_buf());
        let out = sweep(&SweepSpec {
            base,
            lookbacks: vec![4, 8, 12, 24, 48],
            horizons: vec![24],
        })
        .unwrap();
        let mse: Vec<f64> = out.summaries.iter().map(|s| s.mse).collect();
        for pair in mse.windows(2) {
            assert!(pair[1] <= 1.05 * pair[0], "seed {seed}: {mse:?}");
        }
        let curve = std::fs::read_to_string(out.curve_path.unwrap()).unwrap();
        assert_eq!(curve.lines().count(), 6);
        assert!(curve.starts_with("L,T,model,mse,mae\n4,24,dlinear-s,"));
    }
}

#[test]
fn decomposition_is_neutral_without_trend() {
    let cfg = ExperimentConfig::new(sinusoid(0.3, 0), ModelKind::DLinearShared, 96, 24);
    let pair = ablate_decomposition(&cfg).unwrap();
    assert_eq!(pair.first.model_id, "dlinear-s");
    assert_eq!(pair.second.model_id, "linear");
    assert!((pair.delta_mse / pair.second.mse).abs() < 0.2, "{pair:?}");
}

#[test]
fn truncation_examples() {
    let cfg = ExperimentConfig::new(sinusoid(0.3, 1), ModelKind::DLinearShared, 96, 24);
    let full_train = (2000.0f64 * 0.7).floor() as usize;
    let same = ablate_train_size(&cfg, full_train).unwrap();
    assert_eq!(same.first, same.second);

    // 10 periods of a stationary sinusoid are plenty
    let short = ablate_train_size(&cfg, 240).unwrap();
    assert!((short.delta_mse / short.first.mse).abs() < 0.1, "{short:?}");
    assert!(matches!(
        ablate_train_size(&cfg, full_train + 1),
        Err(dlinear_core::Error::Config(_))
    ));
}

#[test]
fn efficiency_records_dispersion() {
    let r = efficiency_report(ModelKind::RepeatC, 96, 720, 321, 25, 4, 3).unwrap();
    assert_eq!((r.params, r.macs), (0, 0));
    assert!(r.timed_runs >= 5);
    assert!(r.std_inference_seconds >= 0.0 && r.mean_inference_seconds >= 0.0);
    let d = efficiency_report(ModelKind::DLinearShared, 96, 720, 321, 25, 1, 5).unwrap();
    assert_eq!((d.params, d.macs), (139_680, 44_375_040));
}

#[test]
fn manifest_is_enough_to_rerun() {
    let dir = tempfile::tempdir().unwrap();
    let mut cfg = ExperimentConfig::new(sinusoid(0.2, 5), ModelKind::DLinearIndividual, 48, 24);
    cfg.train.max_epochs = 3;
    cfg.train.patience = 2;
    cfg.train.seed = 99;
    cfg.output_dir = Some(dir.path().to_path_buf());
    let first = run(&cfg).unwrap();
    let run_dir = first.run_dir.unwrap();
    let manifest: Manifest =
        serde_json::from_str(&std::fs::read_to_string(run_dir.join("manifest.json")).unwrap()).unwrap();
    assert_eq!(manifest.seed, 99);
    assert_eq!(manifest.config_hash, cfg.hash());
    assert!(manifest.noise_algorithm.is_some());

    let mut again = manifest.config.clone();
    again.output_dir = None;
    let second = run(&again).unwrap();
    assert_eq!(second.manifest.data_fingerprint, manifest.data_fingerprint);
    let written = std::fs::read_to_string(run_dir.join("summary.json")).unwrap();
    assert_eq!(written.trim_end(), second.summary.to_json_line().unwrap());
}

#[test]
fn repeat_c_needs_no_training() {
    let out = run(&ExperimentConfig::new(sinusoid(0.0, 0), ModelKind::RepeatC, 96, 96)).unwrap();
    assert!(out.report.is_none());
    assert!(out.summary.mse > 0.0);
}

#[test]
fn lookback_grids() {
    assert_eq!(WEEKLY_LOOKBACKS, &[26, 52, 78, 104, 130, 156, 208]);
    assert_eq!(MINUTE_LOOKBACKS, &[24, 36, 48, 60, 72, 144, 288]);
    assert_eq!(
        HOURLY_LOOKBACKS,
        &[24, 48, 72, 96, 120, 144, 168, 192, 336, 504, 672, 720]
    );
}
