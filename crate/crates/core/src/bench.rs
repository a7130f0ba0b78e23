//! Experiment runner: single runs, look-back sweeps, ablations and
//! efficiency accounting, with reproducibility manifests on disk.

use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::data::{
    apply_scaler, fit_scaler, load_csv, split, CsvSchema, Direction, Scaler, Segment, Split, SplitDocument, SplitSpec,
    TimeSeries,
};
use crate::decompose::DEFAULT_KERNEL_SIZE;
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::metrics::{evaluate, EvalSummary};
use crate::model::{Forecaster, Model, ModelKind};
use crate::synthetic::{generate, SyntheticSpec, NOISE_ALGORITHM};
use crate::train::{fit, TrainConfig, TrainReport};

/// Look-back grid for hourly, 10-minute and similar benchmarks.
pub const HOURLY_LOOKBACKS: &[usize] = &[24, 48, 72, 96, 120, 144, 168, 192, 336, 504, 672, 720];
/// Look-back grid for the 15-minute ETT benchmarks.
pub const MINUTE_LOOKBACKS: &[usize] = &[24, 36, 48, 60, 72, 144, 288];
/// Look-back grid for weekly influenza data.
pub const WEEKLY_LOOKBACKS: &[usize] = &[26, 52, 78, 104, 130, 156, 208];

/// Where a run's series comes from: a CSV file or a synthetic generator.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DatasetConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub path: Option<PathBuf>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timestamp_column: Option<String>,
    /// Identifier used in summaries; defaults to the file stem.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub synthetic: Option<SyntheticSpec>,
}

impl DatasetConfig {
    pub fn csv(path: impl Into<PathBuf>) -> Self {
        DatasetConfig {
            path: Some(path.into()),
            ..Default::default()
        }
    }

    pub fn synthetic(spec: SyntheticSpec) -> Self {
        DatasetConfig {
            synthetic: Some(spec),
            ..Default::default()
        }
    }

    pub fn id(&self) -> String {
        if let Some(name) = &self.name {
            return name.clone();
        }
        match (&self.path, &self.synthetic) {
            (Some(p), _) => p
                .file_stem()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_else(|| "dataset".into()),
            (None, Some(s)) => format!(
                "synthetic-{}",
                serde_json::to_value(s.kind)
                    .ok()
                    .and_then(|v| v.as_str().map(String::from))
                    .unwrap_or_default()
            ),
            (None, None) => "dataset".into(),
        }
    }

    pub fn load(&self) -> Result<TimeSeries> {
        match (&self.path, &self.synthetic) {
            (Some(path), None) => load_csv(
                path,
                &CsvSchema {
                    timestamp_column: self.timestamp_column.clone(),
                },
            ),
            (None, Some(spec)) => generate(spec),
            _ => Err(Error::config("dataset needs exactly one of `path` or `synthetic`")),
        }
    }
}

fn default_name() -> String {
    "run".into()
}

fn default_kernel() -> usize {
    DEFAULT_KERNEL_SIZE
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    #[serde(default = "default_name")]
    pub name: String,
    pub dataset: DatasetConfig,
    #[serde(default)]
    pub split: SplitSpec,
    #[serde(alias = "L")]
    pub lookback: usize,
    #[serde(alias = "T")]
    pub horizon: usize,
    pub model: ModelKind,
    #[serde(default = "default_kernel")]
    pub kernel_size: usize,
    #[serde(default)]
    pub train: TrainConfig,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output_dir: Option<PathBuf>,
    #[serde(default)]
    pub tags: Vec<String>,
}

impl ExperimentConfig {
    pub fn new(dataset: DatasetConfig, model: ModelKind, lookback: usize, horizon: usize) -> Self {
        ExperimentConfig {
            name: default_name(),
            dataset,
            split: SplitSpec::default(),
            lookback,
            horizon,
            model,
            kernel_size: DEFAULT_KERNEL_SIZE,
            train: TrainConfig::default(),
            output_dir: None,
            tags: Vec::new(),
        }
    }

    pub fn from_toml_str(text: &str) -> Result<Self> {
        let cfg: ExperimentConfig = toml::from_str(text).map_err(|e| Error::config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let mut cfg = Self::from_toml_str(&text)?;
        // relative dataset paths resolve against the config file
        if let (Some(p), Some(dir)) = (&cfg.dataset.path, path.parent()) {
            if p.is_relative() && !p.exists() {
                cfg.dataset.path = Some(dir.join(p));
            }
        }
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if self.lookback == 0 || self.horizon == 0 {
            return Err(Error::config("lookback and horizon must be at least 1"));
        }
        if self.dataset.path.is_some() == self.dataset.synthetic.is_some() {
            return Err(Error::config("dataset needs exactly one of `path` or `synthetic`"));
        }
        if self.model.is_trainable() {
            self.train.validate()?;
        }
        crate::decompose::check_kernel(self.kernel_size)
    }

    /// SHA-256 of the canonical JSON form.
    pub fn hash(&self) -> String {
        let json = serde_json::to_vec(self).expect("config serializes");
        hex::encode(Sha256::digest(&json))
    }

    pub fn run_label(&self) -> String {
        let truncated = self
            .split
            .train_truncate_steps
            .map(|k| format!("-short{k}"))
            .unwrap_or_default();
        format!(
            "{}-{}-{}-L{}-T{}{}",
            self.name,
            self.dataset.id(),
            self.model,
            self.lookback,
            self.horizon,
            truncated
        )
    }
}

/// A loaded, split and standardized dataset, reusable across runs that
/// share the dataset and split.
#[derive(Debug, Clone)]
pub struct Prepared {
    pub dataset_id: String,
    /// The whole series in standardized space.
    pub scaled: TimeSeries,
    pub split: Split,
    pub scaler: Scaler,
    pub split_document: SplitDocument,
    pub fingerprint: String,
}

pub fn fingerprint(series: &TimeSeries) -> String {
    let mut h = Sha256::new();
    h.update((series.len() as u64).to_le_bytes());
    h.update((series.channels() as u64).to_le_bytes());
    for v in series.values().as_slice() {
        h.update(v.to_le_bytes());
    }
    hex::encode(h.finalize())
}

pub fn prepare(dataset: &DatasetConfig, split_spec: &SplitSpec) -> Result<Prepared> {
    let raw = dataset.load()?;
    let raw_split = split(&raw, split_spec)?;
    let scaler = fit_scaler(&raw_split.train)?;
    let scaled = apply_scaler(&raw, &scaler, Direction::Forward)?;
    let split = split(&scaled, split_spec)?;
    let split_document = SplitDocument::new(split_spec.mode, split.boundaries, &scaler);
    Ok(Prepared {
        dataset_id: dataset.id(),
        fingerprint: fingerprint(&raw),
        scaled,
        split,
        scaler,
        split_document,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Manifest {
    pub config: ExperimentConfig,
    pub config_hash: String,
    pub seed: u64,
    pub data_fingerprint: String,
    pub split: SplitDocument,
    pub crate_name: String,
    pub crate_version: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub noise_algorithm: Option<String>,
    pub reduction: String,
    pub elapsed_seconds: f64,
}

#[derive(Debug, Clone)]
pub struct RunOutcome {
    pub summary: EvalSummary,
    pub report: Option<TrainReport>,
    pub model: Model,
    pub manifest: Manifest,
    pub run_dir: Option<PathBuf>,
}

/// Executes one configuration and writes its artifacts when `output_dir` is set.
pub fn run(config: &ExperimentConfig) -> Result<RunOutcome> {
    config.validate()?;
    let prepared = prepare(&config.dataset, &config.split)?;
    let mut outcome = run_prepared(config, &prepared)?;
    if let Some(dir) = &config.output_dir {
        outcome.run_dir = Some(write_artifacts(&outcome, dir)?);
    }
    Ok(outcome)
}

/// Window, fit (if trainable) and evaluate on an already prepared dataset.
pub fn run_prepared(config: &ExperimentConfig, prepared: &Prepared) -> Result<RunOutcome> {
    let started = Instant::now();
    let (l, t) = (config.lookback, config.horizon);
    let series = &prepared.scaled;
    let channels = series.channels();
    let test = prepared.split.windows(series, Segment::Test, l, t)?;
    let mut model = Model::build(config.model, l, t, channels, config.kernel_size)?;

    let report = if config.model.is_trainable() {
        let train = prepared.split.windows(series, Segment::Train, l, t)?;
        let val = match prepared.split.windows(series, Segment::Val, l, t) {
            Ok(v) => v.to_vec(),
            Err(Error::Infeasible(msg)) => {
                log::warn!("no validation windows ({msg}); early stopping on training loss");
                Vec::new()
            }
            Err(e) => return Err(e),
        };
        log::info!(
            "{}: {} train / {} val / {} test windows",
            config.run_label(),
            train.len(),
            val.len(),
            test.len()
        );
        Some(match &mut model {
            Model::DLinear(m) => fit(m, &train, &val, &config.train)?,
            Model::Linear(m) => fit(m, &train, &val, &config.train)?,
            Model::RepeatC(_) => unreachable!("repeat-c is not trainable"),
        })
    } else {
        None
    };

    let summary =
        evaluate(|x| Ok(model.forecast(x)?.values), &test)?.labeled(prepared.dataset_id.clone(), config.model.as_str());
    debug_assert!(summary.mae <= summary.mse.sqrt() + 1e-12);

    let manifest = Manifest {
        config: config.clone(),
        config_hash: config.hash(),
        seed: config.train.seed,
        data_fingerprint: prepared.fingerprint.clone(),
        split: prepared.split_document.clone(),
        crate_name: env!("CARGO_PKG_NAME").into(),
        crate_version: env!("CARGO_PKG_VERSION").into(),
        noise_algorithm: config.dataset.synthetic.as_ref().map(|_| NOISE_ALGORITHM.to_string()),
        reduction: "sequential".into(),
        elapsed_seconds: started.elapsed().as_secs_f64(),
    };
    Ok(RunOutcome {
        summary,
        report,
        model,
        manifest,
        run_dir: None,
    })
}

fn write_json<T: Serialize>(path: &Path, value: &T, pretty: bool) -> Result<()> {
    let text = if pretty {
        serde_json::to_string_pretty(value)?
    } else {
        serde_json::to_string(value)?
    };
    fs::write(path, text + "\n").map_err(|e| Error::io(path, e))
}

/// Writes `summary.json` (one JSON line), `train_report.json`, `model.json`,
/// `split.json` and `manifest.json` under `root/<run label>/`.
pub fn write_artifacts(outcome: &RunOutcome, root: &Path) -> Result<PathBuf> {
    let dir = root.join(outcome.manifest.config.run_label());
    fs::create_dir_all(&dir).map_err(|e| Error::io(&dir, e))?;
    write_json(&dir.join("summary.json"), &outcome.summary, false)?;
    if let Some(report) = &outcome.report {
        write_json(&dir.join("train_report.json"), report, true)?;
    }
    outcome.model.save(dir.join("model.json"))?;
    write_json(&dir.join("split.json"), &outcome.manifest.split, true)?;
    write_json(&dir.join("manifest.json"), &outcome.manifest, true)?;
    Ok(dir)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepSpec {
    pub base: ExperimentConfig,
    pub lookbacks: Vec<usize>,
    pub horizons: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SkippedPoint {
    pub lookback: usize,
    pub horizon: usize,
    pub reason: String,
}

#[derive(Debug, Clone)]
pub struct SweepOutcome {
    pub summaries: Vec<EvalSummary>,
    pub skipped: Vec<SkippedPoint>,
    pub curve_path: Option<PathBuf>,
}

/// Runs every `(L, T)` pair with the base seed. Infeasible pairs are logged
/// and skipped.
pub fn sweep(spec: &SweepSpec) -> Result<SweepOutcome> {
    if spec.lookbacks.is_empty() || spec.horizons.is_empty() {
        return Err(Error::config("sweep grids must be non-empty"));
    }
    let prepared = prepare(&spec.base.dataset, &spec.base.split)?;
    let mut summaries = Vec::new();
    let mut skipped = Vec::new();
    for &horizon in &spec.horizons {
        for &lookback in &spec.lookbacks {
            let cfg = ExperimentConfig {
                lookback,
                horizon,
                ..spec.base.clone()
            };
            match cfg.validate().and_then(|_| run_prepared(&cfg, &prepared)) {
                Ok(outcome) => {
                    if let Some(root) = &cfg.output_dir {
                        write_artifacts(&outcome, root)?;
                    }
                    summaries.push(outcome.summary);
                }
                Err(Error::Infeasible(reason)) => {
                    log::warn!("skipping L={lookback} T={horizon}: {reason}");
                    skipped.push(SkippedPoint {
                        lookback,
                        horizon,
                        reason,
                    });
                }
                Err(e) => return Err(e),
            }
        }
    }
    let curve_path = match &spec.base.output_dir {
        Some(root) => {
            fs::create_dir_all(root).map_err(|e| Error::io(root, e))?;
            let path = root.join(format!(
                "{}-{}-{}-curve.csv",
                spec.base.name, prepared.dataset_id, spec.base.model
            ));
            write_curve(&path, &summaries)?;
            Some(path)
        }
        None => None,
    };
    Ok(SweepOutcome {
        summaries,
        skipped,
        curve_path,
    })
}

/// Long-format `L,T,model,mse,mae` rows.
pub fn write_curve(path: &Path, summaries: &[EvalSummary]) -> Result<()> {
    let mut w = csv::Writer::from_path(path)?;
    w.write_record(["L", "T", "model", "mse", "mae"])?;
    for s in summaries {
        w.write_record([
            s.lookback.to_string(),
            s.horizon.to_string(),
            s.model_id.clone(),
            s.mse.to_string(),
            s.mae.to_string(),
        ])?;
    }
    w.flush().map_err(|e| Error::io(path, e))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PairedSummary {
    pub label: String,
    pub first: EvalSummary,
    pub second: EvalSummary,
    /// `first.mse - second.mse`
    pub delta_mse: f64,
    pub delta_mae: f64,
}

impl PairedSummary {
    fn new(label: &str, first: EvalSummary, second: EvalSummary) -> Self {
        PairedSummary {
            label: label.into(),
            delta_mse: first.mse - second.mse,
            delta_mae: first.mae - second.mae,
            first,
            second,
        }
    }
}

/// The configured DLinear model against the decomposition-free linear model
/// on identical data, seed and training settings.
pub fn ablate_decomposition(config: &ExperimentConfig) -> Result<PairedSummary> {
    if !matches!(config.model, ModelKind::DLinearShared | ModelKind::DLinearIndividual) {
        return Err(Error::config(format!(
            "decomposition ablation needs a dlinear model, got {}",
            config.model
        )));
    }
    config.validate()?;
    let prepared = prepare(&config.dataset, &config.split)?;
    let linear_cfg = ExperimentConfig {
        model: ModelKind::Linear,
        ..config.clone()
    };
    let mut with = run_prepared(config, &prepared)?;
    let mut without = run_prepared(&linear_cfg, &prepared)?;
    if let Some(root) = &config.output_dir {
        with.run_dir = Some(write_artifacts(&with, root)?);
        without.run_dir = Some(write_artifacts(&without, root)?);
    }
    Ok(PairedSummary::new(
        "decomposition-vs-linear",
        with.summary,
        without.summary,
    ))
}

/// Full training segment against one truncated to its most recent
/// `short_steps` rows; everything else identical.
pub fn ablate_train_size(config: &ExperimentConfig, short_steps: usize) -> Result<PairedSummary> {
    config.validate()?;
    let full_cfg = ExperimentConfig {
        split: config.split.clone().with_truncation(None),
        ..config.clone()
    };
    let short_cfg = ExperimentConfig {
        split: config.split.clone().with_truncation(Some(short_steps)),
        ..config.clone()
    };
    let full = run(&full_cfg)?;
    let full_train = full.manifest.split.boundaries.train_end - full.manifest.split.boundaries.train_start;
    if short_steps == 0 || short_steps > full_train {
        return Err(Error::config(format!(
            "short training length {short_steps} must be in 1..={full_train}"
        )));
    }
    let short = run(&short_cfg)?;
    Ok(PairedSummary::new("full-vs-short-train", full.summary, short.summary))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EfficiencyRecord {
    pub model: ModelKind,
    #[serde(rename = "L")]
    pub lookback: usize,
    #[serde(rename = "T")]
    pub horizon: usize,
    #[serde(rename = "C")]
    pub channels: usize,
    pub params: usize,
    pub macs: usize,
    pub batch_size: usize,
    pub timed_runs: usize,
    /// Mean wall time of one forward pass over the batch.
    pub mean_inference_seconds: f64,
    pub std_inference_seconds: f64,
    pub peak_resident_bytes: Option<u64>,
}

/// Parameter and MAC counts plus timed forward passes on one random batch:
/// one warm-up pass, then `runs` (at least 5) timed passes.
pub fn efficiency_report(
    kind: ModelKind,
    lookback: usize,
    horizon: usize,
    channels: usize,
    kernel_size: usize,
    batch_size: usize,
    runs: usize,
) -> Result<EfficiencyRecord> {
    let model = Model::build(kind, lookback, horizon, channels, kernel_size)?;
    let runs = runs.max(5);
    let batch_size = batch_size.max(1);
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let batch: Vec<Matrix> = (0..batch_size)
        .map(|_| {
            let data = (0..lookback * channels).map(|_| rng.random_range(-1.0..1.0)).collect();
            Matrix::from_vec(lookback, channels, data)
        })
        .collect::<Result<_>>()?;
    let pass = || -> Result<f64> {
        let start = Instant::now();
        for x in &batch {
            std::hint::black_box(model.forecast(x)?);
        }
        Ok(start.elapsed().as_secs_f64())
    };
    pass()?;
    let times: Vec<f64> = (0..runs).map(|_| pass()).collect::<Result<_>>()?;
    let mean = times.iter().sum::<f64>() / runs as f64;
    let var = times.iter().map(|t| (t - mean) * (t - mean)).sum::<f64>() / runs as f64;
    Ok(EfficiencyRecord {
        model: kind,
        lookback,
        horizon,
        channels,
        params: model.param_count(),
        macs: model.mac_count(channels),
        batch_size,
        timed_runs: runs,
        mean_inference_seconds: mean,
        std_inference_seconds: var.sqrt(),
        peak_resident_bytes: peak_resident_bytes(),
    })
}

/// High-water resident set size from `/proc/self/status`, where available.
pub fn peak_resident_bytes() -> Option<u64> {
    let status = fs::read_to_string("/proc/self/status").ok()?;
    let line = status.lines().find(|l| l.starts_with("VmHWM:"))?;
    let kb: u64 = line.split_whitespace().nth(1)?.parse().ok()?;
    Some(kb * 1024)
}
