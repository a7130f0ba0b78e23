use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use dlinear_core::bench::{
    ablate_decomposition, ablate_train_size, efficiency_report, run, sweep, ExperimentConfig, SweepSpec,
};
use dlinear_core::data::{load_csv, CsvSchema};
use dlinear_core::decompose::{decompose, DEFAULT_KERNEL_SIZE};
use dlinear_core::model::{export_weights, Model, ModelKind};
use dlinear_core::synthetic::{generate, SyntheticKind, SyntheticSpec};
use dlinear_core::{Error, Result};

/// DLinear long-term forecasting experiments.
#[derive(Parser)]
#[command(name = "dlinear", version)]
struct Cli {
    /// Log level (error, warn, info, debug, trace).
    #[arg(long, global = true, default_value = "warn")]
    log: String,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Experiment configuration (TOML).
    #[arg(long)]
    config: PathBuf,
    /// Overrides `train.seed`.
    #[arg(long)]
    seed: Option<u64>,
    /// Overrides `output_dir`.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Train (if needed) and evaluate one configuration.
    Run(Common),
    /// Evaluate every (L, T) pair of a grid.
    Sweep {
        #[command(flatten)]
        common: Common,
        /// Comma-separated look-back grid; overrides `[sweep] lookbacks`.
        #[arg(long, value_delimiter = ',')]
        lookbacks: Option<Vec<usize>>,
        /// Comma-separated horizon grid; overrides `[sweep] horizons`.
        #[arg(long, value_delimiter = ',')]
        horizons: Option<Vec<usize>>,
    },
    /// DLinear against the same run without decomposition.
    AblateDecomp(Common),
    /// Full training segment against its last `--short-steps` rows.
    AblateTrainsize {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        short_steps: usize,
    },
    /// Parameter count, MACs and timed inference.
    BenchEfficiency {
        /// Take model, L, T, kernel and batch size from a config; C from its dataset.
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long, default_value = "dlinear-s")]
        model: ModelKind,
        #[arg(long, default_value_t = 96)]
        lookback: usize,
        #[arg(long, default_value_t = 720)]
        horizon: usize,
        #[arg(long)]
        channels: Option<usize>,
        #[arg(long, default_value_t = DEFAULT_KERNEL_SIZE)]
        kernel: usize,
        #[arg(long, default_value_t = 32)]
        batch_size: usize,
        #[arg(long, default_value_t = 5)]
        runs: usize,
        /// Also write the record as JSON to this file.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write trend and remainder weight grids as CSV.
    ExportWeights {
        /// Saved model checkpoint (`model.json`).
        #[arg(long, conflicts_with = "config", required_unless_present = "config")]
        model: Option<PathBuf>,
        /// Train from this configuration first.
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        seed: Option<u64>,
        /// Output directory.
        #[arg(long)]
        out: PathBuf,
    },
    /// Split a CSV series into trend.csv and remainder.csv.
    Decompose {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value_t = DEFAULT_KERNEL_SIZE)]
        kernel: usize,
        #[arg(long)]
        timestamp_column: Option<String>,
        /// Output directory.
        #[arg(long)]
        out: PathBuf,
    },
    /// Generate a synthetic series as CSV (stdout unless `--out`).
    Synth {
        #[arg(long, value_parser = parse_kind, default_value = "sinusoid")]
        kind: SyntheticKind,
        #[arg(long, default_value_t = 2000)]
        length: usize,
        #[arg(long, default_value_t = 1)]
        channels: usize,
        #[arg(long, default_value_t = 24)]
        period: usize,
        #[arg(long, default_value_t = 1.0)]
        amplitude: f64,
        #[arg(long, default_value_t = 0.01)]
        slope: f64,
        #[arg(long, default_value_t = 0.0)]
        noise_std: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn parse_kind(s: &str) -> std::result::Result<SyntheticKind, String> {
    serde_json::from_value(serde_json::Value::String(s.replace('-', "_")))
        .map_err(|_| "expected sinusoid, linear_trend, trend_plus_seasonal or white_noise".to_string())
}

fn load_config(common: &Common) -> Result<ExperimentConfig> {
    let mut cfg = ExperimentConfig::load(&common.config)?;
    if let Some(seed) = common.seed {
        cfg.train.seed = seed;
    }
    if let Some(out) = &common.out {
        cfg.output_dir = Some(out.clone());
    }
    Ok(cfg)
}

fn emit<T: Serialize>(value: &T) -> Result<()> {
    let line = serde_json::to_string(value)?;
    let mut stdout = io::stdout().lock();
    writeln!(stdout, "{line}").map_err(|e| Error::io("<stdout>", e))
}

#[derive(serde::Deserialize, Default)]
struct SweepTable {
    #[serde(default)]
    lookbacks: Vec<usize>,
    #[serde(default)]
    horizons: Vec<usize>,
}

fn sweep_table(path: &Path) -> Result<SweepTable> {
    #[derive(serde::Deserialize)]
    struct Doc {
        sweep: Option<SweepTable>,
    }
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let doc: Doc = toml::from_str(&text).map_err(|e| Error::config(e.to_string()))?;
    Ok(doc.sweep.unwrap_or_default())
}

fn execute(command: Command) -> Result<()> {
    match command {
        Command::Run(common) => {
            let cfg = load_config(&common)?;
            let outcome = run(&cfg)?;
            emit(&outcome.summary)
        }
        Command::Sweep {
            common,
            lookbacks,
            horizons,
        } => {
            let base = load_config(&common)?;
            let table = sweep_table(&common.config)?;
            let spec = SweepSpec {
                lookbacks: lookbacks.unwrap_or(table.lookbacks),
                horizons: horizons.unwrap_or(table.horizons),
                base,
            };
            let outcome = sweep(&spec)?;
            for s in &outcome.summaries {
                emit(s)?;
            }
            if outcome.summaries.is_empty() {
                return Err(Error::infeasible(format!(
                    "no feasible (L, T) pair; {} skipped",
                    outcome.skipped.len()
                )));
            }
            Ok(())
        }
        Command::AblateDecomp(common) => emit(&ablate_decomposition(&load_config(&common)?)?),
        Command::AblateTrainsize { common, short_steps } => {
            emit(&ablate_train_size(&load_config(&common)?, short_steps)?)
        }
        Command::BenchEfficiency {
            config,
            mut model,
            mut lookback,
            mut horizon,
            channels,
            mut kernel,
            mut batch_size,
            runs,
            out,
        } => {
            let mut c = channels;
            if let Some(path) = config {
                let cfg = ExperimentConfig::load(path)?;
                model = cfg.model;
                lookback = cfg.lookback;
                horizon = cfg.horizon;
                kernel = cfg.kernel_size;
                batch_size = cfg.train.batch_size;
                if c.is_none() {
                    c = Some(cfg.dataset.load()?.channels());
                }
            }
            let record = efficiency_report(model, lookback, horizon, c.unwrap_or(1), kernel, batch_size, runs)?;
            if let Some(path) = out {
                let text = serde_json::to_string_pretty(&record)? + "\n";
                fs::write(&path, text).map_err(|e| Error::io(&path, e))?;
            }
            emit(&record)
        }
        Command::ExportWeights {
            model,
            config,
            seed,
            out,
        } => {
            let (model, names) = match (model, config) {
                (Some(path), _) => (Model::load(path)?, None),
                (None, Some(path)) => {
                    let common = Common {
                        config: path,
                        seed,
                        out: None,
                    };
                    let cfg = load_config(&common)?;
                    let names = cfg.dataset.load()?.variate_names().to_vec();
                    (run(&cfg)?.model, Some(names))
                }
                (None, None) => return Err(Error::config("export-weights needs --model or --config")),
            };
            let Model::DLinear(dlinear) = model else {
                return Err(Error::config(format!(
                    "export-weights needs a dlinear model, got {}",
                    model.kind()
                )));
            };
            fs::create_dir_all(&out).map_err(|e| Error::io(&out, e))?;
            let files = export_weights(&dlinear, &out, names.as_deref())?;
            emit(&files)
        }
        Command::Decompose {
            input,
            kernel,
            timestamp_column,
            out,
        } => {
            let series = load_csv(&input, &CsvSchema { timestamp_column })?;
            let parts = decompose(series.values(), kernel)?;
            fs::create_dir_all(&out).map_err(|e| Error::io(&out, e))?;
            let trend_path = out.join("trend.csv");
            let remainder_path = out.join("remainder.csv");
            series.with_values(parts.trend)?.write_csv(&trend_path)?;
            series.with_values(parts.remainder)?.write_csv(&remainder_path)?;
            emit(&[trend_path, remainder_path])
        }
        Command::Synth {
            kind,
            length,
            channels,
            period,
            amplitude,
            slope,
            noise_std,
            seed,
            out,
        } => {
            let spec = SyntheticSpec {
                kind,
                length,
                channels,
                period,
                amplitude,
                slope,
                noise_std,
                seed,
            };
            let series = generate(&spec)?;
            match out {
                Some(path) => series.write_csv(path),
                None => series.write_csv_to(io::stdout().lock()),
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    env_logger::Builder::new().parse_filters(&cli.log).init();
    match execute(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
