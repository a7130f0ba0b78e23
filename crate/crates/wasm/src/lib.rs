//! Browser bindings for the DLinear toolkit. Every entry point works on a
//! generated synthetic series and returns a JSON string.

use dlinear_core::bench::{prepare, DatasetConfig};
use dlinear_core::data::{Segment, SplitSpec};
use dlinear_core::decompose::decompose;
use dlinear_core::metrics::evaluate;
use dlinear_core::model::{Forecaster, LinearMap, Model, ModelKind};
use dlinear_core::synthetic::{generate, SyntheticKind, SyntheticSpec};
use dlinear_core::train::{fit, TrainConfig};
use dlinear_core::{Error, Matrix, Result};
use serde::Serialize;
use wasm_bindgen::prelude::*;

/// Longest series the demo will generate.
pub const MAX_LENGTH: usize = 20_000;

/// Parameters of the demo's single-variate synthetic series.
#[derive(Debug, Clone, Copy)]
pub struct SeriesParams<'a> {
    pub kind: &'a str,
    pub length: usize,
    pub period: usize,
    pub slope: f64,
    pub noise_std: f64,
    pub seed: u32,
}

impl SeriesParams<'_> {
    fn spec(&self) -> Result<SyntheticSpec> {
        if self.length > MAX_LENGTH {
            return Err(Error::config(format!("length {} exceeds {MAX_LENGTH}", self.length)));
        }
        let kind = match self.kind.replace('-', "_").as_str() {
            "sinusoid" => SyntheticKind::Sinusoid,
            "linear_trend" => SyntheticKind::LinearTrend,
            "trend_plus_seasonal" => SyntheticKind::TrendPlusSeasonal,
            "white_noise" => SyntheticKind::WhiteNoise,
            other => return Err(Error::config(format!("unknown series kind {other:?}"))),
        };
        let spec = SyntheticSpec {
            kind,
            length: self.length,
            channels: 1,
            period: self.period,
            amplitude: 1.0,
            slope: self.slope,
            noise_std: self.noise_std,
            seed: self.seed.into(),
        };
        spec.validate()?;
        Ok(spec)
    }
}

#[derive(Debug, Serialize)]
pub struct Decomposition {
    pub input: Vec<f64>,
    pub trend: Vec<f64>,
    pub remainder: Vec<f64>,
}

pub fn decompose_series(params: &SeriesParams, kernel: usize) -> Result<Decomposition> {
    let series = generate(&params.spec()?)?;
    let parts = decompose(series.values(), kernel)?;
    Ok(Decomposition {
        input: series.values().column(0),
        trend: parts.trend.column(0),
        remainder: parts.remainder.column(0),
    })
}

#[derive(Debug, Serialize)]
pub struct TrainedForecast {
    pub model: String,
    pub mse: f64,
    pub mae: f64,
    pub n_test_windows: usize,
    pub train_losses: Vec<f64>,
    pub val_losses: Vec<f64>,
    pub best_epoch: Option<usize>,
    pub params: usize,
    /// Look-back of the first test window, standardized.
    pub history: Vec<f64>,
    pub actual: Vec<f64>,
    pub forecast: Vec<f64>,
    /// `T x L` grids, present for DLinear models.
    pub trend_weights: Option<Vec<Vec<f64>>>,
    pub remainder_weights: Option<Vec<Vec<f64>>>,
}

fn grid(map: &LinearMap) -> Vec<Vec<f64>> {
    map.weight().chunks(map.input_len()).map(<[f64]>::to_vec).collect()
}

/// Standard 0.7/0.1/0.2 split, train-fitted standardization, fit and test
/// evaluation, as in a `run` without artifacts.
pub fn train_forecast(
    params: &SeriesParams,
    model: &str,
    lookback: usize,
    horizon: usize,
    train: &TrainConfig,
) -> Result<TrainedForecast> {
    let kind: ModelKind = model.parse()?;
    let dataset = DatasetConfig::synthetic(params.spec()?);
    let prepared = prepare(&dataset, &SplitSpec::default())?;
    let series = &prepared.scaled;
    let windows = |seg| prepared.split.windows(series, seg, lookback, horizon);
    let test = windows(Segment::Test)?;
    let mut built = Model::build(kind, lookback, horizon, 1, 25)?;

    let report = if kind.is_trainable() {
        let train_windows = windows(Segment::Train)?;
        let val = windows(Segment::Val).map(|w| w.to_vec()).unwrap_or_default();
        Some(match &mut built {
            Model::DLinear(m) => fit(m, &train_windows, &val, train)?,
            Model::Linear(m) => fit(m, &train_windows, &val, train)?,
            Model::RepeatC(_) => unreachable!("repeat-c is not trainable"),
        })
    } else {
        None
    };
    let summary = evaluate(|x| Ok(built.forecast(x)?.values), &test)?;
    let first = test.pair(0);
    let forecast = built.forecast(&first.input)?.values;
    let (trend_weights, remainder_weights) = match &built {
        Model::DLinear(m) => (Some(grid(&m.trend_maps()[0])), Some(grid(&m.remainder_maps()[0]))),
        _ => (None, None),
    };
    let column = |m: &Matrix| m.column(0);
    Ok(TrainedForecast {
        model: kind.to_string(),
        mse: summary.mse,
        mae: summary.mae,
        n_test_windows: summary.n_windows,
        train_losses: report
            .as_ref()
            .map(|r| r.epoch_train_losses.clone())
            .unwrap_or_default(),
        val_losses: report.as_ref().map(|r| r.epoch_val_losses.clone()).unwrap_or_default(),
        best_epoch: report.as_ref().map(|r| r.best_epoch),
        params: built.param_count(),
        history: column(&first.input),
        actual: column(&first.target),
        forecast: column(&forecast),
        trend_weights,
        remainder_weights,
    })
}

fn to_js<T: Serialize>(value: Result<T>) -> Result<String, JsError> {
    let value = value.map_err(|e| JsError::new(&e.to_string()))?;
    serde_json::to_string(&value).map_err(|e| JsError::new(&e.to_string()))
}

/// Decomposes a generated series; returns `{input, trend, remainder}`.
#[wasm_bindgen(js_name = decomposeSeries)]
#[allow(clippy::too_many_arguments)]
pub fn decompose_series_js(
    kind: &str,
    length: usize,
    period: usize,
    slope: f64,
    noise_std: f64,
    seed: u32,
    kernel: usize,
) -> Result<String, JsError> {
    let params = SeriesParams {
        kind,
        length,
        period,
        slope,
        noise_std,
        seed,
    };
    to_js(decompose_series(&params, kernel))
}

/// Trains `model` on a generated series and returns test metrics, loss
/// curves, one forecast and (for DLinear) both weight grids.
#[wasm_bindgen(js_name = trainForecast)]
#[allow(clippy::too_many_arguments)]
pub fn train_forecast_js(
    kind: &str,
    length: usize,
    period: usize,
    slope: f64,
    noise_std: f64,
    seed: u32,
    model: &str,
    lookback: usize,
    horizon: usize,
    epochs: usize,
    learning_rate: f64,
) -> Result<String, JsError> {
    let params = SeriesParams {
        kind,
        length,
        period,
        slope,
        noise_std,
        seed,
    };
    let train = TrainConfig {
        max_epochs: epochs,
        patience: epochs.min(TrainConfig::default().patience).max(1),
        learning_rate,
        seed: seed.into(),
        ..TrainConfig::default()
    };
    to_js(train_forecast(&params, model, lookback, horizon, &train))
}
