//! Linear forecasters and the naive repeat baseline.
//!
//! Every forecaster maps an `L x C` history to a `T x C` forecast in one
//! shot. The trainable ones are built from [`LinearMap`]s applied to one
//! variate at a time, so they are described to the trainer as a list of
//! per-variate branch inputs (see [`BranchInput`]).

use std::fmt;
use std::fs::{self, File};
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::decompose::{check_kernel, moving_average_into, DEFAULT_KERNEL_SIZE};
use crate::error::{Error, Result};
use crate::matrix::Matrix;

/// `y = W x + b` from a length-`L` history to a length-`T` forecast.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "LinearMapDoc", into = "LinearMapDoc")]
pub struct LinearMap {
    input_len: usize,
    output_len: usize,
    /// Row-major `T x L`.
    weight: Vec<f64>,
    bias: Vec<f64>,
}

#[derive(Serialize, Deserialize)]
struct LinearMapDoc {
    weight: Vec<f64>,
    bias: Vec<f64>,
}

impl TryFrom<LinearMapDoc> for LinearMap {
    type Error = Error;
    fn try_from(doc: LinearMapDoc) -> Result<Self> {
        let t = doc.bias.len();
        if t == 0 || doc.weight.is_empty() || !doc.weight.len().is_multiple_of(t) {
            return Err(Error::shape(
                "weight length a positive multiple of bias length",
                format!("weight {} / bias {}", doc.weight.len(), t),
            ));
        }
        let map = LinearMap {
            input_len: doc.weight.len() / t,
            output_len: t,
            weight: doc.weight,
            bias: doc.bias,
        };
        map.check_finite()?;
        Ok(map)
    }
}

impl From<LinearMap> for LinearMapDoc {
    fn from(m: LinearMap) -> Self {
        LinearMapDoc {
            weight: m.weight,
            bias: m.bias,
        }
    }
}

impl LinearMap {
    /// Every weight `1/L`, every bias zero.
    pub fn uniform(lookback: usize, horizon: usize) -> Self {
        LinearMap {
            input_len: lookback,
            output_len: horizon,
            weight: vec![1.0 / lookback as f64; lookback * horizon],
            bias: vec![0.0; horizon],
        }
    }

    pub fn zeros(lookback: usize, horizon: usize) -> Self {
        LinearMap {
            input_len: lookback,
            output_len: horizon,
            weight: vec![0.0; lookback * horizon],
            bias: vec![0.0; horizon],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.weight[i * n + i] = 1.0;
        }
        m
    }

    /// From a `T x L` weight matrix and a length-`T` bias.
    pub fn from_parts(weight: &Matrix, bias: Vec<f64>) -> Result<Self> {
        if bias.len() != weight.rows() || weight.cols() == 0 {
            return Err(Error::shape(format!("bias of length {}", weight.rows()), bias.len()));
        }
        let map = LinearMap {
            input_len: weight.cols(),
            output_len: weight.rows(),
            weight: weight.as_slice().to_vec(),
            bias,
        };
        map.check_finite()?;
        Ok(map)
    }

    fn check_finite(&self) -> Result<()> {
        if self.weight.iter().chain(&self.bias).all(|v| v.is_finite()) {
            Ok(())
        } else {
            Err(Error::infeasible("linear map has non-finite parameters"))
        }
    }

    pub fn input_len(&self) -> usize {
        self.input_len
    }

    pub fn output_len(&self) -> usize {
        self.output_len
    }

    pub fn weight(&self) -> &[f64] {
        &self.weight
    }

    pub fn weight_mut(&mut self) -> &mut [f64] {
        &mut self.weight
    }

    pub fn bias(&self) -> &[f64] {
        &self.bias
    }

    pub fn bias_mut(&mut self) -> &mut [f64] {
        &mut self.bias
    }

    /// Weights and biases, mutably, at once.
    pub fn parts_mut(&mut self) -> (&mut [f64], &mut [f64]) {
        (&mut self.weight, &mut self.bias)
    }

    pub fn weight_matrix(&self) -> Matrix {
        Matrix::from_vec(self.output_len, self.input_len, self.weight.clone()).expect("consistent shape")
    }

    pub fn param_count(&self) -> usize {
        self.weight.len() + self.bias.len()
    }

    /// `out[t] += (W x)[t] + b[t]`.
    pub fn apply_add(&self, x: &[f64], out: &mut [f64]) {
        debug_assert_eq!(x.len(), self.input_len);
        debug_assert_eq!(out.len(), self.output_len);
        for (t, o) in out.iter_mut().enumerate() {
            let row = &self.weight[t * self.input_len..(t + 1) * self.input_len];
            let dot: f64 = row.iter().zip(x).map(|(w, v)| w * v).sum();
            *o += dot + self.bias[t];
        }
    }
}

/// Applies one map to every column of `input`, without decomposition.
pub fn forward_linear(map: &LinearMap, input: &Matrix) -> Result<ForecastBlock> {
    if input.rows() != map.input_len {
        return Err(Error::shape(format!("{} input rows", map.input_len), input.rows()));
    }
    let mut out = Matrix::zeros(map.output_len, input.cols());
    let mut y = vec![0.0; map.output_len];
    for j in 0..input.cols() {
        y.fill(0.0);
        map.apply_add(&input.column(j), &mut y);
        out.set_column(j, &y);
    }
    Ok(ForecastBlock { values: out })
}

/// Repeats the last history row across the horizon.
pub fn repeat_c(input: &Matrix, horizon: usize) -> Result<ForecastBlock> {
    if input.rows() == 0 {
        return Err(Error::infeasible("repeat needs at least one history row"));
    }
    let last = input.row(input.rows() - 1);
    let rows = vec![last; horizon];
    Ok(ForecastBlock {
        values: Matrix::from_rows(&rows)?,
    })
}

/// A `T x C` forecast.
#[derive(Debug, Clone, PartialEq)]
pub struct ForecastBlock {
    pub values: Matrix,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DLinearMode {
    Shared,
    Individual,
}

/// Decomposition-linear forecaster: a trend branch and a remainder branch,
/// each a linear map over the look-back window, summed.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DLinearModel {
    mode: DLinearMode,
    #[serde(rename = "L")]
    lookback: usize,
    #[serde(rename = "T")]
    horizon: usize,
    #[serde(rename = "C")]
    channels: usize,
    kernel_size: usize,
    #[serde(rename = "trend")]
    trend_maps: Vec<LinearMap>,
    #[serde(rename = "remainder")]
    remainder_maps: Vec<LinearMap>,
}

impl DLinearModel {
    /// Freshly initialized model: every map `1/L` weights, zero bias.
    pub fn new(
        mode: DLinearMode,
        lookback: usize,
        horizon: usize,
        channels: usize,
        kernel_size: usize,
    ) -> Result<Self> {
        check_kernel(kernel_size)?;
        check_dims(lookback, horizon, channels)?;
        let arity = match mode {
            DLinearMode::Shared => 1,
            DLinearMode::Individual => channels,
        };
        Ok(DLinearModel {
            mode,
            lookback,
            horizon,
            channels,
            kernel_size,
            trend_maps: vec![LinearMap::uniform(lookback, horizon); arity],
            remainder_maps: vec![LinearMap::uniform(lookback, horizon); arity],
        })
    }

    pub fn shared(lookback: usize, horizon: usize, channels: usize) -> Self {
        Self::new(DLinearMode::Shared, lookback, horizon, channels, DEFAULT_KERNEL_SIZE).expect("valid dims")
    }

    /// Model with explicit branch maps; arity must match the mode.
    pub fn from_maps(
        mode: DLinearMode,
        channels: usize,
        kernel_size: usize,
        trend_maps: Vec<LinearMap>,
        remainder_maps: Vec<LinearMap>,
    ) -> Result<Self> {
        let first = trend_maps.first().ok_or_else(|| Error::config("no trend maps"))?;
        let model = DLinearModel {
            mode,
            lookback: first.input_len,
            horizon: first.output_len,
            channels,
            kernel_size,
            trend_maps,
            remainder_maps,
        };
        model.validate()?;
        Ok(model)
    }

    pub fn validate(&self) -> Result<()> {
        check_kernel(self.kernel_size)?;
        check_dims(self.lookback, self.horizon, self.channels)?;
        let arity = match self.mode {
            DLinearMode::Shared => 1,
            DLinearMode::Individual => self.channels,
        };
        if self.trend_maps.len() != arity || self.remainder_maps.len() != arity {
            return Err(Error::shape(
                format!("{arity} maps per branch"),
                format!(
                    "{} trend / {} remainder",
                    self.trend_maps.len(),
                    self.remainder_maps.len()
                ),
            ));
        }
        for m in self.trend_maps.iter().chain(&self.remainder_maps) {
            if m.input_len != self.lookback || m.output_len != self.horizon {
                return Err(Error::shape(
                    format!("{}x{} weights", self.horizon, self.lookback),
                    format!("{}x{}", m.output_len, m.input_len),
                ));
            }
            m.check_finite()?;
        }
        Ok(())
    }

    pub fn mode(&self) -> DLinearMode {
        self.mode
    }

    pub fn kernel_size(&self) -> usize {
        self.kernel_size
    }

    pub fn trend_maps(&self) -> &[LinearMap] {
        &self.trend_maps
    }

    pub fn remainder_maps(&self) -> &[LinearMap] {
        &self.remainder_maps
    }

    pub fn trend_maps_mut(&mut self) -> &mut [LinearMap] {
        &mut self.trend_maps
    }

    pub fn remainder_maps_mut(&mut self) -> &mut [LinearMap] {
        &mut self.remainder_maps
    }

    fn map_index(&self, channel: usize) -> usize {
        match self.mode {
            DLinearMode::Shared => 0,
            DLinearMode::Individual => channel,
        }
    }
}

fn check_dims(lookback: usize, horizon: usize, channels: usize) -> Result<()> {
    if lookback == 0 || horizon == 0 || channels == 0 {
        return Err(Error::config(format!(
            "L, T and C must be positive (got L={lookback}, T={horizon}, C={channels})"
        )));
    }
    Ok(())
}

/// Decomposition-free ablation: one linear map shared across variates.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LinearModel {
    #[serde(rename = "C")]
    channels: usize,
    map: LinearMap,
}

impl LinearModel {
    pub fn new(lookback: usize, horizon: usize, channels: usize) -> Result<Self> {
        check_dims(lookback, horizon, channels)?;
        Ok(LinearModel {
            channels,
            map: LinearMap::uniform(lookback, horizon),
        })
    }

    pub fn from_map(map: LinearMap, channels: usize) -> Result<Self> {
        check_dims(map.input_len, map.output_len, channels)?;
        Ok(LinearModel { channels, map })
    }

    pub fn map(&self) -> &LinearMap {
        &self.map
    }

    pub fn map_mut(&mut self) -> &mut LinearMap {
        &mut self.map
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RepeatC {
    #[serde(rename = "L")]
    pub lookback: usize,
    #[serde(rename = "T")]
    pub horizon: usize,
    #[serde(rename = "C")]
    pub channels: usize,
}

/// One variate's input to one linear map.
#[derive(Debug, Clone, PartialEq)]
pub struct BranchInput {
    /// Index into [`Trainable::maps`].
    pub map: usize,
    pub channel: usize,
    pub values: Vec<f64>,
}

pub trait Forecaster {
    fn lookback(&self) -> usize;
    fn horizon(&self) -> usize;
    fn channels(&self) -> usize;
    fn forecast(&self, input: &Matrix) -> Result<ForecastBlock>;
    /// Stored weights plus biases.
    fn param_count(&self) -> usize;
    /// Multiply-accumulates for one window of `channels` variates.
    fn mac_count(&self, channels: usize) -> usize;

    fn check_input(&self, input: &Matrix) -> Result<()> {
        input.ensure_shape(self.lookback(), self.channels())
    }
}

/// A forecaster whose output is a sum of [`LinearMap`] applications.
pub trait Trainable: Forecaster {
    /// Parameter maps in a fixed order.
    fn maps(&self) -> Vec<&LinearMap>;
    fn maps_mut(&mut self) -> Vec<&mut LinearMap>;
    /// Per-variate map inputs, in the order their contributions are summed.
    fn branch_inputs(&self, input: &Matrix) -> Result<Vec<BranchInput>>;

    fn forward_branches(&self, branches: &[BranchInput]) -> Matrix {
        let maps = self.maps();
        let t = self.horizon();
        let mut out = Matrix::zeros(t, self.channels());
        let mut y = vec![0.0; t];
        for b in branches {
            y.fill(0.0);
            maps[b.map].apply_add(&b.values, &mut y);
            for (r, v) in y.iter().enumerate() {
                let cur = out.get(r, b.channel);
                out.set(r, b.channel, cur + v);
            }
        }
        out
    }
}

impl Forecaster for DLinearModel {
    fn lookback(&self) -> usize {
        self.lookback
    }
    fn horizon(&self) -> usize {
        self.horizon
    }
    fn channels(&self) -> usize {
        self.channels
    }
    fn forecast(&self, input: &Matrix) -> Result<ForecastBlock> {
        let branches = self.branch_inputs(input)?;
        Ok(ForecastBlock {
            values: self.forward_branches(&branches),
        })
    }
    fn param_count(&self) -> usize {
        self.trend_maps
            .iter()
            .chain(&self.remainder_maps)
            .map(LinearMap::param_count)
            .sum()
    }
    fn mac_count(&self, channels: usize) -> usize {
        2 * self.horizon * self.lookback * channels
    }
}

impl Trainable for DLinearModel {
    fn maps(&self) -> Vec<&LinearMap> {
        self.trend_maps.iter().chain(&self.remainder_maps).collect()
    }
    fn maps_mut(&mut self) -> Vec<&mut LinearMap> {
        self.trend_maps
            .iter_mut()
            .chain(self.remainder_maps.iter_mut())
            .collect()
    }
    fn branch_inputs(&self, input: &Matrix) -> Result<Vec<BranchInput>> {
        self.check_input(input)?;
        let n_trend = self.trend_maps.len();
        let mut out = Vec::with_capacity(2 * self.channels);
        for j in 0..self.channels {
            let col = input.column(j);
            let mut trend = vec![0.0; self.lookback];
            moving_average_into(&col, self.kernel_size, &mut trend);
            let remainder = col.iter().zip(&trend).map(|(x, t)| x - t).collect();
            let idx = self.map_index(j);
            out.push(BranchInput {
                map: idx,
                channel: j,
                values: trend,
            });
            out.push(BranchInput {
                map: n_trend + idx,
                channel: j,
                values: remainder,
            });
        }
        Ok(out)
    }
}

impl Forecaster for LinearModel {
    fn lookback(&self) -> usize {
        self.map.input_len
    }
    fn horizon(&self) -> usize {
        self.map.output_len
    }
    fn channels(&self) -> usize {
        self.channels
    }
    fn forecast(&self, input: &Matrix) -> Result<ForecastBlock> {
        self.check_input(input)?;
        forward_linear(&self.map, input)
    }
    fn param_count(&self) -> usize {
        self.map.param_count()
    }
    fn mac_count(&self, channels: usize) -> usize {
        self.map.output_len * self.map.input_len * channels
    }
}

impl Trainable for LinearModel {
    fn maps(&self) -> Vec<&LinearMap> {
        vec![&self.map]
    }
    fn maps_mut(&mut self) -> Vec<&mut LinearMap> {
        vec![&mut self.map]
    }
    fn branch_inputs(&self, input: &Matrix) -> Result<Vec<BranchInput>> {
        self.check_input(input)?;
        Ok((0..self.channels)
            .map(|j| BranchInput {
                map: 0,
                channel: j,
                values: input.column(j),
            })
            .collect())
    }
}

impl Forecaster for RepeatC {
    fn lookback(&self) -> usize {
        self.lookback
    }
    fn horizon(&self) -> usize {
        self.horizon
    }
    fn channels(&self) -> usize {
        self.channels
    }
    fn forecast(&self, input: &Matrix) -> Result<ForecastBlock> {
        self.check_input(input)?;
        repeat_c(input, self.horizon)
    }
    fn param_count(&self) -> usize {
        0
    }
    fn mac_count(&self, _channels: usize) -> usize {
        0
    }
}

/// Model families selectable from configuration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ModelKind {
    #[serde(rename = "dlinear-s")]
    DLinearShared,
    #[serde(rename = "dlinear-i")]
    DLinearIndividual,
    #[serde(rename = "linear")]
    Linear,
    #[serde(rename = "repeat-c")]
    RepeatC,
}

impl ModelKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            ModelKind::DLinearShared => "dlinear-s",
            ModelKind::DLinearIndividual => "dlinear-i",
            ModelKind::Linear => "linear",
            ModelKind::RepeatC => "repeat-c",
        }
    }

    pub fn is_trainable(&self) -> bool {
        !matches!(self, ModelKind::RepeatC)
    }
}

impl fmt::Display for ModelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ModelKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "dlinear-s" => Ok(ModelKind::DLinearShared),
            "dlinear-i" => Ok(ModelKind::DLinearIndividual),
            "linear" => Ok(ModelKind::Linear),
            "repeat-c" => Ok(ModelKind::RepeatC),
            other => Err(Error::config(format!(
                "unknown model {other:?} (expected dlinear-s, dlinear-i, linear or repeat-c)"
            ))),
        }
    }
}

/// Any forecaster; this is also the checkpoint format.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Model {
    #[serde(rename = "dlinear")]
    DLinear(DLinearModel),
    Linear(LinearModel),
    RepeatC(RepeatC),
}

impl Model {
    pub fn build(
        kind: ModelKind,
        lookback: usize,
        horizon: usize,
        channels: usize,
        kernel_size: usize,
    ) -> Result<Self> {
        Ok(match kind {
            ModelKind::DLinearShared => Model::DLinear(DLinearModel::new(
                DLinearMode::Shared,
                lookback,
                horizon,
                channels,
                kernel_size,
            )?),
            ModelKind::DLinearIndividual => Model::DLinear(DLinearModel::new(
                DLinearMode::Individual,
                lookback,
                horizon,
                channels,
                kernel_size,
            )?),
            ModelKind::Linear => Model::Linear(LinearModel::new(lookback, horizon, channels)?),
            ModelKind::RepeatC => {
                check_dims(lookback, horizon, channels)?;
                Model::RepeatC(RepeatC {
                    lookback,
                    horizon,
                    channels,
                })
            }
        })
    }

    pub fn kind(&self) -> ModelKind {
        match self {
            Model::DLinear(m) if m.mode == DLinearMode::Shared => ModelKind::DLinearShared,
            Model::DLinear(_) => ModelKind::DLinearIndividual,
            Model::Linear(_) => ModelKind::Linear,
            Model::RepeatC(_) => ModelKind::RepeatC,
        }
    }

    pub fn as_forecaster(&self) -> &dyn Forecaster {
        match self {
            Model::DLinear(m) => m,
            Model::Linear(m) => m,
            Model::RepeatC(m) => m,
        }
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string(self)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let model: Model = serde_json::from_str(text)?;
        match &model {
            Model::DLinear(m) => m.validate()?,
            Model::Linear(m) => check_dims(m.map.input_len, m.map.output_len, m.channels)?,
            Model::RepeatC(m) => check_dims(m.lookback, m.horizon, m.channels)?,
        }
        Ok(model)
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        fs::write(path, self.to_json()?).map_err(|e| Error::io(path, e))
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_json(&text)
    }
}

impl Forecaster for Model {
    fn lookback(&self) -> usize {
        self.as_forecaster().lookback()
    }
    fn horizon(&self) -> usize {
        self.as_forecaster().horizon()
    }
    fn channels(&self) -> usize {
        self.as_forecaster().channels()
    }
    fn forecast(&self, input: &Matrix) -> Result<ForecastBlock> {
        self.as_forecaster().forecast(input)
    }
    fn param_count(&self) -> usize {
        self.as_forecaster().param_count()
    }
    fn mac_count(&self, channels: usize) -> usize {
        self.as_forecaster().mac_count(channels)
    }
}

pub fn count_params(model: &dyn Forecaster) -> usize {
    model.param_count()
}

pub fn count_macs(model: &dyn Forecaster, channels: usize) -> usize {
    model.mac_count(channels)
}

fn file_safe(name: &str) -> String {
    name.chars()
        .map(|c| {
            if c.is_ascii_alphanumeric() || c == '-' || c == '_' {
                c
            } else {
                '_'
            }
        })
        .collect()
}

fn write_grid(path: &Path, map: &LinearMap) -> Result<()> {
    let file = File::create(path).map_err(|e| Error::io(path, e))?;
    let mut w = BufWriter::new(file);
    for t in 0..map.output_len {
        let row = &map.weight[t * map.input_len..(t + 1) * map.input_len];
        let line: Vec<String> = row.iter().map(|v| v.to_string()).collect();
        writeln!(w, "{}", line.join(",")).map_err(|e| Error::io(path, e))?;
    }
    w.flush().map_err(|e| Error::io(path, e))
}

/// Writes each branch's `T x L` weight grid as a header-less CSV (row =
/// forecast step, column = input lag). Individual models write one pair
/// per variate, named after the variate.
pub fn export_weights(
    model: &DLinearModel,
    dir: impl AsRef<Path>,
    variate_names: Option<&[String]>,
) -> Result<Vec<PathBuf>> {
    let dir = dir.as_ref();
    fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    let mut written = Vec::new();
    let arity = model.trend_maps.len();
    for i in 0..arity {
        let suffix = match model.mode {
            DLinearMode::Shared => String::new(),
            DLinearMode::Individual => {
                let name = variate_names
                    .and_then(|n| n.get(i))
                    .cloned()
                    .unwrap_or_else(|| format!("x{i}"));
                format!("_{}", file_safe(&name))
            }
        };
        for (branch, map) in [("trend", &model.trend_maps[i]), ("remainder", &model.remainder_maps[i])] {
            let path = dir.join(format!("{branch}_weights{suffix}.csv"));
            write_grid(&path, map)?;
            written.push(path);
        }
    }
    Ok(written)
}
