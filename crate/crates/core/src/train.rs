//! Mini-batch training of linear forecasters under mean squared error.
//!
//! Gradients are analytic. The forecast is a sum of linear maps applied to
//! fixed per-variate inputs (the decomposition does not depend on the
//! parameters), so for a residual `R = pred - target` over `n` elements the
//! gradient of each map is `(2/n) * sum R x^T` and of its bias `(2/n) * sum R`.
//!
//! All reductions run window-major, then forecast step, then variate, on a
//! single thread; a fit is bit-reproducible from its seed.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::data::{WindowPair, WindowSource};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::model::{LinearMap, Trainable};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OptimizerKind {
    Adam,
    Sgd,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct TrainConfig {
    pub learning_rate: f64,
    pub batch_size: usize,
    pub max_epochs: usize,
    /// Epochs without a validation improvement before stopping.
    pub patience: usize,
    pub seed: u64,
    pub optimizer: OptimizerKind,
    pub beta1: f64,
    pub beta2: f64,
    pub eps: f64,
}

impl Default for TrainConfig {
    fn default() -> Self {
        TrainConfig {
            learning_rate: 0.005,
            batch_size: 32,
            max_epochs: 20,
            patience: 5,
            seed: 2021,
            optimizer: OptimizerKind::Adam,
            beta1: 0.9,
            beta2: 0.999,
            eps: 1e-8,
        }
    }
}

impl TrainConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.learning_rate > 0.0 && self.learning_rate.is_finite()) {
            return Err(Error::config(format!(
                "learning_rate must be positive, got {}",
                self.learning_rate
            )));
        }
        if self.batch_size == 0 || self.max_epochs == 0 {
            return Err(Error::config("batch_size and max_epochs must be positive"));
        }
        if self.patience > self.max_epochs {
            return Err(Error::config(format!(
                "patience {} exceeds max_epochs {}",
                self.patience, self.max_epochs
            )));
        }
        if !(0.0..1.0).contains(&self.beta1)
            || !(0.0..1.0).contains(&self.beta2)
            || self.eps.is_nan()
            || self.eps <= 0.0
        {
            return Err(Error::config("adam needs beta1, beta2 in [0,1) and eps > 0"));
        }
        Ok(())
    }
}

/// Mean of squared differences over every element of every block.
pub fn mse_loss(pred: &[Matrix], target: &[Matrix]) -> Result<f64> {
    if pred.len() != target.len() {
        return Err(Error::shape(format!("{} target blocks", pred.len()), target.len()));
    }
    let mut sum = 0.0;
    let mut count = 0usize;
    for (p, t) in pred.iter().zip(target) {
        p.ensure_shape(t.rows(), t.cols())?;
        for (a, b) in p.as_slice().iter().zip(t.as_slice()) {
            sum += (a - b) * (a - b);
        }
        count += p.as_slice().len();
    }
    if count == 0 {
        return Err(Error::infeasible("mse of an empty batch"));
    }
    Ok(sum / count as f64)
}

/// Gradient with the same layout as [`Trainable::maps`].
#[derive(Debug, Clone, PartialEq)]
pub struct Gradient {
    pub maps: Vec<LinearMap>,
}

impl Gradient {
    fn zeros_like<M: Trainable + ?Sized>(model: &M) -> Self {
        Gradient {
            maps: model
                .maps()
                .iter()
                .map(|m| LinearMap::zeros(m.input_len(), m.output_len()))
                .collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.maps
            .iter()
            .all(|m| m.weight().iter().chain(m.bias()).all(|&g| g == 0.0))
    }

    /// Flattened in optimizer order: per map, weights then biases.
    pub fn flatten(&self) -> Vec<f64> {
        self.maps
            .iter()
            .flat_map(|m| m.weight().iter().chain(m.bias()).copied())
            .collect()
    }
}

fn check_window<M: Trainable + ?Sized>(model: &M, w: &WindowPair) -> Result<()> {
    w.input.ensure_shape(model.lookback(), model.channels())?;
    w.target.ensure_shape(model.horizon(), model.channels())
}

/// Sum of squared residuals and the unscaled gradient accumulation for one window.
fn accumulate<M: Trainable + ?Sized>(model: &M, w: &WindowPair, grad: &mut Gradient) -> Result<f64> {
    check_window(model, w)?;
    let branches = model.branch_inputs(&w.input)?;
    let pred = model.forward_branches(&branches);
    let residual = pred.zip_map(&w.target, |p, y| p - y)?;
    let sq: f64 = residual.as_slice().iter().map(|r| r * r).sum();
    let horizon = model.horizon();
    let mut r = vec![0.0; horizon];
    for b in &branches {
        for (t, rt) in r.iter_mut().enumerate() {
            *rt = residual.get(t, b.channel);
        }
        let g = &mut grad.maps[b.map];
        let l = b.values.len();
        for (t, &rt) in r.iter().enumerate() {
            g.bias_mut()[t] += rt;
            let row = &mut g.weight_mut()[t * l..(t + 1) * l];
            for (gw, x) in row.iter_mut().zip(&b.values) {
                *gw += rt * x;
            }
        }
    }
    Ok(sq)
}

fn scale(grad: &mut Gradient, factor: f64) {
    for m in &mut grad.maps {
        m.weight_mut().iter_mut().for_each(|g| *g *= factor);
        m.bias_mut().iter_mut().for_each(|g| *g *= factor);
    }
}

/// Batch MSE and its exact gradient.
pub fn loss_and_grad<M: Trainable + ?Sized>(model: &M, batch: &[WindowPair]) -> Result<(f64, Gradient)> {
    if batch.is_empty() {
        return Err(Error::infeasible("gradient of an empty batch"));
    }
    let mut g = Gradient::zeros_like(model);
    let mut sq = 0.0;
    for w in batch {
        sq += accumulate(model, w, &mut g)?;
    }
    let n = (batch.len() * model.horizon() * model.channels()) as f64;
    scale(&mut g, 2.0 / n);
    Ok((sq / n, g))
}

pub fn grad<M: Trainable + ?Sized>(model: &M, batch: &[WindowPair]) -> Result<Gradient> {
    loss_and_grad(model, batch).map(|(_, g)| g)
}

/// Element-pooled MSE of a model over a window source.
pub fn dataset_mse<M, W>(model: &M, windows: &W) -> Result<f64>
where
    M: Trainable + ?Sized,
    W: WindowSource + ?Sized,
{
    let n = windows.window_count();
    if n == 0 {
        return Err(Error::infeasible("mse over an empty window set"));
    }
    let mut sum = 0.0;
    for i in 0..n {
        let w = windows.window(i);
        check_window(model, &w)?;
        let pred = model.forecast(&w.input)?.values;
        for (p, y) in pred.as_slice().iter().zip(w.target.as_slice()) {
            sum += (p - y) * (p - y);
        }
    }
    Ok(sum / (n * model.horizon() * model.channels()) as f64)
}

/// Adam with bias-corrected moments.
#[derive(Debug, Clone, PartialEq)]
pub struct Adam {
    pub lr: f64,
    pub beta1: f64,
    pub beta2: f64,
    pub eps: f64,
    steps: i32,
    m: Vec<f64>,
    v: Vec<f64>,
}

impl Adam {
    pub fn new(lr: f64, beta1: f64, beta2: f64, eps: f64) -> Self {
        Adam {
            lr,
            beta1,
            beta2,
            eps,
            steps: 0,
            m: Vec::new(),
            v: Vec::new(),
        }
    }

    /// First and second moment buffers, flattened in optimizer order.
    pub fn moments(&self) -> (&[f64], &[f64]) {
        (&self.m, &self.v)
    }

    pub fn steps(&self) -> i32 {
        self.steps
    }

    fn step(&mut self, params: &mut [&mut LinearMap], grad: &Gradient) {
        let total: usize = grad.maps.iter().map(LinearMap::param_count).sum();
        if self.m.len() != total {
            self.m = vec![0.0; total];
            self.v = vec![0.0; total];
        }
        self.steps += 1;
        let bc1 = 1.0 - self.beta1.powi(self.steps);
        let bc2 = 1.0 - self.beta2.powi(self.steps);
        let mut k = 0;
        for (p, g) in params.iter_mut().zip(&grad.maps) {
            let (pw, pb) = p.parts_mut();
            for (x, gx) in pw
                .iter_mut()
                .chain(pb.iter_mut())
                .zip(g.weight().iter().chain(g.bias()))
            {
                self.m[k] = self.beta1 * self.m[k] + (1.0 - self.beta1) * gx;
                self.v[k] = self.beta2 * self.v[k] + (1.0 - self.beta2) * gx * gx;
                let m_hat = self.m[k] / bc1;
                let v_hat = self.v[k] / bc2;
                *x -= self.lr * m_hat / (v_hat.sqrt() + self.eps);
                k += 1;
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Optimizer {
    Adam(Adam),
    Sgd { lr: f64 },
}

impl Optimizer {
    pub fn from_config(config: &TrainConfig) -> Self {
        match config.optimizer {
            OptimizerKind::Adam => {
                Optimizer::Adam(Adam::new(config.learning_rate, config.beta1, config.beta2, config.eps))
            }
            OptimizerKind::Sgd => Optimizer::Sgd {
                lr: config.learning_rate,
            },
        }
    }

    pub fn step<M: Trainable + ?Sized>(&mut self, model: &mut M, grad: &Gradient) {
        let mut params = model.maps_mut();
        match self {
            Optimizer::Adam(adam) => adam.step(&mut params, grad),
            Optimizer::Sgd { lr } => {
                for (p, g) in params.iter_mut().zip(&grad.maps) {
                    for (x, gx) in p.weight_mut().iter_mut().zip(g.weight()) {
                        *x -= *lr * gx;
                    }
                    for (x, gx) in p.bias_mut().iter_mut().zip(g.bias()) {
                        *x -= *lr * gx;
                    }
                }
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrainReport {
    pub epoch_train_losses: Vec<f64>,
    pub epoch_val_losses: Vec<f64>,
    /// Index into `epoch_val_losses` of the restored snapshot.
    pub best_epoch: usize,
    pub final_params_snapshot_id: String,
    pub stopped_early: bool,
    pub optimizer_steps: usize,
    /// How batch reductions were ordered; `sequential` runs are bit-reproducible.
    pub reduction: String,
}

impl TrainReport {
    pub fn best_val_loss(&self) -> f64 {
        self.epoch_val_losses[self.best_epoch]
    }
}

/// Fits `model` in place and leaves it at the best-validation snapshot.
///
/// With an empty validation set the full training set stands in for it.
pub fn fit<M, Tr, Va>(model: &mut M, train: &Tr, val: &Va, config: &TrainConfig) -> Result<TrainReport>
where
    M: Trainable + Clone,
    Tr: WindowSource + ?Sized,
    Va: WindowSource + ?Sized,
{
    fit_with(model, train, val, config, |_, _, _| {})
}

/// As [`fit`], calling `on_epoch(epoch, train_loss, val_loss)` after each epoch.
pub fn fit_with<M, Tr, Va>(
    model: &mut M,
    train: &Tr,
    val: &Va,
    config: &TrainConfig,
    mut on_epoch: impl FnMut(usize, f64, f64),
) -> Result<TrainReport>
where
    M: Trainable + Clone,
    Tr: WindowSource + ?Sized,
    Va: WindowSource + ?Sized,
{
    config.validate()?;
    let n = train.window_count();
    if n == 0 {
        return Err(Error::infeasible("empty training set"));
    }
    check_window(model, &train.window(0))?;

    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut optimizer = Optimizer::from_config(config);
    let elems_per_window = model.horizon() * model.channels();
    let mut order: Vec<usize> = (0..n).collect();
    let mut report = TrainReport {
        epoch_train_losses: Vec::new(),
        epoch_val_losses: Vec::new(),
        best_epoch: 0,
        final_params_snapshot_id: String::new(),
        stopped_early: false,
        optimizer_steps: 0,
        reduction: "sequential".into(),
    };
    let mut best: Option<(f64, M)> = None;
    let mut since_best = 0;

    for epoch in 0..config.max_epochs {
        order.iter_mut().enumerate().for_each(|(i, o)| *o = i);
        order.shuffle(&mut rng);
        let mut epoch_sq = 0.0;
        for (b, idx) in order.chunks(config.batch_size).enumerate() {
            let batch: Vec<WindowPair> = idx.iter().map(|&i| train.window(i).into_owned()).collect();
            let (loss, g) = loss_and_grad(model, &batch)?;
            if !loss.is_finite() || !g.flatten().iter().all(|v| v.is_finite()) {
                return Err(Error::NonFinite { epoch, batch: b });
            }
            epoch_sq += loss * (batch.len() * elems_per_window) as f64;
            optimizer.step(model, &g);
            report.optimizer_steps += 1;
        }
        let train_loss = epoch_sq / (n * elems_per_window) as f64;
        let val_loss = if val.window_count() > 0 {
            dataset_mse(model, val)?
        } else {
            dataset_mse(model, train)?
        };
        if !val_loss.is_finite() {
            return Err(Error::NonFinite {
                epoch,
                batch: usize::MAX,
            });
        }
        report.epoch_train_losses.push(train_loss);
        report.epoch_val_losses.push(val_loss);
        on_epoch(epoch, train_loss, val_loss);
        log::debug!("epoch {epoch}: train {train_loss:.6} val {val_loss:.6}");

        if best.as_ref().is_none_or(|(b, _)| val_loss < *b) {
            best = Some((val_loss, model.clone()));
            report.best_epoch = epoch;
            since_best = 0;
        } else {
            since_best += 1;
            if since_best >= config.patience {
                report.stopped_early = epoch + 1 < config.max_epochs;
                break;
            }
        }
    }

    if let Some((_, snapshot)) = best {
        *model = snapshot;
    }
    report.final_params_snapshot_id = format!("epoch-{}", report.best_epoch);
    Ok(report)
}
