//! Pooled point-forecast error over an evaluation split.

use serde::{Deserialize, Serialize};

use crate::data::WindowSource;
use crate::error::{Error, Result};
use crate::matrix::Matrix;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvalSummary {
    pub mse: f64,
    pub mae: f64,
    pub n_windows: usize,
    #[serde(rename = "L")]
    pub lookback: usize,
    #[serde(rename = "T")]
    pub horizon: usize,
    #[serde(rename = "C")]
    pub channels: usize,
    pub dataset_id: String,
    pub model_id: String,
}

impl EvalSummary {
    pub fn labeled(mut self, dataset_id: impl Into<String>, model_id: impl Into<String>) -> Self {
        self.dataset_id = dataset_id.into();
        self.model_id = model_id.into();
        self
    }

    /// Number of pooled residuals.
    pub fn n_elements(&self) -> usize {
        self.n_windows * self.horizon * self.channels
    }

    pub fn to_json_line(&self) -> Result<String> {
        Ok(serde_json::to_string(self)?)
    }
}

/// MSE and MAE over every window, step and variate, each element weighted
/// equally. `forecast` maps an `L x C` input to a `T x C` prediction.
pub fn evaluate<F, W>(forecast: F, windows: &W) -> Result<EvalSummary>
where
    F: Fn(&Matrix) -> Result<Matrix>,
    W: WindowSource + ?Sized,
{
    let n = windows.window_count();
    if n == 0 {
        return Err(Error::infeasible("cannot evaluate an empty window set"));
    }
    let first = windows.window(0);
    let (lookback, horizon, channels) = (first.input.rows(), first.target.rows(), first.target.cols());
    drop(first);
    let mut sq = 0.0;
    let mut abs = 0.0;
    for i in 0..n {
        let w = windows.window(i);
        let pred = forecast(&w.input)?;
        pred.ensure_shape(horizon, channels)?;
        w.target.ensure_shape(horizon, channels)?;
        for (p, y) in pred.as_slice().iter().zip(w.target.as_slice()) {
            let r = p - y;
            sq += r * r;
            abs += r.abs();
        }
    }
    let count = (n * horizon * channels) as f64;
    Ok(EvalSummary {
        mse: sq / count,
        mae: abs / count,
        n_windows: n,
        lookback,
        horizon,
        channels,
        dataset_id: String::new(),
        model_id: String::new(),
    })
}

/// Recombines summaries of disjoint window shards into the whole-set summary.
pub fn combine(parts: &[EvalSummary]) -> Result<EvalSummary> {
    let first = parts.first().ok_or_else(|| Error::infeasible("nothing to combine"))?;
    let mut total = 0usize;
    let (mut sq, mut abs) = (0.0, 0.0);
    for p in parts {
        if (p.horizon, p.channels) != (first.horizon, first.channels) {
            return Err(Error::shape(
                format!("T={} C={}", first.horizon, first.channels),
                format!("T={} C={}", p.horizon, p.channels),
            ));
        }
        let n = p.n_elements();
        sq += p.mse * n as f64;
        abs += p.mae * n as f64;
        total += n;
    }
    Ok(EvalSummary {
        mse: sq / total as f64,
        mae: abs / total as f64,
        n_windows: parts.iter().map(|p| p.n_windows).sum(),
        ..first.clone()
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::data::WindowPair;

    fn window(target: &[f64]) -> WindowPair {
        WindowPair {
            input: Matrix::zeros(2, 1),
            target: Matrix::from_columns(&[target.to_vec()]).unwrap(),
            origin_index: 2,
        }
    }

    #[test]
    fn perfect_forecaster() {
        let ws = vec![window(&[0.0, 0.0])];
        let s = evaluate(|x| Ok(Matrix::zeros(2, x.cols())), &ws).unwrap();
        assert_eq!((s.mse, s.mae), (0.0, 0.0));
    }

    #[test]
    fn unit_residuals() {
        let ws = vec![window(&[1.0, -1.0])];
        let s = evaluate(|_| Ok(Matrix::zeros(2, 1)), &ws).unwrap();
        assert_eq!((s.mse, s.mae, s.n_windows), (1.0, 1.0, 1));
        assert_eq!(s.n_elements(), 2);
    }

    #[test]
    fn empty_and_misshapen() {
        let ws: Vec<WindowPair> = vec![];
        assert!(evaluate(|_| Ok(Matrix::zeros(2, 1)), &ws).is_err());
        let ws = vec![window(&[1.0, -1.0])];
        assert!(evaluate(|_| Ok(Matrix::zeros(3, 1)), &ws).is_err());
    }

    #[test]
    fn json_line_fields() {
        let ws = vec![window(&[1.0, -1.0])];
        let s = evaluate(|_| Ok(Matrix::zeros(2, 1)), &ws)
            .unwrap()
            .labeled("toy", "repeat-c");
        let line = s.to_json_line().unwrap();
        assert!(!line.contains('\n'));
        let back: EvalSummary = serde_json::from_str(&line).unwrap();
        assert_eq!(back, s);
        assert!(line.contains("\"L\":2") && line.contains("\"model_id\":\"repeat-c\""));
    }
}
