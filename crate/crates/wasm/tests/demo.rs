use dlinear_core::train::TrainConfig;
use dlinear_wasm::*;

fn params(kind: &str) -> SeriesParams<'_> {
    SeriesParams {
        kind,
        length: 800,
        period: 24,
        slope: 0.01,
        noise_std: 0.0,
        seed: 1,
    }
}

#[test]
fn decomposition_reconstructs_the_series() {
    let d = decompose_series(&params("trend-plus-seasonal"), 25).unwrap();
    assert_eq!(d.input.len(), 800);
    for i in 0..800 {
        assert!((d.trend[i] + d.remainder[i] - d.input[i]).abs() < 1e-12);
    }
    assert!(decompose_series(&params("trend-plus-seasonal"), 4).is_err());
    assert!(decompose_series(&params("square_wave"), 25).is_err());
}

#[test]
fn dlinear_training_returns_weight_grids() {
    let cfg = TrainConfig {
        max_epochs: 5,
        patience: 5,
        ..TrainConfig::default()
    };
    let out = train_forecast(&params("sinusoid"), "dlinear-s", 48, 24, &cfg).unwrap();
    assert!(out.mse < 1e-2, "{}", out.mse);
    assert_eq!(out.train_losses.len(), out.val_losses.len());
    assert_eq!((out.history.len(), out.actual.len(), out.forecast.len()), (48, 24, 24));
    let grid = out.remainder_weights.unwrap();
    assert_eq!((grid.len(), grid[0].len()), (24, 48));
    assert_eq!(out.params, 2 * (24 * 48 + 24));
}

#[test]
fn repeat_c_skips_training() {
    let out = train_forecast(&params("linear_trend"), "repeat-c", 48, 24, &TrainConfig::default()).unwrap();
    assert!(out.train_losses.is_empty() && out.best_epoch.is_none());
    assert!(out.trend_weights.is_none());
    assert!(out.forecast.iter().all(|&v| v == *out.history.last().unwrap()));
}

#[test]
fn js_entry_points_emit_json() {
    let text = decompose_series_js("sinusoid", 100, 24, 0.0, 0.0, 0, 5).unwrap();
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["trend"].as_array().unwrap().len(), 100);
    let text = train_forecast_js("sinusoid", 600, 24, 0.0, 0.1, 2, "linear", 48, 24, 2, 0.005).unwrap();
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["model"], "linear");
    assert!(v["trend_weights"].is_null());
}
