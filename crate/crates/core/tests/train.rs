use dlinear_core::data::{apply_scaler, fit_scaler, make_windows, Direction, TimeSeries, WindowPair};
use dlinear_core::model::{DLinearModel, LinearMap, LinearModel, Trainable};
use dlinear_core::synthetic::{generate, SyntheticKind, SyntheticSpec};
use dlinear_core::train::*;
use dlinear_core::Matrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn standardized_windows(kind: SyntheticKind, n: usize, l: usize, t: usize) -> Vec<WindowPair> {
    let spec = SyntheticSpec {
        channels: 2,
        noise_std: 0.2,
        seed: 4,
        ..SyntheticSpec::new(kind, n)
    };
    let raw = generate(&spec).unwrap();
    let scaled = apply_scaler(&raw, &fit_scaler(&raw).unwrap(), Direction::Forward).unwrap();
    make_windows(&scaled, None, l, t).unwrap().to_vec()
}

#[test]
fn small_gradient_steps_never_increase_the_loss() {
    let windows = standardized_windows(SyntheticKind::TrendPlusSeasonal, 300, 24, 12);
    let mut model = DLinearModel::shared(24, 12, 2);
    let mut sgd = Optimizer::Sgd { lr: 1e-4 };
    let mut prev = f64::INFINITY;
    for _ in 0..10 {
        let (loss, g) = loss_and_grad(&model, &windows).unwrap();
        assert!(loss <= prev, "{loss} > {prev}");
        prev = loss;
        sgd.step(&mut model, &g);
    }
    assert!(
        dataset_mse(&model, &windows).unwrap() < loss_and_grad(&DLinearModel::shared(24, 12, 2), &windows).unwrap().0
    );
}

#[test]
fn restored_model_has_the_minimum_validation_loss() {
    let all = standardized_windows(SyntheticKind::TrendPlusSeasonal, 500, 24, 12);
    let (train, val) = all.split_at(380);
    let cfg = TrainConfig {
        learning_rate: 0.05,
        max_epochs: 12,
        patience: 4,
        ..TrainConfig::default()
    };
    let mut model = DLinearModel::shared(24, 12, 2);
    let report = fit(&mut model, train, val, &cfg).unwrap();
    let min = report.epoch_val_losses.iter().copied().fold(f64::INFINITY, f64::min);
    assert_eq!(report.best_val_loss(), min);
    assert_eq!(dataset_mse(&model, val).unwrap(), min);
    assert_eq!(report.final_params_snapshot_id, format!("epoch-{}", report.best_epoch));
    assert_eq!(report.epoch_train_losses.len(), report.epoch_val_losses.len());
}

#[test]
fn adam_state_is_reproducible() {
    let windows = standardized_windows(SyntheticKind::Sinusoid, 200, 16, 8);
    let trace = || {
        let mut model = LinearModel::new(16, 8, 2).unwrap();
        let mut opt = Optimizer::from_config(&TrainConfig::default());
        for chunk in windows.chunks(32).take(5) {
            let g = grad(&model, chunk).unwrap();
            opt.step(&mut model, &g);
        }
        let Optimizer::Adam(adam) = opt else { unreachable!() };
        assert_eq!(adam.steps(), 5);
        let (m, v) = adam.moments();
        (m.to_vec(), v.to_vec(), model)
    };
    assert_eq!(trace(), trace());
}

#[test]
fn identical_seeds_give_identical_loss_curves() {
    let all = standardized_windows(SyntheticKind::TrendPlusSeasonal, 400, 24, 12);
    let (train, val) = all.split_at(300);
    let cfg = TrainConfig {
        max_epochs: 4,
        patience: 4,
        seed: 17,
        ..TrainConfig::default()
    };
    let go = || {
        let mut m = DLinearModel::shared(24, 12, 2);
        fit(&mut m, train, val, &cfg).unwrap()
    };
    let (a, b) = (go(), go());
    assert_eq!(a.epoch_train_losses, b.epoch_train_losses);
    assert_eq!(a, b);
}

#[test]
fn learns_the_identity_map() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let pairs: Vec<WindowPair> = (0..64)
        .map(|i| {
            let x = Matrix::from_rows(&[[rng.random_range(-2.0..2.0)]]).unwrap();
            WindowPair {
                input: x.clone(),
                target: x,
                origin_index: i,
            }
        })
        .collect();
    let mut model = LinearModel::from_map(LinearMap::zeros(1, 1), 1).unwrap();
    let cfg = TrainConfig {
        batch_size: 8,
        max_epochs: 200,
        patience: 200,
        ..TrainConfig::default()
    };
    let report = fit(&mut model, &pairs, &pairs, &cfg).unwrap();
    assert!(report.best_val_loss() < 1e-6, "{}", report.best_val_loss());
    assert!((model.map().weight()[0] - 1.0).abs() < 1e-2);
    assert!(model.map().bias()[0].abs() < 1e-2);
}

#[test]
fn constant_series_is_already_solved() {
    let near = make_windows(
        &TimeSeries::from_values(Matrix::filled(60, 1, 0.7)).unwrap(),
        None,
        24,
        12,
    )
    .unwrap();
    assert!(dataset_mse(&DLinearModel::shared(24, 12, 1), &near).unwrap() < 1e-30);

    // dyadic values keep every sum exact
    let series = TimeSeries::from_values(Matrix::filled(120, 3, 0.75)).unwrap();
    let windows = make_windows(&series, None, 16, 12).unwrap();
    let mut model = DLinearModel::shared(16, 12, 3);
    assert_eq!(dataset_mse(&model, &windows).unwrap(), 0.0);
    assert!(grad(&model, &windows.to_vec()).unwrap().is_zero());
    let cfg = TrainConfig {
        max_epochs: 3,
        patience: 3,
        ..TrainConfig::default()
    };
    let report = fit(&mut model, &windows, &windows, &cfg).unwrap();
    assert!(report.epoch_train_losses.iter().all(|&l| l == 0.0));
    assert_eq!(model, DLinearModel::shared(16, 12, 3));
    assert_eq!(model.maps().len(), 2);
}

#[test]
fn gradient_matches_differences_with_unit_floor() {
    let windows = standardized_windows(SyntheticKind::TrendPlusSeasonal, 120, 5, 3);
    let batch = &windows[..8];
    let model = DLinearModel::shared(5, 3, 2);
    let analytic = grad(&model, batch).unwrap().flatten();
    let h = 1e-5;
    let loss = |m: &DLinearModel| loss_and_grad(m, batch).unwrap().0;
    let mut idx = 0;
    for map in 0..2 {
        for p in 0..18 {
            let nudged = |d: f64| {
                let mut m = model.clone();
                let (w, b) = m.maps_mut().into_iter().nth(map).unwrap().parts_mut();
                if p < w.len() {
                    w[p] += d
                } else {
                    b[p - w.len()] += d
                }
                loss(&m)
            };
            let numeric = (nudged(h) - nudged(-h)) / (2.0 * h);
            assert!((analytic[idx] - numeric).abs() / analytic[idx].abs().max(1.0) < 1e-4);
            idx += 1;
        }
    }
    assert_eq!(idx, analytic.len());
}
