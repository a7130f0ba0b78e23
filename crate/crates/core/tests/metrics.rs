use dlinear_core::data::WindowPair;
use dlinear_core::metrics::{combine, evaluate, EvalSummary};
use dlinear_core::model::{DLinearModel, Forecaster};
use dlinear_core::Matrix;
use proptest::prelude::*;

const L: usize = 6;
const T: usize = 4;
const C: usize = 2;

fn windows(max: usize) -> impl Strategy<Value = Vec<WindowPair>> {
    prop::collection::vec(
        (
            prop::collection::vec(-5.0f64..5.0, L * C),
            prop::collection::vec(-5.0f64..5.0, T * C),
        ),
        1..max,
    )
    .prop_map(|v| {
        v.into_iter()
            .enumerate()
            .map(|(i, (x, y))| WindowPair {
                input: Matrix::from_vec(L, C, x).unwrap(),
                target: Matrix::from_vec(T, C, y).unwrap(),
                origin_index: L + i,
            })
            .collect()
    })
}

fn score(w: &[WindowPair]) -> EvalSummary {
    let model = DLinearModel::shared(L, T, C);
    evaluate(|x| Ok(model.forecast(x)?.values), w).unwrap()
}

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * a.abs().max(b.abs()).max(1.0)
}

proptest! {
    #[test]
    fn duplicating_windows_changes_nothing(w in windows(20)) {
        let doubled: Vec<WindowPair> = w.iter().chain(&w).cloned().collect();
        let (a, b) = (score(&w), score(&doubled));
        prop_assert!(close(a.mse, b.mse, 1e-12) && close(a.mae, b.mae, 1e-12));
        prop_assert_eq!(b.n_windows, 2 * a.n_windows);
    }

    #[test]
    fn shifting_prediction_and_target_together(w in windows(20), shift in -100.0f64..100.0) {
        let model = DLinearModel::shared(L, T, C);
        let shifted: Vec<WindowPair> = w.iter().map(|p| WindowPair { target: p.target.map(|v| v + shift), ..p.clone() }).collect();
        let a = score(&w);
        let b = evaluate(|x| Ok(model.forecast(x)?.values.map(|v| v + shift)), &shifted).unwrap();
        prop_assert!(close(a.mse, b.mse, 1e-9) && close(a.mae, b.mae, 1e-9));
    }

    #[test]
    fn mae_bounded_by_rmse(w in windows(20)) {
        let s = score(&w);
        prop_assert!(s.mae <= s.mse.sqrt() * (1.0 + 1e-12));
    }

    #[test]
    fn partitions_recombine(w in windows(30), cuts in prop::collection::vec(any::<prop::sample::Index>(), 0..4)) {
        let mut at: Vec<usize> = cuts.iter().map(|c| c.index(w.len())).filter(|&i| i > 0).collect();
        at.sort_unstable();
        at.dedup();
        let mut parts = Vec::new();
        let mut start = 0;
        for &end in at.iter().chain(std::iter::once(&w.len())) {
            parts.push(score(&w[start..end]));
            start = end;
        }
        let whole = score(&w);
        let merged = combine(&parts).unwrap();
        prop_assert!((merged.mse - whole.mse).abs() <= 1e-12 * whole.mse.max(1.0));
        prop_assert!((merged.mae - whole.mae).abs() <= 1e-12 * whole.mae.max(1.0));
        prop_assert_eq!(merged.n_windows, whole.n_windows);
    }
}
