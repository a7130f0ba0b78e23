//! Moving-average seasonal-trend decomposition.
//!
//! The trend is a centered moving average over an odd kernel with the
//! series replicated at both ends, so it keeps the input length. The
//! remainder is whatever the trend does not explain.

use crate::error::{Error, Result};
use crate::matrix::Matrix;

pub const DEFAULT_KERNEL_SIZE: usize = 25;

/// Trend and remainder blocks of one input, both shaped like the input.
#[derive(Debug, Clone, PartialEq)]
pub struct DecompPair {
    pub trend: Matrix,
    pub remainder: Matrix,
    pub kernel_size: usize,
}

pub fn check_kernel(kernel_size: usize) -> Result<()> {
    if kernel_size == 0 || kernel_size.is_multiple_of(2) {
        return Err(Error::config(format!(
            "moving-average kernel size must be odd and positive, got {kernel_size}"
        )));
    }
    Ok(())
}

/// Trend of a single column into `trend`, which must have the same length.
pub(crate) fn moving_average_into(column: &[f64], kernel_size: usize, trend: &mut [f64]) {
    let n = column.len();
    let half = (kernel_size - 1) / 2;
    let first = column[0];
    let last = column[n - 1];
    let k = kernel_size as f64;
    for (t, out) in trend.iter_mut().enumerate() {
        let mut sum = 0.0;
        // padded index p covers t - half ..= t + half
        for p in t as isize - half as isize..=(t + half) as isize {
            sum += if p < 0 {
                first
            } else if p as usize >= n {
                last
            } else {
                column[p as usize]
            };
        }
        *out = sum / k;
    }
}

/// Decomposes one column into `(trend, remainder)`.
pub fn decompose_column(column: &[f64], kernel_size: usize) -> Result<(Vec<f64>, Vec<f64>)> {
    check_kernel(kernel_size)?;
    if column.is_empty() {
        return Err(Error::infeasible("cannot decompose an empty column"));
    }
    let mut trend = vec![0.0; column.len()];
    moving_average_into(column, kernel_size, &mut trend);
    let remainder = column.iter().zip(&trend).map(|(x, t)| x - t).collect();
    Ok((trend, remainder))
}

/// Decomposes every column of an `L x C` block independently.
pub fn decompose(input: &Matrix, kernel_size: usize) -> Result<DecompPair> {
    check_kernel(kernel_size)?;
    if input.rows() == 0 {
        return Err(Error::infeasible("cannot decompose an empty block"));
    }
    let mut trend = Matrix::zeros(input.rows(), input.cols());
    let mut remainder = Matrix::zeros(input.rows(), input.cols());
    let mut col_trend = vec![0.0; input.rows()];
    for j in 0..input.cols() {
        let col = input.column(j);
        moving_average_into(&col, kernel_size, &mut col_trend);
        for (t, (x, tr)) in col.iter().zip(&col_trend).enumerate() {
            trend.set(t, j, *tr);
            remainder.set(t, j, x - tr);
        }
    }
    Ok(DecompPair {
        trend,
        remainder,
        kernel_size,
    })
}
