//! Long-term time-series forecasting with decomposition-linear models.
//!
//! A forecaster reads the last `L` steps of a multivariate series and
//! predicts the next `T` steps of every variate in one shot. The main model
//! splits each variate's history into a moving-average trend and a
//! remainder, applies one linear map to each, and sums the results.
//!
//! Modules follow the pipeline: [`data`] loads, splits, standardizes and
//! windows series; [`decompose`] extracts trends; [`model`] holds the
//! forecasters; [`train`] fits them; [`metrics`] scores them; [`synthetic`]
//! generates test signals; [`bench`] runs whole experiments.

pub mod bench;
pub mod data;
pub mod decompose;
pub mod error;
pub mod matrix;
pub mod metrics;
pub mod model;
pub mod reference;
pub mod synthetic;
pub mod train;

pub use error::{Error, Result};
pub use matrix::Matrix;
