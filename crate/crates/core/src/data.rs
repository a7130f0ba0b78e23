//! Benchmark series loading, chronological splitting, per-variate
//! standardization and sliding-window materialization.

use std::borrow::Cow;
use std::fs::File;
use std::io::{Read, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::Matrix;

/// A multivariate series: rows are time steps, columns are variates.
#[derive(Debug, Clone, PartialEq)]
pub struct TimeSeries {
    values: Matrix,
    timestamps: Vec<String>,
    variate_names: Vec<String>,
    /// Header of the timestamp column written by [`TimeSeries::write_csv`].
    time_column: Option<String>,
}

impl TimeSeries {
    pub fn new(values: Matrix, timestamps: Vec<String>, variate_names: Vec<String>) -> Result<Self> {
        if values.rows() == 0 || values.cols() == 0 {
            return Err(Error::infeasible("a series needs at least one row and one column"));
        }
        if timestamps.len() != values.rows() {
            return Err(Error::shape(format!("{} timestamps", values.rows()), timestamps.len()));
        }
        if variate_names.len() != values.cols() {
            return Err(Error::shape(
                format!("{} variate names", values.cols()),
                variate_names.len(),
            ));
        }
        if !values.is_finite() {
            return Err(Error::infeasible("series contains non-finite values"));
        }
        if let Some(row) = first_non_increasing(&timestamps) {
            return Err(Error::infeasible(format!(
                "timestamps are not strictly increasing at row {row} ({:?} after {:?})",
                timestamps[row],
                timestamps[row - 1]
            )));
        }
        Ok(TimeSeries {
            values,
            timestamps,
            variate_names,
            time_column: Some("date".into()),
        })
    }

    /// Sets the timestamp column header; `None` writes values only.
    pub fn with_time_column(mut self, name: Option<String>) -> Self {
        self.time_column = name;
        self
    }

    pub fn time_column(&self) -> Option<&str> {
        self.time_column.as_deref()
    }

    /// Series with integer timestamps `0..N` and names `x0, x1, ...`.
    pub fn from_values(values: Matrix) -> Result<Self> {
        let timestamps = (0..values.rows()).map(|i| i.to_string()).collect();
        let names = (0..values.cols()).map(|j| format!("x{j}")).collect();
        Self::new(values, timestamps, names)
    }

    pub fn values(&self) -> &Matrix {
        &self.values
    }

    pub fn timestamps(&self) -> &[String] {
        &self.timestamps
    }

    pub fn variate_names(&self) -> &[String] {
        &self.variate_names
    }

    /// Number of time steps.
    pub fn len(&self) -> usize {
        self.values.rows()
    }

    pub fn is_empty(&self) -> bool {
        self.values.rows() == 0
    }

    /// Number of variates.
    pub fn channels(&self) -> usize {
        self.values.cols()
    }

    /// Rows `start..end`; both bounds are clamped to the series.
    pub fn slice(&self, start: usize, end: usize) -> TimeSeries {
        let end = end.min(self.len());
        let start = start.min(end);
        TimeSeries {
            values: self.values.slice_rows(start, end),
            timestamps: self.timestamps[start..end].to_vec(),
            variate_names: self.variate_names.clone(),
            time_column: self.time_column.clone(),
        }
    }

    /// Same timestamps and names, new values of the same shape.
    pub fn with_values(&self, values: Matrix) -> Result<TimeSeries> {
        values.ensure_shape(self.len(), self.channels())?;
        Ok(TimeSeries {
            values,
            timestamps: self.timestamps.clone(),
            variate_names: self.variate_names.clone(),
            time_column: self.time_column.clone(),
        })
    }

    /// Writes the series as CSV, led by the timestamp column when it has one.
    pub fn write_csv(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        let file = File::create(path).map_err(|e| Error::io(path, e))?;
        self.write_csv_to(file).map_err(|e| match e {
            Error::Csv(c) if c.is_io_error() => Error::io(path, std::io::Error::other(c.to_string())),
            other => other,
        })
    }

    pub fn write_csv_to<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        let mut header: Vec<String> = self.time_column.iter().cloned().collect();
        header.extend(self.variate_names.iter().cloned());
        w.write_record(&header)?;
        for r in 0..self.len() {
            let mut rec: Vec<String> = self.time_column.iter().map(|_| self.timestamps[r].clone()).collect();
            rec.extend(self.values.row(r).iter().map(|v| v.to_string()));
            w.write_record(&rec)?;
        }
        w.flush().map_err(|e| Error::Csv(e.into()))?;
        Ok(())
    }
}

/// Returns the first row whose timestamp does not exceed its predecessor,
/// for timestamp columns that are comparable (all numeric, or equal-width
/// date strings). Other columns are left to row order.
fn first_non_increasing(ts: &[String]) -> Option<usize> {
    if ts.len() < 2 {
        return None;
    }
    let numeric: Option<Vec<f64>> = ts.iter().map(|s| s.trim().parse::<f64>().ok()).collect();
    if let Some(nums) = numeric {
        return (1..nums.len()).find(|&i| nums[i] <= nums[i - 1]);
    }
    let width = ts[0].len();
    let datelike = ts
        .iter()
        .all(|s| s.len() == width && s.starts_with(|c: char| c.is_ascii_digit()));
    if datelike {
        return (1..ts.len()).find(|&i| ts[i] <= ts[i - 1]);
    }
    None
}

/// Which column, if any, carries timestamps.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct CsvSchema {
    #[serde(default)]
    pub timestamp_column: Option<String>,
}

pub fn load_csv(path: impl AsRef<Path>, schema: &CsvSchema) -> Result<TimeSeries> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    parse_csv(file, schema)
}

/// Parses CSV text: a header row, then one row per time step. The timestamp
/// column is the configured one, else a first column named `date`, else a
/// first column whose first value is non-numeric.
pub fn parse_csv<R: Read>(reader: R, schema: &CsvSchema) -> Result<TimeSeries> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .from_reader(reader);
    let headers: Vec<String> = rdr.headers()?.iter().map(str::to_string).collect();
    let records: Vec<csv::StringRecord> = rdr.records().collect::<Result<_, _>>()?;
    if records.len() < 2 {
        return Err(Error::infeasible(format!(
            "need at least 2 data rows, found {}",
            records.len()
        )));
    }

    let ts_col = match &schema.timestamp_column {
        Some(name) => Some(
            headers
                .iter()
                .position(|h| h == name)
                .ok_or_else(|| Error::config(format!("timestamp column {name:?} not in header")))?,
        ),
        None => {
            let named_date = headers.first().is_some_and(|h| h.eq_ignore_ascii_case("date"));
            let non_numeric = records[0].get(0).is_some_and(|v| v.parse::<f64>().is_err());
            (named_date || non_numeric).then_some(0)
        }
    };

    let value_cols: Vec<usize> = (0..headers.len()).filter(|&j| Some(j) != ts_col).collect();
    if value_cols.is_empty() {
        return Err(Error::infeasible("no value columns"));
    }
    let mut data = Vec::with_capacity(records.len() * value_cols.len());
    let mut timestamps = Vec::with_capacity(records.len());
    for (i, rec) in records.iter().enumerate() {
        // row numbers in errors are 1-based data rows
        let row = i + 1;
        if rec.len() != headers.len() {
            return Err(Error::Parse {
                row,
                column: "<record>".into(),
                value: format!("{} fields, header has {}", rec.len(), headers.len()),
            });
        }
        timestamps.push(match ts_col {
            Some(c) => rec[c].to_string(),
            None => i.to_string(),
        });
        for &j in &value_cols {
            let cell = &rec[j];
            match cell.parse::<f64>() {
                Ok(v) if v.is_finite() => data.push(v),
                _ => {
                    return Err(Error::Parse {
                        row,
                        column: headers[j].clone(),
                        value: cell.to_string(),
                    })
                }
            }
        }
    }
    let names = value_cols.iter().map(|&j| headers[j].clone()).collect();
    let values = Matrix::from_vec(records.len(), value_cols.len(), data)?;
    Ok(TimeSeries::new(values, timestamps, names)?.with_time_column(ts_col.map(|c| headers[c].clone())))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SplitMode {
    Ratio,
    EttCalendar,
}

/// How a series is cut into train / validation / test segments.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SplitSpec {
    pub mode: SplitMode,
    #[serde(default = "default_train_fraction")]
    pub train_fraction: f64,
    #[serde(default = "default_val_fraction")]
    pub val_fraction: f64,
    #[serde(default = "default_test_fraction")]
    pub test_fraction: f64,
    #[serde(default)]
    pub train_steps: usize,
    #[serde(default)]
    pub val_steps: usize,
    #[serde(default)]
    pub test_steps: usize,
    #[serde(default)]
    pub train_truncate_steps: Option<usize>,
}

fn default_train_fraction() -> f64 {
    0.7
}
fn default_val_fraction() -> f64 {
    0.1
}
fn default_test_fraction() -> f64 {
    0.2
}

impl Default for SplitSpec {
    fn default() -> Self {
        Self::ratio(0.7, 0.1, 0.2)
    }
}

impl SplitSpec {
    pub fn ratio(train: f64, val: f64, test: f64) -> Self {
        SplitSpec {
            mode: SplitMode::Ratio,
            train_fraction: train,
            val_fraction: val,
            test_fraction: test,
            train_steps: 0,
            val_steps: 0,
            test_steps: 0,
            train_truncate_steps: None,
        }
    }

    pub fn calendar(train: usize, val: usize, test: usize) -> Self {
        SplitSpec {
            mode: SplitMode::EttCalendar,
            train_steps: train,
            val_steps: val,
            test_steps: test,
            ..Self::ratio(0.7, 0.1, 0.2)
        }
    }

    /// 12/4/4 months of hourly data.
    pub fn ett_hourly() -> Self {
        Self::calendar(12 * 30 * 24, 4 * 30 * 24, 4 * 30 * 24)
    }

    /// 12/4/4 months of 15-minute data.
    pub fn ett_minute() -> Self {
        Self::calendar(12 * 30 * 24 * 4, 4 * 30 * 24 * 4, 4 * 30 * 24 * 4)
    }

    pub fn with_truncation(mut self, steps: Option<usize>) -> Self {
        self.train_truncate_steps = steps;
        self
    }

    /// Segment lengths `(train, val, test)` before truncation for a series of `n` rows.
    pub fn segment_lengths(&self, n: usize) -> Result<(usize, usize, usize)> {
        let (train, val, test) = match self.mode {
            SplitMode::Ratio => {
                let fracs = [self.train_fraction, self.val_fraction, self.test_fraction];
                if fracs.iter().any(|f| !(*f > 0.0 && *f < 1.0)) {
                    return Err(Error::config(format!("split fractions must lie in (0,1): {fracs:?}")));
                }
                let sum: f64 = fracs.iter().sum();
                if (sum - 1.0).abs() > 1e-9 {
                    return Err(Error::config(format!("split fractions sum to {sum}, not 1")));
                }
                // floor, with a tolerance for products like 10 * 0.7
                let train = (n as f64 * self.train_fraction + 1e-9).floor() as usize;
                let val = (n as f64 * self.val_fraction + 1e-9).floor() as usize;
                (train, val, n - train - val)
            }
            SplitMode::EttCalendar => {
                let steps = (self.train_steps, self.val_steps, self.test_steps);
                if steps.0 == 0 || steps.1 == 0 || steps.2 == 0 {
                    return Err(Error::config(format!(
                        "calendar split steps must be positive: {steps:?}"
                    )));
                }
                if steps.0 + steps.1 + steps.2 > n {
                    return Err(Error::infeasible(format!(
                        "calendar split needs {} rows, series has {n}",
                        steps.0 + steps.1 + steps.2
                    )));
                }
                steps
            }
        };
        if let Some(k) = self.train_truncate_steps {
            if k == 0 || k > train {
                return Err(Error::config(format!(
                    "train_truncate_steps {k} must be in 1..={train}"
                )));
            }
        }
        Ok((train, val, test))
    }
}

/// Row boundaries of a split within its source series.
///
/// `train_start` is non-zero only when the train segment was truncated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplitBoundaries {
    pub train_start: usize,
    pub train_end: usize,
    pub val_end: usize,
    pub test_end: usize,
    pub total: usize,
}

impl SplitBoundaries {
    pub fn unused_tail(&self) -> usize {
        self.total - self.test_end
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Segment {
    Train,
    Val,
    Test,
}

#[derive(Debug, Clone)]
pub struct Split {
    pub train: TimeSeries,
    pub val: TimeSeries,
    pub test: TimeSeries,
    pub boundaries: SplitBoundaries,
}

pub fn split(series: &TimeSeries, spec: &SplitSpec) -> Result<Split> {
    let boundaries = split_boundaries(series.len(), spec)?;
    Ok(Split {
        train: series.slice(boundaries.train_start, boundaries.train_end),
        val: series.slice(boundaries.train_end, boundaries.val_end),
        test: series.slice(boundaries.val_end, boundaries.test_end),
        boundaries,
    })
}

pub fn split_boundaries(n: usize, spec: &SplitSpec) -> Result<SplitBoundaries> {
    let (train, val, test) = spec.segment_lengths(n)?;
    let train_start = spec.train_truncate_steps.map_or(0, |k| train - k);
    Ok(SplitBoundaries {
        train_start,
        train_end: train,
        val_end: train + val,
        test_end: train + val + test,
        total: n,
    })
}

impl Split {
    /// Sliding windows over one segment, reading look-back context from the
    /// rows of `series` that precede it. The train segment gets no context.
    pub fn windows(&self, series: &TimeSeries, which: Segment, lookback: usize, horizon: usize) -> Result<WindowSet> {
        let b = &self.boundaries;
        match which {
            Segment::Train => make_windows(&self.train, None, lookback, horizon),
            Segment::Val => {
                let ctx = series.slice(b.train_end.saturating_sub(lookback), b.train_end);
                make_windows(&self.val, Some(&ctx), lookback, horizon)
            }
            Segment::Test => {
                let ctx = series.slice(b.val_end.saturating_sub(lookback), b.val_end);
                make_windows(&self.test, Some(&ctx), lookback, horizon)
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Forward,
    Inverse,
}

/// Per-variate standardization fitted on a train segment.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Scaler {
    pub means: Vec<f64>,
    pub stds: Vec<f64>,
    pub epsilon: f64,
}

pub const SCALER_EPSILON: f64 = 1e-8;

/// Means and population standard deviations (divisor N) per column.
pub fn fit_scaler(train: &TimeSeries) -> Result<Scaler> {
    let n = train.len();
    if n < 2 {
        return Err(Error::infeasible(format!("scaler needs at least 2 rows, got {n}")));
    }
    let v = train.values();
    let c = train.channels();
    let mut means = vec![0.0; c];
    for r in 0..n {
        for (m, x) in means.iter_mut().zip(v.row(r)) {
            *m += x;
        }
    }
    for m in &mut means {
        *m /= n as f64;
    }
    let mut vars = vec![0.0; c];
    for r in 0..n {
        for ((s, x), m) in vars.iter_mut().zip(v.row(r)).zip(&means) {
            *s += (x - m) * (x - m);
        }
    }
    let stds = vars.iter().map(|s| (s / n as f64).sqrt()).collect();
    Ok(Scaler {
        means,
        stds,
        epsilon: SCALER_EPSILON,
    })
}

impl Scaler {
    pub fn channels(&self) -> usize {
        self.means.len()
    }

    fn scale(&self, j: usize) -> f64 {
        self.stds[j].max(self.epsilon)
    }

    pub fn apply_matrix(&self, values: &Matrix, direction: Direction) -> Result<Matrix> {
        if values.cols() != self.channels() {
            return Err(Error::shape(format!("{} columns", self.channels()), values.cols()));
        }
        let mut out = values.clone();
        for r in 0..out.rows() {
            for (j, x) in out.row_mut(r).iter_mut().enumerate() {
                *x = match direction {
                    Direction::Forward => (*x - self.means[j]) / self.scale(j),
                    Direction::Inverse => *x * self.scale(j) + self.means[j],
                };
            }
        }
        Ok(out)
    }
}

pub fn apply_scaler(series: &TimeSeries, scaler: &Scaler, direction: Direction) -> Result<TimeSeries> {
    series.with_values(scaler.apply_matrix(series.values(), direction)?)
}

/// Serializable record of a split and its fitted scaler.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SplitDocument {
    pub mode: SplitMode,
    pub boundaries: SplitBoundaries,
    pub means: Vec<f64>,
    pub stds: Vec<f64>,
    pub epsilon: f64,
}

impl SplitDocument {
    pub fn new(mode: SplitMode, boundaries: SplitBoundaries, scaler: &Scaler) -> Self {
        SplitDocument {
            mode,
            boundaries,
            means: scaler.means.clone(),
            stds: scaler.stds.clone(),
            epsilon: scaler.epsilon,
        }
    }

    pub fn scaler(&self) -> Scaler {
        Scaler {
            means: self.means.clone(),
            stds: self.stds.clone(),
            epsilon: self.epsilon,
        }
    }
}

/// One supervised example.
#[derive(Debug, Clone, PartialEq)]
pub struct WindowPair {
    /// `L x C` history.
    pub input: Matrix,
    /// `T x C` future block.
    pub target: Matrix,
    /// Row of the first target step, counted from the start of the segment.
    pub origin_index: usize,
}

/// All sliding windows of one segment, materialized lazily.
#[derive(Debug, Clone)]
pub struct WindowSet {
    /// Context rows followed by the segment rows.
    data: Matrix,
    context_rows: usize,
    first_origin: usize,
    count: usize,
    lookback: usize,
    horizon: usize,
}

pub fn make_windows(
    segment: &TimeSeries,
    context: Option<&TimeSeries>,
    lookback: usize,
    horizon: usize,
) -> Result<WindowSet> {
    if lookback == 0 || horizon == 0 {
        return Err(Error::config(format!(
            "look-back ({lookback}) and horizon ({horizon}) must be positive"
        )));
    }
    let ctx_len = context.map_or(0, |c| c.len().min(lookback));
    let data = match context {
        Some(c) if ctx_len > 0 => {
            if c.channels() != segment.channels() {
                return Err(Error::shape(
                    format!("{} context columns", segment.channels()),
                    c.channels(),
                ));
            }
            c.values()
                .slice_rows(c.len() - ctx_len, c.len())
                .vstack(segment.values())?
        }
        _ => segment.values().clone(),
    };
    let n = segment.len();
    let first_origin = lookback - ctx_len;
    if n < horizon || first_origin > n - horizon {
        return Err(Error::infeasible(format!(
            "segment too short for look-back L={lookback} and horizon T={horizon}: \
             {n} rows available plus {ctx_len} context rows, need at least {} in total",
            lookback + horizon
        )));
    }
    Ok(WindowSet {
        data,
        context_rows: ctx_len,
        first_origin,
        count: n - horizon - first_origin + 1,
        lookback,
        horizon,
    })
}

impl WindowSet {
    pub fn len(&self) -> usize {
        self.count
    }

    pub fn is_empty(&self) -> bool {
        self.count == 0
    }

    pub fn lookback(&self) -> usize {
        self.lookback
    }

    pub fn horizon(&self) -> usize {
        self.horizon
    }

    pub fn channels(&self) -> usize {
        self.data.cols()
    }

    pub fn pair(&self, i: usize) -> WindowPair {
        assert!(i < self.count, "window {i} out of range ({})", self.count);
        let origin = self.first_origin + i;
        let at = self.context_rows + origin;
        WindowPair {
            input: self.data.slice_rows(at - self.lookback, at),
            target: self.data.slice_rows(at, at + self.horizon),
            origin_index: origin,
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = WindowPair> + '_ {
        (0..self.count).map(|i| self.pair(i))
    }

    pub fn to_vec(&self) -> Vec<WindowPair> {
        self.iter().collect()
    }
}

/// Random-access source of windows consumed by training and evaluation.
pub trait WindowSource {
    fn window_count(&self) -> usize;
    fn window(&self, i: usize) -> Cow<'_, WindowPair>;
}

impl WindowSource for WindowSet {
    fn window_count(&self) -> usize {
        self.count
    }
    fn window(&self, i: usize) -> Cow<'_, WindowPair> {
        Cow::Owned(self.pair(i))
    }
}

impl WindowSource for [WindowPair] {
    fn window_count(&self) -> usize {
        self.len()
    }
    fn window(&self, i: usize) -> Cow<'_, WindowPair> {
        Cow::Borrowed(&self[i])
    }
}

impl WindowSource for Vec<WindowPair> {
    fn window_count(&self) -> usize {
        self.len()
    }
    fn window(&self, i: usize) -> Cow<'_, WindowPair> {
        Cow::Borrowed(&self[i])
    }
}
