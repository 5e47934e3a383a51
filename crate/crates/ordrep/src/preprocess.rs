//! Feature scaling and target discretization.

use crate::data::Dataset;
use crate::error::{Error, Result};

/// Columnwise min–max scaler: `x' = (x - min) / (max - min)`.
///
/// Fitted on training data only; applying it to out-of-range test points
/// extrapolates linearly (no clamping). A constant column maps to 0.
#[derive(Clone, Debug, PartialEq)]
pub struct MinMaxScaler {
    min: Vec<f64>,
    max: Vec<f64>,
}

impl MinMaxScaler {
    /// Stores the columnwise extrema of the dataset's features.
    pub fn fit(dataset: &Dataset) -> Result<Self> {
        if dataset.is_empty() {
            return Err(Error::EmptyDataset);
        }
        let p = dataset.dim();
        let mut min = vec![f64::INFINITY; p];
        let mut max = vec![f64::NEG_INFINITY; p];
        for row in dataset.features() {
            for d in 0..p {
                min[d] = min[d].min(row[d]);
                max[d] = max[d].max(row[d]);
            }
        }
        Ok(MinMaxScaler { min, max })
    }

    pub fn min(&self) -> &[f64] {
        &self.min
    }

    pub fn max(&self) -> &[f64] {
        &self.max
    }

    pub fn apply(&self, x: &[f64]) -> Result<Vec<f64>> {
        if x.len() != self.min.len() {
            return Err(Error::DimensionMismatch {
                expected: self.min.len(),
                got: x.len(),
            });
        }
        Ok(x.iter()
            .enumerate()
            .map(|(d, &v)| {
                let span = self.max[d] - self.min[d];
                if span == 0.0 {
                    0.0
                } else {
                    (v - self.min[d]) / span
                }
            })
            .collect())
    }

    /// Scales every row, keeping labels and class count.
    pub fn transform(&self, dataset: &Dataset) -> Result<Dataset> {
        let features = dataset
            .features()
            .iter()
            .map(|row| self.apply(row))
            .collect::<Result<Vec<_>>>()?;
        Dataset::new(features, dataset.labels().to_vec(), dataset.num_classes())
    }
}

/// Discretizes a regression target into `k` ordinal labels by equal
/// frequency binning.
///
/// Sorted values are cut at positions `ceil(i*n/k)`; duplicates never
/// straddle a boundary — every occurrence of a value takes the bin of its
/// first occurrence in sort order, so the label is a function of the
/// value and bin sizes differ by at most the duplicate-run lengths.
pub fn equal_frequency_bins(values: &[f64], k: usize) -> Result<Vec<usize>> {
    let n = values.len();
    if k < 2 {
        return Err(Error::InvalidArgument(format!("need k >= 2, got {k}")));
    }
    if n < k {
        return Err(Error::InvalidArgument(format!(
            "cannot cut {n} values into {k} bins"
        )));
    }
    if values.iter().any(|v| !v.is_finite()) {
        return Err(Error::InvalidArgument("non-finite value".into()));
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| values[a].partial_cmp(&values[b]).unwrap());

    // raw bin of sorted position t: 1 + #{i in 1..k : ceil(i*n/k) <= t}
    let cuts: Vec<usize> = (1..k).map(|i| (i * n).div_ceil(k)).collect();
    let raw_bin = |t: usize| 1 + cuts.iter().filter(|&&c| c <= t).count();

    let mut labels = vec![0usize; n];
    let mut run_start = 0;
    for t in 0..n {
        if values[order[t]] != values[order[run_start]] {
            run_start = t;
        }
        labels[order[t]] = raw_bin(run_start);
    }
    Ok(labels)
}
