//! Train/test split and resampling protocols.

use crate::data::Dataset;
use crate::error::{Error, Result};
use crate::rng::Prng;

/// Disjoint train/test index sets, reproducible from the stored seed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitPlan {
    pub train: Vec<usize>,
    pub test: Vec<usize>,
    pub seed: u64,
}

/// Uniformly random `n_train`-subset as train, complement as test.
pub fn split_random(dataset: &Dataset, n_train: usize, seed: u64) -> Result<SplitPlan> {
    let n = dataset.len();
    if n_train < 1 || n_train >= n {
        return Err(Error::InvalidArgument(format!(
            "n_train must be in 1..{n}, got {n_train}"
        )));
    }
    let mut indices: Vec<usize> = (0..n).collect();
    let mut rng = Prng::new(seed);
    rng.shuffle(&mut indices);
    let mut train: Vec<usize> = indices[..n_train].to_vec();
    let mut test: Vec<usize> = indices[n_train..].to_vec();
    train.sort_unstable();
    test.sort_unstable();
    Ok(SplitPlan { train, test, seed })
}

/// Leave-one-out folds: fold `i` holds out exactly example `i`.
pub fn loocv_folds(dataset: &Dataset) -> Result<Vec<SplitPlan>> {
    let n = dataset.len();
    if n < 2 {
        return Err(Error::InvalidArgument(format!(
            "leave-one-out needs at least 2 examples, got {n}"
        )));
    }
    Ok((0..n)
        .map(|i| SplitPlan {
            train: (0..n).filter(|&j| j != i).collect(),
            test: vec![i],
            seed: 0,
        })
        .collect())
}
