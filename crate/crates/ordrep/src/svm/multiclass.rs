//! Conventional multiclass decompositions: one-vs-one voting (cSVM) and
//! the Frank–Hall threshold ensemble (pSVM).

use crate::data::Dataset;
use crate::error::{Error, Result};
use crate::mathutil::{argmax_first, logistic, masses_from_above};
use crate::svm::{BinarySvmModel, Kernel, SmoSettings};

/// One-vs-one ensemble: `K(K-1)/2` binary machines, majority vote.
#[derive(Clone, Debug)]
pub struct OneVsOneSvm {
    pairs: Vec<(usize, usize)>,
    models: Vec<BinarySvmModel>,
    num_classes: usize,
    input_dim: usize,
}

/// Trains the `K(K-1)/2` pairwise machines. Pairs with an empty side
/// propagate the solver's single-class error.
pub fn train_csvm(
    dataset: &Dataset,
    c: f64,
    kernel: Kernel,
    settings: &SmoSettings,
) -> Result<OneVsOneSvm> {
    let k = dataset.num_classes();
    let mut pairs = Vec::new();
    let mut models = Vec::new();
    for lo in 1..=k {
        for hi in lo + 1..=k {
            let mut points = Vec::new();
            let mut y = Vec::new();
            for i in 0..dataset.len() {
                let label = dataset.label(i);
                if label == lo {
                    points.push(dataset.feature(i).to_vec());
                    y.push(-1.0);
                } else if label == hi {
                    points.push(dataset.feature(i).to_vec());
                    y.push(1.0);
                }
            }
            if points.is_empty() {
                return Err(Error::SingleClass);
            }
            let model = BinarySvmModel::train(&points, &y, c, None, kernel, settings)?;
            pairs.push((lo, hi));
            models.push(model);
        }
    }
    Ok(OneVsOneSvm {
        pairs,
        models,
        num_classes: k,
        input_dim: dataset.dim(),
    })
}

impl OneVsOneSvm {
    pub(crate) fn from_parts(
        pairs: Vec<(usize, usize)>,
        models: Vec<BinarySvmModel>,
        num_classes: usize,
        input_dim: usize,
    ) -> Self {
        OneVsOneSvm {
            pairs,
            models,
            num_classes,
            input_dim,
        }
    }

    pub fn num_classes(&self) -> usize {
        self.num_classes
    }

    pub fn input_dim(&self) -> usize {
        self.input_dim
    }

    pub fn num_models(&self) -> usize {
        self.models.len()
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn models(&self) -> &[BinarySvmModel] {
        &self.models
    }

    pub fn votes(&self, x: &[f64]) -> Result<Vec<usize>> {
        self.check_dim(x)?;
        let mut votes = vec![0usize; self.num_classes];
        for ((lo, hi), model) in self.pairs.iter().zip(&self.models) {
            if model.decision(x) > 0.0 {
                votes[hi - 1] += 1;
            } else {
                votes[lo - 1] += 1;
            }
        }
        Ok(votes)
    }

    /// Majority vote; ties go to the smaller class index.
    pub fn predict(&self, x: &[f64]) -> Result<usize> {
        let votes = self.votes(x)?;
        let mut best = 0;
        for (i, &v) in votes.iter().enumerate().skip(1) {
            if v > votes[best] {
                best = i;
            }
        }
        Ok(best + 1)
    }

    fn check_dim(&self, x: &[f64]) -> Result<()> {
        if x.len() != self.input_dim {
            return Err(Error::DimensionMismatch {
                expected: self.input_dim,
                got: x.len(),
            });
        }
        Ok(())
    }
}

/// Frank–Hall ensemble: `K-1` independent machines, machine `i` testing
/// `C > i`. Probabilities are read through a unit-slope logistic link on
/// the raw margins and recombined by differencing.
#[derive(Clone, Debug)]
pub struct FrankHallSvm {
    models: Vec<BinarySvmModel>,
    num_classes: usize,
    input_dim: usize,
}

pub fn train_psvm(
    dataset: &Dataset,
    c: f64,
    kernel: Kernel,
    settings: &SmoSettings,
) -> Result<FrankHallSvm> {
    let k = dataset.num_classes();
    let points: Vec<Vec<f64>> = dataset.features().to_vec();
    let mut models = Vec::with_capacity(k - 1);
    for threshold in 1..k {
        let y: Vec<f64> = dataset
            .labels()
            .iter()
            .map(|&label| if label > threshold { 1.0 } else { -1.0 })
            .collect();
        models.push(BinarySvmModel::train(&points, &y, c, None, kernel, settings)?);
    }
    Ok(FrankHallSvm {
        models,
        num_classes: k,
        input_dim: dataset.dim(),
    })
}

impl FrankHallSvm {
    pub(crate) fn from_parts(
        models: Vec<BinarySvmModel>,
        num_classes: usize,
        input_dim: usize,
    ) -> Self {
        FrankHallSvm {
            models,
            num_classes,
            input_dim,
        }
    }

    pub fn num_classes(&self) -> usize {
        self.num_classes
    }

    pub fn input_dim(&self) -> usize {
        self.input_dim
    }

    pub fn num_models(&self) -> usize {
        self.models.len()
    }

    pub fn models(&self) -> &[BinarySvmModel] {
        &self.models
    }

    /// `Pr(C > i)` estimates for `i = 1..K-1`.
    pub fn cumulative_above(&self, x: &[f64]) -> Result<Vec<f64>> {
        self.check_dim(x)?;
        Ok(self.models.iter().map(|m| logistic(m.decision(x))).collect())
    }

    pub fn class_probabilities(&self, x: &[f64]) -> Result<Vec<f64>> {
        Ok(masses_from_above(&self.cumulative_above(x)?))
    }

    pub fn predict(&self, x: &[f64]) -> Result<usize> {
        let masses = self.class_probabilities(x)?;
        Ok(argmax_first(&masses) + 1)
    }

    fn check_dim(&self, x: &[f64]) -> Result<()> {
        if x.len() != self.input_dim {
            return Err(Error::DimensionMismatch {
                expected: self.input_dim,
                got: x.len(),
            });
        }
        Ok(())
    }
}
