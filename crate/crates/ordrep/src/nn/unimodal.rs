//! The unimodal binomial output model (uNN).
//!
//! A single logistic output `p` parameterizes a binomial distribution
//! `B(K-1, p)` over the classes, which is unimodal (two equal contiguous
//! modes at worst). The network is trained by direct regression of `p`
//! onto its per-class optimum `(c-1)/(K-1)`; prediction rounds
//! `1 + (K-1) p` to the nearest class.

use crate::data::Dataset;
use crate::error::{Error, Result};
use crate::nn::mlp::{train_mlp, Activation, MlpArchitecture, MlpModel, TrainOpts};

/// Binomial class posteriors `P(C_k) = C(K-1, k-1) p^(k-1) (1-p)^(K-k)`,
/// computed by the forward recursion
/// `P(C_k) = P(C_{k-1}) * p (K-k+1) / ((k-1)(1-p))` from
/// `P(C_1) = (1-p)^(K-1)`. The endpoints `p = 0` and `p = 1` degenerate
/// to one-hot vectors.
pub fn binomial_posteriors(p: f64, num_classes: usize) -> Result<Vec<f64>> {
    if num_classes < 2 {
        return Err(Error::InvalidArgument("need at least 2 classes".into()));
    }
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidArgument(format!(
            "binomial parameter must lie in [0, 1], got {p}"
        )));
    }
    let k = num_classes;
    let mut posterior = vec![0.0; k];
    if p == 0.0 {
        posterior[0] = 1.0;
        return Ok(posterior);
    }
    if p == 1.0 {
        posterior[k - 1] = 1.0;
        return Ok(posterior);
    }
    posterior[0] = (1.0 - p).powi(k as i32 - 1);
    for class in 2..=k {
        posterior[class - 1] = posterior[class - 2] * p * (k - class + 1) as f64
            / ((class - 1) as f64 * (1.0 - p));
    }
    Ok(posterior)
}

/// Squared distance between the binomial posterior vector and the one-hot
/// truth: `sum_k |P(C_k) - delta(k - c)|^2`.
pub fn unimodal_error(p: f64, true_class: usize, num_classes: usize) -> Result<f64> {
    if true_class < 1 || true_class > num_classes {
        return Err(Error::LabelOutOfRange {
            label: true_class,
            num_classes,
        });
    }
    let posterior = binomial_posteriors(p, num_classes)?;
    Ok(posterior
        .iter()
        .enumerate()
        .map(|(idx, &prob)| {
            let target = if idx + 1 == true_class { 1.0 } else { 0.0 };
            (prob - target) * (prob - target)
        })
        .sum())
}

/// The regression target that maximizes `P(C_c)`: `(c-1)/(K-1)`.
pub fn optimal_p(class: usize, num_classes: usize) -> f64 {
    (class - 1) as f64 / (num_classes - 1) as f64
}

/// Prediction rule: round `1 + (K-1) p` to the nearest class, halves
/// away from zero (so exact midpoints go to the upper class).
pub fn unimodal_class(p: f64, num_classes: usize) -> usize {
    let raw = (1.0 + (num_classes - 1) as f64 * p).round();
    (raw as usize).clamp(1, num_classes)
}

/// Argmax of the binomial posteriors; an exact two-class tie goes to the
/// larger class.
pub fn binomial_argmax(p: f64, num_classes: usize) -> Result<usize> {
    let posterior = binomial_posteriors(p, num_classes)?;
    let mut best = 0;
    for (idx, &prob) in posterior.iter().enumerate().skip(1) {
        if prob >= posterior[best] {
            best = idx;
        }
    }
    Ok(best + 1)
}

/// Network with a single logistic output regressed on the binomial
/// parameter.
#[derive(Clone, Debug)]
pub struct UnimodalNnModel {
    mlp: MlpModel,
    num_classes: usize,
}

pub fn train_unn(
    dataset: &Dataset,
    hidden_units: usize,
    opts: &TrainOpts,
) -> Result<(UnimodalNnModel, Vec<f64>)> {
    let k = dataset.num_classes();
    let targets: Vec<Vec<f64>> = dataset
        .labels()
        .iter()
        .map(|&label| vec![optimal_p(label, k)])
        .collect();
    let arch =
        MlpArchitecture::single_hidden(dataset.dim(), hidden_units, 1, Activation::Logistic);
    let (mlp, trace) = train_mlp(dataset.features(), &targets, &arch, opts)?;
    Ok((
        UnimodalNnModel {
            mlp,
            num_classes: k,
        },
        trace,
    ))
}

impl UnimodalNnModel {
    pub(crate) fn from_parts(mlp: MlpModel, num_classes: usize) -> Self {
        UnimodalNnModel { mlp, num_classes }
    }

    pub fn mlp(&self) -> &MlpModel {
        &self.mlp
    }

    pub fn num_classes(&self) -> usize {
        self.num_classes
    }

    pub fn input_dim(&self) -> usize {
        self.mlp.input_dim()
    }

    /// The fitted binomial parameter for a query point.
    pub fn p_value(&self, x: &[f64]) -> Result<f64> {
        if x.len() != self.mlp.input_dim() {
            return Err(Error::DimensionMismatch {
                expected: self.mlp.input_dim(),
                got: x.len(),
            });
        }
        Ok(self.mlp.forward(x)[0])
    }

    pub fn class_probabilities(&self, x: &[f64]) -> Result<Vec<f64>> {
        binomial_posteriors(self.p_value(x)?, self.num_classes)
    }

    pub fn predict(&self, x: &[f64]) -> Result<usize> {
        Ok(unimodal_class(self.p_value(x)?, self.num_classes))
    }
}
