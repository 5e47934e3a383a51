//! Conventional and Frank–Hall network classifiers.

use crate::data::Dataset;
use crate::error::{Error, Result};
use crate::mathutil::{argmax_first, masses_from_above};
use crate::nn::mlp::{train_mlp, Activation, MlpArchitecture, MlpModel, TrainOpts};

/// Standard 1-of-K network: logistic hidden layer, softmax output,
/// squared-error training; prediction by argmax.
#[derive(Clone, Debug)]
pub struct CnnModel {
    mlp: MlpModel,
    num_classes: usize,
}

pub fn train_cnn(
    dataset: &Dataset,
    hidden_units: usize,
    opts: &TrainOpts,
) -> Result<(CnnModel, Vec<f64>)> {
    let k = dataset.num_classes();
    let targets: Vec<Vec<f64>> = dataset
        .labels()
        .iter()
        .map(|&label| {
            let mut t = vec![0.0; k];
            t[label - 1] = 1.0;
            t
        })
        .collect();
    let arch = MlpArchitecture::single_hidden(dataset.dim(), hidden_units, k, Activation::Softmax);
    let (mlp, trace) = train_mlp(dataset.features(), &targets, &arch, opts)?;
    Ok((
        CnnModel {
            mlp,
            num_classes: k,
        },
        trace,
    ))
}

impl CnnModel {
    pub(crate) fn from_parts(mlp: MlpModel, num_classes: usize) -> Self {
        CnnModel { mlp, num_classes }
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

    pub fn class_probabilities(&self, x: &[f64]) -> Result<Vec<f64>> {
        self.check_dim(x)?;
        Ok(self.mlp.forward(x))
    }

    pub fn predict(&self, x: &[f64]) -> Result<usize> {
        Ok(argmax_first(&self.class_probabilities(x)?) + 1)
    }

    fn check_dim(&self, x: &[f64]) -> Result<()> {
        if x.len() != self.mlp.input_dim() {
            return Err(Error::DimensionMismatch {
                expected: self.mlp.input_dim(),
                got: x.len(),
            });
        }
        Ok(())
    }
}

/// Frank–Hall network ensemble: `K-1` single-output logistic networks,
/// member `i` trained on the test `C > i`; its output is read directly as
/// that probability.
#[derive(Clone, Debug)]
pub struct PnnModel {
    members: Vec<MlpModel>,
    num_classes: usize,
}

pub fn train_pnn(
    dataset: &Dataset,
    hidden_units: usize,
    opts: &TrainOpts,
) -> Result<(PnnModel, Vec<Vec<f64>>)> {
    let k = dataset.num_classes();
    let arch =
        MlpArchitecture::single_hidden(dataset.dim(), hidden_units, 1, Activation::Logistic);
    let mut members = Vec::with_capacity(k - 1);
    let mut traces = Vec::with_capacity(k - 1);
    for threshold in 1..k {
        let targets: Vec<Vec<f64>> = dataset
            .labels()
            .iter()
            .map(|&label| vec![if label > threshold { 1.0 } else { 0.0 }])
            .collect();
        let member_opts = TrainOpts {
            seed: opts.seed.wrapping_add(threshold as u64),
            ..*opts
        };
        let (member, trace) = train_mlp(dataset.features(), &targets, &arch, &member_opts)?;
        members.push(member);
        traces.push(trace);
    }
    Ok((
        PnnModel {
            members,
            num_classes: k,
        },
        traces,
    ))
}

impl PnnModel {
    pub(crate) fn from_parts(members: Vec<MlpModel>, num_classes: usize) -> Self {
        PnnModel {
            members,
            num_classes,
        }
    }

    pub fn members(&self) -> &[MlpModel] {
        &self.members
    }

    pub fn num_classes(&self) -> usize {
        self.num_classes
    }

    pub fn input_dim(&self) -> usize {
        self.members[0].input_dim()
    }

    /// `Pr(C > i)` estimates for `i = 1..K-1`.
    pub fn cumulative_above(&self, x: &[f64]) -> Result<Vec<f64>> {
        self.check_dim(x)?;
        Ok(self.members.iter().map(|m| m.forward(x)[0]).collect())
    }

    pub fn class_probabilities(&self, x: &[f64]) -> Result<Vec<f64>> {
        Ok(masses_from_above(&self.cumulative_above(x)?))
    }

    pub fn predict(&self, x: &[f64]) -> Result<usize> {
        Ok(argmax_first(&self.class_probabilities(x)?) + 1)
    }

    fn check_dim(&self, x: &[f64]) -> Result<()> {
        if x.len() != self.input_dim() {
            return Err(Error::DimensionMismatch {
                expected: self.input_dim(),
                got: x.len(),
            });
        }
        Ok(())
    }
}
