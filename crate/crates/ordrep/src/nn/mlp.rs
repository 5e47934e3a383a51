//! Minimal dense feedforward engine: logistic/linear/softmax layers,
//! analytic gradients of the batch loss, and full-batch gradient descent
//! with step halving.

use crate::error::{Error, Result};
use crate::rng::Prng;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Activation {
    Logistic,
    Linear,
    Softmax,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum LossKind {
    /// Mean over examples of half the squared error summed over outputs.
    #[default]
    Squared,
    /// Mean over examples of the absolute error summed over outputs.
    Absolute,
}

/// Dense layer; weights are row-major `out x in`.
#[derive(Clone, Debug)]
pub struct Layer {
    pub in_dim: usize,
    pub out_dim: usize,
    pub activation: Activation,
    pub weights: Vec<f64>,
    pub bias: Vec<f64>,
}

impl Layer {
    fn init(in_dim: usize, out_dim: usize, activation: Activation, rng: &mut Prng) -> Layer {
        // uniform in [-r, r], r = 1 / sqrt(fan-in); weights first, then bias
        let r = 1.0 / (in_dim as f64).sqrt();
        let weights = (0..in_dim * out_dim).map(|_| rng.uniform_in(-r, r)).collect();
        let bias = (0..out_dim).map(|_| rng.uniform_in(-r, r)).collect();
        Layer {
            in_dim,
            out_dim,
            activation,
            weights,
            bias,
        }
    }

    fn forward(&self, input: &[f64]) -> Vec<f64> {
        let mut z = self.bias.clone();
        for o in 0..self.out_dim {
            let row = &self.weights[o * self.in_dim..(o + 1) * self.in_dim];
            z[o] += row.iter().zip(input).map(|(w, x)| w * x).sum::<f64>();
        }
        match self.activation {
            Activation::Linear => z,
            Activation::Logistic => z.iter().map(|&v| 1.0 / (1.0 + (-v).exp())).collect(),
            Activation::Softmax => {
                let max = z.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
                let exps: Vec<f64> = z.iter().map(|&v| (v - max).exp()).collect();
                let total: f64 = exps.iter().sum();
                exps.iter().map(|&v| v / total).collect()
            }
        }
    }

    /// Converts a post-activation gradient into a pre-activation one.
    fn activation_backward(&self, output: &[f64], dl_dy: &[f64]) -> Vec<f64> {
        match self.activation {
            Activation::Linear => dl_dy.to_vec(),
            Activation::Logistic => output
                .iter()
                .zip(dl_dy)
                .map(|(&y, &dy)| dy * y * (1.0 - y))
                .collect(),
            Activation::Softmax => {
                let dot: f64 = output.iter().zip(dl_dy).map(|(&y, &dy)| y * dy).sum();
                output
                    .iter()
                    .zip(dl_dy)
                    .map(|(&y, &dy)| y * (dy - dot))
                    .collect()
            }
        }
    }

    fn param_count(&self) -> usize {
        self.weights.len() + self.bias.len()
    }
}

/// Shape of a network: a stack of logistic hidden layers and one output
/// layer with a chosen activation.
#[derive(Clone, Debug)]
pub struct MlpArchitecture {
    pub input_dim: usize,
    pub hidden: Vec<usize>,
    pub output_dim: usize,
    pub output_activation: Activation,
}

impl MlpArchitecture {
    /// The common single-hidden-layer shape; `hidden_units = 0` collapses
    /// to one output layer on the raw inputs.
    pub fn single_hidden(
        input_dim: usize,
        hidden_units: usize,
        output_dim: usize,
        output_activation: Activation,
    ) -> Self {
        let hidden = if hidden_units == 0 { vec![] } else { vec![hidden_units] };
        MlpArchitecture {
            input_dim,
            hidden,
            output_dim,
            output_activation,
        }
    }
}

#[derive(Clone, Debug)]
pub struct MlpModel {
    layers: Vec<Layer>,
}

impl MlpModel {
    /// Seeded initialization; the draw order (layer by layer, weights
    /// before bias) is part of the reproducibility contract.
    pub fn init(arch: &MlpArchitecture, rng: &mut Prng) -> MlpModel {
        let mut layers = Vec::new();
        let mut in_dim = arch.input_dim;
        for &units in &arch.hidden {
            layers.push(Layer::init(in_dim, units, Activation::Logistic, rng));
            in_dim = units;
        }
        layers.push(Layer::init(in_dim, arch.output_dim, arch.output_activation, rng));
        MlpModel { layers }
    }

    pub fn layers(&self) -> &[Layer] {
        &self.layers
    }

    pub fn from_layers(layers: Vec<Layer>) -> MlpModel {
        MlpModel { layers }
    }

    pub fn input_dim(&self) -> usize {
        self.layers.first().map_or(0, |l| l.in_dim)
    }

    pub fn output_dim(&self) -> usize {
        self.layers.last().map_or(0, |l| l.out_dim)
    }

    pub fn forward(&self, x: &[f64]) -> Vec<f64> {
        let mut current = x.to_vec();
        for layer in &self.layers {
            current = layer.forward(&current);
        }
        current
    }

    /// Activations of every layer, input included.
    pub fn forward_all(&self, x: &[f64]) -> Vec<Vec<f64>> {
        let mut acts = Vec::with_capacity(self.layers.len() + 1);
        acts.push(x.to_vec());
        for layer in &self.layers {
            let next = layer.forward(acts.last().unwrap());
            acts.push(next);
        }
        acts
    }

    pub fn param_count(&self) -> usize {
        self.layers.iter().map(|l| l.param_count()).sum()
    }

    pub fn params(&self) -> Vec<f64> {
        let mut out = Vec::with_capacity(self.param_count());
        for layer in &self.layers {
            out.extend_from_slice(&layer.weights);
            out.extend_from_slice(&layer.bias);
        }
        out
    }

    pub fn set_params(&mut self, params: &[f64]) {
        debug_assert_eq!(params.len(), self.param_count());
        let mut offset = 0;
        for layer in &mut self.layers {
            let nw = layer.weights.len();
            layer.weights.copy_from_slice(&params[offset..offset + nw]);
            offset += nw;
            let nb = layer.bias.len();
            layer.bias.copy_from_slice(&params[offset..offset + nb]);
            offset += nb;
        }
    }

    /// Backpropagates `dl_dy` (the loss gradient with respect to the
    /// network output) through cached activations, adding parameter
    /// gradients into `grad` (same layout as [`MlpModel::params`]).
    /// Returns the loss gradient with respect to the input.
    pub fn accumulate_grad(&self, acts: &[Vec<f64>], dl_dy: &[f64], grad: &mut [f64]) -> Vec<f64> {
        debug_assert_eq!(acts.len(), self.layers.len() + 1);
        let mut offsets = Vec::with_capacity(self.layers.len());
        let mut offset = 0;
        for layer in &self.layers {
            offsets.push(offset);
            offset += layer.param_count();
        }

        let mut dy = dl_dy.to_vec();
        for (l, layer) in self.layers.iter().enumerate().rev() {
            let output = &acts[l + 1];
            let input = &acts[l];
            let dz = layer.activation_backward(output, &dy);
            let base = offsets[l];
            for o in 0..layer.out_dim {
                let row = base + o * layer.in_dim;
                for i in 0..layer.in_dim {
                    grad[row + i] += dz[o] * input[i];
                }
            }
            let bias_base = base + layer.weights.len();
            for o in 0..layer.out_dim {
                grad[bias_base + o] += dz[o];
            }
            let mut dx = vec![0.0; layer.in_dim];
            for o in 0..layer.out_dim {
                let row = &layer.weights[o * layer.in_dim..(o + 1) * layer.in_dim];
                for i in 0..layer.in_dim {
                    dx[i] += row[i] * dz[o];
                }
            }
            dy = dx;
        }
        dy
    }

    /// Batch loss and its gradient in parameter space.
    pub fn loss_and_grad(
        &self,
        inputs: &[Vec<f64>],
        targets: &[Vec<f64>],
        loss_kind: LossKind,
    ) -> (f64, Vec<f64>) {
        let n = inputs.len() as f64;
        let mut loss = 0.0;
        let mut grad = vec![0.0; self.param_count()];
        for (x, t) in inputs.iter().zip(targets) {
            let acts = self.forward_all(x);
            let y = acts.last().unwrap();
            let mut dl_dy = vec![0.0; y.len()];
            match loss_kind {
                LossKind::Squared => {
                    for k in 0..y.len() {
                        let e = y[k] - t[k];
                        loss += e * e / (2.0 * n);
                        dl_dy[k] = e / n;
                    }
                }
                LossKind::Absolute => {
                    for k in 0..y.len() {
                        let e = y[k] - t[k];
                        loss += e.abs() / n;
                        dl_dy[k] = e.signum() / n;
                    }
                }
            }
            self.accumulate_grad(&acts, &dl_dy, &mut grad);
        }
        (loss, grad)
    }
}

/// Training options shared by every network head.
#[derive(Clone, Copy, Debug)]
pub struct TrainOpts {
    pub epochs: usize,
    pub lr: f64,
    pub seed: u64,
    pub loss: LossKind,
}

impl Default for TrainOpts {
    fn default() -> Self {
        TrainOpts {
            epochs: 2000,
            lr: 0.5,
            seed: 0,
            loss: LossKind::Squared,
        }
    }
}

/// Full-batch gradient descent with step halving: a step that would
/// increase the loss is retried at half the rate; accepted steps grow the
/// rate slightly. The returned trace is nonincreasing. A loss that is
/// not finite raises a divergence error with the epoch index.
pub fn descend<F>(
    mut params: Vec<f64>,
    mut eval: F,
    epochs: usize,
    lr0: f64,
) -> Result<(Vec<f64>, Vec<f64>)>
where
    F: FnMut(&[f64]) -> (f64, Vec<f64>),
{
    let (mut loss, mut grad) = eval(&params);
    if !loss.is_finite() {
        return Err(Error::Diverged { epoch: 0 });
    }
    let mut trace = vec![loss];
    let mut lr = lr0;
    for epoch in 1..=epochs {
        let mut accepted = false;
        for _ in 0..60 {
            let candidate: Vec<f64> = params
                .iter()
                .zip(&grad)
                .map(|(p, g)| p - lr * g)
                .collect();
            let (cand_loss, cand_grad) = eval(&candidate);
            if !cand_loss.is_finite() {
                lr *= 0.5;
                continue;
            }
            if cand_loss <= loss {
                params = candidate;
                loss = cand_loss;
                grad = cand_grad;
                lr *= 1.05;
                accepted = true;
                break;
            }
            lr *= 0.5;
        }
        if !accepted {
            if !loss.is_finite() {
                return Err(Error::Diverged { epoch });
            }
            trace.push(loss);
            break; // step size collapsed: nothing left to gain
        }
        trace.push(loss);
    }
    Ok((params, trace))
}

/// Trains a network on explicit target vectors.
pub fn train_mlp(
    inputs: &[Vec<f64>],
    targets: &[Vec<f64>],
    arch: &MlpArchitecture,
    opts: &TrainOpts,
) -> Result<(MlpModel, Vec<f64>)> {
    if inputs.is_empty() {
        return Err(Error::EmptyDataset);
    }
    if inputs.len() != targets.len() {
        return Err(Error::DimensionMismatch {
            expected: inputs.len(),
            got: targets.len(),
        });
    }
    if inputs[0].len() != arch.input_dim {
        return Err(Error::DimensionMismatch {
            expected: arch.input_dim,
            got: inputs[0].len(),
        });
    }
    if targets[0].len() != arch.output_dim {
        return Err(Error::DimensionMismatch {
            expected: arch.output_dim,
            got: targets[0].len(),
        });
    }
    let mut rng = Prng::new(opts.seed);
    let mut model = MlpModel::init(arch, &mut rng);
    let mut scratch = model.clone();
    let loss_kind = opts.loss;
    let (params, trace) = descend(
        model.params(),
        move |p| {
            scratch.set_params(p);
            scratch.loss_and_grad(inputs, targets, loss_kind)
        },
        opts.epochs,
        opts.lr,
    )?;
    model.set_params(&params);
    Ok((model, trace))
}
