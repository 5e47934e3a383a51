//! The replication network (oNN): a single-output subnetwork `G` over the
//! feature block, linearly combined with the appended offset components
//! under a logistic output unit.
//!
//! Trained on the replicated dataset with targets 1 for replicas at or
//! below their boundary and 0 above, the output on the subspace-`q` query
//! replica estimates the cumulative probability `P(C <= q)`, and the
//! model coincides with a cumulative-logit ordinal regression whose cut
//! points are the offset-block weights scaled by `h`.

use crate::data::Dataset;
use crate::error::{Error, Result};
use crate::mathutil::{dot, logistic, masses_from_below};
use crate::nn::mlp::{descend, Activation, MlpArchitecture, MlpModel, TrainOpts};
use crate::replicate::{replicate, BoundarySide, ReplicationConfig};
use crate::rng::Prng;

#[derive(Clone, Debug)]
pub struct OrdinalNnModel {
    g_net: MlpModel,
    e_weights: Vec<f64>,
    config: ReplicationConfig,
    input_dim: usize,
}

pub fn train_onn(
    dataset: &Dataset,
    config: &ReplicationConfig,
    hidden_units: usize,
    opts: &TrainOpts,
) -> Result<(OrdinalNnModel, Vec<f64>)> {
    let extended = replicate(dataset, config)?;
    let split = extended.feature_split;
    let targets: Vec<f64> = extended
        .labels
        .iter()
        .map(|side| match side {
            BoundarySide::Below => 1.0,
            BoundarySide::Above => 0.0,
        })
        .collect();

    let mut rng = Prng::new(opts.seed);
    let arch = MlpArchitecture::single_hidden(split, hidden_units, 1, Activation::Linear);
    let g_net = MlpModel::init(&arch, &mut rng);
    // offset weights join the output unit next to G(x): fan-in K-1
    let k = config.num_classes;
    let r = 1.0 / ((k - 1) as f64).sqrt();
    let e_init: Vec<f64> = (0..k - 2).map(|_| rng.uniform_in(-r, r)).collect();

    let n_gnet = g_net.param_count();
    let mut params = g_net.params();
    params.extend_from_slice(&e_init);

    let mut scratch = g_net.clone();
    let rows = &extended.features;
    let (params, trace) = descend(
        params,
        move |p| {
            scratch.set_params(&p[..n_gnet]);
            onn_loss_and_grad(&scratch, &p[n_gnet..], rows, &targets, split)
        },
        opts.epochs,
        opts.lr,
    )?;

    let mut g_net = g_net;
    g_net.set_params(&params[..n_gnet]);
    let model = OrdinalNnModel {
        g_net,
        e_weights: params[n_gnet..].to_vec(),
        config: *config,
        input_dim: dataset.dim(),
    };
    Ok((model, trace))
}

/// Squared-error loss of the replication network over extended rows with
/// binary targets, and its gradient in the concatenated parameter space
/// (subnetwork parameters followed by the offset-block weights).
pub fn onn_loss_and_grad(
    g_net: &MlpModel,
    e_weights: &[f64],
    rows: &[Vec<f64>],
    targets: &[f64],
    split: usize,
) -> (f64, Vec<f64>) {
    let n_gnet = g_net.param_count();
    let n = rows.len() as f64;
    let mut loss = 0.0;
    let mut grad = vec![0.0; n_gnet + e_weights.len()];
    for (row, &target) in rows.iter().zip(targets) {
        let (feat, e) = row.split_at(split);
        let acts = g_net.forward_all(feat);
        let z = acts.last().unwrap()[0] + dot(e_weights, e);
        let out = logistic(z);
        let err = out - target;
        loss += err * err / (2.0 * n);
        let dz = err / n * out * (1.0 - out);
        for (slot, &ev) in grad[n_gnet..].iter_mut().zip(e) {
            *slot += dz * ev;
        }
        g_net.accumulate_grad(&acts, &[dz], &mut grad[..n_gnet]);
    }
    (loss, grad)
}

impl OrdinalNnModel {
    pub(crate) fn from_parts(
        g_net: MlpModel,
        e_weights: Vec<f64>,
        config: ReplicationConfig,
        input_dim: usize,
    ) -> Self {
        OrdinalNnModel {
            g_net,
            e_weights,
            config,
            input_dim,
        }
    }

    pub fn g_net(&self) -> &MlpModel {
        &self.g_net
    }

    pub fn e_weights(&self) -> &[f64] {
        &self.e_weights
    }

    pub fn config(&self) -> &ReplicationConfig {
        &self.config
    }

    pub fn num_classes(&self) -> usize {
        self.config.num_classes
    }

    pub fn input_dim(&self) -> usize {
        self.input_dim
    }

    /// Network output on the subspace-`q` replica of `x`: the cumulative
    /// probability estimate `P(C <= q)`.
    pub fn cumulative_below(&self, x: &[f64]) -> Result<Vec<f64>> {
        self.check_dim(x)?;
        let split = self.config.feature_split(self.input_dim);
        Ok((1..self.config.num_classes)
            .map(|q| {
                let replica = self.config.replica(x, q);
                let (feat, e) = replica.split_at(split);
                logistic(self.g_net.forward(feat)[0] + dot(&self.e_weights, e))
            })
            .collect())
    }

    /// Latent score `G(x)` of the cumulative-logit reading
    /// `P(C <= q) = logsig(cut_q - G(x))`.
    pub fn latent_score(&self, x: &[f64]) -> Result<f64> {
        self.check_dim(x)?;
        let split = self.config.feature_split(self.input_dim);
        let replica = self.config.replica(x, 1);
        Ok(-self.g_net.forward(&replica[..split])[0])
    }

    /// Cut points of the cumulative model; the first is 0 by convention
    /// (absorbed into `G`), the rest are offset-block weights scaled by `h`.
    pub fn cut_points(&self) -> Vec<f64> {
        (1..self.config.num_classes)
            .map(|q| dot(&self.e_weights, &self.config.eblock_vec(q)))
            .collect()
    }

    /// Class masses by differencing the cumulative estimates; negative
    /// masses from non-monotone cut points are clamped and the vector
    /// renormalized.
    pub fn class_probabilities(&self, x: &[f64]) -> Result<Vec<f64>> {
        Ok(masses_from_below(&self.cumulative_below(x)?))
    }

    /// Class = 1 + number of boundaries whose cumulative estimate falls
    /// below one half (the threshold reading of the binary classifier).
    pub fn predict(&self, x: &[f64]) -> Result<usize> {
        let cumulative = self.cumulative_below(x)?;
        Ok(1 + cumulative.iter().filter(|&&p| p < 0.5).count())
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
