//! The replication (ordinal) SVM: train one binary machine on the
//! replicated dataset with the extended kernel, then read the `K-1`
//! boundaries back out of it.

use crate::data::Dataset;
use crate::error::{Error, Result};
use crate::mathutil::dot;
use crate::replicate::{make_query_replicas, replicate, BoundarySide, ReplicationConfig};
use crate::svm::{BinarySvmModel, Kernel, ModelKernel, SmoSettings};

/// Binary machine over the extended space plus the replication geometry
/// needed to use it as a K-class ordinal classifier.
#[derive(Clone, Debug)]
pub struct OrdinalSvmModel {
    binary: BinarySvmModel,
    config: ReplicationConfig,
    input_dim: usize,
    boundary_biases: Vec<f64>,
}

/// Replicates the dataset and solves the single binary problem. Replicas
/// below their boundary map to -1, replicas above to +1, so larger
/// decision values mean higher classes.
pub fn train_osvm(
    dataset: &Dataset,
    config: &ReplicationConfig,
    c: f64,
    kernel: Kernel,
    settings: &SmoSettings,
) -> Result<OrdinalSvmModel> {
    let extended = replicate(dataset, config)?;
    let y: Vec<f64> = extended
        .labels
        .iter()
        .map(|side| match side {
            BoundarySide::Below => -1.0,
            BoundarySide::Above => 1.0,
        })
        .collect();
    let kernel = ModelKernel::Extended {
        base: kernel,
        split: extended.feature_split,
    };
    let binary = BinarySvmModel::train_with_kernel(&extended.features, &y, c, None, kernel, settings)?;
    Ok(OrdinalSvmModel::assemble(binary, *config, dataset.dim()))
}

impl OrdinalSvmModel {
    pub(crate) fn assemble(
        binary: BinarySvmModel,
        config: ReplicationConfig,
        input_dim: usize,
    ) -> Self {
        let boundary_biases = derive_boundary_biases(&binary, &config, input_dim);
        OrdinalSvmModel {
            binary,
            config,
            input_dim,
            boundary_biases,
        }
    }

    pub fn num_classes(&self) -> usize {
        self.config.num_classes
    }

    pub fn input_dim(&self) -> usize {
        self.input_dim
    }

    pub fn config(&self) -> &ReplicationConfig {
        &self.config
    }

    pub fn binary(&self) -> &BinarySvmModel {
        &self.binary
    }

    /// Effective bias of boundary `q` (1-based): the binary bias plus the
    /// contribution of the offset block of a subspace-`q` query.
    pub fn boundary_biases(&self) -> &[f64] {
        &self.boundary_biases
    }

    /// Decision values of the `K-1` boundary classifiers at `x`.
    pub fn boundary_decisions(&self, x: &[f64]) -> Result<Vec<f64>> {
        self.check_dim(x)?;
        Ok(make_query_replicas(x, &self.config)?
            .iter()
            .map(|replica| self.binary.decision(replica))
            .collect())
    }

    /// Classifies each query replica and decodes by counting the replicas
    /// on the upper side.
    pub fn predict(&self, x: &[f64]) -> Result<usize> {
        let decisions = self.boundary_decisions(x)?;
        Ok(1 + decisions.iter().filter(|&&g| g > 0.0).count())
    }

    /// For a linear machine, the weights over the feature block (shared
    /// by all boundaries when `j = p`).
    pub fn feature_weights(&self) -> Option<Vec<f64>> {
        let w = self.binary.linear_weights()?;
        let split = self.config.feature_split(self.input_dim);
        Some(w[..split].to_vec())
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

fn derive_boundary_biases(
    binary: &BinarySvmModel,
    config: &ReplicationConfig,
    input_dim: usize,
) -> Vec<f64> {
    let split = config.feature_split(input_dim);
    (1..config.num_classes)
        .map(|q| {
            let e_query = config.eblock_vec(q);
            let mut bias = binary.bias();
            for (point, coeff) in binary.support_points().iter().zip(binary.coefficients()) {
                bias += coeff * dot(&point[split..], &e_query);
            }
            bias
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn three_point_line() -> Dataset {
        Dataset::new(vec![vec![0.0], vec![1.0], vec![2.0]], vec![1, 2, 3], 3).unwrap()
    }

    #[test]
    fn three_class_line_recovers_thresholds() {
        // Minimizing 1/2 w^2 + (b2-b1)^2/2 under the replication
        // constraints gives w = 2, b1 = -1, b2 = -3: thresholds at
        // x = 0.5 and x = 1.5 with zero training error.
        let dataset = three_point_line();
        let config = ReplicationConfig::basic(3, 1.0, 2, 1).unwrap();
        let model =
            train_osvm(&dataset, &config, 1e6, Kernel::Linear, &SmoSettings::default()).unwrap();

        let w = model.feature_weights().unwrap();
        assert!((w[0] - 2.0).abs() < 1e-2, "w = {w:?}");
        let biases = model.boundary_biases();
        assert!((biases[0] + 1.0).abs() < 1e-2, "b = {biases:?}");
        assert!((biases[1] + 3.0).abs() < 1e-2, "b = {biases:?}");

        // thresholds -b_q / w near 0.5 and 1.5
        assert!((-biases[0] / w[0] - 0.5).abs() < 1e-2);
        assert!((-biases[1] / w[0] - 1.5).abs() < 1e-2);

        for (x, expected) in [(0.0, 1), (1.0, 2), (2.0, 3)] {
            assert_eq!(model.predict(&[x]).unwrap(), expected);
        }
    }

    #[test]
    fn two_class_reduces_to_binary() {
        let dataset =
            Dataset::new(vec![vec![0.0], vec![1.0]], vec![1, 2], 2).unwrap();
        let config = ReplicationConfig::basic(2, 1.0, 1, 1).unwrap();
        let model =
            train_osvm(&dataset, &config, 1000.0, Kernel::Linear, &SmoSettings::default()).unwrap();
        let direct = BinarySvmModel::train(
            &[vec![0.0], vec![1.0]],
            &[-1.0, 1.0],
            1000.0,
            None,
            Kernel::Linear,
            &SmoSettings::default(),
        )
        .unwrap();
        for x in [0.0, 0.25, 0.5, 0.75, 1.0] {
            let g_ord = model.boundary_decisions(&[x]).unwrap()[0];
            let g_bin = direct.decision(&[x]);
            assert!((g_ord - g_bin).abs() < 1e-9, "x={x}: {g_ord} vs {g_bin}");
        }
    }

    #[test]
    fn boundary_bias_shift_identity() {
        // b_q = b_1 + h * w_e[q-2] for the one-hot offset encoding
        let dataset = three_point_line();
        let config = ReplicationConfig::basic(3, 2.0, 2, 1).unwrap();
        let model =
            train_osvm(&dataset, &config, 100.0, Kernel::Linear, &SmoSettings::default()).unwrap();
        let w = model.binary.linear_weights().unwrap();
        let split = config.feature_split(1);
        let biases = model.boundary_biases();
        assert!((biases[0] - model.binary.bias()).abs() < 1e-12);
        assert!((biases[1] - (model.binary.bias() + config.h * w[split])).abs() < 1e-9);
    }

    #[test]
    fn predict_rejects_wrong_dim() {
        let dataset = three_point_line();
        let config = ReplicationConfig::basic(3, 1.0, 2, 1).unwrap();
        let model =
            train_osvm(&dataset, &config, 10.0, Kernel::Linear, &SmoSettings::default()).unwrap();
        assert!(model.predict(&[0.0, 1.0]).is_err());
    }

    #[test]
    fn monotone_decode_along_weights() {
        let dataset = Dataset::new(
            vec![
                vec![0.0, 0.1],
                vec![0.2, 0.0],
                vec![1.0, 1.1],
                vec![1.1, 0.9],
                vec![2.0, 2.1],
                vec![2.2, 1.9],
            ],
            vec![1, 1, 2, 2, 3, 3],
            3,
        )
        .unwrap();
        let config = ReplicationConfig::basic(3, 1.0, 2, 2).unwrap();
        let model =
            train_osvm(&dataset, &config, 1000.0, Kernel::Linear, &SmoSettings::default()).unwrap();
        let w = model.feature_weights().unwrap();
        let norm = (w[0] * w[0] + w[1] * w[1]).sqrt();
        let direction = [w[0] / norm, w[1] / norm];
        let mut last = 0;
        for step in 0..60 {
            let t = -3.0 + step as f64 * 0.1;
            let x = [1.0 + t * direction[0], 1.0 + t * direction[1]];
            let class = model.predict(&x).unwrap();
            assert!(class >= last, "class dropped from {last} to {class} at t={t}");
            last = class;
        }
    }
}
