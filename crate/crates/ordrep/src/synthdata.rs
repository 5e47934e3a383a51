//! Synthetic ordinal datasets on the unit square / unit 4-cube.
//!
//! Points are drawn uniformly, scored by a fixed polynomial, corrupted
//! with Gaussian noise, and labeled by the interval the noisy score falls
//! into. The noiseless label (zero noise) is produced alongside so label
//! corruption can be measured exactly.

use crate::data::Dataset;
use crate::error::{Error, Result};
use crate::rng::Prng;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Space {
    R2,
    R4,
}

impl Space {
    pub fn dim(&self) -> usize {
        match self {
            Space::R2 => 2,
            Space::R4 => 4,
        }
    }
}

/// The deterministic score a point is thresholded on:
/// `10 (x1-0.5)(x2-0.5)` in the plane, `1000 * prod_i (x_i-0.5)` in R4.
pub fn score(space: Space, x: &[f64]) -> f64 {
    match space {
        Space::R2 => 10.0 * (x[0] - 0.5) * (x[1] - 0.5),
        Space::R4 => 1000.0 * x.iter().take(4).map(|v| v - 0.5).product::<f64>(),
    }
}

/// Generator specification. `thresholds` are the `K-1` finite interior
/// cut values; the outer bounds are implicitly infinite.
#[derive(Clone, Debug)]
pub struct SyntheticSpec {
    pub space: Space,
    pub num_classes: usize,
    pub n: usize,
    pub sigma: f64,
    pub thresholds: Vec<f64>,
    pub seed: u64,
}

impl SyntheticSpec {
    /// One of the four stock configurations (R2/R4, K = 5 or 10), with
    /// the matching noise level and sample size.
    pub fn stock(space: Space, num_classes: usize, seed: u64) -> Result<Self> {
        let (thresholds, sigma, n): (Vec<f64>, f64, usize) = match (space, num_classes) {
            (Space::R2, 5) => (vec![-1.0, -0.1, 0.25, 1.0], 0.125, 1000),
            (Space::R2, 10) => (
                vec![-1.75, -1.0, -0.5, -0.1, 0.1, 0.25, 0.75, 1.0, 1.75],
                0.125 / 2.0,
                1000,
            ),
            (Space::R4, 5) => (vec![-2.5, -0.5, 0.5, 3.0], 0.25, 2000),
            (Space::R4, 10) => (
                vec![-5.0, -2.5, -1.0, -0.4, 0.1, 0.5, 1.1, 3.0, 6.0],
                0.125,
                2000,
            ),
            _ => {
                return Err(Error::InvalidConfig(format!(
                    "no stock configuration for {num_classes} classes; supply custom thresholds"
                )))
            }
        };
        Ok(SyntheticSpec {
            space,
            num_classes,
            n,
            sigma,
            thresholds,
            seed,
        })
    }

    pub fn validate(&self) -> Result<()> {
        if self.num_classes < 2 {
            return Err(Error::InvalidConfig("need at least 2 classes".into()));
        }
        if self.thresholds.len() != self.num_classes - 1 {
            return Err(Error::InvalidConfig(format!(
                "{} classes need {} thresholds, got {}",
                self.num_classes,
                self.num_classes - 1,
                self.thresholds.len()
            )));
        }
        if self.thresholds.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidConfig("thresholds must be strictly increasing".into()));
        }
        if self.sigma < 0.0 || !self.sigma.is_finite() {
            return Err(Error::InvalidConfig("sigma must be nonnegative".into()));
        }
        if self.n == 0 {
            return Err(Error::InvalidConfig("n must be positive".into()));
        }
        Ok(())
    }

    /// Interval label of a score value: smallest class whose upper cut is
    /// not exceeded. A value exactly on a cut goes to the lower class.
    pub fn label_of(&self, value: f64) -> usize {
        1 + self.thresholds.iter().filter(|&&b| b < value).count()
    }
}

/// Draws the dataset together with its noiseless labels.
///
/// Per point the generator consumes, in order: the coordinates, then one
/// normal deviate for the noise (two uniforms via Box–Muller).
pub fn generate(spec: &SyntheticSpec) -> Result<(Dataset, Vec<usize>)> {
    spec.validate()?;
    let mut rng = Prng::new(spec.seed);
    let dim = spec.space.dim();
    let mut features = Vec::with_capacity(spec.n);
    let mut labels = Vec::with_capacity(spec.n);
    let mut noiseless = Vec::with_capacity(spec.n);
    for _ in 0..spec.n {
        let x: Vec<f64> = (0..dim).map(|_| rng.uniform()).collect();
        let clean_score = score(spec.space, &x);
        let noise = spec.sigma * rng.normal();
        labels.push(spec.label_of(clean_score + noise));
        noiseless.push(spec.label_of(clean_score));
        features.push(x);
    }
    let dataset = Dataset::new(features, labels, spec.num_classes)?;
    Ok((dataset, noiseless))
}

/// Fraction of points whose noisy label differs from the noiseless one.
pub fn corruption_rate(dataset: &Dataset, noiseless: &[usize]) -> f64 {
    let wrong = dataset
        .labels()
        .iter()
        .zip(noiseless)
        .filter(|(a, b)| a != b)
        .count();
    wrong as f64 / dataset.len() as f64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn score_examples() {
        assert_eq!(score(Space::R2, &[0.5, 0.9]), 0.0);
        assert_eq!(score(Space::R2, &[1.0, 1.0]), 2.5);
        assert_eq!(score(Space::R4, &[1.0, 1.0, 1.0, 1.0]), 62.5);
    }

    #[test]
    fn zero_noise_means_no_corruption() {
        let mut spec = SyntheticSpec::stock(Space::R2, 5, 3).unwrap();
        spec.sigma = 0.0;
        spec.n = 500;
        let (dataset, noiseless) = generate(&spec).unwrap();
        assert_eq!(dataset.labels(), &noiseless[..]);
        assert_eq!(corruption_rate(&dataset, &noiseless), 0.0);
    }

    #[test]
    fn generation_is_deterministic() {
        let spec = SyntheticSpec::stock(Space::R2, 10, 12).unwrap();
        let (a, na) = generate(&spec).unwrap();
        let (b, nb) = generate(&spec).unwrap();
        assert_eq!(a.features(), b.features());
        assert_eq!(a.labels(), b.labels());
        assert_eq!(na, nb);
    }

    #[test]
    fn labels_monotone_in_score() {
        let spec = SyntheticSpec::stock(Space::R4, 5, 9).unwrap();
        let (dataset, noiseless) = generate(&spec).unwrap();
        let mut scored: Vec<(f64, usize)> = dataset
            .features()
            .iter()
            .zip(&noiseless)
            .map(|(x, &c)| (score(Space::R4, x), c))
            .collect();
        scored.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
        for w in scored.windows(2) {
            assert!(w[0].1 <= w[1].1);
        }
    }

    #[test]
    fn exact_threshold_goes_to_lower_class() {
        let spec = SyntheticSpec::stock(Space::R2, 5, 0).unwrap();
        assert_eq!(spec.label_of(-1.0), 1);
        assert_eq!(spec.label_of(-0.1), 2);
        assert_eq!(spec.label_of(0.25), 3);
        assert_eq!(spec.label_of(1.0), 4);
        assert_eq!(spec.label_of(1.0 + 1e-12), 5);
        assert_eq!(spec.label_of(f64::NEG_INFINITY), 1);
    }

    #[test]
    fn rejects_bad_thresholds() {
        let mut spec = SyntheticSpec::stock(Space::R2, 5, 0).unwrap();
        spec.thresholds = vec![0.0, 0.0, 0.1, 0.2];
        assert!(generate(&spec).is_err());
        spec.thresholds = vec![0.0, 0.1];
        assert!(generate(&spec).is_err());
    }

    #[test]
    fn stock_configs_have_all_classes_populated() {
        // regression guard: every class gets at least 1% of mass
        for (space, k) in [(Space::R2, 5), (Space::R2, 10), (Space::R4, 5), (Space::R4, 10)] {
            let mut spec = SyntheticSpec::stock(space, k, 1234).unwrap();
            spec.n = 100_000;
            let (dataset, _) = generate(&spec).unwrap();
            let hist = dataset.class_histogram();
            for (class, &count) in hist.iter().enumerate() {
                let fraction = count as f64 / spec.n as f64;
                assert!(
                    fraction >= 0.01,
                    "{space:?} K={k}: class {} has fraction {fraction}",
                    class + 1
                );
            }
        }
    }
}
