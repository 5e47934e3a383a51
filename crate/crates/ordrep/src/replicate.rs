//! The data replication transform.
//!
//! A K-class ordinal problem is mapped to a single binary problem by
//! replicating every example into up to `K-1` tagged subspaces, one per
//! class boundary `q` (the discriminator between classes `1..=q` and
//! `q+1..=K`). A replica of a class-`k` example in subspace `q` is
//! labeled by its side of that boundary; a prediction is decoded from the
//! `K-1` per-boundary labels by counting.
//!
//! A replica of `x` in subspace `q` is laid out as
//!
//! ```text
//! [ x[..j] | 0 .. x[j..] .. 0 | e_{q-1} ]
//! ```
//!
//! where the middle block has `K-1` slots of width `p-j` with `x[j..]`
//! placed in slot `q`, and the trailing block of length `K-2` carries the
//! offset constant `h` (position `q-1` for the one-hot encoding, or
//! positions `1..q` with the cumulative variant). `j = p` gives the basic
//! method (parallel boundaries); `j = 0` decouples the boundaries
//! entirely, recovering a Frank–Hall-style parameterization.

use crate::data::Dataset;
use crate::error::{Error, Result};

/// Which side of a boundary a replica falls on. `Below` means the origin
/// class is at or below the boundary (class <= q).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BoundarySide {
    Below,
    Above,
}

/// Encoding of the appended offset block.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum EBlockStyle {
    /// `h` at position `q-1`, zeros elsewhere.
    #[default]
    OneHot,
    /// `h` at positions `1..=q-1`. Changes only how the inter-boundary
    /// bias spread is regularized by a linear learner.
    Cumulative,
}

/// Parameters of the replication transform.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ReplicationConfig {
    /// Class count `K`.
    pub num_classes: usize,
    /// Replica offset constant, `h > 0`.
    pub h: f64,
    /// Boundary neighborhood width: a class-`k` example participates in
    /// boundaries `q` with `|k - q|` small, appearing in at most `2s`
    /// subspaces. `1 <= s <= K-1`.
    pub s: usize,
    /// Number of leading features constrained to a shared direction
    /// across boundaries. `j = p` couples all boundaries, `j = 0` none.
    pub j: usize,
    pub eblock: EBlockStyle,
}

impl ReplicationConfig {
    pub fn new(num_classes: usize, h: f64, s: usize, j: usize) -> Result<Self> {
        let config = ReplicationConfig {
            num_classes,
            h,
            s,
            j,
            eblock: EBlockStyle::OneHot,
        };
        config.validate()?;
        Ok(config)
    }

    /// The basic method: all `p` features share one direction.
    pub fn basic(num_classes: usize, h: f64, s: usize, p: usize) -> Result<Self> {
        ReplicationConfig::new(num_classes, h, s, p)
    }

    pub fn with_eblock(mut self, eblock: EBlockStyle) -> Self {
        self.eblock = eblock;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.num_classes < 2 {
            return Err(Error::InvalidConfig(format!(
                "need at least 2 classes, got {}",
                self.num_classes
            )));
        }
        if !(self.h > 0.0) || !self.h.is_finite() {
            return Err(Error::InvalidConfig(format!("h must be positive, got {}", self.h)));
        }
        if self.s < 1 || self.s > self.num_classes - 1 {
            return Err(Error::InvalidConfig(format!(
                "s must be in 1..={}, got {}",
                self.num_classes - 1,
                self.s
            )));
        }
        Ok(())
    }

    fn check_dim(&self, p: usize) -> Result<()> {
        if self.j > p {
            return Err(Error::InvalidConfig(format!(
                "j = {} exceeds feature dimension {p}",
                self.j
            )));
        }
        Ok(())
    }

    /// Dimension of the extended space: `j + (p-j)(K-1) + (K-2)`.
    pub fn extended_dim(&self, p: usize) -> usize {
        let k = self.num_classes;
        self.j + (p - self.j) * (k - 1) + (k - 2)
    }

    /// Where the offset block starts within an extended vector.
    pub fn feature_split(&self, p: usize) -> usize {
        self.j + (p - self.j) * (self.num_classes - 1)
    }

    /// Boundaries a class-`k` example is replicated into:
    /// `max(1, k-s) ..= min(K-1, k+s-1)`.
    pub fn subspace_range(&self, class: usize) -> std::ops::RangeInclusive<usize> {
        let lo = class.saturating_sub(self.s).max(1);
        let hi = (class + self.s - 1).min(self.num_classes - 1);
        lo..=hi
    }

    /// Number of replicas a class-`k` example produces (at most `2s`).
    pub fn replica_count(&self, class: usize) -> usize {
        let range = self.subspace_range(class);
        range.end() - range.start() + 1
    }

    /// Lays out the replica of `x` for boundary `q` (1-based).
    pub fn replica(&self, x: &[f64], q: usize) -> Vec<f64> {
        let p = x.len();
        let k = self.num_classes;
        debug_assert!((1..k).contains(&q));
        let mut out = vec![0.0; self.extended_dim(p)];
        out[..self.j].copy_from_slice(&x[..self.j]);
        let slot = self.j + (q - 1) * (p - self.j);
        out[slot..slot + (p - self.j)].copy_from_slice(&x[self.j..]);
        let split = self.feature_split(p);
        match self.eblock {
            EBlockStyle::OneHot => {
                if q >= 2 {
                    out[split + q - 2] = self.h;
                }
            }
            EBlockStyle::Cumulative => {
                for t in 0..q.saturating_sub(1) {
                    out[split + t] = self.h;
                }
            }
        }
        out
    }

    /// The offset block alone for boundary `q`, length `K-2`.
    pub fn eblock_vec(&self, q: usize) -> Vec<f64> {
        let k = self.num_classes;
        let mut out = vec![0.0; k - 2];
        match self.eblock {
            EBlockStyle::OneHot => {
                if q >= 2 {
                    out[q - 2] = self.h;
                }
            }
            EBlockStyle::Cumulative => {
                for slot in out.iter_mut().take(q.saturating_sub(1)) {
                    *slot = self.h;
                }
            }
        }
        out
    }
}

/// Binary-labeled extension of an ordinal dataset.
#[derive(Clone, Debug)]
pub struct ExtendedDataset {
    pub features: Vec<Vec<f64>>,
    pub labels: Vec<BoundarySide>,
    /// Boundary index `q` of each replica.
    pub subspace: Vec<usize>,
    /// Row of the source dataset each replica came from.
    pub origin: Vec<usize>,
    pub dim: usize,
    /// Offset block starts here; the kernel treats the two parts separately.
    pub feature_split: usize,
}

impl ExtendedDataset {
    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }
}

/// Builds the replicated binary dataset.
pub fn replicate(dataset: &Dataset, config: &ReplicationConfig) -> Result<ExtendedDataset> {
    config.validate()?;
    config.check_dim(dataset.dim())?;
    if dataset.num_classes() != config.num_classes {
        return Err(Error::InvalidConfig(format!(
            "config is for {} classes but dataset has {}",
            config.num_classes,
            dataset.num_classes()
        )));
    }
    let mut features = Vec::new();
    let mut labels = Vec::new();
    let mut subspace = Vec::new();
    let mut origin = Vec::new();
    for i in 0..dataset.len() {
        let class = dataset.label(i);
        for q in config.subspace_range(class) {
            features.push(config.replica(dataset.feature(i), q));
            labels.push(if class <= q {
                BoundarySide::Below
            } else {
                BoundarySide::Above
            });
            subspace.push(q);
            origin.push(i);
        }
    }
    Ok(ExtendedDataset {
        features,
        labels,
        subspace,
        origin,
        dim: config.extended_dim(dataset.dim()),
        feature_split: config.feature_split(dataset.dim()),
    })
}

/// The `K-1` replicas of a query point, one per boundary.
pub fn make_query_replicas(x: &[f64], config: &ReplicationConfig) -> Result<Vec<Vec<f64>>> {
    config.validate()?;
    config.check_dim(x.len())?;
    Ok((1..config.num_classes).map(|q| config.replica(x, q)).collect())
}

/// Decodes a per-boundary label sequence: class = 1 + number of `Above`
/// labels. Applied verbatim even to non-monotone sequences.
pub fn decode(sequence: &[BoundarySide], num_classes: usize) -> Result<usize> {
    if sequence.len() != num_classes - 1 {
        return Err(Error::DimensionMismatch {
            expected: num_classes - 1,
            got: sequence.len(),
        });
    }
    Ok(1 + sequence.iter().filter(|&&side| side == BoundarySide::Above).count())
}
