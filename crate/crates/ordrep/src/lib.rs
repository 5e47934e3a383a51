//! Ordinal classification toolkit.
//!
//! The crate implements the data replication method — a reduction of a
//! K-class ordinal problem to a single binary problem in an extended
//! feature space — together with the learners built on top of it
//! (replication SVM and replication neural network), their conventional
//! and Frank–Hall counterparts, a unimodal binomial output model, and a
//! rank-aware evaluation suite (MER, MAE, MSE, Spearman, Kendall tau-b
//! and the o_c concordance coefficient).
//!
//! Everything is seed-deterministic: the same inputs and seeds produce
//! bit-identical models and predictions on every platform.

pub mod data;
pub mod error;
pub(crate) mod mathutil;
pub mod metrics;
pub mod model_io;
pub mod nn;
pub mod preprocess;
pub mod replicate;
pub mod rng;
pub mod split;
pub mod svm;
pub mod synthdata;

pub use data::Dataset;
pub use error::{Error, Result};
