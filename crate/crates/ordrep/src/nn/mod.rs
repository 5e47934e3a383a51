//! Feedforward network engine and the four network learners: the
//! conventional 1-of-K classifier (cNN), the Frank–Hall ensemble (pNN),
//! the replication network (oNN) and the unimodal binomial model (uNN).

mod classifiers;
mod mlp;
mod ordinal;
mod unimodal;

pub use classifiers::{train_cnn, train_pnn, CnnModel, PnnModel};
pub use mlp::{
    descend, train_mlp, Activation, Layer, LossKind, MlpArchitecture, MlpModel, TrainOpts,
};
pub use ordinal::{onn_loss_and_grad, train_onn, OrdinalNnModel};
pub use unimodal::{
    binomial_argmax, binomial_posteriors, optimal_p, train_unn, unimodal_class, unimodal_error,
    UnimodalNnModel,
};
