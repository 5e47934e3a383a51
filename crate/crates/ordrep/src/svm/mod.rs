//! Soft-margin SVMs: a deterministic SMO solver for the binary problem
//! and the three multiclass learners built on it — one-vs-one voting,
//! Frank–Hall threshold ensembles, and the replication (ordinal) machine.

mod multiclass;
mod ordinal;
mod smo;

pub use multiclass::{train_csvm, train_psvm, FrankHallSvm, OneVsOneSvm};
pub use ordinal::{train_osvm, OrdinalSvmModel};

use crate::error::{Error, Result};
use crate::mathutil::dot;

/// Base kernel on the original feature space.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kernel {
    /// `k(x, y) = x' y`
    Linear,
    /// `k(x, y) = (1 + x' y)^degree`
    Polynomial { degree: u32 },
}

impl Kernel {
    pub fn eval(&self, a: &[f64], b: &[f64]) -> f64 {
        let d = dot(a, b);
        match self {
            Kernel::Linear => d,
            Kernel::Polynomial { degree } => (1.0 + d).powi(*degree as i32),
        }
    }
}

/// Kernel over stored model vectors. `Extended` applies the base kernel
/// to the leading feature block and an inner product to the appended
/// replication components: `k~(x~, y~) = k(x, y) + e_x' e_y`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ModelKernel {
    Plain(Kernel),
    Extended { base: Kernel, split: usize },
}

impl ModelKernel {
    pub fn eval(&self, a: &[f64], b: &[f64]) -> f64 {
        match self {
            ModelKernel::Plain(k) => k.eval(a, b),
            ModelKernel::Extended { base, split } => {
                base.eval(&a[..*split], &b[..*split]) + dot(&a[*split..], &b[*split..])
            }
        }
    }

    pub fn base(&self) -> Kernel {
        match self {
            ModelKernel::Plain(k) => *k,
            ModelKernel::Extended { base, .. } => *base,
        }
    }
}

/// Solver settings. The defaults stop at a KKT-violation gap of `1e-3`
/// within at most a million working-pair updates.
#[derive(Clone, Copy, Debug)]
pub struct SmoSettings {
    pub kkt_tol: f64,
    pub max_iter: usize,
    /// Kernel row cache capacity in rows; 0 means unbounded.
    pub cache_rows: usize,
}

impl Default for SmoSettings {
    fn default() -> Self {
        SmoSettings {
            kkt_tol: 1e-3,
            max_iter: 1_000_000,
            cache_rows: 2048,
        }
    }
}

/// Solver diagnostics kept alongside a trained model.
#[derive(Clone, Copy, Debug)]
pub struct SolveInfo {
    pub iterations: usize,
    pub gap: f64,
    pub objective: f64,
}

/// A trained binary soft-margin machine: support vectors with their
/// signed dual coefficients `alpha_i y_i`, a bias, and the kernel. The
/// decision value is `g(x) = sum_i alpha_i y_i k(x_i, x) + b`.
#[derive(Clone, Debug)]
pub struct BinarySvmModel {
    support_points: Vec<Vec<f64>>,
    coefficients: Vec<f64>,
    support_indices: Vec<usize>,
    bias: f64,
    kernel: ModelKernel,
    c: f64,
    info: Option<SolveInfo>,
}

impl BinarySvmModel {
    /// Trains on `points` with labels `y in {-1, +1}`. `per_example_costs`
    /// overrides the uniform box constraint `C` when given.
    pub fn train(
        points: &[Vec<f64>],
        y: &[f64],
        c: f64,
        per_example_costs: Option<&[f64]>,
        kernel: Kernel,
        settings: &SmoSettings,
    ) -> Result<Self> {
        Self::train_with_kernel(points, y, c, per_example_costs, ModelKernel::Plain(kernel), settings)
    }

    pub(crate) fn train_with_kernel(
        points: &[Vec<f64>],
        y: &[f64],
        c: f64,
        per_example_costs: Option<&[f64]>,
        kernel: ModelKernel,
        settings: &SmoSettings,
    ) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::EmptyDataset);
        }
        if points.len() != y.len() {
            return Err(Error::DimensionMismatch {
                expected: points.len(),
                got: y.len(),
            });
        }
        if y.iter().any(|&v| v != 1.0 && v != -1.0) {
            return Err(Error::InvalidArgument("labels must be +1 or -1".into()));
        }
        if !(c > 0.0) {
            return Err(Error::InvalidArgument(format!("C must be positive, got {c}")));
        }
        let costs: Vec<f64> = match per_example_costs {
            Some(costs) => {
                if costs.len() != points.len() {
                    return Err(Error::DimensionMismatch {
                        expected: points.len(),
                        got: costs.len(),
                    });
                }
                if costs.iter().any(|&v| !(v > 0.0)) {
                    return Err(Error::InvalidArgument("per-example costs must be positive".into()));
                }
                costs.to_vec()
            }
            None => vec![c; points.len()],
        };

        let outcome = smo::solve(
            points,
            y,
            &costs,
            &kernel,
            settings.kkt_tol,
            settings.max_iter,
            settings.cache_rows,
        )?;

        let mut support_points = Vec::new();
        let mut coefficients = Vec::new();
        let mut support_indices = Vec::new();
        for (i, &a) in outcome.alpha.iter().enumerate() {
            if a > 0.0 {
                support_points.push(points[i].clone());
                coefficients.push(a * y[i]);
                support_indices.push(i);
            }
        }
        Ok(BinarySvmModel {
            support_points,
            coefficients,
            support_indices,
            bias: outcome.bias,
            kernel,
            c,
            info: Some(SolveInfo {
                iterations: outcome.iterations,
                gap: outcome.gap,
                objective: outcome.objective,
            }),
        })
    }

    pub(crate) fn from_parts(
        support_points: Vec<Vec<f64>>,
        coefficients: Vec<f64>,
        bias: f64,
        kernel: ModelKernel,
        c: f64,
    ) -> Self {
        let support_indices = (0..support_points.len()).collect();
        BinarySvmModel {
            support_points,
            coefficients,
            support_indices,
            bias,
            kernel,
            c,
            info: None,
        }
    }

    pub fn decision(&self, x: &[f64]) -> f64 {
        let mut g = self.bias;
        for (point, coeff) in self.support_points.iter().zip(&self.coefficients) {
            g += coeff * self.kernel.eval(point, x);
        }
        g
    }

    /// Predicted label in `{-1, +1}`; the decision surface itself counts
    /// as the negative side.
    pub fn predict(&self, x: &[f64]) -> f64 {
        if self.decision(x) > 0.0 {
            1.0
        } else {
            -1.0
        }
    }

    pub fn num_support(&self) -> usize {
        self.support_points.len()
    }

    pub fn support_points(&self) -> &[Vec<f64>] {
        &self.support_points
    }

    pub fn coefficients(&self) -> &[f64] {
        &self.coefficients
    }

    pub fn support_indices(&self) -> &[usize] {
        &self.support_indices
    }

    pub fn bias(&self) -> f64 {
        self.bias
    }

    pub fn kernel(&self) -> &ModelKernel {
        &self.kernel
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    pub fn info(&self) -> Option<&SolveInfo> {
        self.info.as_ref()
    }

    /// For a linear kernel, the expanded weight vector over the stored
    /// feature block (and, for extended kernels, the appended block too).
    pub fn linear_weights(&self) -> Option<Vec<f64>> {
        if self.kernel.base() != Kernel::Linear {
            return None;
        }
        let dim = self.support_points.first()?.len();
        let mut w = vec![0.0; dim];
        for (point, coeff) in self.support_points.iter().zip(&self.coefficients) {
            for (wd, &xd) in w.iter_mut().zip(point) {
                *wd += coeff * xd;
            }
        }
        Some(w)
    }
}

/// Per-example slacks of a trained model on a labeled set.
#[derive(Clone, Debug)]
pub struct SlackReport {
    /// `xi_i = max(0, 1 - y_i g(x_i))`
    pub xi: Vec<f64>,
    /// Number of nonzero slacks; an upper bound on the training errors.
    pub bound: usize,
    /// Number of actual misclassifications (`y_i g(x_i) <= 0`).
    pub training_errors: usize,
}

pub fn slack_diagnostics(model: &BinarySvmModel, points: &[Vec<f64>], y: &[f64]) -> SlackReport {
    let mut xi = Vec::with_capacity(points.len());
    let mut bound = 0;
    let mut training_errors = 0;
    for (x, &label) in points.iter().zip(y) {
        let margin = label * model.decision(x);
        let slack = (1.0 - margin).max(0.0);
        if slack > 0.0 {
            bound += 1;
        }
        if margin <= 0.0 {
            training_errors += 1;
        }
        xi.push(slack);
    }
    SlackReport {
        xi,
        bound,
        training_errors,
    }
}

/// Largest KKT violation of a trained model over its training set.
///
/// For each point the violated amount of the optimality condition is
/// measured on `y_i g(x_i) - 1`: at the lower bound the margin may not
/// fall short, at the upper bound it may not exceed, and free vectors
/// must sit on the margin. The equality constraint residual
/// `|sum alpha_i y_i|` (scaled by `1/max C_i`) is folded in.
pub fn kkt_violation(
    model: &BinarySvmModel,
    points: &[Vec<f64>],
    y: &[f64],
    costs: Option<&[f64]>,
) -> f64 {
    let n = points.len();
    let mut alpha = vec![0.0; n];
    for (&idx, &coeff) in model.support_indices().iter().zip(model.coefficients()) {
        alpha[idx] = coeff.abs();
    }
    let cost_of = |i: usize| costs.map_or(model.c(), |cs| cs[i]);

    let mut worst: f64 = 0.0;
    let mut equality = 0.0;
    let mut max_cost: f64 = 0.0;
    for i in 0..n {
        let margin = y[i] * model.decision(&points[i]);
        let a = alpha[i];
        let ci = cost_of(i);
        max_cost = max_cost.max(ci);
        equality += a * y[i];
        let at_lower = a <= ci * 1e-9;
        let at_upper = a >= ci * (1.0 - 1e-9);
        let violation = if at_lower {
            1.0 - margin
        } else if at_upper {
            margin - 1.0
        } else {
            (margin - 1.0).abs()
        };
        worst = worst.max(violation);
    }
    worst.max(equality.abs() / max_cost.max(1.0))
}
