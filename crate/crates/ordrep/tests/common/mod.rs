//! Shared helpers for the integration tests: an independent dense-QP
//! oracle for the SVM dual, a finite-difference gradient checker, and
//! small random problem generators.
#![allow(dead_code)]

use ordrep::rng::Prng;
use ordrep::svm::Kernel;

/// Dense Gram matrix of the dual quadratic form, `Q_ij = y_i y_j k(x_i, x_j)`.
pub fn gram_q(points: &[Vec<f64>], y: &[f64], kernel: Kernel) -> Vec<Vec<f64>> {
    let n = points.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| y[i] * y[j] * kernel.eval(&points[i], &points[j]))
                .collect()
        })
        .collect()
}

/// Exact Euclidean projection onto `{0 <= a_i <= C_i, y'a = 0}`.
///
/// The multiplier equation `sum_i y_i clamp(v_i - t y_i, 0, C_i) = 0` is
/// piecewise linear and nonincreasing in `t`; the breakpoints are
/// enumerated and the zero found by interpolation on the bracketing
/// segment.
pub fn project_box_hyperplane(v: &[f64], y: &[f64], costs: &[f64]) -> Vec<f64> {
    let clip = |t: f64| -> Vec<f64> {
        v.iter()
            .zip(y)
            .zip(costs)
            .map(|((&vi, &yi), &ci)| (vi - t * yi).clamp(0.0, ci))
            .collect()
    };
    let h = |t: f64| -> f64 { clip(t).iter().zip(y).map(|(&a, &yi)| a * yi).sum() };

    let mut breaks: Vec<f64> = Vec::with_capacity(2 * v.len());
    for ((&vi, &yi), &ci) in v.iter().zip(y).zip(costs) {
        breaks.push(vi * yi);
        breaks.push((vi - ci) * yi);
    }
    breaks.sort_by(|a, b| a.partial_cmp(b).unwrap());

    let mut lo = breaks[0] - 1.0;
    let mut hi = breaks[breaks.len() - 1] + 1.0;
    for &b in &breaks {
        if h(b) >= 0.0 {
            lo = lo.max(b);
        } else {
            hi = hi.min(b);
        }
    }
    let h_lo = h(lo);
    let h_hi = h(hi);
    let t = if h_lo - h_hi <= f64::EPSILON * (h_lo.abs() + h_hi.abs() + 1.0) {
        lo
    } else {
        lo + (hi - lo) * h_lo / (h_lo - h_hi)
    };
    clip(t)
}

/// Projected-gradient solver for the dual
/// `min 1/2 a'Qa - e'a  s.t.  0 <= a <= C, y'a = 0`.
/// Returns the final objective value.
pub fn qp_oracle_objective(q: &[Vec<f64>], y: &[f64], costs: &[f64]) -> f64 {
    let n = y.len();
    let lipschitz = q
        .iter()
        .map(|row| row.iter().map(|v| v.abs()).sum::<f64>())
        .fold(0.0_f64, f64::max)
        .max(1e-12);
    let step = 1.0 / lipschitz;

    let objective = |a: &[f64]| -> f64 {
        let mut quad = 0.0;
        for i in 0..n {
            let qa: f64 = q[i].iter().zip(a).map(|(qij, aj)| qij * aj).sum();
            quad += a[i] * qa;
        }
        0.5 * quad - a.iter().sum::<f64>()
    };

    let mut alpha = vec![0.0; n];
    let mut best = objective(&alpha);
    let mut stalled = 0;
    for _ in 0..200_000 {
        let grad: Vec<f64> = (0..n)
            .map(|i| q[i].iter().zip(&alpha).map(|(qij, aj)| qij * aj).sum::<f64>() - 1.0)
            .collect();
        let v: Vec<f64> = alpha.iter().zip(&grad).map(|(a, g)| a - step * g).collect();
        alpha = project_box_hyperplane(&v, y, costs);
        let obj = objective(&alpha);
        if best - obj < 1e-14 * (1.0 + best.abs()) {
            stalled += 1;
            if stalled > 50 {
                break;
            }
        } else {
            stalled = 0;
        }
        best = best.min(obj);
    }
    best
}

/// Random labeled point set with both classes present.
pub fn random_binary_problem(rng: &mut Prng, max_points: usize) -> (Vec<Vec<f64>>, Vec<f64>) {
    loop {
        let n = 2 + rng.below(max_points as u64 - 1) as usize;
        let dim = 1 + rng.below(3) as usize;
        let points: Vec<Vec<f64>> = (0..n)
            .map(|_| (0..dim).map(|_| rng.uniform_in(-1.0, 1.0)).collect())
            .collect();
        let y: Vec<f64> = (0..n)
            .map(|_| if rng.below(2) == 0 { -1.0 } else { 1.0 })
            .collect();
        if y.iter().any(|&v| v > 0.0) && y.iter().any(|&v| v < 0.0) {
            return (points, y);
        }
    }
}

/// Central finite differences of a scalar function of a parameter vector.
pub fn numeric_gradient<F>(mut f: F, params: &[f64], eps: f64) -> Vec<f64>
where
    F: FnMut(&[f64]) -> f64,
{
    let mut grad = Vec::with_capacity(params.len());
    let mut work = params.to_vec();
    for i in 0..params.len() {
        work[i] = params[i] + eps;
        let plus = f(&work);
        work[i] = params[i] - eps;
        let minus = f(&work);
        work[i] = params[i];
        grad.push((plus - minus) / (2.0 * eps));
    }
    grad
}

/// Guarded relative error between analytic and numeric gradients.
pub fn gradient_rel_error(analytic: &[f64], numeric: &[f64]) -> f64 {
    analytic
        .iter()
        .zip(numeric)
        .map(|(&a, &n)| (a - n).abs() / (a.abs() + n.abs()).max(1e-8))
        .fold(0.0, f64::max)
}
