//! Sequential minimal optimization for the soft-margin dual
//!
//! ```text
//!   min_a  1/2 a' Q a - e' a    s.t.  0 <= a_i <= C_i,  y' a = 0
//! ```
//!
//! with `Q_ij = y_i y_j K(x_i, x_j)`. Working pairs are chosen by maximal
//! KKT violation with a second-order gain criterion; ties break to the
//! lowest index, so the solver is fully deterministic.

use std::collections::HashMap;
use std::rc::Rc;

use crate::error::{Error, Result};
use crate::svm::ModelKernel;

/// LRU cache of kernel matrix rows.
struct RowCache<'a> {
    points: &'a [Vec<f64>],
    kernel: &'a ModelKernel,
    rows: HashMap<usize, (u64, Rc<Vec<f64>>)>,
    capacity: usize,
    tick: u64,
}

impl<'a> RowCache<'a> {
    fn new(points: &'a [Vec<f64>], kernel: &'a ModelKernel, capacity: usize) -> Self {
        let capacity = if capacity == 0 { usize::MAX } else { capacity.max(2) };
        RowCache {
            points,
            kernel,
            rows: HashMap::new(),
            capacity,
            tick: 0,
        }
    }

    fn row(&mut self, i: usize) -> Rc<Vec<f64>> {
        self.tick += 1;
        if let Some((stamp, row)) = self.rows.get_mut(&i) {
            *stamp = self.tick;
            return Rc::clone(row);
        }
        if self.rows.len() >= self.capacity {
            if let Some((&oldest, _)) = self.rows.iter().min_by_key(|(_, (stamp, _))| *stamp) {
                self.rows.remove(&oldest);
            }
        }
        let xi = &self.points[i];
        let row: Vec<f64> = self
            .points
            .iter()
            .map(|xj| self.kernel.eval(xi, xj))
            .collect();
        let row = Rc::new(row);
        self.rows.insert(i, (self.tick, Rc::clone(&row)));
        row
    }
}

pub(crate) struct SmoOutcome {
    pub alpha: Vec<f64>,
    pub bias: f64,
    pub iterations: usize,
    pub gap: f64,
    pub objective: f64,
}

pub(crate) fn solve(
    points: &[Vec<f64>],
    y: &[f64],
    costs: &[f64],
    kernel: &ModelKernel,
    kkt_tol: f64,
    max_iter: usize,
    cache_rows: usize,
) -> Result<SmoOutcome> {
    let n = points.len();
    debug_assert!(n == y.len() && n == costs.len());
    if !y.iter().any(|&v| v > 0.0) || !y.iter().any(|&v| v < 0.0) {
        return Err(Error::SingleClass);
    }

    let mut cache = RowCache::new(points, kernel, cache_rows);
    let diag: Vec<f64> = points.iter().map(|x| kernel.eval(x, x)).collect();

    let mut alpha = vec![0.0f64; n];
    // gradient of the dual objective: Q a - e
    let mut grad = vec![-1.0f64; n];

    let is_up = |t: usize, alpha: &[f64]| {
        (y[t] > 0.0 && alpha[t] < costs[t]) || (y[t] < 0.0 && alpha[t] > 0.0)
    };
    let is_low = |t: usize, alpha: &[f64]| {
        (y[t] > 0.0 && alpha[t] > 0.0) || (y[t] < 0.0 && alpha[t] < costs[t])
    };

    let mut iterations = 0;
    let gap;
    loop {
        // most violating pair bounds: m = max_{I_up} -y g, m_low = min_{I_low} -y g
        let mut m = f64::NEG_INFINITY;
        let mut i_sel = usize::MAX;
        let mut m_low = f64::INFINITY;
        for t in 0..n {
            let v = -y[t] * grad[t];
            if is_up(t, &alpha) && v > m {
                m = v;
                i_sel = t;
            }
            if is_low(t, &alpha) && v < m_low {
                m_low = v;
            }
        }
        if m - m_low <= kkt_tol {
            gap = m - m_low;
            break;
        }
        if iterations >= max_iter {
            return Err(Error::NoConvergence {
                iterations,
                gap: m - m_low,
            });
        }

        let i = i_sel;
        let row_i = cache.row(i);
        // second-order choice of the partner index
        let mut j_sel = usize::MAX;
        let mut best_gain = f64::INFINITY; // gains are negative
        for t in 0..n {
            if !is_low(t, &alpha) {
                continue;
            }
            let vt = -y[t] * grad[t];
            let b_it = m - vt;
            if b_it <= 0.0 {
                continue;
            }
            // squared feature-space distance between the two points
            let mut a_it = diag[i] + diag[t] - 2.0 * row_i[t];
            if a_it <= 0.0 {
                a_it = 1e-12;
            }
            let gain = -(b_it * b_it) / a_it;
            if gain < best_gain {
                best_gain = gain;
                j_sel = t;
            }
        }
        if j_sel == usize::MAX {
            gap = m - m_low;
            break; // no admissible partner: optimal within tolerance
        }
        let j = j_sel;
        let row_j = cache.row(j);

        let (ci, cj) = (costs[i], costs[j]);
        let old_ai = alpha[i];
        let old_aj = alpha[j];

        // two-variable subproblem, clipped to the feasible box; the
        // curvature along the feasible direction is the squared
        // feature-space distance for either sign combination
        let mut quad = diag[i] + diag[j] - 2.0 * row_i[j];
        if quad <= 0.0 {
            quad = 1e-12;
        }
        if y[i] != y[j] {
            let delta = (-grad[i] - grad[j]) / quad;
            let diff = alpha[i] - alpha[j];
            alpha[i] += delta;
            alpha[j] += delta;
            if diff > 0.0 {
                if alpha[j] < 0.0 {
                    alpha[j] = 0.0;
                    alpha[i] = diff;
                }
            } else if alpha[i] < 0.0 {
                alpha[i] = 0.0;
                alpha[j] = -diff;
            }
            if diff > ci - cj {
                if alpha[i] > ci {
                    alpha[i] = ci;
                    alpha[j] = ci - diff;
                }
            } else if alpha[j] > cj {
                alpha[j] = cj;
                alpha[i] = cj + diff;
            }
        } else {
            let delta = (grad[i] - grad[j]) / quad;
            let sum = alpha[i] + alpha[j];
            alpha[i] -= delta;
            alpha[j] += delta;
            if sum > ci {
                if alpha[i] > ci {
                    alpha[i] = ci;
                    alpha[j] = sum - ci;
                }
            } else if alpha[j] < 0.0 {
                alpha[j] = 0.0;
                alpha[i] = sum;
            }
            if sum > cj {
                if alpha[j] > cj {
                    alpha[j] = cj;
                    alpha[i] = sum - cj;
                }
            } else if alpha[i] < 0.0 {
                alpha[i] = 0.0;
                alpha[j] = sum;
            }
        }

        let d_ai = alpha[i] - old_ai;
        let d_aj = alpha[j] - old_aj;
        for t in 0..n {
            // Q_it = y_i y_t K_it
            grad[t] += y[t] * (y[i] * row_i[t] * d_ai + y[j] * row_j[t] * d_aj);
        }
        iterations += 1;
    }

    let bias = compute_bias(&alpha, &grad, y, costs);
    // dual objective: 1/2 a'Qa - e'a = 1/2 sum_t a_t (grad_t - 1)
    let objective = 0.5
        * alpha
            .iter()
            .zip(&grad)
            .map(|(&a, &g)| a * (g - 1.0))
            .sum::<f64>();

    Ok(SmoOutcome {
        alpha,
        bias,
        iterations,
        gap,
        objective,
    })
}

/// Bias from the KKT conditions: the average of `-y_t grad_t` over free
/// vectors, or the midpoint of the feasible interval when none are free.
fn compute_bias(alpha: &[f64], grad: &[f64], y: &[f64], costs: &[f64]) -> f64 {
    let mut n_free = 0;
    let mut sum_free = 0.0;
    let mut upper = f64::INFINITY;
    let mut lower = f64::NEG_INFINITY;
    for t in 0..alpha.len() {
        let v = -y[t] * grad[t];
        let at_lower = alpha[t] <= 0.0;
        let at_upper = alpha[t] >= costs[t];
        if !at_lower && !at_upper {
            n_free += 1;
            sum_free += v;
        } else if (y[t] > 0.0 && at_lower) || (y[t] < 0.0 && at_upper) {
            // bias must not fall below v for these points
            lower = lower.max(v);
        } else {
            upper = upper.min(v);
        }
    }
    if n_free > 0 {
        sum_free / n_free as f64
    } else {
        (upper + lower) / 2.0
    }
}
