//! Evaluation criteria for ordinal predictions: misclassification rate,
//! absolute/squared class-distance errors, the bounded ordinal loss, and
//! rank correlation coefficients (Spearman, Kendall tau-b, o_c).

use crate::error::{Error, Result};

fn check_pair(x: &[usize], y: &[usize]) -> Result<()> {
    if x.len() != y.len() {
        return Err(Error::DimensionMismatch {
            expected: x.len(),
            got: y.len(),
        });
    }
    if x.is_empty() {
        return Err(Error::EmptyDataset);
    }
    Ok(())
}

/// Misclassification error rate.
pub fn mer(pred: &[usize], truth: &[usize]) -> Result<f64> {
    check_pair(pred, truth)?;
    let wrong = pred.iter().zip(truth).filter(|(a, b)| a != b).count();
    Ok(wrong as f64 / pred.len() as f64)
}

/// Mean absolute class-number error.
pub fn mae(pred: &[usize], truth: &[usize]) -> Result<f64> {
    check_pair(pred, truth)?;
    let sum: f64 = pred
        .iter()
        .zip(truth)
        .map(|(&a, &b)| (a as f64 - b as f64).abs())
        .sum();
    Ok(sum / pred.len() as f64)
}

/// Mean squared class-number error.
pub fn mse(pred: &[usize], truth: &[usize]) -> Result<f64> {
    check_pair(pred, truth)?;
    let sum: f64 = pred
        .iter()
        .zip(truth)
        .map(|(&a, &b)| {
            let d = a as f64 - b as f64;
            d * d
        })
        .sum();
    Ok(sum / pred.len() as f64)
}

/// Bounded ordinal loss `min(|f - k|, s)`.
pub fn loss_ls(predicted: usize, truth: usize, s: usize) -> usize {
    predicted.abs_diff(truth).min(s)
}

/// Average bounded loss over a sample.
pub fn empirical_risk_s(pred: &[usize], truth: &[usize], s: usize) -> Result<f64> {
    check_pair(pred, truth)?;
    let sum: usize = pred
        .iter()
        .zip(truth)
        .map(|(&a, &b)| loss_ls(a, b, s))
        .sum();
    Ok(sum as f64 / pred.len() as f64)
}

/// Classification of all `n(n-1)/2` unordered pairs.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct PairCounts {
    pub concordant: usize,
    pub discordant: usize,
    /// Tie in `x` only.
    pub extra_x: usize,
    /// Tie in `y` only.
    pub extra_y: usize,
    /// Tied in both; these pairs carry no rank information.
    pub ignored: usize,
}

impl PairCounts {
    pub fn total(&self) -> usize {
        self.concordant + self.discordant + self.extra_x + self.extra_y + self.ignored
    }
}

/// Exhaustive O(n^2) pair classification.
pub fn count_pairs(x: &[usize], y: &[usize]) -> Result<PairCounts> {
    check_pair(x, y)?;
    if x.len() < 2 {
        return Err(Error::InvalidArgument("need at least 2 points".into()));
    }
    let mut counts = PairCounts::default();
    for i in 0..x.len() {
        for j in i + 1..x.len() {
            let dx = x[i].cmp(&x[j]);
            let dy = y[i].cmp(&y[j]);
            match (dx.is_eq(), dy.is_eq()) {
                (true, true) => counts.ignored += 1,
                (true, false) => counts.extra_x += 1,
                (false, true) => counts.extra_y += 1,
                (false, false) => {
                    if dx == dy {
                        counts.concordant += 1;
                    } else {
                        counts.discordant += 1;
                    }
                }
            }
        }
    }
    Ok(counts)
}

fn tie_denominator(counts: &PairCounts) -> Result<f64> {
    let dx = (counts.concordant + counts.discordant + counts.extra_x) as f64;
    let dy = (counts.concordant + counts.discordant + counts.extra_y) as f64;
    let denom = (dx * dy).sqrt();
    if denom == 0.0 {
        return Err(Error::DegenerateRanking);
    }
    Ok(denom)
}

/// Kendall's tau-b: `(c - d) / (sqrt(c+d+e_x) * sqrt(c+d+e_y))`.
pub fn kendall_tau_b(x: &[usize], y: &[usize]) -> Result<f64> {
    let counts = count_pairs(x, y)?;
    let denom = tie_denominator(&counts)?;
    Ok((counts.concordant as f64 - counts.discordant as f64) / denom)
}

/// The o_c concordance coefficient:
/// `-1 + 2c / (sqrt(c+d+e_x) * sqrt(c+d+e_y))`.
///
/// Rewards concordance only; equals 1 exactly when every informative pair
/// is concordant (`d = e_x = e_y = 0`, `c > 0`). Note that
/// `o_c <= tau_b` always, with equality precisely when there are no
/// single-variable ties, since the shared denominator is at least `c+d`.
pub fn oc_coefficient(x: &[usize], y: &[usize]) -> Result<f64> {
    let counts = count_pairs(x, y)?;
    let denom = tie_denominator(&counts)?;
    Ok(-1.0 + 2.0 * counts.concordant as f64 / denom)
}

/// Average ranks (ties get the mean rank of their run), 1-based.
fn average_ranks(values: &[usize]) -> Vec<f64> {
    let n = values.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&i| values[i]);
    let mut ranks = vec![0.0; n];
    let mut start = 0;
    while start < n {
        let mut end = start;
        while end + 1 < n && values[order[end + 1]] == values[order[start]] {
            end += 1;
        }
        // positions start..=end share the mean rank
        let mean_rank = (start + end) as f64 / 2.0 + 1.0;
        for t in start..=end {
            ranks[order[t]] = mean_rank;
        }
        start = end + 1;
    }
    ranks
}

/// Spearman's rank correlation: Pearson correlation of average ranks.
pub fn spearman(x: &[usize], y: &[usize]) -> Result<f64> {
    check_pair(x, y)?;
    if x.len() < 2 {
        return Err(Error::InvalidArgument("need at least 2 points".into()));
    }
    let rx = average_ranks(x);
    let ry = average_ranks(y);
    let n = x.len() as f64;
    let mean_x = rx.iter().sum::<f64>() / n;
    let mean_y = ry.iter().sum::<f64>() / n;
    let mut cov = 0.0;
    let mut var_x = 0.0;
    let mut var_y = 0.0;
    for i in 0..x.len() {
        let a = rx[i] - mean_x;
        let b = ry[i] - mean_y;
        cov += a * b;
        var_x += a * a;
        var_y += b * b;
    }
    if var_x == 0.0 || var_y == 0.0 {
        return Err(Error::DegenerateRanking);
    }
    Ok(cov / (var_x * var_y).sqrt())
}

/// Full per-metric report for a prediction/label pairing.
///
/// `rmse` is the square root of `mse`, reported separately for
/// convenience. Rank correlations are `None` when the ranking is
/// degenerate (all predictions or all labels tied).
#[derive(Clone, Copy, Debug)]
pub struct EvaluationReport {
    pub mer: f64,
    pub mae: f64,
    pub mse: f64,
    pub rmse: f64,
    pub spearman: Option<f64>,
    pub kendall_tau_b: Option<f64>,
    pub o_c: Option<f64>,
    pub n: usize,
}

impl EvaluationReport {
    /// Computes every metric; degenerate rank correlations become `None`
    /// rather than aborting the report.
    pub fn compute(pred: &[usize], truth: &[usize]) -> Result<EvaluationReport> {
        let mer = mer(pred, truth)?;
        let mae = mae(pred, truth)?;
        let mse = mse(pred, truth)?;
        let degenerate_to_none = |r: Result<f64>| match r {
            Ok(v) => Ok(Some(v)),
            Err(Error::DegenerateRanking) => Ok(None),
            Err(e) => Err(e),
        };
        Ok(EvaluationReport {
            mer,
            mae,
            mse,
            rmse: mse.sqrt(),
            spearman: degenerate_to_none(spearman(pred, truth))?,
            kendall_tau_b: degenerate_to_none(kendall_tau_b(pred, truth))?,
            o_c: degenerate_to_none(oc_coefficient(pred, truth))?,
            n: pred.len(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mer_basics() {
        assert_eq!(mer(&[1, 2, 3], &[1, 2, 3]).unwrap(), 0.0);
        assert_eq!(mer(&[1, 2], &[2, 1]).unwrap(), 1.0);
        assert!((mer(&[1, 2, 3], &[1, 2, 4]).unwrap() - 1.0 / 3.0).abs() < 1e-15);
        assert!(mer(&[], &[]).is_err());
        assert!(mer(&[1], &[1, 2]).is_err());
    }

    #[test]
    fn mae_mse_basics() {
        assert_eq!(mae(&[1], &[4]).unwrap(), 3.0);
        assert_eq!(mse(&[1], &[4]).unwrap(), 9.0);
        assert_eq!(mae(&[2, 2], &[2, 2]).unwrap(), 0.0);
        // Jensen: MAE <= sqrt(MSE)
        let p = [1, 5, 2, 4, 3, 3];
        let t = [2, 1, 2, 5, 1, 4];
        assert!(mae(&p, &t).unwrap() <= mse(&p, &t).unwrap().sqrt() + 1e-15);
    }

    #[test]
    fn bounded_loss() {
        assert_eq!(loss_ls(3, 3, 1), 0);
        assert_eq!(loss_ls(3, 1, 1), 1);
        assert_eq!(loss_ls(3, 1, 2), 2);
        assert_eq!(loss_ls(1, 3, 5), 2);
        assert_eq!(empirical_risk_s(&[3, 1], &[1, 1], 1).unwrap(), 0.5);
    }

    #[test]
    fn pair_counting_oracle_cases() {
        let counts = count_pairs(&[1, 2, 3], &[1, 2, 3]).unwrap();
        assert_eq!(counts.concordant, 3);
        assert_eq!(counts.total(), 3);

        let counts = count_pairs(&[1, 2, 3], &[3, 2, 1]).unwrap();
        assert_eq!(counts.discordant, 3);

        // hand-enumerated: (0,1) ties x, (0,2) concordant, (1,2) ties y
        let counts = count_pairs(&[1, 1, 2], &[1, 2, 2]).unwrap();
        assert_eq!(
            counts,
            PairCounts {
                concordant: 1,
                discordant: 0,
                extra_x: 1,
                extra_y: 1,
                ignored: 0
            }
        );
    }

    #[test]
    fn tau_b_values() {
        assert_eq!(kendall_tau_b(&[1, 2, 3], &[1, 2, 3]).unwrap(), 1.0);
        assert_eq!(kendall_tau_b(&[1, 2, 3], &[3, 2, 1]).unwrap(), -1.0);
        assert!((kendall_tau_b(&[1, 1, 2], &[1, 2, 2]).unwrap() - 0.5).abs() < 1e-15);
        assert!(matches!(
            kendall_tau_b(&[1, 1, 1], &[1, 2, 3]),
            Err(Error::DegenerateRanking)
        ));
    }

    #[test]
    fn oc_values() {
        assert_eq!(oc_coefficient(&[1, 2, 3], &[1, 2, 3]).unwrap(), 1.0);
        assert_eq!(oc_coefficient(&[1, 2, 3], &[3, 2, 1]).unwrap(), -1.0);
        assert!((oc_coefficient(&[1, 1, 2], &[1, 2, 2]).unwrap() - 0.0).abs() < 1e-15);
        assert!(oc_coefficient(&[2, 2], &[1, 2]).is_err());
    }

    #[test]
    fn spearman_values() {
        assert_eq!(spearman(&[1, 2, 3, 4], &[1, 2, 3, 4]).unwrap(), 1.0);
        assert_eq!(spearman(&[1, 2, 3, 4], &[4, 3, 2, 1]).unwrap(), -1.0);
        assert!(matches!(
            spearman(&[2, 2, 2], &[1, 2, 3]),
            Err(Error::DegenerateRanking)
        ));
    }

    #[test]
    fn spearman_mean_ranks() {
        // values [10, 20, 20, 30] -> ranks [1, 2.5, 2.5, 4]
        let ranks = average_ranks(&[10, 20, 20, 30]);
        assert_eq!(ranks, vec![1.0, 2.5, 2.5, 4.0]);
    }

    #[test]
    fn report_has_all_fields() {
        let report = EvaluationReport::compute(&[1, 2, 3, 3], &[1, 2, 2, 3]).unwrap();
        assert!(report.mer > 0.0);
        assert_eq!(report.n, 4);
        assert!((report.rmse - report.mse.sqrt()).abs() < 1e-15);
        assert!(report.spearman.is_some());

        // degenerate predictions: correlations unavailable, error rates fine
        let report = EvaluationReport::compute(&[2, 2, 2], &[1, 2, 3]).unwrap();
        assert!(report.spearman.is_none());
        assert!(report.kendall_tau_b.is_none());
        assert!(report.o_c.is_none());
        assert!((report.mer - 2.0 / 3.0).abs() < 1e-15);
    }
}
