//! Small shared numeric helpers.

pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub(crate) fn logistic(z: f64) -> f64 {
    1.0 / (1.0 + (-z).exp())
}

/// Recombines Frank–Hall style cumulative estimates `p[i] = Pr(C > i+1)`,
/// `i = 0..K-2`, into class masses: `P(1) = 1-p[0]`,
/// `P(k) = p[k-2] - p[k-1]`, `P(K) = p[K-2]`. Negative masses (possible
/// when the estimates are not monotone) are clamped to zero and the
/// vector renormalized; the pre-clamp masses telescope to one, so the
/// normalizer is always at least one.
pub fn masses_from_above(p_above: &[f64]) -> Vec<f64> {
    let k = p_above.len() + 1;
    let mut masses = Vec::with_capacity(k);
    masses.push(1.0 - p_above[0]);
    for i in 1..k - 1 {
        masses.push(p_above[i - 1] - p_above[i]);
    }
    masses.push(p_above[k - 2]);
    clamp_and_normalize(masses)
}

/// Same recombination from cumulative-below estimates `p[i] = Pr(C <= i+1)`.
pub fn masses_from_below(p_below: &[f64]) -> Vec<f64> {
    let k = p_below.len() + 1;
    let mut masses = Vec::with_capacity(k);
    masses.push(p_below[0]);
    for i in 1..k - 1 {
        masses.push(p_below[i] - p_below[i - 1]);
    }
    masses.push(1.0 - p_below[k - 2]);
    clamp_and_normalize(masses)
}

fn clamp_and_normalize(mut masses: Vec<f64>) -> Vec<f64> {
    for m in &mut masses {
        if *m < 0.0 {
            *m = 0.0;
        }
    }
    let total: f64 = masses.iter().sum();
    for m in &mut masses {
        *m /= total;
    }
    masses
}

/// Index of the largest value; the first one wins ties.
pub(crate) fn argmax_first(values: &[f64]) -> usize {
    let mut best = 0;
    for (i, &v) in values.iter().enumerate().skip(1) {
        if v > values[best] {
            best = i;
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mass_difference_rule() {
        // p = (0.9, 0.2) -> masses (0.1, 0.7, 0.2)
        let masses = masses_from_above(&[0.9, 0.2]);
        assert!((masses[0] - 0.1).abs() < 1e-12);
        assert!((masses[1] - 0.7).abs() < 1e-12);
        assert!((masses[2] - 0.2).abs() < 1e-12);
    }

    #[test]
    fn mass_clamping_keeps_distribution() {
        // non-monotone estimates produce a negative middle mass
        let masses = masses_from_above(&[0.2, 0.9]);
        assert!(masses.iter().all(|&m| m >= 0.0));
        assert!((masses.iter().sum::<f64>() - 1.0).abs() < 1e-12);
        assert_eq!(masses[1], 0.0);
    }

    #[test]
    fn below_matches_above() {
        let above = [0.7, 0.4, 0.1];
        let below: Vec<f64> = above.iter().map(|p| 1.0 - p).collect();
        let a = masses_from_above(&above);
        let b = masses_from_below(&below);
        for (x, y) in a.iter().zip(&b) {
            assert!((x - y).abs() < 1e-12);
        }
    }

    #[test]
    fn argmax_prefers_first() {
        assert_eq!(argmax_first(&[0.2, 0.5, 0.5, 0.1]), 1);
    }
}
