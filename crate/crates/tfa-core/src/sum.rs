//! Deterministic summation helpers: pairwise tree reduction and
//! log-space accumulation for heavily weighted integrands.

use num_complex::Complex64;

/// Pairwise (tree) reduction of real addends; deterministic for a given
/// input order and more accurate than sequential summation.
pub fn pairwise_sum(xs: &[f64]) -> f64 {
    match xs.len() {
        0 => 0.0,
        1 => xs[0],
        2 => xs[0] + xs[1],
        n => {
            let mid = n / 2;
            pairwise_sum(&xs[..mid]) + pairwise_sum(&xs[mid..])
        }
    }
}

/// Pairwise reduction of complex addends.
pub fn pairwise_sum_c(xs: &[Complex64]) -> Complex64 {
    match xs.len() {
        0 => Complex64::new(0.0, 0.0),
        1 => xs[0],
        2 => xs[0] + xs[1],
        n => {
            let mid = n / 2;
            pairwise_sum_c(&xs[..mid]) + pairwise_sum_c(&xs[mid..])
        }
    }
}

/// log(Σ e^{l}) over the addends, computed against the running maximum.
/// Addends are sorted ascending first, so the result is deterministic and
/// insensitive to the caller's enumeration order. `None` addends (true
/// zeros) contribute nothing. Returns `f64::NEG_INFINITY` for an empty sum.
pub fn log_sum_exp(logs: &mut Vec<f64>) -> f64 {
    logs.retain(|l| l.is_finite() || *l == f64::NEG_INFINITY);
    logs.retain(|l| *l != f64::NEG_INFINITY);
    if logs.is_empty() {
        return f64::NEG_INFINITY;
    }
    logs.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let max = *logs.last().unwrap();
    let mut acc = 0.0;
    for l in logs.iter() {
        acc += (*l - max).exp();
    }
    max + acc.ln()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pairwise_matches_naive() {
        let xs: Vec<f64> = (0..1000).map(|i| (i as f64).sin()).collect();
        let naive: f64 = xs.iter().sum();
        assert!((pairwise_sum(&xs) - naive).abs() < 1e-9);
    }

    #[test]
    fn lse_handles_large_exponents() {
        let mut logs = vec![700.0, 700.0];
        let r = log_sum_exp(&mut logs);
        assert!((r - (700.0 + 2f64.ln())).abs() < 1e-12);
        let mut empty = vec![];
        assert_eq!(log_sum_exp(&mut empty), f64::NEG_INFINITY);
    }

    #[test]
    fn lse_matches_direct_sum() {
        let vals = [1.5, 0.2, 3.0, 0.7];
        let mut logs: Vec<f64> = vals.iter().map(|v: &f64| v.ln()).collect();
        let direct: f64 = vals.iter().sum();
        assert!((log_sum_exp(&mut logs).exp() - direct).abs() < 1e-12);
    }
}
