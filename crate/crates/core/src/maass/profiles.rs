//! Growth profiles of the coefficients: the Rankin-Selberg mean square, the
//! square-root cancellation of additively twisted sums, and a pointwise
//! Ramanujan-type report.

use std::f64::consts::TAU;

use num_complex::Complex64;

use super::form::MaassForm;
use crate::arith;
use crate::error::{Error, Result};
use crate::sum::{csum, KahanSum};

fn check_grid(f: &MaassForm, grid: &[usize]) -> Result<()> {
    if grid.contains(&0) {
        return Err(Error::InvalidParameter("grid points must be >= 1".into()));
    }
    if let Some(&max) = grid.iter().max() {
        f.require_depth(max)?;
    }
    Ok(())
}

/// `(x, sum_{n <= x} lambda(n)^2 / x)` for each `x` in the grid.
pub fn rankin_selberg_profile(f: &MaassForm, x_grid: &[usize]) -> Result<Vec<(usize, f64)>> {
    check_grid(f, x_grid)?;
    let max = x_grid.iter().copied().max().unwrap_or(0);
    let mut prefix = Vec::with_capacity(max + 1);
    let mut acc = KahanSum::new();
    prefix.push(0.0);
    for n in 1..=max {
        acc.add(f.lambda(n) * f.lambda(n));
        prefix.push(acc.value());
    }
    Ok(x_grid.iter().map(|&x| (x, prefix[x] / x as f64)).collect())
}

/// `(alpha, N, |sum_{n <= N} lambda(n) e(alpha n)| / N^{0.6})` for every
/// `alpha` and every `N` in the grid.
pub fn wilton_profile(
    f: &MaassForm,
    alphas: &[f64],
    n_grid: &[usize],
) -> Result<Vec<(f64, usize, f64)>> {
    check_grid(f, n_grid)?;
    let mut out = Vec::with_capacity(alphas.len() * n_grid.len());
    for &alpha in alphas {
        for &n in n_grid {
            let s = csum((1..=n).map(|k| {
                // Reduce alpha k mod 1 before the exponential to keep phases exact.
                let phase = (alpha * k as f64).rem_euclid(1.0);
                Complex64::from_polar(f.lambda(k), TAU * phase)
            }));
            out.push((alpha, n, s.norm() / (n as f64).powf(0.6)));
        }
    }
    Ok(out)
}

/// Pointwise size of the coefficients against `n^theta d(n)`; reported only.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct RamanujanReport {
    pub theta: f64,
    pub worst_n: usize,
    pub worst_ratio: f64,
}

pub fn ramanujan_report(f: &MaassForm, theta: f64) -> RamanujanReport {
    let mut worst = (1, 0.0);
    for n in 1..=f.depth() {
        let bound = (n as f64).powf(theta) * arith::divisor_count(n as u64) as f64;
        let r = f.lambda(n).abs() / bound;
        if r > worst.1 {
            worst = (n, r);
        }
    }
    RamanujanReport {
        theta,
        worst_n: worst.0,
        worst_ratio: worst.1,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::maass::bundled_form;

    #[test]
    fn rankin_selberg_ratio_bounded() {
        let f = bundled_form();
        let grid = [10, 100, 1000, 10_000, f.depth()];
        for (x, r) in rankin_selberg_profile(f, &grid).unwrap() {
            assert!(r > 0.1 && r < 5.0, "x={x} ratio={r}");
        }
        assert!(rankin_selberg_profile(f, &[]).unwrap().is_empty());
        assert!(rankin_selberg_profile(f, &[f.depth() + 1]).is_err());
    }

    #[test]
    fn wilton_sums_bounded() {
        let f = bundled_form();
        let alphas = [0.0, 0.5, 1.0 / 3.0, 0.1234, 2f64.sqrt() - 1.0];
        let grid = [1, 10, 100, 1000, 10_000, 100_000];
        for (a, n, v) in wilton_profile(f, &alphas, &grid).unwrap() {
            assert!(v <= 10.0, "alpha={a} N={n} value={v}");
        }
        let one = wilton_profile(f, &[0.37], &[1]).unwrap();
        assert!((one[0].2 - 1.0).abs() < 1e-15);
    }

    #[test]
    fn ramanujan_report_runs() {
        let r = ramanujan_report(&bundled_form().truncated(10_000).unwrap(), 7.0 / 64.0);
        assert!(r.worst_ratio > 0.0 && r.worst_ratio.is_finite());
    }
}
