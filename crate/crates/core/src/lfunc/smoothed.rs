//! Extrapolated smoothed series and the main-term constant `L(s, f)`.
//!
//! `sum a(n) n^{-s} e^{-n/X} = L(s) + sum_{k>=1} (-1)^k L(s-k) X^{-k} / k!`
//! for an entire `L`, so Richardson extrapolation in `1/X` over a ladder
//! `X, X/2, X/4, ...` removes the smoothing bias order by order.

use num_complex::Complex64;

use super::require_even_primitive;
use crate::characters::Character;
use crate::error::{Error, Result};
use crate::maass::MaassForm;
use crate::sum::{csum, rsum};

/// Default accuracy target of [`l_f`].
pub const DEFAULT_LF_TOL: f64 = 1e-6;

/// Ladder rungs; each halves `X`.
const RUNGS: usize = 6;

/// Result of a Richardson-extrapolated smoothed series.
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct LadderValue {
    pub value: Complex64,
    /// Difference of the last two diagonal Richardson estimates.
    pub error_estimate: f64,
    /// Smoothing scales, smallest first.
    pub scales: Vec<f64>,
    /// Diagonal Richardson estimates, one per rung.
    pub estimates: Vec<Complex64>,
    /// `|estimates[k+1] - estimates[k]|`.
    pub differences: Vec<f64>,
}

fn ladder(terms: &[Complex64], x_max: f64) -> Result<LadderValue> {
    let scales: Vec<f64> = (0..RUNGS)
        .rev()
        .map(|k| x_max / f64::powi(2.0, k as i32))
        .collect();
    let raw: Vec<Complex64> = scales
        .iter()
        .map(|&x| {
            let len = terms.len().min((60.0 * x) as usize);
            csum(terms[..len].iter().enumerate().map(|(i, &t)| t * (-(i as f64 + 1.0) / x).exp()))
        })
        .collect();
    // Neville table in h = 1/X with ratio 2: column k eliminates h^1..h^k.
    let mut prev = raw.clone();
    let mut estimates = vec![raw[0]];
    for k in 1..RUNGS {
        let factor = f64::powi(2.0, k as i32) - 1.0;
        let mut cur = vec![Complex64::new(0.0, 0.0); RUNGS];
        for j in k..RUNGS {
            cur[j] = prev[j] + (prev[j] - prev[j - 1]) / factor;
        }
        estimates.push(cur[k]);
        prev = cur;
    }
    let differences: Vec<f64> = estimates.windows(2).map(|w| (w[1] - w[0]).norm()).collect();
    let n = differences.len();
    if n >= 2 && differences[n - 1] >= differences[n - 2] {
        return Err(Error::Convergence(format!(
            "smoothed-series ladder differences stopped decreasing: {differences:?}"
        )));
    }
    Ok(LadderValue {
        value: estimates[RUNGS - 1],
        error_estimate: differences[n - 1],
        scales,
        estimates,
        differences,
    })
}

fn check_scale(f: &MaassForm, x_max: f64) -> Result<()> {
    let limit = f.depth() as f64 / 10.0;
    if !(x_max > 0.0) || x_max > limit {
        return Err(Error::InvalidParameter(format!(
            "smoothing scale X = {x_max} must lie in (0, depth/10 = {limit}]"
        )));
    }
    Ok(())
}

/// `L(s, f x chi)` from the smoothed series with top scale `x_max`.
pub fn l_twisted_smoothed(
    s: Complex64,
    f: &MaassForm,
    chi: &Character,
    x_max: f64,
) -> Result<LadderValue> {
    require_even_primitive(chi)?;
    if s.re < 0.9 {
        return Err(Error::InvalidParameter(format!(
            "smoothed oracle needs Re s >= 0.9, got {}",
            s.re
        )));
    }
    check_scale(f, x_max)?;
    let terms: Vec<Complex64> = (1..=f.depth())
        .map(|n| chi.value(n as i64) * f.lambda(n) * (-s * (n as f64).ln()).exp())
        .collect();
    ladder(&terms, x_max)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LfMethod {
    /// Truncated Dirichlet series with a partial-summation tail bound.
    Direct,
    /// Extrapolated smoothed series.
    Ladder,
}

#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct LfValue {
    pub s: f64,
    pub value: f64,
    pub error: f64,
    pub method: LfMethod,
    pub terms: usize,
}

/// `max |sum_{n<=x} lambda(n)| / sqrt x` over the fixture.
fn wilton_constant(f: &MaassForm) -> f64 {
    let mut acc = 0.0;
    let mut best: f64 = 0.0;
    for n in 1..=f.depth() {
        acc += f.lambda(n);
        best = best.max(acc.abs() / (n as f64).sqrt());
    }
    best
}

/// `L(s, f)` for real `s >= 1`, to absolute accuracy `tol`.
///
/// The truncated series is used when the tail bound `C N^{1/2-s} (1 + s /
/// (s - 1/2))` meets `tol`, with `C` the largest normalized partial sum seen
/// in the fixture. Otherwise the smoothed ladder is used; if that does not
/// reach `tol` either, the error names the depth the series would need.
pub fn l_f(s: f64, f: &MaassForm, tol: f64) -> Result<LfValue> {
    if !(s >= 1.0) || !s.is_finite() {
        return Err(Error::InvalidParameter(format!("l_f needs real s >= 1, got {s}")));
    }
    if !(tol > 0.0) {
        return Err(Error::InvalidParameter(format!("tolerance {tol} must be positive")));
    }
    let depth = f.depth();
    let c = wilton_constant(f);
    let factor = if s > 0.5 { 1.0 + s / (s - 0.5) } else { f64::INFINITY };
    let tail = c * factor * (depth as f64).powf(0.5 - s);
    if s > 1.0 && tail <= tol {
        let value = rsum((1..=depth).map(|n| f.lambda(n) * (n as f64).powf(-s)));
        return Ok(LfValue {
            s,
            value,
            error: tail,
            method: LfMethod::Direct,
            terms: depth,
        });
    }
    let x_max = depth as f64 / 20.0;
    let terms: Vec<Complex64> = (1..=depth)
        .map(|n| Complex64::new(f.lambda(n) * (n as f64).powf(-s), 0.0))
        .collect();
    let lad = ladder(&terms, x_max);
    match lad {
        Ok(l) if l.error_estimate <= tol => Ok(LfValue {
            s,
            value: l.value.re,
            error: l.error_estimate,
            method: LfMethod::Ladder,
            terms: depth,
        }),
        _ => {
            let required = (c * factor / tol).powf(1.0 / (s - 0.5)).ceil();
            Err(Error::DepthExceeded {
                required: if required.is_finite() { required as usize } else { usize::MAX },
                available: depth,
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::characters::{CharacterTable, Parity};
    use crate::maass::bundled_form;

    #[test]
    fn ladder_matches_direct_series_at_two() {
        let f = bundled_form();
        let t = CharacterTable::new(5).unwrap();
        let chi = t.character(t.enumerate(Parity::Even, true)[0]);
        let s = Complex64::new(2.0, 0.0);
        let l = l_twisted_smoothed(s, f, &chi, f.depth() as f64 / 20.0).unwrap();
        // Direct series; the tail past the fixture is below 1e-10 here.
        let direct = csum(
            (1..=f.depth()).map(|n| chi.value(n as i64) * f.lambda(n) * (n as f64).powi(-2)),
        );
        assert!((l.value - direct).norm() < 1e-9, "{} vs {direct}", l.value);
    }

    #[test]
    fn ladder_differences_decrease_below_one() {
        let f = bundled_form();
        let t = CharacterTable::new(5).unwrap();
        let chi = t.character(t.enumerate(Parity::Even, true)[0]);
        let l = l_twisted_smoothed(Complex64::new(0.95, 0.0), f, &chi, f.depth() as f64 / 20.0)
            .unwrap();
        assert!(l.differences.windows(2).all(|w| w[1] < w[0]), "{:?}", l.differences);
    }

    #[test]
    fn oversized_scale_rejected() {
        let f = bundled_form();
        let t = CharacterTable::new(5).unwrap();
        let chi = t.character(t.enumerate(Parity::Even, true)[0]);
        let x = f.depth() as f64 / 10.0 + 1.0;
        assert!(matches!(
            l_twisted_smoothed(Complex64::new(1.0, 0.0), f, &chi, x),
            Err(Error::InvalidParameter(_))
        ));
    }

    #[test]
    fn l_f_direct_and_ladder() {
        let f = bundled_form();
        let v18 = l_f(1.8, f, DEFAULT_LF_TOL).unwrap();
        assert_eq!(v18.method, LfMethod::Direct);
        assert!(v18.error <= 1e-6);
        let v1 = l_f(1.0, f, DEFAULT_LF_TOL).unwrap();
        assert_eq!(v1.method, LfMethod::Ladder);
        let half = f.truncated(f.depth() / 2).unwrap();
        let v1h = l_f(1.0, &half, 1e-4).unwrap();
        assert!((v1.value - v1h.value).abs() <= 1e-4, "{} vs {}", v1.value, v1h.value);
    }
}
