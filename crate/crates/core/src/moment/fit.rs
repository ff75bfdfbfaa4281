use num_complex::Complex64;
use rayon::prelude::*;

use super::{moment_report, Envelope, MomentConfig, MomentReport, SCHEMA_VERSION, THETA};
use crate::error::{Error, Result};
use crate::maass::MaassForm;
use crate::special::EvaluationPoint;

/// Primes used when no range is given.
pub const DEFAULT_GRID: [u64; 10] = [5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

/// Ordinary least-squares line `y = intercept + slope x`.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct LineFit {
    pub slope: f64,
    pub intercept: f64,
    /// Standard error of the slope; zero for an exact two-point fit.
    pub slope_stderr: f64,
    pub points: usize,
}

pub fn least_squares(xs: &[f64], ys: &[f64]) -> Result<LineFit> {
    let n = xs.len();
    if n != ys.len() || n < 2 {
        return Err(Error::DegenerateFit(format!("{n} points")));
    }
    if xs.iter().chain(ys).any(|v| !v.is_finite()) {
        return Err(Error::DegenerateFit("non-finite data".into()));
    }
    let nf = n as f64;
    let mx = xs.iter().sum::<f64>() / nf;
    let my = ys.iter().sum::<f64>() / nf;
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    if !(sxx > 0.0) {
        return Err(Error::DegenerateFit("zero variance in the abscissae".into()));
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let sse: f64 = xs
        .iter()
        .zip(ys)
        .map(|(x, y)| (y - intercept - slope * x).powi(2))
        .sum();
    let slope_stderr = if n > 2 { (sse / (nf - 2.0) / sxx).sqrt() } else { 0.0 };
    Ok(LineFit {
        slope,
        intercept,
        slope_stderr,
        points: n,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct FitPoint {
    pub q: u64,
    pub lhs_direct: Complex64,
    pub main_term: f64,
    pub residual: Complex64,
    pub residual_abs: f64,
    pub identity_gap: f64,
}

/// Growth of `|lhs - main term|` in `q`, against the predicted envelope.
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct ExponentFit {
    pub schema: u32,
    pub s0: EvaluationPoint,
    pub q_list: Vec<u64>,
    pub points: Vec<FitPoint>,
    /// Slope of `log |residual|` against `log q`.
    pub slope: f64,
    pub slope_stderr: f64,
    pub intercept: f64,
    pub envelope: Envelope,
    pub note: String,
}

impl ExponentFit {
    /// Fits reports already computed at a common `s0`.
    pub fn from_reports(reports: &[MomentReport]) -> Result<Self> {
        require_grid(&reports.iter().map(|r| r.q).collect::<Vec<_>>())?;
        let s0 = reports[0].s0;
        if reports.iter().any(|r| r.s0 != s0) {
            return Err(Error::InvalidParameter("reports mix evaluation points".into()));
        }
        if let Some(r) = reports.iter().find(|r| !(r.residual_abs > 0.0)) {
            return Err(Error::DegenerateFit(format!("zero residual at q = {}", r.q)));
        }
        let xs: Vec<f64> = reports.iter().map(|r| (r.q as f64).ln()).collect();
        let ys: Vec<f64> = reports.iter().map(|r| r.residual_abs.ln()).collect();
        let line = least_squares(&xs, &ys)?;
        Ok(Self {
            schema: SCHEMA_VERSION,
            s0,
            q_list: reports.iter().map(|r| r.q).collect(),
            points: reports
                .iter()
                .map(|r| FitPoint {
                    q: r.q,
                    lhs_direct: r.lhs_direct,
                    main_term: r.main_term,
                    residual: r.residual,
                    residual_abs: r.residual_abs,
                    identity_gap: r.identity_gap,
                })
                .collect(),
            slope: line.slope,
            slope_stderr: line.slope_stderr,
            intercept: line.intercept,
            envelope: Envelope::new(s0.sigma0, THETA)?,
            note: "envelope exponents take epsilon = 0; implied constants depend on f and are not fitted"
                .into(),
        })
    }
}

fn require_grid(q_list: &[u64]) -> Result<()> {
    let mut distinct = q_list.to_vec();
    distinct.sort_unstable();
    distinct.dedup();
    if distinct.len() < 4 {
        return Err(Error::InvalidParameter(format!(
            "a fit needs at least 4 distinct primes, got {q_list:?}"
        )));
    }
    Ok(())
}

/// Moment reports for every `q`, computed in parallel, then fitted.
pub fn exponent_fit(
    q_list: &[u64],
    point: &EvaluationPoint,
    f: &MaassForm,
    label: &str,
    cfg: &MomentConfig,
) -> Result<(ExponentFit, Vec<MomentReport>)> {
    require_grid(q_list)?;
    let reports = q_list
        .par_iter()
        .map(|&q| moment_report(q, point, f, label, cfg))
        .collect::<Result<Vec<_>>>()?;
    Ok((ExponentFit::from_reports(&reports)?, reports))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_line() {
        let xs = [0.0, 1.0, 2.0, 3.0];
        let ys = [1.0, 3.0, 5.0, 7.0];
        let l = least_squares(&xs, &ys).unwrap();
        assert!((l.slope - 2.0).abs() < 1e-14 && (l.intercept - 1.0).abs() < 1e-14);
        assert!(l.slope_stderr < 1e-14);
    }

    #[test]
    fn stderr_of_noisy_line() {
        // Sxy = -2, Sxx = 5.
        let xs = [0.0, 1.0, 2.0, 3.0];
        let ys = [1.0, -1.0, 1.0, -1.0];
        let l = least_squares(&xs, &ys).unwrap();
        assert!((l.slope + 0.4).abs() < 1e-14);
        let sse: f64 = xs.iter().zip(&ys).map(|(x, y)| (y - l.intercept - l.slope * x).powi(2)).sum();
        assert!((l.slope_stderr - (sse / 2.0 / 5.0).sqrt()).abs() < 1e-14);
    }

    #[test]
    fn zero_variance_is_degenerate() {
        let e = least_squares(&[2.0; 4], &[1.0, 2.0, 3.0, 4.0]).unwrap_err();
        assert!(matches!(e, Error::DegenerateFit(_)));
    }

    #[test]
    fn short_grids_are_rejected() {
        assert!(require_grid(&[11]).is_err());
        assert!(require_grid(&[5, 7]).is_err());
        assert!(require_grid(&[5, 5, 7, 7, 11]).is_err());
        assert!(require_grid(&[5, 7, 11, 13]).is_ok());
    }
}
