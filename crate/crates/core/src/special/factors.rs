//! Archimedean gamma factors of `L(s, chi)` and `L(s, f x chi)` and the root
//! ratios that appear in their functional equations.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::gamma::ln_gamma;
use crate::error::{Error, Result};

/// A point `s0 = sigma0 + i t0` with `tau = |t0| + 3`.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct EvaluationPoint {
    pub sigma0: f64,
    pub t0: f64,
}

impl EvaluationPoint {
    /// Requires `1/2 <= sigma0 < 1`.
    pub fn new(sigma0: f64, t0: f64) -> Result<Self> {
        if !(0.5..1.0).contains(&sigma0) || !t0.is_finite() {
            return Err(Error::SigmaOutOfRange(sigma0));
        }
        Ok(Self { sigma0, t0 })
    }

    /// Accepts any finite `sigma0`; used by oracles evaluating off the strip.
    pub fn extended(sigma0: f64, t0: f64) -> Result<Self> {
        if !sigma0.is_finite() || !t0.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "non-finite evaluation point {sigma0} + {t0}i"
            )));
        }
        Ok(Self { sigma0, t0 })
    }

    pub fn s0(&self) -> Complex64 {
        Complex64::new(self.sigma0, self.t0)
    }

    pub fn tau(&self) -> f64 {
        self.t0.abs() + 3.0
    }
}

/// `ln(pi^{-s/2} Gamma(s/2))`.
pub fn ln_gamma_dirichlet(s: Complex64) -> Result<Complex64> {
    Ok(-s * 0.5 * PI.ln() + ln_gamma(s * 0.5)?)
}

/// `ln(pi^{-s} Gamma((s + iT)/2) Gamma((s - iT)/2))`.
pub fn ln_gamma_maass(s: Complex64, t_f: f64) -> Result<Complex64> {
    let it = Complex64::new(0.0, t_f);
    Ok(-s * PI.ln() + ln_gamma((s + it) * 0.5)? + ln_gamma((s - it) * 0.5)?)
}

pub fn gamma_dirichlet(s: Complex64) -> Result<Complex64> {
    Ok(ln_gamma_dirichlet(s)?.exp())
}

pub fn gamma_maass(s: Complex64, t_f: f64) -> Result<Complex64> {
    Ok(ln_gamma_maass(s, t_f)?.exp())
}

/// `gamma(1 - s) / gamma(s)` for the Dirichlet factor.
pub fn gamma_ratio_dirichlet(s: Complex64) -> Result<Complex64> {
    let one = Complex64::new(1.0, 0.0);
    Ok((ln_gamma_dirichlet(one - s)? - ln_gamma_dirichlet(s)?).exp())
}

/// `gamma~(1 - s) / gamma~(s)` for the Maass factor.
pub fn gamma_ratio_maass(s: Complex64, t_f: f64) -> Result<Complex64> {
    let one = Complex64::new(1.0, 0.0);
    Ok((ln_gamma_maass(one - s, t_f)? - ln_gamma_maass(s, t_f)?).exp())
}

/// `|ratio| / tau^{1 - 2 sigma0}` for the Maass root ratio; Stirling predicts
/// a value of moderate size once `tau` is large.
pub fn maass_ratio_stirling_defect(p: &EvaluationPoint, t_f: f64) -> Result<f64> {
    let r = gamma_ratio_maass(p.s0(), t_f)?;
    Ok(r.norm() / p.tau().powf(1.0 - 2.0 * p.sigma0))
}
