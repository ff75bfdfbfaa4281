use num_complex::Complex64;

use super::{lhs_moment, s_terms_closed_form, Diagnostics, MomentConfig, MomentTables};
use crate::error::{Error, Result};
use crate::lfunc::{l_f, LfValue};
use crate::maass::MaassForm;
use crate::special::EvaluationPoint;

/// Version of the JSON layout of every persisted report.
pub const SCHEMA_VERSION: u32 = 1;

/// `(q / 2) L(2 sigma0, f)`.
pub fn main_term(q: u64, sigma0: f64, f: &MaassForm, lf_tol: f64) -> Result<f64> {
    Ok(q as f64 / 2.0 * l_f(2.0 * sigma0, f, lf_tol)?.value)
}

/// Both routes to the moment at one `(q, s0)` and the main term.
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct MomentReport {
    pub schema: u32,
    pub q: u64,
    pub s0: EvaluationPoint,
    pub form_label: String,
    pub spectral_parameter: f64,
    /// Sum over even primitive characters of the AFE products.
    pub lhs_direct: Complex64,
    pub s1: Complex64,
    pub s2: Complex64,
    pub s3: Complex64,
    pub s4: Complex64,
    /// `L(2 sigma0, f)` as computed for the main term.
    pub l_2sigma: LfValue,
    pub main_term: f64,
    /// `|lhs_direct - (s1 + s2 + s3 + s4)|`.
    pub identity_gap: f64,
    /// `max(tol_identity, 20 * truncation_bound)`.
    pub identity_tolerance: f64,
    /// Sum of the per-character truncation bounds of the products.
    pub truncation_bound: f64,
    /// `lhs_direct - main_term`.
    pub residual: Complex64,
    pub residual_abs: f64,
    pub residual_phase: f64,
    pub characters: usize,
    pub twisted_terms: [usize; 2],
    pub dirichlet_terms: [usize; 2],
    pub diagnostics: Diagnostics,
}

impl MomentReport {
    pub fn from_tables(tables: &MomentTables, label: &str, cfg: &MomentConfig) -> Result<Self> {
        let q = tables.q();
        let direct = lhs_moment(tables)?;
        let closed = s_terms_closed_form(tables)?;
        let l_2sigma = l_f(2.0 * tables.point.sigma0, tables.form, cfg.lf_tol)?;
        let main_term = q as f64 / 2.0 * l_2sigma.value;
        let residual = direct.value - main_term;
        let report = Self {
            schema: SCHEMA_VERSION,
            q,
            s0: tables.point,
            form_label: label.to_string(),
            spectral_parameter: tables.form.spectral_parameter(),
            lhs_direct: direct.value,
            s1: closed.s1,
            s2: closed.s2,
            s3: closed.s3,
            s4: closed.s4,
            l_2sigma,
            main_term,
            identity_gap: (direct.value - closed.total()).norm(),
            identity_tolerance: cfg.tol_identity.max(20.0 * direct.truncation_bound),
            truncation_bound: direct.truncation_bound,
            residual,
            residual_abs: residual.norm(),
            residual_phase: residual.arg(),
            characters: direct.terms.len(),
            twisted_terms: [
                tables.twisted.first_terms().len(),
                tables.twisted.dual_terms().len(),
            ],
            dirichlet_terms: [
                tables.dirichlet.first_terms().len(),
                tables.dirichlet.dual_terms().len(),
            ],
            diagnostics: closed.diagnostics,
        };
        report.check_finite()?;
        Ok(report)
    }

    fn check_finite(&self) -> Result<()> {
        let all = [self.lhs_direct, self.s1, self.s2, self.s3, self.s4, self.residual];
        if all.iter().all(|z| z.is_finite()) && self.main_term.is_finite() {
            Ok(())
        } else {
            Err(Error::Validation(format!("non-finite entry in the q = {} report", self.q)))
        }
    }

    pub fn s_total(&self) -> Complex64 {
        crate::sum::csum([self.s1, self.s2, self.s3, self.s4])
    }

    pub fn identity_holds(&self) -> bool {
        self.identity_gap <= self.identity_tolerance
    }

    /// Fails when the two routes disagree beyond the tolerance.
    pub fn check_identity(&self) -> Result<()> {
        if self.identity_holds() {
            Ok(())
        } else {
            Err(Error::Validation(format!(
                "q = {}, s0 = {} + {}i: identity gap {:.3e} exceeds {:.3e}",
                self.q, self.s0.sigma0, self.s0.t0, self.identity_gap, self.identity_tolerance
            )))
        }
    }
}

/// Builds the tables for `(q, s0, f)` and evaluates both routes.
pub fn moment_report(
    q: u64,
    point: &EvaluationPoint,
    f: &MaassForm,
    label: &str,
    cfg: &MomentConfig,
) -> Result<MomentReport> {
    let tables = MomentTables::new(q, point, f, cfg)?;
    MomentReport::from_tables(&tables, label, cfg)
}
