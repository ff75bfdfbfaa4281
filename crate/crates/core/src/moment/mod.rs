//! The first moment `sum over even primitive chi of L(s0, f x chi) conj
//! L(s0, chi)` computed two ways: character by character, and through the
//! closed-form evaluation of the four cross terms of the AFE product.
//!
//! Both routes read the same AFE tables, so they agree up to rounding; any
//! larger gap points at a kernel.

mod closed;
mod direct;
mod exponents;
mod fit;
mod nonvanish;
mod report;

pub use closed::{s_terms_closed_form, ClosedForm, Diagnostics};
pub use direct::{lhs_moment, CharacterTerm, DirectMoment};
pub use exponents::{
    beta_params, beta_params_exact, discriminant, m_exponent, m_exponent_exact, BetaParams,
    Discriminant, Envelope, Rational, THETA,
};
pub use fit::{exponent_fit, least_squares, ExponentFit, FitPoint, LineFit, DEFAULT_GRID};
pub use nonvanish::{nonvanishing_scan, NonvanishingReport, ProductTerm};
pub use report::{main_term, moment_report, MomentReport, SCHEMA_VERSION};

use crate::characters::CharacterTable;
use crate::error::{Error, Result};
use crate::lfunc::{AfeConfig, DirichletAfe, TwistedAfe, DEFAULT_LF_TOL};
use crate::maass::MaassForm;
use crate::special::EvaluationPoint;

/// Settings for one moment computation.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct MomentConfig {
    pub afe: AfeConfig,
    /// Floor of the accepted gap between the two routes.
    pub tol_identity: f64,
    /// Accuracy requested from `L(2 sigma0, f)`.
    pub lf_tol: f64,
}

impl Default for MomentConfig {
    fn default() -> Self {
        Self {
            afe: AfeConfig::default(),
            tol_identity: 1e-6,
            lf_tol: DEFAULT_LF_TOL,
        }
    }
}

impl MomentConfig {
    pub fn validate(&self) -> Result<()> {
        self.afe.validate()?;
        for (name, v) in [("tol_identity", self.tol_identity), ("lf_tol", self.lf_tol)] {
            if !(v > 0.0) || !v.is_finite() {
                return Err(Error::InvalidParameter(format!("{name} = {v} must be positive")));
            }
        }
        Ok(())
    }
}

/// Character table and AFE tables for one `(q, s0, f)`, shared by both
/// routes.
#[derive(Debug)]
pub struct MomentTables<'f> {
    pub table: CharacterTable,
    pub point: EvaluationPoint,
    pub form: &'f MaassForm,
    pub dirichlet: DirichletAfe,
    pub twisted: TwistedAfe,
}

impl<'f> MomentTables<'f> {
    pub fn new(q: u64, point: &EvaluationPoint, f: &'f MaassForm, cfg: &MomentConfig) -> Result<Self> {
        cfg.validate()?;
        let table = CharacterTable::new(q)?;
        if q < 5 {
            return Err(Error::InvalidParameter(format!(
                "q = {q} has no even primitive character; need a prime q >= 5"
            )));
        }
        Ok(Self {
            table,
            point: *point,
            form: f,
            dirichlet: DirichletAfe::new(q, point, &cfg.afe)?,
            twisted: TwistedAfe::new(q, point, f, &cfg.afe)?,
        })
    }

    pub fn q(&self) -> u64 {
        self.table.q()
    }

    /// Bound on the truncation error of one product
    /// `L(s0, f x chi) conj L(s0, chi)` given the two values.
    fn product_bound(&self, twisted: f64, dirichlet: f64) -> f64 {
        let (bt, bd) = (self.twisted.truncation_bound(), self.dirichlet.truncation_bound());
        twisted * bd + dirichlet * bt + bt * bd
    }
}
