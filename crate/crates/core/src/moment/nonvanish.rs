use super::{lhs_moment, m_exponent, MomentTables, SCHEMA_VERSION, THETA};
use crate::error::Result;
use crate::special::EvaluationPoint;

#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct ProductTerm {
    pub index: usize,
    pub twisted_abs: f64,
    pub dirichlet_abs: f64,
    pub product_abs: f64,
    pub bound: f64,
    /// `product_abs > 10 * bound`: the product is certified nonzero.
    pub nonvanishing: bool,
}

#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct NonvanishingReport {
    pub schema: u32,
    pub q: u64,
    pub s0: EvaluationPoint,
    pub terms: Vec<ProductTerm>,
    /// Character with the smallest product modulus.
    pub minimizer: usize,
    pub some_nonvanishing: bool,
    /// `M(sigma0)` at the admissible theta.
    pub m_exponent: f64,
    /// `tau^{M(sigma0)}`, the size of q from which a nonvanishing character
    /// is guaranteed up to constants.
    pub corollary_threshold: f64,
    pub note: String,
}

/// Per-character modulus of `L(s0, f x chi) conj L(s0, chi)`.
pub fn nonvanishing_scan(tables: &MomentTables) -> Result<NonvanishingReport> {
    let direct = lhs_moment(tables)?;
    let terms: Vec<ProductTerm> = direct
        .terms
        .iter()
        .map(|t| ProductTerm {
            index: t.index,
            twisted_abs: t.twisted.value.norm(),
            dirichlet_abs: t.dirichlet.value.norm(),
            product_abs: t.product.norm(),
            bound: t.bound,
            nonvanishing: t.product.norm() > 10.0 * t.bound,
        })
        .collect();
    let minimizer = terms
        .iter()
        .min_by(|a, b| a.product_abs.total_cmp(&b.product_abs))
        .map(|t| t.index)
        .expect("q >= 5 has an even primitive character");
    let point = tables.point;
    let m = m_exponent(point.sigma0, THETA)?;
    let threshold = point.tau().powf(m);
    let q = tables.q();
    let note = if (q as f64) < threshold {
        format!("corollary regime unreachable at desk scale: q = {q} < tau^M = {threshold:.3e}")
    } else {
        format!("q = {q} >= tau^M = {threshold:.3e}")
    };
    Ok(NonvanishingReport {
        schema: SCHEMA_VERSION,
        q,
        s0: point,
        some_nonvanishing: terms.iter().any(|t| t.nonvanishing),
        terms,
        minimizer,
        m_exponent: m,
        corollary_threshold: threshold,
        note,
    })
}
