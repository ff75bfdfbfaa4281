use num_complex::Complex64;
use rayon::prelude::*;

use super::MomentTables;
use crate::characters::Parity;
use crate::error::{Error, Result};
use crate::lfunc::AfeResult;
use crate::sum::{csum, rsum};

/// One character's contribution to the moment.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct CharacterTerm {
    pub index: usize,
    pub twisted: AfeResult,
    pub dirichlet: AfeResult,
    /// `L(s0, f x chi) conj L(s0, chi)`.
    pub product: Complex64,
    /// Truncation bound of `product`.
    pub bound: f64,
}

#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct DirectMoment {
    pub value: Complex64,
    pub terms: Vec<CharacterTerm>,
    /// Sum of the per-character truncation bounds.
    pub truncation_bound: f64,
}

/// Sum over even primitive characters of the AFE products, in increasing
/// character index. Characters are evaluated in parallel; the reduction order
/// is fixed, so the result does not depend on the thread count.
pub fn lhs_moment(tables: &MomentTables) -> Result<DirectMoment> {
    let q = tables.q();
    let indices = tables.table.enumerate(Parity::Even, true);
    let terms = indices
        .par_iter()
        .map(|&index| {
            let chi = tables.table.character(index);
            let named = |e: Error| Error::AtCharacter {
                index,
                q,
                source: Box::new(e),
            };
            let twisted = tables.twisted.eval(&chi).map_err(named)?;
            let dirichlet = tables.dirichlet.eval(&chi).map_err(named)?;
            let product = twisted.value * dirichlet.value.conj();
            if !product.is_finite() {
                return Err(named(Error::Validation(format!("non-finite product {product}"))));
            }
            Ok(CharacterTerm {
                index,
                twisted,
                dirichlet,
                product,
                bound: tables.product_bound(twisted.value.norm(), dirichlet.value.norm()),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(DirectMoment {
        value: csum(terms.iter().map(|t| t.product)),
        truncation_bound: rsum(terms.iter().map(|t| t.bound)),
        terms,
    })
}
