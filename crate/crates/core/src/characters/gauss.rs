use num_complex::Complex64;

use super::table::{Character, CharacterTable};
use crate::error::{Error, Result};
use crate::sum::csum;

pub(super) fn gauss_sum_direct(chi: &Character<'_>) -> Complex64 {
    let t = chi.table();
    csum((1..t.q() as i64).map(|a| chi.value(a) * t.e_q(a)))
}

/// `tau(chi) = sum_{a mod q} chi(a) e(a/q)`.
pub fn gauss_sum(chi: &Character<'_>) -> Complex64 {
    chi.gauss_sum()
}

/// `(tau(conj chi) tau(chi), q)` for an even primitive character.
pub fn gauss_product_identity(chi: &Character<'_>) -> Result<(Complex64, f64)> {
    let t = chi.table();
    if chi.is_principal() || !chi.is_even() {
        return Err(Error::CharacterKind {
            index: chi.index(),
            q: t.q(),
            kind: if chi.is_principal() {
                "principal"
            } else {
                "odd"
            },
            needed: "an even primitive",
        });
    }
    Ok((chi.conj().gauss_sum() * chi.gauss_sum(), t.q() as f64))
}

/// Kloosterman sum `S(a, b; q)` for a prime `q >= 3`.
pub fn kloosterman(a: i64, b: i64, q: u64) -> Result<f64> {
    Ok(CharacterTable::new(q)?.kloosterman(a, b))
}
