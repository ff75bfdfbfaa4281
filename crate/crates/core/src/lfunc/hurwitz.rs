//! Hurwitz zeta by Euler-Maclaurin summation, and `L(s, chi)` through it.
//! This is the oracle for the Dirichlet approximate functional equation.

use num_complex::Complex64;

use crate::characters::Character;
use crate::error::{Error, Result};
use crate::sum::ComplexSum;

/// `B_{2j} / (2j)!` for `j = 1..=16`.
const BERNOULLI_OVER_FACTORIAL: [f64; 16] = {
    const B: [(f64, f64); 16] = [
        (1.0, 6.0),
        (-1.0, 30.0),
        (1.0, 42.0),
        (-1.0, 30.0),
        (5.0, 66.0),
        (-691.0, 2730.0),
        (7.0, 6.0),
        (-3617.0, 510.0),
        (43867.0, 798.0),
        (-174611.0, 330.0),
        (854513.0, 138.0),
        (-236364091.0, 2730.0),
        (8553103.0, 6.0),
        (-23749461029.0, 870.0),
        (8615841276005.0, 14322.0),
        (-7709321041217.0, 510.0),
    ];
    let mut out = [0.0; 16];
    let mut fact = 1.0;
    let mut j = 0;
    while j < 16 {
        let k = 2.0 * (j as f64 + 1.0);
        fact *= (k - 1.0) * k;
        out[j] = B[j].0 / B[j].1 / fact;
        j += 1;
    }
    out
};

/// Correction terms used; the remainder is bounded by the next one.
const TERMS: usize = 15;

/// A value together with a bound on its truncation error.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct HurwitzValue {
    pub value: Complex64,
    pub remainder_bound: f64,
}

/// `zeta(s, a) - x^{1-s}/(s-1)` with `x = m + a`, and the remainder bound.
fn zeta_regular_part(s: Complex64, a: f64, m: usize) -> (Complex64, f64, f64) {
    let mut acc = ComplexSum::new();
    for k in (0..m).rev() {
        acc.add((-s * (k as f64 + a).ln()).exp());
    }
    let x = m as f64 + a;
    let lnx = x.ln();
    let x_s = (-s * lnx).exp();
    acc.add(x_s * 0.5);
    // Term j: c_j (s)_{2j-1} x^{-s-2j+1}.
    let mut poch = s;
    let mut xpow = x_s / x;
    for (j, &c) in BERNOULLI_OVER_FACTORIAL.iter().take(TERMS).enumerate() {
        acc.add(poch * xpow * c);
        let k = 2.0 * j as f64;
        poch *= (s + k + 1.0) * (s + k + 2.0);
        xpow /= x * x;
    }
    let k = 2.0 * TERMS as f64 + 1.0;
    let next = (poch * xpow * BERNOULLI_OVER_FACTORIAL[TERMS]).norm();
    let bound = next * (s + k).norm() / (s.re + k);
    (acc.value(), x, bound)
}

fn summation_start(s: Complex64) -> usize {
    s.norm().ceil() as usize + 30
}

/// `zeta(s, a)` for `0 < a <= 1`, `s != 1`, `Re s > -2 * TERMS`.
pub fn hurwitz_zeta(s: Complex64, a: f64) -> Result<HurwitzValue> {
    if !(a > 0.0 && a <= 1.0) {
        return Err(Error::InvalidParameter(format!("Hurwitz shift a = {a} outside (0, 1]")));
    }
    if s == Complex64::new(1.0, 0.0) {
        return Err(Error::InvalidParameter("Hurwitz zeta has a pole at s = 1".into()));
    }
    if s.re <= -(2.0 * TERMS as f64) {
        return Err(Error::InvalidParameter(format!("s = {s} too far left for Euler-Maclaurin")));
    }
    let (rest, x, bound) = zeta_regular_part(s, a, summation_start(s));
    let pole = ((1.0 - s) * x.ln()).exp() / (s - 1.0);
    Ok(HurwitzValue {
        value: rest + pole,
        remainder_bound: bound,
    })
}

/// `(e^z - 1) / z`, accurate near 0.
fn expm1_over(z: Complex64) -> Complex64 {
    if z.norm() < 1e-3 {
        1.0 + z * (0.5 + z * (1.0 / 6.0 + z / 24.0))
    } else {
        (z.exp() - 1.0) / z
    }
}

/// `L(s, chi) = q^{-s} sum_{a=1}^{q-1} chi(a) zeta(s, a/q)`.
///
/// For non-principal `chi` the `1/(s-1)` parts cancel exactly and are
/// dropped, so `s = 1` is allowed; for the principal character it is a pole.
pub fn l_chi_hurwitz(s: Complex64, chi: &Character) -> Result<HurwitzValue> {
    const REL_TOL: f64 = 1e-12;
    let q = chi.table().q();
    let one = Complex64::new(1.0, 0.0);
    if chi.is_principal() && s == one {
        return Err(Error::InvalidParameter("L(s, chi_0) has a pole at s = 1".into()));
    }
    if s.re <= -(2.0 * TERMS as f64) {
        return Err(Error::InvalidParameter(format!("s = {s} too far left for Euler-Maclaurin")));
    }
    let m = summation_start(s);
    let mut acc = ComplexSum::new();
    let mut bound = 0.0;
    for a in 1..q {
        let v = chi.value(a as i64);
        let (rest, x, b) = zeta_regular_part(s, a as f64 / q as f64, m);
        let lnx = x.ln();
        let pole = if chi.is_principal() {
            ((one - s) * lnx).exp() / (s - one)
        } else {
            -lnx * expm1_over((one - s) * lnx)
        };
        acc.add(v * (rest + pole));
        bound += b;
    }
    let qs = (-s * (q as f64).ln()).exp();
    let value = acc.value() * qs;
    let remainder_bound = bound * qs.norm();
    if remainder_bound > REL_TOL * value.norm().max(1.0) {
        return Err(Error::Convergence(format!(
            "Euler-Maclaurin remainder {remainder_bound:.1e} at s = {s} exceeds tolerance"
        )));
    }
    Ok(HurwitzValue {
        value,
        remainder_bound,
    })
}
