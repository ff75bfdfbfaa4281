//! Complex gamma function via Stirling's series with upward recursion and
//! reflection.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};

const HALF_LN_TWO_PI: f64 = 0.918_938_533_204_672_8;

/// `B_{2k} / (2k (2k-1))` for `k = 1..10`.
const STIRLING: [f64; 10] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360360.0,
    1.0 / 156.0,
    -3617.0 / 122400.0,
    43867.0 / 244188.0,
    -174611.0 / 125400.0,
];

/// Below this modulus the argument is shifted upward before Stirling applies.
const STIRLING_RADIUS: f64 = 13.0;

fn is_pole(s: Complex64) -> bool {
    s.im == 0.0 && s.re <= 0.0 && s.re == s.re.round()
}

fn stirling(z: Complex64) -> Complex64 {
    let inv = z.inv();
    let inv2 = inv * inv;
    let mut series = Complex64::new(0.0, 0.0);
    let mut pow = inv;
    for c in STIRLING {
        series += pow * c;
        pow *= inv2;
    }
    (z - 0.5) * z.ln() - z + HALF_LN_TWO_PI + series
}

/// `ln sin(pi z)` on some branch, stable for large `|Im z|`.
pub(crate) fn ln_sin_pi(z: Complex64) -> Complex64 {
    let n = z.re.round();
    let w = Complex64::new(z.re - n, z.im);
    let parity = if (n as i64).rem_euclid(2) == 1 {
        Complex64::new(0.0, PI)
    } else {
        Complex64::new(0.0, 0.0)
    };
    let i = Complex64::i();
    let two_i = Complex64::new(0.0, 2.0);
    let body = if w.im.abs() < 10.0 {
        (w * PI).sin().ln()
    } else if w.im > 0.0 {
        // sin(pi w) = e^{-i pi w} (e^{2 i pi w} - 1) / (2i)
        -i * PI * w + ((i * 2.0 * PI * w).exp() - 1.0).ln() - two_i.ln()
    } else {
        // sin(pi w) = e^{i pi w} (1 - e^{-2 i pi w}) / (2i)
        i * PI * w + (1.0 - (-i * 2.0 * PI * w).exp()).ln() - two_i.ln()
    };
    body + parity
}

fn ln_gamma_right(z: Complex64) -> Complex64 {
    let mut z = z;
    let mut prod = Complex64::new(1.0, 0.0);
    let mut shifted = false;
    while z.norm() < STIRLING_RADIUS {
        prod *= z;
        z += 1.0;
        shifted = true;
    }
    let base = stirling(z);
    if shifted {
        base - prod.ln()
    } else {
        base
    }
}

/// `ln Gamma(s)` on a branch whose exponential is `Gamma(s)`; only the real
/// part and the value modulo `2 pi i` are meaningful.
pub fn ln_gamma(s: Complex64) -> Result<Complex64> {
    if !s.re.is_finite() || !s.im.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "non-finite gamma argument {s}"
        )));
    }
    if is_pole(s) {
        return Err(Error::GammaPole(s));
    }
    if s.re >= 0.5 {
        Ok(ln_gamma_right(s))
    } else {
        let one_minus = Complex64::new(1.0, 0.0) - s;
        Ok(Complex64::new(PI.ln(), 0.0) - ln_sin_pi(s) - ln_gamma_right(one_minus))
    }
}

/// `Gamma(s)` for complex `s` away from the non-positive integers.
pub fn complex_gamma(s: Complex64) -> Result<Complex64> {
    let s_real = s.im == 0.0;
    let g = ln_gamma(s)?.exp();
    Ok(if s_real { Complex64::new(g.re, 0.0) } else { g })
}

/// `Gamma(a) / Gamma(b)` evaluated through logarithms to avoid overflow.
pub fn gamma_ratio(a: Complex64, b: Complex64) -> Result<Complex64> {
    Ok((ln_gamma(a)? - ln_gamma(b)?).exp())
}
