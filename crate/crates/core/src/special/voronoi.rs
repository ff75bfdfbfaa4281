//! Kernels of the Voronoi summation formula for a level-one Maass form:
//! the gamma quotients `G^±` and the Mellin-Barnes transforms `Psi^±`.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;

use super::gamma::{ln_gamma, ln_sin_pi};
use super::weights::WeightParams;
use crate::characters::Sign;
use crate::error::{Error, Result};

/// `G^±(s)`, with both quotients symmetric under `T -> -T`:
///
/// `2 pi G^±(s) = Γ((1+s+iT)/2) Γ((1+s-iT)/2) / (Γ((-s+iT)/2) Γ((-s-iT)/2))
///              ± Γ((2+s+iT)/2) Γ((2+s-iT)/2) / (Γ((1-s+iT)/2) Γ((1-s-iT)/2))`.
///
/// One of the two combinations is exponentially small, so it is evaluated in
/// factored form: with `a, b = (s ± iT)/2` the second quotient is the first
/// times `cot(pi a) cot(pi b)`, giving
/// `1 + cot cot = cosh(pi T) / (sin(pi a) sin(pi b))` and
/// `1 - cot cot = -cos(pi s) / (sin(pi a) sin(pi b))`.
pub fn voronoi_g(sign: Sign, s: Complex64, t_f: f64) -> Result<Complex64> {
    let it = Complex64::new(0.0, t_f);
    let lg = |z: Complex64| ln_gamma(z * 0.5);
    let ln_even = lg(1.0 + s + it)? + lg(1.0 + s - it)? - lg(-s + it)? - lg(-s - it)?;
    let ln_sines = ln_sin_pi((s + it) * 0.5) + ln_sin_pi((s - it) * 0.5);
    let ln_factor = match sign {
        Sign::Plus => {
            let x = PI * t_f.abs();
            Complex64::new(x + (-2.0 * x).exp().ln_1p() - 2f64.ln(), 0.0)
        }
        // -cos(pi s) = sin(pi (s - 1/2))
        Sign::Minus => ln_sin_pi(s - 0.5),
    };
    Ok((ln_even + ln_factor - ln_sines).exp() / (2.0 * PI))
}

/// The two gamma quotients of [`voronoi_g`] before the `±` combination.
pub fn voronoi_quotients(s: Complex64, t_f: f64) -> Result<(Complex64, Complex64)> {
    let it = Complex64::new(0.0, t_f);
    let lg = |z: Complex64| ln_gamma(z * 0.5);
    let even = lg(1.0 + s + it)? + lg(1.0 + s - it)? - lg(-s + it)? - lg(-s - it)?;
    let odd = lg(2.0 + s + it)? + lg(2.0 + s - it)? - lg(1.0 - s + it)? - lg(1.0 - s - it)?;
    Ok((even.exp(), odd.exp()))
}

/// The `C^∞` bump `exp(-1/(1-x^2))`, `x = 2u - 3`, supported on `[1, 2]`.
pub fn bump(u: f64) -> f64 {
    let x = 2.0 * u - 3.0;
    if x.abs() >= 1.0 {
        0.0
    } else {
        (-1.0 / (1.0 - x * x)).exp()
    }
}

/// Mellin transform `psi~(s) = int psi(u) u^{s-1} du` of [`bump`], by the
/// trapezoidal rule in `v = ln u`; the integrand vanishes to all orders at
/// both ends, so the rule converges faster than any power of the step.
#[derive(Debug, Clone)]
pub struct BumpMellin {
    step: f64,
    samples: Vec<(f64, f64)>,
}

impl BumpMellin {
    pub fn new(nodes: usize) -> Self {
        let len = 2f64.ln();
        let step = len / nodes as f64;
        let samples = (1..nodes)
            .map(|j| {
                let v = j as f64 * step;
                (v, bump(v.exp()) * step)
            })
            .collect();
        Self { step, samples }
    }

    pub fn eval(&self, s: Complex64) -> Complex64 {
        let ratio = (s * self.step).exp();
        let mut pow = ratio;
        let mut acc = Complex64::new(0.0, 0.0);
        for (j, &(v, w)) in self.samples.iter().enumerate() {
            if j % 64 == 0 {
                pow = (s * v).exp();
            }
            acc += pow * w;
            pow *= ratio;
        }
        acc
    }
}

/// Default line for `Psi^±`: far enough from the poles at `Re s = -1` that a
/// coarse step resolves the integrand.
pub const DEFAULT_PSI_SIGMA: f64 = -0.5;

/// Inner Mellin nodes per unit of `node_count`.
pub const MELLIN_NODES_PER_COUNT: usize = 8;

/// Horizontal distance used to size the trapezoidal step on `Re s = sigma`.
fn strip_gap(sigma: f64) -> f64 {
    (sigma + 1.0).min(0.5)
}

/// Tabulated `G^±(s) psi~(-s)` on a line `Re s = sigma`, for evaluating
/// `Psi^±(y) = (1/2 pi i) int (pi^2 y)^{-s} G^±(s) psi~(-s) ds` at many `y`.
#[derive(Debug, Clone)]
pub struct PsiKernel {
    sigma: f64,
    h: f64,
    half: usize,
    coef: Vec<Complex64>,
    y_range: (f64, f64),
}

impl PsiKernel {
    /// Builds the table for `y` in `y_range`; `mellin` is `psi~` at its own
    /// argument (the kernel evaluates it at `-s`).
    pub fn new<F>(
        sign: Sign,
        t_f: f64,
        mellin: F,
        sigma: f64,
        y_range: (f64, f64),
        p: &WeightParams,
    ) -> Result<Self>
    where
        F: Fn(Complex64) -> Complex64 + Sync,
    {
        p.validate()?;
        if !(sigma > -1.0) {
            return Err(Error::InvalidParameter(format!(
                "Psi line sigma = {sigma} must exceed -1"
            )));
        }
        let (ylo, yhi) = y_range;
        if !(ylo > 0.0 && yhi >= ylo) {
            return Err(Error::InvalidParameter(format!("bad y range {y_range:?}")));
        }
        let integrand = |t: f64| -> Result<Complex64> {
            let s = Complex64::new(sigma, t);
            Ok(voronoi_g(sign, s, t_f)? * mellin(-s))
        };

        // Locate the range where the integrand is above tail_tol of its peak,
        // scanning outward on a coarse grid in blocks.
        let coarse = 0.5;
        let block = 40;
        let mut peak = 0f64;
        let mut t_max;
        let limit = 50_000.0;
        let mut k = 0usize;
        loop {
            let mut block_max = 0f64;
            for _ in 0..block {
                let t = k as f64 * coarse;
                let m = integrand(t)?.norm().max(integrand(-t)?.norm());
                block_max = block_max.max(m);
                k += 1;
            }
            peak = peak.max(block_max);
            t_max = k as f64 * coarse;
            if block_max < p.tail_tol * peak {
                break;
            }
            if t_max > limit {
                return Err(Error::QuadratureTail(format!(
                    "Psi integrand on Re s = {sigma} still {:.1e} of peak at |t| = {t_max}",
                    block_max / peak
                )));
            }
        }

        let d = strip_gap(sigma);
        let phase = (PI * PI * ylo).ln().abs().max((PI * PI * yhi).ln().abs())
            + 2.0 * (1.0 + t_max).ln()
            + 2.0;
        let h = 2.0 * PI * d / ((1.0 / p.tail_tol).ln() + d * phase);
        let half = (t_max / h).ceil() as usize;
        let scale = h / (2.0 * PI);
        let coef = (0..=2 * half)
            .into_par_iter()
            .map(|i| Ok(integrand((i as f64 - half as f64) * h)? * scale))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            sigma,
            h,
            half,
            coef,
            y_range,
        })
    }

    pub fn node_count(&self) -> usize {
        self.coef.len()
    }

    pub fn y_range(&self) -> (f64, f64) {
        self.y_range
    }

    pub fn eval(&self, y: f64) -> Complex64 {
        const RESYNC: usize = 64;
        let l = (PI * PI * y).ln();
        let step = Complex64::from_polar(1.0, -self.h * l);
        let mut phase = Complex64::new(1.0, 0.0);
        let mut acc = Complex64::new(0.0, 0.0);
        for (i, &a) in self.coef.iter().enumerate() {
            if i % RESYNC == 0 {
                let t = (i as f64 - self.half as f64) * self.h;
                phase = Complex64::from_polar(1.0, -t * l);
            }
            acc += a * phase;
            phase *= step;
        }
        acc * (-self.sigma * l).exp()
    }
}

/// `Psi^±(y)` on the line `Re s = sigma` for the test function whose Mellin
/// transform is `mellin`.
pub fn voronoi_psi<F>(
    sign: Sign,
    y: f64,
    t_f: f64,
    mellin: F,
    sigma: f64,
    p: &WeightParams,
) -> Result<Complex64>
where
    F: Fn(Complex64) -> Complex64 + Sync,
{
    Ok(PsiKernel::new(sign, t_f, mellin, sigma, (y, y), p)?.eval(y))
}

#[cfg(test)]
mod tests {
    use super::*;

    const T: f64 = 13.779751351890738;

    #[test]
    fn linear_structure() {
        let s = Complex64::new(-0.3, 2.5);
        let plus = voronoi_g(Sign::Plus, s, T).unwrap();
        let minus = voronoi_g(Sign::Minus, s, T).unwrap();
        let (even, odd) = voronoi_quotients(s, T).unwrap();
        let scale = even.norm().max(odd.norm()) / (2.0 * PI);
        assert!((plus - minus - odd / PI).norm() < 1e-13 * scale);
        assert!((plus - (even + odd) / (2.0 * PI)).norm() < 1e-13 * scale);
        assert!((minus - (even - odd) / (2.0 * PI)).norm() < 1e-13 * scale);
    }

    #[test]
    fn factored_form_matches_display_across_the_line() {
        for t in [-60.0, -14.0, -3.0, 0.0, 5.0, 13.0, 15.0, 40.0] {
            for sigma in [-0.99, -0.5, 0.0, 0.7] {
                let s = Complex64::new(sigma, t);
                let (even, odd) = voronoi_quotients(s, T).unwrap();
                let scale = even.norm().max(odd.norm()) / (2.0 * PI);
                for sign in Sign::BOTH {
                    let direct = (even + odd * sign.as_f64()) / (2.0 * PI);
                    let g = voronoi_g(sign, s, T).unwrap();
                    assert!((g - direct).norm() < 1e-12 * scale, "s={s} {sign:?}");
                }
            }
        }
    }

    #[test]
    fn schwarz_reflection() {
        for (a, b) in [(-0.99, 3.0), (0.5, -20.0), (-0.5, 100.0)] {
            let s = Complex64::new(a, b);
            for sign in Sign::BOTH {
                let lhs = voronoi_g(sign, s.conj(), T).unwrap().conj();
                let rhs = voronoi_g(sign, s, T).unwrap();
                assert!((lhs - rhs).norm() <= 1e-12 * rhs.norm(), "{s} {sign:?}");
            }
        }
    }

    #[test]
    fn finite_near_left_edge() {
        for t in [-30.0, -T, -1.0, 0.0, 0.7, T, 50.0] {
            for sign in Sign::BOTH {
                let g = voronoi_g(sign, Complex64::new(-0.99, t), T).unwrap();
                assert!(g.re.is_finite() && g.im.is_finite());
            }
        }
    }

    fn psi_params(node_count: usize) -> (WeightParams, BumpMellin) {
        let p = WeightParams {
            node_count,
            tail_tol: 1e-10,
            ..WeightParams::default()
        };
        (p, BumpMellin::new(MELLIN_NODES_PER_COUNT * node_count))
    }

    #[test]
    fn psi_line_shift_invariance() {
        // Right of Re s = 0 the |t|^(2 sigma + 1) growth of G- amplifies the
        // rounding floor of the Mellin transform past the tolerance.
        let (p, m) = psi_params(128);
        for sign in Sign::BOTH {
            let a = voronoi_psi(sign, 1.0, T, |s| m.eval(s), -0.5, &p).unwrap();
            let b = voronoi_psi(sign, 1.0, T, |s| m.eval(s), 0.0, &p).unwrap();
            assert!((a - b).norm() < 1e-8, "{sign:?}: {a} vs {b}");
        }
    }

    #[test]
    fn psi_resolution_stability() {
        let (p, m) = psi_params(256);
        let (p2, m2) = psi_params(512);
        for sign in Sign::BOTH {
            let a = voronoi_psi(sign, 1.0, T, |s| m.eval(s), DEFAULT_PSI_SIGMA, &p).unwrap();
            let b = voronoi_psi(sign, 1.0, T, |s| m2.eval(s), DEFAULT_PSI_SIGMA, &p2).unwrap();
            assert!((a - b).norm() < 1e-9, "{sign:?}: {a} vs {b}");
        }
    }

    #[test]
    fn psi_small_y_scaling() {
        let (p, m) = psi_params(128);
        for sign in Sign::BOTH {
            let k = PsiKernel::new(sign, T, |s| m.eval(s), -0.9, (1e-7, 1.0), &p).unwrap();
            let ratios: Vec<f64> = [1e-1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6]
                .iter()
                .map(|&y| k.eval(y).norm() / y.powf(0.9))
                .collect();
            let max = ratios.iter().cloned().fold(0.0, f64::max);
            assert!(max < 10.0, "{sign:?}: {ratios:?}");
            // Decreasing y never increases the normalized size by more than a constant.
            assert!(
                ratios.last().unwrap() <= &(2.0 * ratios[0]),
                "{sign:?}: {ratios:?}"
            );
        }
    }

    #[test]
    fn bump_mellin_converges() {
        let coarse = BumpMellin::new(512);
        let fine = BumpMellin::new(4096);
        for s in [
            Complex64::new(0.0, 0.0),
            Complex64::new(0.99, 40.0),
            Complex64::new(-1.5, -300.0),
        ] {
            assert!((coarse.eval(s) - fine.eval(s)).norm() < 1e-14);
        }
        // int_1^2 psi(u) du against a fine midpoint rule.
        let n = 200_000;
        let direct: f64 = (0..n)
            .map(|i| bump(1.0 + (i as f64 + 0.5) / n as f64))
            .sum::<f64>()
            / n as f64;
        assert!((fine.eval(Complex64::new(1.0, 0.0)).re - direct).abs() < 1e-12);
    }
}
