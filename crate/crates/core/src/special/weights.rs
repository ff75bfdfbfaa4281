//! The smooth weights `V` and `W` of the approximate functional equations,
//! evaluated as vertical-line integrals of Mellin-Barnes type with the
//! damping factor `G(u) = e^{u^2}`.
//!
//! The integrand's `x`-independent part is tabulated once per weight at
//! equispaced nodes; an evaluation is then a single pass of multiplications.
//! For `x < 1` the line is moved into the pole-free strip left of `u = 0`
//! and the residue `G(0) = 1` is added back.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::factors::EvaluationPoint;
use super::gamma::ln_gamma;
use crate::error::{Error, Result};

/// Quadrature settings for the vertical-line integrals.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct WeightParams {
    /// Abscissa of the integration line for `x >= 1`.
    pub contour_re: f64,
    /// Nodes across `[-t_cutoff, t_cutoff]`.
    pub node_count: usize,
    /// Endpoint magnitude, relative to the peak, below which the line is cut.
    pub tail_tol: f64,
}

impl Default for WeightParams {
    fn default() -> Self {
        Self {
            contour_re: 2.0,
            node_count: 128,
            tail_tol: 1e-14,
        }
    }
}

impl WeightParams {
    pub fn validate(&self) -> Result<()> {
        if self.node_count < 64 {
            return Err(Error::InvalidParameter(format!(
                "node_count {} below the minimum 64",
                self.node_count
            )));
        }
        if !(self.contour_re > 0.0) || !self.contour_re.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "contour_re {} must be positive",
                self.contour_re
            )));
        }
        if !(self.tail_tol > 0.0 && self.tail_tol < 1.0) {
            return Err(Error::InvalidParameter(format!(
                "tail_tol {} must lie in (0, 1)",
                self.tail_tol
            )));
        }
        Ok(())
    }

    /// Half-width of the integration range on the line `Re u = c`, where
    /// `|e^{u^2}| = e^{c^2 - t^2}` falls to `tail_tol`.
    pub fn t_cutoff(&self, c: f64) -> f64 {
        (c * c + (1.0 / self.tail_tol).ln()).sqrt()
    }
}

/// Which gamma quotient the weight carries.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum WeightKind {
    /// `Gamma((s+u)/2) / Gamma(s/2)` with `(sqrt(pi) x)^{-u}`.
    Dirichlet,
    /// `Gamma((s+u+iT)/2) Gamma((s+u-iT)/2) / (...)|_{u=0}` with `(pi x)^{-u}`.
    Maass { t_f: f64 },
}

/// Log of the `x`-independent integrand `base^{-u} Gamma-quotient G(u) / u`.
fn ln_kernel(kind: WeightKind, s: Complex64, u: Complex64) -> Result<Complex64> {
    let quotient = match kind {
        WeightKind::Dirichlet => {
            ln_gamma((s + u) * 0.5)? - ln_gamma(s * 0.5)? - u * (0.5 * PI.ln())
        }
        WeightKind::Maass { t_f } => {
            let it = Complex64::new(0.0, t_f);
            ln_gamma((s + u + it) * 0.5)? + ln_gamma((s + u - it) * 0.5)?
                - ln_gamma((s + it) * 0.5)?
                - ln_gamma((s - it) * 0.5)?
                - u * PI.ln()
        }
    };
    Ok(quotient + u * u - u.ln())
}

/// Trapezoidal rule on one vertical line, with the weights `h / 2pi` folded in.
#[derive(Debug, Clone)]
struct Line {
    c: f64,
    h: f64,
    half: usize,
    coef: Vec<Complex64>,
    abs_sum: f64,
}

impl Line {
    /// `pole_gap` is the horizontal distance from the line to the nearest
    /// pole; the trapezoidal error decays like `exp(-2 pi pole_gap / h)`
    /// and grows like `exp(pole_gap |ln x|)`, so `h` is capped accordingly.
    fn build(
        kind: WeightKind,
        s: Complex64,
        c: f64,
        pole_gap: f64,
        p: &WeightParams,
    ) -> Result<Self> {
        let t_cut = p.t_cutoff(c);
        let h_alias = 2.0 * PI * pole_gap / ((1.0 / p.tail_tol).ln() + pole_gap * MAX_ABS_LN_X);
        let h = (2.0 * t_cut / p.node_count as f64).min(h_alias);
        let eval = |k: i64| -> Result<Complex64> {
            Ok(ln_kernel(kind, s, Complex64::new(c, k as f64 * h))?.exp())
        };
        let mut half = (t_cut / h).ceil() as usize;
        let max_half = 64 * p.node_count;
        let mut coef: Vec<Complex64> = (-(half as i64)..=half as i64)
            .map(eval)
            .collect::<Result<_>>()?;
        let peak = coef.iter().map(|z| z.norm()).fold(0.0, f64::max);
        if !peak.is_finite() || peak == 0.0 {
            return Err(Error::QuadratureTail(format!(
                "degenerate integrand on Re u = {c} for s = {s}"
            )));
        }
        loop {
            let tail = coef[0].norm().max(coef[coef.len() - 1].norm());
            if tail <= p.tail_tol * peak {
                break;
            }
            if half >= max_half {
                return Err(Error::QuadratureTail(format!(
                    "integrand on Re u = {c} still {:.1e} of peak at |t| = {:.1}",
                    tail / peak,
                    half as f64 * h
                )));
            }
            let step = (p.node_count / 8).max(1);
            let mut grown = Vec::with_capacity(coef.len() + 2 * step);
            for k in (half + 1..=half + step).rev() {
                grown.push(eval(-(k as i64))?);
            }
            grown.extend_from_slice(&coef);
            for k in half + 1..=half + step {
                grown.push(eval(k as i64)?);
            }
            coef = grown;
            half += step;
        }
        let scale = h / (2.0 * PI);
        for z in &mut coef {
            *z *= scale;
        }
        let abs_sum = coef.iter().map(|z| z.norm()).sum();
        Ok(Self {
            c,
            h,
            half,
            coef,
            abs_sum,
        })
    }

    /// `(1/2 pi) int kernel(c + it) x^{-c-it} dt` for `ln x = lnx`.
    fn integrate(&self, lnx: f64) -> Complex64 {
        const RESYNC: usize = 32;
        let step = Complex64::from_polar(1.0, -self.h * lnx);
        let mut acc = Complex64::new(0.0, 0.0);
        let mut phase = Complex64::new(1.0, 0.0);
        for (i, &a) in self.coef.iter().enumerate() {
            if i % RESYNC == 0 {
                let t = (i as f64 - self.half as f64) * self.h;
                phase = Complex64::from_polar(1.0, -t * lnx);
            }
            acc += a * phase;
            phase *= step;
        }
        acc * (-self.c * lnx).exp()
    }
}

/// Largest `|ln x|` at which the node spacing keeps full accuracy.
const MAX_ABS_LN_X: f64 = 30.0;

/// Abscissae used for the decay envelope.
const ENVELOPE_CONTOURS: [f64; 8] = [1.0, 2.0, 3.0, 4.0, 5.0, 6.0, 7.0, 8.0];

/// A tabulated weight `V_s` or `W_s` for one complex `s`.
#[derive(Debug, Clone)]
pub struct Weight {
    kind: WeightKind,
    s: Complex64,
    right: Line,
    left: Line,
    envelope: Vec<(f64, f64)>,
}

impl Weight {
    pub fn new(kind: WeightKind, s: Complex64, p: &WeightParams) -> Result<Self> {
        p.validate()?;
        if !(s.re > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "weight parameter s = {s} needs Re s > 0"
            )));
        }
        let right = Line::build(kind, s, p.contour_re, p.contour_re, p)?;
        let left = Line::build(kind, s, -s.re / 2.0, s.re / 2.0, p)?;
        let envelope = ENVELOPE_CONTOURS
            .iter()
            .map(|&c| Ok((c, Line::build(kind, s, c, c, p)?.abs_sum)))
            .collect::<Result<_>>()?;
        Ok(Self {
            kind,
            s,
            right,
            left,
            envelope,
        })
    }

    pub fn kind(&self) -> WeightKind {
        self.kind
    }

    pub fn s(&self) -> Complex64 {
        self.s
    }

    /// Value at `x > 0`.
    pub fn eval(&self, x: f64) -> Complex64 {
        debug_assert!(x > 0.0);
        let lnx = x.ln();
        if x >= 1.0 {
            self.right.integrate(lnx)
        } else {
            self.left.integrate(lnx) + 1.0
        }
    }

    /// Value computed on an explicitly chosen line `Re u = c` (with the
    /// residue at `u = 0` added when `c < 0`); a test tool for contour shifts.
    pub fn eval_on_line(&self, x: f64, c: f64, p: &WeightParams) -> Result<Complex64> {
        if c <= -self.s.re || c == 0.0 {
            return Err(Error::InvalidParameter(format!(
                "line Re u = {c} crosses a pole for s = {}",
                self.s
            )));
        }
        let gap = if c > 0.0 { c } else { (-c).min(c + self.s.re) };
        let line = Line::build(self.kind, self.s, c, gap, p)?;
        let v = line.integrate(x.ln());
        Ok(if c < 0.0 { v + 1.0 } else { v })
    }

    /// Rigorous-in-spirit upper bound on `|weight(x)|` for `x >= 1`:
    /// `min_c x^{-c} (1/2 pi) int |kernel(c + it)| dt`.
    pub fn envelope(&self, x: f64) -> f64 {
        let lnx = x.max(1.0).ln();
        self.envelope
            .iter()
            .map(|&(c, m)| m * (-c * lnx).exp())
            .fold(f64::INFINITY, f64::min)
    }

    /// Integral-test bound on `sum_{n > n0} n^{-sigma} |weight(n / scale)|`:
    /// the minimum over envelope lines `c > 1 - sigma` of
    /// `M_c scale^c n0^{1 - sigma - c} / (c + sigma - 1)`.
    pub fn tail_sum_bound(&self, scale: f64, sigma: f64, n0: f64) -> f64 {
        self.envelope
            .iter()
            .filter(|&&(c, _)| c + sigma > 1.0)
            .map(|&(c, m)| {
                let k = c + sigma - 1.0;
                (m.ln() + c * scale.ln() - k * n0.ln()).exp() / k
            })
            .fold(f64::INFINITY, f64::min)
    }

    /// Smallest `n0` with `rho * tail_sum_bound(scale, sigma, n0) <= tol`.
    pub fn tail_cutoff(&self, scale: f64, sigma: f64, rho: f64, tol: f64) -> f64 {
        self.envelope
            .iter()
            .filter(|&&(c, _)| c + sigma > 1.0)
            .map(|&(c, m)| {
                let k = c + sigma - 1.0;
                ((rho * m / (k * tol)).ln() + c * scale.ln()) / k
            })
            .fold(f64::INFINITY, f64::min)
            .exp()
            .max(1.0)
    }

    /// Smallest `x` past which the envelope is below `tol`.
    pub fn cutoff(&self, tol: f64) -> f64 {
        self.envelope
            .iter()
            .map(|&(c, m)| (m / tol).powf(1.0 / c).max(1.0))
            .fold(f64::INFINITY, f64::min)
    }
}

/// `V_{s0}(x)` from a fresh table; for repeated evaluation build a [`Weight`].
pub fn weight_v(s0: &EvaluationPoint, x: f64, p: &WeightParams) -> Result<Complex64> {
    check_x(x)?;
    Ok(Weight::new(WeightKind::Dirichlet, s0.s0(), p)?.eval(x))
}

/// `W_{s0}(x)` for spectral parameter `t_f`.
pub fn weight_w(s0: &EvaluationPoint, x: f64, t_f: f64, p: &WeightParams) -> Result<Complex64> {
    check_x(x)?;
    Ok(Weight::new(WeightKind::Maass { t_f }, s0.s0(), p)?.eval(x))
}

fn check_x(x: f64) -> Result<()> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "weight argument x = {x} must be positive"
        )));
    }
    Ok(())
}

/// Leading terms of the residue expansion at the poles `u = -s - 2k` of the
/// Dirichlet weight; an asymptotic oracle for `V_s(x)` as `x -> 0`.
pub fn dirichlet_residue_series(s: Complex64, x: f64, terms: usize) -> Result<Complex64> {
    let mut acc = Complex64::new(1.0, 0.0);
    let ln_g = ln_gamma(s * 0.5)?;
    let mut fact = 1.0;
    for k in 0..terms {
        if k > 0 {
            fact *= k as f64;
        }
        let u = -s - 2.0 * k as f64;
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        let ln_term = -u * (PI.sqrt() * x).ln() + u * u - ln_g;
        acc += ln_term.exp() * (2.0 * sign / fact) / u;
    }
    Ok(acc)
}
