//! Numerical check of the `GL(2)` Voronoi formula
//!
//! `sum lambda(n) e(n dbar / c) psi(n/N)
//!    = c sum_± sum lambda(n)/n e(±nd/c) Psi^±(nN/c^2)`
//!
//! with `psi` the standard bump on `[1, 2]`.

use std::f64::consts::TAU;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::arith;
use crate::characters::Sign;
use crate::error::{Error, Result};
use crate::maass::MaassForm;
use crate::special::{
    bump, BumpMellin, PsiKernel, WeightParams, DEFAULT_PSI_SIGMA, MELLIN_NODES_PER_COUNT,
};
use crate::sum::csum;

#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct VoronoiConfig {
    pub weights: WeightParams,
    /// Line `Re s = sigma` of the `Psi` integrals.
    pub sigma: f64,
    /// The dual sum stops once `|Psi^±|` stays below this fraction of its peak.
    pub dual_tol: f64,
    /// Range of `y` the kernels are built for.
    pub y_min: f64,
    pub y_max: f64,
}

impl Default for VoronoiConfig {
    fn default() -> Self {
        Self {
            weights: WeightParams {
                tail_tol: 1e-10,
                ..WeightParams::default()
            },
            sigma: DEFAULT_PSI_SIGMA,
            dual_tol: 1e-9,
            y_min: 1e-3,
            y_max: 1e7,
        }
    }
}

/// Spacing in `u = sqrt y` of the interpolation table. `Psi^±` oscillate
/// with frequency at most `4 pi sqrt 2` in `u`, and `2 T / u` near `u = 1`.
const TABLE_STEP: f64 = 0.01;
/// Lagrange stencil width.
const STENCIL: usize = 8;
/// Below this `y` the kernels are evaluated by quadrature.
const TABLE_Y_MIN: f64 = 1.0;

/// `Psi^±` sampled on a uniform grid in `u = sqrt y`.
#[derive(Debug, Clone)]
struct PsiTable {
    u0: f64,
    values: [Vec<Complex64>; 2],
}

impl PsiTable {
    fn new(plus: &PsiKernel, minus: &PsiKernel, y_cut: f64) -> Self {
        let u0 = TABLE_Y_MIN.sqrt();
        let len = ((y_cut.sqrt() - u0) / TABLE_STEP).ceil() as usize + STENCIL;
        let sample = |k: &PsiKernel| -> Vec<Complex64> {
            (0..len)
                .into_par_iter()
                .map(|i| {
                    let u = u0 + i as f64 * TABLE_STEP;
                    k.eval(u * u)
                })
                .collect()
        };
        Self {
            u0,
            values: [sample(plus), sample(minus)],
        }
    }

    fn eval(&self, sign: Sign, y: f64) -> Complex64 {
        let v = &self.values[(sign == Sign::Minus) as usize];
        let p = (y.sqrt() - self.u0) / TABLE_STEP;
        let i0 = (p.floor() as isize - (STENCIL as isize / 2 - 1)).clamp(0, (v.len() - STENCIL) as isize)
            as usize;
        let mut acc = Complex64::new(0.0, 0.0);
        for j in 0..STENCIL {
            let mut w = 1.0;
            for k in 0..STENCIL {
                if k != j {
                    w *= (p - (i0 + k) as f64) / (j as f64 - k as f64);
                }
            }
            acc += v[i0 + j] * w;
        }
        acc
    }
}

/// `Psi^+` and `Psi^-` for one form, plus the `y` past which both are
/// negligible. Dual sums read an interpolation table for `y >= 1`.
#[derive(Debug, Clone)]
pub struct VoronoiKernels {
    plus: PsiKernel,
    minus: PsiKernel,
    table: PsiTable,
    y_cut: f64,
    y_min: f64,
}

impl VoronoiKernels {
    pub fn new(t_f: f64, cfg: &VoronoiConfig) -> Result<Self> {
        let mellin = BumpMellin::new(MELLIN_NODES_PER_COUNT * cfg.weights.node_count);
        let range = (cfg.y_min, cfg.y_max);
        let build = |sign| PsiKernel::new(sign, t_f, |s| mellin.eval(s), cfg.sigma, range, &cfg.weights);
        let (plus, minus) = (build(Sign::Plus)?, build(Sign::Minus)?);
        let grid: Vec<f64> = std::iter::successors(Some(cfg.y_min), |y| Some(y * 1.1))
            .take_while(|&y| y <= cfg.y_max)
            .collect();
        let mags: Vec<f64> = grid
            .par_iter()
            .map(|&y| plus.eval(y).norm().max(minus.eval(y).norm()))
            .collect();
        let peak = mags.iter().cloned().fold(0.0, f64::max);
        let last = mags
            .iter()
            .rposition(|&m| m > cfg.dual_tol * peak)
            .unwrap_or(0);
        if last + 1 >= grid.len() {
            return Err(Error::QuadratureTail(format!(
                "Psi still above {:.0e} of its peak at y = {:.1e}",
                cfg.dual_tol, cfg.y_max
            )));
        }
        let y_cut = grid[last + 1];
        Ok(Self {
            table: PsiTable::new(&plus, &minus, y_cut),
            plus,
            minus,
            y_cut,
            y_min: cfg.y_min,
        })
    }

    /// `Psi^±(y)` by quadrature.
    pub fn psi(&self, sign: Sign, y: f64) -> Complex64 {
        match sign {
            Sign::Plus => self.plus.eval(y),
            Sign::Minus => self.minus.eval(y),
        }
    }

    /// `Psi^±(y)`, interpolated for `1 <= y <= y_cut`.
    pub fn psi_fast(&self, sign: Sign, y: f64) -> Complex64 {
        if (TABLE_Y_MIN..=self.y_cut).contains(&y) {
            self.table.eval(sign, y)
        } else {
            self.psi(sign, y)
        }
    }

    /// Dual terms with `nN/c^2` beyond this are dropped.
    pub fn y_cut(&self) -> f64 {
        self.y_cut
    }
}

/// Both sides of the Voronoi formula and their difference.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct VoronoiCheck {
    pub c: u64,
    pub d: i64,
    pub d_inverse: i64,
    pub scale: f64,
    pub lhs: Complex64,
    pub rhs: Complex64,
    pub gap: f64,
    pub dual_terms: usize,
}

/// `e(k/c)` with `k` reduced first, so large `k` lose no accuracy.
fn e_frac(k: i64, c: u64) -> Complex64 {
    let r = k.rem_euclid(c as i64);
    Complex64::from_polar(1.0, TAU * r as f64 / c as f64)
}

/// Evaluates both sides at modulus `c`, residue `d` coprime to `c`, and
/// scale `n_scale`.
pub fn verify_voronoi(
    f: &MaassForm,
    c: u64,
    d: i64,
    n_scale: f64,
    kernels: &VoronoiKernels,
) -> Result<VoronoiCheck> {
    if c == 0 {
        return Err(Error::InvalidParameter("modulus c must be positive".into()));
    }
    if !(n_scale >= 1.0) || !n_scale.is_finite() {
        return Err(Error::InvalidParameter(format!("scale N = {n_scale} must be >= 1")));
    }
    let d_inverse = arith::inv_mod(d.rem_euclid(c as i64), c as i64).ok_or_else(|| {
        Error::InvalidParameter(format!("d = {d} is not coprime to c = {c}"))
    })?;
    let c2 = (c * c) as f64;
    if n_scale / c2 < kernels.y_min {
        return Err(Error::InvalidParameter(format!(
            "N/c^2 = {:.1e} below the kernel range",
            n_scale / c2
        )));
    }
    let hi = (2.0 * n_scale).floor() as usize;
    let dual_terms = (kernels.y_cut * c2 / n_scale).ceil() as usize;
    f.require_depth(hi.max(dual_terms))?;

    let lo = n_scale.ceil() as usize;
    let lhs = csum((lo..=hi).map(|n| {
        e_frac(n as i64 * d_inverse, c) * (f.lambda(n) * bump(n as f64 / n_scale))
    }));
    let terms: Vec<Complex64> = (1..=dual_terms)
        .into_par_iter()
        .map(|n| {
            let y = n as f64 * n_scale / c2;
            let nd = n as i64 * d;
            let plus = e_frac(nd, c) * kernels.psi_fast(Sign::Plus, y);
            let minus = e_frac(-nd, c) * kernels.psi_fast(Sign::Minus, y);
            (plus + minus) * (f.lambda(n) / n as f64)
        })
        .collect();
    let rhs = csum(terms) * c as f64;
    Ok(VoronoiCheck {
        c,
        d,
        d_inverse,
        scale: n_scale,
        lhs,
        rhs,
        gap: (lhs - rhs).norm(),
        dual_terms,
    })
}
