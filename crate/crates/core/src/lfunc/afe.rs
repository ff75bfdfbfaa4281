//! Approximate functional equations with envelope-certified truncation.
//!
//! A table holds, for one modulus and one evaluation point, the weighted
//! terms of both sums; every character is then a single pass over them.

use num_complex::Complex64;
use rayon::prelude::*;

use super::require_even_primitive;
use crate::characters::Character;
use crate::error::{Error, Result};
use crate::maass::MaassForm;
use crate::special::{
    gamma_ratio_dirichlet, gamma_ratio_maass, EvaluationPoint, Weight, WeightKind, WeightParams,
};
use crate::sum::ComplexSum;

/// Truncation and quadrature settings shared by both evaluators.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct AfeConfig {
    pub weights: WeightParams,
    /// Target bound on the neglected tail of `L(s0, chi)`.
    pub dirichlet_tol: f64,
    /// Target bound on the neglected tail of `L(s0, f x chi)`.
    pub twisted_tol: f64,
    /// Factor applied to every certified cutoff; values above 1 are a
    /// stability probe.
    pub cutoff_multiplier: f64,
}

impl Default for AfeConfig {
    fn default() -> Self {
        Self {
            weights: WeightParams::default(),
            dirichlet_tol: 1e-12,
            twisted_tol: 1e-5,
            cutoff_multiplier: 1.0,
        }
    }
}

impl AfeConfig {
    pub fn validate(&self) -> Result<()> {
        self.weights.validate()?;
        for (name, v) in [("dirichlet_tol", self.dirichlet_tol), ("twisted_tol", self.twisted_tol)] {
            if !(v > 0.0 && v < 1.0) {
                return Err(Error::InvalidParameter(format!("{name} = {v} must lie in (0, 1)")));
            }
        }
        if !(self.cutoff_multiplier >= 1.0) || !self.cutoff_multiplier.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "cutoff_multiplier = {} must be >= 1",
                self.cutoff_multiplier
            )));
        }
        Ok(())
    }
}

/// One AFE evaluation.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct AfeResult {
    pub value: Complex64,
    pub first_sum_terms: usize,
    pub second_sum_terms: usize,
    /// Bound on the neglected tails of both sums, root factor included.
    pub truncation_bound: f64,
}

fn check_strip(point: &EvaluationPoint) -> Result<Complex64> {
    let s0 = point.s0();
    if !(s0.re > 0.0 && s0.re < 1.0) {
        return Err(Error::SigmaOutOfRange(s0.re));
    }
    Ok(s0)
}

fn cutoff(w: &Weight, scale: f64, sigma: f64, rho: f64, tol: f64, mult: f64) -> usize {
    (w.tail_cutoff(scale, sigma, rho, tol) * mult).ceil().max(1.0) as usize
}

/// `n^{-s} weight(n / scale) coeff(n)` for `n = 1..=len`.
fn weighted_terms(
    len: usize,
    s: Complex64,
    w: &Weight,
    scale: f64,
    coeff: impl Fn(usize) -> f64 + Sync,
) -> Vec<Complex64> {
    (1..=len)
        .into_par_iter()
        .map(|n| {
            let x = n as f64;
            (-s * x.ln()).exp() * w.eval(x / scale) * coeff(n)
        })
        .collect()
}

fn check_table(chi: &Character, q: u64) -> Result<()> {
    if chi.table().q() != q {
        return Err(Error::InvalidParameter(format!(
            "character mod {} used with a table mod {q}",
            chi.table().q()
        )));
    }
    require_even_primitive(chi)
}

/// `sum_n chi(n) terms[n-1]`, or with `conj(chi)` when `conj` is set.
fn twist(chi: &Character, terms: &[Complex64], conj: bool) -> Complex64 {
    let mut acc = ComplexSum::new();
    for (i, &t) in terms.iter().enumerate() {
        let v = chi.value(i as i64 + 1);
        acc.add(t * if conj { v.conj() } else { v });
    }
    acc.value()
}

/// Tabulated AFE for `L(s0, chi)` over the characters modulo `q`:
/// `sum chi(n) n^{-s0} V_{s0}(n/sqrt q) + tau(chi) q^{-s0} gamma-ratio
/// sum conj(chi)(n) n^{s0-1} V_{1-s0}(n/sqrt q)`.
#[derive(Debug, Clone)]
pub struct DirichletAfe {
    q: u64,
    point: EvaluationPoint,
    first: Vec<Complex64>,
    dual: Vec<Complex64>,
    root: Complex64,
    first_bound: f64,
    dual_bound: f64,
}

impl DirichletAfe {
    pub fn new(q: u64, point: &EvaluationPoint, cfg: &AfeConfig) -> Result<Self> {
        cfg.validate()?;
        let s0 = check_strip(point)?;
        let s1 = Complex64::new(1.0, 0.0) - s0;
        let scale = (q as f64).sqrt();
        let v0 = Weight::new(WeightKind::Dirichlet, s0, &cfg.weights)?;
        let v1 = Weight::new(WeightKind::Dirichlet, s1, &cfg.weights)?;
        let root = (-s0 * (q as f64).ln()).exp() * gamma_ratio_dirichlet(s0)?;
        let n0 = cutoff(&v0, scale, s0.re, 1.0, cfg.dirichlet_tol / 2.0, cfg.cutoff_multiplier);
        let dual_tol = cfg.dirichlet_tol / 2.0 / (scale * root.norm());
        let n1 = cutoff(&v1, scale, s1.re, 1.0, dual_tol, cfg.cutoff_multiplier);
        Ok(Self {
            q,
            point: *point,
            first: weighted_terms(n0, s0, &v0, scale, |_| 1.0),
            dual: weighted_terms(n1, s1, &v1, scale, |_| 1.0),
            root,
            first_bound: v0.tail_sum_bound(scale, s0.re, n0 as f64),
            dual_bound: v1.tail_sum_bound(scale, s1.re, n1 as f64),
        })
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn point(&self) -> EvaluationPoint {
        self.point
    }

    /// `n^{-s0} V_{s0}(n / sqrt q)` at index `n - 1`.
    pub fn first_terms(&self) -> &[Complex64] {
        &self.first
    }

    /// `n^{s0-1} V_{1-s0}(n / sqrt q)` at index `n - 1`.
    pub fn dual_terms(&self) -> &[Complex64] {
        &self.dual
    }

    /// `q^{-s0} gamma(1 - s0) / gamma(s0)`.
    pub fn root(&self) -> Complex64 {
        self.root
    }

    /// Tail bound of the evaluation for any character (`|tau| = sqrt q`).
    pub fn truncation_bound(&self) -> f64 {
        self.first_bound + (self.q as f64).sqrt() * self.root.norm() * self.dual_bound
    }

    pub fn eval(&self, chi: &Character) -> Result<AfeResult> {
        check_table(chi, self.q)?;
        let value =
            twist(chi, &self.first, false) + chi.gauss_sum() * self.root * twist(chi, &self.dual, true);
        Ok(AfeResult {
            value,
            first_sum_terms: self.first.len(),
            second_sum_terms: self.dual.len(),
            truncation_bound: self.truncation_bound(),
        })
    }
}

/// Largest `sum_{n <= x} lambda(n)^2 / x` over `x >= 100`; the constant in
/// the Rankin-Selberg mean value, read off the fixture.
fn rankin_selberg_density(f: &MaassForm) -> f64 {
    let mut acc = 0.0;
    let mut best: f64 = 1.0;
    for n in 1..=f.depth() {
        acc += f.lambda(n).powi(2);
        if n >= 100 {
            best = best.max(acc / n as f64);
        }
    }
    best
}

/// Tabulated AFE for `L(s0, f x chi)` over the characters modulo `q`:
/// `sum lambda(n) chi(n) n^{-s0} W_{s0}(n/q) + tau(chi)^2 q^{-2 s0}
/// gamma~-ratio sum lambda(n) conj(chi)(n) n^{s0-1} W_{1-s0}(n/q)`.
///
/// Tail bounds use Cauchy-Schwarz with the fixture's Rankin-Selberg density.
#[derive(Debug, Clone)]
pub struct TwistedAfe {
    q: u64,
    point: EvaluationPoint,
    first: Vec<Complex64>,
    dual: Vec<Complex64>,
    root: Complex64,
    first_bound: f64,
    dual_bound: f64,
}

impl TwistedAfe {
    pub fn new(q: u64, point: &EvaluationPoint, f: &MaassForm, cfg: &AfeConfig) -> Result<Self> {
        cfg.validate()?;
        let s0 = check_strip(point)?;
        let s1 = Complex64::new(1.0, 0.0) - s0;
        let t_f = f.spectral_parameter();
        let kind = WeightKind::Maass { t_f };
        let scale = q as f64;
        let w0 = Weight::new(kind, s0, &cfg.weights)?;
        let w1 = Weight::new(kind, s1, &cfg.weights)?;
        let root = (-2.0 * s0 * scale.ln()).exp() * gamma_ratio_maass(s0, t_f)?;
        let rho = rankin_selberg_density(f).sqrt();
        let n0 = cutoff(&w0, scale, s0.re, rho, cfg.twisted_tol / 2.0, cfg.cutoff_multiplier);
        let dual_tol = cfg.twisted_tol / 2.0 / (scale * root.norm());
        let n1 = cutoff(&w1, scale, s1.re, rho, dual_tol, cfg.cutoff_multiplier);
        f.require_depth(n0.max(n1))?;
        let lambda = |n: usize| f.lambda(n);
        Ok(Self {
            q,
            point: *point,
            first: weighted_terms(n0, s0, &w0, scale, lambda),
            dual: weighted_terms(n1, s1, &w1, scale, lambda),
            root,
            first_bound: rho * w0.tail_sum_bound(scale, s0.re, n0 as f64),
            dual_bound: rho * w1.tail_sum_bound(scale, s1.re, n1 as f64),
        })
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn point(&self) -> EvaluationPoint {
        self.point
    }

    /// `lambda(n) n^{-s0} W_{s0}(n / q)` at index `n - 1`.
    pub fn first_terms(&self) -> &[Complex64] {
        &self.first
    }

    /// `lambda(n) n^{s0-1} W_{1-s0}(n / q)` at index `n - 1`.
    pub fn dual_terms(&self) -> &[Complex64] {
        &self.dual
    }

    /// `q^{-2 s0} gamma~(1 - s0) / gamma~(s0)`.
    pub fn root(&self) -> Complex64 {
        self.root
    }

    /// Tail bound of the evaluation for any character (`|tau|^2 = q`).
    pub fn truncation_bound(&self) -> f64 {
        self.first_bound + self.q as f64 * self.root.norm() * self.dual_bound
    }

    pub fn eval(&self, chi: &Character) -> Result<AfeResult> {
        check_table(chi, self.q)?;
        let tau = chi.gauss_sum();
        let value =
            twist(chi, &self.first, false) + tau * tau * self.root * twist(chi, &self.dual, true);
        Ok(AfeResult {
            value,
            first_sum_terms: self.first.len(),
            second_sum_terms: self.dual.len(),
            truncation_bound: self.truncation_bound(),
        })
    }
}

/// `L(s0, chi)` for an even primitive `chi`.
pub fn l_chi_afe(point: &EvaluationPoint, chi: &Character, cfg: &AfeConfig) -> Result<AfeResult> {
    require_even_primitive(chi)?;
    DirichletAfe::new(chi.table().q(), point, cfg)?.eval(chi)
}

/// `L(s0, f x chi)` for an even primitive `chi`.
pub fn l_twisted_afe(
    point: &EvaluationPoint,
    f: &MaassForm,
    chi: &Character,
    cfg: &AfeConfig,
) -> Result<AfeResult> {
    require_even_primitive(chi)?;
    TwistedAfe::new(chi.table().q(), point, f, cfg)?.eval(chi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::characters::{CharacterTable, Parity};
    use crate::lfunc::{l_chi_hurwitz, l_twisted_smoothed};
    use crate::maass::bundled_form;

    fn even_chars(t: &CharacterTable) -> Vec<Character<'_>> {
        t.enumerate(Parity::Even, true).into_iter().map(|j| t.character(j)).collect()
    }

    #[test]
    fn dirichlet_afe_matches_hurwitz() {
        let cfg = AfeConfig::default();
        for q in [5u64, 7] {
            let t = CharacterTable::new(q).unwrap();
            for (sigma, t0) in [(0.5, 0.0), (0.75, 2.0)] {
                let p = EvaluationPoint::new(sigma, t0).unwrap();
                let afe = DirichletAfe::new(q, &p, &cfg).unwrap();
                for chi in even_chars(&t) {
                    let a = afe.eval(&chi).unwrap();
                    let h = l_chi_hurwitz(p.s0(), &chi).unwrap().value;
                    assert!((a.value - h).norm() < 1e-8, "q {q} {p:?}: {} vs {h}", a.value);
                    assert!(a.truncation_bound <= cfg.dirichlet_tol * 1.000001);
                }
            }
        }
    }

    #[test]
    fn schwarz_reflection_of_both_evaluators() {
        let cfg = AfeConfig::default();
        let f = bundled_form();
        let t = CharacterTable::new(7).unwrap();
        let p = EvaluationPoint::new(0.6, 1.0).unwrap();
        let pc = EvaluationPoint::new(0.6, -1.0).unwrap();
        for chi in even_chars(&t) {
            let a = l_chi_afe(&p, &chi, &cfg).unwrap().value;
            let b = l_chi_afe(&pc, &chi.conj(), &cfg).unwrap().value;
            assert!((a - b.conj()).norm() < 1e-12, "{a} vs {b}");
            let a = l_twisted_afe(&p, f, &chi, &cfg).unwrap().value;
            let b = l_twisted_afe(&pc, f, &chi.conj(), &cfg).unwrap().value;
            assert!((a - b.conj()).norm() < 1e-12, "{a} vs {b}");
        }
    }

    #[test]
    fn twisted_afe_is_stable_under_longer_sums() {
        let f = bundled_form();
        let t = CharacterTable::new(5).unwrap();
        let chi = even_chars(&t)[0];
        let p = EvaluationPoint::new(0.5, 0.0).unwrap();
        let cfg = AfeConfig {
            twisted_tol: 1e-8,
            ..AfeConfig::default()
        };
        let a = l_twisted_afe(&p, f, &chi, &cfg).unwrap();
        let wide = AfeConfig {
            cutoff_multiplier: 1.5,
            ..cfg
        };
        let b = l_twisted_afe(&p, f, &chi, &wide).unwrap();
        let change = (a.value - b.value).norm();
        assert!(change < 1e-8 && change <= a.truncation_bound, "{change:e}");
        assert!(b.first_sum_terms > a.first_sum_terms);
    }

    #[test]
    fn twisted_afe_matches_smoothed_series() {
        let f = bundled_form();
        let t = CharacterTable::new(5).unwrap();
        let chi = even_chars(&t)[0];
        let p = EvaluationPoint::new(0.95, 0.0).unwrap();
        let a = l_twisted_afe(&p, f, &chi, &AfeConfig::default()).unwrap().value;
        let s = l_twisted_smoothed(p.s0(), f, &chi, f.depth() as f64 / 20.0).unwrap().value;
        assert!((a - s).norm() < 1e-4, "{a} vs {s}");
    }

    #[test]
    fn shallow_fixture_names_required_depth() {
        let f = bundled_form().truncated(5000).unwrap();
        let t = CharacterTable::new(11).unwrap();
        let chi = even_chars(&t)[0];
        let p = EvaluationPoint::new(0.5, 0.0).unwrap();
        match l_twisted_afe(&p, &f, &chi, &AfeConfig::default()) {
            Err(Error::DepthExceeded { required, available }) => {
                assert_eq!(available, 5000);
                assert!(required > 5000);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn odd_and_principal_characters_rejected() {
        let t = CharacterTable::new(7).unwrap();
        let p = EvaluationPoint::new(0.5, 0.0).unwrap();
        let cfg = AfeConfig::default();
        assert!(matches!(
            l_chi_afe(&p, &t.character(0), &cfg),
            Err(Error::CharacterKind { kind: "principal", .. })
        ));
        assert!(matches!(
            l_chi_afe(&p, &t.character(1), &cfg),
            Err(Error::CharacterKind { kind: "odd", .. })
        ));
    }
}
