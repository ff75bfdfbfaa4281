//! Verification suites: each runs a panel of identities or oracle
//! comparisons and reports one check per invariant with the worst inputs.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arith;
use crate::characters::{
    gauss_product_identity, gauss_square_identity, gauss_twisted_sum, inverse_twisted_sum,
    orthogonality_sum, CharacterTable, IdentityCheck, Parity, Sign,
};
use crate::error::{Error, Result};
use crate::lfunc::{
    l_chi_hurwitz, l_twisted_smoothed, verify_voronoi, AfeConfig, DirichletAfe, TwistedAfe,
    VoronoiConfig, VoronoiKernels,
};
use crate::maass::{rankin_selberg_profile, wilton_profile, MaassForm};
use crate::moment::{MomentConfig, MomentReport, MomentTables};
use crate::special::{
    complex_gamma, dirichlet_residue_series, EvaluationPoint, Weight, WeightKind, WeightParams,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    CharSums,
    Special,
    Maass,
    LEval,
    Voronoi,
    All,
}

impl Suite {
    pub const NAMES: [&'static str; 6] = ["char-sums", "special", "maass", "l-eval", "voronoi", "all"];

    /// Whether the suite reads the Maass form.
    pub fn needs_form(self) -> bool {
        !matches!(self, Suite::CharSums | Suite::Special)
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "char-sums" => Suite::CharSums,
            "special" => Suite::Special,
            "maass" => Suite::Maass,
            "l-eval" => Suite::LEval,
            "voronoi" => Suite::Voronoi,
            "all" => Suite::All,
            _ => {
                return Err(Error::InvalidParameter(format!(
                    "unknown suite {s:?}; expected one of {}",
                    Suite::NAMES.join(", ")
                )))
            }
        })
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let i = *self as usize;
        f.write_str(Suite::NAMES[i])
    }
}

/// One invariant, with the worst case seen.
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct Check {
    pub suite: String,
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct VerifyReport {
    pub schema: u32,
    pub suite: Suite,
    pub checks: Vec<Check>,
    pub passed: bool,
}

/// Largest value seen and the inputs that produced it.
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct Worst {
    pub value: f64,
    pub at: String,
}

impl Worst {
    fn new() -> Self {
        Self {
            value: 0.0,
            at: "none".into(),
        }
    }

    fn see(&mut self, value: f64, at: impl FnOnce() -> String) {
        // NaN must not hide behind a comparison.
        if value.is_nan() || value > self.value || self.value.is_nan() {
            self.value = value;
            self.at = at();
        }
    }

    fn within(&self, tol: f64) -> bool {
        self.value <= tol
    }
}

pub fn primes_up_to(lo: u64, hi: u64) -> Vec<u64> {
    (lo.max(2)..=hi).filter(|&n| arith::is_prime(n)).collect()
}

/// Worst gaps of the four closed-form character-sum identities over primes
/// `3 <= q <= q_max`, on `pairs` random unit pairs `(m, n)` per prime.
/// Order: orthogonality, Gauss twist, inverse twist, Kloosterman.
pub fn identity_panel(q_max: u64, pairs: usize, seed: u64) -> Result<[Worst; 4]> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst = [Worst::new(), Worst::new(), Worst::new(), Worst::new()];
    for q in primes_up_to(3, q_max) {
        let t = CharacterTable::new(q)?;
        for _ in 0..pairs {
            let m = loop {
                let m = rng.gen_range(1..10 * q);
                if m % q != 0 {
                    break m;
                }
            };
            let n = loop {
                let n = rng.gen_range(1..10 * q);
                if n % q != 0 {
                    break n;
                }
            };
            let at = || format!("q = {q}, m = {m}, n = {n}");
            let gap = |c: IdentityCheck| c.gap();
            worst[0].see(gap(orthogonality_sum(&t, m, n)?), at);
            for sign in Sign::BOTH {
                let at = || format!("q = {q}, m = {m}, n = {n}, {sign:?}");
                worst[1].see(gap(gauss_twisted_sum(&t, m, n, sign)?), at);
                worst[2].see(gap(inverse_twisted_sum(&t, m, n, sign)?), at);
            }
            worst[3].see(gap(gauss_square_identity(&t, m, n)?), at);
        }
    }
    Ok(worst)
}

/// Worst `||tau(chi)| - sqrt q|` and `|tau(conj chi) tau(chi) - q|` over even
/// primitive characters modulo primes `q <= q_max`.
pub fn gauss_panel(q_max: u64) -> Result<[Worst; 2]> {
    let mut worst = [Worst::new(), Worst::new()];
    for q in primes_up_to(5, q_max) {
        let t = CharacterTable::new(q)?;
        for j in t.enumerate(Parity::Even, true) {
            let chi = t.character(j);
            let at = || format!("q = {q}, chi index {j}");
            worst[0].see((chi.gauss_sum().norm() - (q as f64).sqrt()).abs(), at);
            let (lhs, rhs) = gauss_product_identity(&chi)?;
            worst[1].see((lhs - rhs).norm(), at);
        }
    }
    Ok(worst)
}

/// Worst `|S(a, b; q)| / (2 sqrt q)` over sampled units.
pub fn weil_panel(q_max: u64, samples: usize, seed: u64) -> Result<Worst> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst = Worst::new();
    for q in primes_up_to(3, q_max) {
        let t = CharacterTable::new(q)?;
        for _ in 0..samples {
            let (a, b) = (rng.gen_range(1..q as i64), rng.gen_range(1..q as i64));
            worst.see(t.kloosterman(a, b).abs() / (2.0 * (q as f64).sqrt()), || {
                format!("q = {q}, a = {a}, b = {b}")
            });
        }
    }
    Ok(worst)
}

pub const AFE_PANEL_Q: [u64; 4] = [5, 7, 11, 13];
pub const AFE_PANEL_S0: [(f64, f64); 3] = [(0.5, 0.0), (0.6, 1.0), (0.75, 2.0)];

/// Worst `|AFE - Hurwitz|` for `L(s0, chi)` over the panel, all even
/// primitive characters.
pub fn afe_panel(cfg: &AfeConfig) -> Result<Worst> {
    let mut worst = Worst::new();
    for q in AFE_PANEL_Q {
        let t = CharacterTable::new(q)?;
        for (sigma, t0) in AFE_PANEL_S0 {
            let p = EvaluationPoint::new(sigma, t0)?;
            let afe = DirichletAfe::new(q, &p, cfg)?;
            for j in t.enumerate(Parity::Even, true) {
                let chi = t.character(j);
                let a = afe.eval(&chi)?.value;
                let h = l_chi_hurwitz(p.s0(), &chi)?.value;
                worst.see((a - h).norm(), || format!("q = {q}, s0 = {sigma}+{t0}i, chi {j}"));
            }
        }
    }
    Ok(worst)
}

/// Worst `|AFE - smoothed series|` for `L(s, f x chi)` at `s = 0.95`, where
/// the smoothed series still converges.
pub fn twisted_oracle_panel(f: &MaassForm, cfg: &AfeConfig) -> Result<Worst> {
    let mut worst = Worst::new();
    let p = EvaluationPoint::new(0.95, 0.0)?;
    for q in [5u64, 7] {
        let t = CharacterTable::new(q)?;
        let afe = TwistedAfe::new(q, &p, f, cfg)?;
        for j in t.enumerate(Parity::Even, true) {
            let chi = t.character(j);
            let a = afe.eval(&chi)?.value;
            let s = l_twisted_smoothed(p.s0(), f, &chi, f.depth() as f64 / 20.0)?;
            worst.see((a - s.value).norm(), || format!("q = {q}, chi {j}"));
        }
    }
    Ok(worst)
}

pub const ROUTE_PANEL_Q: [u64; 5] = [5, 7, 11, 13, 17];
pub const ROUTE_PANEL_SIGMA: [f64; 2] = [0.5, 0.75];

/// Route-equivalence reports over the panel.
pub fn route_panel(f: &MaassForm, cfg: &MomentConfig) -> Result<Vec<MomentReport>> {
    let mut out = Vec::new();
    for sigma in ROUTE_PANEL_SIGMA {
        for q in ROUTE_PANEL_Q {
            let p = EvaluationPoint::new(sigma, 0.0)?;
            let tables = MomentTables::new(q, &p, f, cfg)?;
            out.push(MomentReport::from_tables(&tables, "panel", cfg)?);
        }
    }
    Ok(out)
}

pub const VORONOI_PANEL_C_MAX: u64 = 10;
pub const VORONOI_PANEL_N: [f64; 3] = [50.0, 100.0, 200.0];

/// Worst Voronoi gap over every `c <= 10`, every `d` coprime to `c`, and
/// `N in {50, 100, 200}`.
pub fn voronoi_panel(f: &MaassForm, cfg: &VoronoiConfig) -> Result<(Worst, usize)> {
    let kernels = VoronoiKernels::new(f.spectral_parameter(), cfg)?;
    let mut worst = Worst::new();
    let mut count = 0;
    for c in 1..=VORONOI_PANEL_C_MAX {
        for d in (1..=c).filter(|&d| arith::gcd(c, d) == 1) {
            for n in VORONOI_PANEL_N {
                let r = verify_voronoi(f, c, d as i64, n, &kernels)?;
                worst.see(r.gap, || format!("c = {c}, d = {d}, N = {n}"));
                count += 1;
            }
        }
    }
    Ok((worst, count))
}

pub const RS_GRID: [usize; 5] = [10, 100, 1_000, 10_000, 100_000];
pub const WILTON_GRID: [usize; 6] = [1, 10, 100, 1_000, 10_000, 100_000];

/// Largest Rankin-Selberg ratio and normalized additive-twist sum.
pub fn growth_panel(f: &MaassForm) -> Result<[Worst; 2]> {
    let mut rs_grid = RS_GRID.to_vec();
    rs_grid.push(f.depth());
    let mut worst = [Worst::new(), Worst::new()];
    for (x, r) in rankin_selberg_profile(f, &rs_grid)? {
        worst[0].see(r, || format!("x = {x}"));
    }
    let alphas = [0.0, 0.5, 1.0 / 3.0, 0.1234, 2f64.sqrt() - 1.0];
    for (a, n, v) in wilton_profile(f, &alphas, &WILTON_GRID)? {
        worst[1].see(v, || format!("alpha = {a:.4}, N = {n}"));
    }
    Ok(worst)
}

/// Weight-function invariants: normalization as `x -> 0`, agreement with the
/// residue expansion, contour-shift invariance, and the decay envelope.
pub struct WeightPanel {
    /// `|V(1e-12) - 1|`, `|W(1e-12) - 1|` over the panel.
    pub normalization: Worst,
    /// Defect `|V(x) - 1|` shrinks as `x` runs through `1e-4, 1e-8, 1e-12`.
    pub normalization_monotone: bool,
    pub residue_series: Worst,
    pub contour_shift: Worst,
    /// Largest `|weight(x)| / envelope(x)` for `x >= 1`.
    pub envelope_ratio: Worst,
    /// `|V_{1/2}(1000)|`.
    pub v_decay: f64,
    /// `|W_{1/2}(1500)|` at `T = 9.5337`.
    pub w_decay: f64,
}

pub fn weight_panel(p: &WeightParams) -> Result<WeightPanel> {
    let points = [(0.5, 0.0), (0.7, 3.0), (0.9, -5.0)];
    let kinds = [WeightKind::Dirichlet, WeightKind::Maass { t_f: 13.779751351890738 }];
    let mut normalization = Worst::new();
    let mut monotone = true;
    let mut residue_series = Worst::new();
    let mut contour_shift = Worst::new();
    let mut envelope_ratio = Worst::new();
    for (sigma, t) in points {
        let s = Complex64::new(sigma, t);
        for kind in kinds {
            let w = Weight::new(kind, s, p)?;
            let defects: Vec<f64> = [1e-4, 1e-8, 1e-12].iter().map(|&x| (w.eval(x) - 1.0).norm()).collect();
            // Below 1e-15 the defect is rounding noise around 1.
            monotone &= defects.windows(2).all(|d| d[1] < d[0].max(1e-15));
            normalization.see(defects[2], || format!("{kind:?}, s = {s}"));
            for x in [0.01, 0.3, 1.0, 7.0, 150.0] {
                // Right of the imaginary axis the integrand carries x^{-c};
                // for x < 1 only lines with modest c are well conditioned.
                let a = w.eval_on_line(x, 1.0, p)?;
                let b = w.eval_on_line(x, -sigma / 2.0, p)?;
                let mut gap = (a - b).norm();
                if x >= 1.0 {
                    gap = gap.max((a - w.eval_on_line(x, 3.0, p)?).norm());
                }
                contour_shift.see(gap, || format!("{kind:?}, s = {s}, x = {x}"));
            }
            for x in [1.0, 10.0, 100.0, 1e3, 1e4] {
                envelope_ratio.see(w.eval(x).norm() / w.envelope(x), || format!("{kind:?}, s = {s}, x = {x}"));
            }
        }
        let w = Weight::new(WeightKind::Dirichlet, s, p)?;
        for x in [1e-6, 1e-8] {
            let gap = (w.eval(x) - dirichlet_residue_series(s, x, 3)?).norm();
            residue_series.see(gap, || format!("s = {s}, x = {x}"));
        }
    }
    let half = Complex64::new(0.5, 0.0);
    let v_decay = Weight::new(WeightKind::Dirichlet, half, p)?.eval(1000.0).norm();
    let w_decay = Weight::new(WeightKind::Maass { t_f: 9.5337 }, half, p)?.eval(1500.0).norm();
    Ok(WeightPanel {
        normalization,
        normalization_monotone: monotone,
        residue_series,
        contour_shift,
        envelope_ratio,
        v_decay,
        w_decay,
    })
}

/// Worst relative error of `Gamma` on classical values and the reflection
/// and recurrence laws.
pub fn gamma_panel() -> Result<Worst> {
    use std::f64::consts::PI;
    let mut worst = Worst::new();
    let exact = [
        (Complex64::new(0.5, 0.0), Complex64::new(PI.sqrt(), 0.0)),
        (Complex64::new(5.0, 0.0), Complex64::new(24.0, 0.0)),
        (Complex64::new(-0.5, 0.0), Complex64::new(-2.0 * PI.sqrt(), 0.0)),
        (Complex64::new(11.0, 0.0), Complex64::new(3628800.0, 0.0)),
    ];
    for (s, v) in exact {
        worst.see((complex_gamma(s)? - v).norm() / v.norm(), || format!("Gamma({s})"));
    }
    for s in [Complex64::new(0.3, 2.0), Complex64::new(-2.7, 0.4), Complex64::new(0.5, 25.0)] {
        let one = Complex64::new(1.0, 0.0);
        let refl = complex_gamma(s)? * complex_gamma(one - s)? * (s * PI).sin();
        worst.see((refl - PI).norm() / PI, || format!("reflection at {s}"));
        let rec = complex_gamma(s + 1.0)?;
        let rhs = s * complex_gamma(s)?;
        worst.see((rec - rhs).norm() / rhs.norm(), || format!("recurrence at {s}"));
    }
    Ok(worst)
}

pub const IDENTITY_TOL: f64 = 1e-9;
pub const GAUSS_TOL: f64 = 1e-10;
pub const AFE_TOL: f64 = 1e-8;
pub const TWISTED_ORACLE_TOL: f64 = 1e-6;
pub const VORONOI_TOL: f64 = 1e-4;
pub const CONTOUR_TOL: f64 = 1e-9;

struct Builder {
    suite: Suite,
    checks: Vec<Check>,
}

impl Builder {
    fn push(&mut self, suite: Suite, name: &str, passed: bool, detail: String) {
        log::info!("{suite} / {name}: {} ({detail})", if passed { "pass" } else { "FAIL" });
        self.checks.push(Check {
            suite: suite.to_string(),
            name: name.to_string(),
            passed,
            detail,
        });
    }

    fn worst(&mut self, suite: Suite, name: &str, w: &Worst, tol: f64) {
        let detail = format!("worst {:.3e} at {} (tolerance {tol:.0e})", w.value, w.at);
        self.push(suite, name, w.within(tol), detail);
    }

    /// Records an evaluator error as a failed check instead of aborting the
    /// remaining suites.
    fn attempt<T>(&mut self, suite: Suite, name: &str, r: Result<T>) -> Option<T> {
        match r {
            Ok(v) => Some(v),
            Err(e) => {
                self.push(suite, name, false, format!("error: {e}"));
                None
            }
        }
    }
}

fn char_sums(b: &mut Builder) {
    let s = Suite::CharSums;
    if let Some(w) = b.attempt(s, "identities", identity_panel(101, 50, 0x5eed)) {
        let names = ["orthogonality", "gauss twist", "inverse twist", "kloosterman square"];
        for (name, w) in names.iter().zip(&w) {
            b.worst(s, name, w, IDENTITY_TOL);
        }
    }
    if let Some(w) = b.attempt(s, "gauss sums", gauss_panel(101)) {
        b.worst(s, "gauss modulus sqrt q", &w[0], GAUSS_TOL);
        b.worst(s, "gauss product q", &w[1], GAUSS_TOL);
    }
    if let Some(w) = b.attempt(s, "weil bound", weil_panel(101, 20, 7)) {
        b.worst(s, "weil bound ratio", &w, 1.0 + 1e-12);
    }
}

fn special(b: &mut Builder) {
    let s = Suite::Special;
    if let Some(w) = b.attempt(s, "gamma", gamma_panel()) {
        b.worst(s, "gamma classical values and laws", &w, 1e-12);
    }
    if let Some(w) = b.attempt(s, "weights", weight_panel(&WeightParams::default())) {
        b.worst(s, "weights tend to 1 as x -> 0", &w.normalization, 1e-5);
        b.push(
            s,
            "weight defect shrinks with x",
            w.normalization_monotone,
            "x = 1e-4, 1e-8, 1e-12".into(),
        );
        b.worst(s, "residue expansion at small x", &w.residue_series, 1e-12);
        b.worst(s, "contour-shift invariance", &w.contour_shift, CONTOUR_TOL);
        b.worst(s, "envelope bounds |weight|", &w.envelope_ratio, 1.0);
        b.push(s, "V_1/2(1000) <= 1e-6", w.v_decay <= 1e-6, format!("{:.3e}", w.v_decay));
        b.push(s, "W_1/2(1500) <= 1e-6", w.w_decay <= 1e-6, format!("{:.3e}", w.w_decay));
    }
}

/// Hecke relations first; a violation stops the suites that read `f`.
fn hecke(b: &mut Builder, suite: Suite, f: &MaassForm) -> bool {
    match f.validate_hecke() {
        Ok(()) => {
            b.push(suite, "hecke relations", true, format!("depth {}", f.depth()));
            true
        }
        Err(e) => {
            b.push(suite, "hecke relations", false, e.to_string());
            false
        }
    }
}

fn maass(b: &mut Builder, f: &MaassForm) {
    let s = Suite::Maass;
    if !hecke(b, s, f) {
        return;
    }
    if let Some(w) = b.attempt(s, "growth", growth_panel(f)) {
        b.worst(s, "rankin-selberg ratio <= 5", &w[0], 5.0);
        b.worst(s, "additive twists / N^0.6 <= 10", &w[1], 10.0);
    }
}

fn l_eval(b: &mut Builder, f: &MaassForm) {
    let s = Suite::LEval;
    let cfg = MomentConfig::default();
    if let Some(w) = b.attempt(s, "dirichlet afe", afe_panel(&cfg.afe)) {
        b.worst(s, "dirichlet afe vs hurwitz", &w, AFE_TOL);
    }
    if !hecke(b, s, f) {
        return;
    }
    if let Some(w) = b.attempt(s, "twisted afe", twisted_oracle_panel(f, &cfg.afe)) {
        b.worst(s, "twisted afe vs smoothed series", &w, TWISTED_ORACLE_TOL);
    }
    if let Some(reports) = b.attempt(s, "route equivalence", route_panel(f, &cfg)) {
        for r in reports {
            let detail = format!(
                "q = {}, sigma0 = {}: gap {:.3e}, tolerance {:.3e}",
                r.q, r.s0.sigma0, r.identity_gap, r.identity_tolerance
            );
            b.push(s, "route equivalence", r.identity_holds(), detail);
        }
    }
}

fn voronoi(b: &mut Builder, f: &MaassForm) {
    let s = Suite::Voronoi;
    if !hecke(b, s, f) {
        return;
    }
    if let Some((w, n)) = b.attempt(s, "voronoi", voronoi_panel(f, &VoronoiConfig::default())) {
        b.worst(s, &format!("voronoi identity ({n} cases)"), &w, VORONOI_TOL);
    }
}

/// Runs a suite. `f` is required for the suites that read the form.
pub fn run_verify(suite: Suite, f: Option<&MaassForm>) -> Result<VerifyReport> {
    let form = || {
        f.ok_or_else(|| Error::InvalidParameter(format!("suite {suite} needs a Maass form fixture")))
    };
    let mut b = Builder {
        suite,
        checks: Vec::new(),
    };
    let run = |s: Suite| suite == s || suite == Suite::All;
    if run(Suite::CharSums) {
        char_sums(&mut b);
    }
    if run(Suite::Special) {
        special(&mut b);
    }
    if run(Suite::Maass) {
        maass(&mut b, form()?);
    }
    if run(Suite::LEval) {
        l_eval(&mut b, form()?);
    }
    if run(Suite::Voronoi) {
        voronoi(&mut b, form()?);
    }
    let passed = b.checks.iter().all(|c| c.passed);
    Ok(VerifyReport {
        schema: crate::moment::SCHEMA_VERSION,
        suite: b.suite,
        checks: b.checks,
        passed,
    })
}
