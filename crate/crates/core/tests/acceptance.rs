//! Acceptance run: one line per criterion, nonzero exit if any fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use moment_forge::lfunc::{AfeConfig, VoronoiConfig};
use moment_forge::maass::bundled_form;
use moment_forge::moment::{
    beta_params, discriminant, exponent_fit, m_exponent_exact, MomentConfig, Rational, DEFAULT_GRID, THETA,
};
use moment_forge::special::{EvaluationPoint, WeightParams};
use moment_forge::verify::{
    afe_panel, gauss_panel, growth_panel, identity_panel, route_panel, voronoi_panel, weight_panel, AFE_TOL,
    CONTOUR_TOL, GAUSS_TOL, IDENTITY_TOL, VORONOI_TOL,
};
use moment_forge::Result;

struct Outcome {
    passed: bool,
    detail: String,
}

fn timed(limit: Duration, run: impl FnOnce() -> Result<Outcome>) -> Outcome {
    let start = Instant::now();
    let out = run().unwrap_or_else(|e| Outcome {
        passed: false,
        detail: format!("error: {e}"),
    });
    let took = start.elapsed();
    Outcome {
        passed: out.passed && took <= limit,
        detail: format!("{}; {:.1} s (limit {} s)", out.detail, took.as_secs_f64(), limit.as_secs()),
    }
}

fn identities() -> Result<Outcome> {
    let w = identity_panel(101, 50, 0x5eed)?;
    let worst = w.iter().map(|w| w.value).fold(0.0, f64::max);
    Ok(Outcome {
        passed: w.iter().all(|w| w.value <= IDENTITY_TOL),
        detail: format!("worst {worst:.2e} over 4 identities, q <= 101, 50 pairs (tol {IDENTITY_TOL:.0e})"),
    })
}

fn gauss() -> Result<Outcome> {
    let [modulus, product] = gauss_panel(101)?;
    Ok(Outcome {
        passed: modulus.value <= GAUSS_TOL && product.value <= GAUSS_TOL,
        detail: format!(
            "|tau| - sqrt q {:.2e}, tau(conj chi) tau(chi) - q {:.2e} (tol {GAUSS_TOL:.0e})",
            modulus.value, product.value
        ),
    })
}

fn afe() -> Result<Outcome> {
    let w = afe_panel(&AfeConfig::default())?;
    Ok(Outcome {
        passed: w.value <= AFE_TOL,
        detail: format!("worst {:.2e} at {} (tol {AFE_TOL:.0e})", w.value, w.at),
    })
}

fn routes() -> Result<Outcome> {
    let reports = route_panel(bundled_form(), &MomentConfig::default())?;
    let mut passed = true;
    let mut worst = (0.0f64, 0u64, 0.0f64);
    for r in &reports {
        let tol = 1e-6f64.max(20.0 * r.truncation_bound);
        passed &= r.identity_gap <= tol;
        if r.identity_gap / tol > worst.0 {
            worst = (r.identity_gap / tol, r.q, r.s0.sigma0);
        }
    }
    Ok(Outcome {
        passed,
        detail: format!(
            "{} cases, worst gap/tolerance {:.2e} at q = {}, sigma0 = {}",
            reports.len(),
            worst.0,
            worst.1,
            worst.2
        ),
    })
}

fn voronoi() -> Result<Outcome> {
    let (w, n) = voronoi_panel(bundled_form(), &VoronoiConfig::default())?;
    Ok(Outcome {
        passed: w.value <= VORONOI_TOL,
        detail: format!("{n} cases, worst {:.2e} at {} (tol {VORONOI_TOL:.0e})", w.value, w.at),
    })
}

fn main_term() -> Result<Outcome> {
    let point = EvaluationPoint::new(0.5, 0.0)?;
    let (fit, _) = exponent_fit(&DEFAULT_GRID, &point, bundled_form(), "bundled", &MomentConfig::default())?;
    let predicted = 7.0 / 8.0 + 3.0 * THETA / (8.0 * (1.0 + THETA));
    Ok(Outcome {
        passed: fit.slope < 1.0 && fit.slope_stderr.is_finite(),
        detail: format!(
            "slope {:.3} +- {:.3} over q = 5..37; predicted envelope {:.4} (library {:.4})",
            fit.slope, fit.slope_stderr, predicted, fit.envelope.q_exponent
        ),
    })
}

fn constants() -> Result<Outcome> {
    let theta = Rational::new(7, 64);
    let m = m_exponent_exact(Rational::new(1, 2), theta)?;
    let b = beta_params(0.5, THETA)?;
    let gap = b.balance_gaps.iter().map(|g| g.abs()).fold(0.0, f64::max);
    let a = discriminant().a;
    let expected_a = (Rational::from_integer(1) - Rational::from_integer(2) * theta)
        / (Rational::from_integer(2) * (Rational::from_integer(1) + theta));
    Ok(Outcome {
        passed: m == Rational::new(543, 25) && gap <= 1e-12 && a == Rational::new(25, 71) && a == expected_a,
        detail: format!("M(1/2) = {m}, balance gap {gap:.1e}, leading coefficient {a}"),
    })
}

fn fixture() -> Result<Outcome> {
    let f = bundled_form();
    f.validate_hecke()?;
    let [rs, wilton] = growth_panel(f)?;
    Ok(Outcome {
        passed: rs.value <= 5.0 && wilton.value <= 10.0,
        detail: format!(
            "hecke ok at depth {}, rankin-selberg ratio max {:.3}, wilton max {:.3}",
            f.depth(),
            rs.value,
            wilton.value
        ),
    })
}

fn weights() -> Result<Outcome> {
    let w = weight_panel(&WeightParams::default())?;
    let passed = w.normalization.value <= 1e-5
        && w.normalization_monotone
        && w.contour_shift.value <= CONTOUR_TOL
        && w.envelope_ratio.value <= 1.0
        && w.v_decay <= 1e-6
        && w.w_decay <= 1e-6;
    Ok(Outcome {
        passed,
        detail: format!(
            "|weight(1e-12) - 1| {:.1e}, contour shift {:.1e} (tol {CONTOUR_TOL:.0e}), envelope ratio {:.2}, \
             |V(1000)| {:.1e}, |W(1500)| {:.1e}",
            w.normalization.value, w.contour_shift.value, w.envelope_ratio.value, w.v_decay, w.w_decay
        ),
    })
}

fn main() -> ExitCode {
    let minutes = |m: u64| Duration::from_secs(60 * m);
    let criteria: [(&str, Duration, fn() -> Result<Outcome>); 9] = [
        ("character identities", minutes(2), identities),
        ("gauss sum laws", minutes(10), gauss),
        ("afe vs hurwitz", minutes(1), afe),
        ("route equivalence", minutes(10), routes),
        ("voronoi", minutes(10), voronoi),
        ("main term emergence", minutes(10), main_term),
        ("closed-form constants", minutes(1), constants),
        ("fixture validation", minutes(1), fixture),
        ("weight functions", minutes(1), weights),
    ];
    let mut failed = 0;
    for (i, (name, limit, run)) in criteria.into_iter().enumerate() {
        let out = timed(limit, run);
        let tag = if out.passed { "PASS" } else { "FAIL" };
        println!("criterion {} {tag} {name}: {}", i + 1, out.detail);
        failed += usize::from(!out.passed);
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
