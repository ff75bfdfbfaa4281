use moment_forge::characters::{CharacterTable, Parity};
use moment_forge::lfunc::{l_chi_afe, l_f, l_twisted_afe, LfMethod};
use moment_forge::maass::{bundled_form, BUNDLED_LABEL};
use moment_forge::moment::*;
use moment_forge::special::EvaluationPoint;
use moment_forge::sum::csum;
use moment_forge::Error;
use proptest::prelude::*;

fn point(sigma0: f64, t0: f64) -> EvaluationPoint {
    EvaluationPoint::new(sigma0, t0).unwrap()
}

fn tables(q: u64, sigma0: f64, t0: f64) -> MomentTables<'static> {
    MomentTables::new(q, &point(sigma0, t0), bundled_form(), &MomentConfig::default()).unwrap()
}

#[test]
fn q5_is_the_single_quadratic_product() {
    let t = tables(5, 0.5, 0.0);
    let m = lhs_moment(&t).unwrap();
    assert_eq!(m.terms.len(), 1);
    let ct = CharacterTable::new(5).unwrap();
    let chi = ct.character(m.terms[0].index);
    let cfg = MomentConfig::default().afe;
    let tw = l_twisted_afe(&point(0.5, 0.0), bundled_form(), &chi, &cfg).unwrap();
    let di = l_chi_afe(&point(0.5, 0.0), &chi, &cfg).unwrap();
    assert!((m.value - tw.value * di.value.conj()).norm() < 1e-14);
}

#[test]
fn q7_sum_is_order_independent() {
    let m = lhs_moment(&tables(7, 0.5, 0.0)).unwrap();
    assert_eq!(m.terms.len(), 2);
    let reversed = csum(m.terms.iter().rev().map(|t| t.product));
    assert!((m.value - reversed).norm() <= 1e-12);
}

#[test]
fn routes_agree_at_q11_sigma06() {
    let r = MomentReport::from_tables(&tables(11, 0.6, 0.0), BUNDLED_LABEL, &MomentConfig::default())
        .unwrap();
    assert!(r.identity_gap <= r.identity_tolerance, "{}", r.identity_gap);
    assert!(r.identity_gap <= 1e-6);
}

#[test]
fn routes_agree_on_small_panel() {
    for (q, sigma) in [(5, 0.5), (7, 0.75), (13, 0.5), (11, 0.75)] {
        let r = MomentReport::from_tables(&tables(q, sigma, 0.0), "f", &MomentConfig::default())
            .unwrap();
        assert!(r.identity_gap <= 1e-6, "q = {q}, sigma = {sigma}: {}", r.identity_gap);
        assert_eq!(r.schema, 1);
    }
}

#[test]
fn diagnostics_reassemble_s1() {
    let t = tables(11, 0.6, 0.0);
    let c = s_terms_closed_form(&t).unwrap();
    let d = c.diagnostics;
    let phi = 10.0;
    assert!((c.s1 - (d.s11 * (phi / 2.0) - d.s12)).norm() < 1e-10);
    assert!((d.s11 - d.s11_diagonal - d.s11_off_diagonal).norm() < 1e-14);
}

#[test]
fn diagonal_term_moves_toward_the_l_value() {
    // The diagonal is L(2 sigma0, f) up to a term decaying like a negative
    // power of q; at desk scale the distance is still above 1 but shrinks.
    let l = l_f(1.2, bundled_form(), 1e-6).unwrap().value;
    let gap = |q| (s_terms_closed_form(&tables(q, 0.6, 0.0)).unwrap().diagnostics.s11_diagonal - l).norm();
    let (g11, g37) = (gap(11), gap(37));
    assert!(g37 < g11, "{g11} -> {g37}");
    assert!(g11 < l);
}

#[test]
fn main_term_values() {
    let f = bundled_form();
    let l18 = l_f(1.8, f, 1e-6).unwrap();
    assert_eq!(l18.method, LfMethod::Direct);
    assert_eq!(main_term(5, 0.9, f, 1e-6).unwrap(), 2.5 * l18.value);
    let l1 = l_f(1.0, f, 1e-6).unwrap();
    assert_eq!(l1.method, LfMethod::Ladder);
    assert_eq!(main_term(11, 0.5, f, 1e-6).unwrap(), 5.5 * l1.value);
    for q in [5u64, 7, 11] {
        let ratio = main_term(2 * q, 0.7, f, 1e-6).unwrap() / main_term(q, 0.7, f, 1e-6).unwrap();
        assert_eq!(ratio, 2.0);
    }
}

#[test]
fn invalid_moduli_are_rejected() {
    let cfg = MomentConfig::default();
    let e = MomentTables::new(9, &point(0.5, 0.0), bundled_form(), &cfg).unwrap_err();
    assert!(matches!(e, Error::NotPrime { .. }));
    assert_eq!(e.exit_code(), 2);
    let e = MomentTables::new(3, &point(0.5, 0.0), bundled_form(), &cfg).unwrap_err();
    assert_eq!(e.exit_code(), 2);
}

#[test]
fn depth_shortfall_is_reported() {
    let e = MomentTables::new(37, &point(0.75, 0.0), bundled_form(), &MomentConfig::default())
        .unwrap_err();
    assert!(matches!(e, Error::DepthExceeded { available: 200000, .. }), "{e}");
}

#[test]
fn fit_rejects_short_grids() {
    let cfg = MomentConfig::default();
    for grid in [&[11u64][..], &[5, 7]] {
        let e = exponent_fit(grid, &point(0.5, 0.0), bundled_form(), "f", &cfg).unwrap_err();
        assert_eq!(e.exit_code(), 2);
    }
}

#[test]
fn fit_slope_below_one_on_small_grid() {
    let (fit, reports) =
        exponent_fit(&[5, 7, 11, 13, 17], &point(0.5, 0.0), bundled_form(), "f", &MomentConfig::default())
            .unwrap();
    assert_eq!(reports.len(), 5);
    assert!(fit.slope < 1.0, "{}", fit.slope);
    assert!(fit.slope_stderr.is_finite() && fit.slope_stderr > 0.0);
    assert!((fit.envelope.q_exponent - (7.0 / 8.0 + 21.0 / 568.0)).abs() < 1e-14);
}

#[test]
fn nonvanishing_scans() {
    let r = nonvanishing_scan(&tables(5, 0.5, 0.0)).unwrap();
    assert_eq!(r.terms.len(), 1);
    assert_eq!(r.minimizer, r.terms[0].index);
    let r = nonvanishing_scan(&tables(13, 0.5, 0.0)).unwrap();
    assert!(r.some_nonvanishing);
    assert!((r.m_exponent - 21.72).abs() < 1e-12);
    assert!((r.corollary_threshold - 3f64.powf(21.72)).abs() < 1.0);
    assert!(r.note.contains("unreachable"));
    let ct = CharacterTable::new(13).unwrap();
    assert_eq!(r.terms.len(), ct.enumerate(Parity::Even, true).len());
}

#[test]
fn reports_are_bit_stable_across_thread_counts() {
    let run = |threads| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap()
            .install(|| {
                let r = MomentReport::from_tables(&tables(13, 0.5, 1.0), "f", &MomentConfig::default())
                    .unwrap();
                serde_json::to_string(&r).unwrap()
            })
    };
    let one = run(1);
    assert_eq!(one, run(1));
    assert_eq!(one, run(3));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(6))]

    #[test]
    fn route_equivalence(q in prop::sample::select(vec![5u64, 7, 11, 13]),
                         sigma in 0.5f64..0.9, t0 in -2.0f64..2.0) {
        let r = MomentReport::from_tables(&tables(q, sigma, t0), "f", &MomentConfig::default()).unwrap();
        prop_assert!(r.identity_gap <= r.identity_tolerance);
        prop_assert!(r.identity_gap <= 1e-9 * (1.0 + r.lhs_direct.norm()));
    }
}
