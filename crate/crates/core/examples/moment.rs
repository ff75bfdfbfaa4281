//! The first moment at one prime by direct summation and by closed forms.

use moment_forge::maass::bundled_form;
use moment_forge::moment::{moment_report, MomentConfig};
use moment_forge::special::EvaluationPoint;

fn main() -> moment_forge::Result<()> {
    let q = std::env::args().nth(1).map_or(Ok(13), |a| a.parse()).expect("q must be an integer");
    let point = EvaluationPoint::new(0.5, 0.0)?;
    let r = moment_report(q, &point, bundled_form(), "bundled", &MomentConfig::default())?;
    println!("direct       {:.12}", r.lhs_direct);
    println!("S1..S4       {:.6} {:.6} {:.6} {:.6}", r.s1, r.s2, r.s3, r.s4);
    println!("closed total {:.12}", r.s_total());
    println!("gap {:.2e} (tolerance {:.2e})", r.identity_gap, r.identity_tolerance);
    println!("main term {:.8}, residual {:.8}", r.main_term, r.residual);
    Ok(())
}
