//! Growth of |moment - main term| in q on the default prime grid.

use moment_forge::maass::bundled_form;
use moment_forge::moment::{exponent_fit, MomentConfig, DEFAULT_GRID};
use moment_forge::special::EvaluationPoint;

fn main() -> moment_forge::Result<()> {
    let point = EvaluationPoint::new(0.5, 0.0)?;
    let (fit, _) = exponent_fit(&DEFAULT_GRID, &point, bundled_form(), "bundled", &MomentConfig::default())?;
    for p in &fit.points {
        println!("q = {:>2}: |residual| = {:.6}", p.q, p.residual_abs);
    }
    println!("slope {:.3} +- {:.3}", fit.slope, fit.slope_stderr);
    println!("predicted envelope exponent {:.4}", fit.envelope.q_exponent);
    Ok(())
}
