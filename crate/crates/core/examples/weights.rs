//! The gamma function and the two AFE weights: close to 1 for small
//! arguments, rapidly decaying past the conductor.

use moment_forge::special::{complex_gamma, weight_v, weight_w, EvaluationPoint, WeightParams};
use num_complex::Complex64;

fn main() -> moment_forge::Result<()> {
    let g = complex_gamma(Complex64::new(0.5, 3.0))?;
    println!("Gamma(1/2 + 3i) = {g:.12}");
    let point = EvaluationPoint::new(0.5, 0.0)?;
    let p = WeightParams::default();
    let t_f = moment_forge::maass::bundled_form().spectral_parameter();
    for x in [1e-6, 0.1, 1.0, 10.0, 100.0, 1000.0] {
        let v = weight_v(&point, x, &p)?;
        let w = weight_w(&point, x, t_f, &p)?;
        println!("x = {x:>8}: V = {:>12.4e}, W = {:>12.4e}", v.re, w.re);
    }
    Ok(())
}
