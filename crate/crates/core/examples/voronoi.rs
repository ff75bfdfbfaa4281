//! Both sides of the Voronoi formula for additive twists of lambda_f.

use moment_forge::lfunc::{verify_voronoi, VoronoiConfig, VoronoiKernels};
use moment_forge::maass::bundled_form;

fn main() -> moment_forge::Result<()> {
    let f = bundled_form();
    let kernels = VoronoiKernels::new(f.spectral_parameter(), &VoronoiConfig::default())?;
    for (c, d, n) in [(1, 0, 50.0), (3, 1, 100.0), (7, -2, 100.0), (10, 3, 200.0)] {
        let r = verify_voronoi(f, c, d, n, &kernels)?;
        println!(
            "c = {c:>2}, d = {d:>2}, N = {n}: lhs {:.10}, rhs {:.10}, gap {:.1e} ({} dual terms)",
            r.lhs, r.rhs, r.gap, r.dual_terms
        );
    }
    Ok(())
}
