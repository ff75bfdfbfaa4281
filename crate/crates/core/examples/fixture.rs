//! The bundled Maass form: Hecke checks, growth profiles, and a round trip
//! through the fixture format. Pass a label to fetch another form
//! (set MOMENT_FORGE_OFFLINE=1 to stay offline).

use moment_forge::maass::{
    bundled_form, fetch_remote, load_form, rankin_selberg_profile, ramanujan_report, write_fixture,
    FetchConfig, BUNDLED_LABEL,
};
use moment_forge::moment::THETA;

fn main() -> moment_forge::Result<()> {
    let f = bundled_form();
    f.validate_hecke()?;
    println!("T_f = {}, depth {}, lambda(2) = {}", f.spectral_text(), f.depth(), f.decimals()[1]);
    for (x, r) in rankin_selberg_profile(f, &[100, 10_000, 100_000])? {
        println!("sum |lambda(n)|^2 / x at x = {x}: {r:.4}");
    }
    println!("{:?}", ramanujan_report(f, THETA));

    let dir = std::env::temp_dir().join("moment-forge-example");
    let path = dir.join("small.txt");
    write_fixture(&f.truncated(100)?, &path)?;
    println!("wrote {} coefficients to {}", load_form(&path)?.depth(), path.display());

    let label = std::env::args().nth(1).unwrap_or_else(|| BUNDLED_LABEL.to_string());
    match fetch_remote(&label, 100, dir.join("fetched.txt"), &FetchConfig::from_env()) {
        Ok(outcome) => println!("fetch {label}: {:?}", outcome.origin),
        Err(e) => println!("fetch {label} failed: {e} (exit code {})", e.exit_code()),
    }
    Ok(())
}
