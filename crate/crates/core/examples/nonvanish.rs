//! Per-character products |L(s0, f x chi) L(s0, chi)| at one prime.

use moment_forge::maass::bundled_form;
use moment_forge::moment::{nonvanishing_scan, MomentConfig, MomentTables};
use moment_forge::special::EvaluationPoint;

fn main() -> moment_forge::Result<()> {
    let point = EvaluationPoint::new(0.5, 0.0)?;
    let tables = MomentTables::new(23, &point, bundled_form(), &MomentConfig::default())?;
    let report = nonvanishing_scan(&tables)?;
    println!("{}", serde_json::to_string_pretty(&report).expect("serializable"));
    Ok(())
}
