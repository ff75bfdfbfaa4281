//! Runs one verification suite (default char-sums) and prints each check.

use moment_forge::maass::bundled_form;
use moment_forge::verify::{run_verify, Suite};

fn main() -> moment_forge::Result<()> {
    let suite: Suite = std::env::args().nth(1).as_deref().unwrap_or("char-sums").parse()?;
    let report = run_verify(suite, Some(bundled_form()))?;
    for c in &report.checks {
        println!("[{}] {} / {}: {}", if c.passed { "pass" } else { "FAIL" }, c.suite, c.name, c.detail);
    }
    println!("overall: {}", if report.passed { "pass" } else { "FAIL" });
    Ok(())
}
