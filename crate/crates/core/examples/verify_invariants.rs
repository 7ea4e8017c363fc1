//! Runs the built-in invariant checks.

use fcgram::study::verify::{run_suite, Suite};

fn main() -> fcgram::Result<()> {
    let checks = run_suite(Suite::Invariants, false)?;
    for c in &checks {
        println!("[{}] {}: {}", if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail);
    }
    let failed = checks.iter().filter(|c| !c.passed).count();
    println!("{} checks, {failed} failed", checks.len());
    Ok(())
}
