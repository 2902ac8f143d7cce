//! Brute-force cross-checks of every closed form.

use tametilt::{verify_suite, TubeRegistry, VerifyBounds};

pub fn run() -> tametilt::Result<()> {
    let reg = TubeRegistry::preset("d_5")?;
    let report = verify_suite(&reg, VerifyBounds { rank_max: 3 })?;
    println!(
        "{} checks, {} instances, {} failures",
        report.checks.len(),
        report.instances(),
        report.failures()
    );
    for c in report
        .checks
        .iter()
        .filter(|c| c.id.starts_with("classify."))
    {
        println!("  {} x{}", c.id, c.instances);
    }
    assert!(report.passed());
    Ok(())
}

#[allow(dead_code)]
fn main() -> tametilt::Result<()> {
    run()
}
