//! Run the verification suites from code and print a summary.
//!
//! cargo run --example verify

use darboux_thermo::cli::{run_suite, Suite, VerifyOptions};

pub fn main() -> Result<(), Box<dyn std::error::Error>> {
    let report = run_suite(Suite::All, &VerifyOptions::default())?;
    let worst = report
        .checks
        .iter()
        .max_by(|a, b| (a.max_residual / a.tolerance.max(f64::MIN_POSITIVE)).total_cmp(&(b.max_residual / b.tolerance.max(f64::MIN_POSITIVE))))
        .expect("checks");
    println!("{} checks, overall {}", report.checks.len(), if report.overall { "pass" } else { "fail" });
    println!("closest to its tolerance: {} ({:e} vs {:e})", worst.name, worst.max_residual, worst.tolerance);
    for c in report.checks.iter().filter(|c| !c.pass) {
        println!("FAILED {} ({:e} > {:e})", c.name, c.max_residual, c.tolerance);
    }
    Ok(())
}
