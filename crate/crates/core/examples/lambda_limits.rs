//! How fast f_g(.; lambda) returns to its seed as lambda grows.
//!
//! The sup-norm gap behaves like sup I0 / lambda only once lambda dominates
//! I0 on the grid; before that the ratio for doubled lambda stays above 1/2.
//!
//! cargo run --example lambda_limits

use darboux_thermo::actions::ZeroMode;
use darboux_thermo::darboux::{i0_integral, lambda_convergence_report, FamilyOptions, I0Mode, Lambda};
use darboux_thermo::numerics::logspace;

pub fn main() -> Result<(), Box<dyn std::error::Error>> {
    let grid = logspace(0.1, 10.0, 64);
    for (name, mode) in [("vacuum", ZeroMode::vacuum(1.0)?), ("planck", ZeroMode::planck(1.0)?)] {
        let sup_i0 = i0_integral(&mode, 10.0, I0Mode::ClosedForm)?;
        println!("{name} seed, sup I0 on the grid = {sup_i0:.6e}");
        let lambdas: Vec<Lambda> = (0..18).map(|k| Lambda::Finite(10.0 * 4f64.powi(k))).collect();
        for row in lambda_convergence_report(&mode, &lambdas, &grid, FamilyOptions::default())?.iter().step_by(3) {
            println!("  lambda = {:>12.4e}  sup |f_g - f_p| = {:.6e}", row.lambda.as_f64(), row.sup_deviation);
        }
        let doubling: Vec<Lambda> = [10.0, 20.0, 1e6, 2e6, 1e9, 2e9].into_iter().map(Lambda::Finite).collect();
        let rows = lambda_convergence_report(&mode, &doubling, &grid, FamilyOptions::default())?;
        for pair in rows.chunks(2) {
            println!(
                "  lambda {} -> {}: ratio {:.6}",
                pair[0].lambda,
                pair[1].lambda,
                pair[1].sup_deviation / pair[0].sup_deviation
            );
        }
    }
    Ok(())
}
