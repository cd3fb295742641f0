//! The four closed-form actions and the zero modes behind them.
//!
//! cargo run --example actions

use darboux_thermo::actions::{fermi_action, planck_action, thermal_action, vacuum_action, Action, ActionModel, ZeroMode};
use darboux_thermo::darboux::{bernoulli_residual, bosonic_residual};

pub fn main() -> Result<(), Box<dyn std::error::Error>> {
    let hbar = 1.0;
    println!("{:>6} {:>12} {:>12} {:>12} {:>12}", "x", "planck", "vacuum", "thermal", "fermi");
    for x in [0.1, 0.5, 1.0, 2.0, 5.0, 10.0] {
        println!(
            "{x:>6} {:>12.8} {:>12.8} {:>12.8} {:>12.8}",
            planck_action(x, hbar)?,
            vacuum_action(hbar),
            thermal_action(x, hbar)?,
            fermi_action(x, hbar)
        );
    }

    // Each action is w'/w for some zero mode w = A e^{hbar x/2} + B e^{-hbar x/2}.
    let planck = ZeroMode::planck(hbar)?;
    let x = 1.5;
    println!("\nPlanck mode at x = {x}: w = {:.10}, w'/w = {:.10}", planck.value(x), planck.log_derivative(x)?);
    println!("Planck action at x = {x}:            {:.10}", planck_action(x, hbar)?);

    let general = ZeroMode::general(2.0, -0.5, hbar)?;
    println!("general mode A = 2, B = -0.5 has a node at x = {:.10}", general.node().unwrap_or(f64::NAN));

    // Riccati and Bernoulli residuals on a few points.
    let v1 = 0.25 * hbar * hbar;
    for model in [ActionModel::planck(hbar)?, ActionModel::vacuum(hbar)?, ActionModel::fermi(hbar)?] {
        let r = [0.2, 1.0, 4.0].iter().map(|&x| bosonic_residual(&model, x, |_| v1)).collect::<Result<Vec<_>, _>>()?;
        let r: Vec<String> = r.iter().map(|v| format!("{v:.2e}")).collect();
        println!("{:?}: f' + f^2 - (hbar/2)^2 = [{}]", model.family(), r.join(", "));
    }
    let thermal = ActionModel::thermal(hbar)?;
    println!("thermal: f' + hbar f + f^2 = {:.2e}", bernoulli_residual(&thermal, 1.0, hbar)?);
    println!("thermal slope at 1: {:.12}", thermal.derivative(1.0)?);
    Ok(())
}
