//! One-parameter families f_g(x; lambda) built on the vacuum and Planck seeds.
//!
//! cargo run --example darboux_family

use darboux_thermo::actions::{fermi_action, Action, ZeroMode};
use darboux_thermo::darboux::{
    validate_lambda, DarbouxFamily, FamilyOptions, I0Mode, Interval, Lambda, LambdaValidation,
};
use darboux_thermo::Error;

pub fn main() -> Result<(), Box<dyn std::error::Error>> {
    let hbar = 1.0;
    let domain = Interval::new(-4.0, 4.0)?;
    let vacuum = ZeroMode::vacuum(hbar)?;

    // lambda = 1/hbar collapses to -hbar/2, lambda = 2/hbar to the Fermi-Dirac branch.
    let constant = DarbouxFamily::new(vacuum, Lambda::Finite(1.0 / hbar), domain, FamilyOptions::default())?;
    let tanh = DarbouxFamily::new(vacuum, Lambda::Finite(2.0 / hbar), domain, FamilyOptions::default())?;
    let seed = DarbouxFamily::new(vacuum, Lambda::Infinity, domain, FamilyOptions::default())?;
    println!("{:>5} {:>14} {:>14} {:>14} {:>14}", "x", "lambda=1", "lambda=2", "-fermi", "lambda=inf");
    for x in [-4.0, -2.0, 0.0, 2.0, 4.0] {
        println!(
            "{x:>5} {:>14.10} {:>14.10} {:>14.10} {:>14.10}",
            constant.value(x)?,
            tanh.value(x)?,
            -fermi_action(x, hbar),
            seed.value(x)?
        );
    }

    // The Planck seed: potentials, transformed zero mode and v = (I0 + lambda)/w^2.
    let planck = DarbouxFamily::new(
        ZeroMode::planck(hbar)?,
        Lambda::Finite(2.0),
        Interval::new(0.1, 6.0)?,
        FamilyOptions::default(),
    )?;
    println!("\n{:>5} {:>12} {:>12} {:>12} {:>12} {:>12}", "x", "f_g", "V_1g", "w_lambda", "I0", "v");
    for x in [0.1, 0.5, 1.0, 2.0, 4.0, 6.0] {
        println!(
            "{x:>5} {:>12.8} {:>12.8} {:>12.8} {:>12.8} {:>12.8}",
            planck.value(x)?,
            planck.transformed_potential(x)?,
            planck.transformed_zero_mode(x)?,
            planck.i0(x)?,
            planck.v(x)?
        );
    }

    // lambda = 0.5 puts a pole at x = ln(0.5) inside [-2, 2].
    let v = validate_lambda(&vacuum, Lambda::Finite(0.5), Interval::new(-2.0, 2.0)?, 1024, I0Mode::ClosedForm)?;
    if let LambdaValidation::Violated(report) = v {
        println!("\n{report}");
    }
    match DarbouxFamily::new(vacuum, Lambda::Finite(-1.0), domain, FamilyOptions::default()) {
        Err(Error::LambdaViolation(r)) => println!("{r}"),
        other => println!("unexpected: {other:?}"),
    }

    // A general seed goes through quadrature.
    let general = DarbouxFamily::new(
        ZeroMode::general(1.0, 0.25, hbar)?,
        Lambda::Finite(1.0),
        Interval::new(0.0, 3.0)?,
        FamilyOptions::default(),
    )?;
    println!("\ngeneral seed, I0 by {:?}: f_g(1.5) = {:.12}", general.i0_mode(), general.value(1.5)?);
    Ok(())
}
