//! Nyquist-Johnson noise power and its Darboux generalization.
//!
//! cargo run --example noise_spectrum

use std::f64::consts::PI;

use darboux_thermo::actions::ZeroMode;
use darboux_thermo::darboux::{DarbouxFamily, FamilyOptions, Interval, Lambda};
use darboux_thermo::noise::{darboux_power, nyquist_power, spectrum_sweep, ResistanceModel};
use darboux_thermo::numerics::logspace;

pub fn main() -> Result<(), Box<dyn std::error::Error>> {
    let hbar = 1.0;
    let (beta, r) = (1.0, 50.0);
    let resistor = ResistanceModel::constant(r)?;

    // Classical plateau P = R T / pi for hbar beta omega << 1.
    for omega in [1e-4, 1e-3, 1e-2] {
        let p = nyquist_power(omega, beta, &resistor, hbar)?;
        println!("omega = {omega:e}: P pi / (R T) = {:.12}", p * PI * beta / r);
    }

    // lambda = inf is the ordinary spectrum.
    let fam = DarbouxFamily::new(ZeroMode::planck(hbar)?, Lambda::Infinity, Interval::new(0.5, 2.0)?, FamilyOptions::default())?;
    let (a, b) = (darboux_power(1.0, beta, &fam, &resistor)?, nyquist_power(1.0, beta, &resistor, hbar)?);
    println!("lambda = inf: {a} vs {b}, identical: {}", a.to_bits() == b.to_bits());

    // A resonant load and a vacuum-seed family with a fermionic branch.
    let rlc = ResistanceModel::from_resonance(r, 2.0, 5.0)?;
    let omegas = logspace(0.5, 8.0, 9);
    let table = spectrum_sweep(
        &omegas,
        beta,
        &[Lambda::Infinity, Lambda::Finite(2.0)],
        &ZeroMode::vacuum(hbar)?,
        &rlc,
        FamilyOptions::default(),
    )?;
    println!("\n{:>8} {:>6} {:>12} {:>14} regime", "omega", "lambda", "R", "P");
    for rec in &table.records {
        println!("{:>8.4} {:>6} {:>12.6} {:>14.6} {}", rec.omega, rec.lambda.to_string(), rec.r, rec.p, rec.regime.as_str());
    }
    Ok(())
}
