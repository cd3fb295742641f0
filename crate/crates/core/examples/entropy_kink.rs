//! Entropy of actions and families, the vacuum-family kink, and the sign of
//! the temperature read off x.
//!
//! cargo run --example entropy_kink

use darboux_thermo::actions::{ActionModel, ZeroMode};
use darboux_thermo::darboux::{DarbouxFamily, FamilyOptions, Interval, Lambda};
use darboux_thermo::numerics::{linspace, logspace};
use darboux_thermo::thermo::{carnot_baths, entropy, internal_energy, kink_profile, temperature_sign_map, EntropyProfile};

pub fn main() -> Result<(), Box<dyn std::error::Error>> {
    let hbar = 1.0;
    let planck = ActionModel::planck(hbar)?;
    let profile = EntropyProfile::evaluate(&planck, &logspace(0.1, 20.0, 8), "planck")?;
    println!("Planck entropy, offset {:.10}", profile.normalization_constant);
    for (x, s) in profile.grid.iter().zip(&profile.entropy_values) {
        println!("  x = {x:>9.5}  S = {s:.10}  U(omega = 1) = {:.10}", internal_energy(&planck, *x, 1.0)?);
    }

    let vacuum = ZeroMode::vacuum(hbar)?;
    let seed = DarbouxFamily::new(vacuum, Lambda::Infinity, Interval::new(-10.0, 10.0)?, FamilyOptions::default())?;
    println!("vacuum entropy at x = -3, 0, 3: {:?}", [entropy(&seed, -3.0)?, entropy(&seed, 0.0)?, entropy(&seed, 3.0)?]);

    let grid = linspace(-15.0, 15.0, 301);
    for lambda in [1.5, 4.0, 10.0] {
        let fam = DarbouxFamily::new(vacuum, Lambda::Finite(lambda), Interval::new(-15.0, 15.0)?, FamilyOptions::default())?;
        let k = kink_profile(&fam, &grid)?;
        println!(
            "kink lambda = {lambda:>4}: left {:+.9}, right {:+.9}, width {:.4}, S(0) = {:.6}",
            k.left_asymptote,
            k.right_asymptote,
            k.transition_width,
            entropy(&fam, 0.0)?
        );
    }

    // Negative x reads as a negative temperature, hotter than any positive one.
    let hot = temperature_sign_map(-2.0, 1.0)?;
    let cold = temperature_sign_map(0.5, 1.0)?;
    let (h, c) = carnot_baths(cold, hot);
    println!("hot bath T = {:.3} ({:?}), cold bath T = {:.3} ({:?})", h.temperature, h.regime, c.temperature, c.regime);
    Ok(())
}
