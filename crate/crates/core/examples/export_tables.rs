//! Write the CSV tables behind the usual plots into a directory.
//!
//! cargo run --example export_tables -- /tmp/tables
//!
//! Plot with anything that reads CSV, e.g.
//!
//!     import pandas as pd
//!     d = pd.read_csv("/tmp/tables/family.csv")
//!     for lam, g in d.groupby("lambda"): plt.plot(g.x, g.f_g, label=lam)

use std::path::PathBuf;

use darboux_thermo::cli::{execute, CommandTag, GridSpec, RunConfig, SeedTag};
use darboux_thermo::darboux::Lambda;

pub fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = std::env::args_os().nth(1).map(PathBuf::from).unwrap_or_else(|| std::env::temp_dir().join("darboux-thermo"));
    std::fs::create_dir_all(&dir)?;

    let family = RunConfig {
        grid: Some("-6:6:241".parse::<GridSpec>()?),
        seed: Some(SeedTag::Vacuum),
        lambda: vec![Lambda::Finite(1.0), Lambda::Finite(1.5), Lambda::Finite(2.0), Lambda::Finite(10.0)],
        include_seed: true,
        ..RunConfig::new(CommandTag::Family)
    };
    let action = RunConfig {
        grid: Some("0.05:10:200".parse::<GridSpec>()?),
        log_grid: true,
        seed: Some(SeedTag::Planck),
        omega: Some(1.0),
        ..RunConfig::new(CommandTag::Action)
    };
    let spectrum = RunConfig {
        grid: Some("0.01:20:200".parse::<GridSpec>()?),
        log_grid: true,
        beta: Some(1.0),
        seed: Some(SeedTag::Vacuum),
        lambda: vec![Lambda::Infinity, Lambda::Finite(2.0), Lambda::Finite(10.0)],
        resistance: Some(darboux_thermo::cli::parse_resistance("resonant:1,2,5")?),
        ..RunConfig::new(CommandTag::Spectrum)
    };
    for (name, config) in [("family.csv", family), ("action.csv", action), ("spectrum.csv", spectrum)] {
        let out = execute(&config);
        if out.code != 0 {
            return Err(format!("{name}: exit {} {:?}", out.code, out.messages).into());
        }
        let path = dir.join(name);
        std::fs::write(&path, &out.body)?;
        println!("wrote {} ({} bytes)", path.display(), out.body.len());
    }
    Ok(())
}
