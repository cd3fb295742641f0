//! Residual and oracle checks over canonical grids, grouped into suites.

use clap::ValueEnum;
use serde::{Deserialize, Serialize, Serializer};

use super::table::{format_g17, json_number};
use crate::actions::{Action, ActionModel, ZeroMode};
use crate::darboux::{
    bernoulli_residual, bosonic_residual, i0_integral, lambda_convergence_report, DarbouxFamily,
    FamilyOptions, I0Mode, Interval, Lambda,
};
use crate::error::{Error, Result};
use crate::noise::{darboux_power, nyquist_power, ResistanceModel};
use crate::numerics::{linspace, logspace};
use crate::thermo::{entropy, entropy_derivative_check, kink_profile};

pub const DEFAULT_HBARS: [f64; 3] = [0.5, 1.0, 2.0];
pub const CANONICAL_LAMBDAS: [f64; 4] = [1.0, 2.0, 10.0, 1000.0];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum Suite {
    Riccati,
    Darboux,
    Limits,
    Entropy,
    Fdt,
    #[default]
    All,
}

impl Suite {
    fn parts(self) -> Vec<Suite> {
        match self {
            Suite::All => vec![Suite::Riccati, Suite::Darboux, Suite::Limits, Suite::Entropy, Suite::Fdt],
            s => vec![s],
        }
    }
}

fn as_json_number<S: Serializer>(v: &f64, s: S) -> std::result::Result<S::Ok, S::Error> {
    json_number(*v).serialize(s)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    #[serde(serialize_with = "as_json_number")]
    pub max_residual: f64,
    #[serde(serialize_with = "as_json_number")]
    pub tolerance: f64,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl Check {
    fn from_result(name: String, tolerance: f64, r: Result<f64>) -> Self {
        match r {
            Ok(v) => Check { name, max_residual: v, tolerance, pass: v <= tolerance, detail: None },
            Err(e) => {
                Check { name, max_residual: f64::INFINITY, tolerance, pass: false, detail: Some(e.to_string()) }
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyReport {
    pub suite: Suite,
    pub checks: Vec<Check>,
    pub overall: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerifyOptions {
    pub hbars: Vec<f64>,
    pub tolerance: f64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { hbars: DEFAULT_HBARS.to_vec(), tolerance: 1e-8 }
    }
}

pub fn run_suite(suite: Suite, options: &VerifyOptions) -> Result<VerifyReport> {
    if !(options.tolerance > 0.0) {
        return Err(Error::Argument(format!("tolerance must be positive, got {}", options.tolerance)));
    }
    if options.hbars.is_empty() {
        return Err(Error::Argument("verify needs at least one hbar".into()));
    }
    let mut checks = Vec::new();
    for part in suite.parts() {
        for &h in &options.hbars {
            let mut ctx = Ctx { h, tol: options.tolerance, checks: &mut checks };
            match part {
                Suite::Riccati => riccati(&mut ctx),
                Suite::Darboux => darboux(&mut ctx),
                Suite::Limits => limits(&mut ctx),
                Suite::Entropy => entropy_suite(&mut ctx),
                Suite::Fdt => fdt(&mut ctx),
                Suite::All => unreachable!(),
            }
        }
    }
    let overall = checks.iter().all(|c| c.pass);
    Ok(VerifyReport { suite, checks, overall })
}

struct Ctx<'a> {
    h: f64,
    tol: f64,
    checks: &'a mut Vec<Check>,
}

impl Ctx<'_> {
    fn add(&mut self, name: &str, tolerance: f64, r: Result<f64>) {
        let name = format!("{name}.hbar={}", format_g17(self.h));
        self.checks.push(Check::from_result(name, tolerance, r));
    }
}

fn positive_grid() -> Vec<f64> {
    logspace(0.1, 10.0, 64)
}

fn symmetric_grid() -> Vec<f64> {
    linspace(-10.0, 10.0, 201)
}

fn sup<F: Fn(f64) -> Result<f64>>(grid: &[f64], f: F) -> Result<f64> {
    grid.iter().try_fold(0.0f64, |m, &x| {
        let r = f(x)?;
        if r.is_nan() {
            return Err(Error::Domain { what: "residual", x });
        }
        Ok(m.max(r.abs()))
    })
}

// Five-point stencil; the three-point one is not accurate enough near x = 0.1.
fn fd<A: Action + ?Sized>(f: &A, x: f64) -> Result<f64> {
    let h = 1e-3 * x.abs().clamp(1e-2, 1.0);
    let at = |y: f64| f.value(y);
    let d = (at(x - 2.0 * h)? - 8.0 * at(x - h)? + 8.0 * at(x + h)? - at(x + 2.0 * h)?) / (12.0 * h);
    if d.is_finite() { Ok(d) } else { Err(Error::Domain { what: "finite difference", x }) }
}

fn lambda_tag(l: f64) -> String {
    format!("lambda={}", format_g17(l))
}

fn riccati(ctx: &mut Ctx) {
    let h = ctx.h;
    let grid = positive_grid();
    let v1 = 0.25 * h * h;
    let models: [(&str, Result<ActionModel>); 3] =
        [("planck", ActionModel::planck(h)), ("vacuum", ActionModel::vacuum(h)), ("fermi", ActionModel::fermi(h))];
    for (tag, model) in models {
        let r = model.and_then(|m| sup(&grid, |x| bosonic_residual(&m, x, |_| v1)));
        ctx.add(&format!("riccati.{tag}-bosonic-residual"), ctx.tol, r);
    }
    let r = ActionModel::thermal(h).and_then(|m| sup(&grid, |x| bernoulli_residual(&m, x, h)));
    ctx.add("riccati.thermal-bernoulli-residual", ctx.tol, r);
    // Same equations with f' by central differences instead of the closed form.
    let r = ActionModel::planck(h).and_then(|m| sup(&grid, |x| Ok(fd(&m, x)? + m.value(x)?.powi(2) - v1)));
    ctx.add("riccati.planck-bosonic-residual-numeric", ctx.tol, r);
}

fn family_on(mode: ZeroMode, lambda: Lambda, lo: f64, hi: f64) -> Result<DarbouxFamily> {
    DarbouxFamily::new(mode, lambda, Interval::new(lo, hi)?, FamilyOptions::default())
}

fn darboux(ctx: &mut Ctx) {
    let h = ctx.h;
    let grid = positive_grid();
    // Families are built on a slightly wider interval so differences can step past the grid ends.
    let (lo, hi) = (0.5 * grid[0], 1.05 * grid[grid.len() - 1]);
    let seeds: [(&str, Result<ZeroMode>, &[f64]); 2] = [
        ("vacuum", ZeroMode::vacuum(h), &[1.0, 1.5, 2.0, 10.0, 1000.0]),
        ("planck", ZeroMode::planck(h), &CANONICAL_LAMBDAS),
    ];
    for (tag, mode, lambdas) in seeds {
        for &l in lambdas {
            let fam = mode.clone().and_then(|m| family_on(m, Lambda::Finite(l), lo, hi));
            let seed = mode.clone().map(|m| m.action());
            let r = fam.as_ref().map_err(Clone::clone).and_then(|fam| {
                sup(&grid, |x| {
                    let v1g = fam.transformed_potential(x)?;
                    Ok(fd(fam, x)? + fam.value(x)?.powi(2) - v1g)
                })
            });
            ctx.add(&format!("darboux.{tag}-family-bosonic-residual.{}", lambda_tag(l)), ctx.tol, r);
            let r = fam.as_ref().map_err(Clone::clone).and_then(|fam| {
                let seed = seed.clone()?;
                sup(&grid, |x| {
                    let fp = seed.value(x)?;
                    let v2 = -seed.derivative(x)? + fp * fp;
                    Ok(-fd(fam, x)? + fam.value(x)?.powi(2) - v2)
                })
            });
            ctx.add(&format!("darboux.{tag}-family-fermionic-residual.{}", lambda_tag(l)), ctx.tol, r);
        }
    }
    for &l in &CANONICAL_LAMBDAS {
        let fam = ZeroMode::vacuum(h).and_then(|m| family_on(m, Lambda::Finite(l), lo, hi));
        let r = fam.and_then(|fam| {
            sup(&grid, |x| {
                let e = (h * x).exp();
                Ok(fam.value(x)? - (0.5 * h - h * e / (e - 1.0 + h * l)))
            })
        });
        ctx.add(&format!("darboux.vacuum-family-closed-form.{}", lambda_tag(l)), 1e-12, r);
    }

    let i0_grid = linspace(-10.0 / h, 10.0 / h, 41);
    for (tag, mode) in [("vacuum", ZeroMode::vacuum(h)), ("planck", ZeroMode::planck(h))] {
        let r = mode.and_then(|m| {
            sup(&i0_grid, |x| Ok(i0_integral(&m, x, I0Mode::ClosedForm)? - i0_integral(&m, x, I0Mode::Quadrature)?))
        });
        ctx.add(&format!("darboux.{tag}-i0-closed-form-vs-quadrature"), 1e-9, r);
    }

    let sym = symmetric_grid();
    let r = ZeroMode::vacuum(h)
        .and_then(|m| family_on(m, Lambda::Finite(1.0 / h), -10.0, 10.0))
        .and_then(|fam| sup(&sym, |x| Ok(fam.value(x)? + 0.5 * h)));
    ctx.add("darboux.vacuum-family-constant-fermionic-branch", 1e-12, r);
    let r = ZeroMode::vacuum(h)
        .and_then(|m| family_on(m, Lambda::Finite(2.0 / h), -10.0, 10.0))
        .and_then(|fam| sup(&sym, |x| Ok(fam.value(x)? + 0.5 * h * (0.5 * h * x).tanh())));
    ctx.add("darboux.vacuum-family-tanh-branch", 1e-12, r);
    let r = ZeroMode::symmetric(h)
        .and_then(|m| sup(&sym, |x| Ok(m.log_derivative(x)? - (-0.5 * h + h / ((-h * x).exp() + 1.0)))));
    ctx.add("darboux.fermi-dirac-log-derivative", 1e-12, r);
}

fn limits(ctx: &mut Ctx) {
    let h = ctx.h;
    let grid = positive_grid();
    let x_max = grid[grid.len() - 1];
    for (tag, mode) in [("vacuum", ZeroMode::vacuum(h)), ("planck", ZeroMode::planck(h))] {
        let r = mode.clone().and_then(|m| {
            // The deviation behaves like 1/lambda once lambda dominates I0 on the grid.
            let base = 10.0 * i0_integral(&m, x_max, I0Mode::ClosedForm)?.max(1.0);
            let lambdas: Vec<Lambda> = (0..4).map(|k| Lambda::Finite(base * f64::from(1u32 << k))).collect();
            let rows = lambda_convergence_report(&m, &lambdas, &grid, FamilyOptions::default())?;
            Ok(rows.iter().filter_map(|r| r.ratio).fold(0.0f64, |acc, q| acc.max((q - 0.5).abs())))
        });
        ctx.add(&format!("limits.{tag}-deviation-halves-when-lambda-doubles"), 0.1, r);

        let r = mode.and_then(|m| {
            let fam = family_on(m, Lambda::Infinity, grid[0], x_max)?;
            let seed = m.action();
            sup(&grid, |x| Ok(fam.value(x)? - seed.value(x)?))
        });
        ctx.add(&format!("limits.{tag}-infinite-lambda-reproduces-seed"), 0.0, r);
    }
}

fn entropy_suite(ctx: &mut Ctx) {
    let h = ctx.h;
    let grid = positive_grid();
    let r = ZeroMode::vacuum(h)
        .and_then(|m| family_on(m, Lambda::Infinity, -10.0, 10.0))
        .and_then(|fam| sup(&symmetric_grid(), |x| entropy(&fam, x)));
    ctx.add("entropy.vacuum-is-zero", 1e-12, r);

    let r = ActionModel::planck(h).and_then(|p| {
        sup(&grid, |x| {
            let closed = x * p.value(x)? - (2.0 * (0.5 * h * x).sinh()).ln();
            Ok(entropy(&p, x)? - closed)
        })
    });
    ctx.add("entropy.planck-closed-form", 1e-10, r);

    let r = (|| {
        let p = ActionModel::planck(h)?;
        let (lo, hi) = (0.5 * grid[0], 1.05 * grid[grid.len() - 1]);
        let vac = family_on(ZeroMode::vacuum(h)?, Lambda::Finite(2.0), lo, hi)?;
        let pl = family_on(ZeroMode::planck(h)?, Lambda::Finite(2.0), lo, hi)?;
        let step = |x: f64| 1e-5 * x.max(1.0);
        let a = sup(&grid, |x| entropy_derivative_check(&p, x, step(x)))?;
        let b = sup(&grid, |x| entropy_derivative_check(&vac, x, step(x)))?;
        let c = sup(&grid, |x| entropy_derivative_check(&pl, x, step(x)))?;
        Ok(a.max(b).max(c))
    })();
    ctx.add("entropy.derivative-equals-x-times-action-slope", 1e-6, r);

    let kink_grid = linspace(-15.0 / h, 15.0 / h, 301);
    for c in [1.5, 4.0, 10.0] {
        let r = ZeroMode::vacuum(h)
            .and_then(|m| family_on(m, Lambda::Finite(c / h), kink_grid[0], kink_grid[300]))
            .and_then(|fam| kink_profile(&fam, &kink_grid))
            .map(|k| (k.left_asymptote - 0.5 * h).abs().max((k.right_asymptote + 0.5 * h).abs()));
        ctx.add(&format!("entropy.vacuum-kink-plateaus.hbar-lambda={}", format_g17(c)), 1e-6, r);
    }
}

fn fdt(ctx: &mut Ctx) {
    let h = ctx.h;
    let beta = 1.0;
    let omegas = logspace(0.01, 100.0, 41);
    let models = [
        ("constant", ResistanceModel::constant(1.0)),
        ("parallel-rlc", ResistanceModel::from_resonance(1.0, 1.0, 5.0)),
    ];
    for (tag, model) in models {
        let r = (|| {
            let model = model?;
            let fam = family_on(ZeroMode::planck(h)?, Lambda::Infinity, beta * omegas[0], beta * omegas[40])?;
            let mut worst = 0.0f64;
            for &w in &omegas {
                let a = darboux_power(w, beta, &fam, &model)?;
                let b = nyquist_power(w, beta, &model, h)?;
                if a.to_bits() != b.to_bits() {
                    worst = worst.max((a - b).abs()).max(f64::MIN_POSITIVE);
                }
            }
            Ok(worst)
        })();
        ctx.add(&format!("fdt.infinite-lambda-matches-nyquist.{tag}"), 0.0, r);
    }

    let r_const = 2.0;
    let classical = logspace(1e-4 / h, 0.01 / h, 21);
    let r = ResistanceModel::constant(r_const).and_then(|model| {
        classical.iter().try_fold(f64::NEG_INFINITY, |m, &w| {
            let p = nyquist_power(w, beta, &model, h)?;
            let y = h * beta * w;
            let excess = (p * std::f64::consts::PI * beta / r_const - 1.0).abs() - y * y / 12.0;
            Ok(m.max(excess))
        })
    });
    ctx.add("fdt.classical-flat-spectrum", 1e-12, r);
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_suite_passes_at_unit_hbar() {
        let opts = VerifyOptions { hbars: vec![1.0], tolerance: 1e-8 };
        let report = run_suite(Suite::All, &opts).unwrap();
        for c in &report.checks {
            assert!(c.pass, "{c:?}");
        }
        assert!(report.overall);
    }

    #[test]
    fn check_names_are_unique() {
        let report = run_suite(Suite::All, &VerifyOptions::default()).unwrap();
        let mut names: Vec<_> = report.checks.iter().map(|c| c.name.clone()).collect();
        let n = names.len();
        names.sort();
        names.dedup();
        assert_eq!(names.len(), n);
    }

    #[test]
    fn tight_tolerance_fails_residual_checks() {
        let opts = VerifyOptions { hbars: vec![1.0], tolerance: 1e-30 };
        let report = run_suite(Suite::Riccati, &opts).unwrap();
        assert!(!report.overall);
    }

    #[test]
    fn bad_options_are_rejected() {
        assert!(run_suite(Suite::All, &VerifyOptions { hbars: vec![], tolerance: 1e-8 }).is_err());
        assert!(run_suite(Suite::All, &VerifyOptions { hbars: vec![1.0], tolerance: 0.0 }).is_err());
    }
}
