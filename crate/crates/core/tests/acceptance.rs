//! Acceptance criteria 1 to 12, one line each. Exits nonzero if any fails.

use std::process::Command;
use std::time::{Duration, Instant};

use darboux_thermo::actions::{planck_action, Action, ActionModel, ZeroMode};
use darboux_thermo::darboux::{
    i0_integral, lambda_convergence_report, validate_lambda, DarbouxFamily, FamilyOptions, I0Mode, Interval, Lambda,
    LambdaValidation,
};
use darboux_thermo::noise::{darboux_power, nyquist_power, ResistanceModel};
use darboux_thermo::numerics::{linspace, logspace};
use darboux_thermo::thermo::{entropy, entropy_derivative_check, kink_profile};
use darboux_thermo::Result;

const HBARS: [f64; 3] = [0.5, 1.0, 2.0];

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn positive_grid() -> Vec<f64> {
    logspace(0.1, 10.0, 64)
}

fn symmetric_grid() -> Vec<f64> {
    linspace(-10.0, 10.0, 201)
}

fn sup(grid: &[f64], f: impl Fn(f64) -> Result<f64>) -> Result<f64> {
    grid.iter().try_fold(0.0f64, |m, &x| {
        let r = f(x)?;
        Ok(if r.is_nan() { f64::INFINITY } else { m.max(r.abs()) })
    })
}

fn five_point<A: Action>(f: &A, x: f64) -> Result<f64> {
    let h = 1e-3 * x.abs().clamp(1e-2, 1.0);
    Ok((f.value(x - 2.0 * h)? - 8.0 * f.value(x - h)? + 8.0 * f.value(x + h)? - f.value(x + 2.0 * h)?) / (12.0 * h))
}

fn family(mode: ZeroMode, lambda: Lambda, lo: f64, hi: f64) -> Result<DarbouxFamily> {
    DarbouxFamily::new(mode, lambda, Interval::new(lo, hi)?, FamilyOptions::default())
}

fn riccati_residuals() -> Result<Outcome> {
    let start = Instant::now();
    let grid = positive_grid();
    let mut worst = 0.0f64;
    for h in HBARS {
        for model in [ActionModel::planck(h)?, ActionModel::vacuum(h)?, ActionModel::fermi(h)?] {
            worst = worst.max(sup(&grid, |x| Ok(model.derivative(x)? + model.value(x)?.powi(2) - 0.25 * h * h))?);
        }
    }
    let elapsed = start.elapsed();
    Ok(outcome(
        worst <= 1e-8 && elapsed < Duration::from_secs(1),
        format!("max residual {worst:.3e} (limit 1e-8), {:.3} s", elapsed.as_secs_f64()),
    ))
}

fn bernoulli_residual() -> Result<Outcome> {
    let grid = positive_grid();
    let mut worst = 0.0f64;
    for h in HBARS {
        let t = ActionModel::thermal(h)?;
        worst = worst.max(sup(&grid, |x| Ok(t.derivative(x)? + h * t.value(x)? + t.value(x)?.powi(2)))?);
    }
    Ok(outcome(worst <= 1e-8, format!("max residual {worst:.3e} (limit 1e-8)")))
}

fn family_invariance() -> Result<Outcome> {
    let grid = positive_grid();
    let (lo, hi) = (0.05, 10.5);
    let mut worst = 0.0f64;
    for h in HBARS {
        let cases = [(ZeroMode::vacuum(h)?, [1.5, 2.0, 10.0, 1000.0]), (ZeroMode::planck(h)?, [1.0, 2.0, 10.0, 1000.0])];
        for (mode, lambdas) in cases {
            let seed = mode.action();
            for l in lambdas {
                let fam = family(mode, Lambda::Finite(l), lo, hi)?;
                let fermionic = sup(&grid, |x| {
                    let fp = seed.value(x)?;
                    let v2 = -seed.derivative(x)? + fp * fp;
                    Ok(-five_point(&fam, x)? + fam.value(x)?.powi(2) - v2)
                })?;
                let bosonic = sup(&grid, |x| {
                    Ok(five_point(&fam, x)? + fam.value(x)?.powi(2) - fam.transformed_potential(x)?)
                })?;
                worst = worst.max(fermionic).max(bosonic);
            }
        }
    }
    Ok(outcome(worst <= 1e-8, format!("max residual {worst:.3e} (limit 1e-8)")))
}

fn closed_form_vs_quadrature() -> Result<Outcome> {
    let mut i0_worst = 0.0f64;
    let mut f_worst = 0.0f64;
    for h in HBARS {
        let grid = linspace(-10.0 / h, 10.0 / h, 81);
        for mode in [ZeroMode::vacuum(h)?, ZeroMode::planck(h)?] {
            i0_worst = i0_worst.max(sup(&grid, |x| {
                Ok(i0_integral(&mode, x, I0Mode::ClosedForm)? - i0_integral(&mode, x, I0Mode::Quadrature)?)
            })?);
        }
        for l in [1.5, 2.0, 10.0, 1000.0] {
            let fam = family(ZeroMode::vacuum(h)?, Lambda::Finite(l), 0.1, 10.0)?;
            f_worst = f_worst.max(sup(&positive_grid(), |x| {
                let e = (h * x).exp();
                Ok(fam.value(x)? - (0.5 * h - h * e / (e - 1.0 + h * l)))
            })?);
        }
    }
    Ok(outcome(
        i0_worst <= 1e-9 && f_worst <= 1e-12,
        format!("I0 gap {i0_worst:.3e} (limit 1e-9), vacuum family gap {f_worst:.3e} (limit 1e-12)"),
    ))
}

fn limit_law() -> Result<Outcome> {
    let grid = positive_grid();
    let lambdas: Vec<Lambda> = (0..5).map(|k| Lambda::Finite(10.0 * f64::from(1u32 << k))).collect();
    let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
    for h in HBARS {
        for mode in [ZeroMode::vacuum(h)?, ZeroMode::planck(h)?] {
            for row in lambda_convergence_report(&mode, &lambdas, &grid, FamilyOptions::default())? {
                if let Some(r) = row.ratio {
                    lo = lo.min(r);
                    hi = hi.max(r);
                }
            }
        }
    }
    Ok(outcome(
        lo >= 0.45 && hi <= 0.55,
        format!("ratios for lambda = 10, 20, 40, 80, 160 span [{lo:.4}, {hi:.4}] (required within [0.45, 0.55])"),
    ))
}

fn special_lambda() -> Result<Outcome> {
    let grid = symmetric_grid();
    let mut worst = 0.0f64;
    for h in HBARS {
        let constant = family(ZeroMode::vacuum(h)?, Lambda::Finite(1.0 / h), -10.0, 10.0)?;
        worst = worst.max(sup(&grid, |x| Ok(constant.value(x)? + 0.5 * h))?);
        let tanh = family(ZeroMode::vacuum(h)?, Lambda::Finite(2.0 / h), -10.0, 10.0)?;
        worst = worst.max(sup(&grid, |x| Ok(tanh.value(x)? + 0.5 * h * (0.5 * h * x).tanh()))?);
    }
    Ok(outcome(worst <= 1e-12, format!("max gap {worst:.3e} (limit 1e-12)")))
}

fn fermi_dirac_identity() -> Result<Outcome> {
    let mut worst = 0.0f64;
    for h in HBARS {
        let mode = ZeroMode::symmetric(h)?;
        worst = worst.max(sup(&symmetric_grid(), |x| {
            Ok(mode.log_derivative(x)? - (-0.5 * h + h / ((-h * x).exp() + 1.0)))
        })?);
    }
    Ok(outcome(worst <= 1e-12, format!("max gap {worst:.3e} (limit 1e-12)")))
}

fn kink_asymptotics() -> Result<Outcome> {
    let h = 1.0;
    let grid = linspace(-15.0, 15.0, 301);
    let mut worst = 0.0f64;
    for l in [1.5, 4.0, 10.0] {
        let fam = family(ZeroMode::vacuum(h)?, Lambda::Finite(l), -15.0, 15.0)?;
        let k = kink_profile(&fam, &grid)?;
        worst = worst.max((k.left_asymptote - 0.5 * h).abs()).max((k.right_asymptote + 0.5 * h).abs());
    }
    Ok(outcome(worst <= 1e-6, format!("max plateau error {worst:.3e} (limit 1e-6)")))
}

fn entropy_checks() -> Result<Outcome> {
    let (mut vac, mut planck, mut slope) = (0.0f64, 0.0f64, 0.0f64);
    let grid = positive_grid();
    for h in HBARS {
        let fam = family(ZeroMode::vacuum(h)?, Lambda::Infinity, -10.0, 10.0)?;
        vac = vac.max(sup(&symmetric_grid(), |x| entropy(&fam, x))?);
        let p = ActionModel::planck(h)?;
        planck = planck.max(sup(&grid, |x| {
            Ok(entropy(&p, x)? - (x * planck_action(x, h)? - (2.0 * (0.5 * h * x).sinh()).ln()))
        })?);
        let fams = [family(ZeroMode::vacuum(h)?, Lambda::Finite(2.0), 0.05, 10.5)?, family(ZeroMode::planck(h)?, Lambda::Finite(2.0), 0.05, 10.5)?];
        slope = slope.max(sup(&grid, |x| entropy_derivative_check(&p, x, 1e-5 * x.max(1.0)))?);
        for f in &fams {
            slope = slope.max(sup(&grid, |x| entropy_derivative_check(f, x, 1e-5 * x.max(1.0)))?);
        }
    }
    Ok(outcome(
        vac <= 1e-12 && planck <= 1e-10 && slope <= 1e-6,
        format!("vacuum {vac:.3e} (1e-12), Planck {planck:.3e} (1e-10), dS/dx {slope:.3e} (1e-6)"),
    ))
}

fn fdt() -> Result<Outcome> {
    let mut identical = true;
    let mut excess = f64::NEG_INFINITY;
    for h in HBARS {
        let omegas = logspace(0.01, 100.0, 41);
        let fam = family(ZeroMode::planck(h)?, Lambda::Infinity, 0.01, 100.0)?;
        for model in [ResistanceModel::constant(1.0)?, ResistanceModel::from_resonance(2.0, 1.0, 4.0)?] {
            for &w in &omegas {
                identical &= darboux_power(w, 1.0, &fam, &model)?.to_bits() == nyquist_power(w, 1.0, &model, h)?.to_bits();
            }
        }
        let r = 3.0;
        let model = ResistanceModel::constant(r)?;
        for beta in [0.5, 1.0, 2.0] {
            for w in logspace(1e-5, 0.01 / (h * beta), 21) {
                let y = h * beta * w;
                let p = nyquist_power(w, beta, &model, h)?;
                excess = excess.max((p * std::f64::consts::PI * beta / r - 1.0).abs() - y * y / 12.0);
            }
        }
    }
    Ok(outcome(
        identical && excess <= 1e-12,
        format!("lambda = inf bit-identical: {identical}, classical excess over bound {excess:.3e} (limit 1e-12)"),
    ))
}

fn validation() -> Result<Outcome> {
    let domain = Interval::new(-2.0, 2.0)?;
    let v = validate_lambda(&ZeroMode::vacuum(1.0)?, Lambda::Finite(0.5), domain, 1024, I0Mode::ClosedForm)?;
    let target = 0.5f64.ln();
    Ok(match v {
        LambdaValidation::Valid(_) => outcome(false, "lambda = 0.5 was accepted"),
        LambdaValidation::Violated(report) => {
            let s = report.grid_spacing;
            let hit = report
                .brackets
                .iter()
                .any(|&(a, b)| a <= target && target <= b && target - a <= s && b - target <= s);
            outcome(hit, format!("brackets {:?}, ln 0.5 = {target:.6}, spacing {s:.4e}", report.brackets))
        }
    })
}

fn cli() -> Result<Outcome> {
    let exe = env!("CARGO_BIN_EXE_darboux-thermo");
    let start = Instant::now();
    let first = Command::new(exe).args(["verify", "--suite", "all"]).output().expect("run binary");
    let elapsed = start.elapsed();
    let second = Command::new(exe).args(["verify", "--suite", "all"]).output().expect("run binary");
    let fam = ["family", "--seed", "planck", "--lambda", "1,2,inf", "--grid", "0.1:10:50", "--log", "--format", "json"];
    let f1 = Command::new(exe).args(fam).output().expect("run binary");
    let f2 = Command::new(exe).args(fam).output().expect("run binary");
    let code = first.status.code();
    let same = first.stdout == second.stdout && f1.stdout == f2.stdout && !f1.stdout.is_empty();
    Ok(outcome(
        code == Some(0) && elapsed < Duration::from_secs(10) && same,
        format!("verify exit {code:?} in {:.3} s, byte-identical reruns: {same}", elapsed.as_secs_f64()),
    ))
}

type Criterion = fn() -> Result<Outcome>;

fn main() {
    let criteria: [(&str, Criterion); 12] = [
        ("Riccati residuals", riccati_residuals),
        ("Bernoulli residual", bernoulli_residual),
        ("family invariance", family_invariance),
        ("closed form vs quadrature", closed_form_vs_quadrature),
        ("limit law", limit_law),
        ("special-lambda identities", special_lambda),
        ("Fermi-Dirac identity", fermi_dirac_identity),
        ("kink asymptotics", kink_asymptotics),
        ("entropy", entropy_checks),
        ("FDT", fdt),
        ("lambda validation", validation),
        ("CLI verify and determinism", cli),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let o = check().unwrap_or_else(|e| outcome(false, format!("error: {e}")));
        if !o.pass {
            failed += 1;
        }
        println!("criterion {:>2} {} {name}: {}", i + 1, if o.pass { "PASS" } else { "FAIL" }, o.detail);
    }
    println!("acceptance: {} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
