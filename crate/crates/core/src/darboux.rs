//! One-parameter Darboux deformations of a seed action.
//!
//! Given a seed `f_p = w_b'/w_b` solving `f_p' + f_p^2 = V1`, the fermionic
//! equation `-f' + f^2 = V2 = -f_p' + f_p^2` has the general solution
//!
//! ```text
//! f_g(x; lambda) = f_p(x) - w_b(x)^2 / (I0(x) + lambda),   I0(x) = int_0^x w_b(y)^2 dy
//! ```
//!
//! which is the log-derivative of `w_b(x; lambda) = w_b(x) / (I0(x) + lambda)`
//! and solves the bosonic equation for the deformed potential
//! `V1g = V1 - 2 d^2/dx^2 ln(I0 + lambda)`. `lambda = +inf` gives back the seed.
//! `lambda` is admissible on a domain only if `I0 + lambda` has no zero there.

use std::cell::RefCell;
use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::actions::{Action, ActionModel, ZeroMode, ZeroModeKind};
use crate::error::{Error, Result};
use crate::numerics::{integrate_adaptive, linspace, scan_sign_change, DEFAULT_QUAD_TOL, EXP_CUTOFF};

/// The Darboux parameter: a real number or `+inf`, which stands for the seed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Lambda {
    Finite(f64),
    Infinity,
}

impl Lambda {
    pub fn finite(value: f64) -> Result<Self> {
        if value.is_finite() {
            Ok(Lambda::Finite(value))
        } else {
            Err(Error::Argument(format!("lambda must be finite or the symbol inf, got {value}")))
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, Lambda::Infinity)
    }

    pub fn as_f64(&self) -> f64 {
        match *self {
            Lambda::Finite(v) => v,
            Lambda::Infinity => f64::INFINITY,
        }
    }

    pub fn total_cmp(&self, other: &Self) -> Ordering {
        self.as_f64().total_cmp(&other.as_f64())
    }
}

impl fmt::Display for Lambda {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Lambda::Finite(v) => write!(f, "{v}"),
            Lambda::Infinity => f.write_str("inf"),
        }
    }
}

impl FromStr for Lambda {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "inf" | "+inf" | "infinity" | "+infinity" => Ok(Lambda::Infinity),
            other => other
                .parse::<f64>()
                .map_err(|_| Error::Argument(format!("cannot parse lambda from {s:?}")))
                .and_then(Lambda::finite),
        }
    }
}

impl Serialize for Lambda {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match *self {
            Lambda::Finite(v) => serializer.serialize_f64(v),
            Lambda::Infinity => serializer.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for Lambda {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Number(f64),
            Text(String),
        }
        match Raw::deserialize(deserializer)? {
            Raw::Number(v) => Lambda::finite(v).map_err(serde::de::Error::custom),
            Raw::Text(s) => s.parse().map_err(serde::de::Error::custom),
        }
    }
}

/// How `I0` is evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum I0Mode {
    /// Antiderivative; available for the vacuum and Planck modes only.
    ClosedForm,
    Quadrature,
}

impl I0Mode {
    /// Closed form where one exists, quadrature otherwise.
    pub fn preferred_for(mode: &ZeroMode) -> Self {
        match mode.kind() {
            ZeroModeKind::Vacuum | ZeroModeKind::Planck => I0Mode::ClosedForm,
            _ => I0Mode::Quadrature,
        }
    }
}

/// Whether a finite `lambda` must also be positive (strict) or only needs
/// `I0 + lambda != 0` on the domain (permissive).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LambdaPolicy {
    #[default]
    Strict,
    Permissive,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        if !lo.is_finite() || !hi.is_finite() || lo > hi {
            return Err(Error::Argument(format!("invalid interval [{lo}, {hi}]")));
        }
        Ok(Interval { lo, hi })
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ValidatedDomain {
    pub interval: Interval,
    /// `lambda = 0`: `I0(0) + lambda` vanishes at the origin, so the family
    /// is singular there even when the origin is outside the interval.
    pub boundary_degenerate: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ViolationReason {
    /// `I0 + lambda` changes sign (or vanishes) inside the domain.
    Singular,
    /// Strict policy and `lambda <= 0`.
    NonPositive,
}

/// Why a `lambda` was rejected, with a bracket around each forbidden point.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ViolationReport {
    pub lambda: Lambda,
    pub reason: ViolationReason,
    pub domain: Interval,
    pub grid_spacing: f64,
    pub brackets: Vec<(f64, f64)>,
}

impl fmt::Display for ViolationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.reason {
            ViolationReason::NonPositive => {
                write!(f, "lambda = {} is not positive (strict lambda policy)", self.lambda)
            }
            ViolationReason::Singular => {
                write!(
                    f,
                    "lambda = {} makes I0 + lambda vanish on [{}, {}]:",
                    self.lambda, self.domain.lo, self.domain.hi
                )?;
                for (a, b) in &self.brackets {
                    write!(f, " [{a}, {b}]")?;
                }
                Ok(())
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum LambdaValidation {
    Valid(ValidatedDomain),
    Violated(ViolationReport),
}

/// `int_0^x w(y)^2 dy` for the mode as given (so it scales with `scale^2`).
/// Negative `x` gives the signed integral.
pub fn i0_integral(mode: &ZeroMode, x: f64, i0_mode: I0Mode) -> Result<f64> {
    i0_with_tol(mode, x, i0_mode, DEFAULT_QUAD_TOL)
}

fn i0_with_tol(mode: &ZeroMode, x: f64, i0_mode: I0Mode, tol: f64) -> Result<f64> {
    if x == 0.0 {
        return Ok(0.0);
    }
    let h = mode.hbar();
    let w2 = mode.scale() * mode.scale();
    match i0_mode {
        I0Mode::ClosedForm => match mode.kind() {
            ZeroModeKind::Vacuum => Ok(w2 * (h * x).exp_m1() / h),
            ZeroModeKind::Planck => Ok(w2 * 0.5 * ((h * x).sinh() / h - x)),
            other => Err(Error::Unsupported(format!("no closed-form I0 for the {other:?} zero mode"))),
        },
        I0Mode::Quadrature => {
            let r = integrate_adaptive(
                |y| {
                    let w = mode.value(y);
                    w * w
                },
                0.0,
                x,
                tol,
            )?;
            Ok(r.value)
        }
    }
}

// I0 + lambda. The vacuum closed form is regrouped as
// (scale^2 e^{hx} + (h lambda - scale^2)) / h so that lambda = scale^2/h cancels exactly.
fn shift_value(mode: &ZeroMode, x: f64, lambda: f64, i0_mode: I0Mode) -> Result<f64> {
    if i0_mode == I0Mode::ClosedForm && mode.kind() == ZeroModeKind::Vacuum {
        let h = mode.hbar();
        let w2 = mode.scale() * mode.scale();
        return Ok((w2 * (h * x).exp() + (h * lambda - w2)) / h);
    }
    Ok(i0_integral(mode, x, i0_mode)? + lambda)
}

/// Scan `I0(x) + lambda` for zeros on `grid_density` evenly spaced points of
/// `domain`.
pub fn validate_lambda(
    seed_mode: &ZeroMode,
    lambda: Lambda,
    domain: Interval,
    grid_density: usize,
    i0_mode: I0Mode,
) -> Result<LambdaValidation> {
    if grid_density < 16 {
        return Err(Error::Argument(format!("grid density must be at least 16, got {grid_density}")));
    }
    if !(domain.hi > domain.lo) {
        return Err(Error::Argument(format!("domain [{}, {}] is empty", domain.lo, domain.hi)));
    }
    let Lambda::Finite(l) = lambda else {
        return Ok(LambdaValidation::Valid(ValidatedDomain { interval: domain, boundary_degenerate: false }));
    };
    let mode = seed_mode.normalized();
    let grid = linspace(domain.lo, domain.hi, grid_density);
    let failure = RefCell::new(None);
    let brackets = scan_sign_change(
        |x| match shift_value(&mode, x, l, i0_mode) {
            // Far tails of the closed forms overflow with a definite sign.
            Ok(v) if v.is_infinite() => v.signum() * f64::MAX,
            Ok(v) => v,
            Err(e) => {
                failure.borrow_mut().get_or_insert(e);
                f64::NAN
            }
        },
        &grid,
    );
    if let Some(e) = failure.into_inner() {
        return Err(e);
    }
    let brackets = brackets?;
    if brackets.is_empty() {
        Ok(LambdaValidation::Valid(ValidatedDomain { interval: domain, boundary_degenerate: l == 0.0 }))
    } else {
        Ok(LambdaValidation::Violated(ViolationReport {
            lambda,
            reason: ViolationReason::Singular,
            domain,
            grid_spacing: grid[1] - grid[0],
            brackets,
        }))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FamilyOptions {
    pub policy: LambdaPolicy,
    /// `None` picks [`I0Mode::preferred_for`] the seed.
    pub i0_mode: Option<I0Mode>,
    /// Admit `x <= 0` for the Planck seed, whose mode has a node at the origin.
    pub allow_negative_x: bool,
    pub grid_density: usize,
}

impl Default for FamilyOptions {
    fn default() -> Self {
        FamilyOptions { policy: LambdaPolicy::Strict, i0_mode: None, allow_negative_x: false, grid_density: 1024 }
    }
}

impl FamilyOptions {
    pub fn permissive() -> Self {
        FamilyOptions { policy: LambdaPolicy::Permissive, ..Default::default() }
    }
}

/// `f_g(x; lambda)` for one seed and one admissible `lambda` on a validated domain.
#[derive(Debug, Clone, PartialEq)]
pub struct DarbouxFamily {
    seed: ActionModel,
    seed_mode: ZeroMode,
    lambda: Lambda,
    domain: ValidatedDomain,
    i0_mode: I0Mode,
}

impl DarbouxFamily {
    /// Build and validate a family. The seed mode is used at unit scale so
    /// `lambda` has the same meaning whatever normalization the caller chose.
    pub fn new(seed_mode: ZeroMode, lambda: Lambda, domain: Interval, options: FamilyOptions) -> Result<Self> {
        let seed_mode = seed_mode.normalized();
        let i0_mode = options.i0_mode.unwrap_or_else(|| I0Mode::preferred_for(&seed_mode));
        if i0_mode == I0Mode::ClosedForm && I0Mode::preferred_for(&seed_mode) != I0Mode::ClosedForm {
            return Err(Error::Unsupported(format!(
                "no closed-form I0 for the {:?} zero mode",
                seed_mode.kind()
            )));
        }
        if seed_mode.kind() == ZeroModeKind::Planck && domain.lo <= 0.0 && !options.allow_negative_x {
            return Err(Error::Argument(format!(
                "the Planck-seed family is evaluated on x > 0 unless negative x is explicitly allowed; got [{}, {}]",
                domain.lo, domain.hi
            )));
        }
        if let (LambdaPolicy::Strict, Lambda::Finite(l)) = (options.policy, lambda) {
            if !(l > 0.0) {
                return Err(Error::LambdaViolation(Box::new(ViolationReport {
                    lambda,
                    reason: ViolationReason::NonPositive,
                    domain,
                    grid_spacing: 0.0,
                    brackets: Vec::new(),
                })));
            }
        }
        let validated = if domain.hi > domain.lo {
            match validate_lambda(&seed_mode, lambda, domain, options.grid_density, i0_mode)? {
                LambdaValidation::Valid(v) => v,
                LambdaValidation::Violated(report) => return Err(Error::LambdaViolation(Box::new(report))),
            }
        } else {
            // A single point: check it directly.
            let shift = match lambda {
                Lambda::Finite(l) => shift_value(&seed_mode, domain.lo, l, i0_mode)?,
                Lambda::Infinity => 1.0,
            };
            if shift == 0.0 {
                return Err(Error::LambdaViolation(Box::new(ViolationReport {
                    lambda,
                    reason: ViolationReason::Singular,
                    domain,
                    grid_spacing: 0.0,
                    brackets: vec![(domain.lo, domain.hi)],
                })));
            }
            ValidatedDomain { interval: domain, boundary_degenerate: lambda == Lambda::Finite(0.0) }
        };
        Ok(DarbouxFamily { seed: seed_mode.action(), seed_mode, lambda, domain: validated, i0_mode })
    }

    pub fn seed(&self) -> &ActionModel {
        &self.seed
    }

    pub fn seed_mode(&self) -> &ZeroMode {
        &self.seed_mode
    }

    pub fn lambda(&self) -> Lambda {
        self.lambda
    }

    pub fn domain(&self) -> &ValidatedDomain {
        &self.domain
    }

    pub fn i0_mode(&self) -> I0Mode {
        self.i0_mode
    }

    fn check(&self, x: f64) -> Result<()> {
        let iv = self.domain.interval;
        if iv.contains(x) {
            Ok(())
        } else {
            Err(Error::OutsideDomain { x, lo: iv.lo, hi: iv.hi })
        }
    }

    fn far(&self, x: f64) -> bool {
        (self.seed_mode.hbar() * x).abs() > EXP_CUTOFF
    }

    pub fn i0(&self, x: f64) -> Result<f64> {
        self.check(x)?;
        i0_integral(&self.seed_mode, x, self.i0_mode)
    }

    fn shift(&self, x: f64, lambda: f64) -> Result<f64> {
        self.check(x)?;
        shift_value(&self.seed_mode, x, lambda, self.i0_mode)
    }

    /// The seed potential `V1 = (hbar/2)^2`.
    pub fn seed_potential(&self, _x: f64) -> f64 {
        self.seed_mode.potential()
    }

    /// `(g, g')` with `g = w_b^2 / (I0 + lambda) = d/dx ln(I0 + lambda)`.
    fn weight(&self, x: f64) -> Result<(f64, f64)> {
        self.check(x)?;
        let Lambda::Finite(lambda) = self.lambda else {
            return Ok((0.0, 0.0));
        };
        let h = self.seed_mode.hbar();
        if !self.far(x) {
            let shift = self.shift(x, lambda)?;
            if shift == 0.0 {
                return Err(Error::Singularity { what: "I0 + lambda", x });
            }
            let w = self.seed_mode.value(x);
            let dw = self.seed_mode.derivative(x);
            // The unit vacuum mode squares to exactly e^{hx}.
            let w2 = if self.seed_mode.kind() == ZeroModeKind::Vacuum { (h * x).exp() } else { w * w };
            let g = w2 / shift;
            return Ok((g, 2.0 * w * dw / shift - g * g));
        }
        // Asymptotic branches once exponentials leave the f64 range.
        match (self.seed_mode.kind(), x > 0.0) {
            (ZeroModeKind::Vacuum, true) | (ZeroModeKind::Planck, true) => Ok((h, 0.0)),
            (ZeroModeKind::Planck, false) => Ok((-h, 0.0)),
            (ZeroModeKind::Vacuum, false) => {
                let k = h * lambda - 1.0;
                if k == 0.0 {
                    return Ok((h, 0.0));
                }
                let e = (h * x).exp();
                let g = h * e / (k + e);
                Ok((g, h * g - g * g))
            }
            _ => Err(Error::Overflow { what: "quadrature I0 beyond |hbar x| = 700", u: h * x }),
        }
    }

    /// `ln |I0 + lambda|` for finite lambda.
    fn ln_abs_shift(&self, x: f64) -> Result<f64> {
        let Lambda::Finite(lambda) = self.lambda else {
            return Err(Error::Argument("ln(I0 + lambda) is undefined for lambda = inf".into()));
        };
        let h = self.seed_mode.hbar();
        if !self.far(x) {
            let shift = self.shift(x, lambda)?;
            if shift == 0.0 {
                return Err(Error::Singularity { what: "I0 + lambda", x });
            }
            return Ok(shift.abs().ln());
        }
        match (self.seed_mode.kind(), x > 0.0) {
            (ZeroModeKind::Vacuum, true) => Ok(h * x - h.ln()),
            (ZeroModeKind::Vacuum, false) => {
                let k = h * lambda - 1.0;
                Ok(if k == 0.0 { h * x - h.ln() } else { k.abs().ln() - h.ln() })
            }
            (ZeroModeKind::Planck, _) => Ok(h * x.abs() - (4.0 * h).ln()),
            _ => Err(Error::Overflow { what: "quadrature I0 beyond |hbar x| = 700", u: h * x }),
        }
    }

    /// `v(x) = (I0(x) + lambda) / w_b(x)^2`; `+inf` when `lambda = inf`.
    pub fn v(&self, x: f64) -> Result<f64> {
        self.check(x)?;
        let w = self.seed_mode.value(x);
        if w == 0.0 {
            return Err(Error::Node { x });
        }
        match self.lambda {
            Lambda::Infinity => Ok(f64::INFINITY),
            Lambda::Finite(l) => {
                let shift = self.shift(x, l)?;
                if shift == 0.0 {
                    return Err(Error::Singularity { what: "I0 + lambda", x });
                }
                Ok(shift / (w * w))
            }
        }
    }

    /// `v'(x)` by the quotient rule: `1 - 2 (I0 + lambda) w' / w^3`.
    pub fn v_derivative(&self, x: f64) -> Result<f64> {
        let v = self.v(x)?;
        if v.is_infinite() {
            return Ok(f64::NAN);
        }
        let w = self.seed_mode.value(x);
        let dw = self.seed_mode.derivative(x);
        Ok(1.0 - 2.0 * v * dw / w)
    }

    /// `V1g = V1 - 2 d^2/dx^2 ln(I0 + lambda)`.
    pub fn transformed_potential(&self, x: f64) -> Result<f64> {
        let (_, dg) = self.weight(x)?;
        Ok(self.seed_potential(x) - 2.0 * dg)
    }

    /// `w_b(x) / (I0(x) + lambda)`. For `lambda = inf` this returns `w_b(x)`,
    /// the limit of `lambda * w_b(x; lambda)`.
    pub fn transformed_zero_mode(&self, x: f64) -> Result<f64> {
        self.check(x)?;
        let w = self.seed_mode.value(x);
        match self.lambda {
            Lambda::Infinity => Ok(w),
            Lambda::Finite(l) => {
                let shift = self.shift(x, l)?;
                if shift == 0.0 {
                    return Err(Error::Singularity { what: "I0 + lambda", x });
                }
                Ok(w / shift)
            }
        }
    }
}

impl Action for DarbouxFamily {
    fn hbar(&self) -> f64 {
        self.seed_mode.hbar()
    }

    fn value(&self, x: f64) -> Result<f64> {
        self.check(x)?;
        if self.lambda.is_infinite() {
            return self.seed.value(x);
        }
        let fp = self.seed.value(x)?;
        let (g, _) = self.weight(x)?;
        Ok(fp - g)
    }

    fn derivative(&self, x: f64) -> Result<f64> {
        self.check(x)?;
        let dfp = self.seed.derivative(x)?;
        let (_, dg) = self.weight(x)?;
        Ok(dfp - dg)
    }

    fn ln_abs_zero_mode(&self, x: f64) -> Result<f64> {
        self.check(x)?;
        let lw = self.seed_mode.ln_abs(x)?;
        match self.lambda {
            Lambda::Infinity => Ok(lw),
            Lambda::Finite(_) => Ok(lw - self.ln_abs_shift(x)?),
        }
    }

    fn entropy_offset(&self) -> Result<f64> {
        let h = self.seed_mode.hbar();
        match (self.lambda, self.seed_mode.kind()) {
            (Lambda::Infinity, _) => self.seed.entropy_offset(),
            // x f_g - ln|w_b / (I0 + lambda)| -> -ln hbar and -ln(2 hbar).
            (Lambda::Finite(_), ZeroModeKind::Vacuum) => Ok(-h.ln()),
            (Lambda::Finite(_), ZeroModeKind::Planck) => Ok(-(2.0 * h).ln()),
            _ => crate::thermo::probe_entropy_offset(self),
        }
    }
}

/// `f'(x) + f(x)^2 - V1(x)`.
pub fn bosonic_residual<A, V>(f: &A, x: f64, v1: V) -> Result<f64>
where
    A: Action + ?Sized,
    V: Fn(f64) -> f64,
{
    let value = f.value(x)?;
    Ok(f.derivative(x)? + value * value - v1(x))
}

/// `-f'(x) + f(x)^2 - V2(x)`.
pub fn fermionic_residual<A, V>(f: &A, x: f64, v2: V) -> Result<f64>
where
    A: Action + ?Sized,
    V: Fn(f64) -> f64,
{
    let value = f.value(x)?;
    Ok(-f.derivative(x)? + value * value - v2(x))
}

/// `f'(x) + hbar f(x) + f(x)^2`.
pub fn bernoulli_residual<A: Action + ?Sized>(f: &A, x: f64, hbar: f64) -> Result<f64> {
    let value = f.value(x)?;
    Ok(f.derivative(x)? + hbar * value + value * value)
}

/// The supersymmetric partner `V2 = -f_p' + f_p^2`.
pub fn fermionic_partner<A: Action + ?Sized>(seed: &A, x: f64) -> Result<f64> {
    let value = seed.value(x)?;
    Ok(-seed.derivative(x)? + value * value)
}

pub fn v_function(family: &DarbouxFamily, x: f64) -> Result<f64> {
    family.v(x)
}

pub fn darboux_action(family: &DarbouxFamily, x: f64) -> Result<f64> {
    family.value(x)
}

pub fn transformed_potential(family: &DarbouxFamily, x: f64) -> Result<f64> {
    family.transformed_potential(x)
}

pub fn transformed_zero_mode(family: &DarbouxFamily, x: f64) -> Result<f64> {
    family.transformed_zero_mode(x)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ResidualKind {
    Bosonic,
    Fermionic,
    Bernoulli,
}

/// Sup-norm of a pointwise residual over a grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RiccatiResidualReport {
    pub kind: ResidualKind,
    pub grid: Vec<f64>,
    pub residuals: Vec<f64>,
    pub max_abs_residual: f64,
    pub argmax_x: f64,
}

impl RiccatiResidualReport {
    pub fn evaluate<F>(kind: ResidualKind, grid: &[f64], residual: F) -> Result<Self>
    where
        F: Fn(f64) -> Result<f64>,
    {
        if grid.is_empty() {
            return Err(Error::Argument("residual grid is empty".into()));
        }
        let residuals = grid.iter().map(|&x| residual(x)).collect::<Result<Vec<_>>>()?;
        let (argmax, max) = residuals
            .iter()
            .enumerate()
            .fold((0, 0.0f64), |(bi, bv), (i, r)| if r.abs() > bv { (i, r.abs()) } else { (bi, bv) });
        Ok(RiccatiResidualReport {
            kind,
            grid: grid.to_vec(),
            residuals,
            max_abs_residual: max,
            argmax_x: grid[argmax],
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceRow {
    pub lambda: Lambda,
    /// `sup_grid |f_g(x; lambda) - f_p(x)|`.
    pub sup_deviation: f64,
    /// Ratio to the previous row's deviation.
    pub ratio: Option<f64>,
}

/// How fast `f_g(.; lambda)` approaches the seed along a `lambda` sequence.
pub fn lambda_convergence_report(
    seed_mode: &ZeroMode,
    lambdas: &[Lambda],
    grid: &[f64],
    options: FamilyOptions,
) -> Result<Vec<ConvergenceRow>> {
    crate::numerics::check_grid(grid)?;
    let domain = Interval::new(grid[0], grid[grid.len() - 1])?;
    let seed = seed_mode.action();
    let mut rows: Vec<ConvergenceRow> = Vec::with_capacity(lambdas.len());
    for &lambda in lambdas {
        let family = DarbouxFamily::new(*seed_mode, lambda, domain, options)?;
        let mut sup = 0.0f64;
        for &x in grid {
            sup = sup.max((family.value(x)? - seed.value(x)?).abs());
        }
        let ratio = rows.last().map(|prev| sup / prev.sup_deviation);
        rows.push(ConvergenceRow { lambda, sup_deviation: sup, ratio });
    }
    Ok(rows)
}
