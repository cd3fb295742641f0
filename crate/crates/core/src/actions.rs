//! Closed-form oscillator actions `f(x) = U / omega` and the zero modes they are
//! log-derivatives of.
//!
//! With `x = beta * omega` the Planck action `(hbar/2) coth(hbar x / 2)` and the
//! vacuum constant `hbar/2` both solve `f' + f^2 = (hbar/2)^2`. Writing
//! `f = w'/w` turns that equation into `w'' = (hbar/2)^2 w`, whose solutions are
//! the zero modes `w = A e^{hbar x/2} + B e^{-hbar x/2}`:
//!
//! | mode        | A     | B      | action                     |
//! |-------------|-------|--------|----------------------------|
//! | vacuum      | 1     | 0      | `hbar/2`                   |
//! | planck      | 1/2   | -1/2   | `(hbar/2) coth(hbar x/2)`  |
//! | symmetric   | 1/2   | 1/2    | `(hbar/2) tanh(hbar x/2)`  |
//!
//! The symmetric mode gives the Fermi-Dirac action `-hbar/2 + hbar/(e^{-hbar x} + 1)`.
//! Negative `x` is admitted everywhere and read as a negative temperature.

use std::cell::RefCell;

use serde::{Deserialize, Serialize};

use crate::error::{check_hbar, Error, Result};
use crate::numerics::{default_step, derivative_central, stable_expm1_ratio, EXP_CUTOFF};

/// Anything that can be evaluated as an action `f(x)`.
///
/// Implementors with an associated zero mode `w` (so that `f = w'/w`) also
/// provide `ln |w|` and the third-law constant used by the entropy.
pub trait Action {
    fn hbar(&self) -> f64;

    fn value(&self, x: f64) -> Result<f64>;

    /// `df/dx`. The default is a central difference of [`Action::value`].
    fn derivative(&self, x: f64) -> Result<f64> {
        let failure = RefCell::new(None);
        let d = derivative_central(
            |y| match self.value(y) {
                Ok(v) => v,
                Err(e) => {
                    failure.borrow_mut().get_or_insert(e);
                    f64::NAN
                }
            },
            x,
            default_step(x),
        );
        match failure.into_inner() {
            Some(e) => Err(e),
            None => d,
        }
    }

    /// `ln |w(x)|` of the zero mode behind this action.
    fn ln_abs_zero_mode(&self, _x: f64) -> Result<f64> {
        Err(Error::Unsupported("this action has no associated zero mode".into()))
    }

    /// `lim_{x -> +inf} [x f(x) - ln |w(x)|]`.
    fn entropy_offset(&self) -> Result<f64> {
        crate::thermo::probe_entropy_offset(self)
    }
}

/// `(hbar/2) coth(hbar x / 2)`, evaluated as `hbar/2 + hbar / (e^{hbar x} - 1)`.
pub fn planck_action(x: f64, hbar: f64) -> Result<f64> {
    Ok(0.5 * hbar + thermal_action(x, hbar)?)
}

/// `hbar / (e^{hbar x} - 1)`.
pub fn thermal_action(x: f64, hbar: f64) -> Result<f64> {
    check_hbar(hbar)?;
    if x == 0.0 {
        return Err(Error::Singularity { what: "oscillator action", x });
    }
    Ok(hbar * stable_expm1_ratio(hbar * x)?)
}

pub fn vacuum_action(hbar: f64) -> f64 {
    debug_assert!(hbar > 0.0);
    0.5 * hbar
}

/// `(hbar/2) tanh(hbar x / 2) = -hbar/2 + hbar / (e^{-hbar x} + 1)`.
pub fn fermi_action(x: f64, hbar: f64) -> f64 {
    debug_assert!(hbar > 0.0);
    0.5 * hbar * (0.5 * hbar * x).tanh()
}

/// Shared derivative of the Planck and thermal actions, `-(hbar^2/4) csch^2(hbar x/2)`.
fn planck_derivative(x: f64, hbar: f64) -> Result<f64> {
    check_hbar(hbar)?;
    if x == 0.0 {
        return Err(Error::Singularity { what: "oscillator action", x });
    }
    let s = (0.5 * hbar * x).sinh();
    Ok(-0.25 * hbar * hbar / (s * s))
}

fn fermi_derivative(x: f64, hbar: f64) -> f64 {
    let c = (0.5 * hbar * x).cosh();
    0.25 * hbar * hbar / (c * c)
}

/// `(w, w')` for `w = A e^{hbar x/2} + B e^{-hbar x/2}`.
pub fn general_zero_mode(x: f64, a: f64, b: f64, hbar: f64) -> Result<(f64, f64)> {
    let mode = ZeroMode::general(a, b, hbar)?;
    Ok((mode.value(x), mode.derivative(x)))
}

/// `w'(x) / w(x)`. The normalization scale of the mode drops out.
pub fn log_derivative_action(mode: &ZeroMode, x: f64) -> Result<f64> {
    mode.log_derivative(x)
}

/// The fermionic partner zero mode `w_f = 1 / w_b`.
pub fn fermionic_zero_mode(seed_mode: &ZeroMode, x: f64) -> Result<f64> {
    let w = seed_mode.value(x);
    if w == 0.0 {
        return Err(Error::Node { x });
    }
    Ok(w.recip())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ZeroModeKind {
    Vacuum,
    /// Antisymmetric mode `sinh(hbar x/2)`.
    Planck,
    /// Symmetric mode `cosh(hbar x/2)`.
    Symmetric,
    General,
}

/// A zero-energy solution `w = W (A e^{hbar x/2} + B e^{-hbar x/2})` of
/// `w'' = (hbar/2)^2 w`, with `W` the normalization scale.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ZeroMode {
    kind: ZeroModeKind,
    hbar: f64,
    scale: f64,
    a: f64,
    b: f64,
}

impl ZeroMode {
    fn new(kind: ZeroModeKind, a: f64, b: f64, hbar: f64) -> Result<Self> {
        check_hbar(hbar)?;
        if !a.is_finite() || !b.is_finite() {
            return Err(Error::Argument(format!("zero-mode coefficients must be finite, got A={a}, B={b}")));
        }
        if a == 0.0 && b == 0.0 {
            return Err(Error::Argument("zero-mode coefficients A and B cannot both vanish".into()));
        }
        Ok(ZeroMode { kind, hbar, scale: 1.0, a, b })
    }

    /// `e^{hbar x/2}`.
    pub fn vacuum(hbar: f64) -> Result<Self> {
        Self::new(ZeroModeKind::Vacuum, 1.0, 0.0, hbar)
    }

    /// `sinh(hbar x/2)`.
    pub fn planck(hbar: f64) -> Result<Self> {
        Self::new(ZeroModeKind::Planck, 0.5, -0.5, hbar)
    }

    /// `cosh(hbar x/2)`.
    pub fn symmetric(hbar: f64) -> Result<Self> {
        Self::new(ZeroModeKind::Symmetric, 0.5, 0.5, hbar)
    }

    pub fn general(a: f64, b: f64, hbar: f64) -> Result<Self> {
        Self::new(ZeroModeKind::General, a, b, hbar)
    }

    pub fn with_scale(mut self, scale: f64) -> Result<Self> {
        if scale == 0.0 || !scale.is_finite() {
            return Err(Error::Argument(format!("zero-mode scale must be finite and nonzero, got {scale}")));
        }
        self.scale = scale;
        Ok(self)
    }

    /// The same mode with unit scale.
    pub fn normalized(&self) -> Self {
        ZeroMode { scale: 1.0, ..*self }
    }

    pub fn kind(&self) -> ZeroModeKind {
        self.kind
    }

    pub fn hbar(&self) -> f64 {
        self.hbar
    }

    pub fn scale(&self) -> f64 {
        self.scale
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    /// The constant potential `(hbar/2)^2` every mode of this form sees.
    pub fn potential(&self) -> f64 {
        0.25 * self.hbar * self.hbar
    }

    /// The zero of `w`, if it has one.
    pub fn node(&self) -> Option<f64> {
        let ratio = -self.b / self.a;
        (ratio > 0.0).then(|| ratio.ln() / self.hbar)
    }

    // w = e^{|u|} inner, w' = (hbar/2) e^{|u|} dinner with u = hbar x / 2.
    // Each factor is d + c e^{-2|u|} (d dominant, c decaying), or the same
    // rewritten as (d + c) + c expm1(-2|u|); whichever rounds less is used.
    fn kernel(&self, x: f64) -> (f64, f64, f64) {
        let u = 0.5 * self.hbar * x;
        let au = u.abs();
        let ex = (-2.0 * au).exp();
        let em = (-2.0 * au).exp_m1();
        let pick = |d: f64, c: f64| {
            let direct = d.abs() + (c * ex).abs();
            let shifted = (d + c).abs() + (c * em).abs();
            if shifted < direct { (d + c) + c * em } else { d + c * ex }
        };
        if u >= 0.0 {
            (au, pick(self.a, self.b), pick(self.a, -self.b))
        } else {
            (au, pick(self.b, self.a), -pick(self.b, -self.a))
        }
    }

    pub fn value(&self, x: f64) -> f64 {
        let (au, inner, _) = self.kernel(x);
        if au <= 0.5 * EXP_CUTOFF {
            self.scale * au.exp() * inner
        } else if inner == 0.0 {
            0.0
        } else {
            inner.signum() * self.scale * (au + inner.abs().ln()).exp()
        }
    }

    pub fn derivative(&self, x: f64) -> f64 {
        let (au, _, dinner) = self.kernel(x);
        let half = 0.5 * self.hbar;
        if au <= 0.5 * EXP_CUTOFF {
            half * self.scale * au.exp() * dinner
        } else if dinner == 0.0 {
            0.0
        } else {
            dinner.signum() * half * self.scale * (au + dinner.abs().ln()).exp()
        }
    }

    fn ln_abs_unscaled(&self, x: f64) -> Result<f64> {
        let (au, inner, _) = self.kernel(x);
        if inner == 0.0 {
            return Err(Error::Node { x });
        }
        Ok(au + inner.abs().ln())
    }

    /// `ln |w(x)|`, stable for any `x`.
    pub fn ln_abs(&self, x: f64) -> Result<f64> {
        Ok(self.ln_abs_unscaled(x)? + self.scale.abs().ln())
    }

    /// `w'/w`. Independent of the scale.
    pub fn log_derivative(&self, x: f64) -> Result<f64> {
        let (_, inner, dinner) = self.kernel(x);
        if inner == 0.0 {
            return Err(Error::Node { x });
        }
        Ok(0.5 * self.hbar * dinner / inner)
    }

    /// `d/dx (w'/w) = hbar^2 A B / w^2` (unit scale).
    pub fn log_derivative_prime(&self, x: f64) -> Result<f64> {
        let ab = self.a * self.b;
        if ab == 0.0 {
            return Ok(0.0);
        }
        let (au, inner, _) = self.kernel(x);
        if inner == 0.0 {
            return Err(Error::Node { x });
        }
        let damp = (-2.0 * au).exp();
        Ok(self.hbar * self.hbar * ab * damp / (inner * inner))
    }

    /// The closed-form action this mode generates.
    pub fn action(&self) -> ActionModel {
        match self.kind {
            ZeroModeKind::Vacuum => ActionModel::Vacuum { hbar: self.hbar },
            ZeroModeKind::Planck => ActionModel::Planck { hbar: self.hbar },
            ZeroModeKind::Symmetric => ActionModel::FermiSymmetric { hbar: self.hbar },
            ZeroModeKind::General => ActionModel::GeneralZeroMode { hbar: self.hbar, a: self.a, b: self.b },
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ActionFamily {
    Planck,
    Vacuum,
    Thermal,
    FermiSymmetric,
    GeneralZeroMode,
    Darboux,
}

/// One of the closed-form actions. The Darboux-transformed actions live in
/// [`crate::darboux::DarbouxFamily`], which implements the same [`Action`] trait.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum ActionModel {
    Planck { hbar: f64 },
    Vacuum { hbar: f64 },
    Thermal { hbar: f64 },
    FermiSymmetric { hbar: f64 },
    GeneralZeroMode { hbar: f64, a: f64, b: f64 },
}

impl ActionModel {
    pub fn planck(hbar: f64) -> Result<Self> {
        check_hbar(hbar)?;
        Ok(ActionModel::Planck { hbar })
    }

    pub fn vacuum(hbar: f64) -> Result<Self> {
        check_hbar(hbar)?;
        Ok(ActionModel::Vacuum { hbar })
    }

    pub fn thermal(hbar: f64) -> Result<Self> {
        check_hbar(hbar)?;
        Ok(ActionModel::Thermal { hbar })
    }

    pub fn fermi(hbar: f64) -> Result<Self> {
        check_hbar(hbar)?;
        Ok(ActionModel::FermiSymmetric { hbar })
    }

    pub fn general(a: f64, b: f64, hbar: f64) -> Result<Self> {
        ZeroMode::general(a, b, hbar).map(|m| m.action())
    }

    pub fn family(&self) -> ActionFamily {
        match self {
            ActionModel::Planck { .. } => ActionFamily::Planck,
            ActionModel::Vacuum { .. } => ActionFamily::Vacuum,
            ActionModel::Thermal { .. } => ActionFamily::Thermal,
            ActionModel::FermiSymmetric { .. } => ActionFamily::FermiSymmetric,
            ActionModel::GeneralZeroMode { .. } => ActionFamily::GeneralZeroMode,
        }
    }

    /// Unit-scale zero mode with `f = w'/w`. The thermal action has none of
    /// the `A e^{hbar x/2} + B e^{-hbar x/2}` form.
    pub fn zero_mode(&self) -> Option<ZeroMode> {
        match *self {
            ActionModel::Planck { hbar } => ZeroMode::planck(hbar).ok(),
            ActionModel::Vacuum { hbar } => ZeroMode::vacuum(hbar).ok(),
            ActionModel::FermiSymmetric { hbar } => ZeroMode::symmetric(hbar).ok(),
            ActionModel::GeneralZeroMode { hbar, a, b } => ZeroMode::general(a, b, hbar).ok(),
            ActionModel::Thermal { .. } => None,
        }
    }
}

impl Action for ActionModel {
    fn hbar(&self) -> f64 {
        match *self {
            ActionModel::Planck { hbar }
            | ActionModel::Vacuum { hbar }
            | ActionModel::Thermal { hbar }
            | ActionModel::FermiSymmetric { hbar }
            | ActionModel::GeneralZeroMode { hbar, .. } => hbar,
        }
    }

    fn value(&self, x: f64) -> Result<f64> {
        match *self {
            ActionModel::Planck { hbar } => planck_action(x, hbar),
            ActionModel::Vacuum { hbar } => Ok(vacuum_action(hbar)),
            ActionModel::Thermal { hbar } => thermal_action(x, hbar),
            ActionModel::FermiSymmetric { hbar } => Ok(fermi_action(x, hbar)),
            ActionModel::GeneralZeroMode { hbar, a, b } => ZeroMode::general(a, b, hbar)?.log_derivative(x),
        }
    }

    fn derivative(&self, x: f64) -> Result<f64> {
        match *self {
            ActionModel::Planck { hbar } | ActionModel::Thermal { hbar } => planck_derivative(x, hbar),
            ActionModel::Vacuum { .. } => Ok(0.0),
            ActionModel::FermiSymmetric { hbar } => Ok(fermi_derivative(x, hbar)),
            ActionModel::GeneralZeroMode { hbar, a, b } => {
                ZeroMode::general(a, b, hbar)?.log_derivative_prime(x)
            }
        }
    }

    fn ln_abs_zero_mode(&self, x: f64) -> Result<f64> {
        match self.zero_mode() {
            Some(mode) => mode.ln_abs(x),
            None => Err(Error::Unsupported("the thermal action has no oscillator zero mode".into())),
        }
    }

    fn entropy_offset(&self) -> Result<f64> {
        // x f - ln|w| -> -ln|A| in the right tail (-ln|B| when A = 0).
        match self.zero_mode() {
            Some(mode) if mode.a() != 0.0 => Ok(-mode.a().abs().ln()),
            Some(mode) => Ok(-mode.b().abs().ln()),
            None => Err(Error::Unsupported("the thermal action has no oscillator zero mode".into())),
        }
    }
}

/// A point `x = beta * omega` together with the frequency and inverse
/// temperature it came from. `beta < 0` encodes a negative temperature.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScaledPoint {
    pub x: f64,
    pub omega: f64,
    pub beta: f64,
}

impl ScaledPoint {
    pub fn new(omega: f64, beta: f64) -> Result<Self> {
        if !(omega > 0.0) || !omega.is_finite() {
            return Err(Error::Argument(format!("omega must be positive, got {omega}")));
        }
        if !beta.is_finite() {
            return Err(Error::Argument(format!("beta must be finite, got {beta}")));
        }
        Ok(ScaledPoint { x: beta * omega, omega, beta })
    }
}
