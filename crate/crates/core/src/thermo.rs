//! Thermodynamic observables built on an action (with `k_B = 1`).
//!
//! The entropy of an action `f = w'/w` is taken as
//! `S(x) = x f(x) - ln|w(x)| - C`, with `C` fixed so that `S -> 0` as
//! `x -> +inf`. For the Planck seed this is the textbook oscillator entropy
//! `x f_P - ln(2 sinh(hbar x / 2))`; for the vacuum seed it vanishes
//! identically. Because `f = (ln|w|)'`, `dS/dx = x f'(x)`.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::actions::{Action, ZeroModeKind};
use crate::darboux::{DarbouxFamily, Lambda};
use crate::error::{Error, Result};

/// `U = omega f(x)`.
pub fn internal_energy<A: Action + ?Sized>(f: &A, x: f64, omega: f64) -> Result<f64> {
    if !(omega > 0.0) {
        return Err(Error::Argument(format!("omega must be positive, got {omega}")));
    }
    Ok(omega * f.value(x)?)
}

fn unnormalized_entropy<A: Action + ?Sized>(f: &A, x: f64) -> Result<f64> {
    Ok(x * f.value(x)? - f.ln_abs_zero_mode(x)?)
}

/// `lim_{x -> +inf} [x f - ln|w|]` estimated from two far probes that must agree.
pub fn probe_entropy_offset<A: Action + ?Sized>(f: &A) -> Result<f64> {
    let h = f.hbar();
    let (near, far) = (40.0 / h, 60.0 / h);
    let eval = |x: f64| unnormalized_entropy(f, x).map_err(|e| Error::Normalization(format!("probe at x = {x}: {e}")));
    let (a, b) = (eval(near)?, eval(far)?);
    if !a.is_finite() || !b.is_finite() {
        return Err(Error::Normalization("non-finite entropy in the right tail".into()));
    }
    if (a - b).abs() > 1e-8 * b.abs().max(1.0) {
        return Err(Error::Normalization(format!(
            "right-tail limit did not settle: {a} at x = {near}, {b} at x = {far}"
        )));
    }
    Ok(b)
}

/// `S(x) = x f(x) - ln|w(x)| - C`, zero at `x = +inf`.
pub fn entropy<A: Action + ?Sized>(f: &A, x: f64) -> Result<f64> {
    Ok(unnormalized_entropy(f, x)? - f.entropy_offset()?)
}

/// Central difference of `S` minus `x f'(x)`; vanishes to `O(h^2)`.
pub fn entropy_derivative_check<A: Action + ?Sized>(f: &A, x: f64, h: f64) -> Result<f64> {
    if !(h > 0.0) {
        return Err(Error::Argument(format!("step must be positive, got {h}")));
    }
    // The offset cancels in the difference.
    let ds = (unnormalized_entropy(f, x + h)? - unnormalized_entropy(f, x - h)?) / (2.0 * h);
    Ok(ds - x * f.derivative(x)?)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EntropyProfile {
    pub grid: Vec<f64>,
    pub entropy_values: Vec<f64>,
    pub normalization_constant: f64,
    pub family: String,
}

impl EntropyProfile {
    pub fn evaluate<A: Action + ?Sized>(f: &A, grid: &[f64], family: impl Into<String>) -> Result<Self> {
        let c = f.entropy_offset()?;
        let entropy_values = grid
            .iter()
            .map(|&x| unnormalized_entropy(f, x).map(|s| s - c))
            .collect::<Result<Vec<_>>>()?;
        Ok(EntropyProfile { grid: grid.to_vec(), entropy_values, normalization_constant: c, family: family.into() })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KinkProfile {
    /// Plateau as `x -> -inf`.
    pub left_asymptote: f64,
    /// Plateau as `x -> +inf`.
    pub right_asymptote: f64,
    /// Distance between the crossings of `0.9 * left` and `0.9 * right`.
    pub transition_width: f64,
}

const PLATEAU_SAMPLES: usize = 5;

/// Limit of the sequence `tail` (ordered toward the asymptote).
///
/// The family tails approach their plateaus geometrically, so Aitken's
/// delta-squared on the three outermost samples removes the leading
/// exponential. Falls back to the mean of the samples when the tail is
/// already flat to rounding.
fn plateau(tail: &[f64]) -> f64 {
    let mean = tail.iter().sum::<f64>() / tail.len() as f64;
    let n = tail.len();
    let (s0, s1, s2) = (tail[n - 3], tail[n - 2], tail[n - 1]);
    let (d1, d2) = (s1 - s0, s2 - s1);
    let denom = d2 - d1;
    if denom == 0.0 || d2 == 0.0 || d1 == 0.0 || d2.signum() != d1.signum() || d2.abs() >= d1.abs() {
        return mean;
    }
    let extrapolated = s2 - d2 * d2 / denom;
    if extrapolated.is_finite() { extrapolated } else { mean }
}

fn crossing(grid: &[f64], values: &[f64], level: f64) -> Option<f64> {
    grid.windows(2).zip(values.windows(2)).find_map(|(xs, fs)| {
        let (a, b) = (fs[0] - level, fs[1] - level);
        if a == 0.0 {
            Some(xs[0])
        } else if a.signum() != b.signum() || b == 0.0 {
            Some(xs[0] + (xs[1] - xs[0]) * a / (a - b))
        } else {
            None
        }
    })
}

/// Plateaus and transition width of a vacuum-seed family with finite lambda.
pub fn kink_profile(family: &DarbouxFamily, grid: &[f64]) -> Result<KinkProfile> {
    if family.seed_mode().kind() != ZeroModeKind::Vacuum || family.lambda() == Lambda::Infinity {
        return Err(Error::Unsupported("kink profiles are defined for vacuum-seed families with finite lambda".into()));
    }
    crate::numerics::check_grid(grid)?;
    if grid.len() < 2 * PLATEAU_SAMPLES {
        return Err(Error::InsufficientDomain(format!(
            "need at least {} grid points, got {}",
            2 * PLATEAU_SAMPLES,
            grid.len()
        )));
    }
    let values = grid.iter().map(|&x| family.value(x)).collect::<Result<Vec<_>>>()?;
    let h = family.hbar();
    let n = values.len();

    let left_tail: Vec<f64> = values[..PLATEAU_SAMPLES].iter().rev().copied().collect();
    let right_tail = &values[n - PLATEAU_SAMPLES..];
    for (side, tail) in [("left", &left_tail[..]), ("right", right_tail)] {
        let spread = tail.iter().fold(f64::NEG_INFINITY, |m, &v| m.max(v))
            - tail.iter().fold(f64::INFINITY, |m, &v| m.min(v));
        if spread > 1e-3 * h {
            return Err(Error::InsufficientDomain(format!(
                "{side} plateau not resolved: outermost samples spread by {spread}"
            )));
        }
    }
    let left = plateau(&left_tail);
    let right = plateau(right_tail);

    let transition_width = if (left - right).abs() <= 1e-9 * h {
        0.0
    } else {
        let a = crossing(grid, &values, 0.9 * left);
        let b = crossing(grid, &values, 0.9 * right);
        match (a, b) {
            (Some(a), Some(b)) => (b - a).abs(),
            _ => return Err(Error::InsufficientDomain("transition levels are not crossed on the grid".into())),
        }
    };
    Ok(KinkProfile { left_asymptote: left, right_asymptote: right, transition_width })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TemperatureRegime {
    PositiveTBoson,
    NegativeTFermion,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TemperatureSign {
    pub x: f64,
    pub omega: f64,
    /// `T = omega / x`.
    pub temperature: f64,
    pub regime: TemperatureRegime,
}

impl TemperatureSign {
    /// `1/T`; hotter states have smaller values, negative temperatures included.
    pub fn coldness(&self) -> f64 {
        self.x / self.omega
    }

    /// Orders states from cold to hot: positive temperatures by `T`, then every
    /// negative temperature above all of them.
    pub fn hotness_cmp(&self, other: &Self) -> Ordering {
        other.coldness().total_cmp(&self.coldness())
    }
}

/// Reads `x = omega / T` with the sign carried by the temperature.
pub fn temperature_sign_map(x: f64, omega: f64) -> Result<TemperatureSign> {
    if !(omega > 0.0) || !omega.is_finite() {
        return Err(Error::Argument(format!("omega must be positive, got {omega}")));
    }
    if x == 0.0 {
        return Err(Error::InfiniteTemperature);
    }
    if !x.is_finite() {
        return Err(Error::Argument(format!("x must be finite, got {x}")));
    }
    let regime = if x > 0.0 { TemperatureRegime::PositiveTBoson } else { TemperatureRegime::NegativeTFermion };
    Ok(TemperatureSign { x, omega, temperature: omega / x, regime })
}

/// `(hot, cold)` for a Carnot cycle between two baths.
pub fn carnot_baths(a: TemperatureSign, b: TemperatureSign) -> (TemperatureSign, TemperatureSign) {
    if a.hotness_cmp(&b) == Ordering::Less {
        (b, a)
    } else {
        (a, b)
    }
}
