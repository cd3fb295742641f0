//! Nyquist-Johnson noise power `P = (omega/pi) R(omega, beta) f(beta omega)`
//! with `f` either the Planck action or a Darboux-deformed one.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::actions::{planck_action, Action, ZeroMode};
use crate::darboux::{DarbouxFamily, FamilyOptions, Interval, Lambda};
use crate::error::{Error, Result};

/// A frequency- and temperature-dependent resistance. Implement this for
/// models that need `beta`; the built-in ones ignore it.
pub trait Resistance {
    fn resistance(&self, omega: f64, beta: f64) -> Result<f64>;
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ResistanceModel {
    Constant { r: f64 },
    /// Real part of a parallel R, L, C impedance.
    ParallelRlc { r: f64, l: f64, c: f64 },
}

fn positive(name: &str, v: f64) -> Result<f64> {
    if v > 0.0 && v.is_finite() {
        Ok(v)
    } else {
        Err(Error::Argument(format!("{name} must be finite and positive, got {v}")))
    }
}

impl ResistanceModel {
    pub fn constant(r: f64) -> Result<Self> {
        Ok(ResistanceModel::Constant { r: positive("R", r)? })
    }

    pub fn parallel_rlc(r: f64, l: f64, c: f64) -> Result<Self> {
        Ok(ResistanceModel::ParallelRlc { r: positive("R", r)?, l: positive("L", l)?, c: positive("C", c)? })
    }

    /// Parallel RLC with resonance `omega0` and quality factor `q = R sqrt(C/L)`.
    pub fn from_resonance(r: f64, omega0: f64, q: f64) -> Result<Self> {
        let (r, omega0, q) = (positive("R", r)?, positive("omega0", omega0)?, positive("Q", q)?);
        Self::parallel_rlc(r, r / (q * omega0), q / (r * omega0))
    }

    /// `1 / sqrt(L C)`, if this is a resonant model.
    pub fn resonance(&self) -> Option<f64> {
        match *self {
            ResistanceModel::ParallelRlc { l, c, .. } => Some((l * c).sqrt().recip()),
            ResistanceModel::Constant { .. } => None,
        }
    }

    pub fn quality_factor(&self) -> Option<f64> {
        match *self {
            ResistanceModel::ParallelRlc { r, l, c } => Some(r * (c / l).sqrt()),
            ResistanceModel::Constant { .. } => None,
        }
    }
}

impl Resistance for ResistanceModel {
    fn resistance(&self, omega: f64, _beta: f64) -> Result<f64> {
        if !(omega > 0.0) {
            return Err(Error::Argument(format!("omega must be positive, got {omega}")));
        }
        match *self {
            ResistanceModel::Constant { r } => Ok(r),
            ResistanceModel::ParallelRlc { r, l, c } => {
                let omega0 = (l * c).sqrt().recip();
                let q = r * (c / l).sqrt();
                let detune = omega / omega0 - omega0 / omega;
                Ok(r / (1.0 + q * q * detune * detune))
            }
        }
    }
}

pub fn resistance<R: Resistance + ?Sized>(model: &R, omega: f64, beta: f64) -> Result<f64> {
    model.resistance(omega, beta)
}

/// `(omega/pi) R f`; both spectra go through here.
fn spectral_power(omega: f64, r: f64, action: f64) -> f64 {
    omega / PI * r * action
}

fn scaled_x(omega: f64, beta: f64) -> Result<f64> {
    if !(omega > 0.0) {
        return Err(Error::Argument(format!("omega must be positive, got {omega}")));
    }
    Ok(beta * omega)
}

/// `(omega/pi) R(omega, beta) f_P(beta omega)`.
pub fn nyquist_power<R: Resistance + ?Sized>(omega: f64, beta: f64, model: &R, hbar: f64) -> Result<f64> {
    let x = scaled_x(omega, beta)?;
    let f = planck_action(x, hbar)?;
    Ok(spectral_power(omega, model.resistance(omega, beta)?, f))
}

/// `(omega/pi) R(omega, beta) f_g(beta omega; lambda)`.
pub fn darboux_power<R: Resistance + ?Sized>(
    omega: f64,
    beta: f64,
    family: &DarbouxFamily,
    model: &R,
) -> Result<f64> {
    let x = scaled_x(omega, beta)?;
    let f = family.value(x)?;
    Ok(spectral_power(omega, model.resistance(omega, beta)?, f))
}

/// Sign of the action behind a spectrum record.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SpectralRegime {
    Bosonic,
    Fermionic,
}

impl SpectralRegime {
    fn of(power: f64) -> Self {
        if power < 0.0 { SpectralRegime::Fermionic } else { SpectralRegime::Bosonic }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            SpectralRegime::Bosonic => "bosonic",
            SpectralRegime::Fermionic => "fermionic",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpectrumRecord {
    pub omega: f64,
    pub beta: f64,
    pub lambda: Lambda,
    #[serde(rename = "R")]
    pub r: f64,
    #[serde(rename = "P")]
    pub p: f64,
    pub regime: SpectralRegime,
}

/// Records ordered by `(omega, lambda)` with `inf` last.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct SpectrumTable {
    pub records: Vec<SpectrumRecord>,
}

/// Tabulate `P(omega, beta; lambda)` over the cross product of `omegas` and
/// `lambdas`. Every lambda is validated on `[beta min(omega), beta max(omega)]`
/// first; one bad lambda rejects the whole sweep.
pub fn spectrum_sweep<R: Resistance + ?Sized>(
    omegas: &[f64],
    beta: f64,
    lambdas: &[Lambda],
    seed_mode: &ZeroMode,
    model: &R,
    options: FamilyOptions,
) -> Result<SpectrumTable> {
    if omegas.is_empty() || lambdas.is_empty() {
        return Err(Error::Argument("spectrum sweep needs at least one omega and one lambda".into()));
    }
    if let Some(&bad) = omegas.iter().find(|w| !(**w > 0.0) || !w.is_finite()) {
        return Err(Error::Argument(format!("omega must be positive, got {bad}")));
    }
    let xs: Vec<f64> = omegas.iter().map(|w| beta * w).collect();
    let lo = xs.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = xs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let domain = Interval::new(lo, hi)?;

    let mut lambdas = lambdas.to_vec();
    lambdas.sort_by(Lambda::total_cmp);
    lambdas.dedup();
    let families = lambdas
        .iter()
        .map(|&l| DarbouxFamily::new(*seed_mode, l, domain, options))
        .collect::<Result<Vec<_>>>()?;

    let mut order: Vec<usize> = (0..omegas.len()).collect();
    order.sort_by(|&i, &j| omegas[i].total_cmp(&omegas[j]));

    let mut records = Vec::with_capacity(omegas.len() * families.len());
    for i in order {
        let omega = omegas[i];
        let r = model.resistance(omega, beta)?;
        for family in &families {
            let p = darboux_power(omega, beta, family, model)?;
            records.push(SpectrumRecord { omega, beta, lambda: family.lambda(), r, p, regime: SpectralRegime::of(p) });
        }
    }
    Ok(SpectrumTable { records })
}
