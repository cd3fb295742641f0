//! Thermodynamic oscillator actions, their Riccati structure and one-parameter
//! Darboux deformations.
//!
//! * [`actions`]: Planck, vacuum, thermal and Fermi-Dirac actions and the zero
//!   modes `w` with `f = w'/w`.
//! * [`darboux`]: the family `f_g(x; lambda)`, its potentials, zero modes and
//!   lambda validation.
//! * [`thermo`]: internal energy, entropy, kink profiles and temperature signs.
//! * [`noise`]: Nyquist-Johnson spectra and their Darboux generalization.
//! * [`cli`]: the command-line front end and the verification suite.

// `!(x > 0.0)` is used on purpose so that NaN fails argument checks.
#![allow(clippy::neg_cmp_op_on_partial_ord)]
// Quadrature nodes and reference values are quoted to more digits than f64 holds.
#![allow(clippy::excessive_precision)]

pub mod actions;
pub mod cli;
pub mod darboux;
pub mod error;
pub mod noise;
pub mod numerics;
pub mod thermo;

pub use actions::{Action, ActionModel, ScaledPoint, ZeroMode, ZeroModeKind};
pub use darboux::{DarbouxFamily, FamilyOptions, I0Mode, Interval, Lambda, LambdaPolicy};
pub use error::{Error, Result};
pub use noise::{Resistance, ResistanceModel, SpectrumTable};
