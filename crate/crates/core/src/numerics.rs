//! Numerical kernels shared by every other module: adaptive Gauss-Kronrod
//! quadrature, central differences, a stable `1/(e^u - 1)` kernel, sign-change
//! scanning and grid builders.
//!
//! Everything here is a pure function of its inputs.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};

/// Absolute tolerance used for the I0 integrals when no other is requested.
pub const DEFAULT_QUAD_TOL: f64 = 1e-10;

/// Beyond this value of `|hbar * x|` exponentials are handled through their
/// logarithms or asymptotic branches.
pub const EXP_CUTOFF: f64 = 700.0;

const MAX_PANELS: usize = 4096;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureResult {
    pub value: f64,
    pub error_bound: f64,
    pub evaluations: usize,
}

// 15-point Kronrod abscissae on [-1, 1] (non-negative half) with the
// embedded 7-point Gauss rule living on the odd indices.
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

#[derive(Debug, Clone, Copy)]
struct Panel {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Panel {}

impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Panel {
    // Max-heap on the error; ties broken by position so the refinement order
    // never depends on heap internals.
    fn cmp(&self, other: &Self) -> Ordering {
        self.error
            .total_cmp(&other.error)
            .then_with(|| other.a.total_cmp(&self.a))
    }
}

fn kronrod15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> Result<Panel> {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let sample = |x: f64| -> Result<f64> {
        let y = f(x);
        if y.is_finite() {
            Ok(y)
        } else {
            Err(Error::Domain { what: "integrand", x })
        }
    };

    let fc = sample(center)?;
    let mut kronrod = WGK[7] * fc;
    let mut gauss = WG[3] * fc;
    for (j, (&node, &wk)) in XGK.iter().zip(WGK.iter()).take(7).enumerate() {
        let dx = half * node;
        let pair = sample(center - dx)? + sample(center + dx)?;
        kronrod += wk * pair;
        if j % 2 == 1 {
            gauss += WG[j / 2] * pair;
        }
    }
    Ok(Panel {
        a,
        b,
        value: kronrod * half,
        error: ((kronrod - gauss) * half).abs(),
    })
}

/// Globally adaptive G7/K15 quadrature of `f` over `[a, b]`.
///
/// The panel with the largest error estimate is bisected until the summed
/// estimate drops below `tol` (or reaches the round-off floor). A reversed
/// interval returns the negated integral.
pub fn integrate_adaptive<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    b: f64,
    tol: f64,
) -> Result<QuadratureResult> {
    if !(tol > 0.0) || !tol.is_finite() {
        return Err(Error::Argument(format!("tolerance must be positive, got {tol}")));
    }
    if !a.is_finite() || !b.is_finite() {
        return Err(Error::Argument(format!("bounds must be finite, got [{a}, {b}]")));
    }
    if a == b {
        return Ok(QuadratureResult { value: 0.0, error_bound: 0.0, evaluations: 1 });
    }
    if a > b {
        let r = integrate_adaptive(f, b, a, tol)?;
        return Ok(QuadratureResult { value: -r.value, ..r });
    }

    let mut heap = BinaryHeap::new();
    let first = kronrod15(&f, a, b)?;
    let mut evaluations = 15;
    let mut total_value = first.value;
    let mut total_error = first.error;
    heap.push(first);

    while total_error > tol && heap.len() < MAX_PANELS {
        if total_error <= 64.0 * f64::EPSILON * total_value.abs() {
            break;
        }
        let worst = heap.pop().expect("heap is never empty");
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a || mid >= worst.b {
            // Interval can no longer be split in floating point.
            heap.push(worst);
            break;
        }
        let left = kronrod15(&f, worst.a, mid)?;
        let right = kronrod15(&f, mid, worst.b)?;
        evaluations += 30;
        total_value += left.value + right.value - worst.value;
        total_error += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
    }

    // Re-sum in interval order so the result is independent of the running
    // update history.
    let mut panels = heap.into_vec();
    panels.sort_by(|p, q| p.a.total_cmp(&q.a));
    let value = panels.iter().map(|p| p.value).sum();
    let error_bound = panels.iter().map(|p| p.error).sum();
    Ok(QuadratureResult { value, error_bound, evaluations })
}

/// Step size balancing truncation against round-off for central differences.
pub fn default_step(x: f64) -> f64 {
    f64::EPSILON.cbrt() * x.abs().max(1.0)
}

/// `(f(x + h) - f(x - h)) / 2h`.
pub fn derivative_central<F: Fn(f64) -> f64>(f: F, x: f64, h: f64) -> Result<f64> {
    if !(h > 0.0) || !h.is_finite() {
        return Err(Error::Argument(format!("step must be positive, got {h}")));
    }
    let fp = f(x + h);
    if !fp.is_finite() {
        return Err(Error::Domain { what: "function", x: x + h });
    }
    let fm = f(x - h);
    if !fm.is_finite() {
        return Err(Error::Domain { what: "function", x: x - h });
    }
    Ok((fp - fm) / (2.0 * h))
}

/// Second central difference `(f(x + h) - 2 f(x) + f(x - h)) / h^2`.
pub fn second_derivative_central<F: Fn(f64) -> f64>(f: F, x: f64, h: f64) -> Result<f64> {
    if !(h > 0.0) || !h.is_finite() {
        return Err(Error::Argument(format!("step must be positive, got {h}")));
    }
    let mut samples = [0.0; 3];
    for (s, xi) in samples.iter_mut().zip([x - h, x, x + h]) {
        *s = f(xi);
        if !s.is_finite() {
            return Err(Error::Domain { what: "function", x: xi });
        }
    }
    Ok((samples[2] - 2.0 * samples[1] + samples[0]) / (h * h))
}

/// `1 / (e^u - 1)` through `expm1`, so small `|u|` keeps full precision.
///
/// Returns 0 once `e^u` overflows; fails at `u = 0` and when `|u|` is so small
/// that the reciprocal is not representable.
pub fn stable_expm1_ratio(u: f64) -> Result<f64> {
    if u.is_nan() {
        return Err(Error::Domain { what: "expm1 ratio argument", x: u });
    }
    if u == 0.0 {
        return Err(Error::Singularity { what: "1/(e^u - 1)", x: 0.0 });
    }
    let r = u.exp_m1().recip();
    if r.is_finite() {
        Ok(r)
    } else {
        Err(Error::Overflow { what: "1/(e^u - 1)", u })
    }
}

/// Adjacent grid pairs on which `f` changes sign or touches zero.
pub fn scan_sign_change<F: Fn(f64) -> f64>(f: F, grid: &[f64]) -> Result<Vec<(f64, f64)>> {
    check_grid(grid)?;
    let mut prev_x = grid[0];
    let mut prev = f(prev_x);
    if !prev.is_finite() {
        return Err(Error::Domain { what: "scanned function", x: prev_x });
    }
    let mut brackets = Vec::new();
    for &x in &grid[1..] {
        let y = f(x);
        if !y.is_finite() {
            return Err(Error::Domain { what: "scanned function", x });
        }
        if prev == 0.0 || y == 0.0 || prev.signum() != y.signum() {
            brackets.push((prev_x, x));
        }
        prev_x = x;
        prev = y;
    }
    Ok(brackets)
}

/// Fails unless the grid has at least two finite, strictly increasing points.
pub fn check_grid(grid: &[f64]) -> Result<()> {
    if grid.len() < 2 {
        return Err(Error::Argument(format!("grid needs at least 2 points, got {}", grid.len())));
    }
    if grid.iter().any(|x| !x.is_finite()) {
        return Err(Error::Argument("grid contains a non-finite point".into()));
    }
    if grid.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::Argument("grid must be strictly increasing".into()));
    }
    Ok(())
}

/// `count` evenly spaced points from `start` to `stop` inclusive.
pub fn linspace(start: f64, stop: f64, count: usize) -> Vec<f64> {
    match count {
        0 => Vec::new(),
        1 => vec![start],
        _ => {
            let step = (stop - start) / (count - 1) as f64;
            (0..count)
                .map(|i| if i == count - 1 { stop } else { start + step * i as f64 })
                .collect()
        }
    }
}

/// `count` logarithmically spaced points from `start` to `stop` (both > 0).
pub fn logspace(start: f64, stop: f64, count: usize) -> Vec<f64> {
    let (ls, le) = (start.ln(), stop.ln());
    linspace(ls, le, count)
        .into_iter()
        .enumerate()
        .map(|(i, l)| match i {
            0 => start,
            _ if i == count - 1 => stop,
            _ => l.exp(),
        })
        .collect()
}
