//! Globally adaptive 7-point Gauss / 15-point Kronrod quadrature.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_728_8,
];
const WG: [f64; 4] = [0.129_484_966_168_869_7, 0.279_705_391_489_276_7, 0.381_830_050_505_118_9, 0.417_959_183_673_469_4];

/// Result of an adaptive integration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Integral {
    pub value: f64,
    /// Estimated absolute error.
    pub error: f64,
    pub evaluations: usize,
}

#[derive(Debug, Clone, Copy)]
struct Panel {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
    depth: u32,
    /// The error estimate is at the rounding floor; bisection cannot help.
    converged: bool,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn gk15<F: Fn(f64) -> f64 + ?Sized>(f: &F, a: f64, b: f64, depth: u32) -> Result<Panel> {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let eval = |x: f64| -> Result<f64> {
        let v = f(x);
        if v.is_finite() {
            Ok(v)
        } else {
            Err(Error::NonFinite { x, value: v })
        }
    };
    let fc = eval(c)?;
    let mut kron = WGK[7] * fc;
    let mut gauss = WG[3] * fc;
    let mut abs = kron.abs();
    let mut vals = [0.0; 14];
    for j in 0..7 {
        let dx = h * XGK[j];
        let (f1, f2) = (eval(c - dx)?, eval(c + dx)?);
        vals[2 * j] = f1;
        vals[2 * j + 1] = f2;
        kron += WGK[j] * (f1 + f2);
        abs += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            gauss += WG[j / 2] * (f1 + f2);
        }
    }
    let mean = 0.5 * kron;
    let mut asc = WGK[7] * (fc - mean).abs();
    for j in 0..7 {
        asc += WGK[j] * ((vals[2 * j] - mean).abs() + (vals[2 * j + 1] - mean).abs());
    }
    let (kron, abs, asc) = (kron * h, abs * h.abs(), asc * h.abs());
    let mut err = (kron - gauss * h).abs();
    if asc != 0.0 && err != 0.0 {
        err = asc * (200.0 * err / asc).powf(1.5).min(1.0);
    }
    // Rounding floor of a 15-point sum.
    let floor = 2.0 * f64::EPSILON * abs;
    let converged = err <= floor || (b - a) <= 8.0 * f64::EPSILON * a.abs().max(b.abs());
    Ok(Panel { a, b, value: kron, error: err.max(floor), depth, converged })
}

/// Upper bound on integrand evaluations per call.
pub const MAX_EVALUATIONS: usize = 2_000_000;

/// Integrates `f` over the panels delimited by `points` (sorted, at least
/// two) until the summed error estimate is below `abs_tol`. A panel at
/// `max_depth` bisections, or whose error is already at the rounding floor,
/// is not split further.
pub fn integrate<F: Fn(f64) -> f64 + ?Sized>(f: &F, points: &[f64], abs_tol: f64, max_depth: u32) -> Result<Integral> {
    if points.len() < 2 || points.windows(2).any(|w| !(w[0] < w[1])) {
        return Err(Error::Invalid("integration breakpoints must be strictly increasing".into()));
    }
    let mut heap = BinaryHeap::new();
    let mut frozen_value = 0.0;
    let mut frozen_error = 0.0;
    let mut evaluations = 0;
    for w in points.windows(2) {
        heap.push(gk15(f, w[0], w[1], 0)?);
        evaluations += 15;
    }
    loop {
        let (value, error) = heap.iter().fold((frozen_value, frozen_error), |(v, e), p| (v + p.value, e + p.error));
        if error <= abs_tol {
            return Ok(Integral { value, error, evaluations });
        }
        let Some(worst) = heap.pop() else {
            return Err(Error::ToleranceNotReached { estimate: value, error, tol: abs_tol });
        };
        if evaluations >= MAX_EVALUATIONS {
            return Err(Error::ToleranceNotReached { estimate: value, error, tol: abs_tol });
        }
        if worst.depth >= max_depth || worst.converged {
            frozen_value += worst.value;
            frozen_error += worst.error;
            continue;
        }
        let mid = 0.5 * (worst.a + worst.b);
        heap.push(gk15(f, worst.a, mid, worst.depth + 1)?);
        heap.push(gk15(f, mid, worst.b, worst.depth + 1)?);
        evaluations += 30;
    }
}
