//! Finite-difference derivatives with Richardson extrapolation.

use crate::error::{Error, Result};

pub const MAX_ORDER: u32 = 6;

/// Placement of the stencil relative to the evaluation point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Stencil {
    #[default]
    Central,
    /// Nodes at x, x + h, ..., only to the right.
    Forward,
    /// Nodes at x, x - h, ..., only to the left.
    Backward,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DerivativeOptions {
    /// Number of step sizes h0, h0/2, ...; the table has `levels` columns.
    pub levels: usize,
    /// Relative accuracy of the supplied function values, used for the
    /// rounding part of the error bound.
    pub f_rel_accuracy: f64,
}

impl Default for DerivativeOptions {
    fn default() -> Self {
        Self { levels: 4, f_rel_accuracy: 2.0e-15 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DerivativeEstimate {
    pub value: f64,
    /// truncation + rounding
    pub error: f64,
    /// Difference between the two most extrapolated table entries.
    pub truncation: f64,
    /// Function-value error propagated through stencil and extrapolation.
    pub rounding: f64,
}

/// Base step that balances truncation and rounding for a smooth function
/// with unit scale, by derivative order.
pub fn default_step(order: u32) -> f64 {
    match order {
        0..=2 => 0.1,
        3 => 0.2,
        4 => 0.3,
        5 => 0.4,
        _ => 0.5,
    }
}

/// Fornberg's recursion: weights of the `order`-th derivative at `z` for the
/// given nodes.
pub fn fornberg_weights(z: f64, nodes: &[f64], order: usize) -> Vec<f64> {
    let n = nodes.len();
    let mut c = vec![vec![0.0; order + 1]; n];
    c[0][0] = 1.0;
    let mut c1 = 1.0;
    let mut c4 = nodes[0] - z;
    for i in 1..n {
        let mn = i.min(order);
        let mut c2 = 1.0;
        let c5 = c4;
        c4 = nodes[i] - z;
        for j in 0..i {
            let c3 = nodes[i] - nodes[j];
            c2 *= c3;
            if j == i - 1 {
                for k in (1..=mn).rev() {
                    c[i][k] = c1 * (k as f64 * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
                }
                c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
            }
            for k in (1..=mn).rev() {
                c[j][k] = (c4 * c[j][k] - k as f64 * c[j][k - 1]) / c3;
            }
            c[j][0] = c4 * c[j][0] / c3;
        }
        c1 = c2;
    }
    c.into_iter().map(|row| row[order]).collect()
}

/// Integer offsets of the second-order-accurate stencil and the powers of h
/// in its error expansion.
fn layout(order: u32, stencil: Stencil) -> (Vec<f64>, Box<dyn Fn(usize) -> i32>) {
    let d = order as i32;
    match stencil {
        Stencil::Central => {
            let p = (d + 1) / 2;
            ((-p..=p).map(f64::from).collect(), Box::new(|k| 2 * (k as i32 + 1)))
        }
        Stencil::Forward => ((0..=d + 1).map(f64::from).collect(), Box::new(|k| k as i32 + 2)),
        Stencil::Backward => ((-(d + 1)..=0).rev().map(f64::from).collect(), Box::new(|k| k as i32 + 2)),
    }
}

pub fn derivative<F: Fn(f64) -> f64 + ?Sized>(f: &F, x: f64, order: u32, h0: f64, stencil: Stencil) -> Result<DerivativeEstimate> {
    derivative_with(f, x, order, h0, stencil, &DerivativeOptions::default())
}

/// `order`-th derivative of `f` at `x` from stencils with steps h0/2^i,
/// i < levels, combined by Richardson extrapolation.
pub fn derivative_with<F: Fn(f64) -> f64 + ?Sized>(
    f: &F,
    x: f64,
    order: u32,
    h0: f64,
    stencil: Stencil,
    opts: &DerivativeOptions,
) -> Result<DerivativeEstimate> {
    if !(1..=MAX_ORDER).contains(&order) {
        return Err(Error::Domain { what: "derivative order", value: order as f64, domain: "1..=6" });
    }
    if !(h0 > 0.0 && h0.is_finite()) {
        return Err(Error::Domain { what: "derivative step", value: h0, domain: "h0 > 0" });
    }
    let levels = opts.levels;
    if !(2..=10).contains(&levels) {
        return Err(Error::Domain { what: "derivative levels", value: levels as f64, domain: "2..=10" });
    }
    let (offsets, power) = layout(order, stencil);
    let weights = fornberg_weights(0.0, &offsets, order as usize);

    let mut raw = Vec::with_capacity(levels);
    let mut noise = Vec::with_capacity(levels);
    for i in 0..levels {
        let h = h0 / f64::powi(2.0, i as i32);
        let scale = h.powi(order as i32);
        let mut sum = 0.0;
        let mut abs = 0.0;
        for (&o, &w) in offsets.iter().zip(&weights) {
            let xi = x + o * h;
            let v = f(xi);
            if !v.is_finite() {
                return Err(Error::NonFinite { x: xi, value: v });
            }
            sum += w * v;
            abs += (w * v).abs();
        }
        raw.push(sum / scale);
        noise.push((opts.f_rel_accuracy * abs + f64::MIN_POSITIVE) / scale);
    }

    // Each table entry is a linear combination of the raw estimates; carry
    // the coefficients to propagate rounding.
    let mut table: Vec<(f64, Vec<f64>)> = (0..levels)
        .map(|i| {
            let mut c = vec![0.0; levels];
            c[i] = 1.0;
            (raw[i], c)
        })
        .collect();
    let mut prev_best = 0.0;
    for k in 0..levels - 1 {
        let factor = f64::powi(2.0, power(k)) - 1.0;
        prev_best = table[table.len() - 1].0;
        let next: Vec<(f64, Vec<f64>)> = table
            .windows(2)
            .map(|w| {
                let v = w[1].0 + (w[1].0 - w[0].0) / factor;
                let c = w[1].1.iter().zip(&w[0].1).map(|(b, a)| b + (b - a) / factor).collect();
                (v, c)
            })
            .collect();
        table = next;
    }
    let (value, coeffs) = &table[0];
    let rounding: f64 = coeffs.iter().zip(&noise).map(|(c, r)| c.abs() * r).sum();
    let truncation = (value - prev_best).abs();
    Ok(DerivativeEstimate { value: *value, error: truncation + rounding, truncation, rounding })
}
