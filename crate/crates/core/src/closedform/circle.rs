use std::f64::consts::PI;

use crate::elliptic::e_deriv_at_zero;
use crate::error::{Error, Result};

/// Largest derivative order accepted; beyond it the sum overflows f64 for
/// all but γ close to 1.
pub const MAX_CIRCLE_ORDER: u32 = 60;

/// ∂^{order} ε_g / ∂α^{order} on the circle α = sqrt(1-γ²), the common value
/// of both one-sided limits.
///
/// With n = order - 2 and g(α) = (α² + γ² - 1)/γ², Faà di Bruno for the
/// quadratic g collapses to
/// (2/πγ) Σ_{k ≤ n/2} 2^{n-2k} n!/(k!(n-2k)!) γ^{-2(n-k)} α^{n-2k} E^{(n-k+1)}(0),
/// where E^{(j)}(0) is the j-th derivative of E with respect to k² at 0.
pub fn circle_derivative(order: u32, gamma: f64) -> Result<f64> {
    if !(gamma > 0.0 && gamma < 1.0) {
        return Err(Error::Domain { what: "circle_derivative gamma", value: gamma, domain: "(0, 1)" });
    }
    if !(2..=MAX_CIRCLE_ORDER).contains(&order) {
        return Err(Error::Domain { what: "circle_derivative order", value: order as f64, domain: "2..=60" });
    }
    let n = order - 2;
    let alpha = ((1.0 - gamma) * (1.0 + gamma)).sqrt();
    let inv_g2 = 1.0 / (gamma * gamma);
    let n_fact = factorial(n);
    let mut sum = 0.0;
    for k in 0..=n / 2 {
        let j = n - 2 * k;
        let comb = n_fact / (factorial(k) * factorial(j));
        let term = comb * 2f64.powi(j as i32) * inv_g2.powi((n - k) as i32) * alpha.powi(j as i32) * e_deriv_at_zero(n - k + 1);
        sum += term;
    }
    let value = 2.0 / (PI * gamma) * sum;
    if !value.is_finite() {
        return Err(Error::NonFinite { x: gamma, value });
    }
    Ok(value)
}

fn factorial(n: u32) -> f64 {
    (1..=n).fold(1.0, |acc, i| acc * i as f64)
}
