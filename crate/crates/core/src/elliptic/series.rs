//! Maclaurin data of E as a function of the parameter m = k² at m = 0.
//!
//! E(m) = (π/2) Σ_j [(2j)! / (2^{2j} (j!)²)]² m^j / (1 - 2j), so the j-th
//! coefficient is a rational multiple of π and the j-th derivative is j! times
//! that coefficient.

use std::f64::consts::PI;

use statrs::function::gamma::ln_gamma;

use crate::error::{Error, Result};

/// Largest order handled with exact integer arithmetic.
pub const MAX_EXACT_ORDER: u32 = 20;

/// The exact value `π · num / den`, reduced.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RationalPi {
    pub num: i128,
    pub den: u128,
}

impl RationalPi {
    pub fn to_f64(self) -> f64 {
        PI * (self.num as f64 / self.den as f64)
    }
}

fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn central_binomial(m: u32) -> u128 {
    (0..m as u128).fold(1u128, |acc, i| acc * (m as u128 + 1 + i) / (i + 1))
}

/// Builds π · C(2m,m)² · extra / (2^{4m+1} (2m-1)) with the sign of 1 - 2m,
/// stripping powers of two before multiplying to stay inside u128.
fn exact(order: u32, extra: u128) -> Option<RationalPi> {
    let c = central_binomial(order);
    let mut twos: i64 = -(4 * order as i64 + 1);
    let mut odd_num: u128 = 1;
    for mut f in [c, c, extra] {
        twos += f.trailing_zeros() as i64;
        f >>= f.trailing_zeros();
        odd_num = odd_num.checked_mul(f)?;
    }
    let mut odd_den = (2 * order as u128).abs_diff(1);
    let g = gcd(odd_num, odd_den);
    odd_num /= g;
    odd_den /= g;
    let (num, den) = if twos >= 0 {
        (odd_num.checked_mul(1u128.checked_shl(twos as u32)?)?, odd_den)
    } else {
        (odd_num, odd_den.checked_mul(1u128.checked_shl((-twos) as u32)?)?)
    };
    let num = i128::try_from(num).ok()?;
    Some(RationalPi { num: if order == 0 { num } else { -num }, den })
}

/// Exact Maclaurin coefficient of E(m) at m = 0 as a rational multiple of π.
pub fn e_series_coeff_exact(order: u32) -> Result<RationalPi> {
    if order > MAX_EXACT_ORDER {
        return Err(Error::OrderTooLarge { order, max: MAX_EXACT_ORDER });
    }
    exact(order, 1).ok_or(Error::OrderTooLarge { order, max: MAX_EXACT_ORDER })
}

/// Exact `d^m E / d(k²)^m` at k = 0 as a rational multiple of π.
pub fn e_deriv_at_zero_exact(order: u32) -> Result<RationalPi> {
    if order > MAX_EXACT_ORDER {
        return Err(Error::OrderTooLarge { order, max: MAX_EXACT_ORDER });
    }
    let fact = (1..=order as u128).product::<u128>();
    exact(order, fact).ok_or(Error::OrderTooLarge { order, max: MAX_EXACT_ORDER })
}

fn ln_abs_coeff(order: u32) -> f64 {
    let m = order as f64;
    let ln_ratio = ln_gamma(2.0 * m + 1.0) - 2.0 * m * std::f64::consts::LN_2 - 2.0 * ln_gamma(m + 1.0);
    (PI / 2.0).ln() + 2.0 * ln_ratio - (2.0 * m - 1.0).ln()
}

/// Maclaurin coefficient of E(m); exact up to [`MAX_EXACT_ORDER`], log-gamma beyond.
pub fn e_series_coeff(order: u32) -> f64 {
    match e_series_coeff_exact(order) {
        Ok(r) => r.to_f64(),
        Err(_) => -ln_abs_coeff(order).exp(),
    }
}

/// `d^m E / d(k²)^m` at k = 0; exact up to [`MAX_EXACT_ORDER`], log-gamma beyond.
pub fn e_deriv_at_zero(order: u32) -> f64 {
    match e_deriv_at_zero_exact(order) {
        Ok(r) => r.to_f64(),
        Err(_) => -(ln_abs_coeff(order) + ln_gamma(order as f64 + 1.0)).exp(),
    }
}
