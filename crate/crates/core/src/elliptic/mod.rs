//! Complete elliptic integrals of the first, second and third kind.
//!
//! Public signatures take the modulus `k`. The closed forms elsewhere in the
//! crate know the complementary parameter `1 - k²` exactly from the model
//! parameters, so the `*_parts` functions accept it directly instead of
//! recomputing it from `k` with cancellation.

pub mod carlson;
mod series;

pub use series::{e_deriv_at_zero, e_deriv_at_zero_exact, e_series_coeff, e_series_coeff_exact, RationalPi, MAX_EXACT_ORDER};

use crate::error::{Error, Result};

/// Largest modulus at which K is still evaluated; beyond it the log
/// singularity is better handled by the critical expansions.
pub const K_MODULUS_MAX: f64 = 1.0 - 1.0e-12;

/// Modulus and (optional) characteristic of a complete elliptic integral.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EllipticArgs {
    pub k: f64,
    pub n: f64,
}

impl EllipticArgs {
    pub fn new(k: f64, n: f64) -> Self {
        Self { k, n }
    }

    pub fn first_kind(&self) -> Result<f64> {
        ellip_k(self.k)
    }

    pub fn second_kind(&self) -> Result<f64> {
        ellip_e(self.k)
    }

    pub fn third_kind(&self) -> Result<f64> {
        ellip_pi(self.n, self.k)
    }
}

fn check_modulus(what: &'static str, k: f64, max: f64, domain: &'static str) -> Result<()> {
    if !(0.0..=max).contains(&k) {
        return Err(Error::Domain { what, value: k, domain });
    }
    Ok(())
}

/// K(k) = ∫₀¹ dz / sqrt((1 - z²)(1 - k² z²)).
pub fn ellip_k(k: f64) -> Result<f64> {
    check_modulus("ellip_k", k, K_MODULUS_MAX, "[0, 1 - 1e-12]")?;
    Ok(k_from_kc2((1.0 - k) * (1.0 + k)))
}

/// E(k) = ∫₀¹ dz sqrt((1 - k² z²) / (1 - z²)).
pub fn ellip_e(k: f64) -> Result<f64> {
    check_modulus("ellip_e", k, 1.0, "[0, 1]")?;
    if k == 1.0 {
        return Ok(1.0);
    }
    Ok(e_from_parts(k * k, (1.0 - k) * (1.0 + k)))
}

/// Π(n; k) = ∫₀¹ dz / ((1 - n z²) sqrt((1 - z²)(1 - k² z²))).
pub fn ellip_pi(n: f64, k: f64) -> Result<f64> {
    check_modulus("ellip_pi", k, K_MODULUS_MAX, "[0, 1 - 1e-12]")?;
    if !(n < 1.0) {
        return Err(Error::Domain { what: "ellip_pi characteristic", value: n, domain: "n < 1" });
    }
    Ok(pi_from_parts(n, 1.0 - n, (1.0 - k) * (1.0 + k)))
}

/// K from the complementary parameter `kc2 = 1 - k²`.
#[inline]
pub fn k_from_kc2(kc2: f64) -> f64 {
    carlson::rf(0.0, kc2, 1.0)
}

/// E from the parameter `m = k²` and its complement `kc2 = 1 - m`.
#[inline]
pub fn e_from_parts(m: f64, kc2: f64) -> f64 {
    carlson::rf(0.0, kc2, 1.0) - m / 3.0 * carlson::rd(0.0, kc2, 1.0)
}

/// Π from the characteristic `n`, `one_minus_n = 1 - n` and `kc2 = 1 - k²`.
#[inline]
pub fn pi_from_parts(n: f64, one_minus_n: f64, kc2: f64) -> f64 {
    carlson::rf(0.0, kc2, 1.0) + n / 3.0 * carlson::rj(0.0, kc2, 1.0, one_minus_n)
}

/// K as a function of the parameter m = k², valid for any m < 1 including
/// negative m (imaginary modulus).
pub fn k_param(m: f64) -> Result<f64> {
    if !(m < 1.0) || !m.is_finite() {
        return Err(Error::Domain { what: "k_param", value: m, domain: "m < 1" });
    }
    Ok(k_from_kc2(1.0 - m))
}

/// E as a function of the parameter m = k², valid for any m ≤ 1.
pub fn e_param(m: f64) -> Result<f64> {
    if !(m <= 1.0) || !m.is_finite() {
        return Err(Error::Domain { what: "e_param", value: m, domain: "m <= 1" });
    }
    if m == 1.0 {
        return Ok(1.0);
    }
    Ok(e_from_parts(m, 1.0 - m))
}

/// Both sides of the imaginary-modulus identities
/// K(k) = K(iκ)/sqrt(1-k²) and E(k) = sqrt(1-k²) E(iκ), κ = k/sqrt(1-k²).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ImaginaryModulus {
    /// 1/sqrt(1 - k²)
    pub k_factor: f64,
    /// sqrt(1 - k²)
    pub e_factor: f64,
    /// κ; the transformed modulus is iκ, i.e. parameter -κ².
    pub kappa: f64,
    pub k_direct: f64,
    pub e_direct: f64,
    /// K(iκ), evaluated through the real parameter -κ².
    pub k_imaginary: f64,
    /// E(iκ), evaluated through the real parameter -κ².
    pub e_imaginary: f64,
}

impl ImaginaryModulus {
    pub fn k_transformed(&self) -> f64 {
        self.k_factor * self.k_imaginary
    }

    pub fn e_transformed(&self) -> f64 {
        self.e_factor * self.e_imaginary
    }

    /// Largest relative mismatch between the two sides of either identity.
    pub fn max_rel_mismatch(&self) -> f64 {
        let dk = ((self.k_direct - self.k_transformed()) / self.k_direct).abs();
        let de = ((self.e_direct - self.e_transformed()) / self.e_direct).abs();
        dk.max(de)
    }
}

pub fn imaginary_modulus_transform(k: f64) -> Result<ImaginaryModulus> {
    check_modulus("imaginary_modulus_transform", k, K_MODULUS_MAX, "[0, 1 - 1e-12]")?;
    let kc2 = (1.0 - k) * (1.0 + k);
    let kc = kc2.sqrt();
    let kappa = k / kc;
    let m_imag = -(k * k) / kc2;
    Ok(ImaginaryModulus {
        k_factor: 1.0 / kc,
        e_factor: kc,
        kappa,
        k_direct: k_from_kc2(kc2),
        e_direct: e_from_parts(k * k, kc2),
        k_imaginary: k_param(m_imag)?,
        e_imaginary: e_param(m_imag)?,
    })
}
