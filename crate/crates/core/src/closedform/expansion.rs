use std::f64::consts::{LN_2, PI};

use super::{ModelParams, BOUNDARY_TOL};
use crate::error::{Error, Result};

/// Truncation of the susceptibility expansion around α = 1. Each variant
/// includes the terms of the previous one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum ChiTerms {
    /// (1/πγ) log(1/sqrt|1-α|)
    Leading,
    /// + (1/πγ) [log(2 sqrt 2 γ) - 1]
    Constant,
    /// + (8 - 9 log 2 - γ² - 6 log γ)/(4πγ³) |1-α|
    Linear,
    /// + 3/(4πγ³) |1-α| log|1-α|
    #[default]
    Full,
}

/// Asymptotic χ for |1-α| small. Requires 0 < γ and |1-α| < 0.2; exact
/// α = 1 is a divergence error.
pub fn chi_expansion_near_critical(p: ModelParams, terms: ChiTerms) -> Result<f64> {
    let (a, g) = (p.alpha, p.gamma);
    if !(g > 0.0) {
        return Err(Error::Domain { what: "chi_expansion_near_critical gamma", value: g, domain: "(0, 1]" });
    }
    let d = (1.0 - a).abs();
    if !(d < 0.2) {
        return Err(Error::Domain { what: "chi_expansion_near_critical alpha", value: a, domain: "|1 - alpha| < 0.2" });
    }
    if d <= BOUNDARY_TOL {
        return Err(Error::Divergent { what: "chi expansion", alpha: a, gamma: g });
    }
    let pg = PI * g;
    let mut chi = -0.5 * d.ln() / pg;
    if terms == ChiTerms::Leading {
        return Ok(chi);
    }
    chi += ((2.0 * 2f64.sqrt() * g).ln() - 1.0) / pg;
    if terms == ChiTerms::Constant {
        return Ok(chi);
    }
    let g3 = 4.0 * PI * g * g * g;
    chi += (8.0 - 9.0 * LN_2 - g * g - 6.0 * g.ln()) / g3 * d;
    if terms == ChiTerms::Linear {
        return Ok(chi);
    }
    Ok(chi + 3.0 / g3 * d * d.ln())
}

/// Asymptotic ∂²ε_g/∂γ² for small γ inside |α| < 1, through the γ² log γ²
/// term. Requires 0 < |γ| < 0.2.
pub fn d2e_dgamma2_expansion(p: ModelParams) -> Result<f64> {
    let (a, g) = p.folded();
    if !(a < 1.0) {
        return Err(Error::Domain { what: "d2e_dgamma2_expansion alpha", value: p.alpha, domain: "|alpha| < 1" });
    }
    if !(g < 0.2) {
        return Err(Error::Domain { what: "d2e_dgamma2_expansion gamma", value: p.gamma, domain: "0 < |gamma| < 0.2" });
    }
    if g == 0.0 {
        return Err(Error::Divergent { what: "d2e/dgamma2", alpha: p.alpha, gamma: p.gamma });
    }
    let one_m_a2 = (1.0 - a) * (1.0 + a);
    let s = one_m_a2.sqrt();
    let asin = a.asin();
    let g2 = g * g;
    let lead = s / PI * (2.0 - a / s * asin + (g / (4.0 * s)).ln());
    let quad = (15.0 - 21.0 * a * a - 18.0 * a * s * asin) / (4.0 * PI * s) * g2;
    let log_term = 9.0 * (1.0 - 2.0 * a * a) / (8.0 * PI * s) * (g2 / (16.0 * one_m_a2)).ln() * g2;
    Ok(lead + quad + log_term)
}
