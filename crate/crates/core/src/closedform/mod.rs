//! Closed-form ground-state thermodynamics of the XY chain
//! H = -Σ [(1+γ) SˣSˣ + (1-γ) SʸSʸ] - α Σ Sᶻ in the thermodynamic limit.
//!
//! All quantities are even in α and in γ; public entry points fold negative
//! parameters before dispatching on [`PhaseRegion`].

mod circle;
mod energy;
mod expansion;
mod response;

pub use circle::{circle_derivative, MAX_CIRCLE_ORDER};
pub use energy::{ground_energy, ground_energy_by_branch, OpenRegion};
pub use expansion::{chi_expansion_near_critical, d2e_dgamma2_expansion, ChiTerms};
pub use response::{magnetization, susceptibility};

use std::fmt;

use crate::error::{Error, Result};

/// Tolerance on the defining expressions of the phase boundaries.
pub const BOUNDARY_TOL: f64 = 1.0e-12;

/// A point (α, γ) of the phase diagram: α is the transverse field, γ the
/// anisotropy (J_x - J_y)/(2J).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelParams {
    pub alpha: f64,
    pub gamma: f64,
}

impl ModelParams {
    pub fn new(alpha: f64, gamma: f64) -> Result<Self> {
        if !alpha.is_finite() {
            return Err(Error::Domain { what: "alpha", value: alpha, domain: "finite" });
        }
        if !(-1.0..=1.0).contains(&gamma) {
            return Err(Error::Domain { what: "gamma", value: gamma, domain: "[-1, 1]" });
        }
        Ok(Self { alpha, gamma })
    }

    /// (|α|, |γ|), the representative on which the closed forms act.
    pub fn folded(&self) -> (f64, f64) {
        (self.alpha.abs(), self.gamma.abs())
    }

    pub fn region(&self) -> PhaseRegion {
        classify(*self)
    }
}

impl fmt::Display for ModelParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(alpha={}, gamma={})", self.alpha, self.gamma)
    }
}

/// Region of the phase diagram, including the lines where the branch
/// formulas degenerate and limiting values are used instead.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PhaseRegion {
    /// α² + γ² < 1 (oscillatory ferromagnet)
    DiskInterior,
    /// α² + γ² > 1 and α < 1 (non-oscillatory ferromagnet)
    AnnulusWeakField,
    /// α > 1 (paramagnet)
    StrongField,
    /// α² + γ² = 1
    CircleBoundary,
    /// α = 1
    CriticalLine,
    /// γ = 0
    IsotropyLine,
}

impl PhaseRegion {
    pub fn name(self) -> &'static str {
        match self {
            PhaseRegion::DiskInterior => "disk_interior",
            PhaseRegion::AnnulusWeakField => "annulus_weak_field",
            PhaseRegion::StrongField => "strong_field",
            PhaseRegion::CircleBoundary => "circle_boundary",
            PhaseRegion::CriticalLine => "critical_line",
            PhaseRegion::IsotropyLine => "isotropy_line",
        }
    }
}

/// Branch selection. Boundary tags take precedence over open regions, and
/// among boundaries the circle wins over α = 1, which wins over γ = 0, so the
/// triple point (1, 0) is `CircleBoundary`.
pub fn classify(p: ModelParams) -> PhaseRegion {
    let (a, g) = p.folded();
    let radial = g * g - (1.0 - a) * (1.0 + a);
    if radial.abs() <= BOUNDARY_TOL {
        PhaseRegion::CircleBoundary
    } else if (a - 1.0).abs() <= BOUNDARY_TOL {
        PhaseRegion::CriticalLine
    } else if g <= BOUNDARY_TOL {
        PhaseRegion::IsotropyLine
    } else if radial < 0.0 {
        PhaseRegion::DiskInterior
    } else if a < 1.0 {
        PhaseRegion::AnnulusWeakField
    } else {
        PhaseRegion::StrongField
    }
}

/// Quantities shared by the three open-region formulas: the parameter m = k²,
/// its complement, and the characteristic n of Π with 1 - n.
#[derive(Debug, Clone, Copy)]
pub(crate) struct BranchArgs {
    pub m: f64,
    pub kc2: f64,
    pub n: f64,
    pub one_minus_n: f64,
}

impl BranchArgs {
    pub fn disk(a: f64, g: f64) -> Self {
        let one_m_a2 = (1.0 - a) * (1.0 + a);
        let inner = one_m_a2 - g * g;
        Self { m: inner / one_m_a2, kc2: g * g / one_m_a2, n: -a * a / one_m_a2, one_minus_n: 1.0 / one_m_a2 }
    }

    pub fn annulus(a: f64, g: f64) -> Self {
        let one_m_a2 = (1.0 - a) * (1.0 + a);
        let s = g * g - one_m_a2;
        Self { m: s / (g * g), kc2: one_m_a2 / (g * g), n: a * a, one_minus_n: one_m_a2 }
    }

    pub fn strong(a: f64, g: f64) -> Self {
        let a2m1 = (a - 1.0) * (a + 1.0);
        let s = a2m1 + g * g;
        Self { m: g * g / s, kc2: a2m1 / s, n: 1.0 / (a * a), one_minus_n: a2m1 / (a * a) }
    }

    pub fn rf(&self) -> f64 {
        crate::elliptic::carlson::rf(0.0, self.kc2, 1.0)
    }

    pub fn rd(&self) -> f64 {
        crate::elliptic::carlson::rd(0.0, self.kc2, 1.0)
    }

    pub fn rj(&self) -> f64 {
        crate::elliptic::carlson::rj(0.0, self.kc2, 1.0, self.one_minus_n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(a: f64, g: f64) -> ModelParams {
        ModelParams::new(a, g).unwrap()
    }

    #[test]
    fn classify_examples() {
        assert_eq!(classify(p(0.3, 0.3)), PhaseRegion::DiskInterior);
        assert_eq!(classify(p(0.9, 0.8)), PhaseRegion::AnnulusWeakField);
        assert_eq!(classify(p(0.6, 0.8)), PhaseRegion::CircleBoundary);
        assert_eq!(classify(p(1.5, 0.3)), PhaseRegion::StrongField);
        assert_eq!(classify(p(1.0, 0.5)), PhaseRegion::CriticalLine);
        assert_eq!(classify(p(0.4, 0.0)), PhaseRegion::IsotropyLine);
        assert_eq!(classify(p(1.0, 0.0)), PhaseRegion::CircleBoundary);
        assert_eq!(classify(p(-0.9, -0.8)), PhaseRegion::AnnulusWeakField);
        assert_eq!(classify(p(0.0, 1.0)), PhaseRegion::CircleBoundary);
    }

    #[test]
    fn classify_respects_tolerance() {
        assert_eq!(classify(p(1.0 + 5e-13, 0.5)), PhaseRegion::CriticalLine);
        assert_eq!(classify(p(1.0 + 5e-12, 0.5)), PhaseRegion::StrongField);
        assert_eq!(classify(p(0.5, 1e-13)), PhaseRegion::IsotropyLine);
        assert_eq!(classify(p(0.5, 1e-11)), PhaseRegion::DiskInterior);
    }

    #[test]
    fn params_validation() {
        assert!(ModelParams::new(0.5, 1.5).is_err());
        assert!(ModelParams::new(f64::NAN, 0.5).is_err());
        assert!(ModelParams::new(-3.0, -1.0).is_ok());
    }
}
