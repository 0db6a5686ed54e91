use std::f64::consts::PI;

use super::energy::asin_ratio;
use super::{classify, BranchArgs, ModelParams, PhaseRegion, BOUNDARY_TOL};
use crate::error::{Error, Result};

/// Transverse magnetization ⟨M⟩ = -∂ε_g/∂α. Odd in α, even in γ.
pub fn magnetization(p: ModelParams) -> f64 {
    let (a, g) = p.folded();
    let m = match classify(p) {
        PhaseRegion::CircleBoundary => a / (2.0 * (1.0 + g)),
        PhaseRegion::CriticalLine => asin_ratio(g) / PI,
        PhaseRegion::IsotropyLine => {
            if a <= 1.0 {
                0.5 - a.acos() / PI
            } else {
                0.5
            }
        }
        PhaseRegion::DiskInterior => {
            let b = BranchArgs::disk(a, g);
            let one_m_a2 = (1.0 - a) * (1.0 + a);
            a * (b.rf() - b.rj() / (3.0 * one_m_a2)) / (PI * one_m_a2.sqrt())
        }
        PhaseRegion::AnnulusWeakField => {
            let b = BranchArgs::annulus(a, g);
            let one_m_a2 = (1.0 - a) * (1.0 + a);
            a * one_m_a2 * b.rj() / (3.0 * PI * g)
        }
        PhaseRegion::StrongField => {
            let b = BranchArgs::strong(a, g);
            let a2m1 = (a - 1.0) * (a + 1.0);
            let s = a2m1 + g * g;
            let pi3 = b.rf() + b.n / 3.0 * b.rj();
            a2m1 * pi3 / (PI * a * s.sqrt())
        }
    };
    m.copysign(p.alpha)
}

/// Transverse susceptibility χ = -∂²ε_g/∂α² = ∂⟨M⟩/∂α, positive and even
/// in both parameters.
///
/// χ diverges logarithmically on α = 1. On γ = 0 it stays finite,
/// 1/(π sqrt(1-α²)) for α < 1 and 0 for α > 1, and those limits are returned.
pub fn susceptibility(p: ModelParams) -> Result<f64> {
    let (a, g) = p.folded();
    match classify(p) {
        PhaseRegion::CriticalLine => Err(divergent(p)),
        PhaseRegion::CircleBoundary if g <= BOUNDARY_TOL => Err(divergent(p)),
        PhaseRegion::CircleBoundary => Ok(1.0 / (4.0 * g)),
        PhaseRegion::IsotropyLine => Ok(if a < 1.0 { 1.0 / (PI * ((1.0 - a) * (1.0 + a)).sqrt()) } else { 0.0 }),
        PhaseRegion::DiskInterior => {
            let b = BranchArgs::disk(a, g);
            let one_m_a2 = (1.0 - a) * (1.0 + a);
            Ok((b.rf() - b.rd() / 3.0) / (PI * one_m_a2.sqrt()))
        }
        PhaseRegion::AnnulusWeakField => {
            let b = BranchArgs::annulus(a, g);
            Ok(b.rd() / (3.0 * PI * g))
        }
        PhaseRegion::StrongField => {
            let b = BranchArgs::strong(a, g);
            let s = (a - 1.0) * (a + 1.0) + g * g;
            Ok(b.m / 3.0 * b.rd() / (PI * s.sqrt()))
        }
    }
}

fn divergent(p: ModelParams) -> Error {
    Error::Divergent { what: "susceptibility", alpha: p.alpha, gamma: p.gamma }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::closedform::ground_energy;
    use crate::quadoracle::{chi_integral, magnetization_integral, QuadratureSpec};
    use approx::assert_relative_eq;

    fn p(a: f64, g: f64) -> ModelParams {
        ModelParams::new(a, g).unwrap()
    }

    fn fd_m(a: f64, g: f64) -> f64 {
        let h = 1e-6;
        -(ground_energy(p(a + h, g)) - ground_energy(p(a - h, g))) / (2.0 * h)
    }

    #[test]
    fn magnetization_examples() {
        assert_eq!(magnetization(p(0.0, 0.4)), 0.0);
        assert!((magnetization(p(10.0, 0.5)) - 0.5).abs() < 1e-2);
        assert!((magnetization(p(1.5, 0.6)) - fd_m(1.5, 0.6)).abs() < 1e-8);
        assert_relative_eq!(magnetization(p(-0.3, 0.2)), -magnetization(p(0.3, 0.2)));
    }

    #[test]
    fn magnetization_matches_quadrature() {
        let spec = QuadratureSpec::default();
        for &(a, g) in &[(0.3, 0.3), (0.9, 0.8), (1.5, 0.3), (0.6, 0.8), (1.0, 0.4), (0.5, 0.0), (1e-3, 0.5), (0.999, 0.05)] {
            let q = magnetization_integral(p(a, g), &spec).unwrap().value;
            let m = magnetization(p(a, g));
            assert!((m - q).abs() < 1e-11, "({a},{g}): {m} vs {q}");
        }
    }

    #[test]
    fn susceptibility_matches_quadrature() {
        let spec = QuadratureSpec::default();
        for &(a, g) in &[(0.3, 0.3), (0.9, 0.8), (1.5, 0.3), (0.6, 0.8), (10.0, 0.5), (0.0, 0.7), (0.5, 0.01), (1.3, 0.01)] {
            let q = chi_integral(p(a, g), &spec).unwrap().value;
            let c = susceptibility(p(a, g)).unwrap();
            assert!(((c - q) / q).abs() < 1e-9, "({a},{g}): {c} vs {q}");
        }
    }

    #[test]
    fn susceptibility_examples() {
        let c = susceptibility(p(10.0, 0.5)).unwrap();
        assert!((c / 6.25e-5 - 1.0).abs() < 0.05);
        let h = 1e-4;
        let fd = -(ground_energy(p(0.3 + h, 0.3)) - 2.0 * ground_energy(p(0.3, 0.3)) + ground_energy(p(0.3 - h, 0.3))) / (h * h);
        assert!((susceptibility(p(0.3, 0.3)).unwrap() - fd).abs() < 1e-6);
        assert_relative_eq!(susceptibility(p(0.6, 0.8)).unwrap(), 1.0 / 3.2, epsilon = 1e-15);
    }

    #[test]
    fn susceptibility_divergent_on_critical_line() {
        assert!(matches!(susceptibility(p(1.0, 0.5)), Err(Error::Divergent { .. })));
        assert!(matches!(susceptibility(p(1.0, 0.0)), Err(Error::Divergent { .. })));
    }

    #[test]
    fn susceptibility_continuous_onto_isotropy_line() {
        for &a in &[0.0, 0.4, 0.8, 1.2] {
            let on = susceptibility(p(a, 0.0)).unwrap();
            let near = susceptibility(p(a, 1e-9)).unwrap();
            assert!((on - near).abs() < 1e-6, "{a}: {on} vs {near}");
        }
    }

    #[test]
    fn continuity_across_circle() {
        for &g in &[0.3, 0.6, 0.8] {
            let a0 = ((1.0f64 - g) * (1.0 + g)).sqrt();
            for &d in &[-1e-8, 1e-8] {
                let q = p(a0 + d, g);
                assert!((magnetization(q) - magnetization(p(a0, g))).abs() < 1e-7);
                assert!((susceptibility(q).unwrap() - 1.0 / (4.0 * g)).abs() < 1e-6);
            }
        }
    }
}
