use std::f64::consts::PI;

use super::{classify, BranchArgs, ModelParams, PhaseRegion, BOUNDARY_TOL};
use crate::error::{Error, Result};

/// The three open regions, each with its own elliptic-integral formula.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OpenRegion {
    DiskInterior,
    AnnulusWeakField,
    StrongField,
}

/// Ground-state energy per site ε_g(α, γ) in the thermodynamic limit.
pub fn ground_energy(p: ModelParams) -> f64 {
    let (a, g) = p.folded();
    match classify(p) {
        PhaseRegion::CircleBoundary => -0.5,
        PhaseRegion::CriticalLine => critical_line_energy(g),
        PhaseRegion::IsotropyLine => isotropic_energy(a),
        PhaseRegion::DiskInterior => disk(a, g),
        PhaseRegion::AnnulusWeakField => annulus(a, g),
        PhaseRegion::StrongField => strong(a, g),
    }
}

/// Evaluates the formula of `branch` at `p` regardless of where `p` lies.
/// Each formula continues analytically up to the boundaries of its region;
/// outside the closure of that region the result is a domain error.
pub fn ground_energy_by_branch(p: ModelParams, branch: OpenRegion) -> Result<f64> {
    let (a, g) = p.folded();
    let one_m_a2 = (1.0 - a) * (1.0 + a);
    let ok = match branch {
        OpenRegion::DiskInterior => a < 1.0 && g * g - one_m_a2 <= BOUNDARY_TOL,
        OpenRegion::AnnulusWeakField => a < 1.0 && g > 0.0 && one_m_a2 - g * g <= BOUNDARY_TOL,
        OpenRegion::StrongField => a > 1.0 && g > 0.0,
    };
    if !ok {
        return Err(Error::Domain { what: "ground_energy_by_branch alpha", value: p.alpha, domain: "closure of the selected region" });
    }
    Ok(match branch {
        OpenRegion::DiskInterior => disk(a, g),
        OpenRegion::AnnulusWeakField => annulus(a, g),
        OpenRegion::StrongField => strong(a, g),
    })
}

/// -sqrt(1-α²)/π [E - K + Π(n)/(1-α²)], n = -α²/(1-α²).
fn disk(a: f64, g: f64) -> f64 {
    let b = BranchArgs::disk(a, g);
    let one_m_a2 = (1.0 - a) * (1.0 + a);
    let rf = b.rf();
    let e_minus_k = -b.m / 3.0 * b.rd();
    let pi = rf + b.n / 3.0 * b.rj();
    -one_m_a2.sqrt() / PI * (e_minus_k + pi / one_m_a2)
}

/// -(1-α²)/(πγ) [Π(α²) - K + γ² E/(1-α²)], written without the 1/(1-α²).
fn annulus(a: f64, g: f64) -> f64 {
    let b = BranchArgs::annulus(a, g);
    let one_m_a2 = (1.0 - a) * (1.0 + a);
    let rf = b.rf();
    let e = rf - b.m / 3.0 * b.rd();
    let pi_minus_k = b.n / 3.0 * b.rj();
    -(one_m_a2 * pi_minus_k / g + g * e) / PI
}

/// -(α²-1)/(π sqrt(s)) [Π(1/α²) - K + s E/(α²-1)], s = α² + γ² - 1.
fn strong(a: f64, g: f64) -> f64 {
    let b = BranchArgs::strong(a, g);
    let a2m1 = (a - 1.0) * (a + 1.0);
    let s = a2m1 + g * g;
    let rf = b.rf();
    let e = rf - b.m / 3.0 * b.rd();
    let pi_minus_k = b.n / 3.0 * b.rj();
    -(a2m1 * pi_minus_k + s * e) / (PI * s.sqrt())
}

/// sin⁻¹(c)/c for c = sqrt(1-γ²), with a series where c underflows the
/// quotient.
pub(crate) fn asin_ratio(g: f64) -> f64 {
    let c2 = (1.0 - g) * (1.0 + g);
    if c2 < 1e-8 {
        1.0 + c2 / 6.0 + 3.0 * c2 * c2 / 40.0
    } else {
        let c = c2.sqrt();
        c.asin() / c
    }
}

fn critical_line_energy(g: f64) -> f64 {
    -(g + asin_ratio(g)) / PI
}

fn isotropic_energy(a: f64) -> f64 {
    if a <= 1.0 {
        let s = ((1.0 - a) * (1.0 + a)).sqrt();
        -(2.0 * s + a * (PI - 2.0 * a.acos())) / (2.0 * PI)
    } else {
        -a / 2.0
    }
}
