//! Independent numerical oracles: adaptive quadrature of the defining
//! integral ε_g = -(1/2π) ∫₀^π Λ(t) dt, Λ = sqrt((α - cos t)² + γ² sin² t),
//! of its parameter derivatives, and finite-difference derivatives.

mod finite_diff;
mod gauss_kronrod;

pub use finite_diff::{
    default_step, derivative, derivative_with, fornberg_weights, DerivativeEstimate, DerivativeOptions, Stencil, MAX_ORDER,
};
pub use gauss_kronrod::{integrate, Integral};

use std::f64::consts::PI;

use crate::closedform::ModelParams;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec {
    /// Absolute tolerance on the integral itself (before the 1/2π factor).
    pub abs_tol: f64,
    /// Maximum number of bisections of an initial panel.
    pub max_depth: u32,
}

impl QuadratureSpec {
    pub fn new(abs_tol: f64, max_depth: u32) -> Result<Self> {
        if !(abs_tol >= 1e-14) {
            return Err(Error::Domain { what: "abs_tol", value: abs_tol, domain: ">= 1e-14" });
        }
        if max_depth > 60 {
            return Err(Error::Domain { what: "max_depth", value: max_depth as f64, domain: "<= 60" });
        }
        Ok(Self { abs_tol, max_depth })
    }
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self { abs_tol: 1e-13, max_depth: 50 }
    }
}

/// The integrands in the shifted variable u = t - t0, where t0 is the zero
/// of α - cos t (t0 = 0 for α ≥ 1). Writing α - cos t as
/// r + 2 sin(t0 + u/2) sin(u/2), r = α - cos t0, keeps full relative accuracy
/// inside the peak of width ~γ around u = 0.
#[derive(Debug, Clone, Copy)]
struct Shifted {
    t0: f64,
    r: f64,
    g: f64,
}

impl Shifted {
    fn new(a: f64, g: f64) -> Self {
        let t0 = a.min(1.0).acos();
        let r = if a >= 1.0 { a - 1.0 } else { a - t0.cos() };
        Self { t0, r, g }
    }

    /// (α - cos t, sin t, Λ) at t = t0 + u
    #[inline]
    fn parts(&self, u: f64) -> (f64, f64, f64) {
        let x = self.r + 2.0 * (self.t0 + 0.5 * u).sin() * (0.5 * u).sin();
        let s = (self.t0 + u).sin();
        (x, s, x.hypot(self.g * s))
    }

    /// Panel boundaries in u: the peak centre plus distances γ·4^j from it,
    /// so every length scale of the peak gets its own panels.
    fn breakpoints(&self) -> Vec<f64> {
        let (lo, hi) = (-self.t0, PI - self.t0);
        let mut pts = vec![lo, hi];
        let mut widths = vec![0.0];
        if self.g > 0.0 {
            let mut w = 0.25 * self.g;
            while w < PI {
                widths.push(w);
                w *= 4.0;
            }
        }
        for w in widths {
            for u in [-w, w] {
                if u > lo && u < hi {
                    pts.push(u);
                }
            }
        }
        pts.sort_by(f64::total_cmp);
        pts.dedup_by(|x, y| (*x - *y).abs() <= 1e-15);
        pts
    }
}

fn run<F: Fn(&Shifted, f64) -> f64>(p: ModelParams, spec: &QuadratureSpec, scale: f64, f: F) -> Result<Integral> {
    let (a, g) = p.folded();
    let sh = Shifted::new(a, g);
    let r = integrate(&|u| f(&sh, u), &sh.breakpoints(), spec.abs_tol, spec.max_depth).map_err(|e| match e {
        Error::ToleranceNotReached { estimate, error, tol } => {
            Error::ToleranceNotReached { estimate: scale * estimate, error: scale.abs() * error, tol }
        }
        other => other,
    })?;
    Ok(Integral { value: scale * r.value, error: scale.abs() * r.error, evaluations: r.evaluations })
}

/// ε_g(α, γ) by quadrature.
pub fn ground_energy_integral(p: ModelParams, spec: &QuadratureSpec) -> Result<Integral> {
    run(p, spec, -0.5 / PI, |sh, u| sh.parts(u).2)
}

/// ⟨M⟩ = (1/2π) ∫ (α - cos t)/Λ dt for α ≥ 0 (odd in α).
pub fn magnetization_integral(p: ModelParams, spec: &QuadratureSpec) -> Result<Integral> {
    let r = run(p, spec, 0.5 / PI, |sh, u| {
        let (x, _, l) = sh.parts(u);
        if l == 0.0 {
            0.0
        } else {
            x / l
        }
    })?;
    Ok(Integral { value: r.value.copysign(p.alpha), ..r })
}

/// χ = (1/2π) ∫ γ² sin² t / Λ³ dt. For γ → 0 the integrand concentrates
/// into a delta at cos t = α, so the oracle is only meaningful for γ ≠ 0.
pub fn chi_integral(p: ModelParams, spec: &QuadratureSpec) -> Result<Integral> {
    run(p, spec, 0.5 / PI, |sh, u| {
        let (_, s, l) = sh.parts(u);
        if l == 0.0 {
            0.0
        } else {
            let r = sh.g * s / l;
            r * r / l
        }
    })
}

/// ∂²ε_g/∂γ² = -(1/2π) ∫ (α - cos t)² sin² t / Λ³ dt.
pub fn d2e_dgamma2_integral(p: ModelParams, spec: &QuadratureSpec) -> Result<Integral> {
    run(p, spec, -0.5 / PI, |sh, u| {
        let (x, s, l) = sh.parts(u);
        if l == 0.0 {
            0.0
        } else {
            let r = x * s / l;
            r * r / l
        }
    })
}
