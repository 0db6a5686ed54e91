//! Finite-chain free-fermion spectra.
//!
//! After the Jordan-Wigner map the chain is the quadratic form
//! H = Σ c†A c + ½ Σ (c†B c† + h.c.) with A symmetric (A_ii = α,
//! A_{i,i±1} = -1/2) and B antisymmetric (B_{i,i+1} = -γ/2). The one-particle
//! energies Λ_k satisfy Λ² ∈ spec((A-B)(A+B)); since A - B = (A+B)ᵀ they are
//! the singular values of M = A + B.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use nalgebra::DMatrix;

use crate::closedform::ModelParams;
use crate::error::{Error, Result};

/// Largest open chain accepted by the dense solver.
pub const MAX_OPEN_SITES: usize = 4000;

/// Largest N for which [`many_body_levels`] materializes all 2^N levels.
pub const MAX_RECONSTRUCT_SITES: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Boundary {
    Open,
    /// Periodic boundary imposed on the fermions (c_{N+1} = c_1).
    CCyclic,
}

impl fmt::Display for Boundary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Boundary::Open => "open",
            Boundary::CCyclic => "cyclic",
        })
    }
}

impl FromStr for Boundary {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "open" => Ok(Boundary::Open),
            "cyclic" | "c-cyclic" => Ok(Boundary::CCyclic),
            other => Err(Error::Invalid(format!("unknown boundary '{other}' (expected open or cyclic)"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ChainSpec {
    pub n_sites: usize,
    pub boundary: Boundary,
}

impl ChainSpec {
    pub fn new(n_sites: usize, boundary: Boundary) -> Result<Self> {
        if n_sites < 2 {
            return Err(Error::InvalidChain(format!("N = {n_sites}, need N >= 2")));
        }
        if boundary == Boundary::Open && n_sites > MAX_OPEN_SITES {
            return Err(Error::InvalidChain(format!("open chain N = {n_sites} exceeds {MAX_OPEN_SITES}")));
        }
        Ok(Self { n_sites, boundary })
    }

    pub fn open(n_sites: usize) -> Result<Self> {
        Self::new(n_sites, Boundary::Open)
    }

    pub fn cyclic(n_sites: usize) -> Result<Self> {
        Self::new(n_sites, Boundary::CCyclic)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumResult {
    /// Ascending, nonnegative.
    pub lambdas: Vec<f64>,
    /// -½ Σ Λ_k
    pub ground_energy: f64,
    /// min Λ_k / N
    pub gap: f64,
}

impl SpectrumResult {
    fn from_lambdas(mut lambdas: Vec<f64>) -> Self {
        for l in &mut lambdas {
            *l = l.max(0.0);
        }
        lambdas.sort_by(f64::total_cmp);
        let n = lambdas.len() as f64;
        let ground_energy = -0.5 * lambdas.iter().sum::<f64>();
        let gap = lambdas[0] / n;
        Self { lambdas, ground_energy, gap }
    }

    pub fn n_sites(&self) -> usize {
        self.lambdas.len()
    }

    /// N·Δ_N, the smallest one-particle energy.
    pub fn min_lambda(&self) -> f64 {
        self.lambdas[0]
    }
}

/// Λ(k) = sqrt((α - cos k)² + γ² sin² k).
#[inline]
pub fn dispersion(p: ModelParams, k: f64) -> f64 {
    (p.alpha - k.cos()).hypot(p.gamma * k.sin())
}

/// Closed-form c-cyclic spectrum, k = 2πm/N.
pub fn cyclic_lambdas(p: ModelParams, n: usize) -> Result<SpectrumResult> {
    ChainSpec::cyclic(n)?;
    let lambdas = (0..n).map(|m| dispersion(p, 2.0 * PI * m as f64 / n as f64)).collect();
    Ok(SpectrumResult::from_lambdas(lambdas))
}

/// M = A + B for the open chain: diagonal α, superdiagonal -(1+γ)/2,
/// subdiagonal -(1-γ)/2.
pub fn open_coupling_matrix(p: ModelParams, n: usize) -> DMatrix<f64> {
    let mut m = DMatrix::zeros(n, n);
    for i in 0..n {
        m[(i, i)] = p.alpha;
        if i + 1 < n {
            m[(i, i + 1)] = -0.5 * (1.0 + p.gamma);
            m[(i + 1, i)] = -0.5 * (1.0 - p.gamma);
        }
    }
    m
}

/// Open-chain spectrum from the singular values of M.
pub fn open_chain_spectrum(p: ModelParams, n: usize) -> Result<SpectrumResult> {
    ChainSpec::open(n)?;
    let m = open_coupling_matrix(p, n);
    let svd = m.try_svd(false, false, f64::EPSILON, 0).ok_or_else(|| Error::Eigensolver(format!("SVD did not converge for N = {n}")))?;
    let mut lambdas: Vec<f64> = svd.singular_values.iter().copied().collect();
    if lambdas.iter().any(|l| !l.is_finite()) {
        return Err(Error::Eigensolver(format!("non-finite singular value for N = {n}")));
    }
    lambdas.sort_by(f64::total_cmp);
    refine_smallest(p, &mut lambdas);
    Ok(SpectrumResult::from_lambdas(lambdas))
}

/// ln|det M| by the three-term recurrence D_k = α D_{k-1} - (1-γ²)/4 D_{k-2},
/// rescaled to stay in range. -inf when M is singular.
fn log_abs_det(p: ModelParams, n: usize) -> f64 {
    let c = 0.25 * (1.0 - p.gamma) * (1.0 + p.gamma);
    let (mut prev, mut cur, mut log_scale) = (1.0f64, p.alpha, 0.0f64);
    for _ in 1..n {
        let next = p.alpha * cur - c * prev;
        prev = cur;
        cur = next;
        let big = cur.abs().max(prev.abs());
        if big > 1e100 || (big < 1e-100 && big > 0.0) {
            prev /= big;
            cur /= big;
            log_scale += big.ln();
        }
    }
    cur.abs().ln() + log_scale
}

/// The SVD resolves Λ only to ~ε‖M‖ absolutely, which flattens the
/// exponentially small edge-mode energy of long chains into noise. When one
/// Λ is isolated near zero, Λ_min = |det M| / Π_{k≥2} Λ_k recovers it to
/// full relative accuracy. Expects `lambdas` ascending.
fn refine_smallest(p: ModelParams, lambdas: &mut [f64]) {
    if lambdas.len() < 2 {
        return;
    }
    let top = lambdas[lambdas.len() - 1];
    if !(lambdas[0] < 1e-8 * top && lambdas[1] > 1e-4 * top) {
        return;
    }
    let log_rest: f64 = lambdas[1..].iter().map(|l| l.ln()).sum();
    lambdas[0] = (log_abs_det(p, lambdas.len()) - log_rest).exp();
}

pub fn spectrum(p: ModelParams, chain: ChainSpec) -> Result<SpectrumResult> {
    match chain.boundary {
        Boundary::Open => open_chain_spectrum(p, chain.n_sites),
        Boundary::CCyclic => cyclic_lambdas(p, chain.n_sites),
    }
}

/// Δ_N = min Λ_k / N.
pub fn gap(p: ModelParams, chain: ChainSpec) -> Result<f64> {
    Ok(spectrum(p, chain)?.gap)
}

/// All 2^N many-body levels E_g + Σ_{k∈S} Λ_k, ascending.
pub fn many_body_levels(s: &SpectrumResult) -> Result<Vec<f64>> {
    let n = s.n_sites();
    if n > MAX_RECONSTRUCT_SITES {
        return Err(Error::InvalidChain(format!("2^{n} levels requested, limit is 2^{MAX_RECONSTRUCT_SITES}")));
    }
    let mut levels = Vec::with_capacity(1 << n);
    levels.push(s.ground_energy);
    for &l in &s.lambdas {
        let len = levels.len();
        for i in 0..len {
            levels.push(levels[i] + l);
        }
    }
    levels.sort_by(f64::total_cmp);
    Ok(levels)
}

/// lim N·Δ_N for the c-cyclic chain.
///
/// Λ² = (1-γ²) c² - 2αc + α² + γ² with c = cos k is minimized at
/// c* = α/(1-γ²), inside [-1, 1] only for α ≤ 1 - γ².
pub fn gap_thermo_limit(p: ModelParams) -> f64 {
    let (a, g) = p.folded();
    let one_m_g2 = (1.0 - g) * (1.0 + g);
    if one_m_g2 > 0.0 && a <= one_m_g2 {
        g * ((one_m_g2 - a * a) / one_m_g2).max(0.0).sqrt()
    } else {
        (a - 1.0).abs()
    }
}

/// min_k Λ(k) by a 10⁵-point grid on [0, π] and golden-section refinement
/// around the best node.
pub fn gap_thermo_limit_direct(p: ModelParams) -> f64 {
    const GRID: usize = 100_000;
    let q = {
        let (a, g) = p.folded();
        ModelParams { alpha: a, gamma: g }
    };
    let h = PI / GRID as f64;
    let (best, _) = (0..=GRID).map(|i| (i, dispersion(q, i as f64 * h))).min_by(|x, y| x.1.total_cmp(&y.1)).expect("grid is nonempty");
    let lo = best.saturating_sub(1) as f64 * h;
    let hi = (best + 1).min(GRID) as f64 * h;
    let f = |k: f64| dispersion(q, k);
    let refined = golden_min(&f, lo, hi, 1e-12);
    refined.min(f(0.0)).min(f(PI))
}

fn golden_min<F: Fn(f64) -> f64>(f: &F, mut a: f64, mut b: f64, tol: f64) -> f64 {
    let r = 0.5 * (5f64.sqrt() - 1.0);
    let mut c = b - r * (b - a);
    let mut d = a + r * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    while (b - a).abs() > tol {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - r * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + r * (b - a);
            fd = f(d);
        }
    }
    fc.min(fd)
}
