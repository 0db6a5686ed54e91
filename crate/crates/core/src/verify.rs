//! Oracle cross-check suite. Each check compares a closed form or a
//! free-fermion result against an independent computation at a fixed
//! tolerance; `Level::Quick` shrinks grids but never loosens tolerances.

use std::f64::consts::PI;
use std::fmt;
use std::time::{Duration, Instant};

use crate::analysis::{count_local_minima, fit_gap_scaling, gap_series, geometric_ladder, GapFit};
use crate::closedform::{
    chi_expansion_near_critical, circle_derivative, classify, d2e_dgamma2_expansion, ground_energy, ground_energy_by_branch, magnetization,
    susceptibility, ChiTerms, ModelParams, OpenRegion, PhaseRegion,
};
use crate::elliptic::{e_deriv_at_zero_exact, e_series_coeff_exact, ellip_e, ellip_k, RationalPi};
use crate::error::Result;
use crate::exactspin;
use crate::parallel::Execution;
use crate::quadoracle::{
    d2e_dgamma2_integral, derivative, derivative_with, ground_energy_integral, DerivativeOptions, QuadratureSpec, Stencil,
};
use crate::spectrum::{cyclic_lambdas, gap_thermo_limit, gap_thermo_limit_direct, many_body_levels, open_chain_spectrum, Boundary};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Level {
    Quick,
    Full,
}

#[derive(Debug, Clone)]
pub struct CheckResult {
    pub id: u32,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed: Duration,
}

impl fmt::Display for CheckResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} [{:>2}] {}: {} ({:.2?})", if self.passed { "PASS" } else { "FAIL" }, self.id, self.name, self.detail, self.elapsed)
    }
}

type CheckFn = fn(Level, Execution) -> Result<(bool, String)>;

pub const CHECKS: &[(u32, &str, CheckFn)] = &[
    (1, "closed form vs quadrature", closed_form_vs_quadrature),
    (2, "energy on the circle", circle_value),
    (3, "smoothness across the circle", circle_smoothness),
    (4, "critical expansions", critical_expansions),
    (5, "susceptibility sign", susceptibility_sign),
    (6, "free-fermion reconstruction", free_fermion_exactness),
    (7, "open-chain gap scaling", gap_scaling),
    (8, "thermodynamic gap limit", thermo_gap),
    (9, "gap oscillations", gap_oscillations),
    (10, "elliptic identities", elliptic_identities),
];

pub fn run(id: u32, level: Level, exec: Execution) -> Option<CheckResult> {
    let &(id, name, f) = CHECKS.iter().find(|c| c.0 == id)?;
    let start = Instant::now();
    let (passed, detail) = match f(level, exec) {
        Ok(r) => r,
        Err(e) => (false, format!("error: {e}")),
    };
    Some(CheckResult { id, name, passed, detail, elapsed: start.elapsed() })
}

pub fn run_all(level: Level, exec: Execution) -> Vec<CheckResult> {
    CHECKS.iter().filter_map(|c| run(c.0, level, exec)).collect()
}

/// Radical-inverse sequence in `base`, starting at index 1.
pub fn halton(index: usize, base: usize) -> f64 {
    let (mut i, mut f, mut r) = (index, 1.0, 0.0);
    while i > 0 {
        f /= base as f64;
        r += f * (i % base) as f64;
        i /= base;
    }
    r
}

fn p(a: f64, g: f64) -> ModelParams {
    ModelParams { alpha: a, gamma: g }
}

fn closed_form_vs_quadrature(level: Level, exec: Execution) -> Result<(bool, String)> {
    let n = if level == Level::Full { 500 } else { 100 };
    let spec = QuadratureSpec::new(1e-13, 50)?;
    let pts: Vec<ModelParams> = (1..=n).map(|i| p(2.0 * halton(i, 2), 1.0 - halton(i, 3))).collect();
    let diffs = exec.map(&pts, |&q| ground_energy_integral(q, &spec).map(|r| (ground_energy(q) - r.value).abs()));
    let diffs = diffs.into_iter().collect::<Result<Vec<_>>>()?;
    let worst = diffs.iter().copied().fold(0.0, f64::max);
    let count = |r: PhaseRegion| pts.iter().filter(|&&q| classify(q) == r).count();
    let (d, w, s) = (count(PhaseRegion::DiskInterior), count(PhaseRegion::AnnulusWeakField), count(PhaseRegion::StrongField));
    Ok((
        worst < 1e-10 && d > 0 && w > 0 && s > 0,
        format!("{n} points (disk {d}, annulus {w}, strong {s}), max |diff| = {worst:.2e}, tol 1e-10"),
    ))
}

fn circle_value(_: Level, _: Execution) -> Result<(bool, String)> {
    let spec = QuadratureSpec::default();
    let mut worst: f64 = 0.0;
    for i in 0..50 {
        let th = (i as f64 + 0.5) * PI / 100.0;
        let q = p(th.cos(), th.sin());
        for v in [
            ground_energy(q),
            ground_energy_by_branch(q, OpenRegion::DiskInterior)?,
            ground_energy_by_branch(q, OpenRegion::AnnulusWeakField)?,
            ground_energy_integral(q, &spec)?.value,
        ] {
            worst = worst.max((v + 0.5).abs());
        }
    }
    Ok((worst < 1e-11, format!("50 points, both adjacent branch formulas and quadrature, max |e + 1/2| = {worst:.2e}, tol 1e-11")))
}

/// One-sided estimate of ∂^order ε/∂α^order at the circle from `side`,
/// computed as -∂^{order-1}⟨M⟩.
pub fn circle_one_sided(order: u32, gamma: f64, side: Stencil) -> Result<crate::quadoracle::DerivativeEstimate> {
    let ac = ((1.0 - gamma) * (1.0 + gamma)).sqrt();
    let m = order - 1;
    let reach = (1.0 - ac).min(ac);
    let h0 = 0.5 * reach / (m + 1) as f64;
    let f = |a: f64| -magnetization(p(a, gamma));
    derivative_with(&f, ac, m, h0, side, &DerivativeOptions::default())
}

fn circle_smoothness(level: Level, _: Execution) -> Result<(bool, String)> {
    let max_order = if level == Level::Full { 6 } else { 4 };
    let mut ok = true;
    let mut worst_ratio: f64 = 0.0;
    let mut worst_rel: f64 = 0.0;
    let mut chi_rel: f64 = 0.0;
    let mut fd_chi_rel: f64 = 0.0;
    for &g in &[0.3f64, 0.6, 0.8] {
        let target = 1.0 / (4.0 * g);
        let on_circle = p((1.0 - g * g).sqrt(), g);
        for chi in [-circle_derivative(2, g)?, susceptibility(on_circle)?] {
            chi_rel = chi_rel.max((chi / target - 1.0).abs());
        }
        for order in 2..=max_order {
            let exact = circle_derivative(order, g)?;
            for side in [Stencil::Backward, Stencil::Forward] {
                let est = circle_one_sided(order, g, side)?;
                let err = (est.value - exact).abs();
                ok &= err <= est.error;
                worst_ratio = worst_ratio.max(err / est.error);
                worst_rel = worst_rel.max(err / exact.abs());
                if order == 2 {
                    fd_chi_rel = fd_chi_rel.max((-est.value * 4.0 * g - 1.0).abs());
                }
            }
        }
    }
    ok &= chi_rel < 1e-6;
    Ok((
        ok,
        format!(
            "orders 2..{max_order}, both sides: max |err|/estimate = {worst_ratio:.2} (<= 1), max rel err {worst_rel:.1e}; chi on circle vs 1/(4 gamma): rel {chi_rel:.1e} (tol 1e-6, one-sided differences {fd_chi_rel:.1e})"
        ),
    ))
}

/// True when `errs` shrink monotonically (or sit at the `floor`) and
/// err/(d |ln d|) never grows beyond 5% over its first value.
fn shrinks_like_d_log_d(ds: &[f64], errs: &[f64], floor: f64) -> bool {
    let scaled: Vec<f64> = ds.iter().zip(errs).map(|(d, e)| e / (d * d.ln().abs())).collect();
    let monotone = errs.windows(2).all(|w| w[1] < w[0] || w[1] <= floor);
    let bounded = scaled.iter().zip(errs).all(|(&r, &e)| r <= 1.05 * scaled[0] || e <= floor);
    monotone && bounded
}

fn critical_expansions(level: Level, _: Execution) -> Result<(bool, String)> {
    let ds: Vec<f64> =
        if level == Level::Full { (2..=6).map(|e| 10f64.powi(-e)).collect() } else { (2..=4).map(|e| 10f64.powi(-e)).collect() };
    let mut ok = true;
    let mut lines = Vec::new();
    for &g in &[1.0 / 3.0, 1.0] {
        for side in [-1.0, 1.0] {
            let errs = ds
                .iter()
                .map(|&d| {
                    let q = p(1.0 + side * d, g);
                    let exact = susceptibility(q)?;
                    Ok((chi_expansion_near_critical(q, ChiTerms::Full)? - exact).abs() / exact)
                })
                .collect::<Result<Vec<f64>>>()?;
            let pass = shrinks_like_d_log_d(&ds, &errs, 1e-13);
            ok &= pass;
            lines.push(format!(
                "chi g={g:.3} {}: {:.1e}->{:.1e}",
                if side < 0.0 { "below" } else { "above" },
                errs[0],
                errs[errs.len() - 1]
            ));
        }
    }
    let spec = QuadratureSpec::default();
    for &a in &[0.0, 0.5] {
        let errs = ds
            .iter()
            .map(|&g| {
                let q = p(a, g);
                let exact = d2e_dgamma2_integral(q, &spec)?.value;
                Ok((d2e_dgamma2_expansion(q)? - exact).abs() / exact.abs())
            })
            .collect::<Result<Vec<f64>>>()?;
        let pass = shrinks_like_d_log_d(&ds, &errs, 1e-12);
        ok &= pass;
        lines.push(format!("d2e/dg2 a={a}: {:.1e}->{:.1e}", errs[0], errs[errs.len() - 1]));
    }
    Ok((ok, lines.join("; ")))
}

fn susceptibility_sign(level: Level, _: Execution) -> Result<(bool, String)> {
    let n = if level == Level::Full { 100 } else { 30 };
    let mut pts = Vec::new();
    let mut i = 1;
    while pts.len() < n {
        let q = p(2.0 * halton(i, 2), 0.05 + 0.95 * halton(i, 3));
        i += 1;
        if (q.alpha - 1.0).abs() >= 0.05 {
            pts.push(q);
        }
    }
    let mut worst: f64 = 0.0;
    let mut all_positive = true;
    for &q in &pts {
        let h0 = 0.1f64.min((q.alpha - 1.0).abs() / 4.0);
        let e = |a: f64| ground_energy(p(a, q.gamma));
        let fd = -derivative(&e, q.alpha, 2, h0, Stencil::Central)?.value;
        let chi = susceptibility(q)?;
        all_positive &= chi > 0.0;
        worst = worst.max((chi - fd).abs());
    }
    let strong = pts.iter().filter(|&&q| classify(q) == PhaseRegion::StrongField).count();
    Ok((
        worst < 1e-7 && all_positive && strong > 0,
        format!("{n} points ({strong} strong-field), max |chi + d2e/da2| = {worst:.2e}, tol 1e-7, all chi > 0: {all_positive}"),
    ))
}

pub const FREE_FERMION_POINTS: [(f64, f64); 5] = [(0.3, 0.3), (0.9, 0.8), (1.5, 0.6), (0.6, 0.8), (0.2, -0.7)];

fn free_fermion_exactness(level: Level, exec: Execution) -> Result<(bool, String)> {
    let sizes: &[usize] = if level == Level::Full { &[4, 6, 8, 10] } else { &[4, 6, 8] };
    let mut worst_level: f64 = 0.0;
    let mut worst_trace: f64 = 0.0;
    for &n in sizes {
        for &(a, g) in &FREE_FERMION_POINTS {
            let q = p(a, g);
            let spin = exactspin::full_spectrum(&exactspin::build(q, n, exec)?)?;
            let fermion = many_body_levels(&open_chain_spectrum(q, n)?)?;
            let dl = spin.iter().zip(&fermion).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max);
            worst_level = worst_level.max(dl);
            let dim = (1usize << n) as f64;
            worst_trace = worst_trace.max(fermion.iter().sum::<f64>().abs() / dim);
        }
    }
    Ok((
        worst_level < 1e-9 && worst_trace < 1e-9,
        format!("N in {sizes:?}, 5 points: max level diff {worst_level:.2e}, max |trace|/2^N {worst_trace:.2e}, tol 1e-9"),
    ))
}

/// Open-chain fits over the default geometric ladder.
pub fn strong_field_fits(level: Level, exec: Execution) -> Result<Vec<((f64, f64), GapFit)>> {
    let ns = if level == Level::Full { geometric_ladder(50, 1000, 10) } else { geometric_ladder(50, 400, 6) };
    [(1.5, 0.6), (1.3, 0.5)]
        .iter()
        .map(|&(a, g)| Ok(((a, g), fit_gap_scaling(&gap_series(p(a, g), &ns, Boundary::Open, exec)?)?)))
        .collect()
}

fn gap_scaling(level: Level, exec: Execution) -> Result<(bool, String)> {
    let mut ok = true;
    let mut lines = Vec::new();
    for ((a, g), fit) in strong_field_fits(level, exec)? {
        let target = a - 1.0;
        let rel = (fit.a - target).abs() / target;
        let a_ok = rel < 0.02;
        let d_ok = fit.delta_inf.abs() < 1e-6;
        ok &= a_ok && d_ok;
        lines.push(format!(
            "({a},{g}): a = {:.5} (rel {rel:.1e}, tol 2e-2, {}), delta_inf = {:.2e} +- {:.1e} (tol 1e-6, {})",
            fit.a,
            if a_ok { "ok" } else { "off" },
            fit.delta_inf,
            fit.stderr_delta_inf,
            if d_ok { "ok" } else { "off" }
        ));
    }
    Ok((ok, lines.join("; ")))
}

pub const THERMO_POINTS: [(f64, f64); 20] = [
    // 1 - γ² < α < sqrt(1 - γ²)
    (0.5, 0.8),
    (0.7, 0.6),
    (0.8, 0.5),
    (0.0, 0.5),
    (0.0, 1.0),
    (0.1, 0.2),
    (0.2, 0.9),
    (0.3, 0.3),
    (0.3, 0.7),
    (0.4, 0.5),
    (0.5, 0.1),
    (0.6, 0.4),
    (0.9, 0.1),
    (0.95, 0.3),
    (1.0, 0.5),
    (1.2, 0.2),
    (1.5, 0.6),
    (1.5, 1.0),
    (2.0, 0.4),
    (0.3, 0.0),
];

fn thermo_gap(level: Level, exec: Execution) -> Result<(bool, String)> {
    let n = if level == Level::Full { 100_000 } else { 20_000 };
    let results = exec.map(&THERMO_POINTS, |&(a, g)| -> Result<(f64, f64, f64)> {
        let q = p(a, g);
        let finite = cyclic_lambdas(q, n)?.min_lambda();
        Ok((finite, gap_thermo_limit(q), gap_thermo_limit_direct(q)))
    });
    let mut worst: f64 = 0.0;
    let mut worst_direct: f64 = 0.0;
    for r in results {
        let (finite, closed, direct) = r?;
        worst = worst.max((finite - closed).abs());
        worst_direct = worst_direct.max((direct - closed).abs());
    }
    Ok((
        worst < 1e-4 && worst_direct < 1e-8,
        format!("20 points (3 in the threshold band), N = {n}: max |N gap - limit| = {worst:.2e} (tol 1e-4), max |direct - limit| = {worst_direct:.2e}"),
    ))
}

pub const OSCILLATION_POINTS: [(f64, f64); 3] = [(0.2, 0.02), (0.4, 0.02), (0.6, 0.02)];

fn gap_oscillations(level: Level, exec: Execution) -> Result<(bool, String)> {
    let g: f64 = 0.6;
    let ac = ((1.0 - g) * (1.0 + g)).sqrt();
    let alphas: Vec<f64> = (1..=801).map(|i| ac * i as f64 / 802.0).collect();
    let mut counts = Vec::new();
    for &n in &[5usize, 10, 20, 50] {
        let gaps =
            exec.map(&alphas, |&a| crate::spectrum::gap(p(a, g), crate::spectrum::ChainSpec { n_sites: n, boundary: Boundary::Open }));
        let gaps = gaps.into_iter().collect::<Result<Vec<f64>>>()?;
        counts.push(count_local_minima(&gaps));
    }
    let mut ok = counts.windows(2).all(|w| w[0] <= w[1]);
    let ns: &[usize] = if level == Level::Full { &[100, 200, 400, 800] } else { &[100, 200, 400] };
    let mut lines = vec![format!("minima at gamma=0.6 for N=5,10,20,50: {counts:?}")];
    for &(a, g) in &OSCILLATION_POINTS {
        let s = gap_series(p(a, g), ns, Boundary::Open, exec)?;
        let gaps: Vec<f64> = s.iter().map(|x| x.gap).collect();
        let decreasing = gaps.windows(2).all(|w| w[1] < w[0]);
        ok &= decreasing;
        lines.push(format!("({a},{g}): {}", gaps.iter().map(|x| format!("{x:.2e}")).collect::<Vec<_>>().join(" > ")));
    }
    Ok((ok, lines.join("; ")))
}

fn elliptic_identities(_: Level, _: Execution) -> Result<(bool, String)> {
    let mut worst: f64 = 0.0;
    for i in 1..=100 {
        let k = i as f64 / 101.0;
        let kp = ((1.0 - k) * (1.0 + k)).sqrt();
        let (kk, ee, kk1, ee1) = (ellip_k(k)?, ellip_e(k)?, ellip_k(kp)?, ellip_e(kp)?);
        worst = worst.max((ee * kk1 + ee1 * kk - kk * kk1 - PI / 2.0).abs());
    }
    let want = [RationalPi { num: 1, den: 2 }, RationalPi { num: -1, den: 8 }, RationalPi { num: -3, den: 128 }];
    let mut exact = true;
    for (m, w) in want.iter().enumerate() {
        let c = e_series_coeff_exact(m as u32)?;
        let d = e_deriv_at_zero_exact(m as u32)?;
        let fact: i128 = (1..=m as i128).product();
        exact &= c == *w && d.num * c.den as i128 == fact * c.num * d.den as i128;
    }
    Ok((
        worst < 1e-11 && exact,
        format!("Legendre relation on 100 moduli: max residual {worst:.2e} (tol 1e-11); series coefficients 1/2, -1/8, -3/128 (times pi) exact: {exact}"),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn halton_prefix() {
        assert_eq!(halton(1, 2), 0.5);
        assert_eq!(halton(2, 2), 0.25);
        assert_eq!(halton(3, 2), 0.75);
        assert!((halton(1, 3) - 1.0 / 3.0).abs() < 1e-16);
    }

    #[test]
    fn quick_cheap_checks_pass() {
        for id in [1, 2, 5, 10] {
            let r = run(id, Level::Quick, Execution::Parallel).unwrap();
            assert!(r.passed, "{r}");
        }
    }

    #[test]
    fn band_points_are_in_the_band() {
        for &(a, g) in &THERMO_POINTS[..3] {
            let one_m_g2: f64 = 1.0 - g * g;
            assert!(one_m_g2 < a && a < one_m_g2.sqrt());
        }
    }

    #[test]
    fn unknown_id() {
        assert!(run(11, Level::Quick, Execution::Sequential).is_none());
    }
}
