use crate::closedform::ModelParams;
use crate::error::{Error, Result};
use crate::parallel::Execution;
use crate::spectrum::{gap, Boundary, ChainSpec};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GapPoint {
    pub n: usize,
    /// Δ_N = min Λ_k / N
    pub gap: f64,
}

/// Δ_N for each N in `ns` (strictly ascending).
pub fn gap_series(p: ModelParams, ns: &[usize], boundary: Boundary, exec: Execution) -> Result<Vec<GapPoint>> {
    if ns.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Invalid("chain lengths must be strictly ascending".into()));
    }
    let chains = ns.iter().map(|&n| ChainSpec::new(n, boundary)).collect::<Result<Vec<_>>>()?;
    exec.map(&chains, |&c| gap(p, c).map(|g| GapPoint { n: c.n_sites, gap: g })).into_iter().collect()
}

/// About `count` integers spaced geometrically from `lo` to `hi`, deduplicated.
pub fn geometric_ladder(lo: usize, hi: usize, count: usize) -> Vec<usize> {
    if count < 2 || lo >= hi {
        return vec![lo];
    }
    let ratio = (hi as f64 / lo as f64).ln() / (count - 1) as f64;
    let mut ns: Vec<usize> = (0..count).map(|i| (lo as f64 * (ratio * i as f64).exp()).round() as usize).collect();
    ns[count - 1] = hi;
    ns.dedup();
    ns
}

/// Least-squares fit Δ_N = a/N + Δ∞.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GapFit {
    pub a: f64,
    pub delta_inf: f64,
    pub stderr_a: f64,
    pub stderr_delta_inf: f64,
    /// Root-mean-square residual.
    pub residual_norm: f64,
    pub n_points: usize,
}

/// Ordinary least squares of Δ_N against 1/N with standard errors from the
/// residual variance.
pub fn fit_gap_scaling(points: &[GapPoint]) -> Result<GapFit> {
    let n = points.len();
    if n < 3 {
        return Err(Error::Invalid(format!("gap fit needs at least 3 points, got {n}")));
    }
    if points.iter().all(|p| p.n == points[0].n) {
        return Err(Error::RankDeficient("all chain lengths are equal".into()));
    }
    let xs: Vec<f64> = points.iter().map(|p| 1.0 / p.n as f64).collect();
    let ys: Vec<f64> = points.iter().map(|p| p.gap).collect();
    let nf = n as f64;
    let xm = xs.iter().sum::<f64>() / nf;
    let ym = ys.iter().sum::<f64>() / nf;
    let sxx: f64 = xs.iter().map(|x| (x - xm).powi(2)).sum();
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - xm) * (y - ym)).sum();
    let a = sxy / sxx;
    let delta_inf = ym - a * xm;
    let ssr: f64 = xs.iter().zip(&ys).map(|(x, y)| (y - delta_inf - a * x).powi(2)).sum();
    let sigma2 = ssr / (nf - 2.0);
    Ok(GapFit {
        a,
        delta_inf,
        stderr_a: (sigma2 / sxx).sqrt(),
        stderr_delta_inf: (sigma2 * (1.0 / nf + xm * xm / sxx)).sqrt(),
        residual_norm: (ssr / nf).sqrt(),
        n_points: n,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RangeFit {
    pub n_min: usize,
    pub n_max: usize,
    pub fit: GapFit,
}

/// The fit over all points and over the lower and upper halves of the N
/// range (when each half has at least 3 points).
pub fn range_sensitivity(points: &[GapPoint]) -> Result<Vec<RangeFit>> {
    let mut out = Vec::new();
    let mut push = |pts: &[GapPoint]| -> Result<()> {
        out.push(RangeFit { n_min: pts[0].n, n_max: pts[pts.len() - 1].n, fit: fit_gap_scaling(pts)? });
        Ok(())
    };
    push(points)?;
    let half = points.len() / 2;
    if half >= 3 {
        push(&points[..half])?;
        push(&points[points.len() - half..])?;
    }
    Ok(out)
}

/// Interior strict local minima.
pub fn count_local_minima(values: &[f64]) -> usize {
    values.windows(3).filter(|w| w[1] < w[0] && w[1] < w[2]).count()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn synthetic(a: f64, d: f64, ns: &[usize]) -> Vec<GapPoint> {
        ns.iter().map(|&n| GapPoint { n, gap: a / n as f64 + d }).collect()
    }

    #[test]
    fn exact_line_is_recovered() {
        let fit = fit_gap_scaling(&synthetic(0.5, 0.0, &[50, 100, 200, 400, 1000])).unwrap();
        assert!((fit.a - 0.5).abs() < 1e-14);
        assert!(fit.delta_inf.abs() < 1e-16);
        assert!(fit.residual_norm < 1e-17);
        let fit = fit_gap_scaling(&synthetic(0.3, 2e-3, &[10, 20, 30])).unwrap();
        assert!((fit.a - 0.3).abs() < 1e-13 && (fit.delta_inf - 2e-3).abs() < 1e-15);
    }

    #[test]
    fn fit_errors() {
        let same = synthetic(0.5, 0.0, &[10, 10, 10]);
        assert!(matches!(fit_gap_scaling(&same), Err(Error::RankDeficient(_))));
        assert!(fit_gap_scaling(&synthetic(0.5, 0.0, &[10, 20])).is_err());
    }

    #[test]
    fn standard_errors_nonnegative_with_noise() {
        let mut pts = synthetic(0.5, 0.0, &[50, 80, 120, 200, 350, 600, 1000]);
        for (i, p) in pts.iter_mut().enumerate() {
            p.gap += if i % 2 == 0 { 1e-6 } else { -1e-6 };
        }
        let fit = fit_gap_scaling(&pts).unwrap();
        assert!(fit.stderr_a > 0.0 && fit.stderr_delta_inf > 0.0);
        assert!((fit.a - 0.5).abs() < 10.0 * fit.stderr_a);
    }

    #[test]
    fn ladder() {
        let l = geometric_ladder(50, 1000, 5);
        assert_eq!(l.first(), Some(&50));
        assert_eq!(l.last(), Some(&1000));
        assert!(l.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(l.len(), 5);
    }

    #[test]
    fn cyclic_strong_field_series() {
        let p = ModelParams::new(1.5, 0.6).unwrap();
        let s = gap_series(p, &[2, 4, 10, 100], Boundary::CCyclic, Execution::Parallel).unwrap();
        for pt in s {
            assert!((pt.gap * pt.n as f64 - 0.5).abs() < 1e-14);
        }
        assert!(gap_series(p, &[10, 4], Boundary::CCyclic, Execution::Sequential).is_err());
    }

    #[test]
    fn sensitivity_reports_halves() {
        let pts = synthetic(0.5, 0.0, &[50, 70, 100, 140, 200, 280, 400]);
        let r = range_sensitivity(&pts).unwrap();
        assert_eq!(r.len(), 3);
        assert_eq!((r[1].n_min, r[1].n_max), (50, 100));
        assert_eq!((r[2].n_min, r[2].n_max), (200, 400));
    }

    #[test]
    fn minima() {
        assert_eq!(count_local_minima(&[3.0, 1.0, 2.0, 0.5, 4.0]), 2);
        assert_eq!(count_local_minima(&[1.0, 2.0]), 0);
    }
}
