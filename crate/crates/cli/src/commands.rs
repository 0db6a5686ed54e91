use std::fs::{self, File};
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::str::FromStr;

use anyhow::{anyhow, Context as _};
use clap::{Args, Parser};
use xychain::analysis::{
    self, gap_series, geometric_ladder, plot_script, range_sensitivity, write_gap_csv, write_scan_csv, AxisRange, GapSeries, Quantity,
    ScanGrid,
};
use xychain::closedform::{
    chi_expansion_near_critical, circle_derivative, d2e_dgamma2_expansion, ground_energy, susceptibility, ChiTerms, ModelParams,
    MAX_CIRCLE_ORDER,
};
use xychain::parallel::Execution;
use xychain::quadoracle::{d2e_dgamma2_integral, ground_energy_integral, QuadratureSpec};
use xychain::spectrum::{cyclic_lambdas, Boundary, MAX_OPEN_SITES};
use xychain::verify::{self, Level, CHECKS};

use crate::{Cli, Failure, Outcome, OUT_DIR_ENV};

fn invalid(msg: impl std::fmt::Display) -> Failure {
    Failure::Invalid(anyhow!("{msg}"))
}

fn io_failure(e: io::Error, what: &Path) -> Failure {
    Failure::Compute(anyhow::Error::new(e).context(format!("writing {}", what.display())))
}

/// Settings shared by every subcommand.
pub struct Context {
    out_dir: Option<PathBuf>,
    pub exec: Execution,
}

impl Context {
    pub fn new(out_dir: Option<PathBuf>, threads: Option<usize>, sequential: bool) -> Result<Self, Failure> {
        let out_dir = out_dir.or_else(|| std::env::var_os(OUT_DIR_ENV).filter(|v| !v.is_empty()).map(PathBuf::from));
        match threads {
            Some(0) => return Err(invalid("--threads must be at least 1")),
            Some(n) => configure_pool(n)?,
            None => {}
        }
        let exec = if sequential { Execution::Sequential } else { Execution::Parallel };
        Ok(Self { out_dir, exec })
    }

    /// Relative paths are taken against the output directory, which is
    /// created on demand.
    fn resolve(&self, path: &Path) -> Result<PathBuf, Failure> {
        let full = match &self.out_dir {
            Some(dir) if path.is_relative() => dir.join(path),
            _ => path.to_path_buf(),
        };
        if let Some(parent) = full.parent().filter(|p| !p.as_os_str().is_empty()) {
            fs::create_dir_all(parent).map_err(|e| io_failure(e, parent))?;
        }
        Ok(full)
    }

    fn out_dir(&self) -> PathBuf {
        self.out_dir.clone().unwrap_or_else(|| PathBuf::from("."))
    }
}

#[cfg(feature = "parallel")]
fn configure_pool(n: usize) -> Result<(), Failure> {
    rayon::ThreadPoolBuilder::new().num_threads(n).build_global().map_err(|e| Failure::Compute(anyhow!("thread pool: {e}")))
}

#[cfg(not(feature = "parallel"))]
fn configure_pool(_: usize) -> Result<(), Failure> {
    log::warn!("built without the parallel feature; --threads has no effect");
    Ok(())
}

/// Writes CSV through `emit` to `output`, or to stdout when absent.
fn write_output<F>(ctx: &Context, output: Option<&Path>, emit: F) -> Outcome
where
    F: FnOnce(&mut dyn Write) -> io::Result<()>,
{
    match output {
        Some(path) => {
            let full = ctx.resolve(path)?;
            let file = File::create(&full).map_err(|e| io_failure(e, &full))?;
            let mut w = BufWriter::new(file);
            emit(&mut w).and_then(|_| w.flush()).map_err(|e| io_failure(e, &full))?;
            log::info!("wrote {}", full.display());
            Ok(())
        }
        None => {
            let stdout = io::stdout();
            let mut w = stdout.lock();
            emit(&mut w).map_err(|e| io_failure(e, Path::new("<stdout>")))
        }
    }
}

/// `lo:hi:count`, or a single value for a one-point axis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RangeArg(pub AxisRange);

impl FromStr for RangeArg {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let parts: Vec<&str> = s.split(':').collect();
        let num = |t: &str| t.trim().parse::<f64>().map_err(|_| format!("bad number '{t}' in range '{s}'"));
        let r = match parts.as_slice() {
            [v] => {
                let v = num(v)?;
                AxisRange::new(v, v, 1)
            }
            [lo, hi, n] => {
                let n = n.trim().parse::<usize>().map_err(|_| format!("bad count '{n}' in range '{s}'"))?;
                AxisRange::new(num(lo)?, num(hi)?, n)
            }
            _ => return Err(format!("expected lo:hi:count or a single value, got '{s}'")),
        };
        r.map(RangeArg).map_err(|e| e.to_string())
    }
}

/// `alpha,gamma`
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PointArg(pub ModelParams);

impl FromStr for PointArg {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let (a, g) = s.split_once(',').ok_or_else(|| format!("expected alpha,gamma, got '{s}'"))?;
        let num = |t: &str| t.trim().parse::<f64>().map_err(|_| format!("bad number '{t}' in point '{s}'"));
        ModelParams::new(num(a)?, num(g)?).map(PointArg).map_err(|e| e.to_string())
    }
}

fn params(alpha: f64, gamma: f64) -> Result<ModelParams, Failure> {
    Ok(ModelParams::new(alpha, gamma)?)
}

#[derive(Debug, Args)]
pub struct EnergyArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: f64,
    #[arg(long, allow_hyphen_values = true)]
    pub gamma: f64,
    /// Absolute tolerance of the quadrature.
    #[arg(long, default_value_t = 1e-13)]
    pub tol: f64,
    /// Maximum bisection depth of the quadrature.
    #[arg(long, default_value_t = 50)]
    pub max_depth: u32,
    /// Length of the cyclic chain whose energy per site is the Riemann sum.
    #[arg(long, default_value_t = 10_000)]
    pub cyclic_n: usize,
}

pub fn energy(_: &Context, a: &EnergyArgs) -> Outcome {
    let p = params(a.alpha, a.gamma)?;
    let spec = QuadratureSpec::new(a.tol, a.max_depth)?;
    let cyclic = cyclic_lambdas(p, a.cyclic_n)?;
    let closed = ground_energy(p);
    let quad = ground_energy_integral(p, &spec)?;
    let riemann = cyclic.ground_energy / a.cyclic_n as f64;
    println!("alpha = {}, gamma = {} ({})", p.alpha, p.gamma, p.region().name());
    println!("{:<24}{:>25.16e}", "closed form", closed);
    println!("{:<24}{:>25.16e}  (error estimate {:.1e}, {} evaluations)", "quadrature", quad.value, quad.error, quad.evaluations);
    println!("{:<24}{:>25.16e}", format!("cyclic N = {}", a.cyclic_n), riemann);
    println!("{:<24}{:>25.3e}", "|closed - quadrature|", (closed - quad.value).abs());
    println!("{:<24}{:>25.3e}", "|closed - cyclic|", (closed - riemann).abs());
    println!("{:<24}{:>25.3e}", "|quadrature - cyclic|", (quad.value - riemann).abs());
    Ok(())
}

#[derive(Debug, Args)]
pub struct ScanArgs {
    /// energy, magnetization, susceptibility, gap_<open|cyclic>_<N> or circle_derivative_<order>.
    #[arg(long)]
    pub quantity: String,
    /// lo:hi:count
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: RangeArg,
    /// lo:hi:count
    #[arg(long, allow_hyphen_values = true)]
    pub gamma: RangeArg,
    /// CSV destination (default: stdout).
    #[arg(long)]
    pub output: Option<PathBuf>,
}

pub fn scan(ctx: &Context, a: &ScanArgs) -> Outcome {
    let quantity: Quantity = a.quantity.parse()?;
    let grid = ScanGrid { alpha: a.alpha.0, gamma: a.gamma.0, quantity };
    grid.validate()?;
    let rows = analysis::scan(&grid, ctx.exec)?;
    write_output(ctx, a.output.as_deref(), |w| write_scan_csv(w, quantity, &rows))
}

#[derive(Debug, Args)]
pub struct DerivativesArgs {
    #[arg(long)]
    pub gamma: f64,
    /// Highest order in the table (from 2).
    #[arg(long, default_value_t = 6)]
    pub max_order: u32,
}

pub fn derivatives(a: &DerivativesArgs) -> Outcome {
    if !(a.gamma > 0.0 && a.gamma <= 1.0) {
        return Err(invalid(format!("--gamma must lie in (0, 1], got {}", a.gamma)));
    }
    if !(2..=MAX_CIRCLE_ORDER).contains(&a.max_order) {
        return Err(invalid(format!("--max-order must lie in 2..={MAX_CIRCLE_ORDER}, got {}", a.max_order)));
    }
    println!("# d^n e_g / d alpha^n at alpha = sqrt(1 - gamma^2), gamma = {}", a.gamma);
    println!("order,value");
    for order in 2..=a.max_order {
        println!("{order},{:.16e}", circle_derivative(order, a.gamma)?);
    }
    Ok(())
}

#[derive(Debug, Args)]
pub struct GapArgs {
    /// alpha,gamma; repeat for several series.
    #[arg(long = "point", required = true, allow_hyphen_values = true)]
    pub points: Vec<PointArg>,
    /// open or cyclic
    #[arg(long, default_value = "open")]
    pub boundary: Boundary,
    #[arg(long, default_value_t = 50)]
    pub n_min: usize,
    #[arg(long, default_value_t = 1000)]
    pub n_max: usize,
    /// Number of geometrically spaced chain lengths.
    #[arg(long, default_value_t = 10)]
    pub n_count: usize,
    /// CSV destination for the series (default: not written).
    #[arg(long)]
    pub output: Option<PathBuf>,
}

pub fn gap(ctx: &Context, a: &GapArgs) -> Outcome {
    if a.n_min < 2 || a.n_max <= a.n_min || a.n_count < 3 {
        return Err(invalid("need 2 <= n-min < n-max and n-count >= 3"));
    }
    if a.boundary == Boundary::Open && a.n_max > MAX_OPEN_SITES {
        return Err(invalid(format!("open chains are limited to {MAX_OPEN_SITES} sites")));
    }
    let ns = geometric_ladder(a.n_min, a.n_max, a.n_count);
    let mut all = Vec::with_capacity(a.points.len());
    for &PointArg(p) in &a.points {
        let pts = gap_series(p, &ns, a.boundary, ctx.exec)?;
        println!("alpha = {}, gamma = {}, {} boundary, N = {:?}", p.alpha, p.gamma, a.boundary, ns);
        for r in range_sensitivity(&pts)? {
            let f = r.fit;
            println!(
                "  N {:>5}..{:<5} a = {:.6} +- {:.1e}  delta_inf = {:+.3e} +- {:.1e}  rms residual {:.1e}",
                r.n_min, r.n_max, f.a, f.stderr_a, f.delta_inf, f.stderr_delta_inf, f.residual_norm
            );
        }
        all.push((p, pts));
    }
    if let Some(out) = &a.output {
        let series: Vec<GapSeries<'_>> =
            all.iter().map(|(p, pts)| GapSeries { alpha: p.alpha, gamma: p.gamma, boundary: a.boundary, points: pts }).collect();
        write_output(ctx, Some(out), |w| write_gap_csv(w, &series))?;
    }
    Ok(())
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Reduced grids for a fast run.
    #[arg(long)]
    pub quick: bool,
    /// Run only these check ids (comma separated).
    #[arg(long, value_delimiter = ',')]
    pub only: Vec<u32>,
    /// Skip these check ids (comma separated).
    #[arg(long, value_delimiter = ',')]
    pub skip: Vec<u32>,
}

pub fn verify(ctx: &Context, a: &VerifyArgs) -> Outcome {
    let known: Vec<u32> = CHECKS.iter().map(|c| c.0).collect();
    if let Some(bad) = a.only.iter().chain(&a.skip).find(|id| !known.contains(id)) {
        return Err(invalid(format!("unknown check id {bad} (known: {known:?})")));
    }
    let level = if a.quick { Level::Quick } else { Level::Full };
    let ids: Vec<u32> = known.into_iter().filter(|id| (a.only.is_empty() || a.only.contains(id)) && !a.skip.contains(id)).collect();
    let mut failed = Vec::new();
    for id in &ids {
        let r = verify::run(*id, level, ctx.exec).expect("id comes from CHECKS");
        println!("{r}");
        if !r.passed {
            failed.push(r.id);
        }
    }
    println!("{} of {} checks passed", ids.len() - failed.len(), ids.len());
    if failed.is_empty() {
        Ok(())
    } else {
        Err(Failure::Compute(anyhow!("checks {failed:?} failed")))
    }
}

#[derive(Debug, Args)]
pub struct ExpandArgs {
    /// Anisotropies for the susceptibility expansion around alpha = 1.
    #[arg(long, value_delimiter = ',', default_values_t = [1.0 / 3.0, 1.0])]
    pub gamma: Vec<f64>,
    /// Fields for the expansion of d^2 e_g / d gamma^2 around gamma = 0.
    #[arg(long, value_delimiter = ',', default_values_t = [0.0, 0.5])]
    pub alpha: Vec<f64>,
    /// Smallest distance from the critical line, as a power of ten.
    #[arg(long, default_value_t = 6)]
    pub min_exponent: i32,
}

pub fn expand(a: &ExpandArgs) -> Outcome {
    if !(2..=12).contains(&a.min_exponent) {
        return Err(invalid("--min-exponent must lie in 2..=12"));
    }
    let ds: Vec<f64> = (2..=a.min_exponent).map(|e| 10f64.powi(-e)).collect();
    println!("quantity,alpha,gamma,distance,exact,expansion,relative_error");
    for &g in &a.gamma {
        if !(g > 0.0 && g <= 1.0) {
            return Err(invalid(format!("expansion gamma must lie in (0, 1], got {g}")));
        }
        for side in [-1.0, 1.0] {
            for &d in &ds {
                let p = params(1.0 + side * d, g)?;
                let exact = susceptibility(p)?;
                let approx = chi_expansion_near_critical(p, ChiTerms::Full)?;
                println!("chi,{:.16e},{g},{d:e},{exact:.16e},{approx:.16e},{:.3e}", p.alpha, ((approx - exact) / exact).abs());
            }
        }
    }
    let spec = QuadratureSpec::default();
    for &al in &a.alpha {
        if !(al.abs() < 1.0) {
            return Err(invalid(format!("expansion alpha must satisfy |alpha| < 1, got {al}")));
        }
        for &d in &ds {
            let p = params(al, d)?;
            let exact = d2e_dgamma2_integral(p, &spec)?.value;
            let approx = d2e_dgamma2_expansion(p)?;
            println!("d2e_dgamma2,{al},{d:e},{d:e},{exact:.16e},{approx:.16e},{:.3e}", ((approx - exact) / exact).abs());
        }
    }
    Ok(())
}

#[derive(Debug, Args)]
pub struct FigureArgs {
    /// Figure id: 2, 3a, 3b, 4a, 4b, 5a, 5b, 5c or 5d.
    #[arg(long, required_unless_present = "list")]
    pub id: Option<String>,
    /// Print every figure id with its command line.
    #[arg(long)]
    pub list: bool,
}

pub fn figure(ctx: &Context, a: &FigureArgs) -> Outcome {
    if a.list {
        for f in analysis::FIGURES {
            println!("{:<3} xychain {}  # {}", f.id, f.command, f.title);
        }
        return Ok(());
    }
    let id = a.id.as_deref().unwrap_or_default();
    let fig = analysis::figure(id).ok_or_else(|| invalid(format!("unknown figure '{id}'")))?;
    let csv = PathBuf::from(format!("fig{}.csv", fig.id));
    let script = PathBuf::from(format!("fig{}.py", fig.id));
    let mut argv = vec!["xychain".to_string()];
    argv.extend(fig.command.split_whitespace().map(String::from));
    argv.extend(["--output".to_string(), csv.to_string_lossy().into_owned()]);
    let cli = Cli::try_parse_from(&argv).map_err(|e| Failure::Compute(anyhow!("figure preset does not parse: {e}")))?;
    match cli.command {
        Some(crate::Cmd::Scan(s)) => scan(ctx, &s)?,
        Some(crate::Cmd::Gap(g)) => gap(ctx, &g)?,
        other => return Err(Failure::Compute(anyhow!("figure preset maps to unexpected command {other:?}"))),
    }
    let dir = ctx.out_dir();
    let script_path = ctx.resolve(&script)?;
    let body = plot_script(fig, &dir.join(&csv).to_string_lossy(), &dir.join(format!("fig{}.png", fig.id)).to_string_lossy());
    fs::write(&script_path, body).with_context(|| format!("writing {}", script_path.display())).map_err(Failure::Compute)?;
    println!("wrote {} and {}", dir.join(&csv).display(), script_path.display());
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn range_syntax() {
        let r: RangeArg = "0:2:201".parse().unwrap();
        assert_eq!((r.0.lo, r.0.hi, r.0.count), (0.0, 2.0, 201));
        let single: RangeArg = "0.25".parse().unwrap();
        assert_eq!(single.0.values(), [0.25]);
        assert!("0:1".parse::<RangeArg>().is_err());
        assert!("0:1:1".parse::<RangeArg>().is_err());
        assert!("0:x:3".parse::<RangeArg>().is_err());
    }

    #[test]
    fn point_syntax() {
        let p: PointArg = "1.5,-0.6".parse().unwrap();
        assert_eq!((p.0.alpha, p.0.gamma), (1.5, -0.6));
        assert!("1.5".parse::<PointArg>().is_err());
        assert!("0.5,1.5".parse::<PointArg>().is_err());
    }

    #[test]
    fn every_figure_command_parses() {
        for f in analysis::FIGURES {
            let mut argv = vec!["xychain"];
            argv.extend(f.command.split_whitespace());
            let cli = Cli::try_parse_from(&argv).unwrap_or_else(|e| panic!("figure {}: {e}", f.id));
            assert!(matches!(cli.command, Some(crate::Cmd::Scan(_)) | Some(crate::Cmd::Gap(_))));
        }
    }
}
