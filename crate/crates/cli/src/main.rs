//! `xychain`: ground-state energy, response functions and finite-chain gaps
//! of the anisotropic XY chain from the command line.
//!
//! Exit status: 0 on success, 2 when the input is rejected before any
//! computation, 1 when a computation fails or a verification check fails.

// NaN must fail every range check.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod commands;
mod config;

use std::ffi::OsString;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{CommandFactory, Parser, Subcommand};

use commands::{DerivativesArgs, EnergyArgs, ExpandArgs, FigureArgs, GapArgs, ScanArgs, VerifyArgs};

pub const OUT_DIR_ENV: &str = "XYCHAIN_OUT_DIR";

#[derive(Debug, Parser)]
#[command(name = "xychain", version, about = "Anisotropic XY chain in a transverse field: closed forms, oracles and finite chains")]
pub struct Cli {
    /// Flat `key = value` run file; explicit flags override its entries.
    #[arg(long, value_name = "FILE")]
    config: Option<PathBuf>,

    /// Worker threads for parallel sweeps (default: all available cores).
    #[arg(long)]
    threads: Option<usize>,

    /// Evaluate sweeps on the calling thread only.
    #[arg(long)]
    sequential: bool,

    /// Directory for relative output paths and figure files
    /// (default: $XYCHAIN_OUT_DIR, else the working directory).
    #[arg(long, value_name = "DIR")]
    out_dir: Option<PathBuf>,

    #[command(subcommand)]
    command: Option<Cmd>,
}

#[derive(Debug, Subcommand)]
pub enum Cmd {
    /// Ground-state energy at one point by closed form, quadrature and a long cyclic chain.
    Energy(EnergyArgs),
    /// Evaluate a quantity on an (alpha, gamma) grid and write CSV.
    Scan(ScanArgs),
    /// Table of alpha-derivatives of the energy on the circle alpha^2 + gamma^2 = 1.
    Derivatives(DerivativesArgs),
    /// Open or cyclic chain gap against N, with the a/N + offset fit.
    Gap(GapArgs),
    /// Run the cross-check suite and report PASS/FAIL per check.
    Verify(VerifyArgs),
    /// Critical-line expansions against exact values.
    Expand(ExpandArgs),
    /// Reproduce a figure: data CSV plus a matplotlib script.
    Figure(FigureArgs),
}

/// Failure classes mapped to exit codes.
#[derive(Debug)]
pub enum Failure {
    Invalid(anyhow::Error),
    Compute(anyhow::Error),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Invalid(_) => 2,
            Failure::Compute(_) => 1,
        }
    }
}

impl From<xychain::error::Error> for Failure {
    fn from(e: xychain::error::Error) -> Self {
        use xychain::error::Error as E;
        match e {
            E::Domain { .. } | E::Invalid(_) | E::InvalidChain(_) | E::OrderTooLarge { .. } => Failure::Invalid(e.into()),
            _ => Failure::Compute(e.into()),
        }
    }
}

pub type Outcome = Result<(), Failure>;

/// Where the subcommand name sits in `argv`, and the `--config` value if any.
/// Only global options may precede the subcommand.
fn locate(argv: &[OsString]) -> (Option<usize>, Option<PathBuf>) {
    let mut config = None;
    let mut i = 1;
    while i < argv.len() {
        let tok = argv[i].to_string_lossy();
        if !tok.starts_with('-') {
            return (Some(i), config);
        }
        if let Some(v) = tok.strip_prefix("--config=") {
            config = Some(PathBuf::from(v));
            i += 1;
        } else if tok == "--config" {
            config = argv.get(i + 1).map(PathBuf::from);
            i += 2;
        } else if tok == "--sequential" || tok.contains('=') || tok == "-h" || tok == "--help" || tok == "-V" || tok == "--version" {
            i += 1;
        } else {
            i += 2;
        }
    }
    (None, config)
}

/// Long flag names present on the command line.
fn explicit_keys(tokens: &[OsString]) -> Vec<String> {
    tokens.iter().filter_map(|t| t.to_str()?.strip_prefix("--").map(|k| k.split('=').next().unwrap_or(k).to_string())).collect()
}

/// Splices the run-file entries into `argv` and parses the result.
fn parse(argv: Vec<OsString>) -> Result<Cli, Failure> {
    let (sub_at, config_path) = locate(&argv);
    let Some(path) = config_path else {
        return Cli::try_parse_from(argv).map_err(clap_failure);
    };
    let file = config::load(&path).map_err(Failure::Invalid)?;
    let sub = match (sub_at, &file.command) {
        (Some(i), _) => argv[i].to_string_lossy().into_owned(),
        (None, Some(c)) => c.clone(),
        (None, None) => return Err(Failure::Invalid(anyhow::anyhow!("no command given on the command line or in {}", path.display()))),
    };
    let injected = config::to_args(&file, &Cli::command(), &sub, &explicit_keys(&argv)).map_err(Failure::Invalid)?;
    let split = sub_at.unwrap_or(argv.len());
    let mut full: Vec<OsString> = argv[..split].to_vec();
    full.extend(injected.global.into_iter().map(OsString::from));
    full.push(OsString::from(&sub));
    full.extend(injected.local.into_iter().map(OsString::from));
    if sub_at.is_some() {
        full.extend_from_slice(&argv[split + 1..]);
    }
    Cli::try_parse_from(full).map_err(clap_failure)
}

fn clap_failure(e: clap::Error) -> Failure {
    use clap::error::ErrorKind;
    if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
        let _ = e.print();
        std::process::exit(0);
    }
    Failure::Invalid(anyhow::anyhow!(e.render().to_string().trim_end().to_string()))
}

fn run(argv: Vec<OsString>) -> Outcome {
    let cli = parse(argv)?;
    let ctx = commands::Context::new(cli.out_dir.clone(), cli.threads, cli.sequential)?;
    match cli.command {
        None => Err(Failure::Invalid(anyhow::anyhow!("no command given; see --help"))),
        Some(Cmd::Energy(a)) => commands::energy(&ctx, &a),
        Some(Cmd::Scan(a)) => commands::scan(&ctx, &a),
        Some(Cmd::Derivatives(a)) => commands::derivatives(&a),
        Some(Cmd::Gap(a)) => commands::gap(&ctx, &a),
        Some(Cmd::Verify(a)) => commands::verify(&ctx, &a),
        Some(Cmd::Expand(a)) => commands::expand(&a),
        Some(Cmd::Figure(a)) => commands::figure(&ctx, &a),
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    match run(std::env::args_os().collect()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            let code = f.code();
            match f {
                Failure::Invalid(e) => eprintln!("error: {e:#}"),
                Failure::Compute(e) => eprintln!("computation failed: {e:#}"),
            }
            ExitCode::from(code)
        }
    }
}
