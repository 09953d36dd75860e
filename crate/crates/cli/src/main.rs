//! Command-line front end: tabulate profiles and comparison constants,
//! and run the verification suites.
//!
//! Exit codes: 0 when the run (and, for `verify`, every grid verdict)
//! passes, 1 when a verification suite reports violations, 2 on usage or
//! domain errors.

mod report;
mod suites;
mod tables;
mod target;

use std::fs::File;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use report::{Payload, Report};
use suites::{Suite, SuiteOutcome, VerifyParams};
use target::TargetArgs;

#[derive(Debug, Parser)]
#[command(
    name = "isoprofile",
    version,
    about = "Isoperimetric profiles of model manifolds: tables, comparison constants, and verification suites"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Tabulate a profile function (beta, psi, psi', psi'')
    Profile(ProfileArgs),
    /// Tabulate comparison constants (gamma_n, lambda, alpha)
    Constants(ConstantsArgs),
    /// Run a verification suite; exit 0 iff every verdict passes
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
struct ProfileArgs {
    #[command(flatten)]
    target: TargetArgs,

    /// Tabulate the absolute profile (argument is enclosed volume);
    /// warped targets are always absolute
    #[arg(long)]
    h2: bool,

    /// Number of interior grid points
    #[arg(long, default_value_t = 129)]
    grid: usize,

    /// Upper end of the volume range for absolute profiles (defaults to
    /// the total volume, or 10 on infinite-volume space forms)
    #[arg(long)]
    beta_max: Option<f64>,

    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,

    /// Output path (stdout when absent)
    #[arg(long)]
    out: Option<PathBuf>,

    /// Worker threads (fallback: ISO_PROFILE_THREADS, then 1)
    #[arg(long)]
    threads: Option<usize>,
}

#[derive(Debug, Args)]
struct ConstantsArgs {
    /// Dimensions, repeatable
    #[arg(long, default_values_t = [2u32])]
    n: Vec<u32>,

    /// Diameters, repeatable
    #[arg(long, default_values_t = [std::f64::consts::PI])]
    d: Vec<f64>,

    /// Curvature bound: positive for lambda^kappa (alpha at kappa = 1),
    /// 0 for the flat constants lambda^0 and alpha'
    #[arg(long, default_value_t = 1.0)]
    kappa: f64,

    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,

    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    /// Which suite to run
    #[arg(value_enum)]
    suite: Suite,

    #[command(flatten)]
    target: TargetArgs,

    /// Diameter for first-order and BBG suites (defaults: pi/sqrt(kappa)
    /// for space forms, the radial extent L for warps)
    #[arg(long)]
    d: Option<f64>,

    /// Number of grid points
    #[arg(long, default_value_t = 256)]
    grid: usize,

    /// Verdict tolerance (per-suite defaults otherwise)
    #[arg(long)]
    tol: Option<f64>,

    /// Accept cap/band candidates as stand-ins for the true profile on
    /// warped targets (they are upper bounds otherwise)
    #[arg(long)]
    assume_minimizer: bool,

    /// Upper end of the volume range for absolute profiles on
    /// infinite-volume space forms
    #[arg(long)]
    beta_max: Option<f64>,

    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,

    #[arg(long)]
    out: Option<PathBuf>,

    /// Worker threads (fallback: ISO_PROFILE_THREADS, then 1)
    #[arg(long)]
    threads: Option<usize>,
}

fn resolve_threads(flag: Option<usize>) -> Result<usize> {
    if let Some(t) = flag {
        return Ok(t.max(1));
    }
    match std::env::var("ISO_PROFILE_THREADS") {
        Ok(value) => value
            .trim()
            .parse::<usize>()
            .map(|t| t.max(1))
            .context("parsing ISO_PROFILE_THREADS"),
        Err(_) => Ok(1),
    }
}

fn emit(report: &Report, format: Format, out: &Option<PathBuf>) -> Result<()> {
    let mut buffer = Vec::new();
    match format {
        Format::Json => report.write_json(&mut buffer)?,
        Format::Csv => report.write_csv(&mut buffer)?,
    }
    match out {
        Some(path) => {
            let mut file =
                File::create(path).with_context(|| format!("creating {}", path.display()))?;
            file.write_all(&buffer)?;
        }
        None => std::io::stdout().write_all(&buffer)?,
    }
    Ok(())
}

fn run_profile(args: &ProfileArgs) -> Result<Report> {
    let target = args.target.resolve()?;
    let payload = tables::profile_table(&target, args.h2, args.grid, args.beta_max)?;
    let mut config = args.target.config_entries();
    config.push((
        "normalization".into(),
        if args.h2 { "h2" } else { "h1" }.into(),
    ));
    config.push(("grid".into(), args.grid.to_string()));
    if let Some(hi) = args.beta_max {
        config.push(("beta_max".into(), report::fmt_e(hi)));
    }
    Ok(Report {
        command: "profile",
        config,
        payload,
        tolerances: Vec::new(),
        global_pass: true,
    })
}

fn run_constants(args: &ConstantsArgs) -> Result<Report> {
    let payload = tables::constants_table(&args.n, &args.d, args.kappa)?;
    let config = vec![
        (
            "n".into(),
            args.n
                .iter()
                .map(u32::to_string)
                .collect::<Vec<_>>()
                .join(" "),
        ),
        (
            "d".into(),
            args.d
                .iter()
                .map(|d| report::fmt_e(*d))
                .collect::<Vec<_>>()
                .join(" "),
        ),
        ("kappa".into(), report::fmt_e(args.kappa)),
    ];
    Ok(Report {
        command: "constants",
        config,
        payload,
        tolerances: Vec::new(),
        global_pass: true,
    })
}

fn run_verify(args: &VerifyArgs) -> Result<Report> {
    let target = args.target.resolve()?;
    let threads = resolve_threads(args.threads)?;
    let params = VerifyParams {
        suite: args.suite,
        target: &target,
        d: args.d,
        grid: args.grid,
        tol: args.tol,
        assume_minimizer: args.assume_minimizer,
        beta_max: args.beta_max,
        threads,
    };
    let SuiteOutcome {
        verdicts,
        tolerances,
        global_pass,
        resolved,
    } = suites::run(&params)?;

    let mut config = vec![(
        "suite".into(),
        args.suite
            .to_possible_value()
            .expect("suite has a name")
            .get_name()
            .to_string(),
    )];
    config.extend(args.target.config_entries());
    if let Some(d) = args.d {
        config.push(("d".into(), report::fmt_e(d)));
    }
    config.push(("grid".into(), args.grid.to_string()));
    if let Some(tol) = args.tol {
        config.push(("tol".into(), report::fmt_e(tol)));
    }
    config.push(("assume_minimizer".into(), args.assume_minimizer.to_string()));
    if let Some(hi) = args.beta_max {
        config.push(("beta_max".into(), report::fmt_e(hi)));
    }
    config.push(("threads".into(), threads.to_string()));
    config.extend(resolved);

    Ok(Report {
        command: "verify",
        config,
        payload: Payload::Verdicts(verdicts),
        tolerances,
        global_pass,
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Profile(args) => run_profile(args).map(|r| (r, args.format, args.out.clone())),
        Command::Constants(args) => run_constants(args).map(|r| (r, args.format, args.out.clone())),
        Command::Verify(args) => run_verify(args).map(|r| (r, args.format, args.out.clone())),
    };
    match outcome {
        Ok((report, format, out)) => {
            if let Err(e) = emit(&report, format, &out) {
                eprintln!("error: {e:#}");
                return ExitCode::from(2);
            }
            if report.global_pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
