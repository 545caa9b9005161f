//! `hankel`: catalogue listing, classification, verification and spectral
//! tables for Hankel operators that commute with Sturm-Liouville operators.
//!
//! Exit codes: 0 success, 1 invalid input or I/O failure, 2 a residual
//! exceeded its tolerance (the report is still written), 3 numerical breakdown.

// `!(x > 0.0)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod commands;
mod config;
mod output;

use std::collections::HashSet;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Result;
use clap::{CommandFactory, Parser, Subcommand};
use hankel_core::catalogue::{CaseId, Params};
use hankel_core::Error;

use commands::{Status, VerifyOptions};
use config::{Format, Overrides, OUT_DIR_ENV};

#[derive(Debug, Parser)]
#[command(name = "hankel", version, about = "Hankel operators commuting with Sturm-Liouville operators")]
#[command(after_help = "Case parameters are passed as extra `--name value` pairs, e.g. `--shift 1.5` or `--nu 2`.")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, clap::Args)]
struct Common {
    /// Output directory (default: $HANKEL_OUT_DIR, then the working directory).
    #[arg(long)]
    out_dir: Option<PathBuf>,
    /// Output format for tables.
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Number of grid points.
    #[arg(long)]
    grid_n: Option<usize>,
    /// Flat key=value config file.
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Registry of catalogued cases.
    Catalogue {
        #[command(subcommand)]
        action: CatalogueAction,
    },
    /// Singular points of the kernel equation for a coefficient pair; prints JSON.
    Classify {
        /// Coefficient family: Q, H or C.
        family: String,
        /// Family of b when it differs from that of a (always rejected).
        #[arg(long)]
        b_family: Option<String>,
    },
    /// Pointwise commutation, ODE, commutator and factorization residuals.
    Verify {
        case: String,
        /// Perturb b by this amount, breaking the commutation.
        #[arg(long, allow_hyphen_values = true)]
        perturb_b: Option<f64>,
        /// Also check the factorization against the paired integrable kernel.
        #[arg(long)]
        factorization: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Singular values as `j,s_j`.
    Spectrum {
        case: String,
        #[command(flatten)]
        common: Common,
    },
    /// Determinant curve `det(I - G_s^2)` as `s,det`.
    Fredholm {
        case: String,
        /// Shifts as start:stop:step.
        #[arg(long, allow_hyphen_values = true, default_value = "-6:4:0.25")]
        s_range: String,
        #[command(flatten)]
        common: Common,
    },
    /// Singular values, section bounds and the stretched-exponential fit as `N,s_N,bound,fit`.
    Decay {
        case: String,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Debug, Subcommand)]
enum CatalogueAction {
    /// List cases as JSON.
    List {
        /// Only cases of this family (Q, H or C).
        #[arg(long)]
        family: Option<String>,
    },
}

/// Long flags the parser knows for the subcommand named in `args`.
fn known_flags(args: &[String]) -> HashSet<String> {
    let root = Cli::command();
    let mut flags: HashSet<String> = ["help", "version"].iter().map(|s| s.to_string()).collect();
    let mut cmd = &root;
    for a in args.iter().skip(1) {
        match cmd.find_subcommand(a) {
            Some(sub) => cmd = sub,
            None => break,
        }
    }
    flags.extend(cmd.get_arguments().filter_map(|a| a.get_long().map(str::to_string)));
    flags
}

type ParamPairs = Vec<(String, String)>;

/// Pulls `--name value` pairs that are not flags of the subcommand out of the
/// argument list; they become case parameters.
fn split_params(args: Vec<String>) -> Result<(Vec<String>, ParamPairs)> {
    let known = known_flags(&args);
    let mut kept = Vec::with_capacity(args.len());
    let mut params = Vec::new();
    let mut it = args.into_iter();
    while let Some(a) = it.next() {
        let Some(body) = a.strip_prefix("--") else {
            kept.push(a);
            continue;
        };
        let (name, inline) = match body.split_once('=') {
            Some((n, v)) => (n.to_string(), Some(v.to_string())),
            None => (body.to_string(), None),
        };
        if name.is_empty() || known.contains(&name) {
            kept.push(a);
            continue;
        }
        let value = match inline.or_else(|| it.next()) {
            Some(v) => v,
            None => anyhow::bail!(Error::InvalidArgument(format!("parameter --{name} needs a value"))),
        };
        params.push((name.replace('-', "_"), value));
    }
    Ok((kept, params))
}

fn case_id(name: &str) -> Result<CaseId> {
    Ok(name.parse::<CaseId>()?)
}

fn resolve(common: &Common, params: Vec<(String, String)>) -> Result<config::RunConfig> {
    let o = Overrides {
        params,
        grid_n: common.grid_n,
        out_dir: common.out_dir.clone(),
        format: common.format,
        config: common.config.clone(),
    };
    config::resolve(&o, std::env::var(OUT_DIR_ENV).ok())
}

fn plain_params(params: &[(String, String)]) -> Result<Params> {
    params.iter().map(|(k, v)| Ok((k.clone(), config::parse_number(k, v)?))).collect()
}

fn run(cli: Cli, params: Vec<(String, String)>) -> Result<Status> {
    let no_params = |params: &[(String, String)]| -> Result<()> {
        match params.first() {
            Some((k, _)) => anyhow::bail!(Error::InvalidArgument(format!("unexpected option --{k}"))),
            None => Ok(()),
        }
    };
    match cli.command {
        Command::Catalogue { action: CatalogueAction::List { family } } => {
            no_params(&params)?;
            print!("{}", commands::catalogue_list(family.as_deref())?);
        }
        Command::Classify { family, b_family } => {
            print!("{}", commands::classify_cmd(&family, b_family.as_deref(), &plain_params(&params)?)?);
        }
        Command::Verify { case, perturb_b, factorization, common } => {
            let id = case_id(&case)?;
            let cfg = resolve(&common, params)?;
            let (status, report) = commands::verify(id, &cfg, &VerifyOptions { perturb_b, factorization })?;
            println!("{}", serde_json::to_string_pretty(&report)?);
            return Ok(status);
        }
        Command::Spectrum { case, common } => {
            let id = case_id(&case)?;
            let cfg = resolve(&common, params)?;
            println!("{}", commands::spectrum(id, &cfg)?);
        }
        Command::Fredholm { case, s_range, common } => {
            let id = case_id(&case)?;
            let points = config::parse_range(&s_range)?;
            let cfg = resolve(&common, params)?;
            println!("{}", commands::fredholm(id, &cfg, &points)?);
        }
        Command::Decay { case, common } => {
            let id = case_id(&case)?;
            let cfg = resolve(&common, params)?;
            let (csv, fit) = commands::decay(id, &cfg)?;
            println!("{csv}\n{fit}");
        }
    }
    Ok(Status::Pass)
}

fn exit_code(err: &anyhow::Error) -> u8 {
    match err.downcast_ref::<Error>() {
        Some(
            Error::NoConvergence { .. }
            | Error::DivergentProduct { .. }
            | Error::InsufficientData { .. }
            | Error::NegativeCoefficient { .. }
            | Error::PoleProximity { .. },
        ) => 3,
        _ => 1,
    }
}

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().collect();
    let (args, params) = match split_params(args) {
        Ok(split) => split,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    };
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(cli, params) {
        Ok(Status::Pass) => ExitCode::SUCCESS,
        Ok(Status::ToleranceExceeded) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
