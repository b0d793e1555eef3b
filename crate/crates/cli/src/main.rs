use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};

use paraclose_cli::presets::preset;
use paraclose_cli::problem::{Problem, ProblemFile};
use paraclose_cli::report::{Outcome, RunReport};
use paraclose_cli::run;
use paraclose_core::{Error, Result};

/// Exact certificate-carrying checks for forcing algebras and ideal closures.
#[derive(Parser)]
#[command(name = "paraclose", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Ideal membership in the presented ring, with cofactor certificates
    Membership(CommonArgs),
    /// Search for a paraclass-vanishing certificate over the forcing algebra
    Paraclass(CommonArgs),
    /// Constructive non-membership certificate over a polynomial ring
    #[command(name = "regular-cert")]
    RegularCert(CommonArgs),
    /// Frobenius-power tight-closure test in characteristic p
    Tight(CommonArgs),
    /// Briancon-Skoda desk check for a monomial ideal
    Bskoda(CommonArgs),
    /// Re-verify a certificate JSON against a presentation
    Verify(VerifyArgs),
    /// Check an asserted identity modulo the presented forcing ideal
    Identity(CommonArgs),
}

#[derive(Args)]
struct CommonArgs {
    /// Problem file (UTF-8, `key: value` lines)
    #[arg(long)]
    file: Option<PathBuf>,
    /// Named preset, e.g. `roberts`, `toric 2 1`, `fermat-quadric 2 2 3`,
    /// `bs-monomial`
    #[arg(long)]
    preset: Option<String>,
    /// Exponent bound for vanishing searches
    #[arg(long = "k-max")]
    k_max: Option<u32>,
    /// Frobenius stage bound
    #[arg(long = "e-max")]
    e_max: Option<u32>,
    /// Degree bound for monomial sweeps
    #[arg(long = "deg-bound")]
    deg_bound: Option<u32>,
    /// Write the report as JSON to this path
    #[arg(long)]
    json: Option<PathBuf>,
    /// Seed echoed into the report (randomized suites are seeded in-code)
    #[arg(long)]
    seed: Option<u64>,
    /// Field override, `Q` or `Fp:<p>`
    #[arg(long)]
    field: Option<String>,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Certificate JSON file to verify
    #[arg(long)]
    cert: PathBuf,
}

fn load_problem(args: &CommonArgs) -> Result<Problem> {
    let file = match (&args.file, &args.preset) {
        (Some(path), None) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::InvalidInput(format!("{}: {e}", path.display())))?;
            ProblemFile::parse(&text)?
        }
        (None, Some(name)) => preset(name)?,
        (Some(_), Some(_)) => {
            return Err(Error::InvalidInput(
                "pass either --file or --preset, not both".into(),
            ))
        }
        (None, None) => {
            return Err(Error::InvalidInput(
                "one of --file or --preset is required".into(),
            ))
        }
    };
    file.resolve(args.field.as_deref())
}

fn emit(report: &RunReport, json_path: Option<&PathBuf>) -> Result<()> {
    print!("{}", report.render_text());
    if let Some(path) = json_path {
        std::fs::write(path, report.to_json_pretty())
            .map_err(|e| Error::InvalidInput(format!("{}: {e}", path.display())))?;
    }
    Ok(())
}

fn dispatch(cli: &Cli) -> Result<(RunReport, Outcome, Option<PathBuf>)> {
    let started = Instant::now();
    let (common, result) = match &cli.command {
        Command::Membership(a) => (a, run::cmd_membership(&load_problem(a)?, &overrides(a))?),
        Command::Paraclass(a) => (a, run::cmd_paraclass(&load_problem(a)?, &overrides(a))?),
        Command::RegularCert(a) => (a, run::cmd_regular_cert(&load_problem(a)?, &overrides(a))?),
        Command::Tight(a) => (a, run::cmd_tight(&load_problem(a)?, &overrides(a))?),
        Command::Bskoda(a) => (a, run::cmd_bskoda(&load_problem(a)?, &overrides(a))?),
        Command::Identity(a) => (a, run::cmd_identity(&load_problem(a)?, &overrides(a))?),
        Command::Verify(v) => {
            let cert_text = std::fs::read_to_string(&v.cert)
                .map_err(|e| Error::InvalidInput(format!("{}: {e}", v.cert.display())))?;
            (
                &v.common,
                run::cmd_verify(&load_problem(&v.common)?, &overrides(&v.common), &cert_text)?,
            )
        }
    };
    let (mut report, outcome) = result;
    report.timing_ms = started.elapsed().as_millis() as u64;
    Ok((report, outcome, common.json.clone()))
}

fn overrides(args: &CommonArgs) -> run::Overrides {
    run::Overrides {
        k_max: args.k_max,
        e_max: args.e_max,
        degree_bound: args.deg_bound,
        seed: args.seed,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 3 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match dispatch(&cli) {
        Ok((report, outcome, json_path)) => {
            if let Err(e) = emit(&report, json_path.as_ref()) {
                eprintln!("error: {e}");
                return ExitCode::from(3);
            }
            ExitCode::from(outcome.code() as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(3)
        }
    }
}
