//! Command-line front end for `ptent-core`: entropy curves, figure data,
//! asymptote and sudden-death queries, and the verification suite.

pub mod commands;
pub mod config;
pub mod output;
pub mod verify;

use std::ffi::OsString;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use config::{ConfigError, RunConfig, Settings};
use output::{emit, json_bytes};
use verify::{run_suite, SuiteOptions};

#[derive(Parser, Debug)]
#[command(name = "ptent", version, about = "Entropy evolution in a PT-symmetric qubit-bath model", allow_negative_numbers = true)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub settings: Settings,
}

#[derive(Subcommand, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    /// Entropy curves `t,S,lambda1,lambda2,mu_I`, one per bath size.
    Curve,
    /// Data for the three regime figures under `--out` (default `figures/`).
    Figures,
    /// Long-time entropy floor in the broken regime.
    Asymptote,
    /// First zero of the entropy per bath size.
    DeathTime,
    /// Single-excitation energies, formula against diagonalization.
    Spectrum,
    /// Run the oracle suite and print a JSON report.
    Verify,
}

/// Process exit codes.
pub const EXIT_OK: u8 = 0;
pub const EXIT_VERIFY_FAILED: u8 = 1;
pub const EXIT_INVALID: u8 = 2;

/// Short tag for an error chain, such as `RealityConditionViolated`.
pub fn error_kind(err: &anyhow::Error) -> &'static str {
    for cause in err.chain() {
        if let Some(e) = cause.downcast_ref::<ptent_core::Error>() {
            return e.kind();
        }
        if cause.downcast_ref::<ConfigError>().is_some() {
            return "InvalidConfig";
        }
        if cause.downcast_ref::<std::io::Error>().is_some() {
            return "Io";
        }
    }
    "Error"
}

fn execute(command: Command, config: &RunConfig) -> anyhow::Result<u8> {
    match command {
        Command::Curve => commands::cmd_curve(config)?,
        Command::Figures => commands::cmd_figures(config)?,
        Command::Asymptote => commands::cmd_asymptote(config)?,
        Command::DeathTime => commands::cmd_death_time(config)?,
        Command::Spectrum => commands::cmd_spectrum(config)?,
        Command::Verify => {
            let outcome = run_suite(SuiteOptions {
                scope: config.scope,
                tamper_mu: config.tamper_mu,
            })?;
            emit(config.out.as_deref(), &json_bytes(&outcome)?)?;
            for r in outcome.failures() {
                eprintln!("FAIL {}: {:e} > {:e}", r.name, r.max_residual, r.tolerance);
            }
            return Ok(if outcome.overall_pass { EXIT_OK } else { EXIT_VERIFY_FAILED });
        }
    }
    Ok(EXIT_OK)
}

pub fn run<I, T>(args: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_INVALID } else { EXIT_OK });
        }
    };
    let result = cli
        .settings
        .resolve()
        .map_err(anyhow::Error::from)
        .and_then(|config| execute(cli.command, &config));
    match result {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {}: {err:#}", error_kind(&err));
            ExitCode::from(EXIT_INVALID)
        }
    }
}
