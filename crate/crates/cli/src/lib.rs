//! Front end for `negspin`. [`run`] parses arguments (merging a `--config`
//! file), executes one command and writes its output; the return value is
//! the process exit code:
//!
//! * 0: every check passed
//! * 1: checks ran and at least one failed, or a numerical routine failed
//! * 2: invalid input or usage

// negated comparisons are how NaN residuals fail
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod args;
pub mod commands;
pub mod config;
pub mod output;

use std::ffi::OsString;
use std::io::Write;

use clap::Parser;

use args::{Cli, Command, Format};
use commands::Outcome;
use output::JsonReport;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("numerical failure: {0}")]
    Numeric(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl From<negspin_core::Error> for CliError {
    fn from(e: negspin_core::Error) -> Self {
        match e {
            negspin_core::Error::RejectedInput(msg) => CliError::Usage(msg),
            other => CliError::Numeric(other.to_string()),
        }
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            _ => 1,
        }
    }
}

/// Rendered output of one invocation.
#[derive(Debug, Clone)]
pub struct Rendered {
    pub body: String,
    pub report: JsonReport,
    pub files: Vec<(std::path::PathBuf, String)>,
}

impl Rendered {
    pub fn all_pass(&self) -> bool {
        self.report.checks.iter().all(|c| c.pass)
    }
}

pub fn execute(cli: &Cli) -> Result<Rendered, CliError> {
    let params = cli.common.params()?;
    let outcome: Outcome = match &cli.command {
        Command::Identities(a) => commands::identities(a)?,
        Command::Dispersion(a) => commands::dispersion(a, &params)?,
        Command::Landau(a) => commands::landau(a, &params)?,
        Command::Coulomb(a) => commands::coulomb(a, &params)?,
        Command::Zitter(a) => commands::zitter(a, &params)?,
        Command::Lorentz(a) => commands::lorentz(a, &params)?,
        Command::Reduction(a) => commands::reduction(a, &cli.common, &params)?,
    };
    let mut echo = serde_json::to_value(&cli.common)?;
    let command_args = match &cli.command {
        Command::Identities(a) => serde_json::to_value(a)?,
        Command::Dispersion(a) => serde_json::to_value(a)?,
        Command::Landau(a) => serde_json::to_value(a)?,
        Command::Coulomb(a) => serde_json::to_value(a)?,
        Command::Zitter(a) => serde_json::to_value(a)?,
        Command::Lorentz(a) => serde_json::to_value(a)?,
        Command::Reduction(a) => serde_json::to_value(a)?,
    };
    let map = echo
        .as_object_mut()
        .expect("struct serialises to an object");
    map.insert("physical".into(), serde_json::to_value(params)?);
    if let serde_json::Value::Object(extra) = command_args {
        map.extend(extra);
    }
    let report = JsonReport {
        command: cli.command.name().to_string(),
        params: echo,
        results: outcome.results,
        checks: outcome.checks.entries,
        version: env!("CARGO_PKG_VERSION").to_string(),
    };
    let body = match cli.common.format {
        Format::Json => report.to_json()?,
        Format::Csv => outcome.table.to_csv()?,
    };
    Ok(Rendered {
        body,
        report,
        files: outcome.files,
    })
}

fn write_output(cli: &Cli, rendered: &Rendered) -> Result<(), CliError> {
    for (path, contents) in &rendered.files {
        std::fs::write(path, contents)?;
    }
    match &cli.common.out {
        Some(path) => std::fs::write(path, &rendered.body)?,
        None => std::io::stdout()
            .lock()
            .write_all(rendered.body.as_bytes())?,
    }
    Ok(())
}

/// Parses `argv` (including the program name), runs, and returns the exit
/// code. Diagnostics go to stderr.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString>,
{
    let argv: Vec<OsString> = argv.into_iter().map(Into::into).collect();
    let expanded = match config::expand_args(argv) {
        Ok(a) => a,
        Err(e) => {
            eprintln!("negspin: {e}");
            return e.exit_code();
        }
    };
    let cli = match Cli::try_parse_from(expanded) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let rendered = match execute(&cli).and_then(|r| write_output(&cli, &r).map(|_| r)) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("negspin {}: {e}", cli.command.name());
            return e.exit_code();
        }
    };
    let failed: Vec<_> = rendered.report.checks.iter().filter(|c| !c.pass).collect();
    eprintln!(
        "negspin {}: {}/{} checks passed",
        cli.command.name(),
        rendered.report.checks.len() - failed.len(),
        rendered.report.checks.len()
    );
    for c in &failed {
        eprintln!(
            "  FAIL {} residual={:e} tolerance={:e}",
            c.name, c.residual, c.tolerance
        );
    }
    if failed.is_empty() {
        0
    } else {
        1
    }
}
