//! Command-line front end.
//!
//! Exit codes: 0 success, 1 I/O or numerical failure, 2 invalid
//! configuration, 3 unreadable input, 4 reconstruction overflow.
//! All inputs are read and all results computed before the first file is
//! written, so a failed run leaves no partial output.

mod config;
mod input;
mod run;

use std::ffi::OsString;

use clap::Parser;
use thiserror::Error;

pub use config::{Args, Inputs, ProblemKind, Role, RunConfig, DEFAULT_GRID};
pub use input::{load, read_coefficients, read_grid, Builtin, CoefficientRecord};
pub use run::{
    coefficients_json, convergence_sweep, load_report_config, run, values_csv, Amplification,
    Report, ReportTolerances, RunOutput, SweepRow, AMPLIFICATION_FILE, COEFFICIENTS_FILE,
    CONVERGENCE_FILE, REPORT_FILE, VALUES_FILE,
};

#[derive(Error, Debug, Clone, PartialEq)]
pub enum CliError {
    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("cannot parse input: {0}")]
    Parse(String),

    #[error("{0}")]
    IllPosed(String),

    #[error("i/o failure: {0}")]
    Io(String),

    #[error("numerical failure: {0}")]
    Numerical(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Config(_) => 2,
            Self::Parse(_) => 3,
            Self::IllPosed(_) => 4,
            Self::Io(_) | Self::Numerical(_) => 1,
        }
    }
}

/// Parses arguments, runs, writes the outputs and returns the exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args = match Args::try_parse_from(args) {
        Ok(a) => a,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    match execute(&args) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn execute(args: &Args) -> Result<(), CliError> {
    let out_dir = args
        .out_dir
        .as_ref()
        .ok_or_else(|| CliError::Config("--out-dir: required".into()))?;
    let config = match &args.config {
        Some(path) => load_report_config(path)?,
        None => args.to_config()?,
    };
    run(&config)?.write(out_dir)
}
