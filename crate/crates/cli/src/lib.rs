//! Command-line front end: `validate`, `eval` and `classify`.
//!
//! Exit codes: 0 success, 1 usage or I/O or schema error, 2 the dataset admits
//! no strictly increasing extension.

pub mod commands;
pub mod format;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

pub const EXIT_OK: u8 = 0;
pub const EXIT_USAGE: u8 = 1;
pub const EXIT_REJECTED: u8 = 2;

#[derive(Debug, Parser)]
#[command(name = "monoext", version, about = "Strictly monotone extensions of partial utility functions")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check whether the samples admit a strictly increasing extension.
    Validate(RunManifest),
    /// Evaluate the extension at every query.
    Eval(RunManifest),
    /// Report bounds and regions of every query.
    Classify(RunManifest),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Vector,
    Poset,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BaseKind {
    Arctan,
    PosetDepth,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FormArg {
    Canonical,
    Prime,
    Piecewise,
    Regions,
    Pareto,
}

impl From<FormArg> for monoext::Form {
    fn from(f: FormArg) -> Self {
        match f {
            FormArg::Canonical => monoext::Form::Canonical,
            FormArg::Prime => monoext::Form::Prime,
            FormArg::Piecewise => monoext::Form::Piecewise,
            FormArg::Regions => monoext::Form::Regions,
            FormArg::Pareto => monoext::Form::Pareto,
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct RunManifest {
    #[arg(long, value_enum, default_value = "vector")]
    pub mode: Mode,
    /// Dataset JSON file.
    #[arg(long)]
    pub data: PathBuf,
    /// Query JSON file (eval and classify).
    #[arg(long)]
    pub queries: Option<PathBuf>,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub alpha: f64,
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub beta: f64,
    /// Base utility; `arctan` in vector mode, `poset-depth` in poset mode by default.
    #[arg(long, value_enum)]
    pub base: Option<BaseKind>,
    #[arg(long, value_enum, default_value = "canonical")]
    pub form: FormArg,
    /// Output file; stdout when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    let outcome = match &cli.command {
        Command::Validate(m) => commands::validate(m),
        Command::Eval(m) => commands::eval(m),
        Command::Classify(m) => commands::classify(m),
    };
    match outcome {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            EXIT_USAGE
        }
    }
}
