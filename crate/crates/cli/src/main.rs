mod args;
mod commands;
mod config;
mod output;
mod validate;

use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command};
use config::ConfigFile;

/// Exit status 2 for usage and parameter errors, 1 for runtime failures.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Failure(String),
}

impl From<xy_quench::Error> for CliError {
    fn from(e: xy_quench::Error) -> Self {
        use xy_quench::Error as E;
        match e {
            E::InvalidParams(_)
            | E::InvalidSweep(_)
            | E::EdSize(_)
            | E::InvalidOffset(_)
            | E::NegativeTime(_) => CliError::Usage(e.to_string()),
            other => CliError::Failure(other.to_string()),
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    let cfg = match &cli.config {
        Some(path) => ConfigFile::load(path)?,
        None => ConfigFile::default(),
    };
    match cli.command {
        Command::Sweep(a) => commands::sweep(a, &cfg),
        Command::Series(a) => commands::series(a, &cfg),
        Command::Revival(a) => commands::revival(a, &cfg),
        Command::Validate(a) => validate::run(a, &cfg),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Failure(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
