//! Command-line front end for `sigframes`.

pub mod args;
pub mod commands;
pub mod curve;
pub mod document;

use std::io::Write;
use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command};
use document::Encoder;

pub fn run(cli: &Cli) -> anyhow::Result<commands::Outcome> {
    if !(cli.tol.is_finite() && cli.tol > 0.0) {
        anyhow::bail!("--tol must be a positive number");
    }
    let enc = Encoder { float: cli.float };
    match &cli.command {
        Command::Signature(a) => commands::signature(a, enc),
        Command::Invariants(a) => commands::invariants(a, cli.tol, enc),
        Command::Compare(a) => commands::compare(a, cli.tol, enc),
        Command::Invariantize(a) => commands::invariantize(a, cli.tol, enc),
    }
}

pub fn main_entry() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            let printed = serde_json::to_string_pretty(&out.document)
                .map_err(anyhow::Error::from)
                .and_then(|s| Ok(writeln!(std::io::stdout().lock(), "{s}")?));
            if let Err(e) = printed {
                eprintln!("error: {e:#}");
                return ExitCode::from(2);
            }
            if out.code == 2 {
                eprintln!("error: curve is outside the domain of the moving frame");
            }
            ExitCode::from(out.code)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
