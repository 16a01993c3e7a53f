//! `eprsim`: CSV front end for the entangled-pair simulator.
//!
//! Exit codes: 0 success, 1 usage or invalid parameters, 2 I/O failure,
//! 3 insufficient data (no coincidences, or a fully absorbed state).

mod args;
mod commands;
mod error;
mod manifest;

use std::fs;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;

use args::{Cli, Command, RerunArgs};
use error::CliError;
use manifest::{Manifest, TOOL_VERSION};

fn rerun(args: &RerunArgs) -> Result<(), CliError> {
    let text =
        fs::read_to_string(&args.manifest).map_err(|e| CliError::Io(format!("cannot read {}: {e}", args.manifest)))?;
    let manifest = Manifest::parse(&text)?;
    if manifest.command == "rerun" {
        return Err(CliError::Usage("a manifest cannot record a rerun".into()));
    }
    if manifest.tool_version != TOOL_VERSION {
        eprintln!(
            "warning: manifest written by version {}, running {TOOL_VERSION}",
            manifest.tool_version
        );
    }
    let out = args.out.as_deref().unwrap_or(&manifest.output);
    let cli = Cli::try_parse_from(manifest.to_argv(out))
        .map_err(|e| CliError::Usage(format!("manifest does not describe a valid run: {e}")))?;
    run(&cli)
}

fn run(cli: &Cli) -> Result<(), CliError> {
    match &cli.command {
        Command::Scan(a) => commands::scan(a),
        Command::Trajectory(a) => commands::trajectory(a),
        Command::Montecarlo(a) => commands::montecarlo(a),
        Command::Maximize(a) => commands::maximize(a),
        Command::Rerun(a) => rerun(a),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(1),
            };
        }
    };
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
