use std::process::ExitCode;

use clap::Parser;

use opal_cli::commands::{run, Cli, CliError};

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(outcome) => ExitCode::from(outcome.exit_code() as u8),
        Err(e @ CliError::Input(_)) => {
            eprintln!("{e}");
            ExitCode::from(2)
        }
        Err(e @ CliError::Budget(_)) => {
            eprintln!("{e}");
            ExitCode::from(3)
        }
    }
}
