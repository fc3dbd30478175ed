mod args;
mod commands;

use std::process::ExitCode;

use clap::Parser;

use args::Cli;
use commands::CliError;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(err) => {
            eprintln!("cayleyrf: {err}");
            ExitCode::from(exit_code(&err))
        }
    }
}

fn exit_code(err: &CliError) -> u8 {
    use cayleyrf::Error;
    match err {
        CliError::Core(Error::SizeMismatch { .. }) => 3,
        CliError::Core(Error::CapExceeded { .. }) => 4,
        CliError::Core(Error::Resource(_)) | CliError::Io { .. } => 5,
        CliError::Core(_) | CliError::Usage(_) => 2,
    }
}
