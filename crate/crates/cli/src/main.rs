mod args;
mod run;

use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command};
use run::CliError;

fn configure_threads(flag: Option<usize>) -> Result<(), CliError> {
    let threads =
        match std::env::var("AMN_THREADS") {
            Ok(value) => Some(value.trim().parse::<usize>().map_err(|_| {
                CliError::Usage(format!("AMN_THREADS must be a count, got {value:?}"))
            })?),
            Err(_) => flag,
        };
    if let Some(n) = threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| CliError::Usage(e.to_string()))?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = configure_threads(cli.threads).and_then(|_| match &cli.command {
        Command::Poly(args) => run::poly(args),
        Command::Roots(args) => run::roots(args),
        Command::Verify(args) => run::verify(args),
        Command::Mode(args) => run::mode(args),
        Command::Field(args) => run::field(args),
        Command::Bench(args) => run::bench(args),
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("amn: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
