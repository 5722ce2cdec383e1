mod args;
mod commands;
mod failure;

use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;

use args::{Cli, Command};
use failure::Failure;

fn configure_threads() -> Result<(), Failure> {
    let Ok(value) = std::env::var("QCORR_THREADS") else {
        return Ok(());
    };
    let threads: usize = value
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| Failure::InvalidArgument(format!("QCORR_THREADS={value:?} is not a positive integer")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| Failure::InvalidArgument(e.to_string()))
}

fn run(cli: &Cli) -> commands::Outcome {
    configure_threads()?;
    match &cli.command {
        Command::Measure(a) => commands::measure(a),
        Command::Monogamy(a) => commands::monogamy(a),
        Command::Sweep(a) => commands::sweep(a),
        Command::Counterexample(a) => commands::counterexample_cmd(a),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(3),
            };
        }
    };
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(failure) => {
            eprintln!("qcorr: {failure}");
            failure.exit_code()
        }
    }
}
