use std::process::ExitCode;

use clap::Parser;
use fakeyou_cli::args::{Cli, Command};
use fakeyou_cli::{commands, CliError};
use tracing_subscriber::EnvFilter;

fn main() -> ExitCode {
    let cli = Cli::parse();
    tracing_subscriber::fmt()
        .with_writer(std::io::stderr)
        .with_env_filter(EnvFilter::try_from_default_env().unwrap_or_else(|_| EnvFilter::new("info")))
        .init();

    let result: Result<(), CliError> = match cli.command {
        Command::Serve(args) => tokio::runtime::Runtime::new()
            .map_err(|source| CliError::Io { path: ".".into(), source })
            .and_then(|rt| rt.block_on(commands::serve(args))),
        Command::Ingest(args) => commands::ingest_sources(&args, |report| println!("{report}")),
        Command::Simulate(args) => commands::simulate_games(&args).map(|out| println!("{out}")),
        Command::Stats(args) => commands::stats(&args).map(|out| println!("{out}")),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{}", e.to_json());
            ExitCode::FAILURE
        }
    }
}
