mod commands;
mod config;
mod error;
mod output;

use std::process::ExitCode;

use clap::Parser;

use config::{load_file, Cli, Command, RunConfig};
use error::{CliError, CliResult};

fn thread_count(cfg: &RunConfig) -> CliResult<Option<usize>> {
    if cfg.threads.is_some() {
        return Ok(cfg.threads);
    }
    match std::env::var("QWALK_THREADS") {
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(n) if n > 0 => Ok(Some(n)),
            _ => Err(CliError::usage(format!("QWALK_THREADS must be a positive integer, got {v:?}"))),
        },
        Err(_) => Ok(None),
    }
}

fn run(cli: Cli) -> CliResult<()> {
    let file = match &cli.flags.config {
        Some(path) => load_file(path)?,
        None => Default::default(),
    };
    let cfg = RunConfig::resolve(cli.command, cli.flags.over(file))?;
    eprintln!(
        "effective config: {}",
        serde_json::to_string(&cfg).expect("config serializes")
    );
    if let Some(n) = thread_count(&cfg)? {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| CliError::usage(format!("--threads: {e}")))?;
    }
    match cfg.command {
        Command::Evolve => commands::evolve(&cfg),
        Command::Asymptotic => commands::asymptotic(&cfg),
        Command::Sweep => commands::sweep(&cfg),
        Command::Compare => commands::compare(&cfg),
        Command::Fit => commands::fit(&cfg),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
