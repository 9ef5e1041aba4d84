use std::process::ExitCode;

use clap::Parser;
use decoq_cli::{run, Cli, EXIT_CRASH};

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_CRASH)
        }
    }
}
