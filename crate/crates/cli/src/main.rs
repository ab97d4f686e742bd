use std::io::Write;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::Parser;

use kerov_cli::{execute, resolve_config, Cli, THREADS_ENV};

fn run() -> Result<bool> {
    let cli = Cli::parse();
    let env = std::env::var(THREADS_ENV).ok();
    let cfg = resolve_config(&cli, env.as_deref())?;
    if let Some(t) = cfg.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build_global()
            .context("configuring the worker pool")?;
    }
    let outcome = execute(&cli, &cfg)?;
    match &cfg.out {
        Some(path) => std::fs::write(path, &outcome.output).with_context(|| format!("writing {}", path.display()))?,
        None => std::io::stdout().write_all(outcome.output.as_bytes())?,
    }
    eprintln!("{}", outcome.summary);
    Ok(outcome.success)
}

fn main() -> ExitCode {
    match run() {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
