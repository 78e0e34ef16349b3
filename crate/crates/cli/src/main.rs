//! `crs-lab`: compute, tabulate and verify Cohen-Ramanujan sum quantities
//! in exact arithmetic.
//!
//! Exit status is 0 on success, 1 when a verification suite has failing
//! checks, and 2 on bad arguments or evaluation errors.

mod args;
mod commands;
mod table;

use std::io::Write;
use std::path::Path;
use std::process::ExitCode;

use anyhow::Context;
use clap::Parser;

use args::{Cli, Command, TableTarget};

fn emit(text: &str, out: Option<&Path>) -> anyhow::Result<()> {
    match out {
        Some(path) => {
            std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))
        }
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            stdout.flush()?;
            Ok(())
        }
    }
}

fn run(cli: Cli) -> anyhow::Result<bool> {
    if let Some(n) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .context("configuring the thread pool")?;
    }
    let (outcome, out) = match &cli.command {
        Command::Compute(target) => (commands::compute(target)?, None),
        Command::Table(TableTarget::Crs(a)) => (commands::table_crs(a)?, a.output.out.as_deref()),
        Command::Table(TableTarget::Weighted(a)) => {
            (commands::table_weighted(a)?, a.output.out.as_deref())
        }
        Command::Verify(a) => (commands::verify(a)?, a.out.as_deref()),
        Command::Seq(a) => (commands::seq(a)?, a.output.out.as_deref()),
    };
    emit(&outcome.text, out)?;
    Ok(outcome.success)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
