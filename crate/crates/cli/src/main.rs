mod args;
mod report;
mod run;

use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use serde_json::json;

use args::Cli;
use run::UsageError;

fn main() -> ExitCode {
    // clap exits with status 2 on usage errors
    let cli = Cli::parse();
    match execute(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            if e.downcast_ref::<UsageError>().is_some() {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}

fn execute(cli: &Cli) -> anyhow::Result<()> {
    let (config, report) = run::dispatch(&cli.command, cli.global.workers as usize)?;
    let provenance = json!({
        "tool": "deltabench",
        "version": env!("CARGO_PKG_VERSION"),
        "command": cli.command.name(),
        "config": config,
        "format": cli.global.format,
        "workers": cli.global.workers,
    });
    let mut buf = Vec::new();
    report::write(&mut buf, cli.global.format, &provenance, &report)?;
    match &cli.global.out {
        Some(path) => std::fs::write(path, buf)?,
        None => std::io::stdout().lock().write_all(&buf)?,
    }
    Ok(())
}
