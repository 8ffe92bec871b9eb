use std::io::Write;
use std::path::Path;
use std::process::ExitCode;

use clap::Parser;

use ffda_cli::commands::{run, Output};
use ffda_cli::{Cli, CliError};

fn write_output(out: &Output, path: Option<&Path>) -> Result<(), CliError> {
    match path {
        Some(p) => {
            std::fs::write(p, &out.body)?;
            if let Some(summary) = &out.summary {
                std::fs::write(p.with_extension("summary.json"), summary)?;
            }
        }
        None => {
            std::io::stdout().lock().write_all(&out.body)?;
            if let Some(summary) = &out.summary {
                std::io::stderr().lock().write_all(summary)?;
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = run(&cli.command).and_then(|out| {
        write_output(&out, cli.command.common().out.as_deref())?;
        match out.failure {
            Some(msg) => Err(CliError::Failed(msg)),
            None => Ok(()),
        }
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("ffda: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
