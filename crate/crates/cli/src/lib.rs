//! The `kmcrystal` command-line tool as a library, so that the dispatcher can
//! be driven in-process by tests.

pub mod args;
pub mod config;
pub mod dispatch;
pub mod error;
pub mod parse;

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::Parser;

use crate::args::Cli;
use crate::error::{CliError, EXIT_USAGE};

/// Environment variable naming the directory for relative `--output` paths.
pub const OUTPUT_DIR_ENV: &str = "KMCRYSTAL_OUTPUT_DIR";

/// Exit status and captured streams of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

fn output_path(p: &Path) -> PathBuf {
    match std::env::var_os(OUTPUT_DIR_ENV) {
        Some(dir) if p.is_relative() => Path::new(&dir).join(p),
        _ => p.to_path_buf(),
    }
}

fn execute(cli: Cli) -> Result<String, CliError> {
    let inv = cli.command.into_invocation()?;
    let text = if inv.emit_config {
        inv.job.validate()?;
        let mut s = serde_json::to_string_pretty(&inv.job).expect("config serializes");
        s.push('\n');
        s
    } else {
        dispatch::dispatch(&inv.job)?
    };
    match inv.output {
        Some(p) => {
            let path = output_path(&p);
            std::fs::write(&path, text).map_err(|e| CliError::Io(path.display().to_string(), e))?;
            Ok(String::new())
        }
        None => Ok(text),
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    match execute(cli) {
        Ok(stdout) => Outcome { code: 0, stdout, stderr: String::new() },
        Err(e) => {
            let stdout = match &e {
                CliError::VerificationFailed { report, .. } => report.clone(),
                _ => String::new(),
            };
            let module = match &e {
                CliError::Domain(d) => format!(" [{}]", d.module()),
                _ => String::new(),
            };
            Outcome { code: e.exit_code(), stdout, stderr: format!("error: {e}{module}\n") }
        }
    }
}
