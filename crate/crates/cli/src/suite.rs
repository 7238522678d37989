use std::path::{Path, PathBuf};

use clap::Parser;
use serde::{Deserialize, Serialize};

use crate::cli::Cli;
use crate::error::{CliError, EXIT_MALFORMED, EXIT_OK};
use crate::instance::Instance;
use crate::report::Report;
use crate::run::run;
use crate::verify::verify;

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SuiteFile {
    pub runs: Vec<SuiteRun>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SuiteRun {
    pub name: String,
    /// Subcommand name, e.g. `bct`.
    pub command: String,
    /// Instance path, relative to the suite file.
    pub instance: PathBuf,
    #[serde(default)]
    pub args: Vec<String>,
    /// Expected exit status.
    #[serde(default)]
    pub expect: i32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteOutcome {
    pub name: String,
    pub expected: i32,
    pub exit: i32,
    /// Whether the report re-verified after a JSON round trip; `None` when no report was produced.
    pub verified: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl SuiteOutcome {
    pub fn ok(&self) -> bool {
        self.exit == self.expected && self.verified != Some(false)
    }
}

pub fn load(path: &Path) -> Result<SuiteFile, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Malformed(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::Malformed(e.to_string()))
}

/// Parses and runs one entry in-process, returning the exit status and report.
pub fn execute_run(entry: &SuiteRun, base: &Path) -> (i32, Option<Report>, Option<String>) {
    let instance = base.join(&entry.instance);
    let mut argv = vec!["baire".to_string(), entry.command.clone(), instance.display().to_string()];
    argv.extend(entry.args.iter().cloned());
    let cli = match Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) => return (EXIT_MALFORMED, None, Some(e.to_string())),
    };
    let Some((op, args)) = cli.command.run_args() else {
        return (EXIT_MALFORMED, None, Some(format!("`{}` is not a run subcommand", entry.command)));
    };
    let result = Instance::load(&args.instance).and_then(|inst| run(&inst, &args.config(op)));
    match result {
        Ok(report) => (EXIT_OK, Some(report), None),
        Err(e) => (e.exit_code(), None, Some(e.to_string())),
    }
}

fn reverify(report: &Report) -> Result<(), String> {
    let text = serde_json::to_string(report).map_err(|e| e.to_string())?;
    let back: Report = serde_json::from_str(&text).map_err(|e| e.to_string())?;
    match verify(&back).into_iter().find(|v| !v.pass) {
        None => Ok(()),
        Some(v) => Err(format!("{}: {}", v.check, v.detail.unwrap_or_default())),
    }
}

/// Runs every entry on its own thread.
pub fn run_suite(suite: &SuiteFile, base: &Path) -> Vec<SuiteOutcome> {
    std::thread::scope(|scope| {
        let handles: Vec<_> = suite
            .runs
            .iter()
            .map(|entry| {
                scope.spawn(move || {
                    let (exit, report, detail) = execute_run(entry, base);
                    let (verified, detail) = match report.as_ref().map(reverify) {
                        None => (None, detail),
                        Some(Ok(())) => (Some(true), None),
                        Some(Err(e)) => (Some(false), Some(e)),
                    };
                    SuiteOutcome { name: entry.name.clone(), expected: entry.expect, exit, verified, detail }
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("suite run panicked")).collect()
    })
}
