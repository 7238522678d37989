//! Batch front door: instance files in, certified answers and re-checkable
//! JSON reports out.

pub mod cli;
pub mod config;
pub mod error;
pub mod instance;
pub mod report;
pub mod run;
pub mod suite;
pub mod verify;

use std::io::Write;
use std::path::Path;

pub use cli::{Cli, Command, Format};
pub use config::{Operation, Representation, RunConfig};
pub use error::CliError;
pub use instance::Instance;
pub use report::{Answer, Report, Verdict};
pub use run::run;
pub use verify::verify;

use error::{EXIT_CERTIFICATE, EXIT_MALFORMED, EXIT_OK, EXIT_OTHER};

fn emit(out: &mut impl Write, lines: &str) -> Result<(), CliError> {
    out.write_all(lines.as_bytes()).map_err(|e| CliError::Io(e.to_string()))
}

fn print_verdicts(out: &mut impl Write, verdicts: &[Verdict], format: Format) -> Result<(), CliError> {
    let mut text = String::new();
    for v in verdicts {
        match format {
            Format::Human => {
                let status = if v.pass { "PASS" } else { "FAIL" };
                text.push_str(&format!("{status} {}", v.check));
                if let Some(d) = &v.detail {
                    text.push_str(&format!(": {d}"));
                }
                text.push('\n');
            }
            Format::Records => {
                text.push_str(&serde_json::json!({"record": "verdict", "verdict": v}).to_string());
                text.push('\n');
            }
        }
    }
    if format == Format::Human {
        let failed = verdicts.iter().filter(|v| !v.pass).count();
        text.push_str(&format!("{} check(s), {failed} failed\n", verdicts.len()));
    }
    emit(out, &text)
}

fn load_report(path: &Path) -> Result<Report, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Malformed(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::Malformed(format!("report: {e}")))
}

/// Executes a parsed command, writing results to `out` and diagnostics to `err`.
/// Returns the process exit status.
pub fn execute(cli: &Cli, out: &mut impl Write, err: &mut impl Write) -> i32 {
    match execute_inner(cli, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn execute_inner(cli: &Cli, out: &mut impl Write) -> Result<i32, CliError> {
    if let Some((op, args)) = cli.command.run_args() {
        let instance = Instance::load(&args.instance)?;
        let report = run(&instance, &args.config(op))?;
        if let Some(path) = &args.output {
            let text = serde_json::to_string_pretty(&report).map_err(|e| CliError::Io(e.to_string()))?;
            std::fs::write(path, text).map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display())))?;
        }
        match args.format {
            Format::Human => emit(out, &report.human())?,
            Format::Records => emit(out, &(report.records().join("\n") + "\n"))?,
        }
        return Ok(EXIT_OK);
    }
    match &cli.command {
        Command::Verify { report, format } => {
            let verdicts = verify(&load_report(report)?);
            print_verdicts(out, &verdicts, *format)?;
            Ok(if verdicts.iter().all(|v| v.pass) { EXIT_OK } else { EXIT_CERTIFICATE })
        }
        Command::Suite { file, format } => {
            let suite = suite::load(file)?;
            let base = file.parent().unwrap_or_else(|| Path::new("."));
            let outcomes = suite::run_suite(&suite, base);
            let mut text = String::new();
            for o in &outcomes {
                match format {
                    Format::Human => {
                        let status = if o.ok() { "PASS" } else { "FAIL" };
                        let verified = match o.verified {
                            Some(true) => ", verified",
                            Some(false) => ", verification failed",
                            None => "",
                        };
                        text.push_str(&format!("{status} {} (exit {}, expected {}{verified})", o.name, o.exit, o.expected));
                        if let (false, Some(d)) = (o.ok(), &o.detail) {
                            text.push_str(&format!(": {d}"));
                        }
                        text.push('\n');
                    }
                    Format::Records => {
                        text.push_str(&serde_json::json!({"record": "suite-run", "outcome": o}).to_string());
                        text.push('\n');
                    }
                }
            }
            emit(out, &text)?;
            Ok(if outcomes.iter().all(suite::SuiteOutcome::ok) { EXIT_OK } else { EXIT_OTHER })
        }
        _ => Err(CliError::Malformed("unhandled subcommand".into())),
    }
}

/// Parses `argv`, mapping usage errors to the malformed-input status.
pub fn main_with_args<I, T>(argv: I, out: &mut impl Write, err: &mut impl Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    use clap::Parser;
    match Cli::try_parse_from(argv) {
        Ok(cli) => execute(&cli, out, err),
        Err(e) if e.use_stderr() => {
            let _ = write!(err, "{e}");
            EXIT_MALFORMED
        }
        Err(e) => {
            let _ = write!(out, "{e}");
            EXIT_OK
        }
    }
}
