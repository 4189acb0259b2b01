//! Command-line front end: argument parsing, text/JSON/DOT rendering and the
//! oracle self-check harness.

#![forbid(unsafe_code)]

mod args;
pub mod check;
mod commands;
mod report;

use std::ffi::OsString;
use std::io::Write;

use clap::error::ErrorKind;
use clap::Parser;

use args::Cli;
pub use report::{Failure, DEFAULT_MAX_M, MAX_M_VAR};

/// Exit code for success.
pub const EXIT_OK: i32 = 0;
/// Exit code for malformed or inadmissible input.
pub const EXIT_INPUT: i32 = 1;
/// Exit code for an internal invariant violation.
pub const EXIT_INTERNAL: i32 = 2;

/// Runs one command. `argv` includes the program name. Reports go to `out`,
/// diagnostics to `err`.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let argv: Vec<OsString> = argv.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            let informational = matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion);
            let sink: &mut dyn Write = if informational { out } else { err };
            let _ = write!(sink, "{}", e.render());
            return if informational { EXIT_OK } else { EXIT_INPUT };
        }
    };
    let echo = argv
        .iter()
        .skip(1)
        .map(|a| a.to_string_lossy().into_owned())
        .collect::<Vec<_>>()
        .join(" ");
    let max_m = match report::max_m_from_env() {
        Ok(v) => v,
        Err(f) => return finish(Err(f), out, err),
    };
    let mut ctx = report::Context::new(echo, cli.json, cli.timing, max_m);
    let result = commands::dispatch(&mut ctx, cli.command);
    for w in &ctx.warnings {
        let _ = writeln!(err, "warning: {w}");
    }
    finish(result, out, err)
}

fn finish(result: Result<report::Outcome, Failure>, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    match result {
        Ok(outcome) => {
            let _ = out.write_all(outcome.text.as_bytes());
            let _ = out.flush();
            outcome.code
        }
        Err(f) => {
            let _ = writeln!(err, "error: {f}");
            f.code()
        }
    }
}
