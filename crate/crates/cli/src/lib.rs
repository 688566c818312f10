//! Command-line front end: `eval`, `verify` and `limit-scan`.

pub mod args;
pub mod eval;
pub mod format;
pub mod scan;
pub mod verify;

use std::ffi::OsString;
use std::io::Write;
use std::path::Path;
use std::time::Instant;

use clap::error::ErrorKind;
use clap::{Parser, ValueEnum};

use args::{Cli, ScanTarget, Verb};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_DOMAIN: i32 = 3;

fn emit(text: &str, path: Option<&Path>, out: &mut impl Write, err: &mut impl Write) -> i32 {
    let written = match path {
        Some(p) => std::fs::write(p, text),
        None => out.write_all(text.as_bytes()),
    };
    match written {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(err, "error: cannot write output: {e}");
            EXIT_USAGE
        }
    }
}

fn domain(e: qconnect::Error, err: &mut impl Write) -> i32 {
    let _ = writeln!(err, "error: {}: {e}", e.name());
    EXIT_DOMAIN
}

/// Runs one invocation and returns the process exit code.
pub fn run<I, T>(argv: I, out: &mut impl Write, err: &mut impl Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = out.write_all(text.as_bytes());
                    EXIT_OK
                }
                _ => {
                    let _ = err.write_all(text.as_bytes());
                    EXIT_USAGE
                }
            };
        }
    };
    match cli.verb {
        Verb::Eval(a) => match eval::evaluate(&a) {
            Ok(v) => {
                let name = a
                    .function
                    .to_possible_value()
                    .map(|p| p.get_name().to_string())
                    .unwrap_or_default();
                emit(&eval::render(&name, &v, a.json), None, out, err)
            }
            Err(e) => domain(e, err),
        },
        Verb::Verify(a) => {
            let setup = verify::Setup {
                p: a.p,
                nu: a.nu,
                x: a.x,
                kmax: a.kmax,
                seed: a.seed,
                threshold_override: a.tol,
            };
            let start = Instant::now();
            let mut report = match verify::run(a.suite, &setup) {
                Ok(r) => r,
                Err(e) => return domain(e, err),
            };
            if a.timing {
                report.wall_time_ms = start.elapsed().as_millis() as u64;
            }
            let text = serde_json::to_string_pretty(&report).expect("serializable report") + "\n";
            let code = emit(&text, a.out.as_deref(), out, err);
            if code != EXIT_OK {
                return code;
            }
            let failed = report.cases.iter().filter(|c| !c.pass).count();
            if failed > 0 {
                let _ = writeln!(err, "verification failed: {failed} of {} cases", report.cases.len());
                return EXIT_VERIFY_FAILED;
            }
            EXIT_OK
        }
        Verb::LimitScan(a) => {
            if a.target == ScanTarget::Qbessel && a.x.im != 0.0 {
                let _ = writeln!(err, "error: --x must be real for --fn qbessel");
                return EXIT_USAGE;
            }
            match scan::scan(&a) {
                Ok(rows) => emit(&scan::render(&rows, a.json), a.out.as_deref(), out, err),
                Err(e) => domain(e, err),
            }
        }
    }
}
