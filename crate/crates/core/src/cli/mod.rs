//! `dottie <compute|coeffs|verify|convergence|approx|engel>`.
//!
//! Exit codes: 0 success, 1 failed verification or computation error,
//! 2 usage error.

pub mod args;
pub mod methods;
pub mod verify;

use std::ffi::OsString;
use std::io::Write;

use clap::error::ErrorKind;
use clap::Parser;
use serde::Serialize;

use self::args::{Cli, Command, Common, Format, VerifyTarget};
use self::methods::{compute, Method, KAPLAN_MAX_TERMS};
use self::verify::{pi_series_rows, run_verify, VerifyReport, PI_POWER_TERMS};
use crate::approx::{all_approximants, approximant, engel_of_dottie, ApproximantName};
use crate::error::Error;
use crate::exact::{kaplan_coefficients_lagrange, kaplan_coefficients_reversion, Route};
use crate::mp::{convergence_report, ConvergenceMethod, PrecisionContext, DEFAULT_GUARD_DIGITS};

pub const GUARD_ENV: &str = "DOTTIE_GUARD_DIGITS";

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

enum Failure {
    Usage(String),
    Runtime(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidArgument(_)
            | Error::Precision(_)
            | Error::UnknownMethod(_)
            | Error::UnknownApproximant(_) => Failure::Usage(e.to_string()),
            other => Failure::Runtime(other.to_string()),
        }
    }
}

/// Parses `argv` (including the program name), runs the subcommand and
/// returns the process exit code.
pub fn run<I, T>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let guard = std::env::var(GUARD_ENV).ok();
    run_with_guard(argv, guard.as_deref(), stdout, stderr)
}

/// Like [`run`] with the guard-digit override passed explicitly.
pub fn run_with_guard<I, T>(
    argv: I,
    guard: Option<&str>,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = stdout.write_all(text.as_bytes());
                    EXIT_OK
                }
                _ => {
                    let _ = stderr.write_all(text.as_bytes());
                    EXIT_USAGE
                }
            };
        }
    };
    let usage_hint = "usage: dottie <compute|coeffs|verify|convergence|approx|engel> [--method M] \
                      [--precision P] [--terms N] [--format text|json|csv] [--out PATH]";
    let outcome = execute(&cli, guard);
    match outcome {
        Ok((report, code)) => {
            if let Some(path) = &cli.common.out {
                if let Err(e) = std::fs::write(path, &report) {
                    let _ = writeln!(stderr, "error: cannot write {}: {e}", path.display());
                    return EXIT_FAILURE;
                }
            } else if stdout.write_all(report.as_bytes()).is_err() {
                return EXIT_FAILURE;
            }
            code
        }
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(stderr, "error: {msg}\n{usage_hint}");
            EXIT_USAGE
        }
        Err(Failure::Runtime(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            EXIT_FAILURE
        }
    }
}

fn context(common: &Common, guard: Option<&str>) -> Result<PrecisionContext, Failure> {
    let guard = match guard {
        None => DEFAULT_GUARD_DIGITS,
        Some(text) => text.trim().parse::<u32>().map_err(|_| {
            Failure::Usage(format!("{GUARD_ENV} must be a non-negative integer, got `{text}`"))
        })?,
    };
    Ok(PrecisionContext::with_guard(common.precision, guard)?)
}

fn reject(flag: &str, present: bool, sub: &str) -> Result<(), Failure> {
    if present {
        return Err(Failure::Usage(format!("`--{flag}` does not apply to `{sub}`")));
    }
    Ok(())
}

fn json<T: Serialize + ?Sized>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report types always serialize");
    s.push('\n');
    s
}

fn csv_of<T: Serialize>(rows: &[T]) -> Result<String, Failure> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r).map_err(|e| Failure::Runtime(e.to_string()))?;
    }
    let bytes = w.into_inner().map_err(|e| Failure::Runtime(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Failure::Runtime(e.to_string()))
}

/// Left-aligned columns separated by two spaces.
fn text_table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.len()).collect();
    for r in rows {
        for (w, cell) in widths.iter_mut().zip(r) {
            *w = (*w).max(cell.len());
        }
    }
    let mut out = String::new();
    let mut line = |cells: Vec<&str>| {
        let last = cells.len() - 1;
        for (i, (cell, w)) in cells.iter().zip(&widths).enumerate() {
            if i == last {
                out.push_str(cell);
            } else {
                out.push_str(&format!("{cell:<w$}  "));
            }
        }
        out.push('\n');
    };
    line(header.to_vec());
    for r in rows {
        line(r.iter().map(String::as_str).collect());
    }
    out
}

fn execute(cli: &Cli, guard: Option<&str>) -> Result<(String, i32), Failure> {
    let common = &cli.common;
    let ctx = context(common, guard)?;
    match &cli.command {
        Command::Compute => {
            let method: Method = common.method.as_deref().unwrap_or("newton").parse()?;
            let result = compute(method, common.terms, &ctx)?;
            let record = result.record();
            let report = match common.format {
                Format::Text => format!("{}\n", record.value),
                Format::Json => json(&record),
                Format::Csv => csv_of(&[record])?,
            };
            Ok((report, EXIT_OK))
        }
        Command::Coeffs { max_n, route } => {
            reject("method", common.method.is_some(), "coeffs")?;
            reject("terms", common.terms.is_some(), "coeffs")?;
            if *max_n == 0 {
                return Err(Failure::Usage("--max-n must be >= 1".into()));
            }
            let table = match Route::from(*route) {
                Route::Reversion => kaplan_coefficients_reversion(*max_n)?,
                Route::Lagrange => kaplan_coefficients_lagrange(*max_n)?,
            };
            let report = match common.format {
                Format::Text => table.to_text(),
                Format::Json => format!("{}\n", table.to_json()),
                Format::Csv => csv_of(&table.records())?,
            };
            Ok((report, EXIT_OK))
        }
        Command::Verify { target, inject_fault } => {
            reject("method", common.method.is_some(), "verify")?;
            match target {
                Some(VerifyTarget::PiSeries) => {
                    if *inject_fault {
                        return Err(Failure::Usage("--inject-fault applies to the full report only".into()));
                    }
                    let n = common.terms.unwrap_or(PI_POWER_TERMS);
                    let rows = pi_series_rows(n, &ctx)?;
                    let pass = rows.iter().all(|r| r.pass);
                    let report = match common.format {
                        Format::Json => json(&rows),
                        Format::Text | Format::Csv => csv_of(&rows)?,
                    };
                    Ok((report, if pass { EXIT_OK } else { EXIT_FAILURE }))
                }
                None => {
                    reject("terms", common.terms.is_some(), "verify")?;
                    let report = run_verify(&ctx, *inject_fault)?;
                    let code = if report.passed { EXIT_OK } else { EXIT_FAILURE };
                    Ok((render_verify(&report, common.format)?, code))
                }
            }
        }
        Command::Convergence => {
            let method: ConvergenceMethod = common.method.as_deref().unwrap_or("kaplan").parse()?;
            let counts = convergence_grid(method, common.terms)?;
            let rows: Vec<_> = convergence_report(method, &counts, &ctx)?
                .iter()
                .map(|r| r.record())
                .collect();
            let report = match common.format {
                Format::Text => text_table(
                    &["terms", "abs_error"],
                    &rows.iter().map(|r| vec![r.terms.to_string(), r.abs_error.clone()]).collect::<Vec<_>>(),
                ),
                Format::Json => json(&rows),
                Format::Csv => csv_of(&rows)?,
            };
            Ok((report, EXIT_OK))
        }
        Command::Approx => {
            reject("terms", common.terms.is_some(), "approx")?;
            let list = match &common.method {
                Some(name) => vec![approximant(name.parse::<ApproximantName>()?, &ctx)?],
                None => all_approximants(&ctx)?,
            };
            let records: Vec<_> = list.iter().map(|a| a.record()).collect();
            let report = match common.format {
                Format::Text => text_table(
                    &["name", "value", "correct_decimal_digits"],
                    &records
                        .iter()
                        .map(|r| vec![r.name.to_string(), r.value.clone(), r.correct_decimal_digits.to_string()])
                        .collect::<Vec<_>>(),
                ),
                Format::Json => json(&records),
                Format::Csv => csv_of(&records)?,
            };
            Ok((report, EXIT_OK))
        }
        Command::Engel => {
            reject("method", common.method.is_some(), "engel")?;
            let n = usize::try_from(common.terms.unwrap_or(args::DEFAULT_TERMS))
                .map_err(|_| Failure::Usage("--terms too large".into()))?;
            let e = engel_of_dottie(n, &ctx)?;
            let record = e.record();
            let report = match common.format {
                Format::Text => format!(
                    "terms: {}\nreconstruction_error: {}\ntruncated: {}\n",
                    record.terms.join(" "),
                    record.reconstruction_error,
                    record.truncated
                ),
                Format::Json => json(&record),
                Format::Csv => {
                    let rows: Vec<_> = record
                        .terms
                        .iter()
                        .enumerate()
                        .map(|(i, a)| EngelCsvRow { k: i + 1, term: a.clone() })
                        .collect();
                    csv_of(&rows)?
                }
            };
            Ok((report, EXIT_OK))
        }
    }
}

#[derive(Serialize)]
struct EngelCsvRow {
    k: usize,
    term: String,
}

/// Term counts for `convergence`: every count for the Kaplan sum (capped at
/// its coefficient limit), a 1-2-5 grid up to `N` otherwise.
fn convergence_grid(method: ConvergenceMethod, terms: Option<u64>) -> Result<Vec<u64>, Failure> {
    match method {
        ConvergenceMethod::Kaplan => {
            let n = terms.unwrap_or(methods::KAPLAN_DEFAULT_TERMS);
            if n > KAPLAN_MAX_TERMS {
                return Err(Failure::Usage(format!(
                    "kaplan supports at most {KAPLAN_MAX_TERMS} terms, got {n}"
                )));
            }
            Ok((1..=n).collect())
        }
        ConvergenceMethod::BesselSeries | ConvergenceMethod::CosineIteration => {
            let default = match method {
                ConvergenceMethod::BesselSeries => methods::BESSEL_DEFAULT_TERMS,
                _ => args::DEFAULT_TERMS,
            };
            let n = terms.unwrap_or(default);
            if n == 0 {
                return Err(Failure::Usage("--terms must be >= 1".into()));
            }
            let mut grid = Vec::new();
            let mut decade = 1u64;
            'outer: loop {
                for step in [1, 2, 5] {
                    let c = decade.saturating_mul(step);
                    if c >= n {
                        break 'outer;
                    }
                    grid.push(c);
                }
                decade = decade.saturating_mul(10);
            }
            grid.push(n);
            Ok(grid)
        }
    }
}

fn render_verify(report: &VerifyReport, format: Format) -> Result<String, Failure> {
    Ok(match format {
        Format::Json => json(report),
        Format::Csv => csv_of(&report.rows)?,
        Format::Text => {
            let mut out = format!(
                "verify: precision {} digits, {} guard digits\n\n",
                report.precision, report.guard_digits
            );
            let rows: Vec<Vec<String>> = report
                .rows
                .iter()
                .map(|r| {
                    vec![
                        if r.pass { "PASS" } else { "FAIL" }.to_string(),
                        r.id.clone(),
                        r.tolerance.clone(),
                        r.detail.clone(),
                    ]
                })
                .collect();
            out.push_str(&text_table(&["status", "check", "tolerance", "detail"], &rows));
            out.push('\n');
            for note in &report.notes {
                out.push_str(note);
                out.push('\n');
            }
            let failed = report.rows.iter().filter(|r| !r.pass).count();
            out.push_str(&format!(
                "\n{} of {} checks passed\n",
                report.rows.len() - failed,
                report.rows.len()
            ));
            out
        }
    })
}
