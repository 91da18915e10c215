//! The `nev` command line: argument handling, report rendering and exit codes.
//!
//! Exit code 0 means the command completed and every check passed, 1 means at
//! least one check failed, and 2 is reserved for usage, parse and
//! precondition errors, reported on standard error.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod args;
mod commands;
mod format;
mod input;
mod svg;

use std::ffi::OsString;
use std::io::Write;

use clap::error::ErrorKind;
use clap::Parser;
use nevanlinna::Config64;
use serde_json::{Map, Value};

pub use args::Format;
pub use format::real_text;
use input::{InputError, InputResult};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Environment variable read when `--abs-tol` is absent.
pub const ABS_TOL_ENV: &str = "NEV_ABS_TOL";

pub(crate) struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

pub(crate) struct Report {
    pub command: String,
    pub inputs: Map<String, Value>,
    pub results: Vec<Value>,
    pub verdicts: Vec<Value>,
    pub warnings: Vec<String>,
    pub table: Option<Table>,
    pub svg: Option<String>,
    pub failed: bool,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Report {
            command: command.to_string(),
            inputs: Map::new(),
            results: Vec::new(),
            verdicts: Vec::new(),
            warnings: Vec::new(),
            table: None,
            svg: None,
            failed: false,
        }
    }

    pub fn echo(&mut self, key: &str, value: Value) {
        self.inputs.insert(key.to_string(), value);
    }

    fn json(&self) -> String {
        let doc = format::object([
            ("tool_version", Value::String(env!("CARGO_PKG_VERSION").into())),
            ("command", Value::String(self.command.clone())),
            ("inputs_echo", Value::Object(self.inputs.clone())),
            ("results", Value::Array(self.results.clone())),
            ("verdicts", Value::Array(self.verdicts.clone())),
            ("warnings", Value::Array(self.warnings.iter().cloned().map(Value::String).collect())),
        ]);
        let mut s = serde_json::to_string_pretty(&doc).expect("report serializes");
        s.push('\n');
        s
    }

    fn csv(&self) -> InputResult<String> {
        let table = self
            .table
            .as_ref()
            .ok_or_else(|| InputError(format!("`{}` has no CSV form; use --format json", self.command)))?;
        let mut w = csv::Writer::from_writer(Vec::new());
        let fail = |e: csv::Error| InputError(format!("csv: {e}"));
        w.write_record(&table.header).map_err(fail)?;
        for row in &table.rows {
            w.write_record(row).map_err(fail)?;
        }
        let bytes = w.into_inner().map_err(|e| InputError(format!("csv: {e}")))?;
        Ok(String::from_utf8(bytes).expect("csv output is UTF-8"))
    }

    fn render(&self, format: Option<Format>) -> InputResult<String> {
        let default = if self.svg.is_some() { Format::Svg } else { Format::Json };
        match format.unwrap_or(default) {
            Format::Json => Ok(self.json()),
            Format::Csv => self.csv(),
            Format::Svg => self
                .svg
                .clone()
                .ok_or_else(|| InputError(format!("`{}` has no SVG form; SVG output comes from `plot`", self.command))),
        }
    }
}

fn config(abs_tol: Option<f64>) -> InputResult<Config64> {
    let tol = match abs_tol {
        Some(t) => Some(t),
        None => match std::env::var(ABS_TOL_ENV) {
            Ok(s) => {
                Some(s.trim().parse::<f64>().map_err(|_| InputError(format!("{ABS_TOL_ENV}={s:?} is not a number")))?)
            }
            Err(_) => None,
        },
    };
    let cfg = match tol {
        Some(t) => Config64::default().with_abs_tol(t),
        None => Config64::default(),
    };
    cfg.validate()?;
    Ok(cfg)
}

/// Runs `nev` with the process's standard streams.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    run_with(argv, &mut std::io::stdout().lock(), &mut std::io::stderr().lock())
}

/// Runs `nev`, writing the report (when no `--output` is given) to `out` and
/// diagnostics to `err`. Returns the exit code.
pub fn run_with<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match args::Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{}", e.render());
                    EXIT_USAGE
                }
            };
        }
    };
    match execute(&cli) {
        Ok((text, failed)) => {
            let written = match &cli.global.output {
                Some(path) => std::fs::write(path, text.as_bytes())
                    .map_err(|e| InputError(format!("cannot write {}: {e}", path.display()))),
                None => out.write_all(text.as_bytes()).map_err(|e| InputError(format!("cannot write output: {e}"))),
            };
            match written {
                Ok(()) if failed => EXIT_CHECK_FAILED,
                Ok(()) => EXIT_OK,
                Err(e) => {
                    let _ = writeln!(err, "error: {e}");
                    EXIT_USAGE
                }
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}

fn execute(cli: &args::Cli) -> InputResult<(String, bool)> {
    let cfg = config(cli.global.abs_tol)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cli.global.workers)
        .build()
        .map_err(|e| InputError(format!("cannot start worker pool: {e}")))?;
    let mut report = pool.install(|| commands::dispatch(&cli.command, &cfg))?;
    report.echo("abs_tol", format::real(cfg.abs_tol));
    let text = report.render(cli.global.format)?;
    Ok((text, report.failed))
}
