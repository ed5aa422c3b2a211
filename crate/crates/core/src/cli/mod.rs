//! The `elab` command line: estimates, convergence tables, figure data, the
//! property suites and the JSON service.

pub mod estimate;
pub mod figures;
pub mod grid;
pub mod serve;
pub mod table;
pub mod verify;

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::report::{fmt17, write_csv, FigureId, Method};
use crate::slopes::QuotientKind;

use estimate::{cmd_estimate, EstimateParams};
use figures::{cmd_figures, DEFAULT_SAMPLES};
use grid::Grid;
use table::{cmd_table, TableKind, TableParams};
use verify::{cmd_verify, Suite};

/// Exit status for usage and parameter errors.
pub const EXIT_USAGE: i32 = 2;
/// Exit status for failed checks and runtime failures.
pub const EXIT_FAILURE: i32 = 1;
pub const DEFAULT_SEED: u64 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "elab", version, about = "Constructions of e: estimates, tables, figure data and checks")]
pub struct Cli {
    /// Output format; tables default to csv, everything else to json
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Seed for the randomized property checks
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Write output here instead of stdout
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Estimate e by one method
    Estimate(EstimateArgs),
    /// Emit a convergence table
    Table(TableArgs),
    /// Emit the sampled curves behind a figure
    Figures(FigureArgs),
    /// Run the property suites
    Verify(VerifyArgs),
    /// Serve the JSON API
    Serve(ServeArgs),
}

#[derive(Debug, Args)]
pub struct EstimateArgs {
    #[arg(long, value_enum)]
    pub method: Method,
    /// Base a > 1 (stretch)
    #[arg(long)]
    pub base: Option<f64>,
    /// Offset h (stretch)
    #[arg(long, allow_negative_numbers = true)]
    pub h: Option<f64>,
    /// Difference quotient kind (stretch)
    #[arg(long, value_enum, default_value_t = QuotientKind::Forward)]
    pub quotient: QuotientKind,
    /// Compounding periods or Euler steps (compound, euler)
    #[arg(long)]
    pub n: Option<u64>,
    /// Index of the last series term (series)
    #[arg(long)]
    pub terms: Option<u64>,
    /// Midpoint-rule panels (log-inverse)
    #[arg(long)]
    pub panels: Option<u64>,
}

#[derive(Debug, Args)]
pub struct TableArgs {
    #[arg(long, value_enum)]
    pub kind: TableKind,
    /// `pow10:a..b` or `dyadic:a..b`
    #[arg(long, value_parser = parse_grid)]
    pub grid: Option<Grid>,
    /// Exponent x (compound-x, euler)
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub x: f64,
    /// Comma-separated rates (pitfall)
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true, default_values_t = [0.0, 1.0, 2.0])]
    pub c: Vec<f64>,
    /// Evaluate rows on the rayon pool
    #[arg(long)]
    pub parallel: bool,
}

#[derive(Debug, Args)]
pub struct FigureArgs {
    #[arg(long = "figure", value_enum)]
    pub figure_id: FigureId,
    /// Points per sampled curve, 16..=4096
    #[arg(long, default_value_t = DEFAULT_SAMPLES)]
    pub samples: usize,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Run only this suite
    #[arg(long, value_enum)]
    pub suite: Option<Suite>,
}

#[derive(Debug, Args)]
pub struct ServeArgs {
    #[arg(long, default_value_t = 8080)]
    pub port: u16,
    #[arg(long, default_value = "127.0.0.1")]
    pub host: String,
    /// Worker threads; defaults to the available parallelism
    #[arg(long)]
    pub workers: Option<usize>,
}

fn parse_grid(s: &str) -> Result<Grid, String> {
    s.parse().map_err(|e: crate::Error| e.to_string())
}

enum Failure {
    Usage(String),
    Runtime(String),
}

impl From<crate::Error> for Failure {
    fn from(e: crate::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Runtime(e.to_string())
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        Failure::Runtime(e.to_string())
    }
}

fn to_json<T: serde::Serialize>(v: &T) -> Result<String, Failure> {
    serde_json::to_string_pretty(v).map(|s| s + "\n").map_err(|e| Failure::Runtime(e.to_string()))
}

fn csv_string(write: impl FnOnce(&mut csv::Writer<Vec<u8>>) -> csv::Result<()>) -> Result<String, Failure> {
    let mut w = csv::Writer::from_writer(Vec::new());
    write(&mut w)?;
    let bytes = w.into_inner().map_err(|e| Failure::Runtime(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Failure::Runtime(e.to_string()))
}

fn render_estimate(cli: &Cli, a: &EstimateArgs) -> Result<String, Failure> {
    let params = EstimateParams {
        base: a.base,
        h: a.h,
        quotient: a.quotient,
        n: a.n,
        terms: a.terms,
        panels: a.panels,
    };
    let report = cmd_estimate(a.method, &params)?;
    match cli.format.unwrap_or(Format::Json) {
        Format::Json => to_json(&report),
        Format::Csv => csv_string(|w| {
            let method = report.method.to_possible_value().expect("no skipped variants").get_name().to_owned();
            let mut header = vec!["method".to_owned(), "estimate".into(), "error_vs_reference".into(), "certificate".into()];
            header.extend(report.parameters.keys().cloned());
            let mut row = vec![
                method,
                fmt17(report.estimate),
                fmt17(report.error_vs_reference),
                report.certificate.map(fmt17).unwrap_or_default(),
            ];
            row.extend(report.parameters.values().map(|&v| fmt17(v)));
            w.write_record(header)?;
            w.write_record(row)
        }),
    }
}

fn render_table(cli: &Cli, a: &TableArgs) -> Result<String, Failure> {
    let params = TableParams { kind: a.kind, grid: a.grid, x: a.x, c: a.c.clone(), parallel: a.parallel };
    let rows = cmd_table(&params)?;
    match cli.format.unwrap_or(Format::Csv) {
        Format::Json => to_json(&rows),
        Format::Csv => {
            let mut buf = Vec::new();
            write_csv(&rows, &mut buf)?;
            String::from_utf8(buf).map_err(|e| Failure::Runtime(e.to_string()))
        }
    }
}

fn render_figures(cli: &Cli, a: &FigureArgs) -> Result<String, Failure> {
    let fig = cmd_figures(a.figure_id, a.samples)?;
    match cli.format.unwrap_or(Format::Json) {
        Format::Json => to_json(&fig),
        Format::Csv => csv_string(|w| {
            w.write_record(["curve", "x", "y"])?;
            for c in &fig.curves {
                for &(x, y) in &c.points {
                    w.write_record([c.label.as_str(), &fmt17(x), &fmt17(y)])?;
                }
            }
            Ok(())
        }),
    }
}

/// Output text and whether every check passed.
fn render_verify(cli: &Cli, a: &VerifyArgs) -> Result<(String, verify::VerifySummary), Failure> {
    let suites: Vec<Suite> = a.suite.map_or_else(|| Suite::ALL.to_vec(), |s| vec![s]);
    let summary = cmd_verify(&suites, cli.seed);
    let text = match cli.format {
        None => summary.render_text(),
        Some(Format::Json) => to_json(&summary)?,
        Some(Format::Csv) => csv_string(|w| {
            w.write_record(["suite", "id", "status", "detail"])?;
            for r in &summary.results {
                let status = if r.passed { "pass" } else { "fail" };
                w.write_record([r.suite.name(), r.id, status, r.detail.as_deref().unwrap_or("")])?;
            }
            Ok(())
        })?,
    };
    Ok((text, summary))
}

fn emit(cli: &Cli, text: &str, stdout: &mut dyn Write) -> io::Result<()> {
    match &cli.out {
        Some(path) => File::create(path)?.write_all(text.as_bytes()),
        None => stdout.write_all(text.as_bytes()),
    }
}

fn serve(a: &ServeArgs, stderr: &mut dyn Write) -> i32 {
    let addr = format!("{}:{}", a.host, a.port);
    let server = match serve::Server::bind(&addr) {
        Ok(s) => s,
        Err(e) => {
            let _ = writeln!(stderr, "error: cannot listen on {addr}: {e}");
            return EXIT_FAILURE;
        }
    };
    let _ = writeln!(stderr, "listening on http://{}:{}", a.host, server.port());
    let workers = a.workers.unwrap_or_else(|| thread_count().max(2));
    server.spawn(workers).join();
    0
}

fn thread_count() -> usize {
    std::thread::available_parallelism().map(|n| n.get()).unwrap_or(4)
}

/// Runs the command line and returns the process exit status.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() { stderr.write_all(rendered.as_bytes()) } else { stdout.write_all(rendered.as_bytes()) };
            return code;
        }
    };
    let mut verify_failures = None;
    let result = match &cli.command {
        Command::Estimate(a) => render_estimate(&cli, a),
        Command::Table(a) => render_table(&cli, a),
        Command::Figures(a) => render_figures(&cli, a),
        Command::Verify(a) => render_verify(&cli, a).map(|(text, summary)| {
            verify_failures = Some(summary.failures().map(|r| r.qualified_id()).collect::<Vec<_>>());
            text
        }),
        Command::Serve(a) => return serve(a, stderr),
    };
    let text = match result {
        Ok(t) => t,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            return EXIT_USAGE;
        }
        Err(Failure::Runtime(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            return EXIT_FAILURE;
        }
    };
    if let Err(e) = emit(&cli, &text, stdout) {
        let _ = writeln!(stderr, "error: cannot write output: {e}");
        return EXIT_FAILURE;
    }
    match verify_failures {
        Some(ids) if !ids.is_empty() => {
            let _ = writeln!(stderr, "verify failed: {}", ids.join(", "));
            EXIT_FAILURE
        }
        _ => 0,
    }
}
