//! The `pqbbh` command line.
//!
//! Every subcommand produces a [`Table`]; `--format csv|json` picks the
//! encoding and `--output` redirects it to a file. Exit codes: 0 success,
//! 2 usage, 3 numeric domain, 4 I/O.

pub mod format;

use std::ffi::OsString;
use std::fmt;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::analysis::{
    convergence_report, moment_closed, rate_bound_check, stancu_bound, test_function, GridSpec, HarmonicSchedule,
    DEFAULT_POINTS, DEFAULT_X_MAX,
};
use crate::divided::representation;
use crate::error::Error;
use crate::expr::{parse_expression, Expr};
use crate::function::{RealFunction, Registered};
use crate::operator::OperatorSpec;
use crate::pq::PqParams;

pub use format::{fmt_num, Cell, Table};

pub const EXIT_OK: u8 = 0;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_DOMAIN: u8 = 3;
pub const EXIT_IO: u8 = 4;

#[derive(Debug, Parser, Serialize)]
#[command(
    name = "pqbbh",
    version,
    about = "(p,q)-Bleimann-Butzer-Hahn operators: evaluation and convergence experiments"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(tag = "command", rename_all = "kebab-case")]
pub enum Command {
    /// Evaluate L_n(f; x), optionally with Stancu shifts.
    Eval(EvalArgs),
    /// Closed-form moment next to the brute-force operator sum.
    Moments(MomentsArgs),
    /// Korovkin discrepancy and sup δ_n along a parameter schedule.
    Converge(ConvergeArgs),
    /// Check |L_n f - f| ≤ 2ω̃(f; √δ_n) over a grid.
    Rate(RateArgs),
    /// Both sides of the divided-difference representation.
    Represent(RepresentArgs),
    /// The three-term bound for the Stancu variant.
    StancuBound(StancuBoundArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Args, Serialize)]
pub struct OutputArgs {
    /// Output encoding.
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Write to this file instead of stdout.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args, Serialize)]
pub struct OperatorArgs {
    /// Degree (n ≥ 1).
    #[arg(long)]
    pub n: u32,
    #[arg(long)]
    pub p: f64,
    /// q < p; q = p selects the limit case.
    #[arg(long)]
    pub q: f64,
}

#[derive(Debug, Args, Serialize)]
#[group(required = true, multiple = false)]
pub struct FunctionArgs {
    /// Expression in t, e.g. "t/(1+t)".
    #[arg(long = "fn", value_name = "EXPR")]
    #[serde(rename = "fn")]
    pub expr: Option<String>,
    /// Built-in function: one, bbh_metric, bbh_metric_sq, exp_neg, sin_damped.
    #[arg(long, value_name = "NAME")]
    pub registry: Option<String>,
}

#[derive(Debug, Args, Serialize)]
pub struct GridArgs {
    #[arg(long, default_value_t = DEFAULT_X_MAX)]
    pub x_max: f64,
    #[arg(long, default_value_t = DEFAULT_POINTS)]
    pub points: usize,
}

#[derive(Debug, Args, Serialize)]
pub struct EvalArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub op: OperatorArgs,
    #[arg(long, requires = "beta")]
    pub gamma: Option<f64>,
    #[arg(long, requires = "gamma")]
    pub beta: Option<f64>,
    #[command(flatten)]
    #[serde(flatten)]
    pub function: FunctionArgs,
    #[arg(long)]
    pub x: f64,
    #[command(flatten)]
    #[serde(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args, Serialize)]
pub struct MomentsArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub op: OperatorArgs,
    #[arg(long, value_parser = clap::value_parser!(u32).range(0..=2))]
    pub nu: u32,
    #[arg(long)]
    pub x: f64,
    #[command(flatten)]
    #[serde(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args, Serialize)]
pub struct ConvergeArgs {
    /// harmonic:A,B  (p_n = 1 - A/n, q_n = 1 - B/n)
    #[arg(long, value_parser = parse_schedule)]
    #[serde(serialize_with = "as_display")]
    pub schedule: HarmonicSchedule,
    /// Comma-separated degrees.
    #[arg(long, value_delimiter = ',', required = true)]
    pub n_list: Vec<u32>,
    #[arg(long, value_parser = clap::value_parser!(u32).range(0..=2))]
    pub nu: u32,
    #[command(flatten)]
    #[serde(flatten)]
    pub grid: GridArgs,
    #[command(flatten)]
    #[serde(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args, Serialize)]
pub struct RateArgs {
    #[arg(long, value_parser = parse_schedule)]
    #[serde(serialize_with = "as_display")]
    pub schedule: HarmonicSchedule,
    #[arg(long)]
    pub n: u32,
    #[command(flatten)]
    #[serde(flatten)]
    pub function: FunctionArgs,
    #[command(flatten)]
    #[serde(flatten)]
    pub grid: GridArgs,
    #[command(flatten)]
    #[serde(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args, Serialize)]
pub struct RepresentArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub op: OperatorArgs,
    #[command(flatten)]
    #[serde(flatten)]
    pub function: FunctionArgs,
    #[arg(long)]
    pub x: f64,
    #[command(flatten)]
    #[serde(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args, Serialize)]
pub struct StancuBoundArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub op: OperatorArgs,
    #[arg(long, allow_hyphen_values = true)]
    pub gamma: f64,
    #[arg(long)]
    pub beta: f64,
    #[arg(long)]
    pub alpha: f64,
    #[arg(long)]
    pub m: f64,
    #[command(flatten)]
    #[serde(flatten)]
    pub output: OutputArgs,
}

fn parse_schedule(s: &str) -> Result<HarmonicSchedule, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn as_display<T: fmt::Display, S: serde::Serializer>(v: &T, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(v)
}

/// A failed command, classified by exit code.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Domain(String),
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Domain(_) => EXIT_DOMAIN,
            CliError::Io(_) => EXIT_IO,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Domain(m) => write!(f, "{m}"),
            CliError::Io(m) => write!(f, "I/O error: {m}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidParams(_) | Error::InvalidOperator(_) | Error::VariantMismatch(_) | Error::Grid(_) => {
                CliError::Usage(e.to_string())
            }
            _ => CliError::Domain(e.to_string()),
        }
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

/// A function given on the command line.
#[derive(Debug, Clone)]
pub enum Source {
    Expr(Expr),
    Registry(Registered),
}

impl RealFunction for Source {
    fn eval(&self, t: f64) -> Result<f64, crate::FunctionError> {
        match self {
            Source::Expr(e) => RealFunction::eval(e, t),
            Source::Registry(r) => RealFunction::eval(r, t),
        }
    }
}

impl FunctionArgs {
    pub fn resolve(&self) -> Result<Source, CliError> {
        match (&self.expr, &self.registry) {
            (Some(text), None) => parse_expression(text)
                .map(Source::Expr)
                .map_err(|e| CliError::Usage(format!("--fn: {e}"))),
            (None, Some(name)) => name.parse().map(Source::Registry).map_err(CliError::Usage),
            _ => Err(CliError::Usage("give exactly one of --fn and --registry".into())),
        }
    }
}

impl OperatorArgs {
    /// `q == p` on input means the limit case.
    pub fn params(&self) -> Result<PqParams, CliError> {
        let params = if self.q == self.p {
            PqParams::limit(self.p)
        } else {
            PqParams::new(self.p, self.q)
        };
        Ok(params?)
    }

    pub fn base(&self) -> Result<OperatorSpec, CliError> {
        Ok(OperatorSpec::base(self.n, self.params()?)?)
    }
}

impl GridArgs {
    pub fn grid(&self) -> Result<GridSpec, CliError> {
        Ok(GridSpec::half_line(self.x_max, self.points)?)
    }
}

fn check_x(x: f64) -> Result<(), CliError> {
    if !(x.is_finite() && x >= 0.0) {
        return Err(CliError::Usage(format!("--x must be finite and >= 0, got {x}")));
    }
    Ok(())
}

/// What a command produced, ready to encode.
pub struct Outcome {
    pub table: Table,
    /// `eval` without `--format` prints just the value.
    pub bare: Option<f64>,
}

impl Outcome {
    fn table(table: Table) -> Self {
        Self { table, bare: None }
    }
}

pub fn execute(command: &Command) -> Result<Outcome, CliError> {
    match command {
        Command::Eval(a) => {
            check_x(a.x)?;
            let f = a.function.resolve()?;
            let params = a.op.params()?;
            let spec = match (a.gamma, a.beta) {
                (Some(gamma), Some(beta)) => OperatorSpec::stancu(a.op.n, params, gamma, beta)?,
                _ => OperatorSpec::base(a.op.n, params)?,
            };
            let value = spec.evaluate(&f, a.x)?;
            let mut table = Table::new(&["x", "value"]);
            table.push(vec![Cell::Num(a.x), Cell::Num(value)]);
            Ok(Outcome {
                table,
                bare: a.output.format.is_none().then_some(value),
            })
        }
        Command::Moments(a) => {
            check_x(a.x)?;
            let spec = a.op.base()?;
            let closed = moment_closed(&spec, a.nu, a.x)?;
            let brute = spec.evaluate(&test_function(a.nu), a.x)?;
            let mut table = Table::new(&["nu", "x", "closed_form", "brute_force", "abs_diff"]);
            table.push(vec![
                Cell::Int(a.nu.into()),
                Cell::Num(a.x),
                Cell::Num(closed),
                Cell::Num(brute),
                Cell::Num((closed - brute).abs()),
            ]);
            Ok(Outcome::table(table))
        }
        Command::Converge(a) => {
            let grid = a.grid.grid()?;
            let report = convergence_report(&a.schedule, &a.n_list, &grid, None)?;
            let mut table = Table::new(&["n", "p_n", "q_n", "nu", "discrepancy", "sup_delta_n"]);
            for row in &report.rows {
                table.push(vec![
                    Cell::Int(row.n.into()),
                    Cell::Num(row.p),
                    Cell::Num(row.q),
                    Cell::Int(a.nu.into()),
                    Cell::Num(row.discrepancy[a.nu as usize]),
                    Cell::Num(row.sup_delta),
                ]);
            }
            Ok(Outcome::table(table))
        }
        Command::Rate(a) => {
            let f = a.function.resolve()?;
            let grid = a.grid.grid()?;
            let spec = OperatorSpec::base(a.n, crate::analysis::param_schedule(&a.schedule, a.n)?)?;
            let report = rate_bound_check(&spec, &f, &grid)?;
            let mut table = Table::new(&["x", "lhs", "rhs", "pass"]);
            for pt in &report.points {
                table.push(vec![
                    Cell::Num(pt.x),
                    Cell::Num(pt.lhs),
                    Cell::Num(pt.rhs),
                    Cell::Bool(pt.pass),
                ]);
            }
            Ok(Outcome::table(table))
        }
        Command::Represent(a) => {
            let f = a.function.resolve()?;
            let spec = a.op.base()?;
            let r = representation(&spec, &f, a.x)?;
            let mut table = Table::new(&["x", "lhs", "rhs", "abs_diff"]);
            table.push(vec![
                Cell::Num(r.x),
                Cell::Num(r.lhs),
                Cell::Num(r.rhs),
                Cell::Num(r.abs_diff()),
            ]);
            Ok(Outcome::table(table))
        }
        Command::StancuBound(a) => {
            let spec = OperatorSpec::stancu(a.op.n, a.op.params()?, a.gamma, a.beta)?;
            let b = stancu_bound(&spec, a.m, a.alpha)?;
            let mut table = Table::new(&["term1", "term2", "term3", "max_term", "bound", "degenerate"]);
            table.push(vec![
                Cell::Num(b.terms[0]),
                Cell::Num(b.terms[1]),
                Cell::Num(b.terms[2]),
                Cell::Num(b.max_term),
                Cell::Num(b.bound),
                Cell::Bool(b.degenerate()),
            ]);
            Ok(Outcome::table(table))
        }
    }
}

fn output_args(command: &Command) -> &OutputArgs {
    match command {
        Command::Eval(a) => &a.output,
        Command::Moments(a) => &a.output,
        Command::Converge(a) => &a.output,
        Command::Rate(a) => &a.output,
        Command::Represent(a) => &a.output,
        Command::StancuBound(a) => &a.output,
    }
}

fn emit<W: Write>(cli: &Cli, outcome: &Outcome, out: W) -> io::Result<()> {
    let mut out = BufWriter::new(out);
    match (outcome.bare, output_args(&cli.command).format) {
        (Some(v), _) => writeln!(out, "{}", fmt_num(v))?,
        (None, Some(Format::Json)) => outcome.table.write_json(&mut out, &cli.command)?,
        (None, _) => outcome.table.write_csv(&mut out)?,
    }
    out.flush()
}

fn run_parsed<W: Write>(cli: &Cli, stdout: &mut W) -> Result<(), CliError> {
    let outcome = execute(&cli.command)?;
    match &output_args(&cli.command).output {
        Some(path) => {
            let file = File::create(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
            emit(cli, &outcome, file).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
        }
        None => Ok(emit(cli, &outcome, stdout)?),
    }
}

/// Parses `args` (including the program name), runs the command and returns
/// the exit code. Diagnostics go to `stderr`.
pub fn run<I, T, W, E>(args: I, stdout: &mut W, stderr: &mut E) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
    W: Write,
    E: Write,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                let _ = write!(stderr, "{}", e.render());
                EXIT_USAGE
            } else {
                let _ = write!(stdout, "{}", e.render());
                EXIT_OK
            };
            return code;
        }
    };
    match run_parsed(&cli, stdout) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(stderr, "pqbbh: {e}");
            e.exit_code()
        }
    }
}
