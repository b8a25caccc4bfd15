//! `qgc`: exact checks for braided invariant calculi and their Levi-Civita connections.
//!
//! Exit codes: 0 every requested check passed, 1 a check or input validation
//! failed, 2 the input could not be parsed, 3 an internal invariant broke.

mod checks;
mod input;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use checks::{Breach, Check, Pipeline};
use input::InputError;
use report::Report;

#[derive(Debug, Parser)]
#[command(name = "qgc", version, about = "Exact Levi-Civita connections on braided invariant calculi")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Braid relation, metric and self-adjointness.
    Validate(JobArgs),
    /// Symmetric splitting and Psym.
    Split(JobArgs),
    /// Solve for the Levi-Civita connection and certify it.
    SolveLc(JobArgs),
    /// Twist a group calculus by a cocycle and verify the deformed structures.
    Twist(JobArgs),
    /// Run the checks listed in --checks (all applicable ones by default).
    Report(JobArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Raw,
    Group,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Markdown,
}

#[derive(Debug, clap::Args)]
struct JobArgs {
    #[arg(long, value_enum)]
    mode: Option<Mode>,
    /// Calculus spec (raw mode) or group spec (group mode), JSON.
    #[arg(long)]
    spec: Option<PathBuf>,
    /// Group preset: Z<k> for k ≤ 8, Z2xZ2, S3, D4.
    #[arg(long)]
    group: Option<String>,
    /// Comma-separated indices of the conjugation-invariant subset.
    #[arg(long)]
    subset: Option<String>,
    /// Cocycle file, JSON.
    #[arg(long)]
    cocycle: Option<PathBuf>,
    /// Report file; standard output when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    /// Comma-separated checks, or `all`; an empty string runs none.
    #[arg(long)]
    checks: Option<String>,
}

enum Failure {
    Parse(String),
    Invalid(String),
    Breach(String),
}

impl From<InputError> for Failure {
    fn from(e: InputError) -> Self {
        match e {
            InputError::Parse(m) => Failure::Parse(m),
            InputError::Invalid(m) => Failure::Invalid(m),
        }
    }
}

impl From<Breach> for Failure {
    fn from(b: Breach) -> Self {
        Failure::Breach(b.0)
    }
}

fn max_order() -> Result<usize, Failure> {
    match std::env::var("QGC_MAX_ORDER") {
        Err(_) => Ok(24),
        Ok(v) => v.trim().parse().map_err(|_| Failure::Parse(format!("QGC_MAX_ORDER={v:?} is not a number"))),
    }
}

fn default_checks(command: &str, mode: Mode, has_cocycle: bool) -> Vec<Check> {
    let list: &[Check] = match command {
        "validate" => &[Check::Braid, Check::Metric, Check::SelfAdjoint],
        "split" => &[Check::Braid, Check::Split],
        "solve-lc" => &[Check::Braid, Check::Split, Check::Metric, Check::P23, Check::SolveLc],
        "twist" => &[Check::Twist],
        _ => &Check::ALL,
    };
    list.iter()
        .copied()
        .filter(|c| mode == Mode::Group || !c.needs_group())
        .filter(|c| *c != Check::Twist || has_cocycle || command == "twist")
        .collect()
}

fn parse_checks(text: &str) -> Result<Vec<Check>, Failure> {
    let mut out: Vec<Check> =
        text.split(',').filter(|s| !s.trim().is_empty()).map(str::parse).collect::<Result<_, _>>().map_err(Failure::Parse)?;
    out.sort();
    out.dedup();
    Ok(out)
}

fn run(command: &str, args: &JobArgs) -> Result<Report, Failure> {
    let mode = args.mode.unwrap_or(if args.group.is_some() { Mode::Group } else { Mode::Raw });
    if command == "twist" && mode != Mode::Group {
        return Err(Failure::Parse("twist requires --mode group".into()));
    }
    let has_cocycle = args.cocycle.is_some();
    let checks = match args.checks.as_deref().map(str::trim) {
        Some("all") => default_checks("report", mode, has_cocycle),
        Some(text) => parse_checks(text)?,
        None => default_checks(command, mode, has_cocycle),
    };
    if mode == Mode::Raw {
        if let Some(c) = checks.iter().find(|c| c.needs_group()) {
            return Err(Failure::Parse(format!("check {c} requires --mode group")));
        }
    }
    let (mut pipeline, input) = match mode {
        Mode::Raw => {
            let path = args.spec.as_ref().ok_or_else(|| Failure::Parse("raw mode needs --spec".into()))?;
            let calc = input::load_raw(path)?;
            let input = json!({ "n": calc.n, "labels": calc.labels, "metric_given": calc.metric.is_some(), "mc_given": calc.mc.is_some() });
            (Pipeline::raw(calc), input)
        }
        Mode::Group => {
            let job = input::load_group(args.spec.as_deref(), args.group.as_deref(), args.subset.as_deref(), max_order()?)?;
            let cocycle = args.cocycle.as_ref().map(|p| input::load_cocycle(p, &job.spec.group)).transpose()?;
            let input = json!({
                "group": job.spec.group.name,
                "order": job.spec.group.order(),
                "subset": job.spec.subset,
                "labels": job.spec.labels(),
                "metric_given": job.metric.is_some(),
                "cocycle_given": cocycle.is_some(),
            });
            (Pipeline::group(job.spec, job.metric, cocycle)?, input)
        }
    };
    let results = checks.iter().map(|&c| pipeline.run(c)).collect::<Result<Vec<_>, _>>()?;
    let mode_name = if mode == Mode::Raw { "raw" } else { "group" };
    Ok(Report::new(command, mode_name, input, results))
}

fn emit(text: &str, out: Option<&PathBuf>) -> Result<(), String> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|e| format!("{}: {e}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (name, args) = match &cli.command {
        Command::Validate(a) => ("validate", a),
        Command::Split(a) => ("split", a),
        Command::SolveLc(a) => ("solve-lc", a),
        Command::Twist(a) => ("twist", a),
        Command::Report(a) => ("report", a),
    };
    match run(name, args) {
        Ok(report) => {
            let text = match args.format {
                Format::Json => report.to_json(),
                Format::Markdown => report.to_markdown(),
            };
            if let Err(e) = emit(&text, args.out.as_ref()) {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
            for c in report.checks.iter().filter(|c| !c.pass) {
                match &c.residual {
                    serde_json::Value::String(why) => eprintln!("FAIL {}: {why}", c.name),
                    _ => eprintln!("FAIL {}: nonzero residual", c.name),
                }
            }
            ExitCode::from(if report.summary.all_passed { 0 } else { 1 })
        }
        Err(Failure::Parse(m)) => {
            eprintln!("parse error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Invalid(m)) => {
            eprintln!("validation failed: {m}");
            ExitCode::from(1)
        }
        Err(Failure::Breach(m)) => {
            eprintln!("internal invariant violated: {m}");
            ExitCode::from(3)
        }
    }
}
