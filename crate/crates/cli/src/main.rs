//! `delpezzo`: runs the verification suites and writes presentation and
//! feasibility data.
//!
//! Exit codes: 0 success, 1 a check failed, 2 usage error.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use delpezzo_core::algebra::is_prime;
use delpezzo_core::delpezzo::{quotient_presentation, reverify, QuadricChart};
use delpezzo_core::numerics::feasibility_region;
use delpezzo_core::quotient::Presentation;
use delpezzo_core::report::Report;
use delpezzo_core::suite::{run_suite, Suite};

const OUT_DIR_VAR: &str = "DELPEZZO_OUT_DIR";

#[derive(Parser)]
#[command(name = "delpezzo", version, about = "Exact checks for foliation quotients of a quadric in characteristic 2")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    Foliations,
    Presentation,
    Singular,
    Cusp,
    Numerics,
    All,
}

impl From<SuiteArg> for Suite {
    fn from(s: SuiteArg) -> Self {
        match s {
            SuiteArg::Foliations => Suite::Foliations,
            SuiteArg::Presentation => Suite::Presentation,
            SuiteArg::Singular => Suite::Singular,
            SuiteArg::Cusp => Suite::Cusp,
            SuiteArg::Numerics => Suite::Numerics,
            SuiteArg::All => Suite::All,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Run a verification suite.
    Verify {
        #[arg(long, value_enum, default_value = "all")]
        suite: SuiteArg,
        /// Affine chart `X_i != 0`.
        #[arg(long, default_value_t = 0, value_parser = clap::value_parser!(u8).range(0..=3))]
        chart: u8,
        /// Print the report as JSON.
        #[arg(long)]
        json: bool,
    },
    /// Feasible pairs `(d, q)` with `6 q >= d (p^2 - 1)`.
    Feasibility {
        #[arg(long, default_value_t = 2)]
        p: u64,
        #[arg(long, default_value_t = 12)]
        d_max: u64,
        #[arg(long, default_value_t = 8)]
        q_max: u64,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
        /// Output file; stdout if absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compute, verify and write the presentation of the quotient chart ring.
    Presentation {
        #[arg(long, default_value_t = 0, value_parser = clap::value_parser!(u8).range(0..=3))]
        chart: u8,
        /// Output file; stdout if absent.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Re-verify a previously written presentation instead.
        #[arg(long, conflicts_with = "out")]
        input: Option<PathBuf>,
    },
}

enum Failure {
    Usage(String),
    Checks,
    Internal(anyhow::Error),
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Internal(e)
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Checks) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Internal(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Verify { suite, chart, json } => verify(suite.into(), chart as usize, json),
        Command::Feasibility { p, d_max, q_max, format, out } => feasibility(p, d_max, q_max, format, out),
        Command::Presentation { input: Some(input), .. } => reverify_file(&input),
        Command::Presentation { chart, out, input: None } => presentation(chart as usize, out),
    }
}

fn report_json(suite: Suite, chart: usize, report: &Report) -> Value {
    let failed = report.failures().count();
    json!({
        "chart": chart,
        "checks": report.checks,
        "counts": { "fail": failed, "pass": report.checks.len() - failed, "total": report.checks.len() },
        "suite": suite.name(),
    })
}

/// Writes to stdout; a closed pipe is not an error.
fn say(text: &str) {
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
}

fn print_human(report: &Report) {
    let mut text = String::new();
    for c in &report.checks {
        let status = if c.passed() { "PASS" } else { "FAIL" };
        match &c.witness {
            Some(w) => text.push_str(&format!("{status}  {}  [{w}]\n", c.check_name)),
            None => text.push_str(&format!("{status}  {}\n", c.check_name)),
        }
    }
    say(&text);
}

fn verify(suite: Suite, chart: usize, as_json: bool) -> Result<(), Failure> {
    let start = Instant::now();
    let report = run_suite(suite, chart).with_context(|| format!("suite {suite} on chart {chart}"))?;
    let elapsed = start.elapsed();
    let failed = report.failures().count();
    if as_json {
        let text = serde_json::to_string_pretty(&report_json(suite, chart, &report)).context("serializing report")?;
        say(&(text + "\n"));
        eprintln!("suite {suite}: {} checks, {failed} failed, {:.3} s", report.checks.len(), elapsed.as_secs_f64());
    } else {
        print_human(&report);
        say(&format!(
            "suite {suite}, chart {chart}: {} passed, {failed} failed, {:.3} s\n",
            report.checks.len() - failed,
            elapsed.as_secs_f64()
        ));
    }
    if failed == 0 {
        Ok(())
    } else {
        Err(Failure::Checks)
    }
}

/// `out`, joined onto the output directory variable when that is set and
/// `out` is relative.
fn resolve_out(out: &Path) -> PathBuf {
    match std::env::var_os(OUT_DIR_VAR) {
        Some(dir) if out.is_relative() => PathBuf::from(dir).join(out),
        _ => out.to_path_buf(),
    }
}

fn emit(text: &str, out: Option<PathBuf>) -> Result<(), Failure> {
    match out {
        None => say(text),
        Some(path) => {
            let path = resolve_out(&path);
            if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
                std::fs::create_dir_all(parent).with_context(|| format!("creating {}", parent.display()))?;
            }
            std::fs::write(&path, text).with_context(|| format!("writing {}", path.display()))?;
            eprintln!("wrote {}", path.display());
        }
    }
    Ok(())
}

fn feasibility(p: u64, d_max: u64, q_max: u64, format: Format, out: Option<PathBuf>) -> Result<(), Failure> {
    if !is_prime(p) {
        return Err(Failure::Usage(format!("--p {p} is not prime")));
    }
    let table = feasibility_region(p, d_max, q_max);
    let text = match format {
        Format::Csv => table.to_csv(),
        Format::Json => serde_json::to_string_pretty(&table.to_json()).context("serializing table")? + "\n",
    };
    emit(&text, out)
}

fn presentation(chart: usize, out: Option<PathBuf>) -> Result<(), Failure> {
    let qc = QuadricChart::new(chart).context("building the chart")?;
    let run = quotient_presentation(&qc).context("computing the presentation")?;
    if !run.report.passed() {
        print_human(&run.report);
        return Err(Failure::Checks);
    }
    let text = serde_json::to_string_pretty(&run.presentation.to_json()).context("serializing presentation")? + "\n";
    emit(&text, out)
}

fn reverify_file(path: &Path) -> Result<(), Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("reading {}: {e}", path.display())))?;
    let value: Value =
        serde_json::from_str(&text).map_err(|e| Failure::Usage(format!("parsing {}: {e}", path.display())))?;
    let (presentation, s) =
        Presentation::from_json(&value).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    let report = reverify(&presentation, &s).context("verifying")?;
    print_human(&report);
    if report.passed() {
        Ok(())
    } else {
        Err(Failure::Checks)
    }
}
