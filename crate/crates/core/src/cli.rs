//! `majdes` command-line front end.

use std::ffi::OsString;
use std::io::{self, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::check::{run_suite, CheckReport, Suite, SuiteOptions};
use crate::formulas::{
    a_polynomial, catalan_top_term, f_three_row, f_two_row, related_distribution, RelatedPattern, ThreeRowIndex,
    TwoRowIndex,
};
use crate::perm::{distribution, Permutation};
use crate::qpoly::QPolynomial;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_COUNTEREXAMPLE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Environment variable capping the number of worker threads.
pub const THREADS_ENV: &str = "MAJDES_THREADS";

#[derive(Debug, Parser)]
#[command(name = "majdes", version, about = "Major index and descent distributions for pattern avoiders and tableaux")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Joint (maj, des) distribution over permutations avoiding a pattern.
    Dist(DistArgs),
    /// Evaluate a closed-form polynomial.
    Formula(FormulaArgs),
    /// Run an invariant sweep and write a JSON report.
    Check(CheckArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Direct,
    Derived,
}

#[derive(Debug, Args)]
struct DistArgs {
    #[arg(long)]
    pattern: Permutation,
    #[arg(short)]
    n: usize,
    #[arg(long, value_enum, default_value_t = Mode::Direct)]
    mode: Mode,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Which {
    F2,
    F3,
    #[value(name = "A")]
    A,
    Catalan,
}

#[derive(Debug, Args)]
struct FormulaArgs {
    #[arg(value_enum)]
    which: Which,
    #[arg(short)]
    n: Option<usize>,
    #[arg(short)]
    m: Option<usize>,
    #[arg(short)]
    k: Option<usize>,
    #[arg(short)]
    i: Option<usize>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Debug, Args)]
struct CheckArgs {
    #[arg(long)]
    suite: Suite,
    #[arg(long)]
    max_n: usize,
    /// Report file, rewritten after every completed unit.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Continue from the report at `--out`.
    #[arg(long, requires = "out")]
    resume: bool,
    /// Size bound for brute-force comparisons in the three-row suite.
    #[arg(long)]
    oracle_max_n: Option<usize>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

struct UsageError(String);

impl<E: std::fmt::Display> From<E> for UsageError {
    fn from(e: E) -> Self {
        UsageError(e.to_string())
    }
}

/// Parses `args` (including the program name), runs the command and returns
/// the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(rendered.as_bytes()) } else { out.write_all(rendered.as_bytes()) };
            return code;
        }
    };
    let result = match cli.command {
        Command::Dist(a) => cmd_dist(&a, out).map(|()| EXIT_PASS),
        Command::Formula(a) => cmd_formula(&a, out).map(|()| EXIT_PASS),
        Command::Check(a) => cmd_check(&a, out),
    };
    match result {
        Ok(code) => code,
        Err(UsageError(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
    }
}

/// Reads [`THREADS_ENV`] and sizes the global rayon pool.
pub fn configure_threads() -> Result<(), String> {
    let Ok(raw) = std::env::var(THREADS_ENV) else {
        return Ok(());
    };
    let n: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| format!("{THREADS_ENV} must be a positive integer, got {raw:?}"))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| e.to_string())
}

fn cmd_dist(a: &DistArgs, out: &mut dyn Write) -> Result<(), UsageError> {
    if a.n == 0 {
        return Err(UsageError("-n must be at least 1".into()));
    }
    let name = a.pattern.to_string();
    let dist = match a.mode {
        Mode::Direct => distribution(a.n, &a.pattern),
        Mode::Derived => {
            let which = RelatedPattern::from_name(&name)
                .ok_or_else(|| UsageError(format!("no derived distribution for pattern {name}; use 123, 231, 213 or 312")))?;
            related_distribution(which, a.n)?
        }
    };
    match a.format {
        Format::Text => writeln!(out, "{dist}")?,
        Format::Json => writeln!(out, "{}", json!({"n": a.n, "pattern": name, "terms": dist}))?,
    }
    Ok(())
}

fn need(v: Option<usize>, flag: &str, which: &str) -> Result<usize, UsageError> {
    v.ok_or_else(|| UsageError(format!("formula {which} needs -{flag}")))
}

fn cmd_formula(a: &FormulaArgs, out: &mut dyn Write) -> Result<(), UsageError> {
    let (name, params, poly): (&str, serde_json::Value, QPolynomial) = match a.which {
        Which::F2 => {
            let (n, k, i) = (need(a.n, "n", "f2")?, need(a.k, "k", "f2")?, need(a.i, "i", "f2")?);
            ("f2", json!({"n": n, "k": k, "i": i}), f_two_row(TwoRowIndex::new(n, k, i))?)
        }
        Which::F3 => {
            let (m, k, i) = (need(a.m, "m", "f3")?, need(a.k, "k", "f3")?, need(a.i, "i", "f3")?);
            ("f3", json!({"m": m, "k": k, "i": i}), f_three_row(ThreeRowIndex::new(m, k, i)?)?)
        }
        Which::A => {
            let (n, i) = (need(a.n, "n", "A")?, need(a.i, "i", "A")?);
            ("A", json!({"n": n, "i": i}), a_polynomial(n, i)?)
        }
        Which::Catalan => {
            let n = need(a.n, "n", "catalan")?;
            ("catalan", json!({"n": n}), catalan_top_term(n)?)
        }
    };
    match a.format {
        Format::Text => writeln!(out, "{poly}")?,
        Format::Json => writeln!(
            out,
            "{}",
            json!({"formula": name, "parameters": params, "polynomial": poly, "text": poly.to_string()})
        )?,
    }
    Ok(())
}

fn cmd_check(a: &CheckArgs, out: &mut dyn Write) -> Result<i32, UsageError> {
    let opts = SuiteOptions {
        max_n: a.max_n,
        oracle_max_n: a.oracle_max_n,
    };
    let previous = match (&a.out, a.resume) {
        (Some(path), true) if path.exists() => Some(CheckReport::load(path).map_err(|e| format!("{}: {e}", path.display()))?),
        (Some(path), true) => {
            log::warn!("{} does not exist; starting a fresh sweep", path.display());
            None
        }
        _ => None,
    };
    let mut save_error: Option<io::Error> = None;
    let report = run_suite(a.suite, opts, previous, |r| {
        if let (Some(path), None) = (&a.out, &save_error) {
            if let Err(e) = r.save(path) {
                save_error = Some(e);
            }
        }
    })?;
    if let Some(e) = save_error {
        return Err(UsageError(format!("writing report: {e}")));
    }
    // A resumed sweep with nothing left to do still leaves a report behind.
    if let Some(path) = &a.out {
        report.save(path)?;
    }
    match a.format {
        Format::Text => {
            writeln!(
                out,
                "{}: {} ({} cases, {} counterexamples)",
                report.check_name,
                if report.passed() { "pass" } else { "fail" },
                report.cases_checked,
                report.counterexamples.len()
            )?;
            for c in &report.counterexamples {
                writeln!(out, "  {:?}: expected {} got {}", c.parameters, c.expected, c.actual)?;
            }
        }
        Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(&report)?)?,
    }
    Ok(if report.passed() { EXIT_PASS } else { EXIT_COUNTEREXAMPLE })
}
