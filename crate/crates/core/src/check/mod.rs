//! Invariant sweeps: each suite walks an ordered list of units (usually one
//! per `n`), checks every case in a unit, and folds the outcome into a
//! [`CheckReport`]. Cases inside a unit run in parallel; units run in order
//! so a report can name the last finished unit and be resumed.

mod report;
mod suites;

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

pub use report::{CheckReport, Counterexample, ParamValue, Params, Verdict};

use crate::params;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Suite {
    Unimodality,
    FormulaVsOracle,
    FormulaVsRecurrence,
    Identities,
    Rsk,
    Relations,
    Catalan,
    ThreeRow,
    Bijection,
    NonUnimodality132,
    StanleyHook,
}

impl Suite {
    pub const ALL: [Suite; 11] = [
        Suite::Unimodality,
        Suite::FormulaVsOracle,
        Suite::FormulaVsRecurrence,
        Suite::Identities,
        Suite::Rsk,
        Suite::Relations,
        Suite::Catalan,
        Suite::ThreeRow,
        Suite::Bijection,
        Suite::NonUnimodality132,
        Suite::StanleyHook,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Unimodality => "unimodality",
            Suite::FormulaVsOracle => "formula-vs-oracle",
            Suite::FormulaVsRecurrence => "formula-vs-recurrence",
            Suite::Identities => "identities",
            Suite::Rsk => "rsk",
            Suite::Relations => "relations",
            Suite::Catalan => "catalan",
            Suite::ThreeRow => "three-row",
            Suite::Bijection => "bijection",
            Suite::NonUnimodality132 => "non-unimodality-132",
            Suite::StanleyHook => "stanley-hook",
        }
    }

    /// Name of the per-unit parameter and the unit values up to `max_n`.
    fn units(self, max_n: usize) -> (&'static str, Vec<usize>) {
        let from = |lo: usize| (lo..=max_n).collect::<Vec<_>>();
        match self {
            Suite::Identities => ("bound", from(0)),
            Suite::ThreeRow | Suite::Bijection => ("size", from(3)),
            Suite::Catalan => ("n", from(2)),
            Suite::NonUnimodality132 => ("n", from(3)),
            Suite::StanleyHook => ("n", from(0)),
            _ => ("n", from(1)),
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| format!("unknown suite {s:?}"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SuiteOptions {
    pub max_n: usize,
    /// Size bound for brute-force comparisons in the three-row suite.
    pub oracle_max_n: Option<usize>,
}

impl SuiteOptions {
    pub fn new(max_n: usize) -> Self {
        Self {
            max_n,
            oracle_max_n: None,
        }
    }

    fn params(&self) -> Params {
        let mut p = params! {"max_n" => self.max_n};
        if let Some(o) = self.oracle_max_n {
            p.insert("oracle_max_n".into(), o.into());
        }
        p
    }
}

#[derive(Debug, thiserror::Error)]
pub enum ResumeError {
    #[error("report is for {found}, not {expected}")]
    Mismatch { expected: String, found: String },
    #[error("report's last completed unit {0:?} is not part of this sweep")]
    UnknownUnit(Params),
}

/// Runs `suite`, calling `checkpoint` after every finished unit. A `resume`
/// report for the same suite and parameters skips the units it already covers.
pub fn run_suite(
    suite: Suite,
    opts: SuiteOptions,
    resume: Option<CheckReport>,
    mut checkpoint: impl FnMut(&CheckReport),
) -> Result<CheckReport, ResumeError> {
    let (key, units) = suite.units(opts.max_n);
    let unit_params = |v: usize| params! {key => v};

    let mut report = match resume {
        Some(prev) => {
            if prev.check_name != suite.name() || prev.parameters != opts.params() {
                return Err(ResumeError::Mismatch {
                    expected: format!("{} {:?}", suite.name(), opts.params()),
                    found: format!("{} {:?}", prev.check_name, prev.parameters),
                });
            }
            prev
        }
        None => CheckReport::new(suite.name(), opts.params()),
    };
    let skip = match &report.last_completed {
        None => 0,
        Some(last) => {
            units
                .iter()
                .position(|&v| &unit_params(v) == last)
                .ok_or_else(|| ResumeError::UnknownUnit(last.clone()))?
                + 1
        }
    };

    let mut state = suites::SuiteState::default();
    for &value in &units[skip..] {
        let started = Instant::now();
        let (cases, failures) = suites::run_unit(suite, value, &opts, &mut state);
        log::info!(
            "{suite} {key}={value}: {cases} cases, {} counterexamples",
            failures.len()
        );
        report.absorb(cases, failures);
        report.last_completed = Some(unit_params(value));
        report.elapsed_ms += started.elapsed().as_millis() as u64;
        checkpoint(&report);
    }
    Ok(report)
}
