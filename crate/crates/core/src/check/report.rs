use std::collections::BTreeMap;
use std::fs;
use std::io;
use std::path::Path;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ParamValue {
    Int(u64),
    Text(String),
}

impl From<usize> for ParamValue {
    fn from(v: usize) -> Self {
        ParamValue::Int(v as u64)
    }
}

impl From<String> for ParamValue {
    fn from(v: String) -> Self {
        ParamValue::Text(v)
    }
}

impl From<&str> for ParamValue {
    fn from(v: &str) -> Self {
        ParamValue::Text(v.to_string())
    }
}

pub type Params = BTreeMap<String, ParamValue>;

/// `params!{"n" => 5, "k" => 2}`
#[macro_export]
macro_rules! params {
    ($($key:expr => $val:expr),* $(,)?) => {{
        #[allow(unused_mut)]
        let mut m = $crate::check::Params::new();
        $( m.insert($key.to_string(), $crate::check::ParamValue::from($val)); )*
        m
    }};
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Counterexample {
    pub parameters: Params,
    pub expected: String,
    pub actual: String,
}

impl Counterexample {
    pub fn new(parameters: Params, expected: impl ToString, actual: impl ToString) -> Self {
        Self {
            parameters,
            expected: expected.to_string(),
            actual: actual.to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub check_name: String,
    pub parameters: Params,
    pub verdict: Verdict,
    pub counterexamples: Vec<Counterexample>,
    pub cases_checked: u64,
    /// Last fully processed unit of work; `--resume` continues after it.
    pub last_completed: Option<Params>,
    pub elapsed_ms: u64,
}

impl CheckReport {
    pub fn new(check_name: &str, parameters: Params) -> Self {
        Self {
            check_name: check_name.to_string(),
            parameters,
            verdict: Verdict::Pass,
            counterexamples: Vec::new(),
            cases_checked: 0,
            last_completed: None,
            elapsed_ms: 0,
        }
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    pub(crate) fn absorb(&mut self, cases: u64, mut failures: Vec<Counterexample>) {
        self.cases_checked += cases;
        self.counterexamples.append(&mut failures);
        self.counterexamples.sort();
        self.verdict = if self.counterexamples.is_empty() {
            Verdict::Pass
        } else {
            Verdict::Fail
        };
    }

    pub fn load(path: &Path) -> io::Result<Self> {
        let text = fs::read_to_string(path)?;
        serde_json::from_str(&text).map_err(|e| io::Error::new(io::ErrorKind::InvalidData, e))
    }

    /// Writes via a sibling temp file and rename so a killed run never
    /// leaves a truncated report.
    pub fn save(&self, path: &Path) -> io::Result<()> {
        let mut text = serde_json::to_string_pretty(self).map_err(io::Error::other)?;
        text.push('\n');
        let tmp = path.with_extension("json.partial");
        fs::write(&tmp, text)?;
        fs::rename(&tmp, path)
    }
}
