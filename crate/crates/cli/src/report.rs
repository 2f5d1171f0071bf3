//! The machine-readable record of one invocation.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;

pub const EXIT_POSITIVE: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_CAP: i32 = 3;

#[derive(Debug, Serialize)]
pub struct RunReport {
    /// The arguments after the program name.
    pub command: Vec<String>,
    pub result: Outcome,
    pub stats: BTreeMap<String, u64>,
    pub exit_code: i32,
}

#[derive(Debug, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Outcome {
    Holds { state: String, satisfying: Vec<String> },
    Fails { state: String, satisfying: Vec<String> },
    Sat { witness: String, witness_path: Option<String> },
    Unsat,
    Formula { text: String },
    Artifact { path: String },
    Selftest { criteria: Vec<Criterion> },
    Error { stage: String, message: String },
}

#[derive(Debug, Serialize)]
pub struct Criterion {
    pub id: usize,
    pub title: String,
    pub passed: bool,
    pub detail: String,
}

impl RunReport {
    pub fn new(command: Vec<String>, result: Outcome, exit_code: i32) -> Self {
        RunReport { command, result, stats: BTreeMap::new(), exit_code }
    }

    pub fn error(command: Vec<String>, stage: &str, message: impl ToString, exit_code: i32) -> Self {
        Self::new(command, Outcome::Error { stage: stage.into(), message: message.to_string() }, exit_code)
    }

    pub fn with_stat(mut self, key: &str, value: impl TryInto<u64>) -> Self {
        self.stats.insert(key.into(), value.try_into().unwrap_or(u64::MAX));
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Text for humans; errors go to stderr, the rest to stdout.
    pub fn to_text(&self) -> (String, String) {
        let mut out = String::new();
        let mut err = String::new();
        match &self.result {
            Outcome::Holds { state, satisfying } | Outcome::Fails { state, satisfying } => {
                let verdict = if matches!(self.result, Outcome::Holds { .. }) { "holds" } else { "fails" };
                writeln!(out, "satisfying states: {{{}}}", satisfying.join(", ")).unwrap();
                writeln!(out, "{state}: {verdict}").unwrap();
            }
            Outcome::Sat { witness, witness_path } => {
                writeln!(out, "sat").unwrap();
                match witness_path {
                    Some(p) => writeln!(out, "witness written to {p}").unwrap(),
                    None => out.push_str(witness),
                }
            }
            Outcome::Unsat => writeln!(out, "unsat").unwrap(),
            Outcome::Formula { text } => writeln!(out, "{text}").unwrap(),
            Outcome::Artifact { path } => writeln!(out, "wrote {path}").unwrap(),
            Outcome::Selftest { criteria } => {
                for c in criteria {
                    let v = if c.passed { "PASS" } else { "FAIL" };
                    writeln!(out, "[{v}] {:>2}. {}: {}", c.id, c.title, c.detail).unwrap();
                }
            }
            Outcome::Error { stage, message } => writeln!(err, "error ({stage}): {message}").unwrap(),
        }
        if !self.stats.is_empty() && !matches!(self.result, Outcome::Error { .. }) {
            let parts: Vec<String> = self.stats.iter().map(|(k, v)| format!("{k}={v}")).collect();
            writeln!(out, "stats: {}", parts.join(" ")).unwrap();
        }
        (out, err)
    }
}
