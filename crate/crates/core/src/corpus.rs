//! Named formulas shared by the test batteries, the benchmarks and the
//! self-test.

use crate::syntax::{parse_closed_pmutl, parse_pctl, translate_qualitative, Formula};

/// Satisfiable formulas. Each has a finite model.
pub const SAT: [&str; 8] = [
    "nu Z.(a & X[>=1] Z)",
    "nu Z.(a & X[>=4/5] Z)",
    "mu Z.(a | X[>=3/5] Z)",
    "nu Z.(a & X[>4/5] Z)",
    "nu Z.(a & X[>0] X[>0] Z)",
    "mu Z.(b | (a & X[>=1] Z))",
    "nu Z1.(a | mu Z2.(a | X[>0] Z2) & X[>=1] Z1)",
    "true",
];

/// Unsatisfiable formulas.
pub const UNSAT: [&str; 4] = ["a & !a", "mu Z. X[>=1] Z", "mu Z. X[>0] Z", "X[>1/2] a & X[>1/2] !a"];

/// PCTL formulas whose translation is satisfiable.
pub const SAT_PCTL: [&str; 1] = ["a U[>=1] b"];

pub fn parse(text: &str) -> Formula {
    parse_closed_pmutl(text).unwrap_or_else(|e| panic!("corpus formula `{text}`: {e}"))
}

pub fn translate(text: &str) -> Formula {
    let g = parse_pctl(text).unwrap_or_else(|e| panic!("corpus formula `{text}`: {e}"));
    translate_qualitative(&g).expect("qualitative corpus formula")
}

/// Every corpus formula, labeled by its source text.
pub fn all() -> Vec<(String, Formula)> {
    let mut out: Vec<(String, Formula)> = SAT.iter().chain(&UNSAT).map(|s| (s.to_string(), parse(s))).collect();
    out.extend(SAT_PCTL.iter().map(|s| (format!("translate({s})"), translate(s))));
    out
}
