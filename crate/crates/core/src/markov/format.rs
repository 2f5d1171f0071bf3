//! The line-oriented `.mc` chain format.
//!
//! ```text
//! # comment
//! states s1 s2 s3
//! init s1
//! label s2 a b
//! trans s1 s2 1/2 ; trans s1 s3 0.5
//! ```
//!
//! Statements end at a newline or `;`. States without a `label` line have
//! an empty label set. Probabilities are fractions or decimals and are
//! emitted as reduced fractions.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt::Write;

use super::{ChainError, MarkovChain, PointedMarkovChain};
use crate::prob::{format_rational, parse_rational, Rational};

/// Parses a chain and its optional `init` state.
pub fn parse_chain(text: &str) -> Result<(MarkovChain, Option<usize>), ChainError> {
    let mut names: Vec<String> = Vec::new();
    let mut index: HashMap<String, usize> = HashMap::new();
    let mut rows: Vec<BTreeMap<usize, Rational>> = Vec::new();
    let mut labels: Vec<BTreeSet<String>> = Vec::new();
    let mut init: Option<usize> = None;

    for (lineno, raw) in text.lines().enumerate() {
        let line = lineno + 1;
        let content = raw.split('#').next().unwrap_or("");
        for stmt in content.split(';') {
            let words: Vec<&str> = stmt.split_whitespace().collect();
            let Some((&keyword, args)) = words.split_first() else {
                continue;
            };
            let lookup = |name: &str| {
                index
                    .get(name)
                    .copied()
                    .ok_or_else(|| ChainError::UnknownState { line, name: name.to_string() })
            };
            let syntax = |message: &str| ChainError::Syntax { line, message: message.to_string() };
            match keyword {
                "states" => {
                    if args.is_empty() {
                        return Err(syntax("`states` needs at least one name"));
                    }
                    for &n in args {
                        if index.contains_key(n) {
                            return Err(ChainError::DuplicateState(n.to_string()));
                        }
                        index.insert(n.to_string(), names.len());
                        names.push(n.to_string());
                        rows.push(BTreeMap::new());
                        labels.push(BTreeSet::new());
                    }
                }
                "init" => {
                    let [n] = args else {
                        return Err(syntax("`init` takes exactly one state"));
                    };
                    if init.is_some() {
                        return Err(syntax("duplicate `init`"));
                    }
                    init = Some(lookup(n)?);
                }
                "label" => {
                    let Some((n, atoms)) = args.split_first() else {
                        return Err(syntax("`label` needs a state"));
                    };
                    let s = lookup(n)?;
                    for &a in atoms {
                        if !a.starts_with(|c: char| c.is_ascii_lowercase()) {
                            return Err(syntax(&format!("atom `{a}` must start with a lowercase letter")));
                        }
                        labels[s].insert(a.to_string());
                    }
                }
                "trans" => {
                    let [from, to, p] = args else {
                        return Err(syntax("`trans` takes <from> <to> <probability>"));
                    };
                    let (s, t) = (lookup(from)?, lookup(to)?);
                    let p = parse_rational(p).ok_or_else(|| syntax(&format!("malformed probability `{p}`")))?;
                    if rows[s].insert(t, p).is_some() {
                        return Err(ChainError::DuplicateTransition {
                            line,
                            from: from.to_string(),
                            to: to.to_string(),
                        });
                    }
                }
                other => return Err(syntax(&format!("unknown statement `{other}`"))),
            }
        }
    }
    let chain = MarkovChain::new(names, rows, labels)?;
    Ok((chain, init))
}

pub fn parse_mc(text: &str) -> Result<PointedMarkovChain, ChainError> {
    let (chain, init) = parse_chain(text)?;
    let initial = init.ok_or(ChainError::MissingInit)?;
    Ok(PointedMarkovChain { chain, initial })
}

pub fn emit_mc(pmc: &PointedMarkovChain) -> String {
    let m = &pmc.chain;
    let mut out = String::new();
    writeln!(out, "states {}", m.names().join(" ")).unwrap();
    writeln!(out, "init {}", m.name(pmc.initial)).unwrap();
    for s in m.states() {
        if !m.labels(s).is_empty() {
            let atoms: Vec<&str> = m.labels(s).iter().map(String::as_str).collect();
            writeln!(out, "label {} {}", m.name(s), atoms.join(" ")).unwrap();
        }
    }
    for s in m.states() {
        for (t, p) in m.successors(s) {
            writeln!(out, "trans {} {} {}", m.name(s), m.name(*t), format_rational(p)).unwrap();
        }
    }
    out
}
