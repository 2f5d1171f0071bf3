//! Finite Markov chains with exact rational transition probabilities.

mod families;
mod format;

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_traits::{One, Signed, Zero};
use thiserror::Error;

pub use families::{gen_family, ChainFamily};
pub use format::{emit_mc, parse_mc};

use crate::bitset::BitSet;
use crate::prob::{format_rational, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ChainError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: unknown state `{name}`")]
    UnknownState { line: usize, name: String },
    #[error("duplicate state `{0}`")]
    DuplicateState(String),
    #[error("line {line}: duplicate transition {from} -> {to}")]
    DuplicateTransition { line: usize, from: String, to: String },
    #[error("probability {value} on {from} -> {to} is outside [0,1]")]
    ProbabilityOutOfRange { from: String, to: String, value: String },
    #[error("outgoing probabilities of `{state}` sum to {sum}, deficit {deficit}")]
    RowSum { state: String, sum: String, deficit: String },
    #[error("no `init` line")]
    MissingInit,
    #[error("chain has no states")]
    Empty,
    #[error("invalid family parameter: {0}")]
    Parameter(String),
}

/// A finite Markov chain `(S, T, L)`. States are indexed `0..n` in
/// declaration order; every row of `T` sums to exactly 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MarkovChain {
    names: Vec<String>,
    index: HashMap<String, usize>,
    /// Nonzero entries of each row, sorted by target.
    rows: Vec<Vec<(usize, Rational)>>,
    labels: Vec<BTreeSet<String>>,
}

/// A chain together with its initial state.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointedMarkovChain {
    pub chain: MarkovChain,
    pub initial: usize,
}

impl MarkovChain {
    /// Builds and validates a chain. `rows[s]` maps target index to
    /// probability; zero entries are dropped.
    pub fn new(
        names: Vec<String>,
        rows: Vec<BTreeMap<usize, Rational>>,
        labels: Vec<BTreeSet<String>>,
    ) -> Result<Self, ChainError> {
        if names.is_empty() {
            return Err(ChainError::Empty);
        }
        assert_eq!(names.len(), rows.len());
        assert_eq!(names.len(), labels.len());
        let mut index = HashMap::new();
        for (i, n) in names.iter().enumerate() {
            if index.insert(n.clone(), i).is_some() {
                return Err(ChainError::DuplicateState(n.clone()));
            }
        }
        let mut dense = Vec::with_capacity(rows.len());
        for (s, row) in rows.into_iter().enumerate() {
            let mut sum = Rational::zero();
            let mut entries = Vec::new();
            for (t, p) in row {
                assert!(t < names.len(), "transition target out of range");
                if p.is_negative() || p > Rational::one() {
                    return Err(ChainError::ProbabilityOutOfRange {
                        from: names[s].clone(),
                        to: names[t].clone(),
                        value: format_rational(&p),
                    });
                }
                sum += &p;
                if !p.is_zero() {
                    entries.push((t, p));
                }
            }
            if !sum.is_one() {
                return Err(ChainError::RowSum {
                    state: names[s].clone(),
                    deficit: format_rational(&(Rational::one() - &sum)),
                    sum: format_rational(&sum),
                });
            }
            dense.push(entries);
        }
        Ok(MarkovChain { names, index, rows: dense, labels })
    }

    pub fn num_states(&self) -> usize {
        self.names.len()
    }

    pub fn states(&self) -> std::ops::Range<usize> {
        0..self.names.len()
    }

    pub fn name(&self, s: usize) -> &str {
        &self.names[s]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    /// Nonzero transitions out of `s`, sorted by target.
    pub fn successors(&self, s: usize) -> &[(usize, Rational)] {
        &self.rows[s]
    }

    pub fn prob(&self, s: usize, t: usize) -> Rational {
        self.rows[s]
            .binary_search_by_key(&t, |(u, _)| *u)
            .map(|i| self.rows[s][i].1.clone())
            .unwrap_or_else(|_| Rational::zero())
    }

    pub fn labels(&self, s: usize) -> &BTreeSet<String> {
        &self.labels[s]
    }

    pub fn has_label(&self, s: usize, atom: &str) -> bool {
        self.labels[s].contains(atom)
    }

    /// States whose label contains `atom`.
    pub fn states_with(&self, atom: &str) -> BitSet {
        BitSet::from_indices(self.num_states(), self.states().filter(|&s| self.has_label(s, atom)))
    }

    /// `sum_{t in target} T(s, t)`.
    pub fn mass_into(&self, s: usize, target: &BitSet) -> Rational {
        self.rows[s]
            .iter()
            .filter(|(t, _)| target.contains(*t))
            .fold(Rational::zero(), |acc, (_, p)| acc + p)
    }

    pub fn pointed(self, initial: usize) -> PointedMarkovChain {
        assert!(initial < self.num_states());
        PointedMarkovChain { chain: self, initial }
    }

    pub fn pointed_at(self, name: &str) -> Option<PointedMarkovChain> {
        let i = self.index_of(name)?;
        Some(self.pointed(i))
    }
}

impl PointedMarkovChain {
    pub fn initial_name(&self) -> &str {
        self.chain.name(self.initial)
    }
}

/// Incremental construction of chains by state name.
#[derive(Debug, Default)]
pub struct ChainBuilder {
    names: Vec<String>,
    rows: Vec<BTreeMap<usize, Rational>>,
    labels: Vec<BTreeSet<String>>,
}

impl ChainBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn state(&mut self, name: impl Into<String>) -> usize {
        self.names.push(name.into());
        self.rows.push(BTreeMap::new());
        self.labels.push(BTreeSet::new());
        self.names.len() - 1
    }

    pub fn label(&mut self, s: usize, atom: impl Into<String>) -> &mut Self {
        self.labels[s].insert(atom.into());
        self
    }

    pub fn trans(&mut self, from: usize, to: usize, p: Rational) -> &mut Self {
        *self.rows[from].entry(to).or_insert_with(Rational::zero) += p;
        self
    }

    pub fn build(self) -> Result<MarkovChain, ChainError> {
        MarkovChain::new(self.names, self.rows, self.labels)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::prob::rat;

    #[test]
    fn row_sum_is_checked() {
        let mut b = ChainBuilder::new();
        let s = b.state("s");
        let t = b.state("t");
        b.trans(s, t, rat(1, 2)).trans(s, s, rat(1, 4)).trans(t, t, rat(1, 1));
        match b.build() {
            Err(ChainError::RowSum { state, deficit, .. }) => {
                assert_eq!(state, "s");
                assert_eq!(deficit, "1/4");
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn mass_and_lookup() {
        let mut b = ChainBuilder::new();
        let s = b.state("s");
        let t = b.state("t");
        b.trans(s, t, rat(1, 3)).trans(s, s, rat(2, 3)).trans(t, t, rat(1, 1)).label(t, "a");
        let m = b.build().unwrap();
        assert_eq!(m.prob(s, t), rat(1, 3));
        assert_eq!(m.prob(t, s), rat(0, 1));
        assert_eq!(m.mass_into(s, &m.states_with("a")), rat(1, 3));
        assert_eq!(m.index_of("t"), Some(1));
    }
}
