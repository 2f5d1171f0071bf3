//! Probabilistic alternating parity automata and the translation of closed
//! guarded formulas into them.

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

use crate::prob::Bound;
use crate::syntax::{is_guarded, Formula};

/// A transition condition. Boolean connectives reference automaton states.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum TransitionCondition {
    Bot,
    Top,
    Lit(String),
    NegLit(String),
    State(usize),
    Prob(Bound, usize),
    And(usize, usize),
    Or(usize, usize),
}

impl TransitionCondition {
    /// States mentioned by the condition, without duplicates.
    pub fn targets(&self) -> Vec<usize> {
        match *self {
            TransitionCondition::State(q) | TransitionCondition::Prob(_, q) => vec![q],
            TransitionCondition::And(a, b) | TransitionCondition::Or(a, b) if a == b => vec![a],
            TransitionCondition::And(a, b) | TransitionCondition::Or(a, b) => vec![a, b],
            _ => Vec::new(),
        }
    }

    pub fn is_prob(&self) -> bool {
        matches!(self, TransitionCondition::Prob(..))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PapaError {
    #[error("formula is not closed")]
    NotClosed,
    #[error("formula is not guarded")]
    NotGuarded,
    #[error("state {state} references missing state {target}")]
    DanglingReference { state: usize, target: usize },
    #[error("initial state {0} out of range")]
    BadInitial(usize),
}

/// `(Q, q0, delta, Omega)` with `Q = 0..n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Papa {
    names: Vec<String>,
    initial: usize,
    delta: Vec<TransitionCondition>,
    omega: Vec<Option<u32>>,
}

impl Papa {
    /// Assembles an automaton, checking that every reference is in range.
    /// `names` are free-form and only used for display.
    pub fn new(
        names: Vec<String>,
        initial: usize,
        delta: Vec<TransitionCondition>,
        omega: Vec<Option<u32>>,
    ) -> Result<Self, PapaError> {
        let n = delta.len();
        assert_eq!(names.len(), n);
        assert_eq!(omega.len(), n);
        if initial >= n {
            return Err(PapaError::BadInitial(initial));
        }
        for (q, cond) in delta.iter().enumerate() {
            if let Some(&t) = cond.targets().iter().find(|&&t| t >= n) {
                return Err(PapaError::DanglingReference { state: q, target: t });
            }
        }
        Ok(Papa { names, initial, delta, omega })
    }

    pub fn num_states(&self) -> usize {
        self.delta.len()
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    pub fn delta(&self, q: usize) -> &TransitionCondition {
        &self.delta[q]
    }

    pub fn omega(&self, q: usize) -> Option<u32> {
        self.omega[q]
    }

    pub fn name(&self, q: usize) -> &str {
        &self.names[q]
    }

    /// Largest color in use.
    pub fn max_color(&self) -> Option<u32> {
        self.omega.iter().flatten().copied().max()
    }

    /// The derived graph: `q1 -> q2` iff `q2` occurs in `delta(q1)`.
    pub fn derived_graph(&self) -> Vec<Vec<usize>> {
        self.delta.iter().map(TransitionCondition::targets).collect()
    }
}

impl fmt::Display for Papa {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "initial q{}", self.initial)?;
        for q in 0..self.num_states() {
            let cond = match &self.delta[q] {
                TransitionCondition::Bot => "false".to_string(),
                TransitionCondition::Top => "true".to_string(),
                TransitionCondition::Lit(a) => a.clone(),
                TransitionCondition::NegLit(a) => format!("!{a}"),
                TransitionCondition::State(t) => format!("q{t}"),
                TransitionCondition::Prob(b, t) => format!("O{b} q{t}"),
                TransitionCondition::And(a, b) => format!("q{a} & q{b}"),
                TransitionCondition::Or(a, b) => format!("q{a} | q{b}"),
            };
            write!(f, "q{q}: {cond}")?;
            if let Some(c) = self.omega[q] {
                write!(f, "  color {c}")?;
            }
            writeln!(f, "  -- {}", self.names[q])?;
        }
        Ok(())
    }
}

/// The automaton of a closed guarded formula. Bound variables are renamed
/// apart first if necessary. State `i` corresponds to the `i`-th element of
/// `closure()`, so the initial state is 0.
pub fn build_papa(f: &Formula) -> Result<Papa, PapaError> {
    if !f.is_closed() {
        return Err(PapaError::NotClosed);
    }
    if !is_guarded(f) {
        return Err(PapaError::NotGuarded);
    }
    let f = if f.is_renamed_apart() { f.clone() } else { f.rename_apart() };
    let closure = f.closure();
    let index: HashMap<&Formula, usize> = closure.iter().enumerate().map(|(i, g)| (g, i)).collect();
    let mut colors = HashMap::new();
    assign_colors(&f, &mut colors);

    let mut delta = Vec::with_capacity(closure.len());
    let mut omega = Vec::with_capacity(closure.len());
    for g in &closure {
        let q = |h: &Formula| index[h];
        delta.push(match g {
            Formula::True => TransitionCondition::Top,
            Formula::False => TransitionCondition::Bot,
            Formula::Atom(a) => TransitionCondition::Lit(a.clone()),
            Formula::NegAtom(a) => TransitionCondition::NegLit(a.clone()),
            Formula::Var(z) => TransitionCondition::State(q(f.binder(z).expect("closed formula"))),
            Formula::Next(b, h) => TransitionCondition::Prob(b.clone(), q(h)),
            Formula::And(l, r) => TransitionCondition::And(q(l), q(r)),
            Formula::Or(l, r) => TransitionCondition::Or(q(l), q(r)),
            Formula::Mu(_, h) | Formula::Nu(_, h) => TransitionCondition::State(q(h)),
        });
        omega.push(match g {
            Formula::Var(z) => Some(colors[z.as_str()]),
            _ => None,
        });
    }
    let names = closure.iter().map(ToString::to_string).collect();
    Papa::new(names, 0, delta, omega)
}

/// Colors binders innermost first: each gets the least number of the right
/// parity (odd for mu, even for nu) above every color nested inside it.
/// Returns the largest color inside `f`.
fn assign_colors<'a>(f: &'a Formula, colors: &mut HashMap<&'a str, u32>) -> Option<u32> {
    let inner = f.children().into_iter().filter_map(|c| assign_colors(c, colors)).max();
    match f {
        Formula::Mu(z, _) | Formula::Nu(z, _) => {
            let parity = u32::from(matches!(f, Formula::Mu(..)));
            let mut c = inner.map_or(0, |m| m + 1);
            if c % 2 != parity {
                c += 1;
            }
            colors.insert(z, c);
            Some(c)
        }
        _ => inner,
    }
}

/// Checks that every cycle of the derived graph passes through a
/// probabilistic transition and through a colored state. On failure returns
/// one offending cycle.
pub fn check_well_structured(a: &Papa) -> Result<(), Vec<usize>> {
    let graph = a.derived_graph();
    if let Some(cycle) = find_cycle(&graph, |q| !a.delta(q).is_prob()) {
        return Err(cycle);
    }
    if let Some(cycle) = find_cycle(&graph, |q| a.omega(q).is_none()) {
        return Err(cycle);
    }
    Ok(())
}

/// A cycle through `allowed` nodes only, if there is one.
pub(crate) fn find_cycle(graph: &[Vec<usize>], allowed: impl Fn(usize) -> bool) -> Option<Vec<usize>> {
    #[derive(Clone, Copy, PartialEq)]
    enum Mark {
        New,
        Active,
        Done,
    }
    let n = graph.len();
    let mut mark = vec![Mark::New; n];
    for root in (0..n).filter(|&q| allowed(q)) {
        if mark[root] != Mark::New {
            continue;
        }
        // iterative DFS; `path` holds the active nodes with their next edge
        let mut path: Vec<(usize, usize)> = vec![(root, 0)];
        mark[root] = Mark::Active;
        while let Some(&mut (v, ref mut next)) = path.last_mut() {
            if let Some(&w) = graph[v].get(*next) {
                *next += 1;
                if !allowed(w) {
                    continue;
                }
                match mark[w] {
                    Mark::Active => {
                        let start = path.iter().position(|&(u, _)| u == w).expect("active node on path");
                        return Some(path[start..].iter().map(|&(u, _)| u).collect());
                    }
                    Mark::New => {
                        mark[w] = Mark::Active;
                        path.push((w, 0));
                    }
                    Mark::Done => {}
                }
            } else {
                mark[v] = Mark::Done;
                path.pop();
            }
        }
    }
    None
}
