//! Acceptance of lasso words by direct inspection of the unfolded paths.

use super::graph::has_cycle_with_max_parity;
use crate::gadget::{is_compatible, Gadget};
use crate::papa::{Papa, TransitionCondition};

/// Whether `u v^omega` has only compatible gadgets and only even infinite
/// paths. Independent of the automaton constructions.
pub fn lasso_oracle(a: &Papa, u: &[Gadget], v: &[Gadget]) -> bool {
    assert!(!v.is_empty(), "lasso loop must be nonempty");
    let word: Vec<&Gadget> = u.iter().chain(v).collect();
    if word.iter().any(|g| !is_compatible(a, g)) {
        return false;
    }
    let n = a.num_states();
    let len = word.len();
    let node = |q: usize, pos: usize| pos * n + q;
    let mut edges: Vec<Vec<(usize, u32)>> = vec![Vec::new(); n * len];
    for (pos, g) in word.iter().enumerate() {
        let next = if pos + 1 < len { pos + 1 } else { u.len() };
        for q in g.states().iter() {
            let color = a.omega(q).map_or(0, |c| c + 2);
            let out = &mut edges[node(q, pos)];
            out.extend(g.successors(q).map(|s| (node(s, pos), color)));
            if let TransitionCondition::Prob(_, t) = a.delta(q) {
                if word[next].contains(*t) {
                    out.push((node(*t, next), color));
                }
            }
        }
    }
    let starts: Vec<usize> = word[0].states().iter().map(|q| node(q, 0)).collect();
    !has_cycle_with_max_parity(&edges, starts, true)
}
