//! The deterministic parity word automaton over gadgets that accepts the
//! sequences in which every gadget is compatible and every infinite path is
//! even.
//!
//! It is obtained by complementing a determinization of a nondeterministic
//! automaton for the bad sequences: [`build_bad_npa`] guesses a bad path,
//! [`parity_npa_to_nba`] turns the parity condition into a Büchi one,
//! [`determinize`] applies the Safra-Piterman construction and
//! [`complement_dpa`] flips the parity.

mod dpa;
pub(crate) mod graph;
mod oracle;
mod safra;

use std::collections::HashMap;

use thiserror::Error;

pub use dpa::{build_tilde, complement_dpa, determinize, lasso_accepts, Dpa, LazyTilde};
pub use oracle::lasso_oracle;

use crate::gadget::{is_compatible, Gadget};
use crate::papa::{Papa, TransitionCondition};

/// Default bound on the number of deterministic states.
pub const DEFAULT_MAX_DPA_STATES: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OmegaError {
    #[error("more than {0} deterministic automaton states")]
    TooManyStates(usize),
}

/// Color of the transitions that stay in the rejecting sink.
const SINK_COLOR: u32 = 1;

/// Nondeterministic parity automaton for bad gadget sequences, with
/// transition colors and max-parity acceptance (odd accepts).
///
/// States `0..n` are automaton states on a path, `n` waits for an
/// incompatible letter and `n + 1` is the accepting sink.
#[derive(Debug, Clone)]
pub struct PathNpa {
    papa: Papa,
    letters: Vec<Gadget>,
    index: HashMap<Gadget, usize>,
    /// `moves[letter][state]` lists `(target, color)`.
    moves: Vec<Vec<Vec<(usize, u32)>>>,
}

impl PathNpa {
    pub fn new(papa: &Papa) -> Self {
        PathNpa { papa: papa.clone(), letters: Vec::new(), index: HashMap::new(), moves: Vec::new() }
    }

    pub fn papa(&self) -> &Papa {
        &self.papa
    }

    pub fn num_states(&self) -> usize {
        self.papa.num_states() + 2
    }

    pub fn wait_state(&self) -> usize {
        self.papa.num_states()
    }

    pub fn sink_state(&self) -> usize {
        self.papa.num_states() + 1
    }

    /// Every path state and the waiting state.
    pub fn initial_states(&self) -> Vec<usize> {
        (0..=self.papa.num_states()).collect()
    }

    pub fn letters(&self) -> &[Gadget] {
        &self.letters
    }

    pub fn letter_id(&self, g: &Gadget) -> Option<usize> {
        self.index.get(g).copied()
    }

    /// Adds `g` to the alphabet if needed and returns its index.
    pub fn intern(&mut self, g: &Gadget) -> usize {
        if let Some(&i) = self.index.get(g) {
            return i;
        }
        let moves = letter_moves(&self.papa, g);
        self.letters.push(g.clone());
        self.moves.push(moves);
        self.index.insert(g.clone(), self.letters.len() - 1);
        self.letters.len() - 1
    }

    pub fn moves(&self, state: usize, letter: usize) -> &[(usize, u32)] {
        &self.moves[letter][state]
    }

    /// Colors that occur on transitions, for any letter.
    pub fn odd_colors(&self) -> Vec<u32> {
        let mut out: Vec<u32> = (0..self.papa.num_states())
            .filter_map(|q| self.papa.omega(q))
            .map(|c| c + 2)
            .filter(|c| c % 2 == 1)
            .collect();
        out.push(SINK_COLOR);
        out.sort_unstable();
        out.dedup();
        out
    }
}

/// Transitions of every state on one letter.
fn letter_moves(a: &Papa, g: &Gadget) -> Vec<Vec<(usize, u32)>> {
    let n = a.num_states();
    let mut out = vec![Vec::new(); n + 2];
    let (wait, sink) = (n, n + 1);
    out[sink].push((sink, SINK_COLOR));
    if !is_compatible(a, g) {
        out[wait].push((sink, SINK_COLOR));
        return out;
    }
    out[wait].push((wait, 0));
    for q in g.states().iter() {
        let mut found = Vec::new();
        walk_paths(a, g, q, 0, &mut found);
        found.sort_unstable();
        found.dedup();
        out[q] = found;
    }
    out
}

/// Follows every edge path of the gadget from `r`; at a probabilistic
/// leaf records its target with the largest shifted color seen.
fn walk_paths(a: &Papa, g: &Gadget, r: usize, color: u32, found: &mut Vec<(usize, u32)>) {
    let color = a.omega(r).map_or(color, |c| color.max(c + 2));
    if let TransitionCondition::Prob(_, t) = a.delta(r) {
        found.push((*t, color));
        return;
    }
    for s in g.successors(r) {
        walk_paths(a, g, s, color, found);
    }
}

/// The automaton for the bad sequences over `alphabet`.
pub fn build_bad_npa(a: &Papa, alphabet: &[Gadget]) -> PathNpa {
    let mut npa = PathNpa::new(a);
    for g in alphabet {
        npa.intern(g);
    }
    npa
}

/// Büchi automaton with accepting transitions, obtained from a [`PathNpa`]
/// by guessing the largest odd color that recurs.
///
/// State `s * (1 + k) + 0` is `s` before the guess; `s * (1 + k) + 1 + i`
/// is `s` after guessing the `i`-th odd color.
#[derive(Debug, Clone)]
pub struct Nba {
    npa: PathNpa,
    odd: Vec<u32>,
}

pub fn parity_npa_to_nba(npa: PathNpa) -> Nba {
    let odd = npa.odd_colors();
    Nba { npa, odd }
}

impl Nba {
    pub fn npa(&self) -> &PathNpa {
        &self.npa
    }

    pub fn intern(&mut self, g: &Gadget) -> usize {
        self.npa.intern(g)
    }

    fn width(&self) -> usize {
        1 + self.odd.len()
    }

    pub fn num_states(&self) -> usize {
        self.npa.num_states() * self.width()
    }

    pub fn initial_states(&self) -> Vec<usize> {
        self.npa.initial_states().into_iter().map(|s| s * self.width()).collect()
    }

    /// `(target, accepting)` pairs.
    pub fn successors(&self, state: usize, letter: usize) -> Vec<(usize, bool)> {
        let w = self.width();
        let (s, guess) = (state / w, state % w);
        let mut out = Vec::new();
        for &(t, c) in self.npa.moves(s, letter) {
            if guess == 0 {
                out.push((t * w, false));
                out.extend((0..self.odd.len()).map(|i| (t * w + 1 + i, false)));
            } else {
                let bound = self.odd[guess - 1];
                if c <= bound {
                    out.push((t * w + guess, c == bound));
                }
            }
        }
        out
    }
}

/// Lasso positions `0..|u|+|v|`; the successor of the last one is `|u|`.
fn lasso_next(u: usize, v: usize, pos: usize) -> usize {
    if pos + 1 < u + v {
        pos + 1
    } else {
        u
    }
}

/// Direct acceptance check of `u v^omega` on the parity automaton.
pub fn npa_lasso_accepts(npa: &mut PathNpa, u: &[Gadget], v: &[Gadget]) -> bool {
    assert!(!v.is_empty());
    let word: Vec<usize> = u.iter().chain(v).map(|g| npa.intern(g)).collect();
    let (m, len) = (npa.num_states(), word.len());
    let mut edges = vec![Vec::new(); m * len];
    for (pos, &letter) in word.iter().enumerate() {
        let next = lasso_next(u.len(), v.len(), pos);
        for s in 0..m {
            edges[pos * m + s] = npa.moves(s, letter).iter().map(|&(t, c)| (next * m + t, c)).collect();
        }
    }
    graph::has_cycle_with_max_parity(&edges, npa.initial_states(), true)
}

/// Direct acceptance check of `u v^omega` on the Büchi automaton.
pub fn nba_lasso_accepts(nba: &mut Nba, u: &[Gadget], v: &[Gadget]) -> bool {
    assert!(!v.is_empty());
    let word: Vec<usize> = u.iter().chain(v).map(|g| nba.intern(g)).collect();
    let (m, len) = (nba.num_states(), word.len());
    let mut edges = vec![Vec::new(); m * len];
    for (pos, &letter) in word.iter().enumerate() {
        let next = lasso_next(u.len(), v.len(), pos);
        for s in 0..m {
            edges[pos * m + s] =
                nba.successors(s, letter).into_iter().map(|(t, acc)| (next * m + t, u32::from(acc))).collect();
        }
    }
    graph::has_cycle_with_max_parity(&edges, nba.initial_states(), true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bitset::BitSet;
    use crate::gadget::gadgets_from_seeds;
    use crate::papa::build_papa;
    use crate::syntax::parse_pmutl;

    fn setup(s: &str) -> (Papa, Vec<Gadget>) {
        let a = build_papa(&parse_pmutl(s).unwrap()).unwrap();
        let gs = gadgets_from_seeds(&a, &BitSet::from_indices(a.num_states(), [a.initial()]));
        (a, gs)
    }

    #[test]
    fn greatest_fixpoint_colors_are_even() {
        let (a, gs) = setup("nu Z.(a & X[>=4/5] Z)");
        let npa = build_bad_npa(&a, &gs);
        for s in 0..a.num_states() {
            assert!(npa.moves(s, 0).iter().all(|&(_, c)| c == 0 || c == 2));
        }
        let mut npa = npa;
        assert!(!npa_lasso_accepts(&mut npa, &[], &gs));
        // from the variable state the path wraps around and picks up color 2
        let (b, _) = setup("nu Z.(a & X[>=4/5] Z)");
        let from_z = gadgets_from_seeds(&b, &BitSet::from_indices(5, [4]));
        let mut npa = build_bad_npa(&b, &from_z);
        assert_eq!(npa.moves(4, 0), [(4, 2)]);
        assert!(!npa_lasso_accepts(&mut npa, &gs, &from_z));
    }

    #[test]
    fn least_fixpoint_path_is_bad() {
        let (a, gs) = setup("mu Z.(a | X[>=3/5] Z)");
        let right = gs.iter().find(|g| g.contains(3)).unwrap().clone();
        let loop_gadget = gadgets_from_seeds(&a, &BitSet::from_indices(5, [4]))
            .into_iter()
            .find(|g| g.contains(3))
            .unwrap();
        let mut npa = build_bad_npa(&a, &[]);
        assert!(npa_lasso_accepts(&mut npa, std::slice::from_ref(&right), std::slice::from_ref(&loop_gadget)));
        let mut nba = parity_npa_to_nba(npa.clone());
        assert!(nba_lasso_accepts(&mut nba, std::slice::from_ref(&right), std::slice::from_ref(&loop_gadget)));
        let left = gs.iter().find(|g| g.contains(2)).unwrap().clone();
        assert!(!npa_lasso_accepts(&mut npa, std::slice::from_ref(&left), &[Gadget::empty(5)]));
        assert!(!nba_lasso_accepts(&mut nba, &[left], &[Gadget::empty(5)]));
    }

    #[test]
    fn incompatible_letter_is_bad() {
        let (a, gs) = setup("a & !a");
        let mut npa = build_bad_npa(&a, &gs);
        let empty = Gadget::empty(a.num_states());
        assert!(npa_lasso_accepts(&mut npa, &gs, std::slice::from_ref(&empty)));
        assert!(npa_lasso_accepts(&mut npa, std::slice::from_ref(&empty), &gs));
        assert!(!npa_lasso_accepts(&mut npa, &[], &[empty]));
    }
}
