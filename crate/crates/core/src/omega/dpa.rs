//! Deterministic parity automata with state colors (max parity, even
//! accepts).

use std::collections::{HashMap, VecDeque};

use super::safra::Determinizer;
use super::{build_bad_npa, parity_npa_to_nba, Nba, OmegaError};
use crate::gadget::Gadget;
use crate::papa::Papa;

/// A deterministic parity automaton over an explicit gadget alphabet.
/// State `initial` is entered before any letter; each state carries the
/// color of the transition that produced it.
#[derive(Debug, Clone)]
pub struct Dpa {
    alphabet: Vec<Gadget>,
    index: HashMap<Gadget, usize>,
    initial: usize,
    trans: Vec<Vec<usize>>,
    colors: Vec<u32>,
}

impl Dpa {
    pub fn num_states(&self) -> usize {
        self.trans.len()
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    pub fn alphabet(&self) -> &[Gadget] {
        &self.alphabet
    }

    pub fn color(&self, q: usize) -> u32 {
        self.colors[q]
    }

    pub fn letter_id(&self, g: &Gadget) -> Option<usize> {
        self.index.get(g).copied()
    }

    pub fn step(&self, q: usize, letter: usize) -> usize {
        self.trans[q][letter]
    }

    /// Every state has exactly one successor per letter and a color.
    pub fn is_total(&self) -> bool {
        let k = self.alphabet.len();
        self.colors.len() == self.trans.len()
            && self.trans.iter().all(|row| row.len() == k && row.iter().all(|&t| t < self.trans.len()))
    }
}

/// Converts a min-parity transition color of the determinizer into a
/// max-parity state color with the same parity.
fn max_parity(det: &Determinizer, c: u32) -> u32 {
    det.max_color() + 1 - c
}

/// Explores the deterministic automaton reachable over the letters already
/// known to `nba`.
pub fn determinize(nba: Nba, cap: usize) -> Result<Dpa, OmegaError> {
    let alphabet: Vec<Gadget> = nba.npa().letters().to_vec();
    let index = alphabet.iter().cloned().enumerate().map(|(i, g)| (g, i)).collect();
    let mut det = Determinizer::new(nba);
    let mut states: Vec<(usize, u32)> = vec![(det.initial(), 0)];
    let mut ids: HashMap<(usize, u32), usize> = HashMap::from([((det.initial(), 0), 0)]);
    let mut trans: Vec<Vec<usize>> = Vec::new();
    let mut queue = VecDeque::from([0]);
    while let Some(q) = queue.pop_front() {
        let tree = states[q].0;
        let mut row = Vec::with_capacity(alphabet.len());
        for letter in 0..alphabet.len() {
            let (next, c) = det.step(tree, letter);
            let key = (next, max_parity(&det, c));
            let id = *ids.entry(key).or_insert_with(|| {
                states.push(key);
                queue.push_back(states.len() - 1);
                states.len() - 1
            });
            if states.len() > cap {
                return Err(OmegaError::TooManyStates(cap));
            }
            row.push(id);
        }
        if trans.len() <= q {
            trans.resize(q + 1, Vec::new());
        }
        trans[q] = row;
    }
    let colors = states.iter().map(|&(_, c)| c).collect();
    Ok(Dpa { alphabet, index, initial: 0, trans, colors })
}

/// Accepts exactly the words the input rejects.
pub fn complement_dpa(d: &Dpa) -> Dpa {
    let mut out = d.clone();
    for c in &mut out.colors {
        *c += 1;
    }
    out
}

/// The automaton accepting the gadget sequences over `alphabet` in which
/// every gadget is compatible and every infinite path is even.
pub fn build_tilde(a: &Papa, alphabet: &[Gadget], cap: usize) -> Result<Dpa, OmegaError> {
    let nba = parity_npa_to_nba(build_bad_npa(a, alphabet));
    Ok(complement_dpa(&determinize(nba, cap)?))
}

/// Whether `d` accepts `u v^omega`. Every letter must belong to the
/// alphabet of `d`.
pub fn lasso_accepts(d: &Dpa, u: &[Gadget], v: &[Gadget]) -> bool {
    let id = |g: &Gadget| d.letter_id(g).expect("letter outside the automaton's alphabet");
    let u: Vec<usize> = u.iter().map(id).collect();
    let v: Vec<usize> = v.iter().map(id).collect();
    run_lasso(d.initial(), &u, &v, |q, l| {
        let t = d.step(q, l);
        (t, d.color(t))
    })
}

/// Runs the lasso on a deterministic automaton whose `step` returns the
/// successor and its color; true iff the largest color on the loop is even.
fn run_lasso(initial: usize, u: &[usize], v: &[usize], mut step: impl FnMut(usize, usize) -> (usize, u32)) -> bool {
    assert!(!v.is_empty(), "lasso loop must be nonempty");
    let mut q = initial;
    for &l in u {
        q = step(q, l).0;
    }
    // states at the start of each pass over v, until one repeats
    let mut starts: Vec<usize> = Vec::new();
    let mut passes: Vec<u32> = Vec::new();
    loop {
        if let Some(first) = starts.iter().position(|&s| s == q) {
            return passes[first..].iter().max().is_some_and(|c| c % 2 == 0);
        }
        starts.push(q);
        let mut best = 0;
        for &l in v {
            let (t, c) = step(q, l);
            q = t;
            best = best.max(c);
        }
        passes.push(best);
    }
}

/// The complemented automaton explored on demand, for letters supplied one
/// at a time. This is what the game uses.
#[derive(Debug, Clone)]
pub struct LazyTilde {
    det: Determinizer,
    states: Vec<(usize, u32)>,
    ids: HashMap<(usize, u32), usize>,
    trans: HashMap<(usize, usize), usize>,
    cap: usize,
}

impl LazyTilde {
    pub fn new(a: &Papa, cap: usize) -> Self {
        let det = Determinizer::new(parity_npa_to_nba(build_bad_npa(a, &[])));
        let init = (det.initial(), 0);
        LazyTilde { det, states: vec![init], ids: HashMap::from([(init, 0)]), trans: HashMap::new(), cap }
    }

    pub fn initial(&self) -> usize {
        0
    }

    pub fn num_states(&self) -> usize {
        self.states.len()
    }

    pub fn letter(&mut self, g: &Gadget) -> usize {
        self.det.intern_letter(g)
    }

    /// Color of `q` in the complemented automaton.
    pub fn color(&self, q: usize) -> u32 {
        self.states[q].1 + 1
    }

    pub fn step(&mut self, q: usize, letter: usize) -> Result<usize, OmegaError> {
        if let Some(&t) = self.trans.get(&(q, letter)) {
            return Ok(t);
        }
        let (next, c) = self.det.step(self.states[q].0, letter);
        let key = (next, max_parity(&self.det, c));
        let id = match self.ids.get(&key) {
            Some(&id) => id,
            None => {
                if self.states.len() >= self.cap {
                    return Err(OmegaError::TooManyStates(self.cap));
                }
                self.states.push(key);
                self.ids.insert(key, self.states.len() - 1);
                self.states.len() - 1
            }
        };
        self.trans.insert((q, letter), id);
        Ok(id)
    }

    /// Whether `u v^omega` read from state `q` is accepted.
    pub fn accepts_from(&mut self, q: usize, u: &[Gadget], v: &[Gadget]) -> Result<bool, OmegaError> {
        let u: Vec<usize> = u.iter().map(|g| self.letter(g)).collect();
        let v: Vec<usize> = v.iter().map(|g| self.letter(g)).collect();
        let mut failure = None;
        let verdict = run_lasso(q, &u, &v, |s, l| match self.step(s, l) {
            Ok(t) => (t, self.color(t)),
            Err(e) => {
                failure = Some(e);
                (s, 0)
            }
        });
        match failure {
            Some(e) => Err(e),
            None => Ok(verdict),
        }
    }
}
