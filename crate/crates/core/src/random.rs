//! Seeded generators of random chains, formulas and gadget lassos used by
//! the test batteries and the self-test.

use std::collections::{BTreeMap, BTreeSet};

use rand::seq::SliceRandom;
use rand::Rng;

use crate::gadget::{prob_targets, Gadget};
use crate::game::{ParityGame, Player};
use crate::markov::{MarkovChain, PointedMarkovChain};
use crate::papa::Papa;
use crate::prob::{rat, Bound};
use crate::syntax::{Formula, PctlFormula};

/// A chain with `1..=max_states` states, each with between one and three
/// successors and a random subset of `atoms` as labels. Initial state 0.
pub fn random_chain(rng: &mut impl Rng, max_states: usize, atoms: &[&str]) -> PointedMarkovChain {
    let n = rng.gen_range(1..=max_states);
    let names = (0..n).map(|i| format!("s{i}")).collect();
    let mut rows = Vec::with_capacity(n);
    let mut labels = Vec::with_capacity(n);
    for _ in 0..n {
        let k = rng.gen_range(1..=n.min(3));
        let targets: Vec<usize> = rand::seq::index::sample(rng, n, k).into_iter().collect();
        let weights: Vec<i64> = (0..k).map(|_| rng.gen_range(1..=4)).collect();
        let total: i64 = weights.iter().sum();
        let row: BTreeMap<usize, _> = targets.into_iter().zip(weights).map(|(t, w)| (t, rat(w, total))).collect();
        rows.push(row);
        let l: BTreeSet<String> = atoms.iter().filter(|_| rng.gen_bool(0.5)).map(|a| a.to_string()).collect();
        labels.push(l);
    }
    MarkovChain::new(names, rows, labels).expect("generated rows are stochastic").pointed(0)
}

/// Shape of random mu-calculus formulas.
#[derive(Debug, Clone)]
pub struct FormulaShape {
    pub depth: usize,
    pub max_fixpoints: usize,
    pub atoms: Vec<String>,
    /// Variable occurrences always sit under a next operator.
    pub guarded: bool,
}

impl Default for FormulaShape {
    fn default() -> Self {
        FormulaShape { depth: 4, max_fixpoints: 2, atoms: vec!["a".into(), "b".into()], guarded: false }
    }
}

fn random_bound(rng: &mut impl Rng) -> Bound {
    const BOUNDS: [(bool, i64, i64); 8] =
        [(true, 0, 1), (false, 1, 1), (false, 1, 2), (true, 1, 2), (false, 1, 3), (false, 2, 3), (true, 1, 4), (false, 4, 5)];
    let (strict, n, d) = BOUNDS[rng.gen_range(0..BOUNDS.len())];
    if strict {
        Bound::gt(n, d)
    } else {
        Bound::geq(n, d)
    }
}

/// A closed formula of the given shape.
pub fn random_formula(rng: &mut impl Rng, shape: &FormulaShape) -> Formula {
    random_open_formula(rng, shape, &[])
}

/// A formula whose free variables are among `free`, which must not have the
/// form `Z<number>`.
pub fn random_open_formula(rng: &mut impl Rng, shape: &FormulaShape, free: &[&str]) -> Formula {
    let mut budget = shape.max_fixpoints;
    let mut scope: Vec<String> = free.iter().map(|z| z.to_string()).collect();
    gen_formula(rng, shape, shape.depth, &mut budget, &mut scope, false)
}

fn gen_formula(
    rng: &mut impl Rng,
    shape: &FormulaShape,
    depth: usize,
    budget: &mut usize,
    scope: &mut Vec<String>,
    under_next: bool,
) -> Formula {
    let var_ok = !scope.is_empty() && (under_next || !shape.guarded);
    if depth == 0 || rng.gen_bool(0.2) {
        if var_ok && rng.gen_bool(0.5) {
            return Formula::Var(scope.choose(rng).expect("nonempty scope").clone());
        }
        let atom = shape.atoms.choose(rng).expect("at least one atom");
        return match rng.gen_range(0..10) {
            0 => Formula::True,
            1 => Formula::False,
            2..=5 => Formula::atom(atom),
            _ => Formula::neg_atom(atom),
        };
    }
    let d = depth - 1;
    match rng.gen_range(0..6) {
        0 | 1 => Formula::next(random_bound(rng), gen_formula(rng, shape, d, budget, scope, true)),
        2 => Formula::and(
            gen_formula(rng, shape, d, budget, scope, under_next),
            gen_formula(rng, shape, d, budget, scope, under_next),
        ),
        3 => Formula::or(
            gen_formula(rng, shape, d, budget, scope, under_next),
            gen_formula(rng, shape, d, budget, scope, under_next),
        ),
        _ if *budget > 0 => {
            *budget -= 1;
            let z = format!("Z{}", scope.len() + 1);
            scope.push(z.clone());
            // the new variable needs its own next operator inside the body
            let body = gen_formula(rng, shape, d, budget, scope, false);
            scope.pop();
            if rng.gen_bool(0.5) {
                Formula::mu(&z, body)
            } else {
                Formula::nu(&z, body)
            }
        }
        _ => Formula::next(random_bound(rng), gen_formula(rng, shape, d, budget, scope, true)),
    }
}

fn qualitative_bound(rng: &mut impl Rng) -> Bound {
    match rng.gen_range(0..10) {
        0 => Bound::geq(0, 1),
        1 => Bound::gt(1, 1),
        2..=5 => Bound::gt(0, 1),
        _ => Bound::geq(1, 1),
    }
}

/// A qualitative PCTL formula of depth at most `depth`.
pub fn random_qualitative_pctl(rng: &mut impl Rng, depth: usize, atoms: &[&str]) -> PctlFormula {
    if depth == 0 || rng.gen_bool(0.15) {
        let atom = atoms.choose(rng).expect("at least one atom");
        return match rng.gen_range(0..8) {
            0 => PctlFormula::True,
            1 => PctlFormula::False,
            2..=4 => PctlFormula::atom(atom),
            _ => PctlFormula::neg_atom(atom),
        };
    }
    let d = depth - 1;
    match rng.gen_range(0..5) {
        0 => PctlFormula::next(qualitative_bound(rng), random_qualitative_pctl(rng, d, atoms)),
        1 => PctlFormula::and(random_qualitative_pctl(rng, d, atoms), random_qualitative_pctl(rng, d, atoms)),
        2 => PctlFormula::or(random_qualitative_pctl(rng, d, atoms), random_qualitative_pctl(rng, d, atoms)),
        3 => {
            let b = qualitative_bound(rng);
            PctlFormula::until(random_qualitative_pctl(rng, d, atoms), b, random_qualitative_pctl(rng, d, atoms))
        }
        _ => {
            let b = qualitative_bound(rng);
            PctlFormula::release(random_qualitative_pctl(rng, d, atoms), b, random_qualitative_pctl(rng, d, atoms))
        }
    }
}

/// A lasso `(u, v)` over `alphabet` with `|u| <= max_u` and
/// `1 <= |v| <= max_v`. Most letters continue a probabilistic edge of the
/// previous one, so that long paths are common.
pub fn random_lasso(
    rng: &mut impl Rng,
    a: &Papa,
    alphabet: &[Gadget],
    max_u: usize,
    max_v: usize,
) -> (Vec<Gadget>, Vec<Gadget>) {
    assert!(!alphabet.is_empty() && max_v > 0);
    let len_u = rng.gen_range(0..=max_u);
    let len_v = rng.gen_range(1..=max_v);
    let mut word: Vec<Gadget> = Vec::with_capacity(len_u + len_v);
    for _ in 0..len_u + len_v {
        let next = match word.last() {
            Some(prev) if rng.gen_bool(0.8) => {
                let targets = prob_targets(a, prev);
                let linked: Vec<&Gadget> = alphabet.iter().filter(|g| g.states().intersects(&targets)).collect();
                linked.choose(rng).copied().unwrap_or_else(|| alphabet.choose(rng).expect("nonempty"))
            }
            _ => alphabet.choose(rng).expect("nonempty"),
        };
        word.push(next.clone());
    }
    let v = word.split_off(len_u);
    (word, v)
}

/// A total game on `2..=max_locations` locations with at most three moves
/// per location and colors up to 5. Uncolored locations only move to
/// colored ones or to uncolored ones of larger index, so every cycle meets a
/// color.
pub fn random_game(rng: &mut impl Rng, max_locations: usize) -> ParityGame {
    let n = rng.gen_range(2..=max_locations);
    let mut colors: Vec<Option<u32>> = (0..n).map(|_| rng.gen_bool(0.7).then(|| rng.gen_range(0..=5))).collect();
    // the last location needs a colored move
    colors[n - 1].get_or_insert_with(|| rng.gen_range(0..=5));
    let mut g = ParityGame::new();
    for c in colors {
        let owner = if rng.gen_bool(0.5) { Player::Even } else { Player::Odd };
        g.add_location(owner, c);
    }
    for v in 0..n {
        let allowed: Vec<usize> =
            (0..n).filter(|&w| g.color(v).is_some() || g.color(w).is_some() || w > v).collect();
        let k = rng.gen_range(1..=allowed.len().min(3));
        for w in allowed.choose_multiple(rng, k) {
            g.add_move(v, *w);
        }
    }
    g
}
