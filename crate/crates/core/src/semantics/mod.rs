//! Denotational semantics of the mu-calculus and PCTL over finite chains.

mod linalg;
mod pctl;

use std::collections::HashMap;

use thiserror::Error;

pub use linalg::solve as solve_linear;
pub use pctl::{pctl_eval, until_prob};

use crate::bitset::BitSet;
use crate::markov::{MarkovChain, PointedMarkovChain};
use crate::syntax::Formula;

/// A set of chain states.
pub type StateSet = BitSet;

/// Values of the free variables.
pub type Assignment = HashMap<String, StateSet>;

/// Largest chain `eval_by_definition` accepts.
pub const DEFINITION_MAX_STATES: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("variable `{0}` has no value")]
    UnboundVariable(String),
    #[error("formula is not closed (free: {0})")]
    NotClosed(String),
    #[error("subset enumeration over {0} states is too large")]
    TooManyStates(usize),
}

/// `[[f]]_M(e)`, with fixpoints computed by Kleene iteration.
pub fn eval(f: &Formula, m: &MarkovChain, e: &Assignment) -> Result<StateSet, EvalError> {
    let mut env = e.clone();
    eval_in(f, m, &mut env, Mode::Iterate)
}

/// `[[f]]_M(e)`, with fixpoints computed literally as the intersection of
/// all pre-fixpoints (least) or the union of all post-fixpoints (greatest).
/// Exponential in the number of states.
pub fn eval_by_definition(f: &Formula, m: &MarkovChain, e: &Assignment) -> Result<StateSet, EvalError> {
    if m.num_states() > DEFINITION_MAX_STATES {
        return Err(EvalError::TooManyStates(m.num_states()));
    }
    let mut env = e.clone();
    eval_in(f, m, &mut env, Mode::Enumerate)
}

/// `M, s |= f` for closed `f`.
pub fn check(pmc: &PointedMarkovChain, f: &Formula) -> Result<bool, EvalError> {
    let free = f.free_vars();
    if !free.is_empty() {
        let names: Vec<String> = free.into_iter().collect();
        return Err(EvalError::NotClosed(names.join(", ")));
    }
    Ok(eval(f, &pmc.chain, &Assignment::new())?.contains(pmc.initial))
}

/// How fixpoints are computed.
#[derive(Clone, Copy)]
enum Mode {
    Iterate,
    Enumerate,
}

fn eval_in(
    f: &Formula,
    m: &MarkovChain,
    env: &mut Assignment,
    mode: Mode,
) -> Result<StateSet, EvalError> {
    let n = m.num_states();
    Ok(match f {
        Formula::True => BitSet::full(n),
        Formula::False => BitSet::empty(n),
        Formula::Atom(a) => m.states_with(a),
        Formula::NegAtom(a) => m.states_with(a).complement(),
        Formula::Var(z) => env.get(z).cloned().ok_or_else(|| EvalError::UnboundVariable(z.clone()))?,
        Formula::Next(b, g) => {
            let inner = eval_in(g, m, env, mode)?;
            BitSet::from_indices(n, m.states().filter(|&s| b.admits(&m.mass_into(s, &inner))))
        }
        Formula::And(l, r) => eval_in(l, m, env, mode)?.intersection(&eval_in(r, m, env, mode)?),
        Formula::Or(l, r) => eval_in(l, m, env, mode)?.union(&eval_in(r, m, env, mode)?),
        Formula::Mu(z, g) => fixpoint(mode, true, z, g, m, env)?,
        Formula::Nu(z, g) => fixpoint(mode, false, z, g, m, env)?,
    })
}

/// Evaluates `body` with `var` bound to `value`, restoring the previous
/// binding afterwards.
fn with_binding(
    var: &str,
    value: StateSet,
    body: &Formula,
    m: &MarkovChain,
    env: &mut Assignment,
    mode: Mode,
) -> Result<StateSet, EvalError> {
    let saved = env.insert(var.to_string(), value);
    let out = eval_in(body, m, env, mode);
    match saved {
        Some(v) => env.insert(var.to_string(), v),
        None => env.remove(var),
    };
    out
}

fn fixpoint(
    mode: Mode,
    least: bool,
    var: &str,
    body: &Formula,
    m: &MarkovChain,
    env: &mut Assignment,
) -> Result<StateSet, EvalError> {
    match mode {
        Mode::Iterate => iterate(least, var, body, m, env),
        Mode::Enumerate => enumerate(least, var, body, m, env),
    }
}

fn iterate(
    least: bool,
    var: &str,
    body: &Formula,
    m: &MarkovChain,
    env: &mut Assignment,
) -> Result<StateSet, EvalError> {
    let n = m.num_states();
    let mut current = if least { BitSet::empty(n) } else { BitSet::full(n) };
    loop {
        let next = with_binding(var, current.clone(), body, m, env, Mode::Iterate)?;
        if next == current {
            return Ok(current);
        }
        current = next;
    }
}

fn enumerate(
    least: bool,
    var: &str,
    body: &Formula,
    m: &MarkovChain,
    env: &mut Assignment,
) -> Result<StateSet, EvalError> {
    let n = m.num_states();
    let mut acc = if least { BitSet::full(n) } else { BitSet::empty(n) };
    for mask in 0..(1u64 << n) {
        let candidate = BitSet::from_mask(n, mask);
        let image = with_binding(var, candidate.clone(), body, m, env, Mode::Enumerate)?;
        if least && image.is_subset(&candidate) {
            acc.intersect_with(&candidate);
        } else if !least && candidate.is_subset(&image) {
            acc.union_with(&candidate);
        }
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::markov::{gen_family, ChainFamily};
    use crate::syntax::parse_pmutl;

    fn p(s: &str) -> Formula {
        parse_pmutl(s).unwrap()
    }

    fn names(m: &MarkovChain, set: &StateSet) -> Vec<String> {
        set.iter().map(|s| m.name(s).to_string()).collect()
    }

    #[test]
    fn constants() {
        let m = gen_family(&ChainFamily::Mn(3)).unwrap().chain;
        let e = Assignment::new();
        assert_eq!(eval(&Formula::True, &m, &e).unwrap(), BitSet::full(4));
        assert_eq!(eval_by_definition(&p("mu Z.Z"), &m, &e).unwrap(), BitSet::empty(4));
        assert_eq!(eval_by_definition(&p("nu Z.Z"), &m, &e).unwrap(), BitSet::full(4));
    }

    #[test]
    fn hacker_safe_region() {
        let pmc = gen_family(&ChainFamily::Hacker(10)).unwrap();
        let f = p("nu Z.(!attacked & X[>=7/8] Z)");
        let e = Assignment::new();
        let set = eval(&f, &pmc.chain, &e).unwrap();
        assert_eq!(names(&pmc.chain, &set), ["s1", "s2", "s3", "s4"]);
        assert_eq!(eval_by_definition(&f, &pmc.chain, &e).unwrap(), set);
        assert!(check(&pmc, &f).unwrap());
        // with seven layers the third one only holds with probability 4/5
        let seven = gen_family(&ChainFamily::Hacker(7)).unwrap();
        assert!(!check(&seven, &f).unwrap());
    }

    #[test]
    fn separation_family() {
        let f = p("nu Z.(a & X[>=1/2] Z)");
        let prime = gen_family(&ChainFamily::MPrimeN(2)).unwrap();
        let plain = gen_family(&ChainFamily::Mn(2)).unwrap();
        assert!(check(&prime, &f).unwrap());
        assert!(!check(&plain, &f).unwrap());
        assert!(!check(&gen_family(&ChainFamily::Mn(1)).unwrap(), &f).unwrap());
    }

    #[test]
    fn two_step_cycle_alternates() {
        let pmc = gen_family(&ChainFamily::MDoublePrimeN(4)).unwrap();
        let f = p("nu Z.(a & X[>0] X[>0] Z)");
        let set = eval_by_definition(&f, &pmc.chain, &Assignment::new()).unwrap();
        assert!(set.contains(4));
        assert!(!set.contains(3));
        assert_eq!(eval(&f, &pmc.chain, &Assignment::new()).unwrap(), set);
    }

    #[test]
    fn free_variables() {
        let m = gen_family(&ChainFamily::Mn(2)).unwrap();
        let f = p("a & X[>0] Y");
        assert_eq!(eval(&f, &m.chain, &Assignment::new()), Err(EvalError::UnboundVariable("Y".into())));
        assert!(matches!(check(&m, &f), Err(EvalError::NotClosed(_))));
        let mut e = Assignment::new();
        e.insert("Y".into(), BitSet::from_indices(3, [0]));
        assert_eq!(names(&m.chain, &eval(&f, &m.chain, &e).unwrap()), ["s1"]);
        assert!(!check(&m, &Formula::False).unwrap());
    }
}
