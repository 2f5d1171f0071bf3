//! PCTL model checking with exact until probabilities.

use num_traits::{One, Zero};

use super::linalg;
use super::StateSet;
use crate::bitset::BitSet;
use crate::markov::MarkovChain;
use crate::prob::Rational;
use crate::syntax::PctlFormula;

/// States of `m` satisfying `g`.
pub fn pctl_eval(g: &PctlFormula, m: &MarkovChain) -> StateSet {
    let n = m.num_states();
    match g {
        PctlFormula::True => BitSet::full(n),
        PctlFormula::False => BitSet::empty(n),
        PctlFormula::Atom(a) => m.states_with(a),
        PctlFormula::NegAtom(a) => m.states_with(a).complement(),
        PctlFormula::And(l, r) => pctl_eval(l, m).intersection(&pctl_eval(r, m)),
        PctlFormula::Or(l, r) => pctl_eval(l, m).union(&pctl_eval(r, m)),
        PctlFormula::Next(b, h) => {
            let inner = pctl_eval(h, m);
            BitSet::from_indices(n, m.states().filter(|&s| b.admits(&m.mass_into(s, &inner))))
        }
        PctlFormula::Until(l, b, r) => {
            let probs = until_prob(m, &pctl_eval(l, m), &pctl_eval(r, m));
            BitSet::from_indices(n, m.states().filter(|&s| b.admits(&probs[s])))
        }
        PctlFormula::Release(l, b, r) => {
            // l R r fails exactly on the paths satisfying !l U !r
            let (s1, s2) = (pctl_eval(l, m), pctl_eval(r, m));
            let escape = until_prob(m, &s1.complement(), &s2.complement());
            BitSet::from_indices(n, m.states().filter(|&s| b.admits(&(Rational::one() - &escape[s]))))
        }
    }
}

/// For every state, the probability of the paths that reach `s2` while
/// staying inside `s1` before that.
pub fn until_prob(m: &MarkovChain, s1: &StateSet, s2: &StateSet) -> Vec<Rational> {
    let n = m.num_states();
    // states that can reach s2 through s1-states
    let mut reach = s2.clone();
    loop {
        let grown: Vec<usize> = m
            .states()
            .filter(|&s| !reach.contains(s) && s1.contains(s))
            .filter(|&s| m.successors(s).iter().any(|(t, _)| reach.contains(*t)))
            .collect();
        if grown.is_empty() {
            break;
        }
        for s in grown {
            reach.insert(s);
        }
    }
    let unknown: Vec<usize> = reach.difference(s2).iter().collect();
    let mut column = vec![usize::MAX; n];
    for (i, &s) in unknown.iter().enumerate() {
        column[s] = i;
    }
    // x_s - sum_{t unknown} T(s,t) x_t = T(s, s2)
    let k = unknown.len();
    let mut a = vec![vec![Rational::zero(); k]; k];
    let mut b = vec![Rational::zero(); k];
    for (i, &s) in unknown.iter().enumerate() {
        a[i][i] += Rational::one();
        for (t, p) in m.successors(s) {
            if s2.contains(*t) {
                b[i] += p;
            } else if column[*t] != usize::MAX {
                a[i][column[*t]] -= p;
            }
        }
    }
    let x = linalg::solve(a, b).expect("until system is nonsingular once zero-probability states are removed");
    let mut out = vec![Rational::zero(); n];
    for s in s2.iter() {
        out[s] = Rational::one();
    }
    for (i, &s) in unknown.iter().enumerate() {
        out[s] = x[i].clone();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::markov::{gen_family, ChainFamily};
    use crate::prob::rat;
    use crate::syntax::parse_pctl;

    #[test]
    fn hacker_is_eventually_attacked() {
        let m = gen_family(&ChainFamily::Hacker(10)).unwrap().chain;
        let attacked = m.states_with("attacked");
        let probs = until_prob(&m, &attacked.complement(), &attacked);
        assert!(probs.iter().all(|p| p.is_one()));
        assert!(pctl_eval(&parse_pctl("F[>=1] attacked").unwrap(), &m).contains(0));
    }

    #[test]
    fn geometric_escape() {
        let m = gen_family(&ChainFamily::Thm4 { x: rat(1, 3), y: rat(1, 3), z: rat(1, 3) }).unwrap().chain;
        let probs = until_prob(&m, &BitSet::from_indices(3, [0, 1]), &BitSet::from_indices(3, [2]));
        assert_eq!(probs, vec![rat(1, 2), rat(0, 1), rat(1, 1)]);
        assert!(pctl_eval(&parse_pctl("F[>=1/2] a").unwrap(), &m).contains(0));
        assert!(!pctl_eval(&parse_pctl("F[>1/2] a").unwrap(), &m).contains(0));
    }

    #[test]
    fn target_everywhere() {
        let m = gen_family(&ChainFamily::Mn(3)).unwrap().chain;
        let probs = until_prob(&m, &BitSet::empty(4), &BitSet::full(4));
        assert!(probs.iter().all(|p| p.is_one()));
        assert!(pctl_eval(&parse_pctl("a U[>1] b").unwrap(), &m).is_empty());
    }

    #[test]
    fn release_by_duality() {
        // G !a has probability y/(y+z) = 1/3 at s1
        let m = gen_family(&ChainFamily::Thm4 { x: rat(1, 4), y: rat(1, 4), z: rat(1, 2) }).unwrap().chain;
        assert_eq!(until_prob(&m, &BitSet::full(3), &m.states_with("a"))[0], rat(2, 3));
        assert!(pctl_eval(&parse_pctl("G[>=1/3] !a").unwrap(), &m).contains(0));
        assert!(!pctl_eval(&parse_pctl("G[>1/3] !a").unwrap(), &m).contains(0));
        // r must hold up to and including the step where l first holds
        let release = pctl_eval(&parse_pctl("(a R[>=1] !a)").unwrap(), &m);
        assert!(!release.contains(0));
        assert!(release.contains(1));
    }
}
