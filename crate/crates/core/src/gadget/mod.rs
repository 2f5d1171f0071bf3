//! Gadgets: finite acyclic unfoldings of one step of an automaton, and the
//! enabling relation between a gadget and a family of successor gadgets.

mod fm;

use std::collections::BTreeSet;

use thiserror::Error;

pub use fm::{lp_feasible, Constraint, LinearSystem, Relation};

use crate::bitset::BitSet;
use crate::papa::{find_cycle, Papa, TransitionCondition};
use crate::prob::{Bound, Comparison, Rational};

/// Default bound on the number of gadgets enumerated at once.
pub const DEFAULT_MAX_GADGETS: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GadgetError {
    #[error("more than {0} gadgets")]
    TooMany(usize),
}

/// A gadget `(P, gamma)`. Edges are kept sorted, so structural equality is
/// equality of gadgets.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Gadget {
    states: BitSet,
    edges: Vec<(usize, usize)>,
}

impl Gadget {
    /// The gadget with no states, over an automaton with `n` states.
    pub fn empty(n: usize) -> Self {
        Gadget { states: BitSet::empty(n), edges: Vec::new() }
    }

    /// Builds a gadget from raw parts. Use [`validate_gadget`] to check the
    /// closure rules.
    pub fn from_parts(states: BitSet, mut edges: Vec<(usize, usize)>) -> Self {
        edges.sort_unstable();
        edges.dedup();
        Gadget { states, edges }
    }

    pub fn states(&self) -> &BitSet {
        &self.states
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn contains(&self, q: usize) -> bool {
        self.states.contains(q)
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    /// Edges leaving `q`.
    pub fn successors(&self, q: usize) -> impl Iterator<Item = usize> + '_ {
        let start = self.edges.partition_point(|&(p, _)| p < q);
        self.edges[start..].iter().take_while(move |&&(p, _)| p == q).map(|&(_, t)| t)
    }
}

impl std::fmt::Debug for Gadget {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Gadget{:?}", self.states)?;
        let edges: Vec<String> = self.edges.iter().map(|(p, q)| format!("{p}->{q}")).collect();
        write!(f, "[{}]", edges.join(" "))
    }
}

/// Partial gadget under construction.
#[derive(Clone)]
struct Partial {
    states: BitSet,
    edges: Vec<(usize, usize)>,
    pending: Vec<usize>,
}

/// All gadgets whose states are exactly the closure of `seeds`, one per
/// resolution of the disjunctions met on the way.
pub fn gadgets_from_seeds(a: &Papa, seeds: &BitSet) -> Vec<Gadget> {
    gadgets_from_seeds_capped(a, seeds, DEFAULT_MAX_GADGETS).expect("gadget count within default cap")
}

pub fn gadgets_from_seeds_capped(a: &Papa, seeds: &BitSet, cap: usize) -> Result<Vec<Gadget>, GadgetError> {
    let mut out = BTreeSet::new();
    let start = Partial { states: seeds.clone(), edges: Vec::new(), pending: seeds.iter().collect() };
    let mut work = vec![start];
    while let Some(mut p) = work.pop() {
        let Some(q) = p.pending.pop() else {
            let g = Gadget::from_parts(p.states, p.edges);
            if is_acyclic(&g) {
                out.insert(g);
                if out.len() > cap {
                    return Err(GadgetError::TooMany(cap));
                }
            }
            continue;
        };
        let add = |p: &mut Partial, t: usize| {
            p.edges.push((q, t));
            if p.states.insert(t) {
                p.pending.push(t);
            }
        };
        match *a.delta(q) {
            TransitionCondition::State(t) => add(&mut p, t),
            TransitionCondition::And(l, r) => {
                add(&mut p, l);
                add(&mut p, r);
            }
            TransitionCondition::Or(l, r) => {
                if l != r {
                    let mut other = p.clone();
                    add(&mut other, r);
                    work.push(other);
                }
                add(&mut p, l);
            }
            _ => {}
        }
        work.push(p);
    }
    Ok(out.into_iter().collect())
}

/// The union of [`gadgets_from_seeds`] over every nonempty seed set.
pub fn all_gadgets(a: &Papa, cap: usize) -> Result<Vec<Gadget>, GadgetError> {
    let n = a.num_states();
    assert!(n < 32, "all_gadgets enumerates 2^|Q| seed sets");
    let mut out = BTreeSet::new();
    for mask in 1..(1u64 << n) {
        for g in gadgets_from_seeds_capped(a, &BitSet::from_mask(n, mask), cap)? {
            out.insert(g);
        }
        if out.len() > cap {
            return Err(GadgetError::TooMany(cap));
        }
    }
    Ok(out.into_iter().collect())
}

fn is_acyclic(g: &Gadget) -> bool {
    let n = g.states.capacity();
    let mut graph = vec![Vec::new(); n];
    for &(p, q) in &g.edges {
        graph[p].push(q);
    }
    find_cycle(&graph, |_| true).is_none()
}

/// Checks the closure rules and acyclicity, describing the first violation.
pub fn validate_gadget(a: &Papa, g: &Gadget) -> Result<(), String> {
    for &(p, q) in &g.edges {
        if !g.contains(p) || !g.contains(q) {
            return Err(format!("edge {p}->{q} leaves the state set"));
        }
    }
    for q in g.states.iter() {
        let out: Vec<usize> = g.successors(q).collect();
        let ok = match *a.delta(q) {
            TransitionCondition::State(t) => out == [t],
            TransitionCondition::And(l, r) => {
                let mut want = vec![l, r];
                want.sort_unstable();
                want.dedup();
                out == want
            }
            TransitionCondition::Or(l, r) => out.len() == 1 && (out[0] == l || out[0] == r),
            _ => out.is_empty(),
        };
        if !ok {
            return Err(format!("state {q} has edges {out:?} against {:?}", a.delta(q)));
        }
    }
    if !is_acyclic(g) {
        return Err("cycle".into());
    }
    Ok(())
}

/// No state with condition `false` and no complementary literals.
pub fn is_compatible(a: &Papa, g: &Gadget) -> bool {
    let mut pos = BTreeSet::new();
    let mut neg = BTreeSet::new();
    for q in g.states.iter() {
        match a.delta(q) {
            TransitionCondition::Bot => return false,
            TransitionCondition::Lit(x) => {
                pos.insert(x.as_str());
            }
            TransitionCondition::NegLit(x) => {
                neg.insert(x.as_str());
            }
            _ => {}
        }
    }
    pos.is_disjoint(&neg)
}

/// Atoms asserted positively by the gadget.
pub fn positive_literals(a: &Papa, g: &Gadget) -> BTreeSet<String> {
    g.states
        .iter()
        .filter_map(|q| match a.delta(q) {
            TransitionCondition::Lit(x) => Some(x.clone()),
            _ => None,
        })
        .collect()
}

/// The probabilistic obligations `(bound, target)` of the gadget's states.
pub fn prob_obligations(a: &Papa, g: &Gadget) -> Vec<(Bound, usize)> {
    let mut out: Vec<(Bound, usize)> = g
        .states
        .iter()
        .filter_map(|q| match a.delta(q) {
            TransitionCondition::Prob(b, t) => Some((b.clone(), *t)),
            _ => None,
        })
        .collect();
    out.sort_by(|x, y| (x.1, &x.0).cmp(&(y.1, &y.0)));
    out.dedup();
    out
}

/// Targets of the gadget's probabilistic states.
pub fn prob_targets(a: &Papa, g: &Gadget) -> BitSet {
    BitSet::from_indices(a.num_states(), prob_obligations(a, g).into_iter().map(|(_, t)| t))
}

/// The linear system behind `gamma |- d`, over one variable per member of
/// `gamma`.
pub fn enabling_system(a: &Papa, gamma: &[&Gadget], d: &Gadget) -> LinearSystem {
    let k = gamma.len();
    let one = Rational::from_integer(1.into());
    let zero = Rational::from_integer(0.into());
    let mut sys = LinearSystem::new(k);
    for i in 0..k {
        sys.add(&[(i, one.clone())], Relation::Gt, zero.clone());
    }
    let all: Vec<(usize, Rational)> = (0..k).map(|i| (i, one.clone())).collect();
    sys.add(&all, Relation::Le, one.clone());
    for (b, target) in prob_obligations(a, d) {
        let terms: Vec<(usize, Rational)> =
            (0..k).filter(|&i| gamma[i].contains(target)).map(|i| (i, one.clone())).collect();
        let rel = match b.cmp {
            Comparison::Gt => Relation::Gt,
            Comparison::Geq => Relation::Ge,
        };
        sys.add(&terms, rel, b.prob.value().clone());
    }
    sys
}

/// Decides `gamma |- d` and returns the enabling condition `x_1..x_k`.
/// An empty `gamma` enables exactly the gadgets without probabilistic
/// states.
pub fn enabling(a: &Papa, gamma: &[&Gadget], d: &Gadget) -> Option<Vec<Rational>> {
    if gamma.is_empty() {
        return prob_obligations(a, d).is_empty().then(Vec::new);
    }
    let sys = enabling_system(a, gamma, d);
    let x = lp_feasible(&sys)?;
    assert!(sys.satisfied_by(&x), "enabling solution failed re-verification");
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::papa::build_papa;
    use crate::prob::rat;
    use crate::syntax::parse_pmutl;

    fn papa(s: &str) -> Papa {
        build_papa(&parse_pmutl(s).unwrap()).unwrap()
    }

    fn seeds(a: &Papa, qs: &[usize]) -> BitSet {
        BitSet::from_indices(a.num_states(), qs.iter().copied())
    }

    #[test]
    fn disjunction_branches() {
        // 0: f, 1: a | X Z, 2: a, 3: X Z, 4: Z
        let a = papa("mu Z.(a | X[>=3/5] Z)");
        let gs = gadgets_from_seeds(&a, &seeds(&a, &[0]));
        assert_eq!(gs.len(), 2);
        for g in &gs {
            validate_gadget(&a, g).unwrap();
        }
        let left = gs.iter().find(|g| g.contains(2)).unwrap();
        assert_eq!(left.edges(), [(0, 1), (1, 2)]);
        assert!(!left.contains(3));
        let right = gs.iter().find(|g| g.contains(3)).unwrap();
        assert_eq!(prob_targets(&a, right), seeds(&a, &[4]));

        let lit = gadgets_from_seeds(&a, &seeds(&a, &[2]));
        assert_eq!(lit, vec![Gadget::from_parts(seeds(&a, &[2]), vec![])]);
    }

    #[test]
    fn conjunction_forces_both() {
        let a = papa("nu Z.(a & X[>=4/5] Z)");
        let gs = gadgets_from_seeds(&a, &seeds(&a, &[0]));
        assert_eq!(gs.len(), 1);
        assert_eq!(gs[0].states(), &seeds(&a, &[0, 1, 2, 3]));
        // from the variable state the gadget wraps around to the top
        let from_z = gadgets_from_seeds(&a, &seeds(&a, &[4]));
        assert_eq!(from_z[0].states(), &seeds(&a, &[0, 1, 2, 3, 4]));
    }

    #[test]
    fn all_gadgets_regression() {
        let a = papa("mu Z.(a | X[>=3/5] Z)");
        let all = all_gadgets(&a, DEFAULT_MAX_GADGETS).unwrap();
        for g in &all {
            validate_gadget(&a, g).unwrap();
        }
        // three seed sets below the disjunction ({a}, {X Z}, both), and for
        // each of the three entry points {or}, {f, or}, {Z, f, or} two choices
        // times whether the unchosen leaf is seeded as well
        assert_eq!(all.len(), 15);
        // no choices: three leaf sets and three entry points
        let nu = papa("nu Z.(a & X[>=4/5] Z)");
        assert_eq!(all_gadgets(&nu, DEFAULT_MAX_GADGETS).unwrap().len(), 6);
    }

    #[test]
    fn compatibility() {
        let a = papa("a & !a");
        let g = &gadgets_from_seeds(&a, &seeds(&a, &[0]))[0];
        assert!(!is_compatible(&a, g));
        let t = papa("true");
        assert!(is_compatible(&t, &gadgets_from_seeds(&t, &seeds(&t, &[0]))[0]));
        let f = papa("false | b");
        let gs = gadgets_from_seeds(&f, &seeds(&f, &[0]));
        assert_eq!(gs.iter().filter(|g| is_compatible(&f, g)).count(), 1);
    }

    #[test]
    fn enabling_examples() {
        // 0: X a, 1: a
        let a = papa("X[>=1/2] a");
        let d = &gadgets_from_seeds(&a, &seeds(&a, &[0]))[0];
        let d1 = &gadgets_from_seeds(&a, &seeds(&a, &[1]))[0];
        assert_eq!(enabling(&a, &[d1], d), Some(vec![rat(3, 4)]));
        assert_eq!(enabling(&a, &[], d), None);
        assert_eq!(enabling(&a, &[], d1), Some(vec![]));

        // 0: root, 1: X a, 2: a, 3: X !a, 4: !a
        let b = papa("X[>1/2] a & X[>1/2] !a");
        let root = &gadgets_from_seeds(&b, &seeds(&b, &[0]))[0];
        let pa = &gadgets_from_seeds(&b, &seeds(&b, &[2]))[0];
        let pna = &gadgets_from_seeds(&b, &seeds(&b, &[4]))[0];
        assert_eq!(enabling(&b, &[pa, pna], root), None);
        let both = &gadgets_from_seeds(&b, &seeds(&b, &[2, 4]))[0];
        assert!(enabling(&b, &[both], root).is_some());
    }
}
