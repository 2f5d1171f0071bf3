//! Formulas of the probabilistic mu-calculus and of PCTL.
//!
//! Both logics are in negation normal form: negation only ever sits on an
//! atomic proposition. Fixpoint variables are strings starting with an
//! uppercase letter, atoms start with a lowercase letter.

mod guard;
mod parser;
mod print;
mod translate;

use std::collections::{BTreeSet, HashMap};

pub use guard::{guard, is_guarded};
pub use parser::{parse_closed_pmutl, parse_pctl, parse_pmutl, ParseError};
pub use translate::{translate_qualitative, TranslateError};

use crate::prob::Bound;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Formula {
    True,
    False,
    Atom(String),
    NegAtom(String),
    Var(String),
    Next(Bound, Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Mu(String, Box<Formula>),
    Nu(String, Box<Formula>),
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Fixpoint {
    Least,
    Greatest,
}

impl Formula {
    pub fn atom(name: &str) -> Formula {
        Formula::Atom(name.to_string())
    }

    pub fn neg_atom(name: &str) -> Formula {
        Formula::NegAtom(name.to_string())
    }

    pub fn var(name: &str) -> Formula {
        Formula::Var(name.to_string())
    }

    pub fn next(bound: Bound, body: Formula) -> Formula {
        Formula::Next(bound, Box::new(body))
    }

    pub fn and(lhs: Formula, rhs: Formula) -> Formula {
        Formula::And(Box::new(lhs), Box::new(rhs))
    }

    pub fn or(lhs: Formula, rhs: Formula) -> Formula {
        Formula::Or(Box::new(lhs), Box::new(rhs))
    }

    pub fn mu(var: &str, body: Formula) -> Formula {
        Formula::Mu(var.to_string(), Box::new(body))
    }

    pub fn nu(var: &str, body: Formula) -> Formula {
        Formula::Nu(var.to_string(), Box::new(body))
    }

    /// The binder's kind, variable and body, if this is a fixpoint node.
    pub fn as_binder(&self) -> Option<(Fixpoint, &str, &Formula)> {
        match self {
            Formula::Mu(z, body) => Some((Fixpoint::Least, z, body)),
            Formula::Nu(z, body) => Some((Fixpoint::Greatest, z, body)),
            _ => None,
        }
    }

    /// Immediate subformulas, left to right.
    pub fn children(&self) -> Vec<&Formula> {
        match self {
            Formula::True
            | Formula::False
            | Formula::Atom(_)
            | Formula::NegAtom(_)
            | Formula::Var(_) => vec![],
            Formula::Next(_, g) | Formula::Mu(_, g) | Formula::Nu(_, g) => vec![g],
            Formula::And(l, r) | Formula::Or(l, r) => vec![l, r],
        }
    }

    pub fn size(&self) -> usize {
        1 + self.children().iter().map(|c| c.size()).sum::<usize>()
    }

    pub fn free_vars(&self) -> BTreeSet<String> {
        fn walk(f: &Formula, bound: &mut Vec<String>, out: &mut BTreeSet<String>) {
            match f {
                Formula::Var(z) => {
                    if !bound.contains(z) {
                        out.insert(z.clone());
                    }
                }
                Formula::Mu(z, g) | Formula::Nu(z, g) => {
                    bound.push(z.clone());
                    walk(g, bound, out);
                    bound.pop();
                }
                _ => {
                    for c in f.children() {
                        walk(c, bound, out);
                    }
                }
            }
        }
        let mut out = BTreeSet::new();
        walk(self, &mut Vec::new(), &mut out);
        out
    }

    pub fn is_closed(&self) -> bool {
        self.free_vars().is_empty()
    }

    /// Variables bound somewhere in the formula, in pre-order.
    pub fn bound_vars(&self) -> Vec<String> {
        let mut out = Vec::new();
        self.visit(&mut |g| {
            if let Some((_, z, _)) = g.as_binder() {
                out.push(z.to_string());
            }
        });
        out
    }

    pub fn atoms(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.visit(&mut |g| {
            if let Formula::Atom(a) | Formula::NegAtom(a) = g {
                out.insert(a.clone());
            }
        });
        out
    }

    pub fn fixpoint_count(&self) -> usize {
        self.bound_vars().len()
    }

    /// Pre-order traversal.
    pub fn visit<'a>(&'a self, f: &mut impl FnMut(&'a Formula)) {
        f(self);
        for c in self.children() {
            c.visit(f);
        }
    }

    /// All probability bounds occurring on next operators.
    pub fn bounds(&self) -> Vec<&Bound> {
        let mut out = Vec::new();
        self.visit(&mut |g| {
            if let Formula::Next(b, _) = g {
                out.push(b);
            }
        });
        out
    }

    /// Every variable occurrence is in scope of its binder and bound
    /// variables are pairwise distinct and distinct from free ones.
    pub fn is_renamed_apart(&self) -> bool {
        let bound = self.bound_vars();
        let unique: BTreeSet<_> = bound.iter().collect();
        unique.len() == bound.len() && self.free_vars().iter().all(|z| !unique.contains(z))
    }

    /// Renames bound variables so that they are pairwise distinct and
    /// distinct from every free variable. Already distinct names are kept.
    pub fn rename_apart(&self) -> Formula {
        let mut taken: BTreeSet<String> = self.free_vars();
        let mut all_names = taken.clone();
        self.visit(&mut |g| {
            if let Formula::Var(z) = g {
                all_names.insert(z.clone());
            }
            if let Some((_, z, _)) = g.as_binder() {
                all_names.insert(z.to_string());
            }
        });
        let mut scope: Vec<(String, String)> = Vec::new();
        rename_walk(self, &mut scope, &mut taken, &all_names)
    }

    /// Capture-free substitution of `replacement` for free occurrences of `var`.
    /// `replacement` must not contain variables bound in `self`.
    pub fn substitute(&self, var: &str, replacement: &Formula) -> Formula {
        match self {
            Formula::Var(z) if z == var => replacement.clone(),
            Formula::Mu(z, _) | Formula::Nu(z, _) if z == var => self.clone(),
            _ => self.map_children(|c| c.substitute(var, replacement)),
        }
    }

    /// Rebuilds this node with `f` applied to each immediate child.
    pub fn map_children(&self, mut f: impl FnMut(&Formula) -> Formula) -> Formula {
        match self {
            Formula::True
            | Formula::False
            | Formula::Atom(_)
            | Formula::NegAtom(_)
            | Formula::Var(_) => self.clone(),
            Formula::Next(b, g) => Formula::Next(b.clone(), Box::new(f(g))),
            Formula::And(l, r) => {
                let l = f(l);
                Formula::And(Box::new(l), Box::new(f(r)))
            }
            Formula::Or(l, r) => {
                let l = f(l);
                Formula::Or(Box::new(l), Box::new(f(r)))
            }
            Formula::Mu(z, g) => Formula::Mu(z.clone(), Box::new(f(g))),
            Formula::Nu(z, g) => Formula::Nu(z.clone(), Box::new(f(g))),
        }
    }

    /// Subformula binding `var`, assuming bound variables are distinct.
    pub fn binder(&self, var: &str) -> Option<&Formula> {
        if let Some((_, z, body)) = self.as_binder() {
            if z == var {
                return Some(self);
            }
            return body.binder(var);
        }
        self.children().into_iter().find_map(|c| c.binder(var))
    }

    /// Whether `var` occurs free in the formula.
    pub fn mentions(&self, var: &str) -> bool {
        self.free_vars().contains(var)
    }

    /// Distinct subformulas in pre-order of first occurrence, the formula
    /// itself first. Requires renamed-apart bound variables so that equal
    /// subterms denote the same thing.
    pub fn closure(&self) -> Vec<Formula> {
        let mut seen: HashMap<&Formula, ()> = HashMap::new();
        let mut out = Vec::new();
        self.visit(&mut |g| {
            if seen.insert(g, ()).is_none() {
                out.push(g.clone());
            }
        });
        out
    }
}

fn rename_walk(
    f: &Formula,
    scope: &mut Vec<(String, String)>,
    taken: &mut BTreeSet<String>,
    all_names: &BTreeSet<String>,
) -> Formula {
    match f {
        Formula::Var(z) => {
            let renamed = scope.iter().rev().find(|(from, _)| from == z).map(|(_, to)| to.clone());
            Formula::Var(renamed.unwrap_or_else(|| z.clone()))
        }
        Formula::Mu(z, g) | Formula::Nu(z, g) => {
            let fresh = if taken.contains(z) {
                (1..)
                    .map(|k| format!("{z}_{k}"))
                    .find(|c| !taken.contains(c) && !all_names.contains(c))
                    .expect("infinitely many candidates")
            } else {
                z.clone()
            };
            taken.insert(fresh.clone());
            scope.push((z.clone(), fresh.clone()));
            let body = rename_walk(g, scope, taken, all_names);
            scope.pop();
            match f {
                Formula::Mu(..) => Formula::Mu(fresh, Box::new(body)),
                _ => Formula::Nu(fresh, Box::new(body)),
            }
        }
        _ => f.map_children(|c| rename_walk(c, scope, taken, all_names)),
    }
}

/// Formulas of PCTL. `F` and `G` are expanded while parsing.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum PctlFormula {
    True,
    False,
    Atom(String),
    NegAtom(String),
    Next(Bound, Box<PctlFormula>),
    And(Box<PctlFormula>, Box<PctlFormula>),
    Or(Box<PctlFormula>, Box<PctlFormula>),
    Until(Box<PctlFormula>, Bound, Box<PctlFormula>),
    Release(Box<PctlFormula>, Bound, Box<PctlFormula>),
}

impl PctlFormula {
    pub fn atom(name: &str) -> Self {
        PctlFormula::Atom(name.to_string())
    }

    pub fn neg_atom(name: &str) -> Self {
        PctlFormula::NegAtom(name.to_string())
    }

    pub fn next(bound: Bound, g: PctlFormula) -> Self {
        PctlFormula::Next(bound, Box::new(g))
    }

    pub fn and(l: PctlFormula, r: PctlFormula) -> Self {
        PctlFormula::And(Box::new(l), Box::new(r))
    }

    pub fn or(l: PctlFormula, r: PctlFormula) -> Self {
        PctlFormula::Or(Box::new(l), Box::new(r))
    }

    pub fn until(l: PctlFormula, bound: Bound, r: PctlFormula) -> Self {
        PctlFormula::Until(Box::new(l), bound, Box::new(r))
    }

    pub fn release(l: PctlFormula, bound: Bound, r: PctlFormula) -> Self {
        PctlFormula::Release(Box::new(l), bound, Box::new(r))
    }

    /// `F~p g`, i.e. `true U~p g`.
    pub fn eventually(bound: Bound, g: PctlFormula) -> Self {
        Self::until(PctlFormula::True, bound, g)
    }

    /// `G~p g`, i.e. `false R~p g`.
    pub fn globally(bound: Bound, g: PctlFormula) -> Self {
        Self::release(PctlFormula::False, bound, g)
    }

    pub fn bounds(&self) -> Vec<&Bound> {
        let mut out = Vec::new();
        fn walk<'a>(g: &'a PctlFormula, out: &mut Vec<&'a Bound>) {
            match g {
                PctlFormula::Next(b, h) => {
                    out.push(b);
                    walk(h, out);
                }
                PctlFormula::Until(l, b, r) | PctlFormula::Release(l, b, r) => {
                    out.push(b);
                    walk(l, out);
                    walk(r, out);
                }
                PctlFormula::And(l, r) | PctlFormula::Or(l, r) => {
                    walk(l, out);
                    walk(r, out);
                }
                _ => {}
            }
        }
        walk(self, &mut out);
        out
    }
}
