//! Feasibility of linear systems with strict and non-strict inequalities by
//! Fourier-Motzkin elimination over the rationals.

use std::collections::HashMap;

use num_traits::{One, Signed, Zero};

use crate::prob::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Relation {
    Ge,
    Gt,
    Le,
    Lt,
    Eq,
}

impl Relation {
    pub fn holds(self, lhs: &Rational, rhs: &Rational) -> bool {
        match self {
            Relation::Ge => lhs >= rhs,
            Relation::Gt => lhs > rhs,
            Relation::Le => lhs <= rhs,
            Relation::Lt => lhs < rhs,
            Relation::Eq => lhs == rhs,
        }
    }
}

/// `sum_i coeffs[i] * x_i  rel  rhs`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Constraint {
    pub coeffs: Vec<Rational>,
    pub rel: Relation,
    pub rhs: Rational,
}

impl Constraint {
    pub fn new(coeffs: Vec<Rational>, rel: Relation, rhs: Rational) -> Self {
        Constraint { coeffs, rel, rhs }
    }

    pub fn satisfied_by(&self, x: &[Rational]) -> bool {
        let lhs = self.coeffs.iter().zip(x).fold(Rational::zero(), |acc, (a, v)| acc + a * v);
        self.rel.holds(&lhs, &self.rhs)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LinearSystem {
    pub num_vars: usize,
    pub constraints: Vec<Constraint>,
}

impl LinearSystem {
    pub fn new(num_vars: usize) -> Self {
        LinearSystem { num_vars, constraints: Vec::new() }
    }

    /// Adds `sum_i terms[i].1 * x_{terms[i].0}  rel  rhs`.
    pub fn add(&mut self, terms: &[(usize, Rational)], rel: Relation, rhs: Rational) {
        let mut coeffs = vec![Rational::zero(); self.num_vars];
        for (i, a) in terms {
            coeffs[*i] += a;
        }
        self.constraints.push(Constraint::new(coeffs, rel, rhs));
    }

    pub fn satisfied_by(&self, x: &[Rational]) -> bool {
        x.len() == self.num_vars && self.constraints.iter().all(|c| c.satisfied_by(x))
    }
}

/// `coeffs . x < rhs` (strict) or `<= rhs`.
#[derive(Debug, Clone, PartialEq, Eq)]
struct Upper {
    coeffs: Vec<Rational>,
    rhs: Rational,
    strict: bool,
}

fn normalize(sys: &LinearSystem) -> Vec<Upper> {
    let mut out = Vec::new();
    for c in &sys.constraints {
        let neg = || Upper {
            coeffs: c.coeffs.iter().map(|a| -a).collect(),
            rhs: -&c.rhs,
            strict: c.rel == Relation::Gt,
        };
        let pos = || Upper { coeffs: c.coeffs.clone(), rhs: c.rhs.clone(), strict: c.rel == Relation::Lt };
        match c.rel {
            Relation::Le | Relation::Lt => out.push(pos()),
            Relation::Ge | Relation::Gt => out.push(neg()),
            Relation::Eq => {
                out.push(pos());
                out.push(neg());
            }
        }
    }
    out
}

/// Scales so that the first nonzero coefficient has absolute value one and
/// keeps only the tightest constraint per direction.
fn dedup(rows: Vec<Upper>) -> Vec<Upper> {
    let mut best: HashMap<Vec<Rational>, (Rational, bool)> = HashMap::new();
    let mut order = Vec::new();
    for row in rows {
        let Some(lead) = row.coeffs.iter().find(|a| !a.is_zero()).map(Rational::abs) else {
            // constant row; keep as is under the empty key
            let entry = best.entry(row.coeffs.clone());
            tighten(entry, &mut order, row.rhs, row.strict);
            continue;
        };
        let coeffs: Vec<Rational> = row.coeffs.iter().map(|a| a / &lead).collect();
        let rhs = row.rhs / &lead;
        let entry = best.entry(coeffs);
        tighten(entry, &mut order, rhs, row.strict);
    }
    order
        .into_iter()
        .map(|coeffs| {
            let (rhs, strict) = best[&coeffs].clone();
            Upper { coeffs, rhs, strict }
        })
        .collect()
}

fn tighten(
    entry: std::collections::hash_map::Entry<'_, Vec<Rational>, (Rational, bool)>,
    order: &mut Vec<Vec<Rational>>,
    rhs: Rational,
    strict: bool,
) {
    use std::collections::hash_map::Entry;
    match entry {
        Entry::Vacant(v) => {
            order.push(v.key().clone());
            v.insert((rhs, strict));
        }
        Entry::Occupied(mut o) => {
            let (cur, cur_strict) = o.get_mut();
            if rhs < *cur {
                *cur = rhs;
                *cur_strict = strict;
            } else if rhs == *cur && strict {
                *cur_strict = true;
            }
        }
    }
}

/// Eliminates variable `j`, combining every lower bound with every upper bound.
fn eliminate(rows: &[Upper], j: usize) -> Vec<Upper> {
    let (mut lower, mut upper, mut out) = (Vec::new(), Vec::new(), Vec::new());
    for r in rows {
        if r.coeffs[j].is_positive() {
            upper.push(r);
        } else if r.coeffs[j].is_negative() {
            lower.push(r);
        } else {
            out.push(r.clone());
        }
    }
    for l in &lower {
        for u in &upper {
            // u.coeffs[j] * l + (-l.coeffs[j]) * u cancels x_j
            let (a, b) = (&u.coeffs[j], -&l.coeffs[j]);
            let mut coeffs: Vec<Rational> =
                l.coeffs.iter().zip(&u.coeffs).map(|(lc, uc)| a * lc + &b * uc).collect();
            coeffs[j] = Rational::zero();
            out.push(Upper { coeffs, rhs: a * &l.rhs + &b * &u.rhs, strict: l.strict || u.strict });
        }
    }
    dedup(out)
}

fn constant_row_holds(r: &Upper) -> bool {
    if r.strict {
        r.rhs.is_positive()
    } else {
        !r.rhs.is_negative()
    }
}

/// Decides feasibility exactly. A feasible system yields a rational witness
/// that satisfies every constraint.
pub fn lp_feasible(sys: &LinearSystem) -> Option<Vec<Rational>> {
    let n = sys.num_vars;
    // stages[j] mentions only x_0..x_j (before eliminating x_j)
    let mut stages: Vec<Vec<Upper>> = vec![Vec::new(); n];
    let mut rows = dedup(normalize(sys));
    for j in (0..n).rev() {
        stages[j] = rows.clone();
        rows = eliminate(&rows, j);
    }
    if !rows.iter().all(constant_row_holds) {
        return None;
    }
    let mut x: Vec<Rational> = Vec::with_capacity(n);
    for (j, stage) in stages.iter().enumerate() {
        // the projection is exact, so [lo, hi] is nonempty and its midpoint
        // also satisfies the strict bounds
        let mut lo: Option<Rational> = None;
        let mut hi: Option<Rational> = None;
        for r in stage {
            let a = &r.coeffs[j];
            if a.is_zero() {
                continue;
            }
            let rest = r.coeffs[..j].iter().zip(&x).fold(Rational::zero(), |acc, (c, v)| acc + c * v);
            let bound = (&r.rhs - rest) / a;
            if a.is_positive() {
                if hi.as_ref().is_none_or(|h| bound < *h) {
                    hi = Some(bound);
                }
            } else if lo.as_ref().is_none_or(|l| bound > *l) {
                lo = Some(bound);
            }
        }
        let v = match (lo, hi) {
            (Some(l), Some(h)) => (l + h) / Rational::from_integer(2.into()),
            (Some(l), None) => l + Rational::one(),
            (None, Some(h)) => h - Rational::one(),
            (None, None) => Rational::zero(),
        };
        x.push(v);
    }
    debug_assert!(sys.satisfied_by(&x));
    sys.satisfied_by(&x).then_some(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::prob::{int, rat};

    fn sys(n: usize, rows: &[(&[i64], Relation, Rational)]) -> LinearSystem {
        let mut s = LinearSystem::new(n);
        for (coeffs, rel, rhs) in rows {
            let terms: Vec<(usize, Rational)> = coeffs.iter().enumerate().map(|(i, &a)| (i, int(a))).collect();
            s.add(&terms, *rel, rhs.clone());
        }
        s
    }

    #[test]
    fn open_interval_midpoint() {
        let s = sys(1, &[(&[1], Relation::Gt, int(0)), (&[1], Relation::Lt, int(1))]);
        assert_eq!(lp_feasible(&s), Some(vec![rat(1, 2)]));
    }

    #[test]
    fn empty_half_open() {
        let s = sys(1, &[(&[1], Relation::Ge, int(1)), (&[1], Relation::Lt, int(1))]);
        assert_eq!(lp_feasible(&s), None);
    }

    #[test]
    fn degenerate_point() {
        let s = sys(1, &[(&[1], Relation::Ge, int(1)), (&[1], Relation::Le, int(1))]);
        assert_eq!(lp_feasible(&s), Some(vec![int(1)]));
        let s = sys(2, &[(&[1, 1], Relation::Eq, int(1)), (&[1, -1], Relation::Eq, int(0))]);
        assert_eq!(lp_feasible(&s), Some(vec![rat(1, 2), rat(1, 2)]));
    }

    #[test]
    fn two_halves_exceed_one() {
        let s = sys(
            2,
            &[
                (&[1, 0], Relation::Gt, rat(1, 2)),
                (&[0, 1], Relation::Gt, rat(1, 2)),
                (&[1, 1], Relation::Le, int(1)),
            ],
        );
        assert_eq!(lp_feasible(&s), None);
        let s = sys(
            2,
            &[
                (&[1, 0], Relation::Ge, rat(1, 2)),
                (&[0, 1], Relation::Ge, rat(1, 2)),
                (&[1, 1], Relation::Le, int(1)),
            ],
        );
        assert_eq!(lp_feasible(&s), Some(vec![rat(1, 2), rat(1, 2)]));
    }

    #[test]
    fn unconstrained_and_one_sided() {
        let s = sys(2, &[(&[0, 1], Relation::Gt, int(3))]);
        assert_eq!(lp_feasible(&s), Some(vec![int(0), int(4)]));
        assert_eq!(lp_feasible(&LinearSystem::new(0)), Some(vec![]));
        let s = sys(0, &[(&[], Relation::Lt, int(0))]);
        assert_eq!(lp_feasible(&s), None);
    }
}
