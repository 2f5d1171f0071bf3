//! Guardedness: every occurrence of a bound variable sits under a next
//! operator inside its own binder.

use super::Formula;
use crate::prob::Rational;
use num_traits::{One, Zero};

pub fn is_guarded(f: &Formula) -> bool {
    fn walk(f: &Formula, open: &mut Vec<String>) -> bool {
        match f {
            Formula::Var(z) => !open.contains(z),
            Formula::Next(_, g) => walk(g, &mut Vec::new()),
            Formula::Mu(z, g) | Formula::Nu(z, g) => {
                open.push(z.clone());
                let ok = walk(g, open);
                open.pop();
                ok
            }
            _ => f.children().into_iter().all(|c| walk(c, open)),
        }
    }
    walk(f, &mut Vec::new())
}

/// Produces an equivalent guarded formula.
///
/// Binders are processed innermost first. Inside `mu Z.g` every occurrence
/// of `Z` not under a next operator becomes `false` (`true` for `nu`), and
/// the result is constant-folded. Closed input gives closed output.
pub fn guard(f: &Formula) -> Formula {
    let mut out = guard_rec(f);
    // one pass suffices; the loop is a backstop
    while !is_guarded(&out) {
        out = guard_rec(&out);
    }
    out
}

fn guard_rec(f: &Formula) -> Formula {
    match f {
        Formula::Mu(z, body) | Formula::Nu(z, body) => {
            let least = matches!(f, Formula::Mu(..));
            let inner = guard_rec(body);
            let constant = if least { Formula::False } else { Formula::True };
            let replaced = fold(&replace_unguarded(&inner, z, &constant));
            if !replaced.mentions(z) {
                replaced
            } else if least {
                Formula::Mu(z.clone(), Box::new(replaced))
            } else {
                Formula::Nu(z.clone(), Box::new(replaced))
            }
        }
        _ => fold_node(f.map_children(guard_rec)),
    }
}

fn replace_unguarded(f: &Formula, var: &str, constant: &Formula) -> Formula {
    match f {
        Formula::Var(z) if z == var => constant.clone(),
        Formula::Next(..) => f.clone(),
        Formula::Mu(z, _) | Formula::Nu(z, _) if z == var => f.clone(),
        _ => fold_node(f.map_children(|c| replace_unguarded(c, var, constant))),
    }
}

/// Bottom-up constant folding.
pub(crate) fn fold(f: &Formula) -> Formula {
    fold_node(f.map_children(fold))
}

/// Folds one node whose children are already folded.
fn fold_node(f: Formula) -> Formula {
    match f {
        Formula::And(l, r) => match (*l, *r) {
            (Formula::False, _) | (_, Formula::False) => Formula::False,
            (Formula::True, g) | (g, Formula::True) => g,
            (l, r) => Formula::And(Box::new(l), Box::new(r)),
        },
        Formula::Or(l, r) => match (*l, *r) {
            (Formula::True, _) | (_, Formula::True) => Formula::True,
            (Formula::False, g) | (g, Formula::False) => g,
            (l, r) => Formula::Or(Box::new(l), Box::new(r)),
        },
        Formula::Next(b, _) if b.is_trivially_true() => Formula::True,
        Formula::Next(b, _) if b.is_trivially_false() => Formula::False,
        Formula::Next(b, g) => match *g {
            // mass on true is 1, on false is 0
            Formula::True => constant(b.admits(&Rational::one())),
            Formula::False => constant(b.admits(&Rational::zero())),
            g => Formula::Next(b, Box::new(g)),
        },
        Formula::Mu(z, g) | Formula::Nu(z, g) if !g.mentions(&z) => *g,
        other => other,
    }
}

fn constant(b: bool) -> Formula {
    if b {
        Formula::True
    } else {
        Formula::False
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_pmutl;

    fn p(s: &str) -> Formula {
        parse_pmutl(s).unwrap()
    }

    #[test]
    fn guardedness_examples() {
        assert!(is_guarded(&p("nu Z.(a & X[>=0.8] Z)")));
        assert!(!is_guarded(&p("nu Z.(a & Z)")));
        assert!(!is_guarded(&p("mu Z1.nu Z2.(Z1 & X[>0] Z2)")));
        assert!(is_guarded(&p("mu Z1.nu Z2.(X[>0] Z1 & X[>0] Z2)")));
    }

    #[test]
    fn guard_examples() {
        assert_eq!(guard(&p("nu Z.(a & Z)")), p("a"));
        assert_eq!(guard(&p("mu Z.Z")), Formula::False);
        assert_eq!(guard(&p("nu Z.Z")), Formula::True);
        let g = p("nu Z.(a & X[>=0.8] Z)");
        assert_eq!(guard(&g), g);
        assert_eq!(guard(&p("mu Z.(Z | X[>0] Z)")), p("mu Z.(X[>0] Z)"));
        assert_eq!(guard(&p("X[>=0] b & c")), p("c"));
        assert_eq!(guard(&p("X[>1] b | c")), p("c"));
    }

    #[test]
    fn nested_unguarded() {
        let f = p("mu Z1.nu Z2.(Z1 & X[>0] Z2)");
        let g = guard(&f);
        assert!(is_guarded(&g));
        assert_eq!(g, Formula::False);
    }
}
