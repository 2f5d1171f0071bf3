//! Qualitative PCTL into the qualitative mu-calculus.

use thiserror::Error;

use super::{Formula, PctlFormula};
use crate::prob::{Bound, Comparison};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TranslateError {
    #[error("bound {bound} in `{operator}` is not qualitative (allowed: >0, >=1, >=0, >1)")]
    NotQualitative { operator: String, bound: String },
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Qual {
    Positive,
    Almost,
    Always,
    Never,
}

fn classify(b: &Bound) -> Option<Qual> {
    match (b.cmp, b.prob.is_zero(), b.prob.is_one()) {
        (Comparison::Gt, true, _) => Some(Qual::Positive),
        (Comparison::Geq, _, true) => Some(Qual::Almost),
        (Comparison::Geq, true, _) => Some(Qual::Always),
        (Comparison::Gt, _, true) => Some(Qual::Never),
        _ => None,
    }
}

struct Fresh(usize);

impl Fresh {
    fn next(&mut self) -> String {
        self.0 += 1;
        format!("Z{}", self.0)
    }
}

/// Translates a qualitative PCTL formula into an equivalent closed
/// mu-calculus formula (equivalent on finite chains). The output only uses
/// the bounds `>0` and `>=1`.
pub fn translate_qualitative(g: &PctlFormula) -> Result<Formula, TranslateError> {
    check_qualitative(g)?;
    Ok(tr(g, &mut Fresh(0)))
}

fn check_qualitative(g: &PctlFormula) -> Result<(), TranslateError> {
    let here = match g {
        PctlFormula::Next(b, _) | PctlFormula::Until(_, b, _) | PctlFormula::Release(_, b, _) => Some(b),
        _ => None,
    };
    if let Some(b) = here {
        if classify(b).is_none() {
            return Err(TranslateError::NotQualitative { operator: g.to_string(), bound: b.to_string() });
        }
    }
    match g {
        PctlFormula::Next(_, h) => check_qualitative(h),
        PctlFormula::And(l, r)
        | PctlFormula::Or(l, r)
        | PctlFormula::Until(l, _, r)
        | PctlFormula::Release(l, _, r) => {
            check_qualitative(l)?;
            check_qualitative(r)
        }
        _ => Ok(()),
    }
}

fn positive() -> Bound {
    Bound::gt(0, 1)
}

fn almost() -> Bound {
    Bound::geq(1, 1)
}

fn tr(g: &PctlFormula, fresh: &mut Fresh) -> Formula {
    let qual = |b: &Bound| classify(b).expect("checked qualitative");
    match g {
        PctlFormula::True => Formula::True,
        PctlFormula::False => Formula::False,
        PctlFormula::Atom(a) => Formula::Atom(a.clone()),
        PctlFormula::NegAtom(a) => Formula::NegAtom(a.clone()),
        PctlFormula::And(l, r) => Formula::and(tr(l, fresh), tr(r, fresh)),
        PctlFormula::Or(l, r) => Formula::or(tr(l, fresh), tr(r, fresh)),
        PctlFormula::Next(b, h) => match qual(b) {
            Qual::Always => Formula::True,
            Qual::Never => Formula::False,
            Qual::Positive => Formula::next(positive(), tr(h, fresh)),
            Qual::Almost => Formula::next(almost(), tr(h, fresh)),
        },
        PctlFormula::Until(l, b, r) => match qual(b) {
            Qual::Always => Formula::True,
            Qual::Never => Formula::False,
            Qual::Positive => {
                // mu Z.(r | (l & X>0 Z))
                let z = fresh.next();
                let (l, r) = (tr(l, fresh), tr(r, fresh));
                Formula::mu(&z, Formula::or(r, Formula::and(l, Formula::next(positive(), Formula::var(&z)))))
            }
            Qual::Almost => {
                // nu Z.(r | (l & mu Z'.(r | X>0 Z') & X>=1 Z))
                let z = fresh.next();
                let r1 = tr(r, fresh);
                let l = tr(l, fresh);
                let z2 = fresh.next();
                let r2 = tr(r, fresh);
                let reach = Formula::mu(&z2, Formula::or(r2, Formula::next(positive(), Formula::var(&z2))));
                Formula::nu(
                    &z,
                    Formula::or(
                        r1,
                        Formula::and(Formula::and(l, reach), Formula::next(almost(), Formula::var(&z))),
                    ),
                )
            }
        },
        PctlFormula::Release(l, b, r) => match qual(b) {
            Qual::Always => Formula::True,
            Qual::Never => Formula::False,
            Qual::Almost => {
                // nu Z.(r & (l | X>=1 Z))
                let z = fresh.next();
                let (l, r) = (tr(l, fresh), tr(r, fresh));
                Formula::nu(&z, Formula::and(r, Formula::or(l, Formula::next(almost(), Formula::var(&z)))))
            }
            Qual::Positive => {
                // mu Z.(r & (l | nu Z'.(r & X>=1 Z') | X>0 Z))
                let z = fresh.next();
                let r1 = tr(r, fresh);
                let l = tr(l, fresh);
                let z2 = fresh.next();
                let r2 = tr(r, fresh);
                let stay = Formula::nu(&z2, Formula::and(r2, Formula::next(almost(), Formula::var(&z2))));
                Formula::mu(
                    &z,
                    Formula::and(
                        r1,
                        Formula::or(Formula::or(l, stay), Formula::next(positive(), Formula::var(&z))),
                    ),
                )
            }
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{parse_pctl, parse_pmutl};

    fn t(s: &str) -> Formula {
        translate_qualitative(&parse_pctl(s).unwrap()).unwrap()
    }

    #[test]
    fn until_positive() {
        assert_eq!(t("a U[>0] b"), parse_pmutl("mu Z1.(b | (a & X[>0] Z1))").unwrap());
    }

    #[test]
    fn until_almost_sure() {
        assert_eq!(
            t("a U[>=1] b"),
            parse_pmutl("nu Z1.(b | (a & mu Z2.(b | X[>0] Z2) & X[>=1] Z1))").unwrap()
        );
    }

    #[test]
    fn trivial_bounds() {
        assert_eq!(t("X[>=0] a"), Formula::True);
        assert_eq!(t("X[>1] a"), Formula::False);
        assert_eq!(t("a U[>1] b"), Formula::False);
        assert_eq!(t("G[>=0] a"), Formula::True);
    }

    #[test]
    fn output_is_closed_and_qualitative() {
        let f = t("((a R[>0] b) U[>=1] (c R[>=1] !a)) | X[>0] F[>=1] a");
        assert!(f.is_closed());
        assert!(f.is_renamed_apart());
        for b in f.bounds() {
            assert!(*b == Bound::gt(0, 1) || *b == Bound::geq(1, 1));
        }
    }

    #[test]
    fn rejects_quantitative() {
        let err = translate_qualitative(&parse_pctl("a U[>=0.5] b").unwrap()).unwrap_err();
        let TranslateError::NotQualitative { bound, .. } = err;
        assert_eq!(bound, "[>=1/2]");
    }
}
