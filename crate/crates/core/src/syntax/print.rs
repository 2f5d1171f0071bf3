use std::fmt;

use super::{Formula, PctlFormula};

// Precedence levels: disjunction < conjunction < unary.
const DISJ: u8 = 0;
const CONJ: u8 = 1;
const UNARY: u8 = 2;

fn write_formula(f: &Formula, level: u8, out: &mut fmt::Formatter<'_>) -> fmt::Result {
    match f {
        Formula::True => out.write_str("true"),
        Formula::False => out.write_str("false"),
        Formula::Atom(a) => out.write_str(a),
        Formula::NegAtom(a) => write!(out, "!{a}"),
        Formula::Var(z) => out.write_str(z),
        Formula::Next(b, g) => {
            write!(out, "X{b} ")?;
            write_formula(g, UNARY, out)
        }
        Formula::Mu(z, g) | Formula::Nu(z, g) => {
            let kw = if matches!(f, Formula::Mu(..)) { "mu" } else { "nu" };
            write!(out, "{kw} {z}.(")?;
            write_formula(g, DISJ, out)?;
            out.write_str(")")
        }
        Formula::And(l, r) => paren(level > CONJ, out, |out| {
            write_formula(l, CONJ, out)?;
            out.write_str(" & ")?;
            write_formula(r, UNARY, out)
        }),
        Formula::Or(l, r) => paren(level > DISJ, out, |out| {
            write_formula(l, DISJ, out)?;
            out.write_str(" | ")?;
            write_formula(r, CONJ, out)
        }),
    }
}

fn paren(
    wrap: bool,
    out: &mut fmt::Formatter<'_>,
    body: impl FnOnce(&mut fmt::Formatter<'_>) -> fmt::Result,
) -> fmt::Result {
    if wrap {
        out.write_str("(")?;
        body(out)?;
        out.write_str(")")
    } else {
        body(out)
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_formula(self, DISJ, f)
    }
}

fn write_pctl(g: &PctlFormula, level: u8, out: &mut fmt::Formatter<'_>) -> fmt::Result {
    match g {
        PctlFormula::True => out.write_str("true"),
        PctlFormula::False => out.write_str("false"),
        PctlFormula::Atom(a) => out.write_str(a),
        PctlFormula::NegAtom(a) => write!(out, "!{a}"),
        PctlFormula::Next(b, h) => {
            write!(out, "X{b} ")?;
            write_pctl(h, UNARY, out)
        }
        PctlFormula::Until(l, b, r) if **l == PctlFormula::True => {
            write!(out, "F{b} ")?;
            write_pctl(r, UNARY, out)
        }
        PctlFormula::Release(l, b, r) if **l == PctlFormula::False => {
            write!(out, "G{b} ")?;
            write_pctl(r, UNARY, out)
        }
        PctlFormula::Until(l, b, r) | PctlFormula::Release(l, b, r) => {
            let op = if matches!(g, PctlFormula::Until(..)) { "U" } else { "R" };
            out.write_str("(")?;
            write_pctl(l, DISJ, out)?;
            write!(out, " {op}{b} ")?;
            write_pctl(r, DISJ, out)?;
            out.write_str(")")
        }
        PctlFormula::And(l, r) => paren(level > CONJ, out, |out| {
            write_pctl(l, CONJ, out)?;
            out.write_str(" & ")?;
            write_pctl(r, UNARY, out)
        }),
        PctlFormula::Or(l, r) => paren(level > DISJ, out, |out| {
            write_pctl(l, DISJ, out)?;
            out.write_str(" | ")?;
            write_pctl(r, CONJ, out)
        }),
    }
}

impl fmt::Display for PctlFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_pctl(self, DISJ, f)
    }
}
