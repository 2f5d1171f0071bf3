//! Recursive-descent parser for the ASCII formula syntax.
//!
//! ```text
//! f     := disj
//! disj  := conj {"|" conj}
//! conj  := unary {"&" unary}
//! unary := "true" | "false" | atom | "!" atom | VAR
//!        | "X[" cmp prob "]" unary
//!        | ("mu"|"nu") VAR "." body
//!        | "(" disj ")"
//! body  := "(" disj ")" | disj
//! ```
//!
//! A binder body that opens with a parenthesis ends at the matching
//! parenthesis; otherwise it extends as far to the right as possible.
//! PCTL adds `f ("U"|"R") "[" cmp prob "]" f` at the top level and inside
//! parentheses, plus `("F"|"G") "[" cmp prob "]" unary`.

use thiserror::Error;

use super::{Formula, PctlFormula};
use crate::prob::{parse_rational, Bound, Comparison, Probability};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{line}:{column}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("{0}")]
    Syntax(String),
    #[error("probability {0} is outside [0,1]")]
    ProbabilityOutOfRange(String),
    #[error("variable {0} is not bound")]
    FreeVariable(String),
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Number(String),
    LParen,
    RParen,
    LBracket,
    RBracket,
    Dot,
    And,
    Or,
    Bang,
    Geq,
    Gt,
    Eof,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) | Tok::Number(s) => format!("`{s}`"),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::LBracket => "`[`".into(),
            Tok::RBracket => "`]`".into(),
            Tok::Dot => "`.`".into(),
            Tok::And => "`&`".into(),
            Tok::Or => "`|`".into(),
            Tok::Bang => "`!`".into(),
            Tok::Geq => "`>=`".into(),
            Tok::Gt => "`>`".into(),
            Tok::Eof => "end of input".into(),
        }
    }
}

#[derive(Debug, Clone)]
struct Spanned {
    tok: Tok,
    line: usize,
    column: usize,
}

fn lex(text: &str) -> Result<Vec<Spanned>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut column) = (0, 1, 1);
    while i < chars.len() {
        let c = chars[i];
        let (l, col) = (line, column);
        let mut push = |tok, len: usize, i: &mut usize, column: &mut usize| {
            out.push(Spanned { tok, line: l, column: col });
            *i += len;
            *column += len;
        };
        match c {
            '\n' => {
                i += 1;
                line += 1;
                column = 1;
            }
            c if c.is_whitespace() => {
                i += 1;
                column += 1;
            }
            '(' => push(Tok::LParen, 1, &mut i, &mut column),
            ')' => push(Tok::RParen, 1, &mut i, &mut column),
            '[' => push(Tok::LBracket, 1, &mut i, &mut column),
            ']' => push(Tok::RBracket, 1, &mut i, &mut column),
            '&' => push(Tok::And, 1, &mut i, &mut column),
            '|' => push(Tok::Or, 1, &mut i, &mut column),
            '!' => push(Tok::Bang, 1, &mut i, &mut column),
            '>' if chars.get(i + 1) == Some(&'=') => push(Tok::Geq, 2, &mut i, &mut column),
            '>' => push(Tok::Gt, 1, &mut i, &mut column),
            '.' if !chars.get(i + 1).is_some_and(|d| d.is_ascii_digit()) => {
                push(Tok::Dot, 1, &mut i, &mut column)
            }
            c if c.is_ascii_digit() || c == '.' => {
                let start = i;
                let mut j = i;
                while j < chars.len() && (chars[j].is_ascii_digit() || chars[j] == '.' || chars[j] == '/') {
                    j += 1;
                }
                let s: String = chars[start..j].iter().collect();
                push(Tok::Number(s), j - start, &mut i, &mut column);
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let start = i;
                let mut j = i;
                while j < chars.len()
                    && (chars[j].is_ascii_alphanumeric() || chars[j] == '_' || chars[j] == '\'')
                {
                    j += 1;
                }
                let s: String = chars[start..j].iter().collect();
                push(Tok::Ident(s), j - start, &mut i, &mut column);
            }
            other => {
                return Err(ParseError {
                    line,
                    column,
                    kind: ParseErrorKind::Syntax(format!("unexpected character `{other}`")),
                })
            }
        }
    }
    out.push(Spanned { tok: Tok::Eof, line, column });
    Ok(out)
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
    scope: Vec<String>,
    free: Vec<(String, usize, usize)>,
}

fn is_var_name(s: &str) -> bool {
    s.starts_with(|c: char| c.is_ascii_uppercase())
}

fn is_atom_name(s: &str) -> bool {
    s.starts_with(|c: char| c.is_ascii_lowercase()) && !matches!(s, "true" | "false" | "mu" | "nu")
}

impl Parser {
    fn new(text: &str) -> Result<Self, ParseError> {
        Ok(Parser { toks: lex(text)?, pos: 0, scope: Vec::new(), free: Vec::new() })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn peek_at(&self, k: usize) -> &Tok {
        let i = (self.pos + k).min(self.toks.len() - 1);
        &self.toks[i].tok
    }

    fn bump(&mut self) -> Spanned {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error_here(&self, msg: impl Into<String>) -> ParseError {
        let t = &self.toks[self.pos];
        ParseError { line: t.line, column: t.column, kind: ParseErrorKind::Syntax(msg.into()) }
    }

    fn unexpected(&self, wanted: &str) -> ParseError {
        self.error_here(format!("expected {wanted}, found {}", self.peek().describe()))
    }

    fn expect(&mut self, tok: Tok) -> Result<(), ParseError> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            Err(self.unexpected(&tok.describe()))
        }
    }

    fn expect_eof(&self) -> Result<(), ParseError> {
        if *self.peek() == Tok::Eof {
            Ok(())
        } else {
            Err(self.unexpected("end of input"))
        }
    }

    /// Identifier followed by `[`: an operator keyword like `X[`.
    fn at_operator(&self, name: &str) -> bool {
        matches!(self.peek(), Tok::Ident(s) if s == name) && *self.peek_at(1) == Tok::LBracket
    }

    fn bound(&mut self) -> Result<Bound, ParseError> {
        self.expect(Tok::LBracket)?;
        let cmp = match self.peek() {
            Tok::Geq => Comparison::Geq,
            Tok::Gt => Comparison::Gt,
            _ => return Err(self.unexpected("`>=` or `>`")),
        };
        self.bump();
        let t = self.bump();
        let Tok::Number(text) = &t.tok else {
            self.pos -= 1;
            return Err(self.unexpected("a probability"));
        };
        let value = parse_rational(text).ok_or_else(|| ParseError {
            line: t.line,
            column: t.column,
            kind: ParseErrorKind::Syntax(format!("malformed number `{text}`")),
        })?;
        let prob = Probability::new(value).ok_or_else(|| ParseError {
            line: t.line,
            column: t.column,
            kind: ParseErrorKind::ProbabilityOutOfRange(text.clone()),
        })?;
        self.expect(Tok::RBracket)?;
        Ok(Bound::new(cmp, prob))
    }

    fn atom_after_bang(&mut self) -> Result<String, ParseError> {
        match self.peek().clone() {
            Tok::Ident(s) if is_atom_name(&s) => {
                self.bump();
                Ok(s)
            }
            _ => Err(self.unexpected("an atomic proposition after `!`")),
        }
    }

    // ---- mu-calculus ----

    fn mu_disj(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.mu_conj()?;
        while *self.peek() == Tok::Or {
            self.bump();
            lhs = Formula::or(lhs, self.mu_conj()?);
        }
        Ok(lhs)
    }

    fn mu_conj(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.mu_unary()?;
        while *self.peek() == Tok::And {
            self.bump();
            lhs = Formula::and(lhs, self.mu_unary()?);
        }
        Ok(lhs)
    }

    fn mu_unary(&mut self) -> Result<Formula, ParseError> {
        if self.at_operator("X") {
            self.bump();
            let b = self.bound()?;
            return Ok(Formula::next(b, self.mu_unary()?));
        }
        for op in ["F", "G", "U", "R"] {
            if self.at_operator(op) {
                return Err(self.error_here(format!("`{op}` is a PCTL operator")));
            }
        }
        let t = self.toks[self.pos].clone();
        match &t.tok {
            Tok::LParen => {
                self.bump();
                let f = self.mu_disj()?;
                self.expect(Tok::RParen)?;
                Ok(f)
            }
            Tok::Bang => {
                self.bump();
                Ok(Formula::NegAtom(self.atom_after_bang()?))
            }
            Tok::Ident(s) if s == "true" => {
                self.bump();
                Ok(Formula::True)
            }
            Tok::Ident(s) if s == "false" => {
                self.bump();
                Ok(Formula::False)
            }
            Tok::Ident(s) if s == "mu" || s == "nu" => {
                self.bump();
                let var = match self.peek().clone() {
                    Tok::Ident(z) if is_var_name(&z) => {
                        self.bump();
                        z
                    }
                    _ => return Err(self.unexpected("a variable (uppercase identifier)")),
                };
                self.expect(Tok::Dot)?;
                self.scope.push(var.clone());
                let body = if *self.peek() == Tok::LParen {
                    self.bump();
                    let b = self.mu_disj()?;
                    self.expect(Tok::RParen)?;
                    b
                } else {
                    self.mu_disj()?
                };
                self.scope.pop();
                Ok(if s == "mu" { Formula::mu(&var, body) } else { Formula::nu(&var, body) })
            }
            Tok::Ident(s) if is_var_name(s) => {
                self.bump();
                if !self.scope.contains(s) {
                    self.free.push((s.clone(), t.line, t.column));
                }
                Ok(Formula::Var(s.clone()))
            }
            Tok::Ident(s) if is_atom_name(s) => {
                self.bump();
                Ok(Formula::Atom(s.clone()))
            }
            _ => Err(self.unexpected("a formula")),
        }
    }

    // ---- PCTL ----

    fn pctl_top(&mut self) -> Result<PctlFormula, ParseError> {
        let lhs = self.pctl_disj()?;
        for (op, until) in [("U", true), ("R", false)] {
            if self.at_operator(op) {
                self.bump();
                let b = self.bound()?;
                let rhs = self.pctl_disj()?;
                return Ok(if until {
                    PctlFormula::until(lhs, b, rhs)
                } else {
                    PctlFormula::release(lhs, b, rhs)
                });
            }
        }
        Ok(lhs)
    }

    fn pctl_disj(&mut self) -> Result<PctlFormula, ParseError> {
        let mut lhs = self.pctl_conj()?;
        while *self.peek() == Tok::Or {
            self.bump();
            lhs = PctlFormula::or(lhs, self.pctl_conj()?);
        }
        Ok(lhs)
    }

    fn pctl_conj(&mut self) -> Result<PctlFormula, ParseError> {
        let mut lhs = self.pctl_unary()?;
        while *self.peek() == Tok::And {
            self.bump();
            lhs = PctlFormula::and(lhs, self.pctl_unary()?);
        }
        Ok(lhs)
    }

    fn pctl_unary(&mut self) -> Result<PctlFormula, ParseError> {
        if self.at_operator("X") {
            self.bump();
            let b = self.bound()?;
            return Ok(PctlFormula::next(b, self.pctl_unary()?));
        }
        if self.at_operator("F") {
            self.bump();
            let b = self.bound()?;
            return Ok(PctlFormula::eventually(b, self.pctl_unary()?));
        }
        if self.at_operator("G") {
            self.bump();
            let b = self.bound()?;
            return Ok(PctlFormula::globally(b, self.pctl_unary()?));
        }
        match self.peek().clone() {
            Tok::LParen => {
                self.bump();
                let f = self.pctl_top()?;
                self.expect(Tok::RParen)?;
                Ok(f)
            }
            Tok::Bang => {
                self.bump();
                Ok(PctlFormula::NegAtom(self.atom_after_bang()?))
            }
            Tok::Ident(s) if s == "true" => {
                self.bump();
                Ok(PctlFormula::True)
            }
            Tok::Ident(s) if s == "false" => {
                self.bump();
                Ok(PctlFormula::False)
            }
            Tok::Ident(s) if s == "mu" || s == "nu" => {
                Err(self.error_here("fixpoint operators are not PCTL"))
            }
            Tok::Ident(s) if is_atom_name(&s) => {
                self.bump();
                Ok(PctlFormula::Atom(s))
            }
            Tok::Ident(s) if is_var_name(&s) => {
                Err(self.error_here(format!("unexpected variable `{s}` in a PCTL formula")))
            }
            _ => Err(self.unexpected("a formula")),
        }
    }
}

/// Parses a mu-calculus formula; free variables are allowed. Bound
/// variables are renamed apart.
pub fn parse_pmutl(text: &str) -> Result<Formula, ParseError> {
    let mut p = Parser::new(text)?;
    let f = p.mu_disj()?;
    p.expect_eof()?;
    Ok(f.rename_apart())
}

/// Like [`parse_pmutl`] but rejects formulas with free variables.
pub fn parse_closed_pmutl(text: &str) -> Result<Formula, ParseError> {
    let mut p = Parser::new(text)?;
    let f = p.mu_disj()?;
    p.expect_eof()?;
    if let Some((z, line, column)) = p.free.first() {
        return Err(ParseError { line: *line, column: *column, kind: ParseErrorKind::FreeVariable(z.clone()) });
    }
    Ok(f.rename_apart())
}

pub fn parse_pctl(text: &str) -> Result<PctlFormula, ParseError> {
    let mut p = Parser::new(text)?;
    let f = p.pctl_top()?;
    p.expect_eof()?;
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::prob::Bound;

    #[test]
    fn intro_formula() {
        let f = parse_pmutl("nu Z.(a & X[>=0.8] Z)").unwrap();
        assert_eq!(
            f,
            Formula::nu("Z", Formula::and(Formula::atom("a"), Formula::next(Bound::geq(4, 5), Formula::var("Z"))))
        );
        assert_eq!(parse_pmutl("true").unwrap(), Formula::True);
    }

    #[test]
    fn until_like_fixpoint() {
        let f = parse_pmutl("mu Z.(b | (a & X[>=1] Z))").unwrap();
        let expect = Formula::mu(
            "Z",
            Formula::or(
                Formula::atom("b"),
                Formula::and(Formula::atom("a"), Formula::next(Bound::geq(1, 1), Formula::var("Z"))),
            ),
        );
        assert_eq!(f, expect);
    }

    #[test]
    fn precedence_and_binder_extent() {
        let f = parse_pmutl("nu Z1.(a | (mu Z2.(a | X[>0] Z2)) & X[>=1] Z1)").unwrap();
        let g = parse_pmutl("nu Z1.(a | mu Z2.(a | X[>0] Z2) & X[>=1] Z1)").unwrap();
        let inner = Formula::mu("Z2", Formula::or(Formula::atom("a"), Formula::next(Bound::gt(0, 1), Formula::var("Z2"))));
        let expect = Formula::nu(
            "Z1",
            Formula::or(
                Formula::atom("a"),
                Formula::and(inner, Formula::next(Bound::geq(1, 1), Formula::var("Z1"))),
            ),
        );
        assert_eq!(f, expect);
        assert_eq!(g, expect);
        // an unparenthesised body runs to the end
        let h = parse_pmutl("mu Z. X[>=1] Z & a").unwrap();
        assert!(matches!(h, Formula::Mu(..)));
    }

    #[test]
    fn pctl_examples() {
        assert_eq!(
            parse_pctl("F[>=1] attacked").unwrap(),
            PctlFormula::until(PctlFormula::True, Bound::geq(1, 1), PctlFormula::atom("attacked"))
        );
        assert_eq!(
            parse_pctl("a U[>=0.9] b").unwrap(),
            PctlFormula::until(PctlFormula::atom("a"), Bound::geq(9, 10), PctlFormula::atom("b"))
        );
        assert_eq!(
            parse_pctl("G[>=0] x").unwrap(),
            PctlFormula::release(PctlFormula::False, Bound::geq(0, 1), PctlFormula::atom("x"))
        );
        assert_eq!(
            parse_pctl("(a U[>0] b) & X[>=1] (c R[>0] !d)").unwrap(),
            PctlFormula::and(
                PctlFormula::until(PctlFormula::atom("a"), Bound::gt(0, 1), PctlFormula::atom("b")),
                PctlFormula::next(
                    Bound::geq(1, 1),
                    PctlFormula::release(PctlFormula::atom("c"), Bound::gt(0, 1), PctlFormula::neg_atom("d"))
                )
            )
        );
    }

    #[test]
    fn errors_carry_positions() {
        let e = parse_pmutl("a &\n  X[>=1.5] b").unwrap_err();
        assert_eq!((e.line, e.column), (2, 7));
        assert!(matches!(e.kind, ParseErrorKind::ProbabilityOutOfRange(_)));

        let e = parse_closed_pmutl("mu Z.(a | X[>0] Y)").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::FreeVariable("Y".into()));
        assert_eq!(e.column, 17);

        assert!(parse_pmutl("a & ").is_err());
        assert!(parse_pmutl("!Z").is_err());
        assert!(parse_pmutl("a U[>0] b").is_err());
        assert!(parse_pctl("mu Z.Z").is_err());
        assert!(parse_pmutl("(a").is_err());
        assert!(parse_pmutl("a $ b").is_err());
    }

    #[test]
    fn fraction_literals() {
        let f = parse_pmutl("X[>6/8] a").unwrap();
        assert_eq!(f, Formula::next(Bound::gt(3, 4), Formula::atom("a")));
    }
}
