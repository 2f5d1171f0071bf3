//! Exact rationals, probability bounds and their textual forms.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Exact rational number. Every probability in the crate is one of these.
pub type Rational = BigRational;

pub fn rat(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `3/4`, `0.75`, `1`, `.5` exactly. Rejects signs and exponents.
pub fn parse_rational(text: &str) -> Option<Rational> {
    let text = text.trim();
    if text.is_empty() {
        return None;
    }
    if let Some((n, d)) = text.split_once('/') {
        let n = parse_nat(n)?;
        let d = parse_nat(d)?;
        if d.is_zero() {
            return None;
        }
        return Some(Rational::new(n, d));
    }
    let (whole, frac) = match text.split_once('.') {
        Some((w, f)) => (w, f),
        None => (text, ""),
    };
    if whole.is_empty() && frac.is_empty() {
        return None;
    }
    let whole = if whole.is_empty() { BigInt::zero() } else { parse_nat(whole)? };
    if frac.is_empty() {
        return if text.ends_with('.') { None } else { Some(Rational::from_integer(whole)) };
    }
    let digits = parse_nat(frac)?;
    let scale = num_traits::pow(BigInt::from(10), frac.len());
    Some(Rational::from_integer(whole) + Rational::new(digits, scale))
}

fn parse_nat(s: &str) -> Option<BigInt> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    BigInt::from_str(s).ok()
}

/// Canonical text of a rational: `n` for integers, `n/d` otherwise.
pub fn format_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// A probability: an exact rational in `[0, 1]`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Probability(Rational);

impl Probability {
    pub fn new(value: Rational) -> Option<Self> {
        if value.is_negative() || value > Rational::one() {
            None
        } else {
            Some(Probability(value))
        }
    }

    pub fn zero() -> Self {
        Probability(Rational::zero())
    }

    pub fn one() -> Self {
        Probability(Rational::one())
    }

    pub fn ratio(numer: i64, denom: i64) -> Self {
        Self::new(rat(numer, denom)).expect("probability outside [0,1]")
    }

    pub fn value(&self) -> &Rational {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }
}

impl fmt::Display for Probability {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_rational(&self.0))
    }
}

impl fmt::Debug for Probability {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Comparison {
    /// `>`
    Gt,
    /// `>=`
    Geq,
}

impl Comparison {
    pub fn holds(self, lhs: &Rational, rhs: &Rational) -> bool {
        match self {
            Comparison::Gt => lhs > rhs,
            Comparison::Geq => lhs >= rhs,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Comparison::Gt => ">",
            Comparison::Geq => ">=",
        }
    }
}

/// The superscript `~p` on next/until/release operators.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Bound {
    pub cmp: Comparison,
    pub prob: Probability,
}

impl Bound {
    pub fn new(cmp: Comparison, prob: Probability) -> Self {
        Bound { cmp, prob }
    }

    pub fn geq(numer: i64, denom: i64) -> Self {
        Bound::new(Comparison::Geq, Probability::ratio(numer, denom))
    }

    pub fn gt(numer: i64, denom: i64) -> Self {
        Bound::new(Comparison::Gt, Probability::ratio(numer, denom))
    }

    pub fn admits(&self, mass: &Rational) -> bool {
        self.cmp.holds(mass, self.prob.value())
    }

    /// `>= 0`: satisfied by every mass.
    pub fn is_trivially_true(&self) -> bool {
        self.cmp == Comparison::Geq && self.prob.is_zero()
    }

    /// `> 1`: satisfied by no mass.
    pub fn is_trivially_false(&self) -> bool {
        self.cmp == Comparison::Gt && self.prob.is_one()
    }
}

impl fmt::Display for Bound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}{}]", self.cmp.symbol(), self.prob)
    }
}
