//! Generators for the chain families used in the expressiveness arguments
//! and the hacker example.

use num_traits::{One, Zero};

use super::{ChainBuilder, ChainError, PointedMarkovChain};
use crate::prob::{rat, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ChainFamily {
    /// `s0..sn`: a deterministic line `sn -> ... -> s0`, `s0` absorbing and
    /// unlabeled, every other state labeled `a`.
    Mn(usize),
    /// Like `Mn` but `s'n` stays put with probability 1/2.
    MPrimeN(usize),
    /// A line `s''n -> ... -> s''0` with `s''0` absorbing; only `s''1` lacks `a`.
    MDoublePrimeN(usize),
    /// `s1` loops with `x`, moves to absorbing `s2` with `y` and to
    /// absorbing, `a`-labeled `s3` with `z`.
    Thm4 { x: Rational, y: Rational, z: Rational },
    /// The intrusion chain with `n` security layers.
    Hacker(u64),
}

fn line_family(
    n: usize,
    prime: &str,
    labeled: impl Fn(usize) -> bool,
    lingering_top: bool,
) -> Result<PointedMarkovChain, ChainError> {
    let mut b = ChainBuilder::new();
    let states: Vec<usize> = (0..=n).map(|i| b.state(format!("s{prime}{i}"))).collect();
    b.trans(states[0], states[0], Rational::one());
    for i in 1..=n {
        if i == n && lingering_top {
            b.trans(states[i], states[i], rat(1, 2));
            b.trans(states[i], states[i - 1], rat(1, 2));
        } else {
            b.trans(states[i], states[i - 1], Rational::one());
        }
    }
    for i in 0..=n {
        if labeled(i) {
            b.label(states[i], "a");
        }
    }
    Ok(b.build()?.pointed(states[n]))
}

pub fn gen_family(kind: &ChainFamily) -> Result<PointedMarkovChain, ChainError> {
    match kind {
        ChainFamily::Mn(n) => {
            if *n < 1 {
                return Err(ChainError::Parameter("Mn needs n >= 1".into()));
            }
            line_family(*n, "", |i| i > 0, false)
        }
        ChainFamily::MPrimeN(n) => {
            if *n < 1 {
                return Err(ChainError::Parameter("MPrimeN needs n >= 1".into()));
            }
            line_family(*n, "'", |i| i > 0, true)
        }
        ChainFamily::MDoublePrimeN(n) => {
            if *n < 2 {
                return Err(ChainError::Parameter("MDoublePrimeN needs n >= 2".into()));
            }
            line_family(*n, "''", |i| i != 1, false)
        }
        ChainFamily::Thm4 { x, y, z } => {
            let open = |v: &Rational| *v > Rational::zero() && *v < Rational::one();
            if !(open(x) && open(y) && open(z)) || (x + y + z) != Rational::one() {
                return Err(ChainError::Parameter("x, y, z must lie in (0,1) and sum to 1".into()));
            }
            let mut b = ChainBuilder::new();
            let s1 = b.state("s1");
            let s2 = b.state("s2");
            let s3 = b.state("s3");
            b.trans(s1, s1, x.clone()).trans(s1, s2, y.clone()).trans(s1, s3, z.clone());
            b.trans(s2, s2, Rational::one()).trans(s3, s3, Rational::one());
            b.label(s3, "a");
            Ok(b.build()?.pointed(s1))
        }
        ChainFamily::Hacker(n) => {
            if *n < 4 {
                return Err(ChainError::Parameter("Hacker needs n >= 4".into()));
            }
            let n = i64::try_from(*n).map_err(|_| ChainError::Parameter("n too large".into()))?;
            let mut b = ChainBuilder::new();
            let s: Vec<usize> = (1..=5).map(|i| b.state(format!("s{i}"))).collect();
            b.trans(s[0], s[1], rat(n - 1, n)).trans(s[0], s[4], rat(1, n));
            b.trans(s[1], s[2], rat(n - 2, n - 1)).trans(s[1], s[4], rat(1, n - 1));
            b.trans(s[2], s[3], rat(n - 3, n - 2)).trans(s[2], s[4], rat(1, n - 2));
            b.trans(s[3], s[0], Rational::one());
            // the attacked state is absorbing
            b.trans(s[4], s[4], Rational::one());
            b.label(s[3], "blocked").label(s[4], "attacked");
            Ok(b.build()?.pointed(s[0]))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::markov::{emit_mc, parse_mc};

    #[test]
    fn mn_two() {
        let pmc = gen_family(&ChainFamily::Mn(2)).unwrap();
        let m = &pmc.chain;
        assert_eq!(m.names(), ["s0", "s1", "s2"]);
        assert_eq!(m.prob(0, 0), rat(1, 1));
        assert_eq!(m.prob(1, 0), rat(1, 1));
        assert_eq!(m.prob(2, 1), rat(1, 1));
        assert!(m.labels(0).is_empty());
        assert!(m.has_label(1, "a") && m.has_label(2, "a"));
        assert_eq!(pmc.initial_name(), "s2");
    }

    #[test]
    fn mprime_two() {
        let pmc = gen_family(&ChainFamily::MPrimeN(2)).unwrap();
        let m = &pmc.chain;
        assert_eq!(m.names(), ["s'0", "s'1", "s'2"]);
        assert_eq!(m.prob(2, 2), rat(1, 2));
        assert_eq!(m.prob(2, 1), rat(1, 2));
        assert_eq!(m.prob(1, 0), rat(1, 1));
        assert_eq!(m.prob(0, 0), rat(1, 1));
        assert_eq!(pmc.initial_name(), "s'2");
    }

    #[test]
    fn mprime_one_lingers_into_unlabeled_sink() {
        let m = gen_family(&ChainFamily::MPrimeN(1)).unwrap().chain;
        assert_eq!(m.prob(1, 1), rat(1, 2));
        assert_eq!(m.prob(1, 0), rat(1, 2));
    }

    #[test]
    fn mdoubleprime_labels() {
        let m = gen_family(&ChainFamily::MDoublePrimeN(3)).unwrap().chain;
        assert_eq!(m.names(), ["s''0", "s''1", "s''2", "s''3"]);
        assert!(m.has_label(0, "a"));
        assert!(m.labels(1).is_empty());
        assert!(m.has_label(2, "a") && m.has_label(3, "a"));
    }

    #[test]
    fn hacker_ten() {
        let pmc = gen_family(&ChainFamily::Hacker(10)).unwrap();
        let m = &pmc.chain;
        let expect = [
            (0, 1, rat(9, 10)),
            (0, 4, rat(1, 10)),
            (1, 2, rat(8, 9)),
            (1, 4, rat(1, 9)),
            (2, 3, rat(7, 8)),
            (2, 4, rat(1, 8)),
            (3, 0, rat(1, 1)),
            (4, 4, rat(1, 1)),
        ];
        for (s, t, p) in expect {
            assert_eq!(m.prob(s, t), p);
        }
        assert_eq!(m.states().map(|s| m.successors(s).len()).sum::<usize>(), 8);
        assert!(m.has_label(4, "attacked") && m.has_label(3, "blocked"));
        assert_eq!(pmc.initial_name(), "s1");
    }

    #[test]
    fn parameters_are_checked() {
        assert!(gen_family(&ChainFamily::Mn(0)).is_err());
        assert!(gen_family(&ChainFamily::MDoublePrimeN(1)).is_err());
        assert!(gen_family(&ChainFamily::Hacker(3)).is_err());
        let bad = ChainFamily::Thm4 { x: rat(1, 2), y: rat(1, 2), z: rat(0, 1) };
        assert!(gen_family(&bad).is_err());
        let bad = ChainFamily::Thm4 { x: rat(1, 2), y: rat(1, 4), z: rat(1, 2) };
        assert!(gen_family(&bad).is_err());
    }

    #[test]
    fn round_trips() {
        let kinds = [
            ChainFamily::Mn(3),
            ChainFamily::MPrimeN(4),
            ChainFamily::MDoublePrimeN(5),
            ChainFamily::Thm4 { x: rat(1, 3), y: rat(1, 6), z: rat(1, 2) },
            ChainFamily::Hacker(7),
        ];
        for k in kinds {
            let pmc = gen_family(&k).unwrap();
            assert_eq!(parse_mc(&emit_mc(&pmc)).unwrap(), pmc, "{k:?}");
        }
    }
}
