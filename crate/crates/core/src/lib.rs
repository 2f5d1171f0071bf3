//! Probabilistic modal mu-calculus over finite Markov chains: model
//! checking, a translation from qualitative PCTL, and satisfiability with
//! witness chains via parity games over automaton unfoldings.

pub mod acceptance;
pub mod bitset;
pub mod corpus;
pub mod gadget;
pub mod game;
pub mod markov;
pub mod omega;
pub mod papa;
pub mod prob;
pub mod random;
pub mod semantics;
pub mod syntax;

pub use bitset::BitSet;
pub use gadget::Gadget;
pub use game::{sat, sat_with, GameConfig, PoolMode, SatError, SatReport, SatStats, SatVerdict};
pub use markov::{ChainError, ChainFamily, MarkovChain, PointedMarkovChain};
pub use papa::{build_papa, Papa};
pub use prob::{Bound, Comparison, Probability, Rational};
pub use semantics::{check, eval, EvalError};
pub use syntax::{Formula, PctlFormula};
