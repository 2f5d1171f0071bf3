//! Satisfiability through a parity game between a player who builds a
//! model one step at a time and a player who picks which branch to follow.
//!
//! The even player owns pair locations `(D, q)` and picks a family of
//! successor gadgets enabling `D`; the odd player owns set locations and
//! picks a member. Pair locations carry the color of the word automaton
//! state `q`, so the even player wins exactly when every branch reads a word
//! that automaton accepts.

mod arena;
pub mod parity;

use std::time::Instant;

use thiserror::Error;

pub use arena::{build_game, emptiness, extract_witness, Arena, Decomposition, Location};
pub use parity::{brute_force_winners, solve, strategy_wins, ParityGame, Player, Solution};

use crate::gadget::{GadgetError, DEFAULT_MAX_GADGETS};
use crate::markov::PointedMarkovChain;
use crate::omega::{OmegaError, DEFAULT_MAX_DPA_STATES};
use crate::papa::{build_papa, Papa, PapaError};
use crate::semantics::{check, EvalError};
use crate::syntax::{guard, Formula};

pub const DEFAULT_MAX_GAME_LOCATIONS: usize = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PoolMode {
    /// Successor gadgets are seeded from the probabilistic targets.
    Seeded,
    /// Every gadget of the automaton is a candidate successor.
    Unrestricted,
}

#[derive(Debug, Clone)]
pub struct GameConfig {
    pub pool: PoolMode,
    /// Offer only inclusion-minimal successor families.
    pub minimal_families: bool,
    /// Drop incompatible gadgets from successor pools. They can never
    /// belong to an accepted word, so this only shrinks the game.
    pub prune_incompatible: bool,
    pub max_gadgets: usize,
    pub max_dpa_states: usize,
    pub max_locations: usize,
    /// Largest pool searched exhaustively when `minimal_families` is off.
    pub max_pool_for_all: usize,
}

impl Default for GameConfig {
    fn default() -> Self {
        GameConfig {
            pool: PoolMode::Seeded,
            minimal_families: true,
            prune_incompatible: false,
            max_gadgets: DEFAULT_MAX_GADGETS,
            max_dpa_states: DEFAULT_MAX_DPA_STATES,
            max_locations: DEFAULT_MAX_GAME_LOCATIONS,
            max_pool_for_all: 16,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GameError {
    #[error("gadget enumeration: {0}")]
    Gadgets(#[from] GadgetError),
    #[error("word automaton: {0}")]
    Automaton(#[from] OmegaError),
    #[error("more than {0} game locations")]
    TooManyLocations(usize),
    #[error("successor pool of {0} gadgets is too large for exhaustive search")]
    PoolTooLarge(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SatError {
    #[error("formula is not closed")]
    NotClosed,
    #[error("automaton construction: {0}")]
    Papa(#[from] PapaError),
    #[error("game construction: {0}")]
    Game(#[from] GameError),
    #[error("internal error: extracted witness does not satisfy the formula")]
    WitnessRejected,
    #[error("internal error: {0}")]
    Eval(#[from] EvalError),
}

impl SatError {
    /// Whether the error is a resource cap rather than a bad input or bug.
    pub fn is_cap(&self) -> bool {
        matches!(self, SatError::Game(_))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SatVerdict {
    Sat(PointedMarkovChain),
    Unsat,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SatStats {
    pub automaton_states: usize,
    pub gadgets: usize,
    pub word_automaton_states: usize,
    pub game_locations: usize,
    pub game_moves: usize,
    pub millis: u128,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SatReport {
    pub verdict: SatVerdict,
    pub stats: SatStats,
}

/// Builds and solves the game of `a`. Returns the solved arena and, when
/// the language is nonempty, a winning initial location.
pub fn decide(a: &Papa, cfg: &GameConfig) -> Result<(Arena, Solution, Option<usize>), GameError> {
    let arena = build_game(a, cfg)?;
    let sol = solve(&arena.game);
    let start = emptiness(&arena, &sol);
    Ok((arena, sol, start))
}

pub fn sat(f: &Formula) -> Result<SatReport, SatError> {
    sat_with(f, &GameConfig::default())
}

/// Decides satisfiability of a closed formula. A returned witness has been
/// model checked against `f`.
pub fn sat_with(f: &Formula, cfg: &GameConfig) -> Result<SatReport, SatError> {
    if !f.is_closed() {
        return Err(SatError::NotClosed);
    }
    let clock = Instant::now();
    let a = build_papa(&guard(f).rename_apart())?;
    let (arena, sol, start) = decide(&a, cfg)?;
    let verdict = match start {
        None => SatVerdict::Unsat,
        Some(s) => {
            let w = extract_witness(&a, &arena, &sol, s);
            if !check(&w, f)? {
                return Err(SatError::WitnessRejected);
            }
            SatVerdict::Sat(w)
        }
    };
    let stats = SatStats {
        automaton_states: a.num_states(),
        gadgets: arena.gadgets.len(),
        word_automaton_states: arena.tilde_states,
        game_locations: arena.game.num_locations(),
        game_moves: arena.game.num_moves(),
        millis: clock.elapsed().as_millis(),
    };
    Ok(SatReport { verdict, stats })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::prob::rat;

    fn verdict(s: &str) -> SatVerdict {
        sat(&corpus::parse(s)).unwrap().verdict
    }

    #[test]
    fn almost_sure_loop_is_satisfiable() {
        let SatVerdict::Sat(w) = verdict("nu Z.(a & X[>=1] Z)") else { panic!("expected Sat") };
        // the initial gadget, then the gadget of the variable looping on
        // itself; no mass is left over so there is no sink
        assert_eq!(w.chain.names(), ["l0", "l1"]);
        for s in w.chain.states() {
            assert!(w.chain.has_label(s, "a"));
            assert_eq!(w.chain.successors(s), [(1, rat(1, 1))]);
        }
    }

    #[test]
    fn witness_mass_is_a_midpoint() {
        let SatVerdict::Sat(w) = verdict("nu Z.(a & X[>=4/5] Z)") else { panic!("expected Sat") };
        let m = &w.chain;
        assert_eq!(m.names(), ["l0", "l1", "sink"]);
        // the enabling interval is [4/5, 1]
        assert_eq!(m.successors(0), [(1, rat(9, 10)), (2, rat(1, 10))]);
        assert_eq!(m.successors(1), [(1, rat(9, 10)), (2, rat(1, 10))]);
        assert!(m.labels(2).is_empty());
    }

    #[test]
    fn contradictions_are_unsatisfiable() {
        assert_eq!(verdict("a & !a"), SatVerdict::Unsat);
        assert_eq!(verdict("mu Z. X[>=1] Z"), SatVerdict::Unsat);
        assert_eq!(verdict("X[>1/2] a & X[>1/2] !a"), SatVerdict::Unsat);
    }

    #[test]
    fn true_has_a_one_state_model() {
        let SatVerdict::Sat(w) = verdict("true") else { panic!("expected Sat") };
        assert_eq!(w.chain.num_states(), 1);
    }
}
