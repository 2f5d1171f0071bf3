//! Inputs shared by the benchmarks.

use pmutl::gadget::{all_gadgets, DEFAULT_MAX_GADGETS};
use pmutl::markov::{gen_family, ChainFamily, PointedMarkovChain};
use pmutl::syntax::{guard, parse_closed_pmutl};
use pmutl::{build_papa, Formula, Gadget, Papa};

pub fn formula(text: &str) -> Formula {
    parse_closed_pmutl(text).expect("benchmark formula parses")
}

pub fn chain(family: ChainFamily) -> PointedMarkovChain {
    gen_family(&family).expect("benchmark chain builds")
}

/// The automaton of `text` with its full gadget alphabet.
pub fn automaton(text: &str) -> (Papa, Vec<Gadget>) {
    let a = build_papa(&guard(&formula(text)).rename_apart()).expect("automaton builds");
    let alphabet = all_gadgets(&a, DEFAULT_MAX_GADGETS).expect("gadgets enumerate");
    (a, alphabet)
}
