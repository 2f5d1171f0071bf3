//! The acceptance battery: eleven end-to-end checks with exact arithmetic,
//! shared by the `acceptance` test target and the `selftest` command.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::corpus;
use crate::gadget::{all_gadgets, DEFAULT_MAX_GADGETS};
use crate::game::{brute_force_winners, sat, solve, Player, SatVerdict};
use crate::markov::{gen_family, ChainFamily};
use crate::omega::{build_tilde, lasso_accepts, lasso_oracle, DEFAULT_MAX_DPA_STATES};
use crate::papa::build_papa;
use crate::prob::{rat, Rational};
use crate::random::{random_chain, random_formula, random_game, random_lasso, random_qualitative_pctl, FormulaShape};
use crate::semantics::{check, eval, eval_by_definition, pctl_eval, until_prob, Assignment};
use crate::syntax::{guard, is_guarded, parse_closed_pmutl, parse_pctl, translate_qualitative, Formula};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub id: usize,
    pub title: &'static str,
    pub passed: bool,
    /// Counts on success, the first counterexample on failure.
    pub detail: String,
    pub millis: u128,
}

impl std::fmt::Display for Outcome {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let verdict = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "[{verdict}] {:>2}. {} ({} ms): {}", self.id, self.title, self.millis, self.detail)
    }
}

type Check = fn() -> Result<String, String>;

const CRITERIA: [(&str, Check); 11] = [
    ("fixpoint iteration agrees with the brute-force oracle", oracle_equivalence),
    ("separation family M'_n vs M_n", separation_family),
    ("alternating family M''_n", alternating_family),
    ("intrusion chain with ten layers", intrusion_chain),
    ("qualitative PCTL translation", translation),
    ("guarding preserves meaning", guarding),
    ("quantitative until in closed form", quantitative_until),
    ("word automaton agrees with the lasso oracle", word_automaton),
    ("Zielonka agrees with strategy enumeration", game_solver),
    ("satisfiability round trip", satisfiability),
    ("separation chain families are covered", separations_covered),
];

pub fn count() -> usize {
    CRITERIA.len()
}

/// Runs criterion `id` (1-based).
pub fn run(id: usize) -> Outcome {
    let (title, check) = CRITERIA[id - 1];
    let clock = Instant::now();
    let result = check();
    let millis = clock.elapsed().as_millis();
    let (passed, detail) = match result {
        Ok(d) => (true, d),
        Err(d) => (false, d),
    };
    Outcome { id, title, passed, detail, millis }
}

pub fn run_all() -> Vec<Outcome> {
    (1..=count()).map(run).collect()
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn pmutl(text: &str) -> Formula {
    parse_closed_pmutl(text).expect("battery formula parses")
}

fn family(k: ChainFamily) -> Result<crate::markov::PointedMarkovChain, String> {
    gen_family(&k).map_err(|e| format!("{k:?}: {e}"))
}

fn holds(m: &crate::markov::PointedMarkovChain, f: &Formula) -> Result<bool, String> {
    check(m, f).map_err(|e| format!("{f}: {e}"))
}

fn oracle_equivalence() -> Result<String, String> {
    let mut rng = rng(1);
    let shape = FormulaShape { depth: 4, max_fixpoints: 2, ..FormulaShape::default() };
    let e = Assignment::new();
    for i in 0..1000 {
        let f = random_formula(&mut rng, &shape);
        let m = random_chain(&mut rng, 4, &["a", "b"]).chain;
        let fast = eval(&f, &m, &e).map_err(|e| e.to_string())?;
        let slow = eval_by_definition(&f, &m, &e).map_err(|e| e.to_string())?;
        if fast != slow {
            return Err(format!("pair {i}: {f} gives {fast:?} by iteration, {slow:?} by definition"));
        }
    }
    Ok("1000 random pairs".into())
}

fn separation_family() -> Result<String, String> {
    let f = pmutl("nu Z.(a & X[>=1/2] Z)");
    for n in 1..=8 {
        if !holds(&family(ChainFamily::MPrimeN(n))?, &f)? {
            return Err(format!("fails on M'_{n}"));
        }
        if holds(&family(ChainFamily::Mn(n))?, &f)? {
            return Err(format!("holds on M_{n}"));
        }
    }
    Ok("n = 1..8".into())
}

fn alternating_family() -> Result<String, String> {
    let f = pmutl("nu Z.(a & X[>0] X[>0] Z)");
    for n in 2..=9 {
        if holds(&family(ChainFamily::MDoublePrimeN(n))?, &f)? != (n % 2 == 0) {
            return Err(format!("wrong verdict on M''_{n}"));
        }
    }
    Ok("n = 2..9".into())
}

fn intrusion_chain() -> Result<String, String> {
    let m = family(ChainFamily::Hacker(10))?;
    if !holds(&m, &pmutl("nu Z.(!attacked & X[>=7/8] Z)"))? {
        return Err("safe-region formula fails at s1".into());
    }
    let g = parse_pctl("F[>=1] attacked").expect("battery formula parses");
    if !pctl_eval(&g, &m.chain).contains(m.initial) {
        return Err("F[>=1] attacked fails at s1".into());
    }
    Ok("both hold at s1".into())
}

fn translation() -> Result<String, String> {
    let mut rng = rng(5);
    for i in 0..1000 {
        let g = random_qualitative_pctl(&mut rng, 3, &["a", "b"]);
        let m = random_chain(&mut rng, 6, &["a", "b"]).chain;
        let f = translate_qualitative(&g).map_err(|e| e.to_string())?;
        let direct = pctl_eval(&g, &m);
        let via = eval(&f, &m, &Assignment::new()).map_err(|e| e.to_string())?;
        if direct != via {
            return Err(format!("pair {i}: {g} gives {direct:?}, translation {f} gives {via:?}"));
        }
    }
    Ok("1000 random pairs".into())
}

fn guarding() -> Result<String, String> {
    let mut rng = rng(6);
    let shape = FormulaShape { depth: 4, max_fixpoints: 2, ..FormulaShape::default() };
    let e = Assignment::new();
    for i in 0..1000 {
        let f = random_formula(&mut rng, &shape);
        let g = guard(&f);
        if !is_guarded(&g) {
            return Err(format!("formula {i}: guard({f}) = {g} is not guarded"));
        }
        let m = random_chain(&mut rng, 4, &["a", "b"]).chain;
        let before = eval_by_definition(&f, &m, &e).map_err(|e| e.to_string())?;
        let after = eval_by_definition(&g, &m, &e).map_err(|e| e.to_string())?;
        if before != after {
            return Err(format!("formula {i}: {f} gives {before:?}, guard {g} gives {after:?}"));
        }
    }
    Ok("1000 random formulas".into())
}

fn quantitative_until() -> Result<String, String> {
    let mut rng = rng(7);
    for _ in 0..50 {
        let w: [i64; 3] = [rng.gen_range(1..=30), rng.gen_range(1..=30), rng.gen_range(1..=30)];
        let total: i64 = w.iter().sum();
        let (x, y, z) = (rat(w[0], total), rat(w[1], total), rat(w[2], total));
        let m = family(ChainFamily::Thm4 { x: x.clone(), y: y.clone(), z: z.clone() })?;
        let probs = until_prob(&m.chain, &crate::BitSet::full(3), &m.chain.states_with("a"));
        let expected: Rational = &z / (&y + &z);
        if probs[m.initial] != expected {
            return Err(format!("x={x}, y={y}, z={z}: got {}, expected {expected}", probs[m.initial]));
        }
    }
    Ok("50 random triples".into())
}

fn word_automaton() -> Result<String, String> {
    let mut rng = rng(8);
    let formulas = corpus::all();
    for (name, f) in &formulas {
        let a = build_papa(&guard(f).rename_apart()).map_err(|e| format!("{name}: {e}"))?;
        let alphabet = all_gadgets(&a, DEFAULT_MAX_GADGETS).map_err(|e| format!("{name}: {e}"))?;
        let d = build_tilde(&a, &alphabet, DEFAULT_MAX_DPA_STATES).map_err(|e| format!("{name}: {e}"))?;
        if !d.is_total() {
            return Err(format!("{name}: automaton is not total"));
        }
        for _ in 0..1000 {
            let (u, v) = random_lasso(&mut rng, &a, &alphabet, 3, 3);
            if lasso_accepts(&d, &u, &v) != lasso_oracle(&a, &u, &v) {
                return Err(format!("{name}: disagreement on {u:?} ({v:?})^omega"));
            }
        }
    }
    Ok(format!("{} formulas x 1000 lassos", formulas.len()))
}

fn game_solver() -> Result<String, String> {
    let mut rng = rng(9);
    for i in 0..500 {
        let g = random_game(&mut rng, 8);
        let sol = solve(&g);
        let even = sol.region(Player::Even).len();
        let odd = sol.region(Player::Odd).len();
        if even + odd != g.num_locations() {
            return Err(format!("game {i}: regions do not partition the locations"));
        }
        if sol.winner != brute_force_winners(&g) {
            return Err(format!("game {i}: {g:?}"));
        }
    }
    Ok("500 random games".into())
}

fn satisfiability() -> Result<String, String> {
    let mut cases: Vec<(String, Formula, bool)> =
        corpus::SAT.iter().map(|s| (s.to_string(), corpus::parse(s), true)).collect();
    cases.extend(corpus::SAT_PCTL.iter().map(|s| (format!("translate({s})"), corpus::translate(s), true)));
    cases.extend(corpus::UNSAT.iter().map(|s| (s.to_string(), corpus::parse(s), false)));
    let mut rng = rng(10);
    for (name, f, expect_sat) in &cases {
        let report = sat(f).map_err(|e| format!("{name}: {e}"))?;
        match (&report.verdict, expect_sat) {
            (SatVerdict::Sat(w), true) => {
                if !holds(w, f)? {
                    return Err(format!("{name}: witness does not satisfy the formula"));
                }
            }
            (SatVerdict::Unsat, false) => {
                for _ in 0..1000 {
                    let m = random_chain(&mut rng, 6, &["a", "b"]);
                    if holds(&m, f)? {
                        return Err(format!("{name}: Unsat but holds on {m:?}"));
                    }
                }
            }
            (v, _) => return Err(format!("{name}: unexpected verdict {v:?}")),
        }
    }
    Ok(format!("{} formulas", cases.len()))
}

fn separations_covered() -> Result<String, String> {
    let needed = [2, 3, 4, 7];
    let failed: Vec<usize> = needed.into_iter().filter(|&i| !run(i).passed).collect();
    if failed.is_empty() {
        Ok("chain families pass in criteria 2, 3, 4 and 7".into())
    } else {
        Err(format!("criteria {failed:?} fail"))
    }
}
