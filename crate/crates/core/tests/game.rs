use pmutl::corpus;
use pmutl::game::{
    brute_force_winners, build_game, sat, sat_with, solve, strategy_wins, GameConfig, Player, PoolMode, SatVerdict,
};
use pmutl::papa::build_papa;
use pmutl::random::{random_chain, random_formula, random_game, FormulaShape};
use pmutl::semantics::check;
use pmutl::syntax::guard;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn corpus_verdicts() {
    for s in corpus::SAT {
        let r = sat(&corpus::parse(s)).unwrap();
        eprintln!("{s}: {:?}", r.stats);
        assert!(matches!(r.verdict, SatVerdict::Sat(_)), "{s}");
    }
    for s in corpus::SAT_PCTL {
        let r = sat(&corpus::translate(s)).unwrap();
        eprintln!("{s}: {:?}", r.stats);
        assert!(matches!(r.verdict, SatVerdict::Sat(_)), "{s}");
    }
    for s in corpus::UNSAT {
        let r = sat(&corpus::parse(s)).unwrap();
        eprintln!("{s}: {:?}", r.stats);
        assert_eq!(r.verdict, SatVerdict::Unsat, "{s}");
    }
}

#[test]
fn zielonka_matches_brute_force() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..500 {
        let g = random_game(&mut rng, 8);
        assert!(g.uncolored_cycle().is_none());
        let sol = solve(&g);
        assert_eq!(sol.winner, brute_force_winners(&g), "{g:?}");
        for p in [Player::Even, Player::Odd] {
            let region = sol.region(p);
            assert!(strategy_wins(&g, p, &sol.strategy, &region), "{g:?}");
        }
    }
}

#[test]
fn constructed_games_are_well_formed() {
    for (name, f) in corpus::all() {
        let a = build_papa(&guard(&f).rename_apart()).unwrap();
        let arena = build_game(&a, &GameConfig::default()).unwrap();
        assert!(arena.game.is_total(), "{name}");
        assert_eq!(arena.game.uncolored_cycle(), None, "{name}");
        let sol = solve(&arena.game);
        let (w0, w1) = (sol.region(Player::Even), sol.region(Player::Odd));
        assert_eq!(w0.len() + w1.len(), arena.game.num_locations());
    }
}

/// Sat verdicts of random formulas agree with a search for models among
/// random chains: a model found means Sat, and Unsat formulas have none.
#[test]
fn random_formulas_against_random_models() {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let shape = FormulaShape { depth: 3, max_fixpoints: 1, atoms: vec!["a".into()], guarded: false };
    let (mut sats, mut unsats) = (0, 0);
    for _ in 0..150 {
        let f = random_formula(&mut rng, &shape);
        let verdict = sat(&f).unwrap_or_else(|e| panic!("{f}: {e}")).verdict;
        let model = (0..300).map(|_| random_chain(&mut rng, 4, &["a"])).find(|m| check(m, &f).unwrap());
        match verdict {
            SatVerdict::Sat(w) => {
                assert!(check(&w, &f).unwrap());
                sats += 1;
            }
            SatVerdict::Unsat => {
                assert!(model.is_none(), "{f} is Unsat but holds on {:?}", model.unwrap());
                unsats += 1;
            }
        }
    }
    eprintln!("{sats} sat, {unsats} unsat");
    assert!(sats > 20 && unsats > 20);
}

/// The seeded pool with minimal families decides like the exhaustive game
/// over every gadget and every family.
#[test]
fn restricted_game_agrees_with_exhaustive_game() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let shape = FormulaShape { depth: 3, max_fixpoints: 1, atoms: vec!["a".into()], guarded: true };
    let exhaustive = GameConfig { pool: PoolMode::Unrestricted, minimal_families: false, max_pool_for_all: 6, ..GameConfig::default() };
    let mut compared = 0;
    for _ in 0..300 {
        let f = random_formula(&mut rng, &shape);
        let fast = sat(&f).unwrap().verdict;
        let Ok(slow) = sat_with(&f, &exhaustive) else { continue };
        assert_eq!(matches!(fast, SatVerdict::Sat(_)), matches!(slow.verdict, SatVerdict::Sat(_)), "{f}");
        compared += 1;
    }
    eprintln!("compared {compared}");
    assert!(compared >= 120);
}
