use pmutl::corpus;
use pmutl::gadget::{all_gadgets, DEFAULT_MAX_GADGETS};
use pmutl::omega::{build_tilde, complement_dpa, lasso_accepts, lasso_oracle, DEFAULT_MAX_DPA_STATES};
use pmutl::papa::build_papa;
use pmutl::random::random_lasso;
use pmutl::syntax::guard;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn tilde_agrees_with_oracle_on_corpus() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for (name, f) in corpus::all() {
        let a = build_papa(&guard(&f)).unwrap();
        let alphabet = all_gadgets(&a, DEFAULT_MAX_GADGETS).unwrap();
        let d = build_tilde(&a, &alphabet, DEFAULT_MAX_DPA_STATES).unwrap();
        assert!(d.is_total(), "{name}");
        let co = complement_dpa(&complement_dpa(&d));
        let (mut yes, mut no) = (0, 0);
        for _ in 0..1000 {
            let (u, v) = random_lasso(&mut rng, &a, &alphabet, 3, 3);
            let expected = lasso_oracle(&a, &u, &v);
            assert_eq!(lasso_accepts(&d, &u, &v), expected, "{name}: {u:?} {v:?}");
            assert_eq!(lasso_accepts(&co, &u, &v), expected);
            if expected {
                yes += 1
            } else {
                no += 1
            }
        }
        eprintln!("{name}: {} gadgets, {} states, {yes} accepted, {no} rejected", alphabet.len(), d.num_states());
    }
}

#[test]
fn tilde_agrees_with_oracle_on_random_formulas() {
    use pmutl::random::{random_formula, FormulaShape};
    let mut rng = ChaCha8Rng::seed_from_u64(81);
    let shape = FormulaShape { depth: 4, max_fixpoints: 2, guarded: true, ..FormulaShape::default() };
    let mut checked = 0;
    for _ in 0..150 {
        let f = random_formula(&mut rng, &shape);
        let a = build_papa(&guard(&f)).unwrap();
        let Ok(alphabet) = all_gadgets(&a, 400) else { continue };
        let d = build_tilde(&a, &alphabet, 20_000).unwrap();
        for _ in 0..100 {
            let (u, v) = random_lasso(&mut rng, &a, &alphabet, 2, 3);
            assert_eq!(lasso_accepts(&d, &u, &v), lasso_oracle(&a, &u, &v), "{f}: {u:?} {v:?}");
        }
        checked += 1;
    }
    assert!(checked >= 100, "only {checked} formulas small enough");
}

#[test]
fn bad_automata_recognize_the_complement() {
    use pmutl::omega::{build_bad_npa, nba_lasso_accepts, npa_lasso_accepts, parity_npa_to_nba};
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for (name, f) in corpus::all() {
        let a = build_papa(&guard(&f)).unwrap();
        let alphabet = all_gadgets(&a, DEFAULT_MAX_GADGETS).unwrap();
        let mut npa = build_bad_npa(&a, &alphabet);
        let mut nba = parity_npa_to_nba(npa.clone());
        for _ in 0..200 {
            let (u, v) = random_lasso(&mut rng, &a, &alphabet, 3, 3);
            let bad = !lasso_oracle(&a, &u, &v);
            assert_eq!(npa_lasso_accepts(&mut npa, &u, &v), bad, "{name}");
            assert_eq!(nba_lasso_accepts(&mut nba, &u, &v), bad, "{name}");
        }
    }
}

#[test]
fn colored_states_recur_on_every_cycle() {
    use pmutl::papa::check_well_structured;
    for (name, f) in corpus::all() {
        let a = build_papa(&guard(&f)).unwrap();
        assert_eq!(check_well_structured(&a), Ok(()), "{name}");
    }
}
