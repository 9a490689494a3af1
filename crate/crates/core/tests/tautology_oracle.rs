mod common;

use num_traits::One;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use common::{grid, oracle_eval, random_term, NON_TAUTOLOGIES, TAUTOLOGIES, Q};
use mvretract::mcnaughton::{compile, find_counterexample, is_tautology, pwl_equal};
use mvretract::{parse, MvTerm, RationalPoint};

#[test]
fn tautology_corpus() {
    for src in TAUTOLOGIES {
        assert!(is_tautology(&parse(src).unwrap()).unwrap(), "{src}");
    }
}

#[test]
fn non_tautologies_have_witnesses() {
    for src in NON_TAUTOLOGIES {
        let t = parse(src).unwrap();
        let w = find_counterexample(&t).unwrap().unwrap_or_else(|| panic!("{src} accepted"));
        assert_ne!(oracle_eval(&t, w.coords()), Q::one(), "{src} at {w:?}");
    }
}

/// Pairs that are equal by MV identities, so that some comparisons succeed.
fn variant(rng: &mut ChaCha8Rng, t: &MvTerm) -> MvTerm {
    use rand::Rng;
    let u = random_term(rng, 2, 2);
    match rng.gen_range(0..6) {
        0 => MvTerm::neg(MvTerm::neg(t.clone())),
        1 => MvTerm::meet(t.clone(), t.clone()),
        2 => MvTerm::oplus(t.clone(), MvTerm::Zero),
        3 => MvTerm::join(t.clone(), MvTerm::meet(t.clone(), u)),
        4 => MvTerm::otimes(MvTerm::One, t.clone()),
        _ => random_term(rng, 5, 2),
    }
}

#[test]
fn pwl_equality_agrees_with_grid_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut equal = 0;
    for case in 0..200 {
        let t = random_term(&mut rng, 5, 2);
        let u = variant(&mut rng, &t);
        let f = compile(&[t.clone()], 2).unwrap();
        let g = compile(&[u.clone()], 2).unwrap();
        let max_den = f
            .domain()
            .vertices()
            .iter()
            .chain(g.domain().vertices())
            .map(RationalPoint::denominator)
            .max()
            .unwrap();
        let d: u64 = (max_den * 2u32).try_into().unwrap();
        let oracle = grid(2, d).iter().all(|x| oracle_eval(&t, x) == oracle_eval(&u, x));
        let fast = pwl_equal(&f, &g).unwrap();
        assert_eq!(fast, oracle, "case {case}: {t} vs {u}");
        equal += usize::from(fast);
    }
    assert!(equal > 20 && equal < 180, "degenerate sample: {equal} equal pairs");
}

#[test]
fn tautology_agrees_with_grid_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..200 {
        let t = random_term(&mut rng, 5, 2);
        let t = MvTerm::join(t.clone(), MvTerm::neg(t));
        let f = compile(&[t.clone()], 2).unwrap();
        let d: u64 = (f.domain().vertices().iter().map(RationalPoint::denominator).max().unwrap() * 2u32)
            .try_into()
            .unwrap();
        let oracle = grid(2, d).iter().all(|x| oracle_eval(&t, x) == Q::one());
        assert_eq!(is_tautology(&t).unwrap(), oracle, "{t}");
    }
}
