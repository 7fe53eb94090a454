mod common;

use std::collections::BTreeMap;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use equibase::model::{is_isomorphic, Assignment, FiniteAlgebra};
use equibase::report::relabel_closure;
use equibase::search::{enumerate_models, SearchOptions};
use equibase::term::format_term;
use equibase::{builtin_theories, builtin_theory, parse_term, Identity, Signature, Substitution, Term};

const VARS: [&str; 3] = ["x", "y", "z"];

fn mv_sig() -> Signature {
    builtin_theories().signature("MV210").unwrap().clone()
}

fn mv_term() -> impl Strategy<Value = Term> {
    let leaf = prop_oneof![
        (0..VARS.len()).prop_map(|k| Term::var(VARS[k])),
        Just(Term::constant("zero")),
    ];
    leaf.prop_recursive(4, 24, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(|a| Term::app("neg", vec![a])),
            (inner.clone(), inner).prop_map(|(a, b)| Term::app("plus", vec![a, b])),
        ]
    })
}

fn algebra(sig: &Signature, n: usize, raw: &[usize]) -> FiniteAlgebra {
    let mut it = raw.iter().cycle();
    let tables = sig
        .ops()
        .iter()
        .map(|(_, a)| (0..n.pow(*a as u32)).map(|_| it.next().unwrap() % n).collect())
        .collect();
    FiniteAlgebra::new("random", sig, n, tables).unwrap()
}

fn permutation(n: usize, keys: &[u32]) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    p.sort_by_key(|&i| (keys[i % keys.len()], i));
    p
}

fn assignment(values: &[usize], n: usize) -> Assignment {
    VARS.iter()
        .zip(values)
        .map(|(v, e)| (v.to_string(), e % n))
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn formatted_terms_parse_back(t in mv_term()) {
        prop_assert_eq!(parse_term(&format_term(&t), &mv_sig()).unwrap(), t);
    }

    #[test]
    fn satisfaction_is_invariant_under_relabeling(
        n in 2usize..5,
        raw in prop::collection::vec(0usize..8, 1..30),
        keys in prop::collection::vec(any::<u32>(), 5),
        theory in 0usize..4,
    ) {
        let name = ["MV_A", "MV_M", "CBCK_C", "LBCK_B"][theory];
        let t = builtin_theory(name).unwrap();
        let a = algebra(&t.signature, n, &raw);
        let perm = permutation(n, &keys);
        let b = a.relabel(&perm);
        for i in &t.identities {
            prop_assert_eq!(a.satisfies(i).unwrap().holds, b.satisfies(i).unwrap().holds);
        }
        prop_assert_eq!(is_isomorphic(&a, &b).bijection.is_some(), true);
    }

    #[test]
    fn evaluation_commutes_with_substitution(
        t in mv_term(),
        images in prop::collection::vec(mv_term(), 3),
        n in 2usize..5,
        raw in prop::collection::vec(0usize..8, 1..30),
        values in prop::collection::vec(0usize..8, 3),
    ) {
        let a = algebra(&mv_sig(), n, &raw);
        let v = assignment(&values, n);
        let mut s = Substitution::new();
        let mut composed: Assignment = BTreeMap::new();
        for (var, image) in VARS.iter().zip(&images) {
            s.insert(*var, image.clone());
            composed.insert(var.to_string(), a.eval_term(image, &v).unwrap());
        }
        prop_assert_eq!(
            a.eval_term(&t.substitute(&s), &v).unwrap(),
            a.eval_term(&t, &composed).unwrap()
        );
    }

    #[test]
    fn adding_an_identity_only_removes_models(
        lhs in mv_term(),
        rhs in mv_term(),
        theory in 0usize..2,
    ) {
        let mut t = builtin_theory(["MV_A", "MV_derived"][theory]).unwrap().clone();
        let base = enumerate_models(&t, 2, &SearchOptions::default()).unwrap().models;
        t.add(Identity::new("extra", lhs, rhs)).unwrap();
        let fewer = enumerate_models(&t, 2, &SearchOptions::default()).unwrap().models;
        let base = common::cells_sorted(&base);
        for m in &fewer {
            prop_assert!(base.binary_search(&m.cells()).is_ok());
        }
    }

    #[test]
    fn model_sets_are_closed_under_relabeling(seed in any::<u64>(), theory in 0usize..6) {
        let name = ["MV_A", "MV_M", "CBCK_C", "CBCK_B_elim", "LBCK_L", "LBCK_B_elim"][theory];
        let t = builtin_theory(name).unwrap();
        let models = enumerate_models(t, 3, &SearchOptions::default()).unwrap().models;
        let check = relabel_closure(t, &models, &mut ChaCha8Rng::seed_from_u64(seed));
        prop_assert!(check.closed, "{:?}", check);
    }
}

#[test]
fn iso_representatives_cover_every_class() {
    let opts = SearchOptions { up_to_iso: true, ..Default::default() };
    for name in ["MV_A", "CBCK_C", "LBCK_L"] {
        let t = builtin_theory(name).unwrap();
        for n in 2..=4 {
            let all = enumerate_models(t, n, &SearchOptions::default()).unwrap().models;
            let reps = enumerate_models(t, n, &opts).unwrap().models;
            for m in &all {
                let hits = reps.iter().filter(|r| is_isomorphic(m, r).bijection.is_some()).count();
                assert_eq!(hits, 1, "{name} n={n} {:?}", m.cells());
            }
        }
    }
}
