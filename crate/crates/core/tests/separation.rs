//! Sizes at which finite enumeration tells theories apart.

use equibase::report::{run_comparison, ComparisonKind};
use equibase::search::{compare_same_signature, SearchOptions, Verdict};
use equibase::builtin_theory;

/// Commutative BCK-algebras properly contain the Lukasiewicz ones; the
/// smallest separating carrier has four elements.
#[test]
fn smallest_commutative_non_lukasiewicz_algebra() {
    let c = builtin_theory("CBCK_C").unwrap();
    let l = builtin_theory("LBCK_L").unwrap();
    let opts = SearchOptions::default();
    let first = (1..=5)
        .map(|n| compare_same_signature(c, l, n, &opts).unwrap())
        .find(|r| !r.verdict.is_equal())
        .expect("separated by size 5");
    assert_eq!(first.size, 4);
    let Verdict::LeftNotRight(w) = &first.verdict else {
        panic!("the Lukasiewicz side should be the smaller one: {:?}", first.verdict)
    };
    assert!(w.is_model_of(c).unwrap());
    assert!(!w.is_model_of(l).unwrap());
    let b5 = builtin_theory("LBCK_B_elim").unwrap();
    assert!(!w.is_model_of(b5).unwrap());
    assert_eq!((first.left_count, first.right_count), (76, 64));
}

#[test]
fn witness_is_reported_on_the_correct_side() {
    let c = builtin_theory("CBCK_C").unwrap();
    let l = builtin_theory("LBCK_L").unwrap();
    let r = compare_same_signature(l, c, 4, &SearchOptions::default()).unwrap();
    let Verdict::RightNotLeft(w) = &r.verdict else {
        panic!("{:?}", r.verdict)
    };
    assert!(w.is_model_of(c).unwrap() && !w.is_model_of(l).unwrap());
}

/// Size 4 is beyond the default bound; MV_M is left out because its search
/// cannot prune before the last table is reached.
#[test]
fn bck_bases_agree_at_four() {
    let opts = SearchOptions { workers: 4, ..Default::default() };
    for (left, right) in [("CBCK_C", "CBCK_B_elim"), ("LBCK_L", "LBCK_B_elim")] {
        let r = run_comparison(ComparisonKind::SameSignature, left, right, 4, &opts).unwrap();
        assert!(r.verdict.is_equal(), "{left} vs {right}: {:?}", r.verdict);
    }
    let mv = run_comparison(ComparisonKind::ConstantExpansion, "MV_A", "MV_3base", 3, &opts).unwrap();
    assert!(mv.verdict.is_equal());
}

#[test]
fn witness_text_names_the_theory() {
    let c = builtin_theory("CBCK_C").unwrap();
    let l = builtin_theory("LBCK_L").unwrap();
    let r = compare_same_signature(c, l, 4, &SearchOptions::default()).unwrap();
    let Verdict::LeftNotRight(w) = &r.verdict else { panic!() };
    let text = w.to_model_text();
    println!("{text}");
    assert!(text.starts_with("model CBCK_C_4_"));
}
