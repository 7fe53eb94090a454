use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
        .display()
        .to_string()
}

fn run(args: &[&str]) -> (i32, String, String) {
    let Output { status, stdout, stderr } = Command::new(env!("CARGO_BIN_EXE_equibase"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        status.code().expect("exit code"),
        String::from_utf8(stdout).unwrap(),
        String::from_utf8(stderr).unwrap(),
    )
}

#[test]
fn term_echoes_canonical_form() {
    let (code, out, _) = run(&["term", "imp( imp(x, x) ,y)"]);
    assert_eq!((code, out.as_str()), (0, "imp(imp(x,x),y)\n"));
    let (code, out, _) = run(&["term", "plus(x,zero)", "--signature", "MV210", "--json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["term"], "plus(x,zero)");
    assert_eq!(run(&["term", "plus(x"]).0, 2);
    assert_eq!(run(&["term", "imp(x)"]).0, 2);
}

#[test]
fn check_proof_exit_codes() {
    let (code, _, err) = run(&["check-proof"]);
    assert_eq!(code, 2, "{err}");
    let (code, out, _) = run(&["check-proof", "--bundled"]);
    assert_eq!(code, 0);
    assert!(out.ends_with("all scripts verified\n"));
    let (code, out, _) = run(&["check-proof", &fixture("corrupted.proof")]);
    assert_eq!(code, 1);
    assert!(out.contains("FAIL CBCK_B/lemma_C2_in_CBCK at step 0 (line 7) by B1"), "{out}");
    assert_eq!(run(&["check-proof", "no/such/file.proof"]).0, 2);
}

#[test]
fn eval_independence_model() {
    let (code, out, _) = run(&["eval", "bck_projection", "C1"]);
    assert_eq!((code, out.as_str()), (0, "holds\n"));
    let (code, out, _) = run(&["eval", &fixture("projection.model"), "C2", "--theory", "CBCK_C"]);
    assert_eq!(code, 1);
    assert!(out.starts_with("fails at x=0, y=1, z=0"), "{out}");
    let (code, out, _) = run(&["eval", "bck_constant_one", "imp(x,y) = imp(y,x)", "--json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["holds"], true);
    let (code, out, _) = run(&["eval", "mv_model_a", "M2", "--exhaustive-counterexamples"]);
    assert_eq!(code, 1);
    assert!(out.lines().count() > 2);
    assert_eq!(run(&["eval", "nonexistent", "C1"]).0, 2);
}

#[test]
fn chain_reduct_is_the_three_element_implication() {
    let (code, out, _) = run(&["chain", "--n", "3", "--reduct"]);
    assert_eq!(code, 0);
    assert_eq!(out, "model L3_imp over BCK2\nsize 3\ntable imp\n2 2 2\n1 2 2\n0 1 2\n");
    let (code, out, _) = run(&["chain", "--n", "2", "--reduct", "--keep-one"]);
    assert_eq!(code, 0);
    assert!(out.contains("table one\n1\n"));
    assert_eq!(run(&["chain", "--n", "1"]).0, 2);
    assert_eq!(run(&["chain", "--n", "3", "--keep-one"]).0, 2);
}

#[test]
fn models_and_sizes() {
    let (code, out, _) = run(&["models", "CBCK_C", "--size", "1..3", "--count-only", "--json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    let counts: Vec<u64> = v["sizes"].as_array().unwrap().iter().map(|s| s["count"].as_u64().unwrap()).collect();
    assert_eq!(counts, vec![1, 2, 9]);
    let (code, out, _) = run(&["models", "MV_A", "--size", "3", "--up-to-iso"]);
    assert_eq!(code, 0);
    assert_eq!(out.matches("model MV_A_3_").count(), 1);
    assert_eq!(run(&["models", "MV_A", "--size", "4"]).0, 2);
    assert_eq!(run(&["models", "NOPE", "--size", "2"]).0, 2);
}

#[test]
fn budget_exhaustion_is_exit_three() {
    let args = ["models", "MV_M", "--size", "4", "--stretch", "--budget-secs", "0.2", "--json"];
    let (code, out, _) = run(&args);
    assert_eq!(code, 3);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["budget_exceeded"], true);
}

#[test]
fn compare_verdicts() {
    assert_eq!(run(&["compare", "CBCK_C", "CBCK_B_elim", "--size", "3"]).0, 0);
    assert_eq!(run(&["compare", "MV_A", "MV_M", "--size", "2"]).0, 0);
    let (code, out, _) = run(&["compare", "MV_A", "MV_M", "--size", "2", "--right-only", "M1"]);
    assert_eq!(code, 1);
    assert!(out.contains("right-not-left"));
    assert_eq!(run(&["compare", "MV_M", "CBCK_C", "--size", "2"]).0, 2);
}

#[test]
fn independence_fixtures_pass() {
    let (code, out, _) = run(&["independence"]);
    assert_eq!(code, 0);
    assert_eq!(out.matches("independent as claimed").count(), 6);
    let args = ["independence", "mv_model_a", "MV_M", "--hold", "M2", "--fail", "M1"];
    assert_eq!(run(&args).0, 1);
    assert_eq!(run(&["independence", "mv_model_a"]).0, 2);
}

#[test]
fn verify_theorems_is_deterministic() {
    let args = ["verify-theorems", "--size", "3", "--workers", "4", "--json"];
    let (c1, a, _) = run(&args);
    let (c2, b, _) = run(&args);
    assert_eq!((c1, c2), (0, 0));
    assert_eq!(a, b);
    let v: serde_json::Value = serde_json::from_str(&a).unwrap();
    assert_eq!(v["status"], "pass");
    let (c3, single, _) = run(&["verify-theorems", "--size", "3", "--json"]);
    assert_eq!(c3, 0);
    assert_eq!(single, a);
    for n in ["1", "2"] {
        assert_eq!(run(&["verify-theorems", "--size", n]).0, 0);
    }
    assert_eq!(run(&["verify-theorems", "--size", "4"]).0, 2);
}
