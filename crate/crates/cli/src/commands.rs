use std::fmt::Write as _;
use std::path::Path;
use std::time::{Duration, Instant};

use anyhow::{anyhow, bail, Context, Result};
use serde::Serialize;
use serde_json::json;

use equibase::model::{bundled_model, SatReport};
use equibase::report::{verify_theorems, Outcome, Status, TheoremOptions, INDEPENDENCE_FIXTURES};
use equibase::search::{Enumeration, IndependenceReport};
use equibase::term::format_term;
use equibase::{
    bck_reduct, builtin_theories, compare_same_signature, compare_with_constant_expansion,
    enumerate_models, lukasiewicz_chain, parse_model, parse_term, parse_theory, verify_independence,
    Catalog, ComparisonReport, FiniteAlgebra, Identity, ProofLibrary, SearchError, SearchOptions,
    Signature, Theory, Verdict,
};

use crate::{Cli, Command, Global};

pub const PASS: u8 = 0;
pub const FAIL: u8 = 1;
pub const USAGE: u8 = 2;
pub const BUDGET: u8 = 3;

const DEFAULT_MAX_SIZE: usize = 3;
const STRETCH_MAX_SIZE: usize = 6;

/// Runs one command and maps every outcome to an exit status.
pub fn run(cli: &Cli) -> u8 {
    match dispatch(cli) {
        Ok(code) => code,
        Err(e) => {
            let budget = e
                .downcast_ref::<SearchError>()
                .is_some_and(|s| matches!(s, SearchError::BudgetExceeded(_)));
            if cli.global.json {
                println!("{}", json!({ "error": format!("{e:#}"), "budget_exceeded": budget }));
            }
            eprintln!("error: {e:#}");
            if budget {
                BUDGET
            } else {
                USAGE
            }
        }
    }
}

fn emit<T: Serialize>(g: &Global, value: &T, text: impl FnOnce() -> String) {
    if g.json {
        println!("{}", serde_json::to_string_pretty(value).expect("serializable"));
    } else {
        print!("{}", text());
    }
}

fn catalog(g: &Global) -> Result<Catalog> {
    match &g.theories {
        None => Ok(builtin_theories().clone()),
        Some(path) => {
            let extra = std::fs::read_to_string(path)
                .with_context(|| format!("reading {}", path.display()))?;
            let text = format!("{}\n{extra}", builtin_theories().to_text());
            parse_theory(&text).with_context(|| format!("in {}", path.display()))
        }
    }
}

fn theory<'c>(cat: &'c Catalog, name: &str) -> Result<&'c Theory> {
    cat.theory(name).ok_or_else(|| anyhow!("unknown theory `{name}`"))
}

fn load_model(cat: &Catalog, arg: &str) -> Result<FiniteAlgebra> {
    let path = Path::new(arg);
    if path.exists() {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {arg}"))?;
        return parse_model(&text, cat).with_context(|| format!("in {arg}"));
    }
    bundled_model(arg).ok_or_else(|| anyhow!("`{arg}` is neither a model file nor a bundled model"))
}

fn check_size(g: &Global, n: usize) -> Result<()> {
    let max = if g.stretch { STRETCH_MAX_SIZE } else { DEFAULT_MAX_SIZE };
    if n == 0 || n > max {
        bail!(
            "size {n} is outside 1..={max}{}",
            if g.stretch { "" } else { " (use --stretch for larger sizes)" }
        );
    }
    Ok(())
}

fn search_options(g: &Global) -> Result<SearchOptions> {
    let budget = match g.budget_secs {
        Some(s) if !(s.is_finite() && s >= 0.0) => bail!("--budget-secs must be a non-negative number"),
        Some(s) => Some(Duration::from_secs_f64(s)),
        None => None,
    };
    Ok(SearchOptions {
        workers: g.workers as usize,
        budget,
        ..Default::default()
    })
}

fn union_signature(cat: &Catalog) -> Result<Signature> {
    let mut ops: Vec<(&str, usize)> = Vec::new();
    for s in &cat.signatures {
        for (op, a) in s.ops() {
            match ops.iter().find(|(o, _)| o == op) {
                Some((_, b)) if b != a => bail!("operator `{op}` is declared with two arities"),
                Some(_) => {}
                None => ops.push((op, *a)),
            }
        }
    }
    Ok(Signature::new("ALL", ops)?)
}

fn dispatch(cli: &Cli) -> Result<u8> {
    let g = &cli.global;
    let cat = catalog(g)?;
    match &cli.command {
        Command::Term { text, signature } => {
            let sig = match signature {
                Some(name) => cat
                    .signature(name)
                    .cloned()
                    .ok_or_else(|| anyhow!("unknown signature `{name}`"))?,
                None => union_signature(&cat)?,
            };
            let t = parse_term(text, &sig)?;
            let canonical = format_term(&t);
            let value = json!({ "term": canonical, "size": t.size(), "variables": t.variables() });
            emit(g, &value, || format!("{canonical}\n"));
            Ok(PASS)
        }
        Command::CheckProof { files, bundled } => check_proof(g, &cat, files, *bundled),
        Command::Eval {
            model,
            identity,
            theory,
            exhaustive_counterexamples,
        } => eval(g, &cat, model, identity, theory.as_deref(), *exhaustive_counterexamples),
        Command::Chain { n, reduct, keep_one } => {
            let l = lukasiewicz_chain(*n)?;
            let m = if *reduct { bck_reduct(&l, *keep_one)? } else { l };
            emit(g, &m, || m.to_model_text());
            Ok(PASS)
        }
        Command::Models {
            theory: name,
            size,
            up_to_iso,
            count_only,
        } => models(g, &cat, name, size, *up_to_iso, *count_only),
        Command::Compare {
            left,
            right,
            size,
            right_only,
        } => compare(g, &cat, left, right, *size, right_only),
        Command::Independence {
            model,
            theory: name,
            hold,
            fail,
        } => independence(g, &cat, model.as_deref(), name.as_deref(), hold, fail),
        Command::VerifyTheorems { size } => {
            check_size(g, *size)?;
            let opts = search_options(g)?;
            let report = verify_theorems(&TheoremOptions {
                size: *size,
                workers: opts.workers,
                budget: opts.budget,
                seed: g.seed,
            })?;
            emit(g, &report, || theorem_text(&report));
            Ok(match report.status {
                Status::Pass => PASS,
                Status::Fail => FAIL,
                Status::BudgetExceeded => BUDGET,
            })
        }
    }
}

fn check_proof(g: &Global, cat: &Catalog, files: &[std::path::PathBuf], bundled: bool) -> Result<u8> {
    if files.is_empty() && !bundled {
        bail!("no proof files given (pass files or --bundled)");
    }
    let mut sources: Vec<(String, String)> = Vec::new();
    if bundled {
        for (name, text) in equibase::bundled_proofs() {
            sources.push((name.to_string(), text.to_string()));
        }
    }
    for f in files {
        let text = std::fs::read_to_string(f).with_context(|| format!("reading {}", f.display()))?;
        sources.push((f.display().to_string(), text));
    }
    let mut lib = ProofLibrary::new(cat);
    let mut files_out = Vec::new();
    let mut text = String::new();
    let mut all_ok = true;
    for (name, src) in &sources {
        let reports = lib.check_text(src).with_context(|| format!("in {name}"))?;
        for r in &reports {
            all_ok &= r.verified;
            if r.verified {
                let _ = writeln!(text, "ok   {}/{} ({} steps)", r.theory, r.script, r.steps.len());
            } else {
                let _ = write!(text, "FAIL {}/{}", r.theory, r.script);
                match r.first_failure() {
                    Some(i) => {
                        let s = &r.steps[i];
                        let _ = writeln!(text, " at step {} (line {}) by {}", s.index, s.line, s.justification);
                        if let equibase::proof::StepVerdict::Failed { reason, .. } = &s.verdict {
                            let _ = writeln!(text, "     {reason}");
                        }
                    }
                    None => {
                        let _ = writeln!(text);
                    }
                }
                for e in &r.errors {
                    let _ = writeln!(text, "     {e}");
                }
            }
        }
        files_out.push(json!({ "file": name, "scripts": reports }));
    }
    let _ = writeln!(text, "{}", if all_ok { "all scripts verified" } else { "verification failed" });
    emit(g, &json!({ "verified": all_ok, "files": files_out }), || text);
    Ok(if all_ok { PASS } else { FAIL })
}

fn sat_text(r: &SatReport) -> String {
    match &r.counterexample {
        None => "holds".into(),
        Some(c) => {
            let a: Vec<String> = c.assignment.iter().map(|(k, v)| format!("{k}={v}")).collect();
            format!("fails at {} (lhs {}, rhs {})", a.join(", "), c.lhs, c.rhs)
        }
    }
}

fn eval(
    g: &Global,
    cat: &Catalog,
    model: &str,
    identity: &str,
    theory_name: Option<&str>,
    exhaustive: bool,
) -> Result<u8> {
    let m = load_model(cat, model)?;
    let ident = if let Some((l, r)) = identity.split_once('=') {
        Identity::new(
            "given",
            parse_term(l.trim(), m.signature())?,
            parse_term(r.trim(), m.signature())?,
        )
    } else {
        let candidates: Vec<&Theory> = match theory_name {
            Some(t) => vec![theory(cat, t)?],
            None => cat
                .theories
                .iter()
                .filter(|t| t.signature.same_ops(m.signature()))
                .collect(),
        };
        candidates
            .iter()
            .find_map(|t| t.get(identity))
            .cloned()
            .ok_or_else(|| anyhow!("no identity `{identity}` over {}", m.signature()))?
    };
    let report = m.satisfies(&ident)?;
    let all = if exhaustive { m.counterexamples(&ident)? } else { Vec::new() };
    let value = json!({
        "model": m.name,
        "identity": ident.to_string(),
        "holds": report.holds,
        "counterexample": report.counterexample,
        "counterexamples": if exhaustive { Some(&all) } else { None },
    });
    emit(g, &value, || {
        let mut s = format!("{}\n", sat_text(&report));
        for c in &all {
            let a: Vec<String> = c.assignment.iter().map(|(k, v)| format!("{k}={v}")).collect();
            let _ = writeln!(s, "  {} (lhs {}, rhs {})", a.join(", "), c.lhs, c.rhs);
        }
        s
    });
    Ok(if report.holds { PASS } else { FAIL })
}

fn parse_sizes(range: &str) -> Result<Vec<usize>> {
    let parse = |s: &str| s.trim().parse::<usize>().with_context(|| format!("bad size `{s}`"));
    Ok(match range.split_once("..") {
        Some((a, b)) => {
            let (a, b) = (parse(a)?, parse(b)?);
            if a > b {
                bail!("empty size range {range}");
            }
            (a..=b).collect()
        }
        None => vec![parse(range)?],
    })
}

fn models(g: &Global, cat: &Catalog, name: &str, size: &str, up_to_iso: bool, count_only: bool) -> Result<u8> {
    let t = theory(cat, name)?;
    let sizes = parse_sizes(size)?;
    for &n in &sizes {
        check_size(g, n)?;
    }
    let opts = SearchOptions {
        up_to_iso,
        count_only,
        ..search_options(g)?
    };
    #[derive(Serialize)]
    struct PerSize {
        size: usize,
        count: usize,
        nodes: u64,
        seconds: f64,
        models: Vec<String>,
    }
    let mut rows = Vec::new();
    let mut text = String::new();
    for &n in &sizes {
        let start = Instant::now();
        let e: Enumeration = enumerate_models(t, n, &opts)?;
        let seconds = start.elapsed().as_secs_f64();
        for m in &e.models {
            let _ = writeln!(text, "{}", m.to_model_text());
        }
        let _ = writeln!(text, "# {} size {}: {} models, {} nodes, {:.3}s", t.name, n, e.count, e.nodes, seconds);
        rows.push(PerSize {
            size: n,
            count: e.count,
            nodes: e.nodes,
            seconds,
            models: e.models.iter().map(FiniteAlgebra::to_model_text).collect(),
        });
    }
    let value = json!({ "theory": t.name, "up_to_iso": up_to_iso, "sizes": rows });
    emit(g, &value, || text);
    Ok(PASS)
}

fn comparison_text(r: &ComparisonReport) -> String {
    let mut s = format!(
        "{} vs {} at size {} ({}): {} ({} vs {} models)\n",
        r.left,
        r.right,
        r.size,
        r.mode.label(),
        r.verdict.label(),
        r.left_count,
        r.right_count
    );
    match &r.verdict {
        Verdict::Equal => {}
        Verdict::LeftNotRight(w) | Verdict::RightNotLeft(w) => {
            let _ = write!(s, "witness:\n{}", w.to_model_text());
        }
    }
    s
}

fn compare(g: &Global, cat: &Catalog, left: &str, right: &str, n: usize, right_only: &[String]) -> Result<u8> {
    check_size(g, n)?;
    let l = theory(cat, left)?;
    let mut r = theory(cat, right)?.clone();
    if !right_only.is_empty() {
        for name in right_only {
            if r.get(name).is_none() {
                bail!("{} has no identity `{name}`", r.name);
            }
        }
        let keep: Vec<&str> = right_only.iter().map(String::as_str).collect();
        r = r.restricted(&format!("{}[{}]", r.name, keep.join(",")), &keep);
    }
    let opts = search_options(g)?;
    let report = if l.signature.same_ops(&r.signature) {
        compare_same_signature(l, &r, n, &opts)?
    } else {
        compare_with_constant_expansion(l, &r, n, &opts)?
    };
    emit(g, &report, || comparison_text(&report));
    Ok(if report.verdict.is_equal() { PASS } else { FAIL })
}

fn independence_text(r: &IndependenceReport) -> String {
    let mut s = format!(
        "{} in {}: {}\n",
        r.model,
        r.theory,
        if r.passed { "independent as claimed" } else { "claim violated" }
    );
    for c in &r.checks {
        let want = if c.expected_to_hold { "holds" } else { "fails" };
        let _ = writeln!(s, "  {} expected {want}: {}", c.result.identity, sat_text(&c.result));
    }
    s
}

fn independence(
    g: &Global,
    cat: &Catalog,
    model: Option<&str>,
    theory_name: Option<&str>,
    hold: &[String],
    fail: &[String],
) -> Result<u8> {
    let reports = match (model, theory_name) {
        (None, None) => INDEPENDENCE_FIXTURES
            .iter()
            .map(equibase::report::run_independence)
            .collect::<Result<Vec<_>, _>>()?,
        (Some(m), Some(t)) => {
            let m = load_model(cat, m)?;
            let hold: Vec<&str> = hold.iter().map(String::as_str).collect();
            let fail: Vec<&str> = fail.iter().map(String::as_str).collect();
            vec![verify_independence(theory(cat, t)?, &m, &hold, &fail)?]
        }
        _ => bail!("give both a model and a theory, or neither"),
    };
    let passed = reports.iter().all(|r| r.passed);
    emit(g, &json!({ "passed": passed, "reports": reports }), || {
        reports.iter().map(independence_text).collect()
    });
    Ok(if passed { PASS } else { FAIL })
}

fn theorem_text(r: &equibase::report::TheoremReport) -> String {
    let mut s = String::new();
    for c in &r.comparisons {
        match c {
            Outcome::Done(c) => s.push_str(&comparison_text(c)),
            Outcome::BudgetExceeded { task } => {
                let _ = writeln!(s, "{task} at size {}: budget exceeded", r.size);
            }
        }
    }
    for i in &r.independence {
        s.push_str(&independence_text(i));
    }
    for c in &r.closure {
        match c {
            Outcome::Done(c) => {
                let _ = writeln!(
                    s,
                    "relabeling closure of {}: {}/{} images found",
                    c.theory, c.members, c.models
                );
            }
            Outcome::BudgetExceeded { task } => {
                let _ = writeln!(s, "{task}: budget exceeded");
            }
        }
    }
    let _ = writeln!(s, "status: {} (seed {})", r.status.label(), r.seed);
    s
}
