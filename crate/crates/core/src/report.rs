//! The fixed batch of theorem checks: three basis comparisons, the
//! independence models, and a seeded relabeling closure check.
//!
//! Reports carry no timing and no worker count, so two runs with the same
//! size and seed serialize to identical bytes.

use std::time::Duration;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::SearchError;
use crate::model::{bundled_model, FiniteAlgebra};
use crate::search::{
    compare_same_signature, compare_with_constant_expansion, enumerate_models, verify_independence,
    ComparisonReport, IndependenceReport, SearchOptions,
};
use crate::theory::{builtin_theory, Theory};

pub const DEFAULT_SEED: u64 = 0x5eed;

/// One independence claim: `model` satisfies `hold` and violates `fail`.
#[derive(Clone, Copy, Debug)]
pub struct IndependenceFixture {
    pub model: &'static str,
    pub theory: &'static str,
    pub hold: &'static [&'static str],
    pub fail: &'static [&'static str],
}

pub const INDEPENDENCE_FIXTURES: &[IndependenceFixture] = &[
    IndependenceFixture { model: "mv_model_a", theory: "MV_M", hold: &["M1"], fail: &["M2"] },
    IndependenceFixture { model: "mv_model_b", theory: "MV_M", hold: &["M2"], fail: &["M1"] },
    IndependenceFixture { model: "bck_projection", theory: "CBCK_C", hold: &["C1"], fail: &["C2"] },
    IndependenceFixture { model: "bck_projection", theory: "LBCK_L", hold: &["L1"], fail: &["L2"] },
    IndependenceFixture { model: "bck_constant_one", theory: "CBCK_C", hold: &["C2"], fail: &["C1"] },
    IndependenceFixture { model: "bck_constant_one", theory: "LBCK_L", hold: &["L2"], fail: &["L1"] },
];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ComparisonKind {
    ConstantExpansion,
    SameSignature,
}

/// The three basis comparisons as (kind, left theory, right theory).
pub const BASIS_COMPARISONS: &[(ComparisonKind, &str, &str)] = &[
    (ComparisonKind::ConstantExpansion, "MV_A", "MV_M"),
    (ComparisonKind::SameSignature, "CBCK_C", "CBCK_B_elim"),
    (ComparisonKind::SameSignature, "LBCK_L", "LBCK_B_elim"),
];

fn theory(name: &str) -> &'static Theory {
    builtin_theory(name).expect("bundled theory")
}

pub fn run_comparison(
    kind: ComparisonKind,
    left: &str,
    right: &str,
    n: usize,
    opts: &SearchOptions,
) -> Result<ComparisonReport, SearchError> {
    match kind {
        ComparisonKind::ConstantExpansion => {
            compare_with_constant_expansion(theory(left), theory(right), n, opts)
        }
        ComparisonKind::SameSignature => compare_same_signature(theory(left), theory(right), n, opts),
    }
}

pub fn run_independence(f: &IndependenceFixture) -> Result<IndependenceReport, SearchError> {
    let m = bundled_model(f.model).expect("bundled model");
    verify_independence(theory(f.theory), &m, f.hold, f.fail)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClosureCheck {
    pub theory: String,
    pub size: usize,
    pub models: usize,
    /// Random relabelings that landed back in the enumerated set.
    pub members: usize,
    pub closed: bool,
}

/// Relabels every model by a fresh random bijection and looks the result up
/// in the (sorted) model list.
pub fn relabel_closure(
    t: &Theory,
    models: &[FiniteAlgebra],
    rng: &mut ChaCha8Rng,
) -> ClosureCheck {
    let size = models.first().map_or(0, FiniteAlgebra::size);
    let mut members = 0;
    for m in models {
        let mut perm: Vec<usize> = (0..m.size()).collect();
        perm.shuffle(rng);
        let image = m.relabel(&perm).cells();
        if models.binary_search_by(|x| x.cells().cmp(&image)).is_ok() {
            members += 1;
        }
    }
    ClosureCheck {
        theory: t.name.clone(),
        size,
        models: models.len(),
        members,
        closed: members == models.len(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum Outcome<T> {
    Done(T),
    BudgetExceeded { task: String },
}

impl<T> Outcome<T> {
    pub fn done(&self) -> Option<&T> {
        match self {
            Outcome::Done(t) => Some(t),
            Outcome::BudgetExceeded { .. } => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    BudgetExceeded,
}

impl Status {
    pub fn label(&self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::BudgetExceeded => "budget-exceeded",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TheoremReport {
    pub size: usize,
    pub seed: u64,
    pub status: Status,
    pub comparisons: Vec<Outcome<ComparisonReport>>,
    pub independence: Vec<IndependenceReport>,
    pub closure: Vec<Outcome<ClosureCheck>>,
}

#[derive(Clone, Debug)]
pub struct TheoremOptions {
    pub size: usize,
    pub workers: usize,
    /// Wall-clock limit for each search task.
    pub budget: Option<Duration>,
    pub seed: u64,
}

/// Runs every check. A search that runs out of budget becomes a
/// per-task outcome, so the rest of the report survives.
pub fn verify_theorems(opts: &TheoremOptions) -> Result<TheoremReport, SearchError> {
    let search = SearchOptions {
        workers: opts.workers,
        budget: opts.budget,
        ..Default::default()
    };
    // a zero budget cannot even start a search
    let starved = opts.budget.is_some_and(|b| b.is_zero());
    fn exceeded<T>(task: String) -> Outcome<T> {
        Outcome::BudgetExceeded { task }
    }

    let mut comparisons = Vec::new();
    for &(kind, left, right) in BASIS_COMPARISONS {
        let task = format!("{left} vs {right}");
        comparisons.push(if starved {
            exceeded(task)
        } else {
            match run_comparison(kind, left, right, opts.size, &search) {
                Ok(r) => Outcome::Done(r),
                Err(SearchError::BudgetExceeded(_)) => exceeded(task),
                Err(e) => return Err(e),
            }
        });
    }

    let independence = INDEPENDENCE_FIXTURES
        .iter()
        .map(run_independence)
        .collect::<Result<Vec<_>, _>>()?;

    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut closure = Vec::new();
    for &(_, left, right) in BASIS_COMPARISONS {
        for name in [left, right] {
            let task = format!("closure of {name}");
            closure.push(if starved {
                exceeded(task)
            } else {
                match enumerate_models(theory(name), opts.size, &search) {
                    Ok(e) => Outcome::Done(relabel_closure(theory(name), &e.models, &mut rng)),
                    Err(SearchError::BudgetExceeded(_)) => exceeded(task),
                    Err(e) => return Err(e),
                }
            });
        }
    }

    let all_done = comparisons.iter().all(|c| c.done().is_some())
        && closure.iter().all(|c| c.done().is_some());
    let all_good = comparisons
        .iter()
        .filter_map(Outcome::done)
        .all(|c| c.verdict.is_equal())
        && independence.iter().all(|r| r.passed)
        && closure.iter().filter_map(Outcome::done).all(|c| c.closed);
    let status = match (all_good, all_done) {
        (false, _) => Status::Fail,
        (true, false) => Status::BudgetExceeded,
        (true, true) => Status::Pass,
    };
    Ok(TheoremReport {
        size: opts.size,
        seed: opts.seed,
        status,
        comparisons,
        independence,
        closure,
    })
}
