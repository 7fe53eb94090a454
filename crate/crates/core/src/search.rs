//! Backtracking enumeration of finite models and comparisons built on it.
//!
//! Cells (table entries) are filled depth first in one fixed order:
//! operators in signature order, each table row-major, values ascending.
//! Every identity is instantiated once over all tuples of elements. An
//! instance waits on the first undefined cell its evaluation runs into and is
//! re-evaluated when that cell gets a value; a violated instance prunes the
//! branch. Because the order is fixed, models come out sorted by their
//! concatenated tables, whatever the number of workers.

use std::sync::atomic::{AtomicBool, Ordering};
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{ModelError, SearchError};
use crate::model::{next_permutation, Assignment, CompiledIdentity, FiniteAlgebra, SatReport};
use crate::term::Term;
use crate::theory::{Identity, Signature, Theory};

/// Largest size for which `up_to_iso` is accepted.
pub const ISO_SEARCH_MAX_SIZE: usize = 6;

const UNDEF: u8 = u8::MAX;
const BUDGET_CHECK_INTERVAL: u64 = 4096;
/// Prefix subtrees handed to workers number at least this many (when the
/// tree is that wide). Independent of the worker count, so output and node
/// counts never depend on it.
const MIN_SPLIT: usize = 64;

#[derive(Clone, Debug)]
pub struct SearchOptions {
    pub up_to_iso: bool,
    pub count_only: bool,
    pub workers: usize,
    pub budget: Option<Duration>,
    /// How many prune records to keep; zero disables the log.
    pub prune_log: usize,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            up_to_iso: false,
            count_only: false,
            workers: 1,
            budget: None,
            prune_log: 0,
        }
    }
}

/// Operation tables with some entries still open.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PartialAlgebra {
    pub signature: Signature,
    pub size: usize,
    pub tables: Vec<Vec<Option<usize>>>,
}

impl PartialAlgebra {
    fn from_cells(sig: &Signature, n: usize, cells: &[u8]) -> PartialAlgebra {
        let mut tables = Vec::new();
        let mut at = 0;
        for (_, arity) in sig.ops() {
            let len = n.pow(*arity as u32);
            tables.push(
                cells[at..at + len]
                    .iter()
                    .map(|&c| (c != UNDEF).then_some(c as usize))
                    .collect(),
            );
            at += len;
        }
        PartialAlgebra {
            signature: sig.clone(),
            size: n,
            tables,
        }
    }

    /// `Ok(None)` when evaluation needs an open entry.
    pub fn eval_term(&self, t: &Term, v: &Assignment) -> Result<Option<usize>, ModelError> {
        Ok(match t {
            Term::Var(x) => Some(
                v.get(x.as_ref())
                    .copied()
                    .ok_or_else(|| ModelError::UnboundVariable(x.to_string()))?,
            ),
            Term::App(op, args) => {
                let idx = self.signature.index_of(op).ok_or_else(|| {
                    ModelError::SignatureMismatch(format!("`{op}` is not an operator"))
                })?;
                let mut cell = 0;
                for a in args.iter() {
                    match self.eval_term(a, v)? {
                        Some(e) => cell = cell * self.size + e,
                        None => return Ok(None),
                    }
                }
                self.tables[idx][cell]
            }
        })
    }

    pub fn is_total(&self) -> bool {
        self.tables.iter().flatten().all(Option::is_some)
    }

    pub fn to_algebra(&self, name: &str) -> Option<FiniteAlgebra> {
        let tables = self
            .tables
            .iter()
            .map(|t| t.iter().copied().collect::<Option<Vec<_>>>())
            .collect::<Option<Vec<_>>>()?;
        FiniteAlgebra::new(name, &self.signature, self.size, tables).ok()
    }
}

/// Why a branch was cut: the partial tables at the cut and one ground
/// instance that already evaluates to different values.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PruneRecord {
    pub partial: PartialAlgebra,
    pub identity: String,
    pub assignment: Assignment,
}

impl PruneRecord {
    /// Re-evaluates the recorded instance from scratch.
    pub fn recheck(&self, t: &Theory) -> bool {
        let Some(i) = t.get(&self.identity) else {
            return false;
        };
        matches!(
            (
                self.partial.eval_term(&i.lhs, &self.assignment),
                self.partial.eval_term(&i.rhs, &self.assignment),
            ),
            (Ok(Some(l)), Ok(Some(r))) if l != r
        )
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Enumeration {
    pub theory: String,
    pub size: usize,
    pub up_to_iso: bool,
    pub count: usize,
    /// Empty in count-only mode.
    pub models: Vec<FiniteAlgebra>,
    /// Cell assignments tried.
    pub nodes: u64,
    pub prunes: Vec<PruneRecord>,
}

/// Identities instantiated over every tuple of elements of one size.
struct Space {
    n: usize,
    sig: Signature,
    offsets: Vec<usize>,
    ncells: usize,
    idents: Vec<CompiledIdentity>,
    /// (identity index, start of its values in `values`)
    instances: Vec<(usize, usize)>,
    values: Vec<usize>,
}

enum Outcome {
    Holds,
    Fails,
    Blocked(usize),
}

impl Space {
    fn new(t: &Theory, n: usize) -> Result<Space, SearchError> {
        let sig = t.signature.clone();
        let mut offsets = Vec::new();
        let mut ncells = 0;
        for (_, arity) in sig.ops() {
            offsets.push(ncells);
            ncells += n.pow(*arity as u32);
        }
        let idents = t
            .identities
            .iter()
            .map(|i| CompiledIdentity::new(i, &sig))
            .collect::<Result<Vec<_>, _>>()?;
        let mut instances = Vec::new();
        let mut values = Vec::new();
        for (k, c) in idents.iter().enumerate() {
            let mut tuple = vec![0; c.vars.len()];
            loop {
                instances.push((k, values.len()));
                values.extend_from_slice(&tuple);
                if !crate::model::next_tuple(&mut tuple, n) {
                    break;
                }
            }
        }
        Ok(Space {
            n,
            sig,
            offsets,
            ncells,
            idents,
            instances,
            values,
        })
    }

    fn eval(&self, inst: usize, cells: &[u8], stack: &mut Vec<usize>) -> Outcome {
        let (k, start) = self.instances[inst];
        let c = &self.idents[k];
        let vals = &self.values[start..start + c.vars.len()];
        let lookup = |op: usize, idx: usize| {
            let cell = self.offsets[op] + idx;
            match cells[cell] {
                UNDEF => Err(cell),
                v => Ok(v as usize),
            }
        };
        let l = match c.lhs.run(self.n, vals, stack, lookup) {
            Ok(v) => v,
            Err(cell) => return Outcome::Blocked(cell),
        };
        match c.rhs.run(self.n, vals, stack, lookup) {
            Ok(r) if r == l => Outcome::Holds,
            Ok(_) => Outcome::Fails,
            Err(cell) => Outcome::Blocked(cell),
        }
    }

    fn prune_record(&self, inst: usize, cells: &[u8]) -> PruneRecord {
        let (k, start) = self.instances[inst];
        let c = &self.idents[k];
        PruneRecord {
            partial: PartialAlgebra::from_cells(&self.sig, self.n, cells),
            identity: c.name.clone(),
            assignment: c
                .vars
                .iter()
                .cloned()
                .zip(self.values[start..].iter().copied())
                .collect(),
        }
    }

    fn algebra(&self, cells: &[u8]) -> FiniteAlgebra {
        PartialAlgebra::from_cells(&self.sig, self.n, cells)
            .to_algebra("")
            .expect("complete assignment")
    }
}

struct Budget {
    start: Instant,
    limit: Option<Duration>,
    stop: AtomicBool,
}

impl Budget {
    fn exceeded(&self) -> bool {
        if self.stop.load(Ordering::Relaxed) {
            return true;
        }
        if self.limit.is_some_and(|l| self.start.elapsed() > l) {
            self.stop.store(true, Ordering::Relaxed);
            return true;
        }
        false
    }
}

struct Found {
    count: usize,
    models: Vec<FiniteAlgebra>,
    nodes: u64,
    prunes: Vec<PruneRecord>,
    prefixes: Vec<Vec<u8>>,
}

struct Walker<'a> {
    space: &'a Space,
    opts: &'a SearchOptions,
    budget: &'a Budget,
    cells: Vec<u8>,
    watch: Vec<Vec<u32>>,
    trail: Vec<usize>,
    stack: Vec<usize>,
    out: Found,
}

enum Start {
    Fresh,
    Contradiction(usize),
}

impl<'a> Walker<'a> {
    fn new(space: &'a Space, opts: &'a SearchOptions, budget: &'a Budget) -> (Walker<'a>, Start) {
        let mut w = Walker {
            space,
            opts,
            budget,
            cells: vec![UNDEF; space.ncells],
            watch: vec![Vec::new(); space.ncells],
            trail: Vec::new(),
            stack: Vec::new(),
            out: Found {
                count: 0,
                models: Vec::new(),
                nodes: 0,
                prunes: Vec::new(),
                prefixes: Vec::new(),
            },
        };
        for inst in 0..space.instances.len() {
            match space.eval(inst, &w.cells, &mut w.stack) {
                Outcome::Holds => {}
                Outcome::Fails => return (w, Start::Contradiction(inst)),
                Outcome::Blocked(c) => w.watch[c].push(inst as u32),
            }
        }
        (w, Start::Fresh)
    }

    fn log_prune(&mut self, inst: usize) {
        if self.out.prunes.len() < self.opts.prune_log {
            let rec = self.space.prune_record(inst, &self.cells);
            self.out.prunes.push(rec);
        }
    }

    /// Sets cell `d` and wakes its watchers; on conflict everything is undone.
    fn assign(&mut self, d: usize, v: u8) -> Result<usize, usize> {
        let mark = self.trail.len();
        self.cells[d] = v;
        for k in 0..self.watch[d].len() {
            let inst = self.watch[d][k] as usize;
            match self.space.eval(inst, &self.cells, &mut self.stack) {
                Outcome::Holds => {}
                Outcome::Fails => {
                    self.log_prune(inst);
                    self.undo(d, mark);
                    return Err(inst);
                }
                Outcome::Blocked(c) => {
                    self.watch[c].push(inst as u32);
                    self.trail.push(c);
                }
            }
        }
        Ok(mark)
    }

    fn undo(&mut self, d: usize, mark: usize) {
        while self.trail.len() > mark {
            let c = self.trail.pop().expect("nonempty");
            self.watch[c].pop();
        }
        self.cells[d] = UNDEF;
    }

    /// Replays a surviving prefix without counting nodes.
    fn force(&mut self, prefix: &[u8]) {
        for (d, &v) in prefix.iter().enumerate() {
            self.assign(d, v).expect("prefix was consistent");
        }
    }

    /// Explores cells `d..limit`. Complete branches become models when
    /// `limit` covers every cell and `prefixes` is off.
    fn dfs(&mut self, d: usize, limit: usize, prefixes: bool) -> Result<(), SearchError> {
        if d == limit {
            if prefixes {
                self.out.prefixes.push(self.cells[..limit].to_vec());
            } else {
                self.emit();
            }
            return Ok(());
        }
        for v in 0..self.space.n as u8 {
            self.out.nodes += 1;
            if self.out.nodes % BUDGET_CHECK_INTERVAL == 0 && self.budget.exceeded() {
                return Err(SearchError::BudgetExceeded(
                    self.opts.budget.unwrap_or_default().as_secs_f64(),
                ));
            }
            if let Ok(mark) = self.assign(d, v) {
                let r = self.dfs(d + 1, limit, prefixes);
                self.undo(d, mark);
                r?;
            }
        }
        Ok(())
    }

    fn emit(&mut self) {
        if self.opts.up_to_iso && !is_least_relabeling(self.space, &self.cells) {
            return;
        }
        self.out.count += 1;
        if !self.opts.count_only {
            let m = self.space.algebra(&self.cells);
            self.out.models.push(m);
        }
    }
}

fn is_least_relabeling(space: &Space, cells: &[u8]) -> bool {
    let m = space.algebra(cells);
    let own: Vec<usize> = cells.iter().map(|&c| c as usize).collect();
    let mut perm: Vec<usize> = (0..space.n).collect();
    while next_permutation(&mut perm) {
        if m.relabel(&perm).cells() < own {
            return false;
        }
    }
    true
}

/// Every model of `t` on `{0..n-1}`, sorted by concatenated tables.
pub fn enumerate_models(t: &Theory, n: usize, opts: &SearchOptions) -> Result<Enumeration, SearchError> {
    if n == 0 {
        return Err(ModelError::InvalidSize { min: 1, got: 0 }.into());
    }
    if opts.up_to_iso && n > ISO_SEARCH_MAX_SIZE {
        return Err(SearchError::IsoBoundExceeded {
            max: ISO_SEARCH_MAX_SIZE,
            got: n,
        });
    }
    if n >= UNDEF as usize {
        return Err(ModelError::InvalidSize { min: 1, got: n }.into());
    }
    let space = Space::new(t, n)?;
    let budget = Budget {
        start: Instant::now(),
        limit: opts.budget,
        stop: AtomicBool::new(false),
    };
    let mut result = Enumeration {
        theory: t.name.clone(),
        size: n,
        up_to_iso: opts.up_to_iso,
        count: 0,
        models: Vec::new(),
        nodes: 0,
        prunes: Vec::new(),
    };

    let (mut root, start) = Walker::new(&space, opts, &budget);
    if let Start::Contradiction(inst) = start {
        root.log_prune(inst);
        result.prunes = root.out.prunes;
        return Ok(result);
    }
    let mut split = 0;
    while split < space.ncells && n.pow(split as u32) < MIN_SPLIT {
        split += 1;
    }
    root.dfs(0, split, true)?;
    let prefixes = std::mem::take(&mut root.out.prefixes);
    result.nodes = root.out.nodes;
    result.prunes = root.out.prunes;

    let job = |prefix: &Vec<u8>| -> Result<Found, SearchError> {
        let (mut w, _) = Walker::new(&space, opts, &budget);
        w.force(prefix);
        w.dfs(prefix.len(), space.ncells, false)?;
        Ok(w.out)
    };
    let found: Vec<Result<Found, SearchError>> = if opts.workers <= 1 {
        prefixes.iter().map(job).collect()
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(opts.workers)
            .build()
            .expect("thread pool");
        pool.install(|| prefixes.par_iter().map(job).collect())
    };
    for f in found {
        let f = f?;
        result.count += f.count;
        result.models.extend(f.models);
        result.nodes += f.nodes;
        let room = opts.prune_log.saturating_sub(result.prunes.len());
        result.prunes.extend(f.prunes.into_iter().take(room));
    }
    for (k, m) in result.models.iter_mut().enumerate() {
        m.name = format!("{}_{}_{}", t.name, n, k + 1);
    }
    Ok(result)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ComparisonMode {
    SameSignature,
    ConstantExpansion,
}

impl ComparisonMode {
    pub fn label(&self) -> &'static str {
        match self {
            ComparisonMode::SameSignature => "same-signature",
            ComparisonMode::ConstantExpansion => "constant-expansion",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case", tag = "verdict", content = "witness")]
pub enum Verdict {
    Equal,
    /// A model of the left theory that the right one rejects.
    LeftNotRight(FiniteAlgebra),
    RightNotLeft(FiniteAlgebra),
}

impl Verdict {
    pub fn is_equal(&self) -> bool {
        matches!(self, Verdict::Equal)
    }

    pub fn label(&self) -> &'static str {
        match self {
            Verdict::Equal => "equal",
            Verdict::LeftNotRight(_) => "left-not-right",
            Verdict::RightNotLeft(_) => "right-not-left",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComparisonReport {
    pub left: String,
    pub right: String,
    pub size: usize,
    pub mode: ComparisonMode,
    pub left_count: usize,
    pub right_count: usize,
    #[serde(flatten)]
    pub verdict: Verdict,
}

fn full_tables(opts: &SearchOptions) -> SearchOptions {
    SearchOptions {
        up_to_iso: false,
        count_only: false,
        prune_log: 0,
        ..opts.clone()
    }
}

/// Compares the model sets of two theories over the same operators.
pub fn compare_same_signature(
    t1: &Theory,
    t2: &Theory,
    n: usize,
    opts: &SearchOptions,
) -> Result<ComparisonReport, SearchError> {
    if !t1.signature.same_ops(&t2.signature) {
        return Err(SearchError::SignatureMismatch(format!(
            "{} is over {}, {} is over {}",
            t1.name, t1.signature, t2.name, t2.signature
        )));
    }
    let opts = full_tables(opts);
    let left = enumerate_models(t1, n, &opts)?.models;
    let right = enumerate_models(t2, n, &opts)?.models;
    let (mut i, mut j) = (0, 0);
    let mut verdict = Verdict::Equal;
    while i < left.len() || j < right.len() {
        let a = left.get(i).map(FiniteAlgebra::cells);
        let b = right.get(j).map(FiniteAlgebra::cells);
        match (a, b) {
            (Some(a), Some(b)) if a == b => {
                i += 1;
                j += 1;
            }
            (Some(a), Some(b)) if a > b => {
                verdict = Verdict::RightNotLeft(right[j].clone());
                break;
            }
            (Some(_), _) => {
                verdict = Verdict::LeftNotRight(left[i].clone());
                break;
            }
            (None, _) => {
                verdict = Verdict::RightNotLeft(right[j].clone());
                break;
            }
        }
    }
    Ok(ComparisonReport {
        left: t1.name.clone(),
        right: t2.name.clone(),
        size: n,
        mode: ComparisonMode::SameSignature,
        left_count: left.len(),
        right_count: right.len(),
        verdict,
    })
}

/// Compares a theory with an extra constant against one without it: reducts
/// of big models must be small models, and every small model must expand to
/// a big one for some value of the constant.
pub fn compare_with_constant_expansion(
    t_big: &Theory,
    t_small: &Theory,
    n: usize,
    opts: &SearchOptions,
) -> Result<ComparisonReport, SearchError> {
    let big = &t_big.signature;
    let small = &t_small.signature;
    let shape_ok = big.ops().len() == small.ops().len() + 1
        && small.ops().iter().all(|(op, a)| big.arity(op) == Some(*a))
        && big
            .ops()
            .iter()
            .filter(|(op, _)| small.arity(op).is_none())
            .all(|(_, a)| *a == 0);
    if !shape_ok {
        return Err(SearchError::SignatureMismatch(format!(
            "{big} must add exactly one constant to {small}"
        )));
    }
    let opts = full_tables(opts);
    let big_models = enumerate_models(t_big, n, &opts)?.models;
    let small_models = enumerate_models(t_small, n, &opts)?.models;
    let mut verdict = Verdict::Equal;
    for m in &big_models {
        if !m.reduct(small)?.is_model_of(t_small)? {
            verdict = Verdict::LeftNotRight(m.clone());
            break;
        }
    }
    if verdict.is_equal() {
        'small: for m in &small_models {
            for c in 0..n {
                if m.expand_constant(big, c)?.is_model_of(t_big)? {
                    continue 'small;
                }
            }
            verdict = Verdict::RightNotLeft(m.clone());
            break;
        }
    }
    Ok(ComparisonReport {
        left: t_big.name.clone(),
        right: t_small.name.clone(),
        size: n,
        mode: ComparisonMode::ConstantExpansion,
        left_count: big_models.len(),
        right_count: small_models.len(),
        verdict,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IndependenceCheck {
    pub expected_to_hold: bool,
    #[serde(flatten)]
    pub result: SatReport,
}

impl IndependenceCheck {
    pub fn as_expected(&self) -> bool {
        self.expected_to_hold == self.result.holds
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IndependenceReport {
    pub theory: String,
    pub model: String,
    pub passed: bool,
    pub checks: Vec<IndependenceCheck>,
}

/// Checks that `m` satisfies exactly the identities in `must_hold`; the two
/// name lists must partition the theory.
pub fn verify_independence(
    t: &Theory,
    m: &FiniteAlgebra,
    must_hold: &[&str],
    must_fail: &[&str],
) -> Result<IndependenceReport, SearchError> {
    if !m.signature().same_ops(&t.signature) {
        return Err(SearchError::SignatureMismatch(format!(
            "model {} is over {}, theory {} over {}",
            m.name,
            m.signature(),
            t.name,
            t.signature
        )));
    }
    for name in must_hold.iter().chain(must_fail) {
        if t.get(name).is_none() {
            return Err(SearchError::UnknownIdentity(name.to_string()));
        }
    }
    if let Some(both) = must_hold.iter().find(|h| must_fail.contains(h)) {
        return Err(SearchError::NotAPartition(format!("`{both}` listed twice")));
    }
    if let Some(missing) = t
        .identities
        .iter()
        .find(|i| !must_hold.contains(&i.name.as_str()) && !must_fail.contains(&i.name.as_str()))
    {
        return Err(SearchError::NotAPartition(format!("`{}` not listed", missing.name)));
    }
    let checks = t
        .identities
        .iter()
        .map(|i: &Identity| {
            Ok(IndependenceCheck {
                expected_to_hold: must_hold.contains(&i.name.as_str()),
                result: m.satisfies(i)?,
            })
        })
        .collect::<Result<Vec<_>, ModelError>>()?;
    Ok(IndependenceReport {
        theory: t.name.clone(),
        model: m.name.clone(),
        passed: checks.iter().all(IndependenceCheck::as_expected),
        checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::bundled_model;
    use crate::theory::{builtin_theories, builtin_theory};

    fn th(name: &str) -> &'static Theory {
        builtin_theory(name).unwrap()
    }

    #[test]
    fn singleton_is_the_only_one_element_model() {
        for t in &builtin_theories().theories {
            let e = enumerate_models(t, 1, &SearchOptions::default()).unwrap();
            assert_eq!(e.count, 1, "{}", t.name);
        }
    }

    #[test]
    fn two_element_mv_algebras() {
        // The two-element Boolean algebra, in both labelings of 0 and 1.
        let e = enumerate_models(th("MV_A"), 2, &SearchOptions::default()).unwrap();
        assert_eq!(e.count, 2);
        let iso = SearchOptions {
            up_to_iso: true,
            ..Default::default()
        };
        let e = enumerate_models(th("MV_A"), 2, &iso).unwrap();
        assert_eq!(e.count, 1);
        // 0 + 0 = 0 comes first lexicographically, so the top element is 0
        assert_eq!(e.models[0].cells(), vec![0, 0, 0, 1, 1, 0, 1]);
    }

    #[test]
    fn workers_do_not_change_output() {
        let one = enumerate_models(th("CBCK_C"), 3, &SearchOptions::default()).unwrap();
        let four = enumerate_models(
            th("CBCK_C"),
            3,
            &SearchOptions {
                workers: 4,
                ..Default::default()
            },
        )
        .unwrap();
        assert_eq!(one.models, four.models);
        assert_eq!(one.nodes, four.nodes);
        let mut sorted = one.models.clone();
        sorted.sort_by_key(FiniteAlgebra::cells);
        assert_eq!(sorted, one.models);
    }

    #[test]
    fn prune_records_recheck() {
        let opts = SearchOptions {
            prune_log: 50,
            ..Default::default()
        };
        let e = enumerate_models(th("LBCK_L"), 3, &opts).unwrap();
        assert_eq!(e.prunes.len(), 50);
        assert!(e.prunes.iter().all(|p| p.recheck(th("LBCK_L"))));
    }

    #[test]
    fn budget_and_bounds() {
        let tiny = SearchOptions {
            budget: Some(Duration::ZERO),
            ..Default::default()
        };
        assert!(matches!(
            enumerate_models(th("MV_M"), 4, &tiny),
            Err(SearchError::BudgetExceeded(_))
        ));
        let iso = SearchOptions {
            up_to_iso: true,
            ..Default::default()
        };
        assert!(matches!(
            enumerate_models(th("CBCK_C"), 7, &iso),
            Err(SearchError::IsoBoundExceeded { .. })
        ));
        assert!(enumerate_models(th("CBCK_C"), 0, &SearchOptions::default()).is_err());
    }

    #[test]
    fn count_only_keeps_no_tables() {
        let opts = SearchOptions {
            count_only: true,
            ..Default::default()
        };
        let e = enumerate_models(th("MV_M"), 3, &opts).unwrap();
        assert!(e.models.is_empty());
        assert_eq!(e.count, enumerate_models(th("MV_M"), 3, &Default::default()).unwrap().count);
    }

    #[test]
    fn m1_alone_is_weaker() {
        let m1 = th("MV_M").restricted("M1_only", &["M1"]);
        let r = compare_with_constant_expansion(th("MV_A"), &m1, 2, &Default::default()).unwrap();
        let Verdict::RightNotLeft(w) = &r.verdict else {
            panic!("expected a witness, got {:?}", r.verdict)
        };
        assert!(w.is_model_of(&m1).unwrap());
        assert!((0..2).all(|c| !w
            .expand_constant(&th("MV_A").signature, c)
            .unwrap()
            .is_model_of(th("MV_A"))
            .unwrap()));
    }

    #[test]
    fn comparison_errors() {
        let o = SearchOptions::default();
        assert!(compare_same_signature(th("MV_M"), th("CBCK_C"), 2, &o).is_err());
        assert!(compare_with_constant_expansion(th("MV_A"), th("CBCK_C"), 2, &o).is_err());
        assert!(compare_with_constant_expansion(th("MV_M"), th("MV_A"), 2, &o).is_err());
    }

    #[test]
    fn independence_partition_is_enforced() {
        let a = bundled_model("mv_model_a").unwrap();
        let t = th("MV_M");
        assert!(verify_independence(t, &a, &["M1"], &["M2"]).unwrap().passed);
        assert!(!verify_independence(t, &a, &["M2"], &["M1"]).unwrap().passed);
        assert!(matches!(
            verify_independence(t, &a, &["M1"], &[]),
            Err(SearchError::NotAPartition(_))
        ));
        assert!(matches!(
            verify_independence(t, &a, &["M1", "M2"], &["M2"]),
            Err(SearchError::NotAPartition(_))
        ));
        assert!(matches!(
            verify_independence(t, &a, &["M1"], &["M9"]),
            Err(SearchError::UnknownIdentity(_))
        ));
        assert!(matches!(
            verify_independence(th("CBCK_C"), &a, &["C1"], &["C2"]),
            Err(SearchError::SignatureMismatch(_))
        ));
    }
}
