//! Python bindings. Terms, theories and finite algebras are wrapped as
//! classes; reports cross the boundary as plain dicts and lists.

use std::collections::BTreeMap;
use std::time::Duration;

use pyo3::exceptions::{PyKeyError, PyTimeoutError, PyValueError};
use pyo3::prelude::*;
use serde::Serialize;

use equibase::model::{bundled_model, Assignment};
use equibase::report::{TheoremOptions, DEFAULT_SEED};
use equibase::term::format_term;
use equibase::{
    builtin_theories, builtin_theory, Catalog, FiniteAlgebra, Identity, ProofLibrary, SearchError,
    SearchOptions, Signature, Term, Theory,
};

fn value_error(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn search_error(e: SearchError) -> PyErr {
    match e {
        SearchError::BudgetExceeded(_) => PyTimeoutError::new_err(e.to_string()),
        other => value_error(other),
    }
}

fn to_python<'py>(py: Python<'py>, value: &impl Serialize) -> PyResult<Bound<'py, PyAny>> {
    let text = serde_json::to_string(value).map_err(value_error)?;
    py.import("json")?.call_method1("loads", (text,))
}

fn theory(name: &str) -> PyResult<&'static Theory> {
    builtin_theory(name).ok_or_else(|| PyKeyError::new_err(format!("unknown theory `{name}`")))
}

fn union_signature(cat: &Catalog) -> Signature {
    let mut ops: Vec<(&str, usize)> = Vec::new();
    for s in &cat.signatures {
        for (op, a) in s.ops() {
            if !ops.iter().any(|(o, _)| o == op) {
                ops.push((op, *a));
            }
        }
    }
    Signature::new("ALL", ops).expect("bundled arities agree")
}

fn signature(name: Option<&str>) -> PyResult<Signature> {
    let cat = builtin_theories();
    match name {
        None => Ok(union_signature(cat)),
        Some(n) => cat
            .signature(n)
            .cloned()
            .ok_or_else(|| PyKeyError::new_err(format!("unknown signature `{n}`"))),
    }
}

/// A first-order term.
#[pyclass(name = "Term", frozen, module = "equibase_py")]
pub struct PyTerm {
    inner: Term,
}

#[pymethods]
impl PyTerm {
    /// Parses `text`; `signature` defaults to every bundled operator.
    #[staticmethod]
    #[pyo3(signature = (text, signature=None))]
    fn parse(text: &str, signature: Option<&str>) -> PyResult<Self> {
        let sig = self::signature(signature)?;
        let inner = equibase::parse_term(text, &sig).map_err(value_error)?;
        Ok(PyTerm { inner })
    }

    fn variables(&self) -> Vec<String> {
        self.inner.variables().into_iter().collect()
    }

    fn size(&self) -> usize {
        self.inner.size()
    }

    fn __str__(&self) -> String {
        format_term(&self.inner)
    }

    fn __repr__(&self) -> String {
        format!("Term({:?})", format_term(&self.inner))
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.inner == other.inner
    }
}

/// A bundled theory.
#[pyclass(name = "Theory", frozen, module = "equibase_py")]
pub struct PyTheory {
    inner: &'static Theory,
}

#[pymethods]
impl PyTheory {
    #[new]
    fn new(name: &str) -> PyResult<Self> {
        Ok(PyTheory { inner: theory(name)? })
    }

    #[getter]
    fn name(&self) -> &str {
        &self.inner.name
    }

    #[getter]
    fn signature(&self) -> Vec<(String, usize)> {
        self.inner.signature.ops().to_vec()
    }

    /// Identities as `(name, lhs, rhs)` strings.
    fn identities(&self) -> Vec<(String, String, String)> {
        self.inner
            .identities
            .iter()
            .map(|i| (i.name.clone(), format_term(&i.lhs), format_term(&i.rhs)))
            .collect()
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn __repr__(&self) -> String {
        format!("Theory({:?})", self.inner.name)
    }
}

/// A finite algebra given by operation tables.
#[pyclass(name = "Algebra", frozen, module = "equibase_py")]
pub struct PyAlgebra {
    inner: FiniteAlgebra,
}

impl PyAlgebra {
    fn identity(&self, text: &str) -> PyResult<Identity> {
        if let Some((l, r)) = text.split_once('=') {
            let sig = self.inner.signature();
            let lhs = equibase::parse_term(l.trim(), sig).map_err(value_error)?;
            let rhs = equibase::parse_term(r.trim(), sig).map_err(value_error)?;
            return Ok(Identity::new("given", lhs, rhs));
        }
        builtin_theories()
            .theories
            .iter()
            .filter(|t| t.signature.same_ops(self.inner.signature()))
            .find_map(|t| t.get(text))
            .cloned()
            .ok_or_else(|| PyKeyError::new_err(format!("no identity `{text}` over this signature")))
    }
}

#[pymethods]
impl PyAlgebra {
    /// Reads the model-file format.
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        let inner = equibase::parse_model(text, builtin_theories()).map_err(value_error)?;
        Ok(PyAlgebra { inner })
    }

    /// One of the bundled independence models.
    #[staticmethod]
    fn bundled(name: &str) -> PyResult<Self> {
        bundled_model(name)
            .map(|inner| PyAlgebra { inner })
            .ok_or_else(|| PyKeyError::new_err(format!("no bundled model `{name}`")))
    }

    #[staticmethod]
    fn lukasiewicz_chain(n: usize) -> PyResult<Self> {
        let inner = equibase::lukasiewicz_chain(n).map_err(value_error)?;
        Ok(PyAlgebra { inner })
    }

    #[pyo3(signature = (keep_one=false))]
    fn bck_reduct(&self, keep_one: bool) -> PyResult<Self> {
        let inner = equibase::bck_reduct(&self.inner, keep_one).map_err(value_error)?;
        Ok(PyAlgebra { inner })
    }

    #[getter]
    fn name(&self) -> &str {
        &self.inner.name
    }

    #[getter]
    fn size(&self) -> usize {
        self.inner.size()
    }

    /// Tables keyed by operator, each flattened row-major.
    fn tables(&self) -> BTreeMap<String, Vec<usize>> {
        self.inner
            .signature()
            .ops()
            .iter()
            .map(|(op, _)| (op.clone(), self.inner.table(op).expect("own op").to_vec()))
            .collect()
    }

    fn eval(&self, term: &str, assignment: BTreeMap<String, usize>) -> PyResult<usize> {
        let t = equibase::parse_term(term, self.inner.signature()).map_err(value_error)?;
        let v: Assignment = assignment;
        self.inner.eval_term(&t, &v).map_err(value_error)
    }

    /// Checks an identity given by name or as `lhs = rhs`.
    fn satisfies<'py>(&self, py: Python<'py>, identity: &str) -> PyResult<Bound<'py, PyAny>> {
        let i = self.identity(identity)?;
        to_python(py, &self.inner.satisfies(&i).map_err(value_error)?)
    }

    fn is_model_of(&self, theory_name: &str) -> PyResult<bool> {
        self.inner.is_model_of(theory(theory_name)?).map_err(value_error)
    }

    /// A bijection onto `other`, or None.
    fn isomorphism(&self, other: &PyAlgebra) -> Option<Vec<usize>> {
        equibase::is_isomorphic(&self.inner, &other.inner).bijection
    }

    fn to_text(&self) -> String {
        self.inner.to_model_text()
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.inner == other.inner
    }

    fn __repr__(&self) -> String {
        format!("Algebra({:?}, size={})", self.inner.name, self.inner.size())
    }
}

fn options(workers: usize, budget_secs: Option<f64>) -> PyResult<SearchOptions> {
    let budget = match budget_secs {
        Some(s) if !(s.is_finite() && s >= 0.0) => return Err(value_error("budget must be non-negative")),
        Some(s) => Some(Duration::from_secs_f64(s)),
        None => None,
    };
    Ok(SearchOptions {
        workers: workers.max(1),
        budget,
        ..Default::default()
    })
}

/// All models of a bundled theory on `{0..n-1}`.
#[pyfunction]
#[pyo3(signature = (theory_name, n, up_to_iso=false, workers=1, budget_secs=None))]
fn enumerate_models(
    py: Python<'_>,
    theory_name: &str,
    n: usize,
    up_to_iso: bool,
    workers: usize,
    budget_secs: Option<f64>,
) -> PyResult<Vec<PyAlgebra>> {
    let t = theory(theory_name)?;
    let opts = SearchOptions {
        up_to_iso,
        ..options(workers, budget_secs)?
    };
    let e = py
        .detach(|| equibase::enumerate_models(t, n, &opts))
        .map_err(search_error)?;
    Ok(e.models.into_iter().map(|inner| PyAlgebra { inner }).collect())
}

/// Compares two bundled theories at size `n`; the mode follows from their
/// signatures.
#[pyfunction]
#[pyo3(signature = (left, right, n, workers=1, budget_secs=None))]
fn compare<'py>(
    py: Python<'py>,
    left: &str,
    right: &str,
    n: usize,
    workers: usize,
    budget_secs: Option<f64>,
) -> PyResult<Bound<'py, PyAny>> {
    let (l, r) = (theory(left)?, theory(right)?);
    let opts = options(workers, budget_secs)?;
    let report = py
        .detach(|| {
            if l.signature.same_ops(&r.signature) {
                equibase::compare_same_signature(l, r, n, &opts)
            } else {
                equibase::compare_with_constant_expansion(l, r, n, &opts)
            }
        })
        .map_err(search_error)?;
    to_python(py, &report)
}

#[pyfunction]
fn verify_independence<'py>(
    py: Python<'py>,
    theory_name: &str,
    model: &PyAlgebra,
    hold: Vec<String>,
    fail: Vec<String>,
) -> PyResult<Bound<'py, PyAny>> {
    let hold: Vec<&str> = hold.iter().map(String::as_str).collect();
    let fail: Vec<&str> = fail.iter().map(String::as_str).collect();
    let report = equibase::verify_independence(theory(theory_name)?, &model.inner, &hold, &fail)
        .map_err(search_error)?;
    to_python(py, &report)
}

/// Replays proof scripts (after the bundled corpus when `with_bundled`).
#[pyfunction]
#[pyo3(signature = (text=None, with_bundled=true))]
fn check_proofs<'py>(py: Python<'py>, text: Option<&str>, with_bundled: bool) -> PyResult<Bound<'py, PyAny>> {
    let mut lib = ProofLibrary::new(builtin_theories());
    let mut reports = Vec::new();
    if with_bundled {
        for (_, src) in equibase::bundled_proofs() {
            reports.extend(lib.check_text(src).map_err(value_error)?);
        }
    }
    if let Some(src) = text {
        reports.extend(lib.check_text(src).map_err(value_error)?);
    }
    to_python(py, &reports)
}

/// Names grounding a bundled lemma, treating `assumed` as axioms.
#[pyfunction]
#[pyo3(signature = (theory_name, root, assumed=Vec::new()))]
fn dependency_closure(theory_name: &str, root: &str, assumed: Vec<String>) -> PyResult<Vec<(String, String)>> {
    let (lib, _) = equibase::check_bundled().map_err(value_error)?;
    let assumed: Vec<&str> = assumed.iter().map(String::as_str).collect();
    let deps = lib
        .dependency_closure(theory_name, root, &assumed)
        .map_err(value_error)?;
    Ok(deps.into_iter().map(|d| (d.theory, d.name)).collect())
}

/// The batch of basis comparisons, independence models and closure checks.
#[pyfunction]
#[pyo3(signature = (size=2, workers=1, budget_secs=None, seed=DEFAULT_SEED))]
fn verify_theorems<'py>(
    py: Python<'py>,
    size: usize,
    workers: usize,
    budget_secs: Option<f64>,
    seed: u64,
) -> PyResult<Bound<'py, PyAny>> {
    let o = options(workers, budget_secs)?;
    let opts = TheoremOptions {
        size,
        workers: o.workers,
        budget: o.budget,
        seed,
    };
    let report = py
        .detach(|| equibase::report::verify_theorems(&opts))
        .map_err(search_error)?;
    to_python(py, &report)
}

/// Names of the bundled theories.
#[pyfunction]
fn theories() -> Vec<String> {
    builtin_theories().theories.iter().map(|t| t.name.clone()).collect()
}

#[pymodule]
fn equibase_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyTerm>()?;
    m.add_class::<PyTheory>()?;
    m.add_class::<PyAlgebra>()?;
    m.add_function(wrap_pyfunction!(enumerate_models, m)?)?;
    m.add_function(wrap_pyfunction!(compare, m)?)?;
    m.add_function(wrap_pyfunction!(verify_independence, m)?)?;
    m.add_function(wrap_pyfunction!(check_proofs, m)?)?;
    m.add_function(wrap_pyfunction!(dependency_closure, m)?)?;
    m.add_function(wrap_pyfunction!(verify_theorems, m)?)?;
    m.add_function(wrap_pyfunction!(theories, m)?)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::ffi::CString;

    fn run_python(code: &str) {
        Python::initialize();
        Python::attach(|py| {
            let module = pyo3::wrap_pymodule!(equibase_py)(py);
            let globals = pyo3::types::PyDict::new(py);
            globals.set_item("eb", module).unwrap();
            let code = CString::new(code).unwrap();
            if let Err(e) = py.run(&code, Some(&globals), None) {
                e.print(py);
                panic!("python assertion failed");
            }
        });
    }

    #[test]
    fn classes_round_trip() {
        run_python(
            r#"
t = eb.Term.parse("imp( imp(x,x), y)")
assert str(t) == "imp(imp(x,x),y)" and t.variables() == ["x", "y"] and t.size() == 5
a = eb.Algebra.bundled("bck_projection")
assert a.satisfies("C1")["holds"] and not a.satisfies("C2")["holds"]
assert a.tables() == {"imp": [0, 1, 0, 1]}
l3 = eb.Algebra.lukasiewicz_chain(3)
assert l3.eval("plus(x,neg(x))", {"x": 1}) == 2
r = l3.bck_reduct()
assert r.is_model_of("LBCK_L") and eb.Algebra.parse(r.to_text()) == r
assert len(eb.Theory("MV_M")) == 2
"#,
        );
    }

    #[test]
    fn searches_and_reports() {
        run_python(
            r#"
assert len(eb.enumerate_models("CBCK_C", 3)) == 9
assert eb.compare("MV_A", "MV_M", 2)["verdict"] == "equal"
assert eb.compare("CBCK_C", "LBCK_L", 4)["verdict"] == "left-not-right"
rep = eb.verify_independence("MV_M", eb.Algebra.bundled("mv_model_b"), ["M2"], ["M1"])
assert rep["passed"]
assert all(r["verified"] for r in eb.check_proofs())
deps = eb.dependency_closure("MV_M", "lemma_A1", ["M1", "eq9", "eq13"])
assert ("MV_M", "M2") not in deps
assert eb.verify_theorems(2)["status"] == "pass"
try:
    eb.enumerate_models("MV_M", 4, budget_secs=0.0)
    raise AssertionError("expected a timeout")
except TimeoutError:
    pass
"#,
        );
    }
}
