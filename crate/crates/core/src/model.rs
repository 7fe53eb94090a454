//! Finite algebras given by operation tables.
//!
//! Elements are `0..n`. A chain element `i` of the n-element Lukasiewicz
//! chain stands for the value `i/(n-1)`; only the index is ever stored.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{ModelError, ParseError};
use crate::term::{lex, Term, Tok, TokenCursor};
use crate::theory::{builtin_theories, builtin_theory, Catalog, Identity, Signature, Theory};

pub type Assignment = BTreeMap<String, usize>;

/// Largest size accepted by the brute-force isomorphism test.
pub const ISO_MAX_SIZE: usize = 8;

/// Cap on counterexamples collected in exhaustive mode.
pub const COUNTEREXAMPLE_CAP: usize = 1000;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct FiniteAlgebra {
    pub name: String,
    signature: Signature,
    size: usize,
    tables: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub assignment: Assignment,
    pub lhs: usize,
    pub rhs: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SatReport {
    pub identity: String,
    pub holds: bool,
    pub counterexample: Option<Counterexample>,
}

/// Result of an isomorphism test. `mismatch` explains why the two algebras
/// could not be compared at all.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IsoOutcome {
    pub bijection: Option<Vec<usize>>,
    pub mismatch: Option<String>,
}

/// A term flattened to postfix over operator indices and variable slots.
#[derive(Clone, Debug)]
pub(crate) struct Program {
    code: Vec<Instr>,
}

#[derive(Clone, Copy, Debug)]
enum Instr {
    Var(usize),
    Op(usize, usize),
}

impl Program {
    /// Compiles `t`; variables are numbered by their position in `vars`.
    pub(crate) fn compile(t: &Term, sig: &Signature, vars: &[String]) -> Result<Program, ModelError> {
        let mut code = Vec::new();
        fn walk(
            t: &Term,
            sig: &Signature,
            vars: &[String],
            code: &mut Vec<Instr>,
        ) -> Result<(), ModelError> {
            match t {
                Term::Var(v) => {
                    let slot = vars
                        .iter()
                        .position(|x| x.as_str() == v.as_ref())
                        .ok_or_else(|| ModelError::UnboundVariable(v.to_string()))?;
                    code.push(Instr::Var(slot));
                }
                Term::App(op, args) => {
                    let idx = sig.index_of(op).ok_or_else(|| {
                        ModelError::SignatureMismatch(format!("`{op}` is not an operator of {}", sig.name))
                    })?;
                    if sig.ops()[idx].1 != args.len() {
                        return Err(ModelError::SignatureMismatch(format!(
                            "`{op}` has arity {} in {}",
                            sig.ops()[idx].1,
                            sig.name
                        )));
                    }
                    for a in args.iter() {
                        walk(a, sig, vars, code)?;
                    }
                    code.push(Instr::Op(idx, args.len()));
                }
            }
            Ok(())
        }
        walk(t, sig, vars, &mut code)?;
        Ok(Program { code })
    }

    /// Evaluates with `lookup(op, row_major_index)`; an `Err` from the lookup
    /// aborts evaluation and is passed through.
    #[inline]
    pub(crate) fn run<E>(
        &self,
        n: usize,
        values: &[usize],
        stack: &mut Vec<usize>,
        mut lookup: impl FnMut(usize, usize) -> Result<usize, E>,
    ) -> Result<usize, E> {
        stack.clear();
        for ins in &self.code {
            match *ins {
                Instr::Var(slot) => stack.push(values[slot]),
                Instr::Op(op, arity) => {
                    let base = stack.len() - arity;
                    let idx = stack[base..].iter().fold(0, |acc, &a| acc * n + a);
                    stack.truncate(base);
                    stack.push(lookup(op, idx)?);
                }
            }
        }
        Ok(stack[0])
    }
}

/// Both sides of an identity compiled over the identity's sorted variables.
#[derive(Clone, Debug)]
pub(crate) struct CompiledIdentity {
    pub name: String,
    pub vars: Vec<String>,
    pub lhs: Program,
    pub rhs: Program,
}

impl CompiledIdentity {
    pub(crate) fn new(i: &Identity, sig: &Signature) -> Result<CompiledIdentity, ModelError> {
        let vars: Vec<String> = i.variables().into_iter().collect();
        Ok(CompiledIdentity {
            name: i.name.clone(),
            lhs: Program::compile(&i.lhs, sig, &vars)?,
            rhs: Program::compile(&i.rhs, sig, &vars)?,
            vars,
        })
    }
}

/// Odometer over `k`-tuples of `0..n` in lexicographic order.
pub(crate) fn next_tuple(values: &mut [usize], n: usize) -> bool {
    for v in values.iter_mut().rev() {
        *v += 1;
        if *v < n {
            return true;
        }
        *v = 0;
    }
    false
}

impl FiniteAlgebra {
    pub fn new(
        name: &str,
        signature: &Signature,
        size: usize,
        tables: Vec<Vec<usize>>,
    ) -> Result<FiniteAlgebra, ModelError> {
        if size == 0 {
            return Err(ModelError::InvalidSize { min: 1, got: 0 });
        }
        if tables.len() != signature.ops().len() {
            return Err(ModelError::SignatureMismatch(format!(
                "{} tables given for {} operators",
                tables.len(),
                signature.ops().len()
            )));
        }
        for ((op, arity), table) in signature.ops().iter().zip(&tables) {
            let want = size.pow(*arity as u32);
            if table.len() != want {
                return Err(ModelError::BadTable {
                    op: op.clone(),
                    reason: format!("expected {want} entries, found {}", table.len()),
                });
            }
            if let Some(bad) = table.iter().find(|&&v| v >= size) {
                return Err(ModelError::BadTable {
                    op: op.clone(),
                    reason: format!("entry {bad} is not below the size {size}"),
                });
            }
        }
        Ok(FiniteAlgebra {
            name: name.to_string(),
            signature: signature.clone(),
            size,
            tables,
        })
    }

    pub fn signature(&self) -> &Signature {
        &self.signature
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn table(&self, op: &str) -> Option<&[usize]> {
        self.signature.index_of(op).map(|i| self.tables[i].as_slice())
    }

    pub fn tables(&self) -> &[Vec<usize>] {
        &self.tables
    }

    /// All tables concatenated in signature order; the search's cell order.
    pub fn cells(&self) -> Vec<usize> {
        self.tables.concat()
    }

    pub fn apply(&self, op: &str, args: &[usize]) -> Result<usize, ModelError> {
        let idx = self.signature.index_of(op).ok_or_else(|| {
            ModelError::SignatureMismatch(format!("`{op}` is not an operator of {}", self.signature.name))
        })?;
        let arity = self.signature.ops()[idx].1;
        if args.len() != arity || args.iter().any(|&a| a >= self.size) {
            return Err(ModelError::SignatureMismatch(format!(
                "bad arguments {args:?} for `{op}`"
            )));
        }
        Ok(self.tables[idx][args.iter().fold(0, |acc, &a| acc * self.size + a)])
    }

    pub fn eval_term(&self, t: &Term, v: &Assignment) -> Result<usize, ModelError> {
        let vars: Vec<String> = t.variables().into_iter().collect();
        let values = vars
            .iter()
            .map(|x| {
                v.get(x)
                    .copied()
                    .filter(|&e| e < self.size)
                    .ok_or_else(|| ModelError::UnboundVariable(x.clone()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        let prog = Program::compile(t, &self.signature, &vars)?;
        Ok(self.run(&prog, &values, &mut Vec::new()))
    }

    #[inline]
    fn run(&self, prog: &Program, values: &[usize], stack: &mut Vec<usize>) -> usize {
        match prog.run::<()>(self.size, values, stack, |op, i| Ok(self.tables[op][i])) {
            Ok(v) => v,
            Err(()) => unreachable!("total tables never fail"),
        }
    }

    fn sweep(
        &self,
        i: &Identity,
        cap: usize,
    ) -> Result<Vec<Counterexample>, ModelError> {
        let c = CompiledIdentity::new(i, &self.signature)?;
        let mut values = vec![0; c.vars.len()];
        let mut stack = Vec::new();
        let mut found = Vec::new();
        loop {
            let l = self.run(&c.lhs, &values, &mut stack);
            let r = self.run(&c.rhs, &values, &mut stack);
            if l != r {
                found.push(Counterexample {
                    assignment: c.vars.iter().cloned().zip(values.iter().copied()).collect(),
                    lhs: l,
                    rhs: r,
                });
                if found.len() >= cap {
                    break;
                }
            }
            if !next_tuple(&mut values, self.size) {
                break;
            }
        }
        Ok(found)
    }

    /// Checks `i` under every assignment; reports the lexicographically first
    /// counterexample (variables sorted by name).
    pub fn satisfies(&self, i: &Identity) -> Result<SatReport, ModelError> {
        let counterexample = self.sweep(i, 1)?.pop();
        Ok(SatReport {
            identity: i.name.clone(),
            holds: counterexample.is_none(),
            counterexample,
        })
    }

    /// Every counterexample, in assignment order, up to [`COUNTEREXAMPLE_CAP`].
    pub fn counterexamples(&self, i: &Identity) -> Result<Vec<Counterexample>, ModelError> {
        self.sweep(i, COUNTEREXAMPLE_CAP)
    }

    pub fn satisfies_theory(&self, t: &Theory) -> Result<Vec<SatReport>, ModelError> {
        t.identities.iter().map(|i| self.satisfies(i)).collect()
    }

    pub fn is_model_of(&self, t: &Theory) -> Result<bool, ModelError> {
        for i in &t.identities {
            if !self.satisfies(i)?.holds {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// The copy transported along `perm`: element `e` becomes `perm[e]`.
    pub fn relabel(&self, perm: &[usize]) -> FiniteAlgebra {
        let n = self.size;
        let mut tables = Vec::with_capacity(self.tables.len());
        for ((_, arity), old) in self.signature.ops().iter().zip(&self.tables) {
            let mut new = vec![0; old.len()];
            let mut args = vec![0; *arity];
            loop {
                let src = args.iter().fold(0, |acc, &a| acc * n + a);
                let dst = args.iter().fold(0, |acc, &a| acc * n + perm[a]);
                new[dst] = perm[old[src]];
                if !next_tuple(&mut args, n) {
                    break;
                }
            }
            tables.push(new);
        }
        FiniteAlgebra {
            name: self.name.clone(),
            signature: self.signature.clone(),
            size: n,
            tables,
        }
    }

    /// Forgets every operator not in `sig`.
    pub fn reduct(&self, sig: &Signature) -> Result<FiniteAlgebra, ModelError> {
        let tables = sig
            .ops()
            .iter()
            .map(|(op, arity)| match self.signature.index_of(op) {
                Some(i) if self.signature.ops()[i].1 == *arity => Ok(self.tables[i].clone()),
                _ => Err(ModelError::SignatureMismatch(format!(
                    "{} is not a reduct of {}",
                    sig.name, self.signature.name
                ))),
            })
            .collect::<Result<Vec<_>, _>>()?;
        FiniteAlgebra::new(&self.name, sig, self.size, tables)
    }

    /// Expands by interpreting the single extra constant of `sig` as `value`.
    pub fn expand_constant(&self, sig: &Signature, value: usize) -> Result<FiniteAlgebra, ModelError> {
        let mut tables = Vec::new();
        let mut extra = 0;
        for (op, arity) in sig.ops() {
            match self.signature.index_of(op) {
                Some(i) if self.signature.ops()[i].1 == *arity => tables.push(self.tables[i].clone()),
                None if *arity == 0 => {
                    extra += 1;
                    tables.push(vec![value]);
                }
                _ => extra = usize::MAX - 1,
            }
        }
        if extra != 1 || sig.ops().len() != self.signature.ops().len() + 1 {
            return Err(ModelError::SignatureMismatch(format!(
                "{} does not add exactly one constant to {}",
                sig.name, self.signature.name
            )));
        }
        FiniteAlgebra::new(&self.name, sig, self.size, tables)
    }

    /// Model-file text; [`parse_model`] reads it back to an equal algebra.
    pub fn to_model_text(&self) -> String {
        let mut out = format!(
            "model {} over {}\nsize {}\n",
            self.name, self.signature.name, self.size
        );
        for ((op, arity), table) in self.signature.ops().iter().zip(&self.tables) {
            let _ = writeln!(out, "table {op}");
            let row = if *arity == 0 { 1 } else { self.size };
            for chunk in table.chunks(row) {
                let line: Vec<String> = chunk.iter().map(|v| v.to_string()).collect();
                let _ = writeln!(out, "{}", line.join(" "));
            }
        }
        out
    }
}

/// Reads a model file whose signature is declared in `catalog`.
pub fn parse_model(text: &str, catalog: &Catalog) -> Result<FiniteAlgebra, ModelError> {
    let mut header: Option<(String, Signature)> = None;
    let mut size: Option<usize> = None;
    let mut tables: BTreeMap<String, Vec<usize>> = BTreeMap::new();
    let mut current: Option<String> = None;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let tokens = lex(raw, line_no)?;
        if tokens.is_empty() {
            continue;
        }
        let mut cur = TokenCursor::new(&tokens, raw.len());
        match &tokens[0].tok {
            Tok::Ident(k) if k == "model" => {
                cur.ident("`model`")?;
                if header.is_some() {
                    return Err(ParseError::new(line_no, 1, "second `model` line").into());
                }
                let name = cur.ident("a model name")?;
                if cur.ident("`over`")? != "over" {
                    return Err(ParseError::new(line_no, 1, "expected `over`").into());
                }
                let sig_name = cur.ident("a signature name")?;
                cur.expect_end()?;
                let sig = catalog
                    .signature(&sig_name)
                    .cloned()
                    .ok_or(ModelError::UnknownSignature(sig_name))?;
                header = Some((name, sig));
            }
            Tok::Ident(k) if k == "size" => {
                cur.ident("`size`")?;
                size = Some(cur.number("a size")?);
                cur.expect_end()?;
            }
            Tok::Ident(k) if k == "table" => {
                cur.ident("`table`")?;
                let op = cur.ident("an operator name")?;
                cur.expect_end()?;
                if tables.insert(op.clone(), Vec::new()).is_some() {
                    return Err(ParseError::new(line_no, 1, format!("second table for `{op}`")).into());
                }
                current = Some(op);
            }
            Tok::Number(_) => {
                let Some(op) = &current else {
                    return Err(ParseError::new(line_no, 1, "entries before any `table` line").into());
                };
                let entries = tables.get_mut(op).expect("table opened");
                while !cur.at_end() {
                    entries.push(cur.number("a table entry")?);
                }
            }
            _ => return Err(cur.error("expected `model`, `size`, `table` or entries").into()),
        }
    }
    let (name, sig) = header.ok_or_else(|| ParseError::new(1, 1, "missing `model` line"))?;
    let size = size.ok_or_else(|| ParseError::new(1, 1, "missing `size` line"))?;
    let mut ordered = Vec::new();
    for (op, _) in sig.ops() {
        ordered.push(tables.remove(op).ok_or_else(|| ModelError::BadTable {
            op: op.clone(),
            reason: "missing".into(),
        })?);
    }
    if let Some(op) = tables.keys().next() {
        return Err(ModelError::SignatureMismatch(format!(
            "`{op}` is not an operator of {}",
            sig.name
        )));
    }
    FiniteAlgebra::new(&name, &sig, size, ordered)
}

fn builtin_signature(name: &str) -> Signature {
    builtin_theories()
        .signature(name)
        .cloned()
        .expect("bundled signature")
}

/// The n-element MV-chain: truncated addition, complement, zero.
pub fn lukasiewicz_chain(n: usize) -> Result<FiniteAlgebra, ModelError> {
    if n < 2 {
        return Err(ModelError::InvalidSize { min: 2, got: n });
    }
    let top = n - 1;
    let plus = (0..n * n).map(|k| (k / n + k % n).min(top)).collect();
    let neg = (0..n).map(|i| top - i).collect();
    FiniteAlgebra::new(
        &format!("L{n}"),
        &builtin_signature("MV210"),
        n,
        vec![plus, neg, vec![0]],
    )
}

/// Implication reduct `x -> y = ~x + y` of an MV-algebra, with `1 = ~0`
/// when `keep_constants` is set.
pub fn bck_reduct(a: &FiniteAlgebra, keep_constants: bool) -> Result<FiniteAlgebra, ModelError> {
    let mv = builtin_theory("MV_A").expect("bundled theory");
    if !a.signature.same_ops(&mv.signature) {
        return Err(ModelError::SignatureMismatch(format!(
            "expected the operators of {}",
            mv.signature
        )));
    }
    if let Some(r) = a.satisfies_theory(mv)?.into_iter().find(|r| !r.holds) {
        return Err(ModelError::NotMvAlgebra(format!("{} fails", r.identity)));
    }
    let n = a.size;
    let imp = (0..n * n)
        .map(|k| a.apply("plus", &[a.apply("neg", &[k / n]).expect("in range"), k % n]))
        .collect::<Result<Vec<_>, _>>()?;
    let name = format!("{}_imp", a.name);
    if keep_constants {
        let one = a.apply("neg", &[a.apply("zero", &[])?])?;
        FiniteAlgebra::new(&name, &builtin_signature("BCK20"), n, vec![imp, vec![one]])
    } else {
        FiniteAlgebra::new(&name, &builtin_signature("BCK2"), n, vec![imp])
    }
}

/// Advances `p` to the next permutation in lexicographic order.
pub(crate) fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
        return false;
    };
    let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).expect("exists");
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// Brute force over all bijections in lexicographic order; the first one
/// mapping `a` onto `b` is returned.
pub fn is_isomorphic(a: &FiniteAlgebra, b: &FiniteAlgebra) -> IsoOutcome {
    let mismatch = |why: String| IsoOutcome {
        bijection: None,
        mismatch: Some(why),
    };
    if !a.signature.same_ops(&b.signature) {
        return mismatch(format!("signatures differ: {} vs {}", a.signature, b.signature));
    }
    if a.size != b.size {
        return mismatch(format!("sizes differ: {} vs {}", a.size, b.size));
    }
    if a.size > ISO_MAX_SIZE {
        return mismatch(format!("size {} exceeds the bound {ISO_MAX_SIZE}", a.size));
    }
    let mut perm: Vec<usize> = (0..a.size).collect();
    loop {
        if a.relabel(&perm).tables == b.tables {
            return IsoOutcome {
                bijection: Some(perm),
                mismatch: None,
            };
        }
        if !next_permutation(&mut perm) {
            return IsoOutcome {
                bijection: None,
                mismatch: None,
            };
        }
    }
}

/// File names and contents of the bundled independence models.
pub fn bundled_models() -> &'static [(&'static str, &'static str)] {
    &[
        ("mv_model_a.model", include_str!("../fixtures/models/mv_model_a.model")),
        ("mv_model_b.model", include_str!("../fixtures/models/mv_model_b.model")),
        ("bck_projection.model", include_str!("../fixtures/models/bck_projection.model")),
        ("bck_constant_one.model", include_str!("../fixtures/models/bck_constant_one.model")),
    ]
}

/// A bundled model by its `model` name.
pub fn bundled_model(name: &str) -> Option<FiniteAlgebra> {
    bundled_models()
        .iter()
        .map(|(_, text)| parse_model(text, builtin_theories()).expect("bundled model parses"))
        .find(|m| m.name == name)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::term::parse_term;

    fn assign(pairs: &[(&str, usize)]) -> Assignment {
        pairs.iter().map(|(k, v)| (k.to_string(), *v)).collect()
    }

    #[test]
    fn boolean_and_three_element_evaluation() {
        let l2 = lukasiewicz_chain(2).unwrap();
        let t = parse_term("plus(x,neg(x))", l2.signature()).unwrap();
        assert_eq!(l2.eval_term(&t, &assign(&[("x", 0)])).unwrap(), 1);
        assert_eq!(l2.table("plus").unwrap(), &[0, 1, 1, 1]);
        assert_eq!(l2.table("neg").unwrap(), &[1, 0]);
        let l3 = lukasiewicz_chain(3).unwrap();
        let t = parse_term("plus(x,x)", l3.signature()).unwrap();
        assert_eq!(l3.eval_term(&t, &assign(&[("x", 1)])).unwrap(), 2);
        assert_eq!(l3.apply("neg", &[1]).unwrap(), 1);
        assert!(lukasiewicz_chain(1).is_err());
    }

    #[test]
    fn eval_errors() {
        let l2 = lukasiewicz_chain(2).unwrap();
        let t = parse_term("plus(x,y)", l2.signature()).unwrap();
        assert!(matches!(
            l2.eval_term(&t, &assign(&[("x", 0)])),
            Err(ModelError::UnboundVariable(_))
        ));
        let imp = Term::app("imp", vec![Term::var("x"), Term::var("x")]);
        assert!(matches!(
            l2.eval_term(&imp, &assign(&[("x", 0)])),
            Err(ModelError::SignatureMismatch(_))
        ));
    }

    #[test]
    fn model_a_kills_the_e_term() {
        let a = bundled_model("mv_model_a").unwrap();
        let t = parse_term("neg(plus(x,plus(neg(x),y)))", a.signature()).unwrap();
        for x in 0..2 {
            for y in 0..2 {
                assert_eq!(a.eval_term(&t, &assign(&[("x", x), ("y", y)])).unwrap(), 1);
            }
        }
    }

    #[test]
    fn reducts_of_chains() {
        let r2 = bck_reduct(&lukasiewicz_chain(2).unwrap(), false).unwrap();
        assert_eq!(r2.table("imp").unwrap(), &[1, 1, 0, 1]);
        let r3 = bck_reduct(&lukasiewicz_chain(3).unwrap(), true).unwrap();
        assert_eq!(r3.apply("imp", &[2, 1]).unwrap(), 1);
        assert_eq!(r3.table("one").unwrap(), &[2]);
        let not_mv = bundled_model("mv_model_b").unwrap();
        assert!(bck_reduct(&not_mv, false).is_err());
    }

    #[test]
    fn isomorphism_examples() {
        let l2 = lukasiewicz_chain(2).unwrap();
        assert_eq!(is_isomorphic(&l2, &l2).bijection, Some(vec![0, 1]));
        let swapped = l2.relabel(&[1, 0]);
        assert_ne!(swapped, l2);
        assert_eq!(is_isomorphic(&l2, &swapped).bijection, Some(vec![1, 0]));
        let r3 = bck_reduct(&lukasiewicz_chain(3).unwrap(), false).unwrap();
        let one = bundled_model("bck_constant_one").unwrap();
        let out = is_isomorphic(&r3, &one);
        assert!(out.bijection.is_none() && out.mismatch.is_some());
        let r2 = bck_reduct(&l2, false).unwrap();
        let out = is_isomorphic(&r2, &one);
        assert!(out.bijection.is_none() && out.mismatch.is_none());
    }

    #[test]
    fn permutations_in_order() {
        let mut p = vec![0, 1, 2];
        let mut seen = vec![p.clone()];
        while next_permutation(&mut p) {
            seen.push(p.clone());
        }
        assert_eq!(seen.len(), 6);
        assert_eq!(seen[1], vec![0, 2, 1]);
        assert_eq!(seen[5], vec![2, 1, 0]);
    }

    #[test]
    fn model_files_round_trip() {
        for (file, text) in bundled_models() {
            let m = parse_model(text, builtin_theories()).unwrap();
            let stripped: String = text
                .lines()
                .filter(|l| !l.trim_start().starts_with('#'))
                .map(|l| format!("{l}\n"))
                .collect();
            assert_eq!(m.to_model_text(), stripped, "{file}");
        }
        let l3 = lukasiewicz_chain(3).unwrap();
        assert_eq!(parse_model(&l3.to_model_text(), builtin_theories()).unwrap(), l3);
    }

    #[test]
    fn model_file_errors() {
        let cat = builtin_theories();
        for bad in [
            "model m over NOPE\nsize 2\n",
            "model m over BCK2\nsize 2\ntable imp\n0 1 1\n",
            "model m over BCK2\nsize 2\ntable imp\n0 1 1 2\n",
            "model m over BCK2\nsize 2\n",
            "model m over BCK2\nsize 2\ntable imp\n0 1 1 1\ntable one\n1\n",
            "size 2\ntable imp\n0 1 1 1\n",
            "model m over BCK2\n1 2\n",
        ] {
            assert!(parse_model(bad, cat).is_err(), "{bad}");
        }
    }

    #[test]
    fn singleton_satisfies_everything() {
        for t in &builtin_theories().theories {
            let tables = t.signature.ops().iter().map(|_| vec![0]).collect();
            let one = FiniteAlgebra::new("one", &t.signature, 1, tables).unwrap();
            assert!(one.is_model_of(t).unwrap(), "{}", t.name);
        }
    }

    #[test]
    fn exhaustive_counterexamples_are_ordered() {
        let one = bundled_model("bck_constant_one").unwrap();
        let c1 = builtin_theory("CBCK_C").unwrap().get("C1").unwrap();
        let all = one.counterexamples(c1).unwrap();
        // (x>x)>y = 1 differs from y exactly when y = 0
        assert_eq!(all.len(), 2);
        assert_eq!(all[0].assignment, assign(&[("x", 0), ("y", 0)]));
        assert_eq!(all[1].assignment, assign(&[("x", 1), ("y", 0)]));
        let first = one.satisfies(c1).unwrap();
        assert_eq!(first.counterexample.as_ref(), all.first());
    }

    #[test]
    fn expand_and_reduce() {
        let l3 = lukasiewicz_chain(3).unwrap();
        let mv21 = builtin_signature("MV21");
        let small = l3.reduct(&mv21).unwrap();
        assert_eq!(small.expand_constant(l3.signature(), 0).unwrap(), l3);
        assert!(small.expand_constant(&mv21, 0).is_err());
        assert!(l3.reduct(&builtin_signature("BCK2")).is_err());
    }
}
