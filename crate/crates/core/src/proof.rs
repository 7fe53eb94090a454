//! Replay of equational proof scripts.
//!
//! A script either proves a goal `l = r` by a chain of single rewrites, each
//! justified by a named identity used in one direction at one position, or
//! introduces a new constant whose defining body was shown not to depend on
//! its variables.
//!
//! ```text
//! proof lemma_C1_in_CBCK in CBCK_B
//!   goal: imp(imp(x,x),y) = y
//!   chain:
//!     imp(imp(x,x),y)
//!     = imp(one,y)  by B3
//!     = y  by B4
//!
//! proof one_definition in CBCK_C
//!   define one := imp(x,x) constancy imp_constancy
//! ```

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;

use crate::error::{ParseError, ProofError};
use crate::term::{lex, match_into, Position, Substitution, Term, Tok, TokenCursor};
use crate::theory::{alpha_eq_pair, Catalog, Identity, Signature, Theory};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Lr,
    Rl,
}

impl Direction {
    fn sides<'a>(self, i: &'a Identity) -> (&'a Term, &'a Term) {
        match self {
            Direction::Lr => (&i.lhs, &i.rhs),
            Direction::Rl => (&i.rhs, &i.lhs),
        }
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Direction::Lr => "lr",
            Direction::Rl => "rl",
        })
    }
}

/// One `= target  by name` line. `None` fields leave the choice to the checker.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProofStep {
    pub target: Term,
    pub justification: String,
    pub direction: Option<Direction>,
    pub position: Option<Position>,
    pub line: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum ScriptBody {
    Lemma {
        goal: Identity,
        start: Term,
        steps: Vec<ProofStep>,
    },
    Definition {
        op: String,
        body: Term,
        constancy: String,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProofScript {
    pub name: String,
    pub theory: String,
    pub body: ScriptBody,
    pub line: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RefKind {
    Axiom,
    Lemma,
    Definition,
}

/// A resolved identity name: which theory it lives in and what grounds it.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct IdentityRef {
    pub theory: String,
    pub name: String,
    pub kind: RefKind,
}

impl fmt::Display for IdentityRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.theory, self.name)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub position: Position,
    pub direction: Direction,
    #[serde(serialize_with = "ser_subst")]
    pub substitution: Substitution,
}

fn ser_subst<S: serde::Serializer>(s: &Substitution, ser: S) -> Result<S::Ok, S::Error> {
    let map: BTreeMap<&String, String> = s.iter().map(|(k, v)| (k, v.to_string())).collect();
    map.serialize(ser)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "lowercase")]
pub enum StepVerdict {
    Verified(Witness),
    Failed {
        reason: String,
        /// Positions where the chosen side matched but rewriting gave another term.
        near_misses: Vec<Position>,
    },
}

impl StepVerdict {
    pub fn is_verified(&self) -> bool {
        matches!(self, StepVerdict::Verified(_))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StepReport {
    pub index: usize,
    pub line: usize,
    pub target: Term,
    pub justification: String,
    pub verdict: StepVerdict,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub script: String,
    pub theory: String,
    pub verified: bool,
    pub steps: Vec<StepReport>,
    pub dependencies: Vec<IdentityRef>,
    pub errors: Vec<String>,
}

impl CheckReport {
    /// Index of the first failing step, if any.
    pub fn first_failure(&self) -> Option<usize> {
        self.steps
            .iter()
            .find(|s| !s.verdict.is_verified())
            .map(|s| s.index)
    }
}

/// Rewrites `t` at `p` with one instance of `i`.
pub fn apply_identity(
    t: &Term,
    i: &Identity,
    dir: Direction,
    p: &Position,
    s: &Substitution,
) -> Result<Term, ProofError> {
    let (from, to) = dir.sides(i);
    let redex = t.subterm_at(p)?;
    if from.substitute(s) != *redex {
        return Err(ProofError::RedexMismatch(p.clone()));
    }
    Ok(t.replace_at(p, to.substitute(s))?)
}

/// Searches positions leftmost-outermost, `lr` before `rl`, for a single
/// application of `i` turning `current` into `target`.
///
/// Variables that occur only on the produced side are bound by matching
/// against `target`, so steps that introduce fresh material are accepted.
pub fn verify_step(
    current: &Term,
    target: &Term,
    i: &Identity,
    direction: Option<Direction>,
    position: Option<&Position>,
) -> StepVerdict {
    let dirs: &[Direction] = match direction {
        Some(Direction::Lr) => &[Direction::Lr],
        Some(Direction::Rl) => &[Direction::Rl],
        None => &[Direction::Lr, Direction::Rl],
    };
    let positions = match position {
        Some(p) => vec![p.clone()],
        None => current.positions(),
    };
    let mut near_misses = Vec::new();
    for p in &positions {
        let Ok(redex) = current.subterm_at(p) else {
            return StepVerdict::Failed {
                reason: format!("position {p} does not exist in the current term"),
                near_misses,
            };
        };
        let replacement = target.subterm_at(p).ok();
        for &dir in dirs {
            let (from, to) = dir.sides(i);
            let mut s = Substitution::new();
            if !match_into(from, redex, &mut s) {
                continue;
            }
            let hit = replacement.is_some_and(|r| {
                match_into(to, r, &mut s)
                    && current.replace_at(p, r.clone()).as_ref() == Ok(target)
            });
            if hit {
                return StepVerdict::Verified(Witness {
                    position: p.clone(),
                    direction: dir,
                    substitution: s,
                });
            }
            if near_misses.last() != Some(p) {
                near_misses.push(p.clone());
            }
        }
    }
    StepVerdict::Failed {
        reason: format!("no single application of `{}` yields the target", i.name),
        near_misses,
    }
}

#[derive(Clone, Debug)]
struct Entry {
    reference: IdentityRef,
    identity: Identity,
    dependencies: Vec<IdentityRef>,
}

/// Verified lemmas and definitions, keyed by theory, plus the signature
/// extensions introduced by definitions.
#[derive(Clone, Debug)]
pub struct ProofLibrary {
    catalog: Catalog,
    entries: Vec<Entry>,
    extensions: BTreeMap<String, Signature>,
}

impl ProofLibrary {
    pub fn new(catalog: &Catalog) -> ProofLibrary {
        ProofLibrary {
            catalog: catalog.clone(),
            entries: Vec::new(),
            extensions: BTreeMap::new(),
        }
    }

    pub fn catalog(&self) -> &Catalog {
        &self.catalog
    }

    /// The theory's signature including constants defined so far.
    pub fn signature_of(&self, theory: &str) -> Option<Signature> {
        self.extensions
            .get(theory)
            .cloned()
            .or_else(|| self.catalog.theory(theory).map(|t| t.signature.clone()))
    }

    /// Verified lemma goals and definition equations of one theory, in order.
    pub fn proven(&self, theory: &str) -> Vec<(IdentityRef, Identity)> {
        self.entries
            .iter()
            .filter(|e| e.reference.theory == theory)
            .map(|e| (e.reference.clone(), e.identity.clone()))
            .collect()
    }

    /// Definitions registered for a theory, as `(constant, body)` pairs.
    pub fn definitions(&self, theory: &str) -> Vec<(String, Term)> {
        self.entries
            .iter()
            .filter(|e| e.reference.theory == theory && e.reference.kind == RefKind::Definition)
            .filter_map(|e| match &e.identity.lhs {
                Term::App(op, args) if args.is_empty() => {
                    Some((op.to_string(), e.identity.rhs.clone()))
                }
                _ => None,
            })
            .collect()
    }

    fn entry(&self, theory: &str, name: &str) -> Option<&Entry> {
        self.entries
            .iter()
            .find(|e| e.reference.theory == theory && e.reference.name == name)
    }

    /// Resolves a justification name as seen from inside `theory`: its axioms,
    /// then its own lemmas and definitions, then lemmas of included theories.
    pub fn resolve(&self, theory: &str, name: &str) -> Option<(IdentityRef, Identity)> {
        let t = self.catalog.theory(theory)?;
        if let Some(i) = t.get(name) {
            let r = IdentityRef {
                theory: theory.to_string(),
                name: name.to_string(),
                kind: RefKind::Axiom,
            };
            return Some((r, i.clone()));
        }
        if let Some(e) = self.entry(theory, name) {
            return Some((e.reference.clone(), e.identity.clone()));
        }
        self.included(t)
            .into_iter()
            .find_map(|u| self.entry(&u.name, name))
            .map(|e| (e.reference.clone(), e.identity.clone()))
    }

    fn included<'a>(&'a self, t: &Theory) -> Vec<&'a Theory> {
        self.catalog
            .theories
            .iter()
            .filter(|u| u.name != t.name && t.includes(u))
            .collect()
    }

    /// Checks one script and, if it verifies, registers its result.
    pub fn check_script(&mut self, script: &ProofScript) -> Result<CheckReport, ProofError> {
        let theory = self
            .catalog
            .theory(&script.theory)
            .ok_or_else(|| ProofError::UnknownTheory(script.theory.clone()))?;
        let clash = theory.get(&script.name).is_some()
            || self.entry(&script.theory, &script.name).is_some();
        if clash {
            return Err(ProofError::DuplicateScript(script.name.clone()));
        }
        let mut report = CheckReport {
            script: script.name.clone(),
            theory: script.theory.clone(),
            verified: false,
            steps: Vec::new(),
            dependencies: Vec::new(),
            errors: Vec::new(),
        };
        match &script.body {
            ScriptBody::Lemma { goal, start, steps } => {
                self.check_chain(goal, start, steps, &mut report);
                if report.verified {
                    self.entries.push(Entry {
                        reference: IdentityRef {
                            theory: script.theory.clone(),
                            name: script.name.clone(),
                            kind: RefKind::Lemma,
                        },
                        identity: Identity {
                            name: script.name.clone(),
                            ..goal.clone()
                        },
                        dependencies: report.dependencies.clone(),
                    });
                }
            }
            ScriptBody::Definition {
                op,
                body,
                constancy,
            } => self.check_definition(&script.theory, op, body, constancy, &mut report),
        }
        Ok(report)
    }

    fn check_chain(
        &self,
        goal: &Identity,
        start: &Term,
        steps: &[ProofStep],
        report: &mut CheckReport,
    ) {
        let mut ok = true;
        if *start != goal.lhs {
            ok = false;
            report
                .errors
                .push(format!("chain starts at {start}, goal left side is {}", goal.lhs));
        }
        let mut current = start.clone();
        let mut deps: Vec<IdentityRef> = Vec::new();
        for (index, step) in steps.iter().enumerate() {
            let verdict = match self.resolve(&report.theory, &step.justification) {
                None => StepVerdict::Failed {
                    reason: format!("unresolved justification `{}`", step.justification),
                    near_misses: Vec::new(),
                },
                Some((r, i)) => {
                    let v = verify_step(
                        &current,
                        &step.target,
                        &i,
                        step.direction,
                        step.position.as_ref(),
                    );
                    if v.is_verified() && !deps.contains(&r) {
                        deps.push(r);
                    }
                    v
                }
            };
            ok &= verdict.is_verified();
            report.steps.push(StepReport {
                index,
                line: step.line,
                target: step.target.clone(),
                justification: step.justification.clone(),
                verdict,
            });
            current = step.target.clone();
        }
        if current != goal.rhs {
            ok = false;
            report
                .errors
                .push(format!("chain ends at {current}, goal right side is {}", goal.rhs));
        }
        report.dependencies = deps;
        report.verified = ok;
    }

    fn check_definition(
        &mut self,
        theory: &str,
        op: &str,
        body: &Term,
        constancy: &str,
        report: &mut CheckReport,
    ) {
        let sig = self.signature_of(theory).expect("theory exists");
        let mut fail = |msg: String| report.errors.push(msg);
        if sig.arity(op).is_some() {
            fail(format!("`{op}` is already an operator of {theory}"));
            return;
        }
        let Some((r, lemma)) = self.resolve(theory, constancy) else {
            fail(format!("constancy lemma `{constancy}` has not been verified"));
            return;
        };
        if r.kind != RefKind::Lemma {
            fail(format!("`{constancy}` is not a proven lemma"));
            return;
        }
        if !lemma.lhs.variables().is_disjoint(&lemma.rhs.variables()) {
            fail(format!("`{constancy}` does not rename every variable apart"));
            return;
        }
        let matches_body = [&lemma.lhs, &lemma.rhs]
            .iter()
            .any(|side| alpha_eq_pair((side, side), (body, body)));
        if !matches_body {
            fail(format!("neither side of `{constancy}` is the body {body}"));
            return;
        }
        let Ok(extended) = sig.extended(&sig.name, op, 0) else {
            return;
        };
        let name = format!("{op}_def");
        self.extensions.insert(theory.to_string(), extended);
        self.entries.push(Entry {
            reference: IdentityRef {
                theory: theory.to_string(),
                name: name.clone(),
                kind: RefKind::Definition,
            },
            identity: Identity::new(&name, Term::constant(op), body.clone()),
            dependencies: vec![r.clone()],
        });
        report.dependencies = vec![r];
        report.verified = true;
    }

    /// Parses and checks every script of a proof file, in order.
    ///
    /// Definitions take effect for the scripts after them, so parsing and
    /// checking are interleaved.
    pub fn check_text(&mut self, text: &str) -> Result<Vec<CheckReport>, ProofError> {
        let mut reports = Vec::new();
        for block in split_blocks(text)? {
            let script = self.parse_block(&block)?;
            reports.push(self.check_script(&script)?);
        }
        Ok(reports)
    }

    /// Parses a proof file against the current signatures without checking it.
    pub fn parse_text(&self, text: &str) -> Result<Vec<ProofScript>, ProofError> {
        split_blocks(text)?
            .iter()
            .map(|b| self.parse_block(b))
            .collect()
    }

    fn parse_block(&self, block: &Block) -> Result<ProofScript, ProofError> {
        let sig = self
            .signature_of(&block.theory)
            .ok_or_else(|| ProofError::UnknownTheory(block.theory.clone()))?;
        let mut lines = block.lines.iter();
        let Some((first_no, first)) = lines.next() else {
            return Err(ParseError::new(block.line, 1, "empty proof block").into());
        };
        let tokens = lex(first, *first_no)?;
        let mut cur = TokenCursor::new(&tokens, first.len());
        let keyword = cur.ident("`goal` or `define`")?;
        let body = match keyword.as_str() {
            "define" => {
                let op = cur.ident("a constant name")?;
                cur.expect(&Tok::Define, "':='")?;
                let body = cur.term(&sig)?;
                match cur.ident("`constancy`")?.as_str() {
                    "constancy" => {}
                    _ => return Err(cur.error("expected `constancy`").into()),
                }
                let constancy = cur.ident("a lemma name")?;
                cur.expect_end()?;
                if let Some((n, _)) = lines.next() {
                    return Err(ParseError::new(*n, 1, "unexpected line after definition").into());
                }
                ScriptBody::Definition {
                    op,
                    body,
                    constancy,
                }
            }
            "goal" => {
                cur.expect(&Tok::Colon, "':'")?;
                let lhs = cur.term(&sig)?;
                cur.expect(&Tok::Eq, "'='")?;
                let rhs = cur.term(&sig)?;
                cur.expect_end()?;
                let goal = Identity::new(&block.name, lhs, rhs);
                let (n, l) = lines
                    .next()
                    .ok_or_else(|| ParseError::new(*first_no + 1, 1, "expected `chain:`"))?;
                let toks = lex(l, *n)?;
                let mut c = TokenCursor::new(&toks, l.len());
                if c.ident("`chain`")? != "chain" {
                    return Err(ParseError::new(*n, 1, "expected `chain:`").into());
                }
                c.expect(&Tok::Colon, "':'")?;
                c.expect_end()?;
                let (n, l) = lines
                    .next()
                    .ok_or_else(|| ParseError::new(*n + 1, 1, "expected the start term"))?;
                let toks = lex(l, *n)?;
                let mut c = TokenCursor::new(&toks, l.len());
                let start = c.term(&sig)?;
                c.expect_end()?;
                let steps = lines
                    .map(|(n, l)| parse_step(*n, l, &sig))
                    .collect::<Result<Vec<_>, _>>()?;
                ScriptBody::Lemma { goal, start, steps }
            }
            other => {
                return Err(ParseError::new(
                    *first_no,
                    1,
                    format!("expected `goal` or `define`, found `{other}`"),
                )
                .into())
            }
        };
        Ok(ProofScript {
            name: block.name.clone(),
            theory: block.theory.clone(),
            body,
            line: block.line,
        })
    }

    /// All identities grounding `root`, following lemmas and definitions down
    /// to axioms. Names in `assumed` (resolved in the root's theory) are
    /// treated as axioms and not expanded.
    pub fn dependency_closure(
        &self,
        theory: &str,
        root: &str,
        assumed: &[&str],
    ) -> Result<BTreeSet<IdentityRef>, ProofError> {
        let (root_ref, _) = self
            .resolve(theory, root)
            .ok_or_else(|| ProofError::UnknownRoot(root.to_string()))?;
        let stop: BTreeSet<IdentityRef> = assumed
            .iter()
            .map(|a| {
                self.resolve(theory, a)
                    .map(|(r, _)| r)
                    .ok_or_else(|| ProofError::UnknownRoot(a.to_string()))
            })
            .collect::<Result<_, _>>()?;
        let mut out = BTreeSet::new();
        let mut seen = BTreeSet::new();
        let mut todo = vec![root_ref];
        while let Some(r) = todo.pop() {
            if !seen.insert(r.clone()) {
                continue;
            }
            if r.kind == RefKind::Axiom || stop.contains(&r) {
                out.insert(r);
                continue;
            }
            let e = self
                .entry(&r.theory, &r.name)
                .ok_or_else(|| ProofError::NotVerified(r.name.clone()))?;
            todo.extend(e.dependencies.iter().cloned());
        }
        Ok(out)
    }
}

struct Block {
    name: String,
    theory: String,
    line: usize,
    lines: Vec<(usize, String)>,
}

fn split_blocks(text: &str) -> Result<Vec<Block>, ProofError> {
    let mut blocks: Vec<Block> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let tokens = lex(raw, line_no)?;
        if tokens.is_empty() {
            continue;
        }
        if matches!(&tokens[0].tok, Tok::Ident(k) if k == "proof") {
            let mut cur = TokenCursor::new(&tokens, raw.len());
            cur.ident("`proof`")?;
            let name = cur.ident("a script name")?;
            if cur.ident("`in`")? != "in" {
                return Err(ParseError::new(line_no, 1, "expected `proof <name> in <theory>`").into());
            }
            let theory = cur.ident("a theory name")?;
            cur.expect_end()?;
            blocks.push(Block {
                name,
                theory,
                line: line_no,
                lines: Vec::new(),
            });
            continue;
        }
        match blocks.last_mut() {
            Some(b) => b.lines.push((line_no, strip_comment(raw).to_string())),
            None => {
                return Err(ParseError::new(line_no, 1, "expected `proof <name> in <theory>`").into())
            }
        }
    }
    Ok(blocks)
}

fn strip_comment(line: &str) -> &str {
    line.split('#').next().unwrap_or("")
}

fn parse_step(line_no: usize, text: &str, sig: &Signature) -> Result<ProofStep, ParseError> {
    let tokens = lex(text, line_no)?;
    let mut cur = TokenCursor::new(&tokens, text.len());
    cur.expect(&Tok::Eq, "'=' starting a chain step")?;
    let target = cur.term(sig)?;
    if cur.ident("`by`")? != "by" {
        return Err(ParseError::new(line_no, 1, "expected `by <identity>`"));
    }
    let justification = cur.ident("an identity name")?;
    let mut direction = None;
    let mut position = None;
    while !cur.at_end() {
        match cur.ident("`lr`, `rl` or `at`")?.as_str() {
            "lr" if direction.is_none() => direction = Some(Direction::Lr),
            "rl" if direction.is_none() => direction = Some(Direction::Rl),
            "at" if position.is_none() => {
                cur.expect(&Tok::LBracket, "'['")?;
                let mut path = Vec::new();
                if !cur.eat(&Tok::RBracket) {
                    loop {
                        path.push(cur.number("an argument index")?);
                        if cur.eat(&Tok::RBracket) {
                            break;
                        }
                        cur.expect(&Tok::Comma, "',' or ']'")?;
                    }
                }
                position = Some(Position(path));
            }
            other => return Err(cur.error(format!("unexpected `{other}` in justification"))),
        }
    }
    Ok(ProofStep {
        target,
        justification,
        direction,
        position,
        line: line_no,
    })
}

/// File names and contents of the bundled proof corpus, in checking order.
pub fn bundled_proofs() -> &'static [(&'static str, &'static str)] {
    &[
        ("mv_a.proof", include_str!("../fixtures/proofs/mv_a.proof")),
        ("mv_m.proof", include_str!("../fixtures/proofs/mv_m.proof")),
        ("cbck_b.proof", include_str!("../fixtures/proofs/cbck_b.proof")),
        ("cbck_c.proof", include_str!("../fixtures/proofs/cbck_c.proof")),
        ("lbck_b.proof", include_str!("../fixtures/proofs/lbck_b.proof")),
        ("lbck_l.proof", include_str!("../fixtures/proofs/lbck_l.proof")),
    ]
}

/// Checks the whole bundled corpus against the builtin catalog.
pub fn check_bundled() -> Result<(ProofLibrary, Vec<CheckReport>), ProofError> {
    let mut lib = ProofLibrary::new(crate::theory::builtin_theories());
    let mut reports = Vec::new();
    for (_, text) in bundled_proofs() {
        reports.extend(lib.check_text(text)?);
    }
    Ok((lib, reports))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::term::parse_term;
    use crate::theory::builtin_theory;

    fn mv_sig() -> Signature {
        builtin_theory("MV_A").unwrap().signature.clone()
    }

    #[test]
    fn apply_identity_a3() {
        let sig = mv_sig();
        let a3 = builtin_theory("MV_A").unwrap().get("A3").unwrap();
        let t = parse_term("plus(neg(plus(x,zero)),x)", &sig).unwrap();
        let s: Substitution = [("x".to_string(), Term::var("x"))].into_iter().collect();
        let out = apply_identity(&t, a3, Direction::Lr, &Position(vec![0, 0]), &s).unwrap();
        assert_eq!(out.to_string(), "plus(neg(x),x)");
        let back = apply_identity(&out, a3, Direction::Rl, &Position(vec![0, 0]), &s).unwrap();
        assert_eq!(back, t);
        assert!(matches!(
            apply_identity(&t, a3, Direction::Lr, &Position(vec![1]), &s),
            Err(ProofError::RedexMismatch(_))
        ));
    }

    #[test]
    fn apply_trivial_identity() {
        let sig = mv_sig();
        let refl = Identity::new("refl", Term::var("x"), Term::var("x"));
        let t = parse_term("neg(plus(x,y))", &sig).unwrap();
        let s: Substitution = [("x".to_string(), t.clone())].into_iter().collect();
        assert_eq!(
            apply_identity(&t, &refl, Direction::Lr, &Position::root(), &s).unwrap(),
            t
        );
    }

    #[test]
    fn verify_step_finds_a1_reversed() {
        let sig = mv_sig();
        let a1 = builtin_theory("MV_A").unwrap().get("A1").unwrap();
        let cur = parse_term("plus(neg(plus(x,plus(neg(x),y))),z)", &sig).unwrap();
        let tgt = parse_term("plus(neg(plus(plus(x,neg(x)),y)),z)", &sig).unwrap();
        match verify_step(&cur, &tgt, a1, None, None) {
            StepVerdict::Verified(w) => {
                assert_eq!(w.position, Position(vec![0, 0]));
                assert_eq!(w.direction, Direction::Rl);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn verify_step_c1_at_root() {
        let c = builtin_theory("CBCK_C").unwrap();
        let c1 = c.get("C1").unwrap();
        let cur = parse_term("imp(imp(x,x),y)", &c.signature).unwrap();
        let tgt = parse_term("y", &c.signature).unwrap();
        let StepVerdict::Verified(w) = verify_step(&cur, &tgt, c1, None, None) else {
            panic!("expected a witness");
        };
        assert_eq!(w.position, Position::root());
        assert_eq!(w.substitution.to_string(), "{x -> x, y -> y}");
    }

    #[test]
    fn unchanged_term_needs_an_application() {
        let sig = mv_sig();
        let a2 = builtin_theory("MV_A").unwrap().get("A2").unwrap();
        let a3 = builtin_theory("MV_A").unwrap().get("A3").unwrap();
        let same = parse_term("plus(x,x)", &sig).unwrap();
        // commuting x+x changes nothing but is still one application of A2
        assert!(verify_step(&same, &same, a2, None, None).is_verified());
        let v = parse_term("neg(y)", &sig).unwrap();
        assert!(!verify_step(&v, &v, a3, Some(Direction::Lr), None).is_verified());
    }

    #[test]
    fn failure_lists_near_misses() {
        let sig = mv_sig();
        let a2 = builtin_theory("MV_A").unwrap().get("A2").unwrap();
        let cur = parse_term("plus(x,plus(y,z))", &sig).unwrap();
        let tgt = parse_term("plus(x,plus(z,x))", &sig).unwrap();
        let StepVerdict::Failed { near_misses, .. } = verify_step(&cur, &tgt, a2, None, None)
        else {
            panic!("should fail")
        };
        assert_eq!(near_misses, vec![Position::root(), Position(vec![1])]);
    }

    #[test]
    fn explicit_position_and_direction_are_respected() {
        let sig = mv_sig();
        let a2 = builtin_theory("MV_A").unwrap().get("A2").unwrap();
        let cur = parse_term("plus(plus(x,y),z)", &sig).unwrap();
        let tgt = parse_term("plus(plus(y,x),z)", &sig).unwrap();
        assert!(verify_step(&cur, &tgt, a2, Some(Direction::Rl), Some(&Position(vec![0]))).is_verified());
        assert!(!verify_step(&cur, &tgt, a2, None, Some(&Position::root())).is_verified());
        assert!(!verify_step(&cur, &tgt, a2, None, Some(&Position(vec![5]))).is_verified());
    }

    const SMALL: &str = "\
proof c1 in CBCK_B
  goal: imp(imp(x,x),y) = y
  chain:
    imp(imp(x,x),y)
    = imp(one,y)  by B3 lr at [0]
    = y  by B4
";

    #[test]
    fn parse_and_check_small_script() {
        let mut lib = ProofLibrary::new(crate::theory::builtin_theories());
        let scripts = lib.parse_text(SMALL).unwrap();
        assert_eq!(scripts.len(), 1);
        let ScriptBody::Lemma { steps, .. } = &scripts[0].body else {
            panic!()
        };
        assert_eq!(steps[0].position, Some(Position(vec![0])));
        assert_eq!(steps[0].direction, Some(Direction::Lr));
        let reports = lib.check_text(SMALL).unwrap();
        assert!(reports[0].verified);
        let names: Vec<_> = reports[0].dependencies.iter().map(|d| d.name.as_str()).collect();
        assert_eq!(names, ["B3", "B4"]);
        // a second script with the same name in the same theory is rejected
        assert!(matches!(
            lib.check_text(SMALL),
            Err(ProofError::DuplicateScript(_))
        ));
        let closure = lib.dependency_closure("CBCK_B", "c1", &[]).unwrap();
        assert_eq!(closure.len(), 2);
        assert!(lib.dependency_closure("CBCK_B", "nope", &[]).is_err());
    }

    #[test]
    fn parse_errors() {
        let lib = ProofLibrary::new(crate::theory::builtin_theories());
        for bad in [
            "goal: x = x\n",
            "proof a in NOPE\n  goal: x = x\n  chain:\n    x\n",
            "proof a in MV_A\n  goal: x = x\n  x\n",
            "proof a in MV_A\n  goal: x = x\n  chain:\n    x\n    = x  by A2 sideways\n",
            "proof a in MV_A\n  goal: x = x\n  chain:\n    x\n    = x  A2\n",
            "proof a in MV_A\n  define zero := x constancy\n",
        ] {
            assert!(lib.parse_text(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn shuffled_chain_fails_at_first_bad_step() {
        let shuffled = "\
proof c1 in CBCK_B
  goal: imp(imp(x,x),y) = y
  chain:
    imp(imp(x,x),y)
    = y  by B4
    = imp(one,y)  by B3
";
        let mut lib = ProofLibrary::new(crate::theory::builtin_theories());
        let r = lib.check_text(shuffled).unwrap().remove(0);
        assert!(!r.verified);
        assert_eq!(r.first_failure(), Some(0));
    }

    #[test]
    fn definition_requires_verified_constancy() {
        let mut lib = ProofLibrary::new(crate::theory::builtin_theories());
        let r = lib
            .check_text("proof d in CBCK_C\n  define one := imp(x,x) constancy missing\n")
            .unwrap()
            .remove(0);
        assert!(!r.verified);
        assert!(lib.signature_of("CBCK_C").unwrap().arity("one").is_none());
    }

    #[test]
    fn definition_rejects_non_constant_lemma() {
        let text = "\
proof not_constant in CBCK_C
  goal: imp(imp(x,x),y) = y
  chain:
    imp(imp(x,x),y)
    = y  by C1
proof d in CBCK_C
  define one := imp(imp(x,x),y) constancy not_constant
";
        let mut lib = ProofLibrary::new(crate::theory::builtin_theories());
        let rs = lib.check_text(text).unwrap();
        assert!(rs[0].verified);
        assert!(!rs[1].verified);
    }
}
