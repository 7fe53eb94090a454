//! Signatures, identities and equational theories.
//!
//! Theory files are line oriented:
//!
//! ```text
//! signature BCK2
//!   op imp 2
//!
//! theory CBCK_C over BCK2
//!   C1: imp(imp(x,x),y) = y
//!   C2: imp(imp(x,y),imp(z,y)) = imp(imp(y,x),imp(z,x))
//! ```
//!
//! Block headers start in column one; member lines are indented.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::OnceLock;

use serde::Serialize;

use crate::error::{ParseError, TheoryError};
use crate::term::{lex, Term, Tok, TokenCursor};

/// Operator declarations: names with arities, in a fixed order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Signature {
    pub name: String,
    ops: Vec<(String, usize)>,
}

impl Signature {
    pub fn new<'a>(
        name: &str,
        ops: impl IntoIterator<Item = (&'a str, usize)>,
    ) -> Result<Signature, TheoryError> {
        let mut sig = Signature {
            name: name.to_string(),
            ops: Vec::new(),
        };
        for (op, arity) in ops {
            sig.push_op(op, arity)?;
        }
        Ok(sig)
    }

    fn push_op(&mut self, op: &str, arity: usize) -> Result<(), TheoryError> {
        if self.arity(op).is_some() {
            return Err(TheoryError::Duplicate {
                kind: "operator",
                name: op.to_string(),
            });
        }
        self.ops.push((op.to_string(), arity));
        Ok(())
    }

    pub fn ops(&self) -> &[(String, usize)] {
        &self.ops
    }

    pub fn arity(&self, op: &str) -> Option<usize> {
        self.ops.iter().find(|(o, _)| o == op).map(|&(_, a)| a)
    }

    pub fn index_of(&self, op: &str) -> Option<usize> {
        self.ops.iter().position(|(o, _)| o == op)
    }

    /// A copy extended by one more operator.
    pub fn extended(&self, name: &str, op: &str, arity: usize) -> Result<Signature, TheoryError> {
        let mut sig = self.clone();
        sig.name = name.to_string();
        sig.push_op(op, arity)?;
        Ok(sig)
    }

    /// Same operators with the same arities, ignoring the signature names.
    pub fn same_ops(&self, other: &Signature) -> bool {
        self.ops == other.ops
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}<", self.name)?;
        for (i, (op, a)) in self.ops.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{op}:{a}")?;
        }
        f.write_str(">")
    }
}

/// A named equation `lhs = rhs`. Usable in both directions by the proof checker.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Identity {
    pub name: String,
    pub lhs: Term,
    pub rhs: Term,
}

impl Identity {
    pub fn new(name: &str, lhs: Term, rhs: Term) -> Identity {
        Identity {
            name: name.to_string(),
            lhs,
            rhs,
        }
    }

    pub fn variables(&self) -> BTreeSet<String> {
        let mut vars = BTreeSet::new();
        self.lhs.collect_vars(&mut vars);
        self.rhs.collect_vars(&mut vars);
        vars
    }

    /// Alpha-renamed copy whose variables avoid `avoid`.
    ///
    /// Fresh names are `<old><k>` with the smallest `k` not in use.
    pub fn rename_apart(&self, avoid: &BTreeSet<String>) -> Identity {
        let vars = self.variables();
        let mut taken: BTreeSet<String> = avoid.union(&vars).cloned().collect();
        let mut map = BTreeMap::new();
        for v in vars.iter().filter(|v| avoid.contains(*v)) {
            let fresh = (0..)
                .map(|k| format!("{v}{k}"))
                .find(|c| !taken.contains(c))
                .expect("unbounded supply of names");
            taken.insert(fresh.clone());
            map.insert(v.clone(), fresh);
        }
        Identity {
            name: self.name.clone(),
            lhs: self.lhs.rename_vars(&map),
            rhs: self.rhs.rename_vars(&map),
        }
    }

    /// True when the two identities coincide up to a renaming of variables.
    pub fn alpha_equivalent(&self, other: &Identity) -> bool {
        alpha_eq_pair((&self.lhs, &self.rhs), (&other.lhs, &other.rhs))
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {} = {}", self.name, self.lhs, self.rhs)
    }
}

/// Alpha-equivalence of two term pairs, with one renaming shared by both sides.
pub(crate) fn alpha_eq_pair(a: (&Term, &Term), b: (&Term, &Term)) -> bool {
    let mut fwd = BTreeMap::new();
    let mut bwd = BTreeMap::new();
    alpha_walk(a.0, b.0, &mut fwd, &mut bwd) && alpha_walk(a.1, b.1, &mut fwd, &mut bwd)
}

fn alpha_walk(
    a: &Term,
    b: &Term,
    fwd: &mut BTreeMap<String, String>,
    bwd: &mut BTreeMap<String, String>,
) -> bool {
    match (a, b) {
        (Term::Var(x), Term::Var(y)) => {
            let f = fwd.entry(x.to_string()).or_insert_with(|| y.to_string());
            let g = bwd.entry(y.to_string()).or_insert_with(|| x.to_string());
            f.as_str() == y.as_ref() && g.as_str() == x.as_ref()
        }
        (Term::App(f, xs), Term::App(g, ys)) => {
            f == g
                && xs.len() == ys.len()
                && xs.iter().zip(ys.iter()).all(|(x, y)| alpha_walk(x, y, fwd, bwd))
        }
        _ => false,
    }
}

/// A named, ordered set of identities over one signature.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Theory {
    pub name: String,
    pub signature: Signature,
    pub identities: Vec<Identity>,
}

impl Theory {
    pub fn new(name: &str, signature: Signature) -> Theory {
        Theory {
            name: name.to_string(),
            signature,
            identities: Vec::new(),
        }
    }

    pub fn add(&mut self, identity: Identity) -> Result<(), TheoryError> {
        if self.get(&identity.name).is_some() {
            return Err(TheoryError::Duplicate {
                kind: "identity",
                name: identity.name,
            });
        }
        for side in [&identity.lhs, &identity.rhs] {
            side.check_against(&self.signature)
                .map_err(|source| TheoryError::IllFormed {
                    identity: identity.name.clone(),
                    source,
                })?;
        }
        self.identities.push(identity);
        Ok(())
    }

    pub fn get(&self, name: &str) -> Option<&Identity> {
        self.identities.iter().find(|i| i.name == name)
    }

    pub fn len(&self) -> usize {
        self.identities.len()
    }

    pub fn is_empty(&self) -> bool {
        self.identities.is_empty()
    }

    /// A copy restricted to the named identities, keeping this theory's order.
    pub fn restricted(&self, name: &str, keep: &[&str]) -> Theory {
        Theory {
            name: name.to_string(),
            signature: self.signature.clone(),
            identities: self
                .identities
                .iter()
                .filter(|i| keep.contains(&i.name.as_str()))
                .cloned()
                .collect(),
        }
    }

    /// Whether every identity of `other` occurs here with the same name and
    /// sides, over the same operators.
    pub fn includes(&self, other: &Theory) -> bool {
        self.signature.same_ops(&other.signature)
            && other
                .identities
                .iter()
                .all(|i| self.get(&i.name) == Some(i))
    }
}

/// Signatures and theories read from one or more theory files.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Catalog {
    pub signatures: Vec<Signature>,
    pub theories: Vec<Theory>,
}

impl Catalog {
    pub fn signature(&self, name: &str) -> Option<&Signature> {
        self.signatures.iter().find(|s| s.name == name)
    }

    pub fn theory(&self, name: &str) -> Option<&Theory> {
        self.theories.iter().find(|t| t.name == name)
    }

    /// Merges another catalog into this one, rejecting name clashes.
    pub fn merge(&mut self, other: Catalog) -> Result<(), TheoryError> {
        for s in other.signatures {
            if self.signature(&s.name).is_some() {
                return Err(TheoryError::Duplicate {
                    kind: "signature",
                    name: s.name,
                });
            }
            self.signatures.push(s);
        }
        for t in other.theories {
            if self.theory(&t.name).is_some() {
                return Err(TheoryError::Duplicate {
                    kind: "theory",
                    name: t.name,
                });
            }
            self.theories.push(t);
        }
        Ok(())
    }

    /// Canonical theory-file text. Parsing it back yields an equal catalog.
    pub fn to_text(&self) -> String {
        let mut blocks = Vec::new();
        for s in &self.signatures {
            let mut b = format!("signature {}\n", s.name);
            for (op, a) in s.ops() {
                b.push_str(&format!("  op {op} {a}\n"));
            }
            blocks.push(b);
        }
        for t in &self.theories {
            let mut b = format!("theory {} over {}\n", t.name, t.signature.name);
            for i in &t.identities {
                b.push_str(&format!("  {i}\n"));
            }
            blocks.push(b);
        }
        blocks.join("\n")
    }
}

enum Block {
    None,
    Signature(Signature),
    Theory(Theory),
}

/// Parses a theory file into its signatures and theories.
pub fn parse_theory(text: &str) -> Result<Catalog, TheoryError> {
    let mut catalog = Catalog::default();
    let mut block = Block::None;

    fn close(block: Block, catalog: &mut Catalog) -> Result<(), TheoryError> {
        let single = match block {
            Block::None => return Ok(()),
            Block::Signature(s) => Catalog {
                signatures: vec![s],
                theories: vec![],
            },
            Block::Theory(t) => Catalog {
                signatures: vec![],
                theories: vec![t],
            },
        };
        catalog.merge(single)
    }

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let tokens = lex(raw, line_no)?;
        if tokens.is_empty() {
            continue;
        }
        let indented = raw.starts_with(|c: char| c.is_whitespace());
        let mut cur = TokenCursor::new(&tokens, raw.len());
        if !indented {
            let keyword = cur.ident("`signature` or `theory`")?;
            let name = cur.ident("a name")?;
            let next = match keyword.as_str() {
                "signature" => {
                    cur.expect_end()?;
                    if catalog.signature(&name).is_some() {
                        return Err(TheoryError::Duplicate {
                            kind: "signature",
                            name,
                        });
                    }
                    Block::Signature(Signature {
                        name,
                        ops: Vec::new(),
                    })
                }
                "theory" => {
                    match cur.ident("`over`")?.as_str() {
                        "over" => {}
                        _ => return Err(ParseError::new(line_no, 1, "expected `over`").into()),
                    }
                    let sig_name = cur.ident("a signature name")?;
                    cur.expect_end()?;
                    // the current block may be the signature being referenced
                    close(std::mem::replace(&mut block, Block::None), &mut catalog)?;
                    let sig = catalog.signature(&sig_name).cloned().ok_or(
                        TheoryError::UndeclaredSignature {
                            line: line_no,
                            name: sig_name,
                        },
                    )?;
                    if catalog.theory(&name).is_some() {
                        return Err(TheoryError::Duplicate {
                            kind: "theory",
                            name,
                        });
                    }
                    Block::Theory(Theory::new(&name, sig))
                }
                other => {
                    return Err(ParseError::new(
                        line_no,
                        1,
                        format!("expected `signature` or `theory`, found `{other}`"),
                    )
                    .into())
                }
            };
            close(std::mem::replace(&mut block, next), &mut catalog)?;
            continue;
        }
        match &mut block {
            Block::None => {
                return Err(ParseError::new(line_no, 1, "indented line outside of a block").into())
            }
            Block::Signature(sig) => {
                match cur.ident("`op`")?.as_str() {
                    "op" => {}
                    _ => return Err(cur.error("expected `op`").into()),
                }
                let op = cur.ident("an operator name")?;
                let arity = cur.number("an arity")?;
                cur.expect_end()?;
                sig.push_op(&op, arity)?;
            }
            Block::Theory(theory) => {
                let name = cur.ident("an identity name")?;
                cur.expect(&Tok::Colon, "':'")?;
                let lhs = cur.term(&theory.signature)?;
                cur.expect(&Tok::Eq, "'='")?;
                let rhs = cur.term(&theory.signature)?;
                cur.expect_end()?;
                theory.add(Identity::new(&name, lhs, rhs))?;
            }
        }
    }
    close(block, &mut catalog)?;
    Ok(catalog)
}

pub(crate) const BUILTIN_THEORIES: &str = include_str!("../fixtures/theories.thy");

/// The bundled catalog: every axiom system plus the derived-identity catalogs.
pub fn builtin_theories() -> &'static Catalog {
    static CATALOG: OnceLock<Catalog> = OnceLock::new();
    CATALOG.get_or_init(|| parse_theory(BUILTIN_THEORIES).expect("bundled theory file parses"))
}

pub fn builtin_theory(name: &str) -> Option<&'static Theory> {
    builtin_theories().theory(name)
}

/// Rename-apart as a free function over an identity.
pub fn rename_apart(i: &Identity, avoid: &BTreeSet<String>) -> Identity {
    i.rename_apart(avoid)
}
