//! First-order terms over a finite signature.
//!
//! A [`Term`] is either a variable or an operator applied to an ordered list
//! of arguments. Constants are 0-ary applications and are written without
//! parentheses. The textual syntax is prefix-functional only:
//!
//! ```text
//! term  := ident | ident "(" term ("," term)* ")"
//! ident := [a-zA-Z_][a-zA-Z0-9_]*
//! ```
//!
//! Whitespace between tokens is ignored and `#` starts a line comment.
//! Identifiers that the ambient [`Signature`] does not declare are variables.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use serde::{Serialize, Serializer};

use crate::error::{ParseError, TermError};
use crate::theory::Signature;

/// An immutable first-order term. Equality is structural.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Var(Arc<str>),
    App(Arc<str>, Arc<[Term]>),
}

impl Term {
    pub fn var(name: &str) -> Term {
        Term::Var(Arc::from(name))
    }

    pub fn app(op: &str, args: Vec<Term>) -> Term {
        Term::App(Arc::from(op), Arc::from(args))
    }

    pub fn constant(op: &str) -> Term {
        Term::app(op, Vec::new())
    }

    pub fn is_var(&self) -> bool {
        matches!(self, Term::Var(_))
    }

    pub fn args(&self) -> &[Term] {
        match self {
            Term::Var(_) => &[],
            Term::App(_, args) => args,
        }
    }

    /// Number of symbol occurrences (variables and operators).
    pub fn size(&self) -> usize {
        1 + self.args().iter().map(Term::size).sum::<usize>()
    }

    /// Distinct variable names, sorted.
    pub fn variables(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    pub(crate) fn collect_vars(&self, out: &mut BTreeSet<String>) {
        match self {
            Term::Var(v) => {
                out.insert(v.to_string());
            }
            Term::App(_, args) => args.iter().for_each(|a| a.collect_vars(out)),
        }
    }

    /// Checks every application against the declared arities of `sig`.
    pub fn check_against(&self, sig: &Signature) -> Result<(), TermError> {
        match self {
            Term::Var(v) => {
                if sig.arity(v).is_some() {
                    Err(TermError::VariableClash(v.to_string()))
                } else {
                    Ok(())
                }
            }
            Term::App(op, args) => {
                let expected = sig
                    .arity(op)
                    .ok_or_else(|| TermError::UnknownOperator(op.to_string()))?;
                if expected != args.len() {
                    return Err(TermError::Arity {
                        op: op.to_string(),
                        expected,
                        found: args.len(),
                    });
                }
                args.iter().try_for_each(|a| a.check_against(sig))
            }
        }
    }

    /// Simultaneous substitution; unmapped variables are left alone.
    pub fn substitute(&self, s: &Substitution) -> Term {
        match self {
            Term::Var(v) => s.get(v).cloned().unwrap_or_else(|| self.clone()),
            Term::App(op, args) => {
                if args.is_empty() {
                    return self.clone();
                }
                Term::App(op.clone(), args.iter().map(|a| a.substitute(s)).collect())
            }
        }
    }

    pub fn subterm_at(&self, p: &Position) -> Result<&Term, TermError> {
        let mut cur = self;
        for (depth, &i) in p.0.iter().enumerate() {
            cur = cur.args().get(i).ok_or_else(|| TermError::InvalidPosition {
                position: p.clone(),
                depth,
            })?;
        }
        Ok(cur)
    }

    pub fn replace_at(&self, p: &Position, replacement: Term) -> Result<Term, TermError> {
        self.replace_from(p, 0, replacement)
    }

    fn replace_from(&self, p: &Position, depth: usize, r: Term) -> Result<Term, TermError> {
        let Some(&i) = p.0.get(depth) else {
            return Ok(r);
        };
        match self {
            Term::App(op, args) if i < args.len() => {
                let mut new_args: Vec<Term> = args.to_vec();
                new_args[i] = args[i].replace_from(p, depth + 1, r)?;
                Ok(Term::App(op.clone(), new_args.into()))
            }
            _ => Err(TermError::InvalidPosition {
                position: p.clone(),
                depth,
            }),
        }
    }

    /// All positions of the term in leftmost-outermost (pre-)order.
    pub fn positions(&self) -> Vec<Position> {
        let mut out = Vec::new();
        let mut path = Vec::new();
        self.walk_positions(&mut path, &mut out);
        out
    }

    fn walk_positions(&self, path: &mut Vec<usize>, out: &mut Vec<Position>) {
        out.push(Position(path.clone()));
        for (i, a) in self.args().iter().enumerate() {
            path.push(i);
            a.walk_positions(path, out);
            path.pop();
        }
    }

    /// Renames variables through `map`; names absent from the map are kept.
    pub fn rename_vars(&self, map: &BTreeMap<String, String>) -> Term {
        let s: Substitution = map
            .iter()
            .map(|(from, to)| (from.clone(), Term::var(to)))
            .collect();
        self.substitute(&s)
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(v) => f.write_str(v),
            Term::App(op, args) => {
                f.write_str(op)?;
                if !args.is_empty() {
                    f.write_str("(")?;
                    for (i, a) in args.iter().enumerate() {
                        if i > 0 {
                            f.write_str(",")?;
                        }
                        write!(f, "{a}")?;
                    }
                    f.write_str(")")?;
                }
                Ok(())
            }
        }
    }
}

impl fmt::Debug for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Serialize for Term {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Path from the root to a subterm: 0-based argument indices, empty for the root.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Position(pub Vec<usize>);

impl Position {
    pub fn root() -> Position {
        Position(Vec::new())
    }

    pub fn is_prefix_of(&self, other: &Position) -> bool {
        other.0.starts_with(&self.0)
    }
}

impl fmt::Display for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str("]")
    }
}

impl From<Vec<usize>> for Position {
    fn from(v: Vec<usize>) -> Self {
        Position(v)
    }
}

/// Finite map from variable names to terms, applied simultaneously.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct Substitution(BTreeMap<String, Term>);

impl Substitution {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&self, var: &str) -> Option<&Term> {
        self.0.get(var)
    }

    pub fn insert(&mut self, var: impl Into<String>, t: Term) -> Option<Term> {
        self.0.insert(var.into(), t)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&String, &Term)> {
        self.0.iter()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `self` followed by `then`: maps x to `then` applied to `self(x)`,
    /// and keeps `then`'s bindings for variables `self` leaves alone.
    pub fn compose(&self, then: &Substitution) -> Substitution {
        let mut out: BTreeMap<String, Term> = self
            .0
            .iter()
            .map(|(k, v)| (k.clone(), v.substitute(then)))
            .collect();
        for (k, v) in &then.0 {
            out.entry(k.clone()).or_insert_with(|| v.clone());
        }
        Substitution(out)
    }
}

impl FromIterator<(String, Term)> for Substitution {
    fn from_iter<I: IntoIterator<Item = (String, Term)>>(iter: I) -> Self {
        Substitution(iter.into_iter().collect())
    }
}

impl fmt::Display for Substitution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, (k, v)) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{k} -> {v}")?;
        }
        f.write_str("}")
    }
}

/// One-sided matching: finds the unique `s` with `pattern.substitute(s) == subject`.
pub fn match_term(pattern: &Term, subject: &Term) -> Option<Substitution> {
    let mut s = Substitution::new();
    match_into(pattern, subject, &mut s).then_some(s)
}

/// Extends `s` so that `pattern` instantiates to `subject`, keeping existing bindings.
pub fn match_into(pattern: &Term, subject: &Term, s: &mut Substitution) -> bool {
    match pattern {
        Term::Var(v) => match s.0.get(v.as_ref()) {
            Some(bound) => bound == subject,
            None => {
                s.0.insert(v.to_string(), subject.clone());
                true
            }
        },
        Term::App(op, args) => match subject {
            Term::App(op2, args2) if op == op2 && args.len() == args2.len() => args
                .iter()
                .zip(args2.iter())
                .all(|(p, t)| match_into(p, t, s)),
            _ => false,
        },
    }
}

pub fn parse_term(text: &str, sig: &Signature) -> Result<Term, ParseError> {
    let tokens = lex(text, 1)?;
    let mut cur = TokenCursor::new(&tokens, text.len());
    let t = cur.term(sig)?;
    cur.expect_end()?;
    Ok(t)
}

pub fn format_term(t: &Term) -> String {
    t.to_string()
}

// Tokenizer shared by the term, theory, model and proof file parsers.

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum Tok {
    Ident(String),
    Number(usize),
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    Colon,
    Eq,
    Define,
}

#[derive(Clone, Debug)]
pub(crate) struct Token {
    pub tok: Tok,
    pub line: usize,
    pub col: usize,
}

pub(crate) fn lex(text: &str, line: usize) -> Result<Vec<Token>, ParseError> {
    let mut out = Vec::new();
    let mut line = line;
    let mut col = 1;
    let mut chars = text.chars().peekable();
    while let Some(&c) = chars.peek() {
        let start_col = col;
        let mut push = |tok| {
            out.push(Token {
                tok,
                line,
                col: start_col,
            })
        };
        match c {
            '\n' => {
                chars.next();
                line += 1;
                col = 1;
                continue;
            }
            c if c.is_whitespace() => {
                chars.next();
            }
            '#' => {
                while let Some(&c) = chars.peek() {
                    if c == '\n' {
                        break;
                    }
                    chars.next();
                }
                continue;
            }
            '(' | ')' | '[' | ']' | ',' | '=' => {
                chars.next();
                push(match c {
                    '(' => Tok::LParen,
                    ')' => Tok::RParen,
                    '[' => Tok::LBracket,
                    ']' => Tok::RBracket,
                    ',' => Tok::Comma,
                    _ => Tok::Eq,
                });
            }
            ':' => {
                chars.next();
                if chars.peek() == Some(&'=') {
                    chars.next();
                    col += 1;
                    push(Tok::Define);
                } else {
                    push(Tok::Colon);
                }
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let mut s = String::new();
                while let Some(&c) = chars.peek() {
                    if c.is_ascii_alphanumeric() || c == '_' {
                        s.push(c);
                        chars.next();
                        col += 1;
                    } else {
                        break;
                    }
                }
                push(Tok::Ident(s));
                continue;
            }
            c if c.is_ascii_digit() => {
                let mut s = String::new();
                while let Some(&c) = chars.peek() {
                    if c.is_ascii_digit() {
                        s.push(c);
                        chars.next();
                        col += 1;
                    } else {
                        break;
                    }
                }
                let n = s.parse().map_err(|_| {
                    ParseError::new(line, start_col, format!("number out of range: {s}"))
                })?;
                push(Tok::Number(n));
                continue;
            }
            other => {
                return Err(ParseError::new(
                    line,
                    col,
                    format!("unexpected character {other:?}"),
                ))
            }
        }
        col += 1;
    }
    Ok(out)
}

pub(crate) struct TokenCursor<'a> {
    tokens: &'a [Token],
    pos: usize,
    end_line: usize,
    end_col: usize,
}

impl<'a> TokenCursor<'a> {
    pub fn new(tokens: &'a [Token], text_len: usize) -> Self {
        let (end_line, end_col) = tokens
            .last()
            .map(|t| (t.line, t.col + 1))
            .unwrap_or((1, text_len + 1));
        TokenCursor {
            tokens,
            pos: 0,
            end_line,
            end_col,
        }
    }

    pub fn peek(&self) -> Option<&'a Tok> {
        self.tokens.get(self.pos).map(|t| &t.tok)
    }

    pub fn at_end(&self) -> bool {
        self.pos >= self.tokens.len()
    }

    pub fn error(&self, msg: impl Into<String>) -> ParseError {
        match self.tokens.get(self.pos) {
            Some(t) => ParseError::new(t.line, t.col, msg),
            None => ParseError::new(self.end_line, self.end_col, msg),
        }
    }

    pub fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek() == Some(tok) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    pub fn expect(&mut self, tok: &Tok, what: &str) -> Result<(), ParseError> {
        if self.eat(tok) {
            Ok(())
        } else {
            Err(self.error(format!("expected {what}")))
        }
    }

    pub fn ident(&mut self, what: &str) -> Result<String, ParseError> {
        match self.peek() {
            Some(Tok::Ident(s)) => {
                self.pos += 1;
                Ok(s.clone())
            }
            _ => Err(self.error(format!("expected {what}"))),
        }
    }

    pub fn number(&mut self, what: &str) -> Result<usize, ParseError> {
        match self.peek() {
            Some(Tok::Number(n)) => {
                self.pos += 1;
                Ok(*n)
            }
            _ => Err(self.error(format!("expected {what}"))),
        }
    }

    pub fn expect_end(&self) -> Result<(), ParseError> {
        if self.at_end() {
            Ok(())
        } else {
            Err(self.error("unexpected trailing input"))
        }
    }

    pub fn term(&mut self, sig: &Signature) -> Result<Term, ParseError> {
        let (line, col) = match self.tokens.get(self.pos) {
            Some(t) => (t.line, t.col),
            None => (self.end_line, self.end_col),
        };
        let name = self.ident("identifier")?;
        let declared = sig.arity(&name);
        if self.eat(&Tok::LParen) {
            let mut args = vec![self.term(sig)?];
            while self.eat(&Tok::Comma) {
                args.push(self.term(sig)?);
            }
            self.expect(&Tok::RParen, "',' or ')'")?;
            match declared {
                Some(arity) if arity == args.len() => Ok(Term::app(&name, args)),
                Some(arity) => Err(ParseError::new(
                    line,
                    col,
                    format!(
                        "arity mismatch: `{name}` takes {arity} argument(s), found {}",
                        args.len()
                    ),
                )),
                None => Err(ParseError::new(
                    line,
                    col,
                    format!("`{name}` is applied but not declared as an operator"),
                )),
            }
        } else {
            match declared {
                None => Ok(Term::var(&name)),
                Some(0) => Ok(Term::constant(&name)),
                Some(arity) => Err(ParseError::new(
                    line,
                    col,
                    format!("arity mismatch: `{name}` takes {arity} argument(s), found 0"),
                )),
            }
        }
    }
}
