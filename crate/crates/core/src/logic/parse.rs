//! Recursive-descent parser for the ASCII formula syntax.
//!
//! Parsing runs in two phases: an untyped pass that records byte positions,
//! then sort elaboration against a [`Signature`]. Undeclared atoms take the
//! sort their position forces on them; the first occurrence wins and later
//! conflicting occurrences are reported.

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

use super::{expand_derived, DerivedKind, Formula, ModalKind, WeightMark};
use crate::fuzzy::{Degree, DegreeError, Sort};
use crate::multirel::IndexTerm;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("unexpected character {0:?}")]
    Lexical(char),
    #[error("expected {expected}, found {found}")]
    Unexpected { expected: String, found: String },
    #[error("bad weight: {0}")]
    Weight(DegreeError),
    #[error("symbol {symbol} has sort {found} but {expected} is required here")]
    SortMismatch { symbol: String, expected: Sort, found: Sort },
    #[error("modality yields sort {found} but {expected} is required here")]
    ModalSort { expected: Sort, found: Sort },
    #[error("cannot infer the sort of the formula; declare its symbols")]
    Undetermined,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("at byte {pos}: {kind}")]
pub struct ParseError {
    pub pos: usize,
    pub kind: ParseErrorKind,
}

/// Declared sorts of propositional symbols.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Signature {
    sorts: HashMap<String, Sort>,
}

impl Signature {
    pub fn new() -> Self {
        Signature::default()
    }

    pub fn declare(&mut self, name: impl Into<String>, sort: Sort) -> &mut Self {
        self.sorts.insert(name.into(), sort);
        self
    }

    pub fn with(mut self, name: impl Into<String>, sort: Sort) -> Self {
        self.declare(name, sort);
        self
    }

    pub fn sort_of(&self, name: &str) -> Option<Sort> {
        self.sorts.get(name).copied()
    }

    /// Declared symbols sorted by name.
    pub fn iter(&self) -> impl Iterator<Item = (&str, Sort)> {
        let mut items: Vec<_> = self.sorts.iter().map(|(k, v)| (k.as_str(), *v)).collect();
        items.sort();
        items.into_iter()
    }

    pub fn is_empty(&self) -> bool {
        self.sorts.is_empty()
    }

    /// Declares every atom of `f` with the sort it has there.
    pub fn absorb(&mut self, f: &Formula) {
        for (name, sort) in f.atoms() {
            self.sorts.entry(name).or_insert(sort);
        }
    }
}

/// Parses `text` as a formula. `expected` fixes the root sort; without it the
/// sort must be inferable from a modality or a declared symbol.
pub fn parse(text: &str, sig: &Signature, expected: Option<Sort>) -> Result<Formula, ParseError> {
    let mut p = Parser { src: text, pos: 0 };
    let raw = p.formula()?;
    p.skip_ws();
    if p.pos < text.len() {
        return Err(p.unexpected("end of input"));
    }
    let root = match expected.or_else(|| synth(&raw, sig)) {
        Some(s) => s,
        None => return Err(ParseError { pos: 0, kind: ParseErrorKind::Undetermined }),
    };
    let mut env = HashMap::new();
    elaborate(&raw, root, sig, &mut env)
}

/// Parses a standalone relation index term such as `(a | ~b)`.
pub fn parse_index(text: &str) -> Result<IndexTerm, ParseError> {
    let mut p = Parser { src: text, pos: 0 };
    let idx = p.index_expr()?;
    p.skip_ws();
    if p.pos < text.len() {
        return Err(p.unexpected("end of input"));
    }
    Ok(idx)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum BinOp {
    And,
    Or,
    Implies,
    Iff,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum RawModal {
    Nec,
    Suff,
    Pos,
    SuffDual,
}

#[derive(Debug, Clone)]
enum Raw {
    Atom { name: String, pos: usize },
    Not(Box<Raw>),
    Bin(BinOp, Box<Raw>, Box<Raw>),
    Modal { op: RawModal, mark: WeightMark, tag: Sort, index: Option<IndexTerm>, body: Box<Raw>, pos: usize },
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn peek(&self) -> Option<char> {
        self.rest().chars().next()
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.src.len() - trimmed.len();
    }

    /// Consumes `tok` after optional whitespace.
    fn eat(&mut self, tok: &str) -> bool {
        self.skip_ws();
        if self.rest().starts_with(tok) {
            self.pos += tok.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, tok: &str) -> Result<(), ParseError> {
        if self.eat(tok) {
            Ok(())
        } else {
            Err(self.unexpected(&format!("{tok:?}")))
        }
    }

    fn unexpected(&self, expected: &str) -> ParseError {
        let found = match self.peek() {
            None => "end of input".to_string(),
            Some(c) if !is_ident_start(c) && !c.is_ascii_punctuation() && !c.is_ascii_digit() => {
                return ParseError { pos: self.pos, kind: ParseErrorKind::Lexical(c) }
            }
            Some(c) => format!("{c:?}"),
        };
        ParseError { pos: self.pos, kind: ParseErrorKind::Unexpected { expected: expected.to_string(), found } }
    }

    fn formula(&mut self) -> Result<Raw, ParseError> {
        self.iff()
    }

    fn iff(&mut self) -> Result<Raw, ParseError> {
        let left = self.imp()?;
        if self.eat("<->") {
            let right = self.iff()?;
            return Ok(Raw::Bin(BinOp::Iff, Box::new(left), Box::new(right)));
        }
        Ok(left)
    }

    fn imp(&mut self) -> Result<Raw, ParseError> {
        let left = self.or()?;
        if self.eat("->") {
            let right = self.imp()?;
            return Ok(Raw::Bin(BinOp::Implies, Box::new(left), Box::new(right)));
        }
        Ok(left)
    }

    fn or(&mut self) -> Result<Raw, ParseError> {
        let mut acc = self.and()?;
        while self.eat("|") {
            let right = self.and()?;
            acc = Raw::Bin(BinOp::Or, Box::new(acc), Box::new(right));
        }
        Ok(acc)
    }

    fn and(&mut self) -> Result<Raw, ParseError> {
        let mut acc = self.unary()?;
        while self.eat("&") {
            let right = self.unary()?;
            acc = Raw::Bin(BinOp::And, Box::new(acc), Box::new(right));
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Raw, ParseError> {
        self.skip_ws();
        let start = self.pos;
        match self.peek() {
            Some('!') => {
                self.pos += 1;
                Ok(Raw::Not(Box::new(self.unary()?)))
            }
            Some('(') => {
                self.pos += 1;
                let inner = self.formula()?;
                self.expect(")")?;
                Ok(inner)
            }
            Some('[') | Some('<') => self.modal(start),
            Some(c) if is_ident_start(c) => {
                let name = self.ident();
                Ok(Raw::Atom { name, pos: start })
            }
            _ => Err(self.unexpected("a formula")),
        }
    }

    fn ident(&mut self) -> String {
        let len = self
            .rest()
            .char_indices()
            .find(|&(_, c)| !is_ident_char(c))
            .map_or(self.rest().len(), |(i, _)| i);
        let name = self.rest()[..len].to_string();
        self.pos += len;
        name
    }

    fn modal(&mut self, start: usize) -> Result<Raw, ParseError> {
        let (op, close) = if self.rest().starts_with("[[") {
            (RawModal::Suff, "]]")
        } else if self.rest().starts_with('[') {
            (RawModal::Nec, "]")
        } else if self.rest().starts_with("<<") {
            (RawModal::SuffDual, ">>")
        } else {
            (RawModal::Pos, ">")
        };
        self.pos += close.len();
        let mark = self.weight()?;
        self.expect(close)?;
        if !self.rest().starts_with('_') {
            return Err(self.unexpected("'_' and a sort tag"));
        }
        self.pos += 1;
        let tag = match self.peek() {
            Some('p') => Sort::Property,
            Some('o') => Sort::Object,
            _ => return Err(self.unexpected("sort tag 'p' or 'o'")),
        };
        self.pos += 1;
        if self.peek().is_some_and(is_ident_char) {
            return Err(self.unexpected("sort tag 'p' or 'o'"));
        }
        let index = if self.rest().starts_with('^') {
            self.pos += 1;
            Some(self.index_unary()?)
        } else {
            None
        };
        let body = self.unary()?;
        Ok(Raw::Modal { op, mark, tag, index, body: Box::new(body), pos: start })
    }

    fn weight(&mut self) -> Result<WeightMark, ParseError> {
        self.skip_ws();
        let start = self.pos;
        let len = self
            .rest()
            .char_indices()
            .find(|&(_, c)| !(c.is_ascii_digit() || c == '.' || c == '/'))
            .map_or(self.rest().len(), |(i, _)| i);
        if len == 0 {
            return Err(self.unexpected("a weight"));
        }
        let degree: Degree = self.rest()[..len]
            .parse()
            .map_err(|e| ParseError { pos: start, kind: ParseErrorKind::Weight(e) })?;
        self.pos += len;
        let strict = self.eat("+");
        Ok(WeightMark { degree, strict })
    }

    fn index_expr(&mut self) -> Result<IndexTerm, ParseError> {
        let mut acc = self.index_and()?;
        while self.eat("|") {
            acc = IndexTerm::union(acc, self.index_and()?);
        }
        Ok(acc)
    }

    fn index_and(&mut self) -> Result<IndexTerm, ParseError> {
        let mut acc = self.index_unary()?;
        while self.eat("&") {
            acc = IndexTerm::inter(acc, self.index_unary()?);
        }
        Ok(acc)
    }

    fn index_unary(&mut self) -> Result<IndexTerm, ParseError> {
        self.skip_ws();
        match self.peek() {
            Some('~') => {
                self.pos += 1;
                Ok(IndexTerm::complement(self.index_unary()?))
            }
            Some('(') => {
                self.pos += 1;
                let inner = self.index_expr()?;
                self.expect(")")?;
                Ok(inner)
            }
            Some('0') => {
                self.pos += 1;
                Ok(IndexTerm::Zero)
            }
            Some(c) if is_ident_start(c) => Ok(IndexTerm::prim(self.ident())),
            _ => Err(self.unexpected("an index term")),
        }
    }
}

fn is_ident_start(c: char) -> bool {
    c.is_ascii_alphabetic() || c == '_'
}

fn is_ident_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_' || c == '\''
}

fn synth(raw: &Raw, sig: &Signature) -> Option<Sort> {
    match raw {
        Raw::Atom { name, .. } => sig.sort_of(name),
        Raw::Not(f) => synth(f, sig),
        Raw::Bin(_, a, b) => synth(a, sig).or_else(|| synth(b, sig)),
        Raw::Modal { tag, .. } => Some(tag.other()),
    }
}

fn elaborate(
    raw: &Raw,
    expected: Sort,
    sig: &Signature,
    env: &mut HashMap<String, Sort>,
) -> Result<Formula, ParseError> {
    match raw {
        Raw::Atom { name, pos } => {
            let sort = sig.sort_of(name).or_else(|| env.get(name).copied()).unwrap_or(expected);
            if sort != expected {
                return Err(ParseError {
                    pos: *pos,
                    kind: ParseErrorKind::SortMismatch { symbol: name.clone(), expected, found: sort },
                });
            }
            env.insert(name.clone(), sort);
            Ok(Formula::atom(name.clone(), sort))
        }
        Raw::Not(f) => Ok(Formula::not(elaborate(f, expected, sig, env)?)),
        Raw::Bin(op, a, b) => {
            let a = elaborate(a, expected, sig, env)?;
            let b = elaborate(b, expected, sig, env)?;
            let built = match op {
                BinOp::And => Formula::and(a, b),
                BinOp::Or => Formula::or(a, b),
                BinOp::Implies => Formula::implies(a, b),
                BinOp::Iff => Formula::iff(a, b),
            };
            Ok(built.expect("operands elaborated at one sort"))
        }
        Raw::Modal { op, mark, tag, index, body, pos } => {
            if tag.other() != expected {
                return Err(ParseError {
                    pos: *pos,
                    kind: ParseErrorKind::ModalSort { expected, found: tag.other() },
                });
            }
            let body = elaborate(body, *tag, sig, env)?;
            let index = index.clone();
            Ok(match (op, mark.strict) {
                (RawModal::Nec, _) => Formula::modal(ModalKind::Necessity, *mark, index, body),
                (RawModal::Suff, _) => Formula::modal(ModalKind::Sufficiency, *mark, index, body),
                (RawModal::Pos, false) => expand_derived(DerivedKind::Pos, mark.degree, body, index),
                (RawModal::Pos, true) => expand_derived(DerivedKind::PosStrict, mark.degree, body, index),
                (RawModal::SuffDual, false) => expand_derived(DerivedKind::SuffDual, mark.degree, body, index),
                (RawModal::SuffDual, true) => {
                    expand_derived(DerivedKind::SuffDualStrict, mark.degree, body, index)
                }
            })
        }
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (name, sort)) in self.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{name}:{sort}")?;
        }
        Ok(())
    }
}
