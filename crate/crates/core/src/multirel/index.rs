use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::logic::{parse_index, ParseError};

/// Relation index `i ::= 0 | a | i & i | i | i | ~i`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum IndexTerm {
    Zero,
    Prim(String),
    Inter(Box<IndexTerm>, Box<IndexTerm>),
    Union(Box<IndexTerm>, Box<IndexTerm>),
    Compl(Box<IndexTerm>),
}

impl IndexTerm {
    pub fn prim(name: impl Into<String>) -> IndexTerm {
        IndexTerm::Prim(name.into())
    }

    pub fn inter(a: IndexTerm, b: IndexTerm) -> IndexTerm {
        IndexTerm::Inter(Box::new(a), Box::new(b))
    }

    pub fn union(a: IndexTerm, b: IndexTerm) -> IndexTerm {
        IndexTerm::Union(Box::new(a), Box::new(b))
    }

    pub fn complement(a: IndexTerm) -> IndexTerm {
        IndexTerm::Compl(Box::new(a))
    }

    pub fn primitives(&self) -> BTreeSet<&str> {
        let mut out = BTreeSet::new();
        self.collect(&mut out);
        out
    }

    fn collect<'a>(&'a self, out: &mut BTreeSet<&'a str>) {
        match self {
            IndexTerm::Zero => {}
            IndexTerm::Prim(name) => {
                out.insert(name);
            }
            IndexTerm::Inter(a, b) | IndexTerm::Union(a, b) => {
                a.collect(out);
                b.collect(out);
            }
            IndexTerm::Compl(a) => a.collect(out),
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            IndexTerm::Zero | IndexTerm::Prim(_) => 0,
            IndexTerm::Inter(a, b) | IndexTerm::Union(a, b) => 1 + a.depth().max(b.depth()),
            IndexTerm::Compl(a) => 1 + a.depth(),
        }
    }

    /// Evaluates the term in any algebra with a bottom, meet, join and an
    /// involutive negation.
    pub fn eval<T: Clone>(
        &self,
        zero: &T,
        prim: &impl Fn(&str) -> T,
        meet: &impl Fn(T, T) -> T,
        join: &impl Fn(T, T) -> T,
        neg: &impl Fn(T) -> T,
    ) -> T {
        match self {
            IndexTerm::Zero => zero.clone(),
            IndexTerm::Prim(name) => prim(name),
            IndexTerm::Inter(a, b) => {
                meet(a.eval(zero, prim, meet, join, neg), b.eval(zero, prim, meet, join, neg))
            }
            IndexTerm::Union(a, b) => {
                join(a.eval(zero, prim, meet, join, neg), b.eval(zero, prim, meet, join, neg))
            }
            IndexTerm::Compl(a) => neg(a.eval(zero, prim, meet, join, neg)),
        }
    }

    /// Complements pushed to primitives and constants by De Morgan and
    /// involution; both hold for min/max/1-x, so the result denotes the same
    /// relation. `~0` is kept as the only complemented constant.
    pub fn normal_form(&self) -> IndexTerm {
        self.push(false)
    }

    fn push(&self, negated: bool) -> IndexTerm {
        match (self, negated) {
            (IndexTerm::Zero, false) | (IndexTerm::Prim(_), false) => self.clone(),
            (IndexTerm::Zero, true) | (IndexTerm::Prim(_), true) => IndexTerm::complement(self.clone()),
            (IndexTerm::Compl(a), n) => a.push(!n),
            (IndexTerm::Inter(a, b), false) => IndexTerm::inter(a.push(false), b.push(false)),
            (IndexTerm::Union(a, b), false) => IndexTerm::union(a.push(false), b.push(false)),
            (IndexTerm::Inter(a, b), true) => IndexTerm::union(a.push(true), b.push(true)),
            (IndexTerm::Union(a, b), true) => IndexTerm::inter(a.push(true), b.push(true)),
        }
    }

    fn level(&self) -> u8 {
        match self {
            IndexTerm::Union(..) => 1,
            IndexTerm::Inter(..) => 2,
            _ => 3,
        }
    }

    fn write(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        let paren = self.level() < min;
        if paren {
            write!(f, "(")?;
        }
        match self {
            IndexTerm::Zero => write!(f, "0")?,
            IndexTerm::Prim(name) => write!(f, "{name}")?,
            IndexTerm::Inter(a, b) => {
                a.write(f, 2)?;
                write!(f, " & ")?;
                b.write(f, 3)?;
            }
            IndexTerm::Union(a, b) => {
                a.write(f, 1)?;
                write!(f, " | ")?;
                b.write(f, 2)?;
            }
            IndexTerm::Compl(a) => {
                write!(f, "~")?;
                a.write(f, 3)?;
            }
        }
        if paren {
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl fmt::Display for IndexTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write(f, 0)
    }
}

impl FromStr for IndexTerm {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_index(s)
    }
}
