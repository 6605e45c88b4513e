//! Printer emitting the same syntax the parser reads, re-sugaring `->`, `|`
//! and `<->` and using the minimum number of parentheses.

use std::fmt;

use super::{Formula, ModalKind, Modality};
use crate::multirel::IndexTerm;

const IFF: u8 = 1;
const IMP: u8 = 2;
const OR: u8 = 3;
const AND: u8 = 4;
const UNARY: u8 = 5;

enum View<'a> {
    Atom(&'a str),
    Not(&'a Formula),
    Modal(&'a Modality, &'a Formula),
    Bin(&'static str, u8, &'a Formula, &'a Formula, bool),
}

fn neg_body(f: &Formula) -> Option<&Formula> {
    match f {
        Formula::Not(x) => Some(x),
        _ => None,
    }
}

fn view(f: &Formula) -> View<'_> {
    match f {
        Formula::Atom { name, .. } => View::Atom(name),
        Formula::Not(inner) => {
            if let Formula::And(a, b) = inner.as_ref() {
                // `!(x) & ..` on the left reads better as an implication
                // whose antecedent is itself sugared.
                let sugared_left = matches!(view(a), View::Bin(..));
                if let (Some(a), Some(b), false) = (neg_body(a), neg_body(b), sugared_left) {
                    return View::Bin("|", OR, a, b, false);
                }
                if let Some(b) = neg_body(b) {
                    return View::Bin("->", IMP, a, b, true);
                }
            }
            View::Not(inner)
        }
        Formula::And(l, r) => {
            if let (Some((a, b)), Some((b2, a2))) = (l.as_implication(), r.as_implication()) {
                if a == a2 && b == b2 {
                    return View::Bin("<->", IFF, a, b, true);
                }
            }
            View::Bin("&", AND, l, r, false)
        }
        Formula::Modal(m, body) => View::Modal(m, body),
    }
}

fn level(v: &View<'_>) -> u8 {
    match v {
        View::Bin(_, lvl, ..) => *lvl,
        _ => UNARY,
    }
}

fn write_formula(f: &Formula, out: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
    let v = view(f);
    let paren = level(&v) < min;
    if paren {
        write!(out, "(")?;
    }
    match v {
        View::Atom(name) => write!(out, "{name}")?,
        View::Not(x) => {
            write!(out, "!")?;
            write_formula(x, out, UNARY)?;
        }
        View::Modal(m, body) => {
            write!(out, "{m} ")?;
            write_formula(body, out, UNARY)?;
        }
        View::Bin(op, lvl, a, b, right_assoc) => {
            let (lmin, rmin) = if right_assoc { (lvl + 1, lvl) } else { (lvl, lvl + 1) };
            write_formula(a, out, lmin)?;
            write!(out, " {op} ")?;
            write_formula(b, out, rmin)?;
        }
    }
    if paren {
        write!(out, ")")?;
    }
    Ok(())
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_formula(self, f, 0)
    }
}

impl fmt::Display for Modality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            ModalKind::Necessity => write!(f, "[{}]", self.mark)?,
            ModalKind::Sufficiency => write!(f, "[[{}]]", self.mark)?,
        }
        write!(f, "_{}", self.arg_sort.tag())?;
        if let Some(idx) = &self.index {
            match idx {
                IndexTerm::Zero | IndexTerm::Prim(_) | IndexTerm::Compl(_) => write!(f, "^{idx}")?,
                _ => write!(f, "^({idx})")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::super::{parse, Signature};
    use crate::fuzzy::Sort;

    fn roundtrip(text: &str, sort: Sort) {
        let f = parse(text, &Signature::new(), Some(sort)).unwrap();
        let printed = f.to_string();
        assert_eq!(printed, text);
        assert_eq!(parse(&printed, &Signature::new(), Some(sort)).unwrap(), f);
    }

    #[test]
    fn prints_minimal_parentheses() {
        roundtrip("a & b | c -> d <-> e", Sort::Object);
        roundtrip("(a -> b) -> c", Sort::Object);
        roundtrip("a -> b -> c", Sort::Object);
        roundtrip("!(a | b) & c", Sort::Object);
        roundtrip("[0.5]_p q", Sort::Object);
        roundtrip("[[1/3+]]_o (p & !r)", Sort::Property);
        roundtrip("![0.7+]_o !p", Sort::Property);
        roundtrip("[1]_p^(a | ~b) q", Sort::Object);
        roundtrip("[1]_p^~a q", Sort::Object);
        roundtrip("a | b | c", Sort::Object);
        roundtrip("a | (b | c)", Sort::Object);
        roundtrip("!!a", Sort::Object);
    }
}
