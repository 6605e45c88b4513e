//! Two-sorted weighted modal formulas.
//!
//! Formulas of sort s1 talk about objects and formulas of sort s2 about
//! properties. A modality takes an argument of one sort and yields a formula
//! of the other; its subscript names the argument's sort, so `[c]_p psi` is an
//! object formula whose argument `psi` is a property formula.
//!
//! Only atoms, `!`, `&` and the primitive necessity (`[c]`, `[c+]`) and
//! sufficiency (`[[c]]`, `[[c+]]`) modalities are represented; everything else
//! is sugar eliminated at construction time.

mod parse;
mod print;

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::fuzzy::Degree;
use crate::multirel::IndexTerm;

pub use crate::fuzzy::Sort;
pub use parse::{parse, parse_index, ParseError, ParseErrorKind, Signature};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormulaError {
    #[error("sort mismatch: expected {expected}, found {found}")]
    SortMismatch { expected: Sort, found: Sort },
    #[error("formula is not in the {0} fragment")]
    Fragment(&'static str),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ModalKind {
    /// `[c]`: lower bound on the necessity measure.
    Necessity,
    /// `[[c]]`: lower bound on the guaranteed possibility measure.
    Sufficiency,
}

/// A weight `c` on a modality; `strict` turns `[c]` into `[c+]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct WeightMark {
    pub degree: Degree,
    pub strict: bool,
}

impl WeightMark {
    pub fn weak(degree: Degree) -> Self {
        WeightMark { degree, strict: false }
    }

    pub fn strict(degree: Degree) -> Self {
        WeightMark { degree, strict: true }
    }

    /// Whether a measure value meets this mark (`>=` or `>`).
    pub fn admits(self, value: Degree) -> bool {
        if self.strict {
            value > self.degree
        } else {
            value >= self.degree
        }
    }
}

impl fmt::Display for WeightMark {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.degree, if self.strict { "+" } else { "" })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Modality {
    pub kind: ModalKind,
    pub mark: WeightMark,
    /// Sort of the argument; the modal formula has the other sort.
    pub arg_sort: Sort,
    /// Relation index, present only in multi-relational formulas.
    pub index: Option<IndexTerm>,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Formula {
    Atom { name: String, sort: Sort },
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Modal(Modality, Box<Formula>),
}

/// The four derived (diamond-like) modalities.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DerivedKind {
    /// `<c> a := ![(1-c)+] !a`
    Pos,
    /// `<c+> a := ![1-c] !a`
    PosStrict,
    /// `<<c>> a := ![[(1-c)+]] !a`
    SuffDual,
    /// `<<c+>> a := ![[1-c]] !a`
    SuffDualStrict,
}

impl Formula {
    pub fn atom(name: impl Into<String>, sort: Sort) -> Formula {
        Formula::Atom { name: name.into(), sort }
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Formula {
        Formula::Not(Box::new(f))
    }

    pub fn and(a: Formula, b: Formula) -> Result<Formula, FormulaError> {
        same_sort(&a, &b)?;
        Ok(Formula::And(Box::new(a), Box::new(b)))
    }

    /// `a | b := !(!a & !b)`
    pub fn or(a: Formula, b: Formula) -> Result<Formula, FormulaError> {
        Ok(Formula::not(Formula::and(Formula::not(a), Formula::not(b))?))
    }

    /// `a -> b := !(a & !b)`
    pub fn implies(a: Formula, b: Formula) -> Result<Formula, FormulaError> {
        Ok(Formula::not(Formula::and(a, Formula::not(b))?))
    }

    /// `a <-> b := (a -> b) & (b -> a)`
    pub fn iff(a: Formula, b: Formula) -> Result<Formula, FormulaError> {
        Formula::and(Formula::implies(a.clone(), b.clone())?, Formula::implies(b, a)?)
    }

    /// Conjunction of a non-empty list, folded to the left.
    pub fn conjunction(items: impl IntoIterator<Item = Formula>) -> Result<Option<Formula>, FormulaError> {
        let mut acc: Option<Formula> = None;
        for f in items {
            acc = Some(match acc {
                None => f,
                Some(a) => Formula::and(a, f)?,
            });
        }
        Ok(acc)
    }

    pub fn modal(kind: ModalKind, mark: WeightMark, index: Option<IndexTerm>, body: Formula) -> Formula {
        let arg_sort = body.sort();
        Formula::Modal(Modality { kind, mark, arg_sort, index }, Box::new(body))
    }

    pub fn nec(mark: WeightMark, body: Formula) -> Formula {
        Formula::modal(ModalKind::Necessity, mark, None, body)
    }

    pub fn suff(mark: WeightMark, body: Formula) -> Formula {
        Formula::modal(ModalKind::Sufficiency, mark, None, body)
    }

    pub fn sort(&self) -> Sort {
        match self {
            Formula::Atom { sort, .. } => *sort,
            Formula::Not(f) => f.sort(),
            Formula::And(a, _) => a.sort(),
            Formula::Modal(m, _) => m.arg_sort.other(),
        }
    }

    /// Verifies sort-correctness of every node.
    pub fn check_sorts(&self) -> Result<Sort, FormulaError> {
        match self {
            Formula::Atom { sort, .. } => Ok(*sort),
            Formula::Not(f) => f.check_sorts(),
            Formula::And(a, b) => {
                let (sa, sb) = (a.check_sorts()?, b.check_sorts()?);
                if sa != sb {
                    return Err(FormulaError::SortMismatch { expected: sa, found: sb });
                }
                Ok(sa)
            }
            Formula::Modal(m, body) => {
                let s = body.check_sorts()?;
                if s != m.arg_sort {
                    return Err(FormulaError::SortMismatch { expected: m.arg_sort, found: s });
                }
                Ok(s.other())
            }
        }
    }

    /// Whether any modality of the given kind occurs.
    pub fn contains_kind(&self, kind: ModalKind) -> bool {
        match self {
            Formula::Atom { .. } => false,
            Formula::Not(f) => f.contains_kind(kind),
            Formula::And(a, b) => a.contains_kind(kind) || b.contains_kind(kind),
            Formula::Modal(m, body) => m.kind == kind || body.contains_kind(kind),
        }
    }

    /// Whether any modality carries a relation index.
    pub fn is_indexed(&self) -> bool {
        match self {
            Formula::Atom { .. } => false,
            Formula::Not(f) => f.is_indexed(),
            Formula::And(a, b) => a.is_indexed() || b.is_indexed(),
            Formula::Modal(m, body) => m.index.is_some() || body.is_indexed(),
        }
    }

    /// Propositional symbols with their sorts.
    pub fn atoms(&self) -> BTreeSet<(String, Sort)> {
        let mut out = BTreeSet::new();
        self.collect_atoms(&mut out);
        out
    }

    fn collect_atoms(&self, out: &mut BTreeSet<(String, Sort)>) {
        match self {
            Formula::Atom { name, sort } => {
                out.insert((name.clone(), *sort));
            }
            Formula::Not(f) => f.collect_atoms(out),
            Formula::And(a, b) => {
                a.collect_atoms(out);
                b.collect_atoms(out);
            }
            Formula::Modal(_, body) => body.collect_atoms(out),
        }
    }

    /// Height of the syntax tree; atoms have depth 0.
    pub fn depth(&self) -> usize {
        match self {
            Formula::Atom { .. } => 0,
            Formula::Not(f) => 1 + f.depth(),
            Formula::And(a, b) => 1 + a.depth().max(b.depth()),
            Formula::Modal(_, body) => 1 + body.depth(),
        }
    }

    pub fn modal_depth(&self) -> usize {
        match self {
            Formula::Atom { .. } => 0,
            Formula::Not(f) => f.modal_depth(),
            Formula::And(a, b) => a.modal_depth().max(b.modal_depth()),
            Formula::Modal(_, body) => 1 + body.modal_depth(),
        }
    }

    /// Removes every `!!` pair, including under modalities.
    pub fn strip_double_negations(&self) -> Formula {
        match self {
            Formula::Atom { .. } => self.clone(),
            Formula::Not(inner) => match inner.as_ref() {
                Formula::Not(x) => x.strip_double_negations(),
                other => Formula::not(other.strip_double_negations()),
            },
            Formula::And(a, b) => Formula::And(
                Box::new(a.strip_double_negations()),
                Box::new(b.strip_double_negations()),
            ),
            Formula::Modal(m, body) => Formula::Modal(m.clone(), Box::new(body.strip_double_negations())),
        }
    }

    /// Visits every weight mark.
    pub fn marks(&self) -> Vec<WeightMark> {
        let mut out = Vec::new();
        self.collect_marks(&mut out);
        out
    }

    fn collect_marks(&self, out: &mut Vec<WeightMark>) {
        match self {
            Formula::Atom { .. } => {}
            Formula::Not(f) => f.collect_marks(out),
            Formula::And(a, b) => {
                a.collect_marks(out);
                b.collect_marks(out);
            }
            Formula::Modal(m, body) => {
                out.push(m.mark);
                body.collect_marks(out);
            }
        }
    }

    /// Splits `!(a & !b)` into `(a, b)`.
    pub fn as_implication(&self) -> Option<(&Formula, &Formula)> {
        if let Formula::Not(inner) = self {
            if let Formula::And(a, nb) = inner.as_ref() {
                if let Formula::Not(b) = nb.as_ref() {
                    return Some((a, b));
                }
            }
        }
        None
    }
}

fn same_sort(a: &Formula, b: &Formula) -> Result<(), FormulaError> {
    let (sa, sb) = (a.sort(), b.sort());
    if sa != sb {
        return Err(FormulaError::SortMismatch { expected: sa, found: sb });
    }
    Ok(())
}

/// Definitional expansion of a derived modality applied to `arg`.
pub fn expand_derived(kind: DerivedKind, c: Degree, arg: Formula, index: Option<IndexTerm>) -> Formula {
    let inv = c.complement();
    let (modal, mark) = match kind {
        DerivedKind::Pos => (ModalKind::Necessity, WeightMark::strict(inv)),
        DerivedKind::PosStrict => (ModalKind::Necessity, WeightMark::weak(inv)),
        DerivedKind::SuffDual => (ModalKind::Sufficiency, WeightMark::strict(inv)),
        DerivedKind::SuffDualStrict => (ModalKind::Sufficiency, WeightMark::weak(inv)),
    };
    Formula::not(Formula::modal(modal, mark, index, Formula::not(arg)))
}

/// `<c>` (or `<c+>` when `strict`) applied to `arg`.
pub fn possibly(c: Degree, strict: bool, arg: Formula) -> Formula {
    let kind = if strict { DerivedKind::PosStrict } else { DerivedKind::Pos };
    expand_derived(kind, c, arg, None)
}

/// Finite set of degrees, always containing 0 and 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DegreeSet(BTreeSet<Degree>);

impl DegreeSet {
    pub fn new(degrees: impl IntoIterator<Item = Degree>) -> Self {
        let mut set: BTreeSet<Degree> = degrees.into_iter().collect();
        set.insert(Degree::ZERO);
        set.insert(Degree::ONE);
        DegreeSet(set)
    }

    /// Closes under `c -> 1 - c`.
    pub fn symmetric(degrees: impl IntoIterator<Item = Degree>) -> Self {
        let mut set = BTreeSet::new();
        for d in degrees {
            set.insert(d);
            set.insert(d.complement());
        }
        DegreeSet::new(set)
    }

    pub fn contains(&self, d: Degree) -> bool {
        self.0.contains(&d)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Ascending.
    pub fn iter(&self) -> impl DoubleEndedIterator<Item = Degree> + '_ {
        self.0.iter().copied()
    }

    pub fn is_subset(&self, other: &DegreeSet) -> bool {
        self.0.is_subset(&other.0)
    }

    pub fn union(&self, other: &DegreeSet) -> DegreeSet {
        DegreeSet(self.0.union(&other.0).copied().collect())
    }

    pub fn is_closed_under_complement(&self) -> bool {
        self.0.iter().all(|d| self.0.contains(&d.complement()))
    }
}

impl fmt::Display for DegreeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = self.0.iter().map(Degree::to_string).collect();
        write!(f, "{{{}}}", items.join(", "))
    }
}

/// Degrees occurring in `phi`, closed under `1 - c`, plus 0 and 1.
pub fn deg_of(phi: &Formula) -> DegreeSet {
    DegreeSet::symmetric(phi.marks().into_iter().map(|m| m.degree))
}

/// Union of [`deg_of`] over a set of formulas.
pub fn deg_of_all<'a>(phis: impl IntoIterator<Item = &'a Formula>) -> DegreeSet {
    DegreeSet::symmetric(phis.into_iter().flat_map(|f| f.marks()).map(|m| m.degree))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RhoDirection {
    /// Sufficiency fragment to necessity fragment.
    SuffToNec,
    /// Necessity fragment back to sufficiency fragment.
    NecToSuff,
}

/// Swaps every modality for the other kind and negates its argument:
/// `[[x]] a` becomes `[x] !rho(a)` (and conversely).
pub fn translate_rho(phi: &Formula, direction: RhoDirection) -> Result<Formula, FormulaError> {
    let (from, to, name) = match direction {
        RhoDirection::SuffToNec => (ModalKind::Sufficiency, ModalKind::Necessity, "sufficiency"),
        RhoDirection::NecToSuff => (ModalKind::Necessity, ModalKind::Sufficiency, "necessity"),
    };
    if phi.contains_kind(to) {
        return Err(FormulaError::Fragment(name));
    }
    Ok(rho(phi, from, to))
}

fn rho(phi: &Formula, from: ModalKind, to: ModalKind) -> Formula {
    match phi {
        Formula::Atom { .. } => phi.clone(),
        Formula::Not(f) => Formula::not(rho(f, from, to)),
        Formula::And(a, b) => Formula::And(Box::new(rho(a, from, to)), Box::new(rho(b, from, to))),
        Formula::Modal(m, body) => {
            debug_assert_eq!(m.kind, from);
            let mut swapped = m.clone();
            swapped.kind = to;
            Formula::Modal(swapped, Box::new(Formula::not(rho(body, from, to))))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(s: &str) -> Degree {
        s.parse().unwrap()
    }

    fn q() -> Formula {
        Formula::atom("q", Sort::Property)
    }

    fn p() -> Formula {
        Formula::atom("p", Sort::Object)
    }

    #[test]
    fn modal_sorts_flip() {
        let f = Formula::nec(WeightMark::weak(d("0.5")), q());
        assert_eq!(f.sort(), Sort::Object);
        assert_eq!(f.check_sorts(), Ok(Sort::Object));
        assert!(Formula::and(p(), q()).is_err());
    }

    #[test]
    fn expand_derived_examples() {
        let phi = p();
        let e = expand_derived(DerivedKind::Pos, d("0.3"), phi.clone(), None);
        let expected = Formula::not(Formula::nec(WeightMark::strict(d("0.7")), Formula::not(phi.clone())));
        assert_eq!(e, expected);

        let e = expand_derived(DerivedKind::PosStrict, Degree::ONE, q(), None);
        assert_eq!(e, Formula::not(Formula::nec(WeightMark::weak(Degree::ZERO), Formula::not(q()))));

        let e = expand_derived(DerivedKind::SuffDual, Degree::ZERO, phi.clone(), None);
        assert_eq!(e, Formula::not(Formula::suff(WeightMark::strict(Degree::ONE), Formula::not(phi))));
    }

    #[test]
    fn deg_of_examples() {
        assert_eq!(deg_of(&p()), DegreeSet::new([]));
        let f = Formula::nec(WeightMark::weak(d("0.3")), q());
        assert_eq!(deg_of(&f), DegreeSet::new([d("0.3"), d("0.7")]));
        let g = Formula::suff(WeightMark::weak(d("1/2")), p());
        assert_eq!(deg_of(&g).len(), 3);
        assert!(deg_of(&g).is_closed_under_complement());
    }

    #[test]
    fn rho_examples() {
        let f = Formula::suff(WeightMark::weak(d("0.4")), q());
        let r = translate_rho(&f, RhoDirection::SuffToNec).unwrap();
        assert_eq!(r, Formula::nec(WeightMark::weak(d("0.4")), Formula::not(q())));

        let plain = Formula::and(p(), Formula::not(Formula::atom("r", Sort::Object))).unwrap();
        assert_eq!(translate_rho(&plain, RhoDirection::SuffToNec).unwrap(), plain);

        let c = WeightMark::strict(d("0.2"));
        let dd = WeightMark::weak(d("0.6"));
        let nested = Formula::suff(c, Formula::suff(dd, q()));
        let expected = Formula::nec(c, Formula::not(Formula::nec(dd, Formula::not(q()))));
        assert_eq!(translate_rho(&nested, RhoDirection::SuffToNec).unwrap(), expected);

        assert!(translate_rho(&r, RhoDirection::SuffToNec).is_err());
        assert!(translate_rho(&f, RhoDirection::NecToSuff).is_err());
        let back = translate_rho(&r, RhoDirection::NecToSuff).unwrap();
        assert_eq!(back.strip_double_negations(), f);
    }

    #[test]
    fn double_negation_stripping() {
        let f = Formula::not(Formula::not(Formula::nec(WeightMark::weak(Degree::ONE), Formula::not(Formula::not(q())))));
        assert_eq!(f.strip_double_negations(), Formula::nec(WeightMark::weak(Degree::ONE), q()));
    }
}
