//! Fuzzy formal contexts and the crisp/fuzzy subsets of their two universes.

use std::collections::HashSet;
use std::fmt;

use fixedbitset::FixedBitSet;
use thiserror::Error;

use super::degree::Degree;

/// The two universes of a context: objects (`G`, sort s1) and attributes
/// (`M`, sort s2). Formulas of sort s1 are evaluated at objects.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sort {
    Object,
    Property,
}

impl Sort {
    pub fn other(self) -> Sort {
        match self {
            Sort::Object => Sort::Property,
            Sort::Property => Sort::Object,
        }
    }

    /// Modality subscript naming an argument of this sort.
    pub fn tag(self) -> char {
        match self {
            Sort::Object => 'o',
            Sort::Property => 'p',
        }
    }
}

impl fmt::Display for Sort {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sort::Object => f.write_str("s1"),
            Sort::Property => f.write_str("s2"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ContextError {
    #[error("the {0} list is empty")]
    EmptyUniverse(&'static str),
    #[error("duplicate {kind} name `{name}`")]
    Duplicate { kind: &'static str, name: String },
    #[error("incidence has {got} cells, expected {expected}")]
    Shape { expected: usize, got: usize },
    #[error("unknown {kind} `{name}`")]
    Unknown { kind: &'static str, name: String },
    #[error("expected a subset of sort {expected}, got {got}")]
    SortMismatch { expected: Sort, got: Sort },
}

/// A point of one of the two universes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Element {
    pub sort: Sort,
    pub index: usize,
}

impl Element {
    pub fn object(index: usize) -> Self {
        Element { sort: Sort::Object, index }
    }

    pub fn attribute(index: usize) -> Self {
        Element { sort: Sort::Property, index }
    }
}

/// A crisp subset of one universe.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CrispSet {
    sort: Sort,
    bits: FixedBitSet,
}

impl CrispSet {
    pub fn empty(sort: Sort, universe: usize) -> Self {
        CrispSet { sort, bits: FixedBitSet::with_capacity(universe) }
    }

    pub fn full(sort: Sort, universe: usize) -> Self {
        let mut bits = FixedBitSet::with_capacity(universe);
        bits.insert_range(..);
        CrispSet { sort, bits }
    }

    pub fn from_indices(sort: Sort, universe: usize, indices: impl IntoIterator<Item = usize>) -> Self {
        let mut set = Self::empty(sort, universe);
        for i in indices {
            set.insert(i);
        }
        set
    }

    /// Subset whose members are the set bits of `mask` (bit `i` = element `i`).
    pub fn from_mask(sort: Sort, universe: usize, mask: u64) -> Self {
        Self::from_indices(sort, universe, (0..universe).filter(|i| mask >> i & 1 == 1))
    }

    pub fn sort(&self) -> Sort {
        self.sort
    }

    /// Size of the universe the set lives in.
    pub fn universe(&self) -> usize {
        self.bits.len()
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_clear()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.bits.contains(i)
    }

    pub fn insert(&mut self, i: usize) {
        self.bits.insert(i);
    }

    pub fn remove(&mut self, i: usize) {
        self.bits.set(i, false);
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits.ones()
    }

    pub fn complement(&self) -> Self {
        let mut bits = self.bits.clone();
        bits.toggle_range(..);
        CrispSet { sort: self.sort, bits }
    }

    pub fn intersection(&self, other: &CrispSet) -> Self {
        debug_assert_eq!(self.sort, other.sort);
        let mut bits = self.bits.clone();
        bits.intersect_with(&other.bits);
        CrispSet { sort: self.sort, bits }
    }

    pub fn union(&self, other: &CrispSet) -> Self {
        debug_assert_eq!(self.sort, other.sort);
        let mut bits = self.bits.clone();
        bits.union_with(&other.bits);
        CrispSet { sort: self.sort, bits }
    }

    pub fn is_subset(&self, other: &CrispSet) -> bool {
        self.sort == other.sort && self.bits.is_subset(&other.bits)
    }

    /// Bit mask of the members; universes are at most 64 elements wide here.
    pub fn mask(&self) -> u64 {
        self.iter().fold(0u64, |m, i| m | 1 << i)
    }
}

impl fmt::Debug for CrispSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{:?}", self.sort.tag(), self.iter().collect::<Vec<_>>())
    }
}

/// A fuzzy subset of one universe, given by its full membership table.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FuzzySet {
    sort: Sort,
    membership: Vec<Degree>,
}

impl FuzzySet {
    pub fn new(sort: Sort, membership: Vec<Degree>) -> Self {
        FuzzySet { sort, membership }
    }

    pub fn constant(sort: Sort, universe: usize, value: Degree) -> Self {
        FuzzySet { sort, membership: vec![value; universe] }
    }

    pub fn sort(&self) -> Sort {
        self.sort
    }

    pub fn membership(&self) -> &[Degree] {
        &self.membership
    }

    pub fn get(&self, i: usize) -> Degree {
        self.membership[i]
    }

    /// `{w | A(w) >= c}`, or `{w | A(w) > c}` when `strict`.
    pub fn cut(&self, c: Degree, strict: bool) -> CrispSet {
        let members = self
            .membership
            .iter()
            .enumerate()
            .filter(|(_, &d)| if strict { d > c } else { d >= c })
            .map(|(i, _)| i);
        CrispSet::from_indices(self.sort, self.membership.len(), members)
    }
}

/// `(G, M, I)` with `I: G x M -> [0,1]` stored row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FuzzyContext {
    objects: Vec<String>,
    attributes: Vec<String>,
    incidence: Vec<Degree>,
}

impl FuzzyContext {
    pub fn new(
        objects: Vec<String>,
        attributes: Vec<String>,
        incidence: Vec<Degree>,
    ) -> Result<Self, ContextError> {
        check_names("object", &objects)?;
        check_names("attribute", &attributes)?;
        let expected = objects.len() * attributes.len();
        if incidence.len() != expected {
            return Err(ContextError::Shape { expected, got: incidence.len() });
        }
        Ok(FuzzyContext { objects, attributes, incidence })
    }

    /// Context with generated names `g1..gn`, `m1..mk` and row-major cells.
    pub fn from_rows(rows: Vec<Vec<Degree>>) -> Result<Self, ContextError> {
        let width = rows.first().map_or(0, Vec::len);
        let objects = (1..=rows.len()).map(|i| format!("g{i}")).collect();
        let attributes = (1..=width).map(|i| format!("m{i}")).collect();
        let incidence: Vec<Degree> = rows.into_iter().flatten().collect();
        Self::new(objects, attributes, incidence)
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn attributes(&self) -> &[String] {
        &self.attributes
    }

    pub fn n_objects(&self) -> usize {
        self.objects.len()
    }

    pub fn n_attributes(&self) -> usize {
        self.attributes.len()
    }

    /// Number of elements of the given sort.
    pub fn size(&self, sort: Sort) -> usize {
        match sort {
            Sort::Object => self.objects.len(),
            Sort::Property => self.attributes.len(),
        }
    }

    pub fn names(&self, sort: Sort) -> &[String] {
        match sort {
            Sort::Object => &self.objects,
            Sort::Property => &self.attributes,
        }
    }

    pub fn lookup(&self, sort: Sort, name: &str) -> Result<Element, ContextError> {
        self.names(sort)
            .iter()
            .position(|n| n == name)
            .map(|index| Element { sort, index })
            .ok_or_else(|| ContextError::Unknown {
                kind: match sort {
                    Sort::Object => "object",
                    Sort::Property => "attribute",
                },
                name: name.to_string(),
            })
    }

    /// `I(g, m)`.
    pub fn incidence(&self, g: usize, m: usize) -> Degree {
        self.incidence[g * self.attributes.len() + m]
    }

    pub fn cells(&self) -> &[Degree] {
        &self.incidence
    }

    /// Degree between a pivot and an element of the opposite sort; this is
    /// `pi_g(m)` for an object pivot and `pi_m(g)` for an attribute pivot.
    pub fn link(&self, pivot: Element, other: usize) -> Degree {
        match pivot.sort {
            Sort::Object => self.incidence(pivot.index, other),
            Sort::Property => self.incidence(other, pivot.index),
        }
    }

    pub fn empty_set(&self, sort: Sort) -> CrispSet {
        CrispSet::empty(sort, self.size(sort))
    }

    pub fn full_set(&self, sort: Sort) -> CrispSet {
        CrispSet::full(sort, self.size(sort))
    }

    /// Same domains with every cell replaced by `f(cell)`.
    pub fn map_cells(&self, f: impl Fn(Degree) -> Degree) -> FuzzyContext {
        FuzzyContext {
            objects: self.objects.clone(),
            attributes: self.attributes.clone(),
            incidence: self.incidence.iter().map(|&d| f(d)).collect(),
        }
    }

    /// The complemented context `J(g, m) = 1 - I(g, m)`.
    pub fn complement(&self) -> FuzzyContext {
        self.map_cells(Degree::complement)
    }

    /// Whether every cell is 0 or 1.
    pub fn is_crisp(&self) -> bool {
        self.incidence.iter().all(|d| d.is_zero() || d.is_one())
    }

    /// Distinct degrees appearing in the incidence, ascending.
    pub fn distinct_degrees(&self) -> Vec<Degree> {
        let mut v = self.incidence.clone();
        v.sort();
        v.dedup();
        v
    }
}

/// Complemented context; see [`FuzzyContext::complement`].
pub fn complement_context(ctx: &FuzzyContext) -> FuzzyContext {
    ctx.complement()
}

fn check_names(kind: &'static str, names: &[String]) -> Result<(), ContextError> {
    if names.is_empty() {
        return Err(ContextError::EmptyUniverse(kind));
    }
    let mut seen = HashSet::new();
    for n in names {
        if !seen.insert(n.as_str()) {
            return Err(ContextError::Duplicate { kind, name: n.clone() });
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k0() -> FuzzyContext {
        let d = Degree::frac;
        FuzzyContext::from_rows(vec![vec![d(1, 1), d(3, 5)], vec![d(3, 10), d(0, 1)]]).unwrap()
    }

    #[test]
    fn rejects_malformed_contexts() {
        let names = |v: &[&str]| v.iter().map(|s| s.to_string()).collect::<Vec<_>>();
        assert_eq!(
            FuzzyContext::new(vec![], names(&["m"]), vec![]),
            Err(ContextError::EmptyUniverse("object"))
        );
        assert!(matches!(
            FuzzyContext::new(names(&["g", "g"]), names(&["m"]), vec![Degree::ONE; 2]),
            Err(ContextError::Duplicate { .. })
        ));
        assert!(matches!(
            FuzzyContext::new(names(&["g"]), names(&["m"]), vec![]),
            Err(ContextError::Shape { expected: 1, got: 0 })
        ));
    }

    #[test]
    fn complement_flips_and_is_involutive() {
        let k = k0();
        assert_eq!(k.complement().incidence(0, 1), Degree::frac(2, 5));
        assert_eq!(k.complement().complement(), k);
        let crisp = FuzzyContext::from_rows(vec![vec![Degree::ONE, Degree::ZERO]]).unwrap();
        assert_eq!(crisp.complement().cells(), &[Degree::ZERO, Degree::ONE]);
    }

    #[test]
    fn cuts_compare_exactly() {
        let fs = FuzzySet::new(Sort::Property, vec![Degree::ONE, Degree::frac(3, 5)]);
        let c = Degree::frac(3, 5);
        assert_eq!(fs.cut(c, false).iter().collect::<Vec<_>>(), vec![0, 1]);
        assert_eq!(fs.cut(c, true).iter().collect::<Vec<_>>(), vec![0]);
        assert_eq!(fs.cut(Degree::ZERO, false).len(), 2);
    }

    #[test]
    fn set_algebra() {
        let a = CrispSet::from_mask(Sort::Object, 4, 0b0011);
        let b = CrispSet::from_mask(Sort::Object, 4, 0b0110);
        assert_eq!(a.intersection(&b).mask(), 0b0010);
        assert_eq!(a.union(&b).mask(), 0b0111);
        assert_eq!(a.complement().mask(), 0b1100);
        assert!(a.intersection(&b).is_subset(&a));
        assert!(!a.is_subset(&b));
    }
}
