//! Several fuzzy relations over one pair of domains, relation index terms
//! and the index-term equality used by rule (EQ).

mod bm;
mod index;

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};

use thiserror::Error;

use crate::fuzzy::{ContextError, Degree, FuzzyContext, Sort};
use crate::model::{Interpretation, ModelError, Valuation};

pub use bm::{check_bm_axioms, BmConfig, BmFailure, BmReport};
pub use index::IndexTerm;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MultiError {
    #[error("undeclared relation `{0}`")]
    Undeclared(String),
    #[error("a multi-relational context needs at least one relation")]
    NoRelations,
    #[error("duplicate relation `{0}`")]
    Duplicate(String),
    #[error("relation `{0}` differs in shape or names from the first relation")]
    Shape(String),
    #[error(transparent)]
    Context(#[from] ContextError),
}

/// Named primitive relations sharing `G` and `M`. Derived relations are
/// computed on demand and cached by the normal form of their index.
#[derive(Debug)]
pub struct MultiContext {
    relations: BTreeMap<String, FuzzyContext>,
    cache: Mutex<HashMap<IndexTerm, Arc<FuzzyContext>>>,
}

impl Clone for MultiContext {
    fn clone(&self) -> Self {
        MultiContext { relations: self.relations.clone(), cache: Mutex::default() }
    }
}

impl PartialEq for MultiContext {
    fn eq(&self, other: &Self) -> bool {
        self.relations == other.relations
    }
}

impl Eq for MultiContext {}

impl MultiContext {
    pub fn new(relations: impl IntoIterator<Item = (String, FuzzyContext)>) -> Result<Self, MultiError> {
        let mut map = BTreeMap::new();
        let mut first: Option<FuzzyContext> = None;
        for (name, ctx) in relations {
            match &first {
                None => first = Some(ctx.clone()),
                Some(f) => {
                    if f.objects() != ctx.objects() || f.attributes() != ctx.attributes() {
                        return Err(MultiError::Shape(name));
                    }
                }
            }
            if map.insert(name.clone(), ctx).is_some() {
                return Err(MultiError::Duplicate(name));
            }
        }
        if map.is_empty() {
            return Err(MultiError::NoRelations);
        }
        Ok(MultiContext { relations: map, cache: Mutex::default() })
    }

    /// Builds relations from row-major cell vectors over shared names.
    pub fn from_cells(
        objects: Vec<String>,
        attributes: Vec<String>,
        relations: impl IntoIterator<Item = (String, Vec<Degree>)>,
    ) -> Result<Self, MultiError> {
        let mut built = Vec::new();
        for (name, cells) in relations {
            built.push((name, FuzzyContext::new(objects.clone(), attributes.clone(), cells)?));
        }
        MultiContext::new(built)
    }

    fn any(&self) -> &FuzzyContext {
        self.relations.values().next().expect("at least one relation")
    }

    pub fn objects(&self) -> &[String] {
        self.any().objects()
    }

    pub fn attributes(&self) -> &[String] {
        self.any().attributes()
    }

    pub fn size(&self, sort: Sort) -> usize {
        self.any().size(sort)
    }

    pub fn primitive(&self, name: &str) -> Option<&FuzzyContext> {
        self.relations.get(name)
    }

    pub fn relations(&self) -> impl Iterator<Item = (&str, &FuzzyContext)> {
        self.relations.iter().map(|(k, v)| (k.as_str(), v))
    }

    pub fn relation_names(&self) -> impl Iterator<Item = &str> {
        self.relations.keys().map(String::as_str)
    }
}

/// The relation denoted by `idx`: pointwise min, max, `1 - x` and the
/// constant 0 over the primitive relations.
pub fn derived_relation(mctx: &MultiContext, idx: &IndexTerm) -> Result<Arc<FuzzyContext>, MultiError> {
    if let Some(missing) = idx.primitives().into_iter().find(|p| !mctx.relations.contains_key(*p)) {
        return Err(MultiError::Undeclared(missing.to_string()));
    }
    let key = idx.normal_form();
    if let Some(hit) = mctx.cache.lock().expect("cache lock").get(&key) {
        return Ok(Arc::clone(hit));
    }
    let base = mctx.any();
    let cells = (0..base.cells().len())
        .map(|k| {
            key.eval(
                &Degree::ZERO,
                &|p| mctx.relations[p].cells()[k],
                &|a: Degree, b| a.min(b),
                &|a: Degree, b| a.max(b),
                &|a: Degree| a.complement(),
            )
        })
        .collect();
    let rel = Arc::new(FuzzyContext::new(base.objects().to_vec(), base.attributes().to_vec(), cells)?);
    mctx.cache.lock().expect("cache lock").insert(key, Arc::clone(&rel));
    Ok(rel)
}

/// Primitives of both terms, in a fixed order.
fn shared_primitives<'a>(i: &'a IndexTerm, j: &'a IndexTerm) -> Vec<&'a str> {
    let mut all = i.primitives();
    all.extend(j.primitives());
    all.into_iter().collect()
}

/// Whether `i = j` holds under every assignment of the primitives into
/// `carrier` with the given operations.
fn equal_over<T: Clone + PartialEq>(
    i: &IndexTerm,
    j: &IndexTerm,
    carrier: &[T],
    zero: &T,
    meet: &impl Fn(T, T) -> T,
    join: &impl Fn(T, T) -> T,
    neg: &impl Fn(T) -> T,
) -> bool {
    let prims = shared_primitives(i, j);
    let k = carrier.len();
    let total = k.checked_pow(prims.len() as u32).expect("too many primitives to enumerate");
    (0..total).all(|code| {
        let mut assignment: HashMap<&str, T> = HashMap::new();
        let mut rest = code;
        for p in &prims {
            assignment.insert(p, carrier[rest % k].clone());
            rest /= k;
        }
        let lookup = |name: &str| assignment[name].clone();
        i.eval(zero, &lookup, meet, join, neg) == j.eval(zero, &lookup, meet, join, neg)
    })
}

/// Equality of index terms in every multi-relational context, decided over
/// the three-element chain `{0, 1/2, 1}` with min, max and `1 - x`.
pub fn za_equal(i: &IndexTerm, j: &IndexTerm) -> bool {
    let chain = [Degree::ZERO, Degree::frac(1, 2), Degree::ONE];
    equal_over(i, j, &chain, &Degree::ZERO, &|a: Degree, b| a.min(b), &|a: Degree, b| a.max(b), &|a: Degree| {
        a.complement()
    })
}

/// Equality in the four-element De Morgan algebra `{0, a, b, 1}` where `a`
/// and `b` are incomparable fixed points of negation. Elements are pairs of
/// bits ordered componentwise, with `~(x, y) = (1 - y, 1 - x)`.
pub fn za_equal_strict(i: &IndexTerm, j: &IndexTerm) -> bool {
    let carrier = [(false, false), (true, false), (false, true), (true, true)];
    equal_over(
        i,
        j,
        &carrier,
        &(false, false),
        &|a: (bool, bool), b: (bool, bool)| (a.0 && b.0, a.1 && b.1),
        &|a: (bool, bool), b: (bool, bool)| (a.0 || b.0, a.1 || b.1),
        &|a: (bool, bool)| (!a.1, !a.0),
    )
}

/// Verdicts of both equality checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ZaVerdict {
    pub chain: bool,
    pub de_morgan: bool,
}

impl ZaVerdict {
    pub fn agree(self) -> bool {
        self.chain == self.de_morgan
    }
}

pub fn za_check(i: &IndexTerm, j: &IndexTerm) -> ZaVerdict {
    ZaVerdict { chain: za_equal(i, j), de_morgan: za_equal_strict(i, j) }
}

/// A multi-relational fuzzy context model. Every modality must carry an
/// index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiModel {
    context: MultiContext,
    valuation: Valuation,
}

impl MultiModel {
    pub fn new(context: MultiContext, valuation: Valuation) -> Result<Self, ModelError> {
        for (_, set) in valuation.iter() {
            let expected = context.size(set.sort());
            if set.universe() != expected {
                return Err(ContextError::Shape { expected, got: set.universe() }.into());
            }
        }
        Ok(MultiModel { context, valuation })
    }

    pub fn context(&self) -> &MultiContext {
        &self.context
    }

    pub fn valuation(&self) -> &Valuation {
        &self.valuation
    }
}

impl Interpretation for MultiModel {
    fn size(&self, sort: Sort) -> usize {
        self.context.size(sort)
    }

    fn valuation(&self) -> &Valuation {
        &self.valuation
    }

    fn relation(&self, index: Option<&IndexTerm>) -> Result<Arc<FuzzyContext>, ModelError> {
        match index {
            None => Err(ModelError::MissingIndex),
            Some(idx) => Ok(derived_relation(&self.context, idx)?),
        }
    }
}
