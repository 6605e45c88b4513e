//! Satisfaction, truth sets and local consequence over finite fuzzy context
//! models.

mod prop2;

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use thiserror::Error;

use crate::fuzzy::{guaranteed, necessity, ContextError, CrispSet, Element, FuzzyContext, Sort};
use crate::logic::{Formula, ModalKind};
use crate::multirel::{IndexTerm, MultiError};

pub use prop2::{check_concept_pair, check_prop2, Prop2Item, Prop2Report};

/// Truth sets are crisp subsets of the domain of the formula's sort.
pub type TruthSet = CrispSet;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("sort mismatch: expected {expected}, found {found}")]
    Sort { expected: Sort, found: Sort },
    #[error("symbol `{name}` of sort {sort} has no valuation")]
    Unvalued { name: String, sort: Sort },
    #[error("indexed modality evaluated in a single-relation model")]
    UnexpectedIndex,
    #[error("unindexed modality evaluated in a multi-relational model")]
    MissingIndex,
    #[error(transparent)]
    Index(#[from] MultiError),
    #[error(transparent)]
    Context(#[from] ContextError),
    #[error("world index {index} is outside the {sort} domain")]
    World { sort: Sort, index: usize },
}

/// Crisp interpretation of the propositional symbols of both sorts.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Valuation {
    objects: BTreeMap<String, CrispSet>,
    properties: BTreeMap<String, CrispSet>,
}

impl Valuation {
    pub fn new() -> Self {
        Valuation::default()
    }

    /// The set's sort decides which side the symbol belongs to.
    pub fn set(&mut self, name: impl Into<String>, value: CrispSet) -> &mut Self {
        match value.sort() {
            Sort::Object => self.objects.insert(name.into(), value),
            Sort::Property => self.properties.insert(name.into(), value),
        };
        self
    }

    pub fn with(mut self, name: impl Into<String>, value: CrispSet) -> Self {
        self.set(name, value);
        self
    }

    pub fn get(&self, name: &str, sort: Sort) -> Option<&CrispSet> {
        self.side(sort).get(name)
    }

    pub fn side(&self, sort: Sort) -> &BTreeMap<String, CrispSet> {
        match sort {
            Sort::Object => &self.objects,
            Sort::Property => &self.properties,
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &CrispSet)> {
        self.objects.iter().chain(self.properties.iter()).map(|(k, v)| (k.as_str(), v))
    }

    fn check_shape(&self, n_objects: usize, n_attributes: usize) -> Result<(), ContextError> {
        for (_, set) in self.iter() {
            let expected = if set.sort() == Sort::Object { n_objects } else { n_attributes };
            if set.universe() != expected {
                return Err(ContextError::Shape { expected, got: set.universe() });
            }
        }
        Ok(())
    }
}

/// Anything formulas can be evaluated in: domains, a valuation, and the
/// relation interpreting a modality with a given (optional) index.
pub trait Interpretation {
    fn size(&self, sort: Sort) -> usize;
    fn valuation(&self) -> &Valuation;
    fn relation(&self, index: Option<&IndexTerm>) -> Result<Arc<FuzzyContext>, ModelError>;
}

/// A fuzzy context model `(G, M, I, v)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Model {
    context: Arc<FuzzyContext>,
    valuation: Valuation,
}

impl Model {
    pub fn new(context: FuzzyContext, valuation: Valuation) -> Result<Self, ModelError> {
        valuation.check_shape(context.n_objects(), context.n_attributes())?;
        Ok(Model { context: Arc::new(context), valuation })
    }

    pub fn context(&self) -> &FuzzyContext {
        &self.context
    }

    pub fn valuation(&self) -> &Valuation {
        &self.valuation
    }

    /// Same valuation over a different context of the same shape.
    pub fn with_context(&self, context: FuzzyContext) -> Result<Model, ModelError> {
        Model::new(context, self.valuation.clone())
    }

    /// The model over the complemented context `1 - I`.
    pub fn complemented(&self) -> Model {
        Model { context: Arc::new(self.context.complement()), valuation: self.valuation.clone() }
    }

    /// Restricts both domains to the given elements, renumbering them in order.
    pub fn restrict(&self, objects: &[usize], attributes: &[usize]) -> Result<Model, ModelError> {
        let ctx = &self.context;
        let names = |sort: Sort, keep: &[usize]| keep.iter().map(|&i| ctx.names(sort)[i].clone()).collect();
        let cells = objects
            .iter()
            .flat_map(|&g| attributes.iter().map(move |&m| ctx.incidence(g, m)))
            .collect();
        let sub = FuzzyContext::new(names(Sort::Object, objects), names(Sort::Property, attributes), cells)?;
        let mut val = Valuation::new();
        for (name, set) in self.valuation.iter() {
            let keep = if set.sort() == Sort::Object { objects } else { attributes };
            let members = keep.iter().enumerate().filter(|(_, &x)| set.contains(x)).map(|(i, _)| i);
            val.set(name, CrispSet::from_indices(set.sort(), keep.len(), members));
        }
        Model::new(sub, val)
    }
}

impl Interpretation for Model {
    fn size(&self, sort: Sort) -> usize {
        self.context.size(sort)
    }

    fn valuation(&self) -> &Valuation {
        &self.valuation
    }

    fn relation(&self, index: Option<&IndexTerm>) -> Result<Arc<FuzzyContext>, ModelError> {
        match index {
            None => Ok(Arc::clone(&self.context)),
            Some(_) => Err(ModelError::UnexpectedIndex),
        }
    }
}

/// Computes truth sets, memoizing every subformula for the evaluator's
/// lifetime. One evaluator serves one model; create one per worker thread.
pub struct Evaluator<'m, I: Interpretation + ?Sized> {
    model: &'m I,
    memo: HashMap<Formula, CrispSet>,
}

impl<'m, I: Interpretation + ?Sized> Evaluator<'m, I> {
    pub fn new(model: &'m I) -> Self {
        Evaluator { model, memo: HashMap::new() }
    }

    pub fn truth_set(&mut self, phi: &Formula) -> Result<CrispSet, ModelError> {
        if let Some(hit) = self.memo.get(phi) {
            return Ok(hit.clone());
        }
        let result = match phi {
            Formula::Atom { name, sort } => self
                .model
                .valuation()
                .get(name, *sort)
                .cloned()
                .ok_or_else(|| ModelError::Unvalued { name: name.clone(), sort: *sort })?,
            Formula::Not(f) => self.truth_set(f)?.complement(),
            Formula::And(a, b) => {
                let (ta, tb) = (self.truth_set(a)?, self.truth_set(b)?);
                if ta.sort() != tb.sort() {
                    return Err(ModelError::Sort { expected: ta.sort(), found: tb.sort() });
                }
                ta.intersection(&tb)
            }
            Formula::Modal(m, body) => {
                let inner = self.truth_set(body)?;
                if inner.sort() != m.arg_sort {
                    return Err(ModelError::Sort { expected: m.arg_sort, found: inner.sort() });
                }
                let rel = self.model.relation(m.index.as_ref())?;
                let sort = m.arg_sort.other();
                let members = (0..self.model.size(sort)).filter(|&w| {
                    let pivot = Element { sort, index: w };
                    let value = match m.kind {
                        ModalKind::Necessity => necessity(&rel, pivot, &inner),
                        ModalKind::Sufficiency => guaranteed(&rel, pivot, &inner),
                    };
                    m.mark.admits(value)
                });
                CrispSet::from_indices(sort, self.model.size(sort), members)
            }
        };
        self.memo.insert(phi.clone(), result.clone());
        Ok(result)
    }

    pub fn satisfies(&mut self, world: Element, phi: &Formula) -> Result<bool, ModelError> {
        if world.sort != phi.sort() {
            return Err(ModelError::Sort { expected: phi.sort(), found: world.sort });
        }
        if world.index >= self.model.size(world.sort) {
            return Err(ModelError::World { sort: world.sort, index: world.index });
        }
        Ok(self.truth_set(phi)?.contains(world.index))
    }

    /// Whether `phi` holds at every world of its sort.
    pub fn valid(&mut self, phi: &Formula) -> Result<bool, ModelError> {
        Ok(self.truth_set(phi)?.len() == self.model.size(phi.sort()))
    }
}

pub fn truth_set<I: Interpretation + ?Sized>(model: &I, phi: &Formula) -> Result<TruthSet, ModelError> {
    Evaluator::new(model).truth_set(phi)
}

pub fn satisfies<I: Interpretation + ?Sized>(model: &I, world: Element, phi: &Formula) -> Result<bool, ModelError> {
    Evaluator::new(model).satisfies(world, phi)
}

pub fn valid<I: Interpretation + ?Sized>(model: &I, phi: &Formula) -> Result<bool, ModelError> {
    Evaluator::new(model).valid(phi)
}

/// A world of a listed model where `gamma` holds and `phi` fails.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Counterexample {
    pub model: usize,
    pub world: Element,
}

/// Local consequence `gamma |= phi` over the listed models; an empty
/// `gamma` asks for validity over the class.
pub fn consequence<I: Interpretation>(
    models: &[I],
    sort: Sort,
    gamma: &[Formula],
    phi: &Formula,
) -> Result<Option<Counterexample>, ModelError> {
    for f in gamma.iter().chain(std::iter::once(phi)) {
        if f.sort() != sort {
            return Err(ModelError::Sort { expected: sort, found: f.sort() });
        }
    }
    for (k, model) in models.iter().enumerate() {
        let mut ev = Evaluator::new(model);
        let mut premises = CrispSet::full(sort, model.size(sort));
        for g in gamma {
            premises = premises.intersection(&ev.truth_set(g)?);
        }
        let conclusion = ev.truth_set(phi)?;
        let failing = premises.iter().find(|&w| !conclusion.contains(w));
        if let Some(w) = failing {
            return Ok(Some(Counterexample { model: k, world: Element { sort, index: w } }));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fuzzy::Degree;
    use crate::logic::{parse, Signature, WeightMark};

    fn d(s: &str) -> Degree {
        s.parse().unwrap()
    }

    fn k0() -> FuzzyContext {
        FuzzyContext::from_rows(vec![vec![d("1"), d("3/5")], vec![d("3/10"), d("0")]]).unwrap()
    }

    fn sig() -> Signature {
        Signature::new().with("p", Sort::Object).with("q", Sort::Property)
    }

    fn f(text: &str) -> Formula {
        parse(text, &sig(), None).unwrap()
    }

    fn model(p: &[usize], q: &[usize]) -> Model {
        let val = Valuation::new()
            .with("p", CrispSet::from_indices(Sort::Object, 2, p.iter().copied()))
            .with("q", CrispSet::from_indices(Sort::Property, 2, q.iter().copied()));
        Model::new(k0(), val).unwrap()
    }

    #[test]
    fn satisfaction_examples() {
        let m = model(&[], &[0, 1]);
        assert!(satisfies(&m, Element::object(0), &f("[1]_p q")).unwrap());
        let m = model(&[], &[0]);
        assert!(!satisfies(&m, Element::object(1), &f("[[1/3]]_p q")).unwrap());
        for w in 0..2 {
            assert!(satisfies(&m, Element::object(w), &f("[0]_p q")).unwrap());
        }
        assert!(satisfies(&m, Element::attribute(0), &f("[0]_p q")).is_err());
    }

    #[test]
    fn truth_set_examples() {
        let m = model(&[0], &[0]);
        assert_eq!(truth_set(&m, &f("q")).unwrap(), CrispSet::from_indices(Sort::Property, 2, [0]));
        assert_eq!(truth_set(&m, &f("!q")).unwrap(), CrispSet::from_indices(Sort::Property, 2, [1]));
        assert_eq!(truth_set(&m, &f("[0.7]_o p")).unwrap(), CrispSet::full(Sort::Property, 2));
    }

    #[test]
    fn unvalued_symbol() {
        let m = model(&[], &[]);
        let r = truth_set(&m, &Formula::atom("r", Sort::Object));
        assert!(matches!(r, Err(ModelError::Unvalued { .. })));
    }

    #[test]
    fn consequence_examples() {
        let models = vec![model(&[0], &[1]), model(&[], &[0, 1]), model(&[1], &[])];
        let phi = f("p & [0.3]_p q");
        assert_eq!(consequence(&models, Sort::Object, std::slice::from_ref(&phi), &phi).unwrap(), None);
        let strict_one = Formula::nec(WeightMark::strict(Degree::ONE), Formula::atom("q", Sort::Property));
        assert!(consequence(&models, Sort::Object, &[], &strict_one).unwrap().is_some());
        assert!(consequence(&models, Sort::Property, &[], &strict_one).is_err());
    }

    #[test]
    fn restriction_keeps_named_elements() {
        let m = model(&[1], &[0]);
        let r = m.restrict(&[1], &[0, 1]).unwrap();
        assert_eq!(r.context().objects(), &["g2".to_string()]);
        assert_eq!(r.valuation().get("p", Sort::Object).unwrap().len(), 1);
    }
}
