//! Degree quantization and bounded model search for the necessity fragment.
//!
//! Satisfaction of a formula only depends on how each incidence value is
//! ordered relative to the thresholds `1 - c` for weights `c` in the
//! formula's degree set. Collapsing every value onto one representative per
//! order class therefore leaves all truth sets unchanged, and a search over
//! the representatives is exhaustive for the given domain sizes.
//!
//! The search is bounded: when it finds nothing, the result is
//! [`SatOutcome::Exhausted`], which says nothing about larger domains.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::fuzzy::{CrispSet, Degree, Element, FuzzyContext, Sort};
use crate::logic::{deg_of_all, translate_rho, DegreeSet, Formula, FormulaError, ModalKind, RhoDirection};
use crate::model::{Evaluator, Model, Valuation};

/// Representatives of the order classes of `[0, 1]` relative to the
/// thresholds `{1 - c : c in D}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuantizedGrid {
    degrees: DegreeSet,
    /// Ascending.
    thresholds: Vec<Degree>,
    /// Ascending: thresholds and midpoints of consecutive thresholds.
    relation_values: Vec<Degree>,
}

impl QuantizedGrid {
    /// `degrees` is closed under `1 - c` first.
    pub fn new(degrees: &DegreeSet) -> Self {
        let degrees = DegreeSet::symmetric(degrees.iter());
        let thresholds: Vec<Degree> =
            degrees.iter().map(Degree::complement).collect::<BTreeSet<_>>().into_iter().collect();
        let mut relation_values: Vec<Degree> =
            thresholds.windows(2).map(|w| w[0].midpoint(w[1])).chain(thresholds.iter().copied()).collect();
        relation_values.sort();
        QuantizedGrid { degrees, thresholds, relation_values }
    }

    pub fn degrees(&self) -> &DegreeSet {
        &self.degrees
    }

    pub fn thresholds(&self) -> &[Degree] {
        &self.thresholds
    }

    pub fn relation_values(&self) -> &[Degree] {
        &self.relation_values
    }

    /// Thresholds map to themselves; other values to the midpoint of the
    /// thresholds around them.
    pub fn quantize(&self, value: Degree) -> Degree {
        match self.thresholds.binary_search(&value) {
            Ok(_) => value,
            Err(k) => self.thresholds[k - 1].midpoint(self.thresholds[k]),
        }
    }
}

pub fn quantize_model(model: &Model, degrees: &DegreeSet) -> Model {
    let grid = QuantizedGrid::new(degrees);
    model.with_context(model.context().map_cells(|v| grid.quantize(v))).expect("same shape")
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SatError {
    #[error("formula `{0}` is outside the necessity fragment")]
    Fragment(String),
    #[error("formula `{0}` carries a modality index")]
    Indexed(String),
    #[error("formula `{formula}` has sort {found}, expected {expected}")]
    Sort { formula: String, expected: Sort, found: Sort },
    #[error("degree set {given} does not contain the weights {needed} of the formulas")]
    Degrees { given: DegreeSet, needed: DegreeSet },
    #[error(transparent)]
    Translate(#[from] FormulaError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SatOutcome {
    /// `gamma` holds at `world` of `model`.
    Found { model: Model, world: Element },
    /// No model within the bounds satisfies `gamma`. Larger domains are not
    /// ruled out.
    Exhausted { models_examined: u64 },
}

impl SatOutcome {
    pub fn is_found(&self) -> bool {
        matches!(self, SatOutcome::Found { .. })
    }
}

/// Searches models with at most `max_g` objects and `max_m` attributes for a
/// world of `sort` satisfying every formula of `gamma`.
pub fn bounded_sat(gamma: &[Formula], sort: Sort, max_g: usize, max_m: usize) -> Result<SatOutcome, SatError> {
    bounded_sat_with(gamma, sort, max_g, max_m, None)
}

/// As [`bounded_sat`], quantizing with `degrees` (which must contain the
/// weights of `gamma`) instead of the formulas' own degree set.
pub fn bounded_sat_with(
    gamma: &[Formula],
    sort: Sort,
    max_g: usize,
    max_m: usize,
    degrees: Option<&DegreeSet>,
) -> Result<SatOutcome, SatError> {
    for f in gamma {
        if f.contains_kind(ModalKind::Sufficiency) {
            return Err(SatError::Fragment(f.to_string()));
        }
        if f.is_indexed() {
            return Err(SatError::Indexed(f.to_string()));
        }
        if f.sort() != sort {
            return Err(SatError::Sort { formula: f.to_string(), expected: sort, found: f.sort() });
        }
    }
    let needed = deg_of_all(gamma);
    let degrees = match degrees {
        Some(given) if !needed.is_subset(&DegreeSet::symmetric(given.iter())) => {
            return Err(SatError::Degrees { given: given.clone(), needed })
        }
        Some(given) => given.clone(),
        None => needed,
    };
    let values = QuantizedGrid::new(&degrees).relation_values().to_vec();
    let atoms: BTreeSet<(String, Sort)> = gamma.iter().flat_map(Formula::atoms).collect();
    let object_atoms: Vec<&str> = atoms.iter().filter(|a| a.1 == Sort::Object).map(|a| a.0.as_str()).collect();
    let property_atoms: Vec<&str> = atoms.iter().filter(|a| a.1 == Sort::Property).map(|a| a.0.as_str()).collect();
    let mut examined = 0u64;
    for g in 1..=max_g {
        for m in 1..=max_m {
            let row_count = values.len().pow(m as u32);
            let mut rows = vec![0usize; g];
            loop {
                let cells: Vec<Vec<Degree>> = rows.iter().map(|&r| row_vector(r, m, &values)).collect();
                let ctx = FuzzyContext::from_rows(cells).expect("non-empty shape");
                let n_vals = 1u64 << (g * object_atoms.len() + m * property_atoms.len());
                for bits in 0..n_vals {
                    let model = valuation_model(&ctx, bits, &object_atoms, &property_atoms);
                    examined += 1;
                    if let Some(world) = witness(&model, gamma, sort) {
                        return Ok(SatOutcome::Found { model, world: Element { sort, index: world } });
                    }
                }
                if !next_multiset(&mut rows, row_count) {
                    break;
                }
            }
        }
    }
    Ok(SatOutcome::Exhausted { models_examined: examined })
}

/// Sufficiency-fragment search: solves the translated set and returns the
/// complemented witness model, where the original formulas hold.
pub fn bounded_sat_sufficiency(
    gamma: &[Formula],
    sort: Sort,
    max_g: usize,
    max_m: usize,
) -> Result<SatOutcome, SatError> {
    let translated =
        gamma.iter().map(|f| translate_rho(f, RhoDirection::SuffToNec)).collect::<Result<Vec<_>, _>>()?;
    Ok(match bounded_sat(&translated, sort, max_g, max_m)? {
        SatOutcome::Found { model, world } => SatOutcome::Found { model: model.complemented(), world },
        exhausted => exhausted,
    })
}

fn row_vector(mut code: usize, m: usize, values: &[Degree]) -> Vec<Degree> {
    (0..m)
        .map(|_| {
            let v = values[code % values.len()];
            code /= values.len();
            v
        })
        .collect()
}

/// Advances a non-decreasing sequence over `0..n`; false after the last.
fn next_multiset(seq: &mut [usize], n: usize) -> bool {
    let Some(k) = seq.iter().rposition(|&x| x + 1 < n) else { return false };
    let v = seq[k] + 1;
    seq[k..].iter_mut().for_each(|x| *x = v);
    true
}

fn valuation_model(ctx: &FuzzyContext, mut bits: u64, objects: &[&str], properties: &[&str]) -> Model {
    let mut val = Valuation::new();
    let (g, m) = (ctx.n_objects(), ctx.n_attributes());
    for (names, sort, n) in [(objects, Sort::Object, g), (properties, Sort::Property, m)] {
        for name in names {
            val.set(*name, CrispSet::from_mask(sort, n, bits & ((1 << n) - 1)));
            bits >>= n;
        }
    }
    Model::new(ctx.clone(), val).expect("valuation built for this context")
}

fn witness(model: &Model, gamma: &[Formula], sort: Sort) -> Option<usize> {
    let mut ev = Evaluator::new(model);
    let mut worlds = CrispSet::full(sort, model.context().size(sort));
    for f in gamma {
        worlds = worlds.intersection(&ev.truth_set(f).expect("valuation covers gamma"));
        if worlds.is_empty() {
            return None;
        }
    }
    let first = worlds.iter().next();
    first
}
