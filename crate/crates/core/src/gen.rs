//! Random contexts, models, formulas and index terms for fuzzing and tests.
//! All generators are driven by a caller-supplied RNG so runs are
//! reproducible from a seed.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::fuzzy::{CrispSet, Degree, FuzzyContext, Sort};
use crate::logic::{Formula, ModalKind, WeightMark};
use crate::model::{Model, Valuation};
use crate::multirel::{IndexTerm, MultiContext, MultiModel};

/// The grid `{0, 1/n, ..., 1}` for a random `n` in `1..=max_den`.
pub fn random_grid<R: Rng + ?Sized>(rng: &mut R, max_den: i64) -> Vec<Degree> {
    let n = rng.gen_range(1..=max_den.max(1));
    grid(n)
}

/// `{0, 1/n, ..., 1}`.
pub fn grid(n: i64) -> Vec<Degree> {
    (0..=n).map(|k| Degree::frac(k, n)).collect()
}

/// A context with `1..=max_g` objects and `1..=max_m` attributes whose cells
/// are drawn from `values`.
pub fn random_context<R: Rng + ?Sized>(rng: &mut R, max_g: usize, max_m: usize, values: &[Degree]) -> FuzzyContext {
    let g = rng.gen_range(1..=max_g.max(1));
    let m = rng.gen_range(1..=max_m.max(1));
    context_of_size(rng, g, m, values)
}

pub fn context_of_size<R: Rng + ?Sized>(rng: &mut R, g: usize, m: usize, values: &[Degree]) -> FuzzyContext {
    let rows = (0..g).map(|_| (0..m).map(|_| *values.choose(rng).expect("non-empty grid")).collect()).collect();
    FuzzyContext::from_rows(rows).expect("non-empty shape")
}

pub fn random_subset<R: Rng + ?Sized>(rng: &mut R, sort: Sort, universe: usize) -> CrispSet {
    CrispSet::from_indices(sort, universe, (0..universe).filter(|_| rng.gen_bool(0.5)))
}

/// Random valuation of the given symbols over domains of the given sizes.
pub fn random_valuation<R: Rng + ?Sized>(
    rng: &mut R,
    n_objects: usize,
    n_attributes: usize,
    object_atoms: &[String],
    property_atoms: &[String],
) -> Valuation {
    let mut val = Valuation::new();
    for name in object_atoms {
        val.set(name.clone(), random_subset(rng, Sort::Object, n_objects));
    }
    for name in property_atoms {
        val.set(name.clone(), random_subset(rng, Sort::Property, n_attributes));
    }
    val
}

/// What random formulas may contain.
#[derive(Debug, Clone)]
pub struct FormulaSpec {
    pub object_atoms: Vec<String>,
    pub property_atoms: Vec<String>,
    pub kinds: Vec<ModalKind>,
    /// Weights for modalities; each is used weak or strict at random.
    pub degrees: Vec<Degree>,
    /// When non-empty every modality gets one of these indices.
    pub indices: Vec<IndexTerm>,
}

impl FormulaSpec {
    /// Symbols `p1..pk` (objects) and `q1..qk` (properties), both modal kinds.
    pub fn standard(symbols: usize, degrees: Vec<Degree>) -> Self {
        FormulaSpec {
            object_atoms: (1..=symbols).map(|i| format!("p{i}")).collect(),
            property_atoms: (1..=symbols).map(|i| format!("q{i}")).collect(),
            kinds: vec![ModalKind::Necessity, ModalKind::Sufficiency],
            degrees,
            indices: Vec::new(),
        }
    }

    pub fn only(mut self, kind: ModalKind) -> Self {
        self.kinds = vec![kind];
        self
    }

    pub fn with_indices(mut self, indices: Vec<IndexTerm>) -> Self {
        self.indices = indices;
        self
    }

    pub fn atoms(&self, sort: Sort) -> &[String] {
        match sort {
            Sort::Object => &self.object_atoms,
            Sort::Property => &self.property_atoms,
        }
    }

    pub fn random_model<R: Rng + ?Sized>(&self, rng: &mut R, max_g: usize, max_m: usize, values: &[Degree]) -> Model {
        let ctx = random_context(rng, max_g, max_m, values);
        self.model_over(rng, ctx)
    }

    pub fn model_over<R: Rng + ?Sized>(&self, rng: &mut R, ctx: FuzzyContext) -> Model {
        let val = random_valuation(rng, ctx.n_objects(), ctx.n_attributes(), &self.object_atoms, &self.property_atoms);
        Model::new(ctx, val).expect("valuation built for this context")
    }

    pub fn multi_model_over<R: Rng + ?Sized>(&self, rng: &mut R, ctx: MultiContext) -> MultiModel {
        let val = random_valuation(
            rng,
            ctx.size(Sort::Object),
            ctx.size(Sort::Property),
            &self.object_atoms,
            &self.property_atoms,
        );
        MultiModel::new(ctx, val).expect("valuation built for this context")
    }

    fn random_mark<R: Rng + ?Sized>(&self, rng: &mut R) -> WeightMark {
        let degree = *self.degrees.choose(rng).unwrap_or(&Degree::ONE);
        WeightMark { degree, strict: rng.gen_bool(0.5) }
    }

    /// A random formula of `sort` with syntax-tree depth at most `depth`.
    pub fn random_formula<R: Rng + ?Sized>(&self, rng: &mut R, sort: Sort, depth: usize) -> Formula {
        let atoms = self.atoms(sort);
        let leaf = |rng: &mut R| Formula::atom(atoms.choose(rng).expect("symbols of both sorts").clone(), sort);
        if depth == 0 {
            return leaf(rng);
        }
        let modal_ok = !self.kinds.is_empty();
        match rng.gen_range(0..if modal_ok { 5 } else { 4 }) {
            0 => leaf(rng),
            1 => Formula::not(self.random_formula(rng, sort, depth - 1)),
            2 | 3 => {
                let a = self.random_formula(rng, sort, depth - 1);
                let b = self.random_formula(rng, sort, depth - 1);
                Formula::and(a, b).expect("same sort")
            }
            _ => {
                let kind = *self.kinds.choose(rng).expect("non-empty");
                let mark = self.random_mark(rng);
                let index = self.indices.choose(rng).cloned();
                let body = self.random_formula(rng, sort.other(), depth - 1);
                Formula::modal(kind, mark, index, body)
            }
        }
    }
}

/// Random index term over `prims` of depth at most `depth`.
pub fn random_index<R: Rng + ?Sized>(rng: &mut R, prims: &[String], depth: usize) -> IndexTerm {
    let leaf = |rng: &mut R| {
        if prims.is_empty() || rng.gen_ratio(1, 8) {
            IndexTerm::Zero
        } else {
            IndexTerm::prim(prims.choose(rng).expect("non-empty").clone())
        }
    };
    if depth == 0 {
        return leaf(rng);
    }
    match rng.gen_range(0..5) {
        0 => leaf(rng),
        1 => IndexTerm::complement(random_index(rng, prims, depth - 1)),
        2 => IndexTerm::inter(random_index(rng, prims, depth - 1), random_index(rng, prims, depth - 1)),
        3 => IndexTerm::union(random_index(rng, prims, depth - 1), random_index(rng, prims, depth - 1)),
        _ => IndexTerm::complement(IndexTerm::complement(random_index(rng, prims, depth - 1))),
    }
}

/// A multi-context with the named primitives over one random shape.
pub fn random_multi_context<R: Rng + ?Sized>(
    rng: &mut R,
    prims: &[String],
    max_g: usize,
    max_m: usize,
    values: &[Degree],
) -> MultiContext {
    let g = rng.gen_range(1..=max_g.max(1));
    let m = rng.gen_range(1..=max_m.max(1));
    let rels = prims.iter().map(|p| (p.clone(), context_of_size(rng, g, m, values)));
    MultiContext::new(rels.collect::<Vec<_>>()).expect("shared shape")
}
