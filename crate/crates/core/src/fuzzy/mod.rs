//! Exact fuzzy contexts, possibility measures and derivation operators.

mod context;
mod degree;
mod ops;

pub use context::{complement_context, ContextError, CrispSet, Element, FuzzyContext, FuzzySet, Sort};
pub use degree::{residuum, Degree, DegreeError};
pub use ops::{cut, derive, derive_cut, guaranteed, measures, necessity, Derivation, Measures};
