//! Fuzzy formal contexts, cut-based concept lattices, and a two-sorted
//! weighted modal logic interpreted over them.

pub mod calculus;
pub mod concept;
pub mod fuzzy;
pub mod gen;
pub mod logic;
pub mod model;
pub mod multirel;

pub use concept::{enumerate_concepts, ConceptFlavor, ConceptLattice, CutConcept};
pub use fuzzy::{CrispSet, Degree, Element, FuzzyContext, Sort};
pub use logic::{parse, DegreeSet, Formula, ModalKind, Signature, WeightMark};
pub use model::{satisfies, truth_set, Model, Valuation};
pub use multirel::{IndexTerm, MultiContext, MultiModel};
