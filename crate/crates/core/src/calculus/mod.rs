//! The Hilbert calculus: axiom schemas, proof scripts and their checker,
//! soundness fuzzing and bounded satisfiability search.

mod axioms;
mod check;
mod fuzz;
mod sat;
mod script;

pub use axioms::{instantiate_axiom, AxiomError, AxiomName, Bindings};
pub use check::{check_proof, is_tautology, translate_script, Proof, ProofError, ProofErrorKind, System, TranslateError, UgPolicy};
pub use fuzz::{
    minimize, sample_bindings, soundness_fuzz, FuzzConfig, FuzzCounterexample, FuzzReport, Schema, Violation,
};
pub use sat::{
    bounded_sat, bounded_sat_sufficiency, bounded_sat_with, quantize_model, QuantizedGrid, SatError, SatOutcome,
};
pub use script::{Justification, ProofLine, ProofScript, ScriptError};
