//! Truth sets of modal formulas against cuts of the derivation operators, and
//! the formula pairs representing cut concepts.

use super::{Evaluator, Model, ModelError};
use crate::concept::ConceptFlavor;
use crate::fuzzy::{derive_cut, CrispSet, Degree, Derivation, Sort};
use crate::logic::{possibly, Formula, WeightMark};

/// One identity `operator side = modal side`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Prop2Item {
    /// `"1"`..`"8"` for the operator identities, `"cor1"`..`"cor4"` for the
    /// upper-approximation ones.
    pub label: &'static str,
    pub operator_side: CrispSet,
    pub modal_side: CrispSet,
}

impl Prop2Item {
    pub fn holds(&self) -> bool {
        self.operator_side == self.modal_side
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Prop2Report {
    pub threshold: Degree,
    pub items: Vec<Prop2Item>,
}

impl Prop2Report {
    pub fn all_hold(&self) -> bool {
        self.items.iter().all(Prop2Item::holds)
    }
}

/// Evaluates the six identities that apply to a formula of `phi`'s sort:
/// items 1-4 and cor1-2 for object formulas, items 5-8 and cor3-4 for
/// property formulas.
pub fn check_prop2(model: &Model, phi: &Formula, c: Degree) -> Result<Prop2Report, ModelError> {
    let ctx = model.context();
    let mut ev = Evaluator::new(model);
    let set = ev.truth_set(phi)?;
    let (galois, labels, cor) = match phi.sort() {
        Sort::Object => (Derivation::Plus, ["1", "2", "3", "4"], ["cor1", "cor2"]),
        Sort::Property => (Derivation::Minus, ["5", "6", "7", "8"], ["cor3", "cor4"]),
    };
    let mut items = Vec::with_capacity(6);
    let cases = [
        (labels[0], galois, true, Formula::suff(WeightMark::strict(c), phi.clone())),
        (labels[1], galois, false, Formula::suff(WeightMark::weak(c), phi.clone())),
        (labels[2], Derivation::Box, true, Formula::nec(WeightMark::strict(c), phi.clone())),
        (labels[3], Derivation::Box, false, Formula::nec(WeightMark::weak(c), phi.clone())),
        (cor[0], Derivation::Diamond, true, possibly(c, true, phi.clone())),
        (cor[1], Derivation::Diamond, false, possibly(c, false, phi.clone())),
    ];
    for (label, op, strict, modal) in cases {
        items.push(Prop2Item {
            label,
            operator_side: derive_cut(ctx, &set, op, c, strict)?,
            modal_side: ev.truth_set(&modal)?,
        });
    }
    Ok(Prop2Report { threshold: c, items })
}

/// Whether `(phi, psi)` satisfies, in this model, the two equivalences that
/// make it a formula representation of a `c`-concept of `flavor`.
pub fn check_concept_pair(
    model: &Model,
    phi: &Formula,
    psi: &Formula,
    c: Degree,
    flavor: ConceptFlavor,
) -> Result<bool, ModelError> {
    if phi.sort() != Sort::Object {
        return Err(ModelError::Sort { expected: Sort::Object, found: phi.sort() });
    }
    if psi.sort() != Sort::Property {
        return Err(ModelError::Sort { expected: Sort::Property, found: psi.sort() });
    }
    let mut ev = Evaluator::new(model);
    let inv = c.complement();
    let (to_phi, to_psi) = match flavor {
        ConceptFlavor::Formal => (
            Formula::suff(WeightMark::weak(c), psi.clone()),
            Formula::suff(WeightMark::weak(c), phi.clone()),
        ),
        ConceptFlavor::PropertyOriented => {
            (Formula::nec(WeightMark::weak(c), psi.clone()), possibly(inv, true, phi.clone()))
        }
        ConceptFlavor::ObjectOriented => {
            (possibly(inv, true, psi.clone()), Formula::nec(WeightMark::weak(c), phi.clone()))
        }
    };
    Ok(ev.truth_set(phi)? == ev.truth_set(&to_phi)? && ev.truth_set(&to_psi)? == ev.truth_set(psi)?)
}
