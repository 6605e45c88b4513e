//! Cut-based concepts of a fuzzy context and their lattices.
//!
//! For a threshold `c` each flavor pairs an object-side operator `up` with an
//! attribute-side operator `down`:
//!
//! | flavor            | `up(A)`             | `down(B)`           |
//! |-------------------|---------------------|---------------------|
//! | formal            | `(A+)_c`            | `(B-)_c`            |
//! | object oriented   | `(A box)_c`         | `(B diamond)_{>1-c}`|
//! | property oriented | `(A diamond)_{>1-c}`| `(B box)_c`         |
//!
//! and a concept is a pair with `up(A) = B` and `down(B) = A`.

mod lattice;

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::fuzzy::{derive_cut, ContextError, CrispSet, Degree, Derivation, FuzzyContext, Sort};

pub use lattice::ConceptLattice;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConceptError {
    #[error(transparent)]
    Context(#[from] ContextError),
    #[error("duality {duality:?} does not apply to a {flavor} concept")]
    Duality { duality: Duality, flavor: ConceptFlavor },
    #[error("unknown concept flavor `{0}` (expected formal, oo or po)")]
    UnknownFlavor(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ConceptFlavor {
    Formal,
    ObjectOriented,
    PropertyOriented,
}

impl ConceptFlavor {
    pub const ALL: [ConceptFlavor; 3] =
        [ConceptFlavor::Formal, ConceptFlavor::ObjectOriented, ConceptFlavor::PropertyOriented];

    pub fn short_name(self) -> &'static str {
        match self {
            ConceptFlavor::Formal => "formal",
            ConceptFlavor::ObjectOriented => "oo",
            ConceptFlavor::PropertyOriented => "po",
        }
    }
}

impl fmt::Display for ConceptFlavor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ConceptFlavor::Formal => "formal",
            ConceptFlavor::ObjectOriented => "object-oriented",
            ConceptFlavor::PropertyOriented => "property-oriented",
        })
    }
}

impl FromStr for ConceptFlavor {
    type Err = ConceptError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "formal" | "fc" | "B" => Ok(ConceptFlavor::Formal),
            "oo" | "object-oriented" | "O" => Ok(ConceptFlavor::ObjectOriented),
            "po" | "property-oriented" | "P" => Ok(ConceptFlavor::PropertyOriented),
            other => Err(ConceptError::UnknownFlavor(other.to_string())),
        }
    }
}

/// A fixed point `(extent, intent)` of one flavor at one threshold.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CutConcept {
    pub extent: CrispSet,
    pub intent: CrispSet,
    pub flavor: ConceptFlavor,
    pub threshold: Degree,
}

/// Object-side cut operator of `flavor`.
pub fn up(ctx: &FuzzyContext, flavor: ConceptFlavor, c: Degree, extent: &CrispSet) -> Result<CrispSet, ContextError> {
    match flavor {
        ConceptFlavor::Formal => derive_cut(ctx, extent, Derivation::Plus, c, false),
        ConceptFlavor::ObjectOriented => derive_cut(ctx, extent, Derivation::Box, c, false),
        ConceptFlavor::PropertyOriented => derive_cut(ctx, extent, Derivation::Diamond, c.complement(), true),
    }
}

/// Attribute-side cut operator of `flavor`.
pub fn down(ctx: &FuzzyContext, flavor: ConceptFlavor, c: Degree, intent: &CrispSet) -> Result<CrispSet, ContextError> {
    match flavor {
        ConceptFlavor::Formal => derive_cut(ctx, intent, Derivation::Minus, c, false),
        ConceptFlavor::ObjectOriented => derive_cut(ctx, intent, Derivation::Diamond, c.complement(), true),
        ConceptFlavor::PropertyOriented => derive_cut(ctx, intent, Derivation::Box, c, false),
    }
}

/// Whether `(extent, intent)` satisfies both fixed-point equations.
pub fn is_concept(
    ctx: &FuzzyContext,
    flavor: ConceptFlavor,
    c: Degree,
    extent: &CrispSet,
    intent: &CrispSet,
) -> Result<bool, ContextError> {
    Ok(up(ctx, flavor, c, extent)? == *intent && down(ctx, flavor, c, intent)? == *extent)
}

/// The concept generated by `seed` through one round trip of the flavor's
/// operator pair. An object seed `A` yields `(down(up(A)), up(A))`, an
/// attribute seed `B` yields `(down(B), up(down(B)))`.
pub fn closure(ctx: &FuzzyContext, seed: &CrispSet, flavor: ConceptFlavor, c: Degree) -> Result<CutConcept, ContextError> {
    let (extent, intent) = match seed.sort() {
        Sort::Object => {
            let intent = up(ctx, flavor, c, seed)?;
            (down(ctx, flavor, c, &intent)?, intent)
        }
        Sort::Property => {
            let extent = down(ctx, flavor, c, seed)?;
            let intent = up(ctx, flavor, c, &extent)?;
            (extent, intent)
        }
    };
    Ok(CutConcept { extent, intent, flavor, threshold: c })
}

/// Lattice meet of two concepts of the same flavor and threshold.
pub fn meet(ctx: &FuzzyContext, a: &CutConcept, b: &CutConcept) -> Result<CutConcept, ContextError> {
    let (flavor, c) = (a.flavor, a.threshold);
    let (extent, intent) = match flavor {
        ConceptFlavor::Formal | ConceptFlavor::PropertyOriented => {
            let extent = a.extent.intersection(&b.extent);
            let intent = up(ctx, flavor, c, &extent)?;
            (extent, intent)
        }
        ConceptFlavor::ObjectOriented => {
            let intent = a.intent.intersection(&b.intent);
            (down(ctx, flavor, c, &intent)?, intent)
        }
    };
    Ok(CutConcept { extent, intent, flavor, threshold: c })
}

/// Lattice join of two concepts of the same flavor and threshold.
pub fn join(ctx: &FuzzyContext, a: &CutConcept, b: &CutConcept) -> Result<CutConcept, ContextError> {
    let (flavor, c) = (a.flavor, a.threshold);
    let (extent, intent) = match flavor {
        ConceptFlavor::Formal => {
            let intent = a.intent.intersection(&b.intent);
            (down(ctx, flavor, c, &intent)?, intent)
        }
        ConceptFlavor::ObjectOriented => {
            let extent = a.extent.union(&b.extent);
            let intent = up(ctx, flavor, c, &extent)?;
            (extent, intent)
        }
        ConceptFlavor::PropertyOriented => {
            let intent = a.intent.union(&b.intent);
            (down(ctx, flavor, c, &intent)?, intent)
        }
    };
    Ok(CutConcept { extent, intent, flavor, threshold: c })
}

/// All concepts of one flavor at threshold `c`, as a materialized lattice.
///
/// Concepts are generated as closures of the empty set, the full universes
/// and every singleton on both sides, then closed under meet and join until
/// nothing new appears.
pub fn enumerate_concepts(ctx: &FuzzyContext, flavor: ConceptFlavor, c: Degree) -> Result<ConceptLattice, ContextError> {
    let mut seeds = Vec::new();
    for sort in [Sort::Object, Sort::Property] {
        let n = ctx.size(sort);
        seeds.push(CrispSet::empty(sort, n));
        seeds.push(CrispSet::full(sort, n));
        seeds.extend((0..n).map(|i| CrispSet::from_indices(sort, n, [i])));
    }
    let mut found: BTreeSet<(CrispSet, CrispSet)> = BTreeSet::new();
    let mut members: Vec<CutConcept> = Vec::new();
    for seed in &seeds {
        let concept = closure(ctx, seed, flavor, c)?;
        if found.insert((concept.extent.clone(), concept.intent.clone())) {
            members.push(concept);
        }
    }
    // Saturate: every new concept is combined with everything seen so far.
    let mut next = 0;
    while next < members.len() {
        let current = members[next].clone();
        for j in 0..=next {
            let other = members[j].clone();
            for candidate in [meet(ctx, &current, &other)?, join(ctx, &current, &other)?] {
                if found.insert((candidate.extent.clone(), candidate.intent.clone())) {
                    members.push(candidate);
                }
            }
        }
        next += 1;
    }
    ConceptLattice::build(ctx, flavor, c, members)
}

/// Which pair of flavors a duality relates. The two dualities through formal
/// concepts land in the complemented context; the object/property one is
/// their composite and stays in the same context.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Duality {
    /// Formal <-> object oriented; complements the extent.
    FormalObject,
    /// Formal <-> property oriented; complements the intent.
    FormalProperty,
    /// Object oriented <-> property oriented in the same context; complements
    /// both.
    ObjectProperty,
}

impl Duality {
    pub const ALL: [Duality; 3] = [Duality::FormalObject, Duality::FormalProperty, Duality::ObjectProperty];

    fn flavors(self) -> (ConceptFlavor, ConceptFlavor) {
        match self {
            Duality::FormalObject => (ConceptFlavor::Formal, ConceptFlavor::ObjectOriented),
            Duality::FormalProperty => (ConceptFlavor::Formal, ConceptFlavor::PropertyOriented),
            Duality::ObjectProperty => (ConceptFlavor::ObjectOriented, ConceptFlavor::PropertyOriented),
        }
    }

    /// Whether the target concept lives in the complemented context.
    pub fn complements_context(self) -> bool {
        !matches!(self, Duality::ObjectProperty)
    }

    /// Whether the duality reverses the extent order.
    pub fn reverses_order(self) -> bool {
        !matches!(self, Duality::FormalProperty)
    }
}

/// Maps a concept of the context `K` to the corresponding concept of the
/// complemented context, or of `K` itself for [`Duality::ObjectProperty`].
/// The maps are involutions.
pub fn dualize(concept: &CutConcept, duality: Duality) -> Result<CutConcept, ConceptError> {
    let (left, right) = duality.flavors();
    let target = if concept.flavor == left {
        right
    } else if concept.flavor == right {
        left
    } else {
        return Err(ConceptError::Duality { duality, flavor: concept.flavor });
    };
    let (extent, intent) = match duality {
        Duality::FormalObject => (concept.extent.complement(), concept.intent.clone()),
        Duality::FormalProperty => (concept.extent.clone(), concept.intent.complement()),
        Duality::ObjectProperty => (concept.extent.complement(), concept.intent.complement()),
    };
    Ok(CutConcept { extent, intent, flavor: target, threshold: concept.threshold })
}
