//! Possibility-theoretic measures and the six derivation operators.
//!
//! Every object `g` induces a possibility distribution `pi_g(m) = I(g, m)` over
//! the attributes, and every attribute `m` induces `pi_m(g) = I(g, m)` over the
//! objects. The operators below are computed from their residuum / min-max
//! definitions; [`measures`] computes the same quantities from the
//! distributions, so the two routes can be checked against each other.

use super::context::{ContextError, CrispSet, Element, FuzzyContext, FuzzySet, Sort};
use super::degree::{residuum, Degree};

/// The four uncertainty measures of a subset under one distribution.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Measures {
    /// `Pi(X) = sup_{x in X} pi(x)`
    pub possibility: Degree,
    /// `N(X) = inf_{x not in X} (1 - pi(x))`
    pub necessity: Degree,
    /// `Delta(X) = inf_{x in X} pi(x)`
    pub guaranteed: Degree,
    /// `Nabla(X) = sup_{x not in X} (1 - pi(x))`
    pub potential: Degree,
}

/// Measures of `subset` under the distribution of `pivot`, with
/// `sup {} = 0` and `inf {} = 1`.
pub fn measures(ctx: &FuzzyContext, pivot: Element, subset: &CrispSet) -> Result<Measures, ContextError> {
    if subset.sort() != pivot.sort.other() {
        return Err(ContextError::SortMismatch { expected: pivot.sort.other(), got: subset.sort() });
    }
    let mut m = Measures {
        possibility: Degree::ZERO,
        necessity: Degree::ONE,
        guaranteed: Degree::ONE,
        potential: Degree::ZERO,
    };
    for x in 0..ctx.size(subset.sort()) {
        let p = ctx.link(pivot, x);
        if subset.contains(x) {
            m.possibility = m.possibility.max(p);
            m.guaranteed = m.guaranteed.min(p);
        } else {
            m.necessity = m.necessity.min(p.complement());
            m.potential = m.potential.max(p.complement());
        }
    }
    Ok(m)
}

/// Only the necessity measure; the model checker's inner loop.
pub fn necessity(ctx: &FuzzyContext, pivot: Element, subset: &CrispSet) -> Degree {
    (0..ctx.size(pivot.sort.other()))
        .filter(|&x| !subset.contains(x))
        .map(|x| ctx.link(pivot, x).complement())
        .min()
        .unwrap_or(Degree::ONE)
}

/// Only the guaranteed possibility measure.
pub fn guaranteed(ctx: &FuzzyContext, pivot: Element, subset: &CrispSet) -> Degree {
    subset.iter().map(|x| ctx.link(pivot, x)).min().unwrap_or(Degree::ONE)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Derivation {
    /// `A+` (objects to attributes) / `B-` share the residuum form; `Plus`
    /// is only defined on object sets.
    Plus,
    /// Only defined on attribute sets.
    Minus,
    /// Lower approximation, on either sort.
    Box,
    /// Upper approximation, on either sort.
    Diamond,
}

/// Membership table of `input^op` over the opposite universe.
pub fn derive(ctx: &FuzzyContext, input: &CrispSet, op: Derivation) -> Result<FuzzySet, ContextError> {
    let src = input.sort();
    match (op, src) {
        (Derivation::Plus, Sort::Property) => {
            return Err(ContextError::SortMismatch { expected: Sort::Object, got: src })
        }
        (Derivation::Minus, Sort::Object) => {
            return Err(ContextError::SortMismatch { expected: Sort::Property, got: src })
        }
        _ => {}
    }
    if input.universe() != ctx.size(src) {
        return Err(ContextError::Shape { expected: ctx.size(src), got: input.universe() });
    }
    let target = src.other();
    let chi = |x: usize| if input.contains(x) { Degree::ONE } else { Degree::ZERO };
    let membership = (0..ctx.size(target))
        .map(|y| {
            let pivot = Element { sort: target, index: y };
            let cells = (0..ctx.size(src)).map(|x| (chi(x), ctx.link(pivot, x)));
            match op {
                Derivation::Plus | Derivation::Minus => {
                    cells.map(|(a, i)| residuum(a, i)).min().unwrap_or(Degree::ONE)
                }
                Derivation::Box => cells.map(|(a, i)| residuum(i, a)).min().unwrap_or(Degree::ONE),
                Derivation::Diamond => cells.map(|(a, i)| i.min(a)).max().unwrap_or(Degree::ZERO),
            }
        })
        .collect();
    Ok(FuzzySet::new(target, membership))
}

/// Crisp result of a derivation followed by a (strict) cut.
pub fn derive_cut(
    ctx: &FuzzyContext,
    input: &CrispSet,
    op: Derivation,
    c: Degree,
    strict: bool,
) -> Result<CrispSet, ContextError> {
    Ok(derive(ctx, input, op)?.cut(c, strict))
}

/// `{w | fs(w) >= c}` or `{w | fs(w) > c}`.
pub fn cut(fs: &FuzzySet, c: Degree, strict: bool) -> CrispSet {
    fs.cut(c, strict)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(s: &str) -> Degree {
        s.parse().unwrap()
    }

    fn k0() -> FuzzyContext {
        FuzzyContext::from_rows(vec![vec![d("1"), d("3/5")], vec![d("3/10"), d("0")]]).unwrap()
    }

    #[test]
    fn measures_k0_g1_m2() {
        let k = k0();
        let m = measures(&k, Element::object(0), &CrispSet::from_indices(Sort::Property, 2, [1])).unwrap();
        assert_eq!(
            (m.possibility, m.necessity, m.guaranteed, m.potential),
            (d("3/5"), d("0"), d("3/5"), d("0"))
        );
    }

    #[test]
    fn empty_and_full_conventions() {
        let k = k0();
        for g in 0..2 {
            let e = measures(&k, Element::object(g), &k.empty_set(Sort::Property)).unwrap();
            assert_eq!(e.possibility, Degree::ZERO);
            assert_eq!(e.guaranteed, Degree::ONE);
            let f = measures(&k, Element::object(g), &k.full_set(Sort::Property)).unwrap();
            assert_eq!(f.necessity, Degree::ONE);
            assert_eq!(f.potential, Degree::ZERO);
        }
    }

    #[test]
    fn measures_reject_same_sort() {
        let k = k0();
        assert!(measures(&k, Element::object(0), &k.empty_set(Sort::Object)).is_err());
    }

    #[test]
    fn derive_k0_examples() {
        let k = k0();
        let a = CrispSet::from_indices(Sort::Object, 2, [0]);
        assert_eq!(derive(&k, &a, Derivation::Plus).unwrap().membership(), &[d("1"), d("3/5")]);
        assert_eq!(derive(&k, &a, Derivation::Box).unwrap().membership(), &[d("7/10"), d("1")]);
        let empty = k.empty_set(Sort::Object);
        let dia = derive(&k, &empty, Derivation::Diamond).unwrap();
        assert!(dia.membership().iter().all(|x| x.is_zero()));
    }

    #[test]
    fn derive_rejects_undefined_sorts() {
        let k = k0();
        assert!(derive(&k, &k.empty_set(Sort::Property), Derivation::Plus).is_err());
        assert!(derive(&k, &k.empty_set(Sort::Object), Derivation::Minus).is_err());
    }
}
