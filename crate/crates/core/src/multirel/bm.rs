//! Validity fuzzing of the index axioms on random multi-relational models.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{IndexTerm, MultiContext};
use crate::calculus::{instantiate_axiom, sample_bindings, AxiomName};
use crate::fuzzy::Element;
use crate::gen::{random_grid, random_index, random_multi_context, FormulaSpec};
use crate::logic::Formula;
use crate::model::Evaluator;

#[derive(Debug, Clone)]
pub struct BmConfig {
    pub trials: usize,
    pub seed: u64,
    /// Primitive relations per model, at least one.
    pub max_primitives: usize,
    pub max_domain: usize,
    pub max_denominator: i64,
    pub index_depth: usize,
    pub formula_depth: usize,
    pub samples: usize,
}

impl Default for BmConfig {
    fn default() -> Self {
        BmConfig {
            trials: 500,
            seed: 0,
            max_primitives: 3,
            max_domain: 3,
            max_denominator: 4,
            index_depth: 2,
            formula_depth: 2,
            samples: 2,
        }
    }
}

#[derive(Debug, Clone)]
pub struct BmFailure {
    pub axiom: AxiomName,
    pub trial: usize,
    pub instance: Formula,
    pub context: MultiContext,
    pub world: Element,
}

#[derive(Debug, Clone, Default)]
pub struct BmReport {
    pub seed: u64,
    pub trials: usize,
    pub instances_checked: usize,
    pub failures: BTreeMap<AxiomName, usize>,
    /// First failure per axiom.
    pub examples: Vec<BmFailure>,
}

impl BmReport {
    pub fn is_clean(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks instances of `axioms` at every world of random multi-relational
/// models. Single-relation schemas are instantiated with a random index on
/// all their modalities.
pub fn check_bm_axioms(config: &BmConfig, axioms: &[AxiomName]) -> BmReport {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut report = BmReport { seed: config.seed, trials: config.trials, ..BmReport::default() };
    for trial in 0..config.trials {
        let grid = random_grid(&mut rng, config.max_denominator);
        let n_prims = rng.gen_range(1..=config.max_primitives.max(1));
        let prims: Vec<String> = (0..n_prims).map(|k| ((b'a' + k as u8) as char).to_string()).collect();
        let mctx = random_multi_context(&mut rng, &prims, config.max_domain, config.max_domain, &grid);
        let indices: Vec<IndexTerm> = (0..4).map(|_| random_index(&mut rng, &prims, config.index_depth)).collect();
        let spec = FormulaSpec::standard(2, grid.clone()).with_indices(indices.clone());
        let model = spec.multi_model_over(&mut rng, mctx);
        let mut ev = Evaluator::new(&model);
        for &axiom in axioms {
            for _ in 0..config.samples {
                let mut b = sample_bindings(&mut rng, axiom, &spec, &grid, config.formula_depth);
                if axiom != AxiomName::Def0 {
                    b.i = Some(random_index(&mut rng, &prims, config.index_depth));
                }
                if matches!(axiom, AxiomName::DefU | AxiomName::DefI) {
                    b.j = Some(indices.choose(&mut rng).expect("non-empty").clone());
                }
                let Ok(inst) = instantiate_axiom(axiom, &b) else { continue };
                report.instances_checked += 1;
                let truth = ev.truth_set(&inst).expect("every modality is indexed");
                if let Some(w) = (0..truth.universe()).find(|&w| !truth.contains(w)) {
                    let count = report.failures.entry(axiom).or_insert(0);
                    if *count == 0 {
                        report.examples.push(BmFailure {
                            axiom,
                            trial,
                            world: Element { sort: inst.sort(), index: w },
                            instance: inst,
                            context: model.context().clone(),
                        });
                    }
                    *count += 1;
                }
            }
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn index_axioms_hold() {
        let config = BmConfig { trials: 100, seed: 5, ..BmConfig::default() };
        let defs = [AxiomName::DefU, AxiomName::DefI, AxiomName::DefC, AxiomName::Def0];
        let report = check_bm_axioms(&config, &defs);
        assert!(report.is_clean(), "{:?}", report.examples.first());
        assert!(report.instances_checked >= 700);
    }

    #[test]
    fn indexed_plain_axioms_hold() {
        let config = BmConfig { trials: 40, seed: 6, ..BmConfig::default() };
        let plain: Vec<AxiomName> = AxiomName::plain().collect();
        assert!(check_bm_axioms(&config, &plain).is_clean());
    }
}
