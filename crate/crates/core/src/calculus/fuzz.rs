//! Randomized validity testing of axiom schemas and the UG rules.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::axioms::{instantiate_axiom, AxiomError, AxiomName, Bindings};
use crate::fuzzy::{Degree, Element, Sort};
use crate::gen::{random_grid, FormulaSpec};
use crate::logic::{Formula, WeightMark};
use crate::model::{Evaluator, Model};

/// A schema the fuzzer can instantiate. Bindings are drawn according to
/// [`Schema::shape`], so a variant of a built-in schema only needs to
/// override [`Schema::instantiate`].
pub trait Schema {
    fn name(&self) -> String;
    fn shape(&self) -> AxiomName;
    fn instantiate(&self, bindings: &Bindings) -> Result<Formula, AxiomError>;
}

impl Schema for AxiomName {
    fn name(&self) -> String {
        self.as_str().to_string()
    }

    fn shape(&self) -> AxiomName {
        *self
    }

    fn instantiate(&self, bindings: &Bindings) -> Result<Formula, AxiomError> {
        instantiate_axiom(*self, bindings)
    }
}

#[derive(Debug, Clone)]
pub struct FuzzConfig {
    pub trials: usize,
    /// Upper bound on both domain sizes.
    pub max_domain: usize,
    pub seed: u64,
    /// Incidence degrees come from `{0, 1/n, ..., 1}` with `n <= max_denominator`.
    pub max_denominator: i64,
    pub formula_depth: usize,
    /// Instances drawn per schema and trial.
    pub samples: usize,
    /// Random formulas per trial used to test UG directly.
    pub ug_samples: usize,
}

impl Default for FuzzConfig {
    fn default() -> Self {
        FuzzConfig {
            trials: 1000,
            max_domain: 4,
            seed: 0,
            max_denominator: 6,
            formula_depth: 2,
            samples: 2,
            ug_samples: 4,
        }
    }
}

/// What failed in a counterexample.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// The instance fails at `world`.
    Instance,
    /// `formula` is valid but its UG conclusion fails at `world`.
    Ug,
}

#[derive(Debug, Clone)]
pub struct FuzzCounterexample {
    pub schema: String,
    pub trial: usize,
    pub violation: Violation,
    pub bindings: String,
    /// The formula that fails at `world`.
    pub formula: Formula,
    /// Minimized by removing domain elements while the failure persists.
    pub model: Model,
    pub world: Element,
}

#[derive(Debug, Clone, Default)]
pub struct FuzzReport {
    pub seed: u64,
    pub trials: usize,
    pub instances_checked: usize,
    pub ug_checks: usize,
    pub failures: BTreeMap<String, usize>,
    /// The first counterexample found per schema (and for the UG rules).
    pub counterexamples: Vec<FuzzCounterexample>,
}

impl FuzzReport {
    pub fn is_clean(&self) -> bool {
        self.failures.is_empty()
    }
}

const UG: &str = "UG";

/// Draws bindings for a schema's shape from `degrees` and random formulas.
pub fn sample_bindings<R: Rng + ?Sized>(
    rng: &mut R,
    shape: AxiomName,
    spec: &FormulaSpec,
    degrees: &[Degree],
    depth: usize,
) -> Bindings {
    use AxiomName::*;
    let sort = if rng.gen_bool(0.5) { Sort::Object } else { Sort::Property };
    let mut b = Bindings::phi(spec.random_formula(rng, sort, depth));
    let pick = |rng: &mut R| *degrees.choose(rng).expect("grid has 0 and 1");
    match shape {
        KNec | KNecStrict | KSuff | KSuffStrict => {
            b = b.c(pick(rng)).psi(spec.random_formula(rng, sort, depth));
        }
        BNec | BNecStrict | BSuff | BSuffStrict | Con1 | Con2 | Bk3 | Bk4 => b = b.c(pick(rng)),
        Bk1 | Bk2 => {
            let (mut c, mut d) = (pick(rng), pick(rng));
            while c == d {
                d = pick(rng);
            }
            if c < d {
                std::mem::swap(&mut c, &mut d);
            }
            b = b.c(c).d(d);
        }
        DefU | DefI | DefC => {
            b = b.mark(WeightMark { degree: pick(rng), strict: rng.gen_bool(0.5) });
        }
        Bk5a | Bk5b | Bk6a | Bk6b | Def0 => {}
    }
    b
}

/// Tests every schema on `config.trials` random models and checks that both
/// UG rules preserve validity. Failures are reported, not raised.
pub fn soundness_fuzz(config: &FuzzConfig, schemas: &[&dyn Schema]) -> FuzzReport {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut report = FuzzReport { seed: config.seed, trials: config.trials, ..FuzzReport::default() };
    for trial in 0..config.trials {
        let grid = random_grid(&mut rng, config.max_denominator);
        let spec = FormulaSpec::standard(2, grid.clone());
        let model = spec.random_model(&mut rng, config.max_domain, config.max_domain, &grid);
        let mut ev = Evaluator::new(&model);
        let mut ug_candidates = Vec::new();
        for schema in schemas {
            for _ in 0..config.samples {
                let b = sample_bindings(&mut rng, schema.shape(), &spec, &grid, config.formula_depth);
                let Ok(inst) = schema.instantiate(&b) else { continue };
                report.instances_checked += 1;
                let truth = ev.truth_set(&inst).expect("valuation covers the formula");
                if let Some(w) = (0..truth.universe()).find(|&w| !truth.contains(w)) {
                    record(&mut report, &schema.name(), || FuzzCounterexample {
                        schema: schema.name(),
                        trial,
                        violation: Violation::Instance,
                        bindings: b.to_string(),
                        model: minimize(&model, &inst),
                        world: Element { sort: inst.sort(), index: w },
                        formula: inst.clone(),
                    });
                } else {
                    ug_candidates.push(inst);
                }
            }
        }
        for _ in 0..config.ug_samples {
            let sort = if rng.gen_bool(0.5) { Sort::Object } else { Sort::Property };
            ug_candidates.push(spec.random_formula(&mut rng, sort, config.formula_depth));
        }
        for phi in ug_candidates {
            report.ug_checks += 1;
            if let Some((conclusion, w)) = ug_failure(&mut ev, &phi) {
                record(&mut report, UG, || FuzzCounterexample {
                    schema: UG.to_string(),
                    trial,
                    violation: Violation::Ug,
                    bindings: format!("phi={phi}"),
                    model: minimize(&model, &conclusion),
                    world: Element { sort: conclusion.sort(), index: w },
                    formula: conclusion.clone(),
                });
            }
        }
    }
    report
}

fn record(report: &mut FuzzReport, name: &str, make: impl FnOnce() -> FuzzCounterexample) {
    let count = report.failures.entry(name.to_string()).or_insert(0);
    if *count == 0 {
        report.counterexamples.push(make());
    }
    *count += 1;
}

/// If `phi` is valid, `[1] phi` must be valid; if `phi` holds nowhere,
/// `[[1]] phi` must be valid. Returns a failing conclusion and world.
fn ug_failure(ev: &mut Evaluator<'_, Model>, phi: &Formula) -> Option<(Formula, usize)> {
    let truth = ev.truth_set(phi).expect("valuation covers the formula");
    let conclusion = if truth.len() == truth.universe() {
        Formula::nec(WeightMark::weak(Degree::ONE), phi.clone())
    } else if truth.is_empty() {
        Formula::suff(WeightMark::weak(Degree::ONE), phi.clone())
    } else {
        return None;
    };
    let holds = ev.truth_set(&conclusion).expect("valuation covers the formula");
    let w = (0..holds.universe()).find(|&w| !holds.contains(w))?;
    Some((conclusion, w))
}

fn fails_somewhere(model: &Model, phi: &Formula) -> bool {
    let truth = Evaluator::new(model).truth_set(phi).expect("valuation covers the formula");
    truth.len() < truth.universe()
}

/// Greedily drops objects and attributes while `phi` still fails somewhere.
pub fn minimize(model: &Model, phi: &Formula) -> Model {
    let mut current = model.clone();
    loop {
        let ctx = current.context();
        let (g, m) = (ctx.n_objects(), ctx.n_attributes());
        let candidates = (0..g)
            .filter(|_| g > 1)
            .map(|drop| ((0..g).filter(|&x| x != drop).collect::<Vec<_>>(), (0..m).collect::<Vec<_>>()))
            .chain((0..m).filter(|_| m > 1).map(|drop| ((0..g).collect(), (0..m).filter(|&x| x != drop).collect())));
        let smaller = candidates
            .filter_map(|(objects, attributes)| current.restrict(&objects, &attributes).ok())
            .find(|sub| fails_somewhere(sub, phi));
        match smaller {
            Some(sub) => current = sub,
            None => return current,
        }
    }
}
