//! One function per subcommand. Each returns an [`Outcome`] carrying both
//! report forms; the binary picks one and maps the verdict to an exit code.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context as _, Result};
use serde_json::{json, Value};

use possfca::calculus::{
    bounded_sat_sufficiency, bounded_sat_with, check_proof, soundness_fuzz, translate_script, AxiomName, FuzzConfig,
    ProofScript, SatOutcome, Schema, System,
};
use possfca::concept::{enumerate_concepts, ConceptFlavor, ConceptLattice};
use possfca::fuzzy::{CrispSet, Degree, Element, Sort};
use possfca::logic::{parse, translate_rho, DegreeSet, Formula, ModalKind, RhoDirection, Signature};
use possfca::model::{consequence, Evaluator};
use possfca::multirel::{check_bm_axioms, za_check, BmConfig, IndexTerm};

use crate::io::{self, LoadedContext, LoadedModel};

/// A report plus whether the command's question was answered positively
/// (holds, accepted, found, clean).
#[derive(Debug, Clone)]
pub struct Outcome {
    pub positive: bool,
    pub json: Value,
    pub text: String,
}

impl Outcome {
    fn new(positive: bool, json: Value, text: String) -> Self {
        Outcome { positive, json, text }
    }
}

pub fn parse_sort(s: &str) -> Result<Sort> {
    match s {
        "o" | "object" | "objects" => Ok(Sort::Object),
        "p" | "property" | "properties" => Ok(Sort::Property),
        _ => bail!("unknown sort `{s}` (expected o or p)"),
    }
}

fn sort_name(sort: Sort) -> &'static str {
    match sort {
        Sort::Object => "o",
        Sort::Property => "p",
    }
}

fn names(set: &CrispSet, names: &[String]) -> Vec<String> {
    set.iter().map(|i| names[i].clone()).collect()
}

fn braces(items: &[String]) -> String {
    format!("{{{}}}", items.join(", "))
}

fn parse_formula(text: &str, sig: &Signature, sort: Option<Sort>) -> Result<Formula> {
    parse(text, sig, sort).map_err(|e| anyhow!("formula `{text}`: {e}"))
}

pub fn concepts(path: &Path, flavor: &str, cut: &str, dot: bool) -> Result<Outcome> {
    let ctx = io::load_context(path)?.into_plain()?;
    let flavor: ConceptFlavor = flavor.parse()?;
    let c: Degree = cut.parse().with_context(|| format!("cut `{cut}`"))?;
    let lattice = enumerate_concepts(&ctx, flavor, c)?;
    let listed: Vec<(Vec<String>, Vec<String>)> = lattice
        .concepts()
        .iter()
        .map(|k| (names(&k.extent, ctx.objects()), names(&k.intent, ctx.attributes())))
        .collect();
    let json = json!({
        "flavor": flavor.short_name(),
        "cut": c.to_string(),
        "concepts": listed.iter().map(|(e, i)| json!({"extent": e, "intent": i})).collect::<Vec<_>>(),
        "covers": lattice.covers(),
    });
    let text = if dot {
        lattice_dot(&lattice, &listed)
    } else {
        let mut out = format!("{} {flavor} concepts at cut {c}\n", listed.len());
        for (k, (e, i)) in listed.iter().enumerate() {
            writeln!(out, "{}. ({}, {})", k + 1, braces(e), braces(i)).unwrap();
        }
        out
    };
    Ok(Outcome::new(true, json, text))
}

/// Hasse diagram with the bottom concept at the bottom.
pub fn lattice_dot(lattice: &ConceptLattice, listed: &[(Vec<String>, Vec<String>)]) -> String {
    let mut out = String::from("digraph lattice {\n  rankdir=BT;\n  node [shape=box];\n");
    for (k, (e, i)) in listed.iter().enumerate() {
        writeln!(out, "  c{k} [label=\"{}\\n{}\"];", braces(e), braces(i)).unwrap();
    }
    for (lo, hi) in lattice.covers() {
        writeln!(out, "  c{lo} -> c{hi};").unwrap();
    }
    out.push_str("}\n");
    out
}

fn truth_set(model: &LoadedModel, phi: &Formula) -> Result<CrispSet> {
    Ok(match model {
        LoadedModel::Plain(m) => Evaluator::new(m).truth_set(phi)?,
        LoadedModel::Multi(m) => Evaluator::new(m).truth_set(phi)?,
    })
}

pub fn check(model_path: &Path, sort: Sort, world: Option<&str>, formula: &str) -> Result<Outcome> {
    let model = io::load_model(model_path)?;
    let phi = parse_formula(formula, &model.signature(), Some(sort))?;
    let truth = truth_set(&model, &phi)?;
    let domain = model.names(sort);
    let members = names(&truth, domain);
    let (holds, scope) = match world {
        Some(w) => {
            let k = domain.iter().position(|n| n == w).ok_or_else(|| anyhow!("no {} named `{w}`", sort_name(sort)))?;
            (truth.contains(k), w.to_string())
        }
        None => (truth.len() == truth.universe(), "every world".to_string()),
    };
    let json = json!({
        "formula": phi.to_string(),
        "sort": sort_name(sort),
        "world": world,
        "holds": holds,
        "truth_set": members,
    });
    let verdict = match (holds, world) {
        (true, _) => "holds at",
        (false, Some(_)) => "fails at",
        (false, None) => "does not hold at",
    };
    let text = format!("{phi} {verdict} {scope}\ntruth set: {}\n", braces(&members));
    Ok(Outcome::new(holds, json, text))
}

pub fn consequence_cmd(models: &[PathBuf], sort: Sort, premises: &[String], formula: &str) -> Result<Outcome> {
    let loaded = models.iter().map(|p| io::load_model(p)).collect::<Result<Vec<_>, _>>()?;
    let mut sig = Signature::new();
    for m in &loaded {
        for (name, s) in m.signature().iter() {
            sig.declare(name, s);
        }
    }
    let gamma = premises.iter().map(|p| parse_formula(p, &sig, Some(sort))).collect::<Result<Vec<_>>>()?;
    let phi = parse_formula(formula, &sig, Some(sort))?;
    let mut failure = None;
    for (k, m) in loaded.iter().enumerate() {
        let found = match m {
            LoadedModel::Plain(x) => consequence(std::slice::from_ref(x), sort, &gamma, &phi)?,
            LoadedModel::Multi(x) => consequence(std::slice::from_ref(x), sort, &gamma, &phi)?,
        };
        if let Some(cx) = found {
            failure = Some((k, m.names(sort)[cx.world.index].clone()));
            break;
        }
    }
    let json = json!({
        "premises": gamma.iter().map(Formula::to_string).collect::<Vec<_>>(),
        "formula": phi.to_string(),
        "models": models.len(),
        "holds": failure.is_none(),
        "counterexample": failure.as_ref().map(|(k, w)| json!({"model": models[*k].display().to_string(), "world": w})),
    });
    let text = match &failure {
        None => format!("{phi} follows from the premises on all {} model(s)\n", models.len()),
        Some((k, w)) => format!("counterexample: world {w} of {}\n", models[*k].display()),
    };
    Ok(Outcome::new(failure.is_none(), json, text))
}

pub fn prove(script_path: &Path, system: &str, premises: &[String]) -> Result<Outcome> {
    let text = std::fs::read_to_string(script_path).with_context(|| script_path.display().to_string())?;
    let script = ProofScript::parse(&text)?;
    let system: System = system.parse().map_err(|e: String| anyhow!(e))?;
    let given = premises.iter().map(|p| parse_formula(p, &script.signature, None)).collect::<Result<Vec<_>>>()?;
    let listed = (!premises.is_empty()).then_some(given.as_slice());
    Ok(match check_proof(&script, listed, system) {
        Ok(proof) => {
            let json = json!({
                "accepted": true,
                "system": system.name(),
                "conclusion": proof.conclusion.to_string(),
                "depends_on_premises": proof.depends_on_premises,
                "premises_used": proof.premises_used.iter().map(Formula::to_string).collect::<Vec<_>>(),
            });
            let text = format!("accepted in {system}: {}\n", proof.conclusion);
            Outcome::new(true, json, text)
        }
        Err(e) => {
            let json = json!({"accepted": false, "system": system.name(), "line": e.line, "error": e.kind.to_string()});
            Outcome::new(false, json, format!("rejected in {system}: {e}\n"))
        }
    })
}

pub fn parse_direction(s: &str) -> Result<RhoDirection> {
    match s {
        "suff2nec" => Ok(RhoDirection::SuffToNec),
        "nec2suff" => Ok(RhoDirection::NecToSuff),
        _ => bail!("unknown direction `{s}` (expected suff2nec or nec2suff)"),
    }
}

pub fn translate(dir: RhoDirection, formula: Option<&str>, sort: Option<Sort>, script: Option<&Path>) -> Result<Outcome> {
    match (formula, script) {
        (Some(f), None) => {
            let phi = parse_formula(f, &Signature::new(), sort)?;
            let image = translate_rho(&phi, dir)?;
            let json = json!({"formula": phi.to_string(), "translation": image.to_string()});
            Ok(Outcome::new(true, json, format!("{image}\n")))
        }
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path).with_context(|| path.display().to_string())?;
            let image = translate_script(&ProofScript::parse(&text)?, dir)?;
            let printed = image.to_string();
            Ok(Outcome::new(true, json!({"script": printed}), printed))
        }
        _ => bail!("give exactly one of --formula and --script"),
    }
}

pub fn parse_degrees(s: &str) -> Result<DegreeSet> {
    let items = s.split(',').map(|d| d.trim().parse::<Degree>().with_context(|| format!("degree `{d}`")));
    Ok(DegreeSet::new(items.collect::<Result<Vec<_>>>()?))
}

pub fn sat(formulas: &[String], sort: Sort, max_g: usize, max_m: usize, degrees: Option<&str>) -> Result<Outcome> {
    let gamma = formulas.iter().map(|f| parse_formula(f, &Signature::new(), Some(sort))).collect::<Result<Vec<_>>>()?;
    let has = |k| gamma.iter().any(|f| f.contains_kind(k));
    let degrees = degrees.map(parse_degrees).transpose()?;
    let outcome = if has(ModalKind::Sufficiency) && !has(ModalKind::Necessity) {
        if degrees.is_some() {
            bail!("--degrees applies to necessity formulas only");
        }
        bounded_sat_sufficiency(&gamma, sort, max_g, max_m)?
    } else {
        bounded_sat_with(&gamma, sort, max_g, max_m, degrees.as_ref())?
    };
    Ok(match outcome {
        SatOutcome::Found { model, world } => {
            let name = model.context().names(sort)[world.index].clone();
            let json = json!({"found": true, "world": name, "model": io::model_value(&model)});
            let text = format!("satisfied at {name} of\n{}", io::model_json(&model));
            Outcome::new(true, json, text)
        }
        SatOutcome::Exhausted { models_examined } => {
            let json = json!({"found": false, "models_examined": models_examined, "max_g": max_g, "max_m": max_m});
            let text = format!(
                "exhausted: none of {models_examined} models with at most {max_g} objects and {max_m} attributes \
                 satisfies the formulas (larger models are not ruled out)\n"
            );
            Outcome::new(false, json, text)
        }
    })
}

pub struct FuzzArgs<'a> {
    pub trials: usize,
    pub seed: u64,
    pub max_domain: usize,
    pub schemas: &'a [String],
    pub multi: bool,
}

pub fn fuzz(args: &FuzzArgs<'_>) -> Result<Outcome> {
    let mut chosen = args.schemas.iter().map(|s| s.parse::<AxiomName>()).collect::<Result<Vec<_>, _>>()?;
    if args.multi {
        if chosen.is_empty() {
            chosen = vec![AxiomName::DefU, AxiomName::DefI, AxiomName::DefC, AxiomName::Def0];
        }
        let config = BmConfig { trials: args.trials, seed: args.seed, max_domain: args.max_domain, ..BmConfig::default() };
        let report = check_bm_axioms(&config, &chosen);
        let examples: Vec<Value> = report
            .examples
            .iter()
            .map(|f| {
                json!({
                    "axiom": f.axiom.as_str(),
                    "trial": f.trial,
                    "instance": f.instance.to_string(),
                    "world": world_label(f.world),
                    "context": serde_json::from_str::<Value>(&io::multi_context_json(&f.context)).expect("own output"),
                })
            })
            .collect();
        let json = json!({
            "seed": report.seed,
            "trials": report.trials,
            "instances_checked": report.instances_checked,
            "failures": report.failures.iter().map(|(a, n)| (a.as_str().to_string(), *n)).collect::<std::collections::BTreeMap<_, _>>(),
            "counterexamples": examples,
        });
        let text = summary(report.seed, report.trials, report.instances_checked, 0, report.failures.len());
        return Ok(Outcome::new(report.is_clean(), json, text));
    }
    if chosen.is_empty() {
        chosen = AxiomName::plain().collect();
    }
    let refs: Vec<&dyn Schema> = chosen.iter().map(|a| a as &dyn Schema).collect();
    let config = FuzzConfig { trials: args.trials, seed: args.seed, max_domain: args.max_domain, ..FuzzConfig::default() };
    let report = soundness_fuzz(&config, &refs);
    let examples: Vec<Value> = report
        .counterexamples
        .iter()
        .map(|c| {
            json!({
                "schema": c.schema,
                "trial": c.trial,
                "bindings": c.bindings,
                "formula": c.formula.to_string(),
                "world": world_label(c.world),
                "model": io::model_value(&c.model),
            })
        })
        .collect();
    let json = json!({
        "seed": report.seed,
        "trials": report.trials,
        "instances_checked": report.instances_checked,
        "ug_checks": report.ug_checks,
        "failures": report.failures,
        "counterexamples": examples,
    });
    let mut text = summary(report.seed, report.trials, report.instances_checked, report.ug_checks, report.failures.len());
    for c in &report.counterexamples {
        writeln!(text, "{} fails at {} ({}): {}", c.schema, world_label(c.world), c.bindings, c.formula).unwrap();
    }
    Ok(Outcome::new(report.is_clean(), json, text))
}

fn world_label(w: Element) -> String {
    match w.sort {
        Sort::Object => format!("object #{}", w.index + 1),
        Sort::Property => format!("attribute #{}", w.index + 1),
    }
}

fn summary(seed: u64, trials: usize, instances: usize, ug: usize, failing: usize) -> String {
    format!("seed {seed}: {trials} trials, {instances} instances, {ug} UG checks, {failing} failing schema(s)\n")
}

pub fn za_eq(i: &str, j: &str, strict: bool) -> Result<Outcome> {
    let i: IndexTerm = i.parse().map_err(|e| anyhow!("index `{i}`: {e}"))?;
    let j: IndexTerm = j.parse().map_err(|e| anyhow!("index `{j}`: {e}"))?;
    let verdict = za_check(&i, &j);
    let equal = if strict { verdict.de_morgan } else { verdict.chain };
    let json = json!({
        "left": i.to_string(),
        "right": j.to_string(),
        "equal": equal,
        "kleene_chain": verdict.chain,
        "de_morgan": verdict.de_morgan,
    });
    let mut text = format!("{i} {} {j}\n", if equal { "=" } else { "!=" });
    if !verdict.agree() {
        writeln!(text, "note: the 3-chain check says {} and the De Morgan check says {}", verdict.chain, verdict.de_morgan)
            .unwrap();
    }
    Ok(Outcome::new(equal, json, text))
}

pub fn convert(input: &Path, to: &str) -> Result<Outcome> {
    let text = match (io::load_context(input)?, to) {
        (LoadedContext::Plain(ctx), "csv") => io::context_csv(&ctx),
        (LoadedContext::Plain(ctx), "json") => io::context_json(&ctx),
        (LoadedContext::Multi(ctx), "json") => io::multi_context_json(&ctx),
        (LoadedContext::Multi(_), "csv") => bail!("multi-relational contexts have no CSV form"),
        (_, other) => bail!("unknown target format `{other}`"),
    };
    Ok(Outcome::new(true, json!({"format": to, "output": text}), text))
}
