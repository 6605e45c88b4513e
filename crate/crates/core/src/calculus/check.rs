//! Line-by-line verification of proof scripts.
//!
//! Formulas are compared after removing double negations, so a line may
//! state an axiom instance or rule conclusion with `!!` pairs added or
//! dropped anywhere (the expansion of derived modalities introduces them).

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use super::axioms::{instantiate_axiom, AxiomError, AxiomName, Bindings};
use super::script::{Justification, ProofLine, ProofScript};
use crate::fuzzy::Degree;
use crate::logic::{translate_rho, Formula, ModalKind, RhoDirection, WeightMark};
use crate::multirel::{za_equal, IndexTerm};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum System {
    /// The full single-relation calculus.
    Wml,
    /// Necessity fragment.
    Wkb,
    /// Sufficiency fragment.
    Wkf,
    /// Indexed calculus with the index-definition axioms and rule (EQ).
    Wbml,
}

impl System {
    pub fn name(self) -> &'static str {
        match self {
            System::Wml => "2WML",
            System::Wkb => "2WKB",
            System::Wkf => "2WKF",
            System::Wbml => "2WBML",
        }
    }

    pub fn allows_axiom(self, a: AxiomName) -> bool {
        use AxiomName::*;
        match self {
            System::Wml => !a.is_def(),
            System::Wkb => matches!(a, KNec | KNecStrict | BNec | BNecStrict | Bk1 | Bk3 | Bk5a | Bk5b),
            System::Wkf => matches!(a, KSuff | KSuffStrict | BSuff | BSuffStrict | Bk2 | Bk4 | Bk6a | Bk6b),
            System::Wbml => true,
        }
    }

    fn language_violation(self, f: &Formula) -> Option<&'static str> {
        match self {
            System::Wbml => (!all_indexed(f)).then_some("every modality must carry an index"),
            _ if f.is_indexed() => Some("indexed modalities are not part of this language"),
            System::Wkb if f.contains_kind(ModalKind::Sufficiency) => Some("sufficiency modality outside its fragment"),
            System::Wkf if f.contains_kind(ModalKind::Necessity) => Some("necessity modality outside its fragment"),
            _ => None,
        }
    }
}

impl fmt::Display for System {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for System {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        [System::Wml, System::Wkb, System::Wkf, System::Wbml]
            .into_iter()
            .find(|sys| sys.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| format!("unknown system `{s}` (expected 2WML, 2WKB, 2WKF or 2WBML)"))
    }
}

fn all_indexed(f: &Formula) -> bool {
    match f {
        Formula::Atom { .. } => true,
        Formula::Not(x) => all_indexed(x),
        Formula::And(a, b) => all_indexed(a) && all_indexed(b),
        Formula::Modal(m, body) => m.index.is_some() && all_indexed(body),
    }
}

/// Whether UG may be applied to lines that depend on premises.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum UgPolicy {
    /// UG applies to theorem lines only; premises are local assumptions.
    #[default]
    Local,
    /// Premises are read as holding at every world, so UG applies to any
    /// line.
    Global,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProofErrorKind {
    #[error("the script has no lines")]
    Empty,
    #[error("line {0} does not exist or does not precede this line")]
    BadReference(usize),
    #[error("{0} is not available in {1}")]
    NotInSystem(String, System),
    #[error("{0}")]
    Language(&'static str),
    #[error(transparent)]
    Axiom(#[from] AxiomError),
    #[error("formula does not match the justification; expected {expected}")]
    Mismatch { expected: String },
    #[error("formula is not among the premises")]
    NotAPremise,
    #[error("neither cited line is an implication from the other to this formula")]
    MpShape,
    #[error("{0}")]
    UgShape(String),
    #[error("UG applied to line {0}, which depends on premises")]
    UgOnPremise(usize),
    #[error("not a propositional tautology")]
    NotTautology,
    #[error("too many propositional components ({0}) for a truth table")]
    TooManyComponents(usize),
    #[error("{0}")]
    Eq(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("proof line {line}: {kind}")]
pub struct ProofError {
    /// The script's own number for the offending line.
    pub line: usize,
    pub kind: ProofErrorKind,
}

/// An accepted proof.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Proof {
    pub system: System,
    pub conclusion: Formula,
    pub premises_used: Vec<Formula>,
    /// Whether the conclusion depends on a premise line.
    pub depends_on_premises: bool,
}

fn canon(f: &Formula) -> Formula {
    f.strip_double_negations()
}

const MAX_COMPONENTS: usize = 20;

/// Truth-table check treating atoms and modal subformulas as opaque
/// propositional variables.
pub fn is_tautology(f: &Formula) -> Result<bool, usize> {
    let f = canon(f);
    let mut comps: HashMap<&Formula, usize> = HashMap::new();
    collect_components(&f, &mut comps);
    let n = comps.len();
    if n > MAX_COMPONENTS {
        return Err(n);
    }
    Ok((0u32..1 << n).all(|assignment| eval_prop(&f, &comps, assignment)))
}

fn collect_components<'a>(f: &'a Formula, out: &mut HashMap<&'a Formula, usize>) {
    match f {
        Formula::Not(x) => collect_components(x, out),
        Formula::And(a, b) => {
            collect_components(a, out);
            collect_components(b, out);
        }
        _ => {
            let next = out.len();
            out.entry(f).or_insert(next);
        }
    }
}

fn eval_prop(f: &Formula, comps: &HashMap<&Formula, usize>, assignment: u32) -> bool {
    match f {
        Formula::Not(x) => !eval_prop(x, comps, assignment),
        Formula::And(a, b) => eval_prop(a, comps, assignment) && eval_prop(b, comps, assignment),
        _ => assignment >> comps[f] & 1 == 1,
    }
}

/// Verifies `script` in `system`. When `premises` is given, premise lines
/// must state one of them; otherwise any premise line is accepted and
/// reported in [`Proof::premises_used`].
pub fn check_proof(script: &ProofScript, premises: Option<&[Formula]>, system: System) -> Result<Proof, ProofError> {
    let allowed: Option<Vec<Formula>> = premises.map(|ps| ps.iter().map(canon).collect());
    let mut deps: Vec<bool> = Vec::with_capacity(script.lines.len());
    let mut used: Vec<Formula> = Vec::new();
    for (pos, line) in script.lines.iter().enumerate() {
        let fail = |kind: ProofErrorKind| ProofError { line: line.number, kind };
        if let Some(reason) = system.language_violation(&line.formula) {
            return Err(fail(ProofErrorKind::Language(reason)));
        }
        let lookup = |n: usize| -> Result<(usize, &ProofLine), ProofError> {
            match script.line(n) {
                Some((k, l)) if k < pos => Ok((k, l)),
                _ => Err(fail(ProofErrorKind::BadReference(n))),
            }
        };
        let dep = verify_line(script, line, system, &lookup, &deps, &allowed, &mut used).map_err(fail)?;
        deps.push(dep);
    }
    let last = script.lines.last().ok_or(ProofError { line: 0, kind: ProofErrorKind::Empty })?;
    Ok(Proof {
        system,
        conclusion: last.formula.clone(),
        premises_used: used,
        depends_on_premises: *deps.last().unwrap_or(&false),
    })
}

fn verify_line<'s>(
    script: &'s ProofScript,
    line: &ProofLine,
    system: System,
    lookup: &dyn Fn(usize) -> Result<(usize, &'s ProofLine), ProofError>,
    deps: &[bool],
    allowed: &Option<Vec<Formula>>,
    used: &mut Vec<Formula>,
) -> Result<bool, ProofErrorKind> {
    let here = canon(&line.formula);
    let expect = |expected: Formula| -> Result<(), ProofErrorKind> {
        if canon(&expected) == here {
            Ok(())
        } else {
            Err(ProofErrorKind::Mismatch { expected: expected.to_string() })
        }
    };
    let resolve = |n: usize| lookup(n).map_err(|e| e.kind);
    match &line.justification {
        Justification::Premise => {
            if let Some(list) = allowed {
                if !list.contains(&here) {
                    return Err(ProofErrorKind::NotAPremise);
                }
            }
            if !used.contains(&line.formula) {
                used.push(line.formula.clone());
            }
            Ok(true)
        }
        Justification::Axiom { name, bindings } => {
            if !system.allows_axiom(*name) {
                return Err(ProofErrorKind::NotInSystem(format!("axiom {name}"), system));
            }
            if system != System::Wbml && bindings.i.is_some() {
                return Err(ProofErrorKind::NotInSystem("an index binding".into(), system));
            }
            expect(instantiate_axiom(*name, bindings)?)?;
            Ok(false)
        }
        Justification::Taut => match is_tautology(&line.formula) {
            Ok(true) => Ok(false),
            Ok(false) => Err(ProofErrorKind::NotTautology),
            Err(n) => Err(ProofErrorKind::TooManyComponents(n)),
        },
        Justification::Mp(a, b) => {
            let (ka, la) = resolve(*a)?;
            let (kb, lb) = resolve(*b)?;
            let fits = |ant: &Formula, imp: &Formula| {
                Formula::implies(ant.clone(), line.formula.clone()).is_ok_and(|f| canon(&f) == canon(imp))
            };
            if fits(&la.formula, &lb.formula) || fits(&lb.formula, &la.formula) {
                Ok(deps[ka] || deps[kb])
            } else {
                Err(ProofErrorKind::MpShape)
            }
        }
        Justification::UgNec { line: n, index } | Justification::UgSuff { line: n, index } => {
            let suff = matches!(line.justification, Justification::UgSuff { .. });
            let rule = if suff { "ug-suff" } else { "ug-nec" };
            let kind = if suff { ModalKind::Sufficiency } else { ModalKind::Necessity };
            let permitted = match system {
                System::Wkb => !suff,
                System::Wkf => suff,
                _ => true,
            };
            if !permitted {
                return Err(ProofErrorKind::NotInSystem(format!("rule {rule}"), system));
            }
            if (system == System::Wbml) != index.is_some() {
                return Err(ProofErrorKind::UgShape(if index.is_some() {
                    format!("{rule} takes no index outside 2WBML")
                } else {
                    format!("{rule} needs an index in 2WBML")
                }));
            }
            let (k, src) = resolve(*n)?;
            if deps[k] && script.ug == UgPolicy::Local {
                return Err(ProofErrorKind::UgOnPremise(*n));
            }
            let Formula::Modal(m, body) = &line.formula else {
                return Err(ProofErrorKind::UgShape(format!("{rule} concludes a modal formula")));
            };
            if m.kind != kind || m.mark != WeightMark::weak(Degree::ONE) || &m.index != index {
                return Err(ProofErrorKind::UgShape(format!(
                    "{rule} concludes {}",
                    if suff { "[[1]] phi" } else { "[1] phi" }
                )));
            }
            let premise = if suff { Formula::not((**body).clone()) } else { (**body).clone() };
            if canon(&premise) != canon(&src.formula) {
                return Err(ProofErrorKind::UgShape(format!("line {n} must state {premise}")));
            }
            Ok(deps[k])
        }
        Justification::Eq(i, j) => {
            if system != System::Wbml {
                return Err(ProofErrorKind::NotInSystem("rule eq".into(), system));
            }
            if !za_equal(i, j) {
                return Err(ProofErrorKind::Eq(format!("{i} = {j} does not hold in Zadeh algebra")));
            }
            let shape = || ProofErrorKind::Eq("eq concludes [x]^i phi <-> [x]^j phi".into());
            let Formula::And(l, _) = &line.formula else { return Err(shape()) };
            let Some((lhs, _)) = l.as_implication() else { return Err(shape()) };
            let Formula::Modal(m, body) = lhs else { return Err(shape()) };
            if m.kind != ModalKind::Necessity {
                return Err(shape());
            }
            let at = |idx: &IndexTerm| Formula::modal(m.kind, m.mark, Some(idx.clone()), (**body).clone());
            expect(Formula::iff(at(i), at(j)).expect("same body"))?;
            Ok(false)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TranslateError {
    #[error("line {line}: {message}")]
    Line { line: usize, message: String },
}

fn rho_bindings(b: &Bindings, dir: RhoDirection) -> Result<Bindings, String> {
    let tr = |f: &Option<Formula>| -> Result<Option<Formula>, String> {
        f.as_ref().map(|f| translate_rho(f, dir).map_err(|e| e.to_string())).transpose()
    };
    Ok(Bindings { phi: tr(&b.phi)?, psi: tr(&b.psi)?, ..b.clone() })
}

/// Maps a proof in one fragment line by line to a proof of the translated
/// formulas in the other fragment.
pub fn translate_script(script: &ProofScript, dir: RhoDirection) -> Result<ProofScript, TranslateError> {
    use AxiomName::*;
    let mut lines = Vec::with_capacity(script.lines.len());
    for line in &script.lines {
        let err = |message: String| TranslateError::Line { line: line.number, message };
        let formula = translate_rho(&line.formula, dir).map_err(|e| err(e.to_string()))?;
        let justification = match &line.justification {
            Justification::Axiom { name, bindings } => {
                let to_nec = dir == RhoDirection::SuffToNec;
                let target = match (name, to_nec) {
                    (KSuff, true) => KNec,
                    (KSuffStrict, true) => KNecStrict,
                    (BSuff, true) => BNec,
                    (BSuffStrict, true) => BNecStrict,
                    (Bk2, true) => Bk1,
                    (Bk4, true) => Bk3,
                    (Bk6a, true) => Bk5a,
                    (Bk6b, true) => Bk5b,
                    (KNec, false) => KSuff,
                    (KNecStrict, false) => KSuffStrict,
                    (BNec, false) => BSuff,
                    (BNecStrict, false) => BSuffStrict,
                    (Bk1, false) => Bk2,
                    (Bk3, false) => Bk4,
                    (Bk5a, false) => Bk6a,
                    (Bk5b, false) => Bk6b,
                    _ => return Err(err(format!("axiom {name} has no counterpart in the other fragment"))),
                };
                let mut b = rho_bindings(bindings, dir).map_err(err)?;
                // Bookkeeping schemas apply the modality directly to phi, so
                // the translated argument needs its own negation.
                if matches!(target, Bk1 | Bk2 | Bk3 | Bk4 | Bk5a | Bk5b | Bk6a | Bk6b) {
                    b.phi = b.phi.map(Formula::not);
                }
                Justification::Axiom { name: target, bindings: b }
            }
            Justification::UgNec { line: n, index } if dir == RhoDirection::NecToSuff => {
                Justification::UgSuff { line: *n, index: index.clone() }
            }
            Justification::UgSuff { line: n, index } if dir == RhoDirection::SuffToNec => {
                Justification::UgNec { line: *n, index: index.clone() }
            }
            Justification::UgNec { .. } | Justification::UgSuff { .. } => {
                return Err(err("UG rule of the wrong fragment".into()))
            }
            Justification::Eq(..) => return Err(err("rule eq has no fragment counterpart".into())),
            other => other.clone(),
        };
        lines.push(ProofLine { number: line.number, formula, justification });
    }
    let mut signature = script.signature.clone();
    for l in &lines {
        signature.absorb(&l.formula);
    }
    Ok(ProofScript { signature, ug: script.ug, lines })
}
