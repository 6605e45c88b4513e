//! Text format for proof scripts.
//!
//! ```text
//! # comment
//! @o p r          object symbols
//! @p q            property symbols
//! @ug global      let UG apply to premise-dependent lines
//! 1. q ; premise
//! 2. [1]_p q ; ug-nec 1
//! ```
//!
//! Justifications: `premise`, `ax NAME c=.. d=.. i=.. j=.. phi=.. psi=..`,
//! `mp I J`, `ug-nec I [i=IDX]`, `ug-suff I [i=IDX]`, `taut`, `eq IDX=IDX`.

use std::fmt;

use thiserror::Error;

use super::axioms::{AxiomName, Bindings};
use super::check::UgPolicy;
use crate::fuzzy::{Degree, Sort};
use crate::logic::{parse, parse_index, Formula, Signature, WeightMark};
use crate::multirel::IndexTerm;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Justification {
    Premise,
    Axiom { name: AxiomName, bindings: Bindings },
    Mp(usize, usize),
    UgNec { line: usize, index: Option<IndexTerm> },
    UgSuff { line: usize, index: Option<IndexTerm> },
    Taut,
    Eq(IndexTerm, IndexTerm),
}

impl fmt::Display for Justification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let idx = |i: &Option<IndexTerm>| i.as_ref().map(|i| format!(" i={i}")).unwrap_or_default();
        match self {
            Justification::Premise => write!(f, "premise"),
            Justification::Axiom { name, bindings } => {
                write!(f, "ax {name}")?;
                let b = bindings.to_string();
                if !b.is_empty() {
                    write!(f, " {b}")?;
                }
                Ok(())
            }
            Justification::Mp(a, b) => write!(f, "mp {a} {b}"),
            Justification::UgNec { line, index } => write!(f, "ug-nec {line}{}", idx(index)),
            Justification::UgSuff { line, index } => write!(f, "ug-suff {line}{}", idx(index)),
            Justification::Taut => write!(f, "taut"),
            Justification::Eq(i, j) => write!(f, "eq {i}={j}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProofLine {
    pub number: usize,
    pub formula: Formula,
    pub justification: Justification,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProofScript {
    pub signature: Signature,
    pub ug: UgPolicy,
    pub lines: Vec<ProofLine>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("script line {line}: {message}")]
pub struct ScriptError {
    /// 1-based line of the script text.
    pub line: usize,
    pub message: String,
}

const KEYS: [&str; 6] = ["c", "d", "i", "j", "phi", "psi"];

/// Splits `c=0.3 phi=p & q` into key/value pairs. A key starts at the
/// beginning or after whitespace and is immediately followed by `=`;
/// formulas and index terms never contain `=`.
fn split_bindings(text: &str) -> Result<Vec<(&str, &str)>, String> {
    let mut starts = Vec::new();
    let bytes = text.as_bytes();
    for (pos, _) in text.match_indices('=') {
        let key_start = text[..pos].rfind(|c: char| c.is_whitespace()).map_or(0, |w| w + 1);
        let key = &text[key_start..pos];
        if !KEYS.contains(&key) {
            return Err(format!("unknown binding `{key}`"));
        }
        starts.push((key_start, pos));
    }
    if let Some(&(first, _)) = starts.first() {
        if !text[..first].trim().is_empty() {
            return Err(format!("stray text `{}`", text[..first].trim()));
        }
    } else if !text.trim().is_empty() {
        return Err(format!("stray text `{}`", text.trim()));
    }
    let mut out = Vec::new();
    for (k, &(key_start, eq)) in starts.iter().enumerate() {
        let end = starts.get(k + 1).map_or(bytes.len(), |&(next, _)| next);
        out.push((&text[key_start..eq], text[eq + 1..end].trim()));
    }
    Ok(out)
}

fn parse_mark(text: &str) -> Result<WeightMark, String> {
    let (num, strict) = match text.strip_suffix('+') {
        Some(n) => (n, true),
        None => (text, false),
    };
    let degree: Degree = num.trim().parse().map_err(|e| format!("bad weight `{text}`: {e}"))?;
    Ok(WeightMark { degree, strict })
}

fn parse_bindings(text: &str, sig: &Signature) -> Result<Bindings, String> {
    let mut b = Bindings::default();
    for (key, value) in split_bindings(text)? {
        let formula = |v: &str| parse(v, sig, None).map_err(|e| format!("{key}: {e}"));
        let index = |v: &str| parse_index(v).map_err(|e| format!("{key}: {e}"));
        let dup = match key {
            "c" => b.c.replace(parse_mark(value)?).is_some(),
            "d" => b.d.replace(value.parse().map_err(|e| format!("bad weight `{value}`: {e}"))?).is_some(),
            "phi" => b.phi.replace(formula(value)?).is_some(),
            "psi" => b.psi.replace(formula(value)?).is_some(),
            "i" => b.i.replace(index(value)?).is_some(),
            _ => b.j.replace(index(value)?).is_some(),
        };
        if dup {
            return Err(format!("binding `{key}` given twice"));
        }
    }
    Ok(b)
}

fn parse_ref(token: Option<&str>) -> Result<usize, String> {
    let t = token.ok_or("missing line reference")?;
    t.parse().map_err(|_| format!("bad line reference `{t}`"))
}

fn parse_ug(rest: &str) -> Result<(usize, Option<IndexTerm>), String> {
    let rest = rest.trim();
    let (num, tail) = rest.split_once(char::is_whitespace).unwrap_or((rest, ""));
    let line = parse_ref(Some(num))?;
    let mut index = None;
    for (key, value) in split_bindings(tail)? {
        if key != "i" {
            return Err(format!("UG takes only an index binding, got `{key}`"));
        }
        index = Some(parse_index(value).map_err(|e| e.to_string())?);
    }
    Ok((line, index))
}

fn parse_justification(text: &str, sig: &Signature) -> Result<Justification, String> {
    let text = text.trim();
    let (head, rest) = text.split_once(char::is_whitespace).unwrap_or((text, ""));
    let mut words = rest.split_whitespace();
    let no_args = |j: Justification| if rest.trim().is_empty() { Ok(j) } else { Err(format!("`{head}` takes no arguments")) };
    match head {
        "premise" => no_args(Justification::Premise),
        "taut" => no_args(Justification::Taut),
        "ax" => {
            let rest = rest.trim_start();
            let (name, tail) = rest.split_once(char::is_whitespace).unwrap_or((rest, ""));
            let name: AxiomName = name.parse().map_err(|e: super::axioms::AxiomError| e.to_string())?;
            Ok(Justification::Axiom { name, bindings: parse_bindings(tail, sig)? })
        }
        "mp" => {
            let a = parse_ref(words.next())?;
            let b = parse_ref(words.next())?;
            if words.next().is_some() {
                return Err("mp takes two line references".into());
            }
            Ok(Justification::Mp(a, b))
        }
        "ug-nec" => parse_ug(rest).map(|(line, index)| Justification::UgNec { line, index }),
        "ug-suff" => parse_ug(rest).map(|(line, index)| Justification::UgSuff { line, index }),
        "eq" => {
            let (l, r) = rest.split_once('=').ok_or("eq needs `I=J`")?;
            let i = parse_index(l.trim()).map_err(|e| e.to_string())?;
            let j = parse_index(r.trim()).map_err(|e| e.to_string())?;
            Ok(Justification::Eq(i, j))
        }
        other => Err(format!("unknown justification `{other}`")),
    }
}

impl ProofScript {
    pub fn parse(text: &str) -> Result<ProofScript, ScriptError> {
        let mut sig = Signature::new();
        let mut ug = UgPolicy::Local;
        let mut lines = Vec::new();
        for (k, raw) in text.lines().enumerate() {
            let err = |message: String| ScriptError { line: k + 1, message };
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            if let Some(header) = line.strip_prefix('@') {
                let mut words = header.split_whitespace();
                match words.next() {
                    Some("o") => words.for_each(|w| {
                        sig.declare(w, Sort::Object);
                    }),
                    Some("p") => words.for_each(|w| {
                        sig.declare(w, Sort::Property);
                    }),
                    Some("ug") => {
                        ug = match words.next() {
                            Some("global") => UgPolicy::Global,
                            Some("local") => UgPolicy::Local,
                            other => return Err(err(format!("unknown UG policy {other:?}"))),
                        }
                    }
                    other => return Err(err(format!("unknown header {other:?}"))),
                }
                continue;
            }
            let (num, rest) = line.split_once('.').ok_or_else(|| err("expected `<n>. <formula> ; <justification>`".into()))?;
            let number: usize = num.trim().parse().map_err(|_| err(format!("bad line number `{num}`")))?;
            let (formula_text, just_text) =
                rest.split_once(';').ok_or_else(|| err("missing `;` before the justification".into()))?;
            let formula = parse(formula_text.trim(), &sig, None).map_err(|e| err(e.to_string()))?;
            sig.absorb(&formula);
            let justification = parse_justification(just_text, &sig).map_err(err)?;
            if let Some(prev) = lines.last().map(|l: &ProofLine| l.number) {
                if number <= prev {
                    return Err(err(format!("line number {number} does not increase")));
                }
            }
            lines.push(ProofLine { number, formula, justification });
        }
        Ok(ProofScript { signature: sig, ug, lines })
    }

    pub fn line(&self, number: usize) -> Option<(usize, &ProofLine)> {
        self.lines.iter().enumerate().find(|(_, l)| l.number == number)
    }
}

impl fmt::Display for ProofScript {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for sort in [Sort::Object, Sort::Property] {
            let names: Vec<&str> = self.signature.iter().filter(|(_, s)| *s == sort).map(|(n, _)| n).collect();
            if !names.is_empty() {
                writeln!(f, "@{} {}", sort.tag(), names.join(" "))?;
            }
        }
        if self.ug == UgPolicy::Global {
            writeln!(f, "@ug global")?;
        }
        for line in &self.lines {
            writeln!(f, "{}. {} ; {}", line.number, line.formula, line.justification)?;
        }
        Ok(())
    }
}
