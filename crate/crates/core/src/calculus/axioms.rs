//! Axiom schemas of the weighted two-sorted modal calculus and their
//! instantiation.
//!
//! Schemas are written without sort tags; the tags of an instance follow from
//! the sorts of the bound formulas. When an index `i` is bound every modality
//! of the instance carries it (the indexed reading used by 2WBML).

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::fuzzy::Degree;
use crate::logic::{expand_derived, DerivedKind, Formula, FormulaError, ModalKind, WeightMark};
use crate::multirel::IndexTerm;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum AxiomName {
    KNec,
    KNecStrict,
    BNec,
    BNecStrict,
    KSuff,
    KSuffStrict,
    BSuff,
    BSuffStrict,
    Con1,
    Con2,
    Bk1,
    Bk2,
    Bk3,
    Bk4,
    Bk5a,
    Bk5b,
    Bk6a,
    Bk6b,
    DefU,
    DefI,
    DefC,
    Def0,
}

impl AxiomName {
    pub const ALL: [AxiomName; 22] = [
        AxiomName::KNec,
        AxiomName::KNecStrict,
        AxiomName::BNec,
        AxiomName::BNecStrict,
        AxiomName::KSuff,
        AxiomName::KSuffStrict,
        AxiomName::BSuff,
        AxiomName::BSuffStrict,
        AxiomName::Con1,
        AxiomName::Con2,
        AxiomName::Bk1,
        AxiomName::Bk2,
        AxiomName::Bk3,
        AxiomName::Bk4,
        AxiomName::Bk5a,
        AxiomName::Bk5b,
        AxiomName::Bk6a,
        AxiomName::Bk6b,
        AxiomName::DefU,
        AxiomName::DefI,
        AxiomName::DefC,
        AxiomName::Def0,
    ];

    /// The eighteen single-relation schemas.
    pub fn plain() -> impl Iterator<Item = AxiomName> {
        AxiomName::ALL.into_iter().filter(|a| !a.is_def())
    }

    pub fn is_def(self) -> bool {
        matches!(self, AxiomName::DefU | AxiomName::DefI | AxiomName::DefC | AxiomName::Def0)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            AxiomName::KNec => "K_nec",
            AxiomName::KNecStrict => "K_nec+",
            AxiomName::BNec => "B_nec",
            AxiomName::BNecStrict => "B_nec+",
            AxiomName::KSuff => "K_suff",
            AxiomName::KSuffStrict => "K_suff+",
            AxiomName::BSuff => "B_suff",
            AxiomName::BSuffStrict => "B_suff+",
            AxiomName::Con1 => "CON1",
            AxiomName::Con2 => "CON2",
            AxiomName::Bk1 => "BK1",
            AxiomName::Bk2 => "BK2",
            AxiomName::Bk3 => "BK3",
            AxiomName::Bk4 => "BK4",
            AxiomName::Bk5a => "BK5a",
            AxiomName::Bk5b => "BK5b",
            AxiomName::Bk6a => "BK6a",
            AxiomName::Bk6b => "BK6b",
            AxiomName::DefU => "DefU",
            AxiomName::DefI => "DefI",
            AxiomName::DefC => "DefC",
            AxiomName::Def0 => "Def0",
        }
    }

    /// Modal kinds occurring in instances.
    pub fn kinds(self) -> &'static [ModalKind] {
        use AxiomName::*;
        match self {
            KNec | KNecStrict | BNec | BNecStrict | Bk1 | Bk3 | Bk5a | Bk5b | DefU | Def0 => &[ModalKind::Necessity],
            KSuff | KSuffStrict | BSuff | BSuffStrict | Bk2 | Bk4 | Bk6a | Bk6b | DefI => &[ModalKind::Sufficiency],
            Con1 | Con2 | DefC => &[ModalKind::Necessity, ModalKind::Sufficiency],
        }
    }

    fn needs(self) -> Needs {
        use AxiomName::*;
        let base = Needs { c: false, c_strict_ok: false, d: false, psi: false, i: false, j: false };
        match self {
            KNec | KNecStrict | KSuff | KSuffStrict => Needs { c: true, psi: true, ..base },
            BNec | BNecStrict | BSuff | BSuffStrict | Con1 | Con2 | Bk3 | Bk4 => Needs { c: true, ..base },
            Bk1 | Bk2 => Needs { c: true, d: true, ..base },
            Bk5a | Bk5b | Bk6a | Bk6b => base,
            DefU | DefI => Needs { c: true, c_strict_ok: true, i: true, j: true, ..base },
            DefC => Needs { c: true, c_strict_ok: true, i: true, ..base },
            Def0 => base,
        }
    }
}

struct Needs {
    c: bool,
    c_strict_ok: bool,
    d: bool,
    psi: bool,
    i: bool,
    j: bool,
}

impl fmt::Display for AxiomName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for AxiomName {
    type Err = AxiomError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        AxiomName::ALL
            .into_iter()
            .find(|a| a.as_str().eq_ignore_ascii_case(s))
            .ok_or_else(|| AxiomError::Unknown(s.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AxiomError {
    #[error("unknown axiom `{0}`")]
    Unknown(String),
    #[error("{axiom} needs binding `{binding}`")]
    Missing { axiom: AxiomName, binding: &'static str },
    #[error("{axiom} takes no binding `{binding}`")]
    Unexpected { axiom: AxiomName, binding: &'static str },
    #[error("side condition violated: {0}")]
    SideCondition(String),
    #[error(transparent)]
    Sort(#[from] FormulaError),
}

/// Values for a schema's metavariables. `c` is a weight mark because the
/// index-definition axioms range over both `c` and `c+`; elsewhere it must be
/// non-strict.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Bindings {
    pub c: Option<WeightMark>,
    pub d: Option<Degree>,
    pub phi: Option<Formula>,
    pub psi: Option<Formula>,
    pub i: Option<IndexTerm>,
    pub j: Option<IndexTerm>,
}

impl Bindings {
    pub fn phi(phi: Formula) -> Self {
        Bindings { phi: Some(phi), ..Bindings::default() }
    }

    pub fn c(mut self, c: Degree) -> Self {
        self.c = Some(WeightMark::weak(c));
        self
    }

    pub fn mark(mut self, c: WeightMark) -> Self {
        self.c = Some(c);
        self
    }

    pub fn d(mut self, d: Degree) -> Self {
        self.d = Some(d);
        self
    }

    pub fn psi(mut self, psi: Formula) -> Self {
        self.psi = Some(psi);
        self
    }

    pub fn i(mut self, i: IndexTerm) -> Self {
        self.i = Some(i);
        self
    }

    pub fn j(mut self, j: IndexTerm) -> Self {
        self.j = Some(j);
        self
    }
}

impl fmt::Display for Bindings {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if let Some(c) = self.c {
            parts.push(format!("c={c}"));
        }
        if let Some(d) = self.d {
            parts.push(format!("d={d}"));
        }
        if let Some(i) = &self.i {
            parts.push(format!("i={i}"));
        }
        if let Some(j) = &self.j {
            parts.push(format!("j={j}"));
        }
        if let Some(phi) = &self.phi {
            parts.push(format!("phi={phi}"));
        }
        if let Some(psi) = &self.psi {
            parts.push(format!("psi={psi}"));
        }
        f.write_str(&parts.join(" "))
    }
}

fn implies(a: Formula, b: Formula) -> Result<Formula, AxiomError> {
    Ok(Formula::implies(a, b)?)
}

/// Builds the instance of `axiom` under `b`, checking that exactly the
/// schema's bindings are present and that side conditions hold.
pub fn instantiate_axiom(axiom: AxiomName, b: &Bindings) -> Result<Formula, AxiomError> {
    use AxiomName::*;
    let needs = axiom.needs();
    let check = |present: bool, needed: bool, binding: &'static str| -> Result<(), AxiomError> {
        match (present, needed) {
            (false, true) => Err(AxiomError::Missing { axiom, binding }),
            (true, false) => Err(AxiomError::Unexpected { axiom, binding }),
            _ => Ok(()),
        }
    };
    check(b.c.is_some(), needs.c, "c")?;
    check(b.d.is_some(), needs.d, "d")?;
    check(b.psi.is_some(), needs.psi, "psi")?;
    check(b.phi.is_some(), true, "phi")?;
    if axiom.is_def() {
        check(b.i.is_some(), needs.i, "i")?;
        check(b.j.is_some(), needs.j, "j")?;
    } else {
        check(b.j.is_some(), false, "j")?;
    }
    if let Some(c) = b.c {
        if c.strict && !needs.c_strict_ok {
            return Err(AxiomError::SideCondition(format!("{axiom} takes a plain weight, not {c}")));
        }
    }
    let c = b.c.map(|m| m.degree).unwrap_or(Degree::ZERO);
    // At c = 1 the strict B schemas would demand a measure above 1.
    if matches!(axiom, BNecStrict | BSuffStrict) && c.is_one() {
        return Err(AxiomError::SideCondition(format!("{axiom} needs c < 1")));
    }
    let mark = b.c.unwrap_or(WeightMark::weak(c));
    let phi = b.phi.clone().expect("checked above");
    let psi = b.psi.clone();
    // Index for plain schemas (all modalities share it).
    let ix = if axiom.is_def() { None } else { b.i.clone() };
    let nec = |m: WeightMark, f: Formula| Formula::modal(ModalKind::Necessity, m, ix.clone(), f);
    let suff = |m: WeightMark, f: Formula| Formula::modal(ModalKind::Sufficiency, m, ix.clone(), f);
    let not = Formula::not;
    let weak = WeightMark::weak;
    let strict = WeightMark::strict;

    let f = match axiom {
        KNec | KNecStrict => {
            let m = if axiom == KNecStrict { strict(c) } else { weak(c) };
            let psi = psi.expect("checked above");
            implies(
                nec(m, Formula::implies(phi.clone(), psi.clone())?),
                implies(nec(m, phi), nec(m, psi))?,
            )?
        }
        KSuff | KSuffStrict => {
            let m = if axiom == KSuffStrict { strict(c) } else { weak(c) };
            let psi = psi.expect("checked above");
            implies(
                suff(m, Formula::and(phi.clone(), not(psi.clone()))?),
                implies(suff(m, not(phi)), suff(m, not(psi)))?,
            )?
        }
        BNec => {
            let inner = expand_derived(DerivedKind::PosStrict, c.complement(), phi.clone(), ix.clone());
            implies(phi, nec(weak(c), inner))?
        }
        BNecStrict => {
            let inner = expand_derived(DerivedKind::Pos, c.complement(), phi.clone(), ix.clone());
            implies(phi, nec(strict(c), inner))?
        }
        BSuff | BSuffStrict => {
            let m = if axiom == BSuffStrict { strict(c) } else { weak(c) };
            implies(phi.clone(), suff(m, suff(m, phi)))?
        }
        Con1 | Con2 => {
            let exceptional = not(Formula::and(nec(weak(Degree::ONE), not(phi.clone())), suff(weak(Degree::ONE), phi.clone()))?);
            let (lower, upper) = if axiom == Con1 {
                (weak(c.complement()), strict(c))
            } else {
                (strict(c.complement()), weak(c))
            };
            implies(exceptional, implies(nec(lower, not(phi.clone())), not(suff(upper, phi)))?)?
        }
        Bk1 | Bk2 => {
            let d = b.d.expect("checked above");
            if c <= d {
                return Err(AxiomError::SideCondition(format!("{axiom} needs c > d, got c={c}, d={d}")));
            }
            let kind = if axiom == Bk1 { ModalKind::Necessity } else { ModalKind::Sufficiency };
            let op = |m: WeightMark, f: Formula| Formula::modal(kind, m, ix.clone(), f);
            implies(op(weak(c), phi.clone()), op(strict(d), phi))?
        }
        Bk3 => implies(nec(strict(c), phi.clone()), nec(weak(c), phi))?,
        Bk4 => implies(suff(strict(c), phi.clone()), suff(weak(c), phi))?,
        Bk5a => not(nec(strict(Degree::ONE), phi)),
        Bk5b => nec(weak(Degree::ZERO), phi),
        Bk6a => not(suff(strict(Degree::ONE), phi)),
        Bk6b => suff(weak(Degree::ZERO), phi),
        DefU | DefI => {
            let (i, j) = (b.i.clone().expect("checked"), b.j.clone().expect("checked"));
            let (kind, joined) = if axiom == DefU {
                (ModalKind::Necessity, IndexTerm::union(i.clone(), j.clone()))
            } else {
                (ModalKind::Sufficiency, IndexTerm::inter(i.clone(), j.clone()))
            };
            let at = |idx: IndexTerm| Formula::modal(kind, mark, Some(idx), phi.clone());
            Formula::iff(at(joined), Formula::and(at(i), at(j))?)?
        }
        DefC => {
            let i = b.i.clone().expect("checked");
            let lhs = Formula::modal(ModalKind::Necessity, mark, Some(IndexTerm::complement(i.clone())), phi.clone());
            let rhs = Formula::modal(ModalKind::Sufficiency, mark, Some(i), not(phi));
            Formula::iff(lhs, rhs)?
        }
        Def0 => {
            if b.i.is_some() {
                return Err(AxiomError::Unexpected { axiom, binding: "i" });
            }
            Formula::modal(ModalKind::Necessity, weak(Degree::ONE), Some(IndexTerm::Zero), phi)
        }
    };
    Ok(f)
}
