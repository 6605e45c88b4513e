//! Context and model files.
//!
//! JSON is the canonical format:
//!
//! ```json
//! {
//!   "objects": ["g1", "g2"],
//!   "attributes": ["m1", "m2"],
//!   "incidence": [["1", "3/5"], ["0.3", "0"]],
//!   "valuation": { "objects": { "p": ["g1"] }, "properties": { "q": ["m2"] } }
//! }
//! ```
//!
//! A multi-relational context replaces `incidence` by `relations`, a map from
//! relation name to matrix. `valuation` is only read for models. Plain
//! contexts may also be CSV: a header row whose first cell is ignored and
//! then attribute names, followed by one row per object.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use possfca::fuzzy::{ContextError, CrispSet, Degree, DegreeError, FuzzyContext, Sort};
use possfca::logic::Signature;
use possfca::model::{Model, ModelError, Valuation};
use possfca::multirel::{MultiContext, MultiError, MultiModel};

#[derive(Debug, Error)]
pub enum IoError {
    #[error("{path}: {source}")]
    Read { path: String, source: std::io::Error },
    #[error("row {row}, column {col}: {source}")]
    Cell { row: usize, col: usize, source: DegreeError },
    #[error("row {row} has {got} cells, expected {expected}")]
    Ragged { row: usize, expected: usize, got: usize },
    #[error("the file has neither `incidence` nor `relations`")]
    NoMatrix,
    #[error("the file has both `incidence` and `relations`")]
    BothMatrices,
    #[error("expected a single-relation context, found relations")]
    NotPlain,
    #[error("cell must be a string or a number")]
    CellType,
    #[error("valuation of `{symbol}` names unknown element `{element}`")]
    UnknownElement { symbol: String, element: String },
    #[error("the file has no valuation")]
    NoValuation,
    #[error(transparent)]
    Context(#[from] ContextError),
    #[error(transparent)]
    Multi(#[from] MultiError),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error("JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("CSV: {0}")]
    Csv(#[from] csv::Error),
}

type Matrix = Vec<Vec<serde_json::Value>>;

#[derive(Debug, Serialize, Deserialize)]
struct ContextFile {
    objects: Vec<String>,
    attributes: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    incidence: Option<Matrix>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    relations: Option<BTreeMap<String, Matrix>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    valuation: Option<ValuationFile>,
}

#[derive(Debug, Default, Serialize, Deserialize)]
struct ValuationFile {
    #[serde(default)]
    objects: BTreeMap<String, Vec<String>>,
    #[serde(default)]
    properties: BTreeMap<String, Vec<String>>,
}

/// A context file's content.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LoadedContext {
    Plain(FuzzyContext),
    Multi(MultiContext),
}

impl LoadedContext {
    pub fn into_plain(self) -> Result<FuzzyContext, IoError> {
        match self {
            LoadedContext::Plain(ctx) => Ok(ctx),
            LoadedContext::Multi(_) => Err(IoError::NotPlain),
        }
    }
}

/// A model file's content.
#[derive(Debug, Clone)]
pub enum LoadedModel {
    Plain(Model),
    Multi(MultiModel),
}

impl LoadedModel {
    pub fn valuation(&self) -> &Valuation {
        match self {
            LoadedModel::Plain(m) => m.valuation(),
            LoadedModel::Multi(m) => m.valuation(),
        }
    }

    pub fn names(&self, sort: Sort) -> &[String] {
        match self {
            LoadedModel::Plain(m) => m.context().names(sort),
            LoadedModel::Multi(m) => match sort {
                Sort::Object => m.context().objects(),
                Sort::Property => m.context().attributes(),
            },
        }
    }

    /// The valuation's symbols with their sorts.
    pub fn signature(&self) -> Signature {
        let mut sig = Signature::new();
        for (name, set) in self.valuation().iter() {
            sig.declare(name, set.sort());
        }
        sig
    }
}

fn read(path: &Path) -> Result<String, IoError> {
    fs::read_to_string(path).map_err(|source| IoError::Read { path: path.display().to_string(), source })
}

fn is_csv(path: &Path) -> bool {
    path.extension().is_some_and(|e| e.eq_ignore_ascii_case("csv"))
}

pub fn load_context(path: &Path) -> Result<LoadedContext, IoError> {
    let text = read(path)?;
    if is_csv(path) {
        parse_csv(&text).map(LoadedContext::Plain)
    } else {
        parse_context_json(&text)
    }
}

pub fn load_model(path: &Path) -> Result<LoadedModel, IoError> {
    parse_model_json(&read(path)?)
}

fn cell(value: &serde_json::Value, row: usize, col: usize) -> Result<Degree, IoError> {
    let text = match value {
        serde_json::Value::String(s) => s.clone(),
        serde_json::Value::Number(n) => n.to_string(),
        _ => return Err(IoError::CellType),
    };
    text.parse().map_err(|source| IoError::Cell { row, col, source })
}

fn matrix_cells(rows: &Matrix, width: usize, height: usize) -> Result<Vec<Degree>, IoError> {
    if rows.len() != height {
        return Err(ContextError::Shape { expected: height * width, got: rows.iter().map(Vec::len).sum() }.into());
    }
    let mut cells = Vec::with_capacity(width * height);
    for (r, row) in rows.iter().enumerate() {
        if row.len() != width {
            return Err(IoError::Ragged { row: r + 1, expected: width, got: row.len() });
        }
        for (c, v) in row.iter().enumerate() {
            cells.push(cell(v, r + 1, c + 1)?);
        }
    }
    Ok(cells)
}

fn context_from_file(file: &ContextFile) -> Result<LoadedContext, IoError> {
    let (w, h) = (file.attributes.len(), file.objects.len());
    let make = |m: &Matrix| -> Result<FuzzyContext, IoError> {
        Ok(FuzzyContext::new(file.objects.clone(), file.attributes.clone(), matrix_cells(m, w, h)?)?)
    };
    match (&file.incidence, &file.relations) {
        (Some(m), None) => Ok(LoadedContext::Plain(make(m)?)),
        (None, Some(rels)) => {
            let parsed = rels.iter().map(|(name, m)| Ok((name.clone(), make(m)?))).collect::<Result<Vec<_>, IoError>>()?;
            Ok(LoadedContext::Multi(MultiContext::new(parsed)?))
        }
        (None, None) => Err(IoError::NoMatrix),
        (Some(_), Some(_)) => Err(IoError::BothMatrices),
    }
}

pub fn parse_context_json(text: &str) -> Result<LoadedContext, IoError> {
    context_from_file(&serde_json::from_str(text)?)
}

pub fn parse_model_json(text: &str) -> Result<LoadedModel, IoError> {
    let file: ContextFile = serde_json::from_str(text)?;
    let ctx = context_from_file(&file)?;
    let vf = file.valuation.as_ref().ok_or(IoError::NoValuation)?;
    let mut val = Valuation::new();
    for (side, names, sort) in [(&vf.objects, &file.objects, Sort::Object), (&vf.properties, &file.attributes, Sort::Property)] {
        for (symbol, members) in side {
            let mut set = CrispSet::empty(sort, names.len());
            for element in members {
                let pos = names.iter().position(|n| n == element).ok_or_else(|| IoError::UnknownElement {
                    symbol: symbol.clone(),
                    element: element.clone(),
                })?;
                set.insert(pos);
            }
            val.set(symbol.clone(), set);
        }
    }
    Ok(match ctx {
        LoadedContext::Plain(c) => LoadedModel::Plain(Model::new(c, val)?),
        LoadedContext::Multi(c) => LoadedModel::Multi(MultiModel::new(c, val)?),
    })
}

pub fn parse_csv(text: &str) -> Result<FuzzyContext, IoError> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let header = reader.headers()?.clone();
    let attributes: Vec<String> = header.iter().skip(1).map(str::to_string).collect();
    let mut objects = Vec::new();
    let mut cells = Vec::new();
    for (r, record) in reader.records().enumerate() {
        let record = record?;
        if record.len() != attributes.len() + 1 {
            return Err(IoError::Ragged { row: r + 1, expected: attributes.len(), got: record.len().saturating_sub(1) });
        }
        objects.push(record[0].to_string());
        for (c, text) in record.iter().skip(1).enumerate() {
            cells.push(text.parse().map_err(|source| IoError::Cell { row: r + 1, col: c + 1, source })?);
        }
    }
    Ok(FuzzyContext::new(objects, attributes, cells)?)
}

fn matrix(ctx: &FuzzyContext) -> Matrix {
    (0..ctx.n_objects())
        .map(|g| (0..ctx.n_attributes()).map(|m| ctx.incidence(g, m).to_string().into()).collect())
        .collect()
}

fn names_of(set: &CrispSet, names: &[String]) -> Vec<String> {
    set.iter().map(|i| names[i].clone()).collect()
}

fn valuation_file(val: &Valuation, objects: &[String], attributes: &[String]) -> ValuationFile {
    let side = |sort: Sort, names: &[String]| {
        val.side(sort).iter().map(|(k, set)| (k.clone(), names_of(set, names))).collect()
    };
    ValuationFile { objects: side(Sort::Object, objects), properties: side(Sort::Property, attributes) }
}

fn to_json(file: &ContextFile) -> String {
    let mut out = serde_json::to_string_pretty(file).expect("plain data serializes");
    out.push('\n');
    out
}

pub fn context_json(ctx: &FuzzyContext) -> String {
    to_json(&ContextFile {
        objects: ctx.objects().to_vec(),
        attributes: ctx.attributes().to_vec(),
        incidence: Some(matrix(ctx)),
        relations: None,
        valuation: None,
    })
}

pub fn multi_context_json(ctx: &MultiContext) -> String {
    to_json(&ContextFile {
        objects: ctx.objects().to_vec(),
        attributes: ctx.attributes().to_vec(),
        incidence: None,
        relations: Some(ctx.relations().map(|(name, rel)| (name.to_string(), matrix(rel))).collect()),
        valuation: None,
    })
}

pub fn model_json(model: &Model) -> String {
    let ctx = model.context();
    to_json(&ContextFile {
        objects: ctx.objects().to_vec(),
        attributes: ctx.attributes().to_vec(),
        incidence: Some(matrix(ctx)),
        relations: None,
        valuation: Some(valuation_file(model.valuation(), ctx.objects(), ctx.attributes())),
    })
}

/// The model as a JSON value, for embedding in reports.
pub fn model_value(model: &Model) -> serde_json::Value {
    serde_json::from_str(&model_json(model)).expect("round trip of our own output")
}

pub fn context_csv(ctx: &FuzzyContext) -> String {
    let mut writer = csv::Writer::from_writer(Vec::new());
    let header = std::iter::once("object").chain(ctx.attributes().iter().map(String::as_str));
    writer.write_record(header).expect("in-memory write");
    for g in 0..ctx.n_objects() {
        let row = std::iter::once(ctx.objects()[g].clone())
            .chain((0..ctx.n_attributes()).map(|m| ctx.incidence(g, m).to_string()));
        writer.write_record(row).expect("in-memory write");
    }
    String::from_utf8(writer.into_inner().expect("in-memory flush")).expect("utf-8 input")
}
