//! JSON formats for posets, modules and custom compression systems.
//!
//! ```text
//! poset:   {"elements": [...], "relations": [[a, b], ...]}  or  {"grid": [5, 2]}
//! module:  {"poset": <poset>, "field": {"rational": true} | {"prime": p},
//!           "dims": {"x": 2, ...}, "maps": {"x->y": [[1, 0], ["1/2", 3]], ...}}
//! system:  {"name": "...", "intervals": [{"members": [...],
//!           "poset": <poset>, "map": {"u": "x", ...}}, ...]}
//! ```
//!
//! Labels may be JSON strings or numbers. Matrix entries may be integers or
//! `"num/den"` strings. Arrows between zero-dimensional spaces may be left out.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::compression::CustomSystem;
use crate::error::{Error, Result};
use crate::lattice::Interval;
use crate::linalg::{ExactField, Field, Matrix, PrimeField, Rationals};
use crate::module::PersistenceModule;
use crate::poset::Poset;

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PosetSpec {
    Grid {
        grid: Vec<usize>,
    },
    Explicit {
        elements: Vec<Value>,
        #[serde(default)]
        relations: Vec<(Value, Value)>,
    },
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct FieldSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rational: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub prime: Option<u64>,
}

impl FieldSpec {
    pub fn to_field(&self) -> Result<ExactField> {
        match (self.rational, self.prime) {
            (_, Some(p)) => ExactField::parse(&format!("fp:{p}")),
            _ => Ok(ExactField::Rational),
        }
    }

    pub fn from_field(f: ExactField) -> Self {
        match f {
            ExactField::Rational => FieldSpec {
                rational: Some(true),
                prime: None,
            },
            ExactField::Prime(p) => FieldSpec {
                rational: None,
                prime: Some(p),
            },
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ModuleFile {
    pub poset: PosetSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub field: Option<FieldSpec>,
    #[serde(default)]
    pub dims: BTreeMap<String, usize>,
    #[serde(default)]
    pub maps: BTreeMap<String, Vec<Vec<Value>>>,
}

fn label(v: &Value) -> Result<String> {
    match v {
        Value::String(s) => Ok(s.clone()),
        Value::Number(n) => Ok(n.to_string()),
        other => Err(Error::Input(format!(
            "element labels must be strings or numbers, got {other}"
        ))),
    }
}

pub fn build_poset(spec: &PosetSpec) -> Result<Poset> {
    match spec {
        PosetSpec::Grid { grid } => Poset::grid(grid),
        PosetSpec::Explicit {
            elements,
            relations,
        } => {
            let elements = elements.iter().map(label).collect::<Result<Vec<_>>>()?;
            let relations = relations
                .iter()
                .map(|(a, b)| Ok((label(a)?, label(b)?)))
                .collect::<Result<Vec<_>>>()?;
            Poset::from_relations(&elements, &relations)
        }
    }
}

pub fn poset_spec(p: &Poset) -> PosetSpec {
    if let Some(sizes) = p.grid_sizes() {
        return PosetSpec::Grid {
            grid: sizes.to_vec(),
        };
    }
    PosetSpec::Explicit {
        elements: p
            .labels()
            .iter()
            .map(|l| Value::String(l.clone()))
            .collect(),
        relations: p
            .hasse_arrows()
            .iter()
            .map(|&(x, y)| {
                (
                    Value::String(p.label(x).into()),
                    Value::String(p.label(y).into()),
                )
            })
            .collect(),
    }
}

/// Reads a poset from either a poset document or a module document.
pub fn parse_poset(text: &str) -> Result<Poset> {
    let v: Value = serde_json::from_str(text)?;
    let spec: PosetSpec = match v.get("poset") {
        Some(p) => serde_json::from_value(p.clone())?,
        None => serde_json::from_value(v)?,
    };
    build_poset(&spec)
}

fn entry<F: Field>(field: &F, v: &Value) -> Result<F::Elem> {
    match v {
        Value::Number(n) => field.parse(&n.to_string()),
        Value::String(s) => field.parse(s),
        other => Err(Error::ParseElement(other.to_string())),
    }
}

fn split_arrow(key: &str) -> Result<(&str, &str)> {
    key.split_once("->")
        .map(|(a, b)| (a.trim(), b.trim()))
        .ok_or_else(|| Error::Input(format!("map key `{key}` must look like `x->y`")))
}

pub fn module_from_file<F: Field>(file: &ModuleFile, field: F) -> Result<PersistenceModule<F>> {
    let poset = Arc::new(build_poset(&file.poset)?);
    let mut dims = vec![0; poset.len()];
    for (l, &d) in &file.dims {
        dims[poset.index_of(l)?] = d;
    }
    let mut arrows = BTreeMap::new();
    for (key, rows) in &file.maps {
        let (a, b) = split_arrow(key)?;
        let (x, y) = (poset.index_of(a)?, poset.index_of(b)?);
        let cols = rows.first().map_or(dims[x], Vec::len);
        let data = rows
            .iter()
            .map(|r| {
                if r.len() != cols {
                    return Err(Error::ShapeMismatch(format!("ragged rows in map {key}")));
                }
                r.iter()
                    .map(|v| entry(&field, v))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        arrows.insert((x, y), Matrix::from_rows(cols, data));
    }
    PersistenceModule::build(poset, field, dims, arrows)
}

/// A module over whichever field was selected at run time.
#[derive(Clone, Debug)]
pub enum AnyModule {
    Rational(PersistenceModule<Rationals>),
    Prime(PersistenceModule<PrimeField>),
}

impl AnyModule {
    pub fn poset(&self) -> &Arc<Poset> {
        match self {
            AnyModule::Rational(m) => m.poset(),
            AnyModule::Prime(m) => m.poset(),
        }
    }

    pub fn field(&self) -> ExactField {
        match self {
            AnyModule::Rational(_) => ExactField::Rational,
            AnyModule::Prime(m) => ExactField::Prime(m.field().modulus()),
        }
    }
}

/// Parses a module document. `field` overrides the field named in the file.
pub fn parse_module(text: &str, field: Option<ExactField>) -> Result<AnyModule> {
    let file: ModuleFile = serde_json::from_str(text)?;
    let field = match field {
        Some(f) => f,
        None => file.field.clone().unwrap_or_default().to_field()?,
    };
    Ok(match field {
        ExactField::Rational => AnyModule::Rational(module_from_file(&file, Rationals)?),
        ExactField::Prime(p) => AnyModule::Prime(module_from_file(&file, PrimeField::new(p)?)?),
    })
}

fn entry_json<F: Field>(field: &F, e: &F::Elem) -> Value {
    let s = field.format(e);
    match s.parse::<i64>() {
        Ok(v) => json!(v),
        Err(_) => Value::String(s),
    }
}

pub fn module_to_file<F: Field>(m: &PersistenceModule<F>) -> ModuleFile {
    let p = m.poset();
    let f = m.field();
    let dims = (0..p.len())
        .filter(|&x| m.dim(x) > 0)
        .map(|x| (p.label(x).to_string(), m.dim(x)))
        .collect();
    let maps = m
        .arrow_maps()
        .iter()
        .filter(|(_, mat)| !mat.is_empty())
        .map(|(&(x, y), mat)| {
            let rows = (0..mat.rows())
                .map(|r| mat.row(r).iter().map(|e| entry_json(f, e)).collect())
                .collect();
            (format!("{}->{}", p.label(x), p.label(y)), rows)
        })
        .collect();
    ModuleFile {
        poset: poset_spec(p),
        field: Some(FieldSpec::from_field(f.descriptor())),
        dims,
        maps,
    }
}

pub fn module_to_json<F: Field>(m: &PersistenceModule<F>) -> Value {
    serde_json::to_value(module_to_file(m)).expect("module files serialize")
}

#[derive(Clone, Debug, Deserialize)]
struct SystemFile {
    #[serde(default)]
    name: Option<String>,
    intervals: Vec<SystemEntry>,
}

#[derive(Clone, Debug, Deserialize)]
struct SystemEntry {
    members: Vec<Value>,
    poset: PosetSpec,
    map: BTreeMap<String, Value>,
}

/// Reads a custom compression system over `ambient`.
pub fn parse_custom_system(
    text: &str,
    default_name: &str,
    ambient: Arc<Poset>,
) -> Result<CustomSystem> {
    let file: SystemFile = serde_json::from_str(text)?;
    let mut entries = Vec::new();
    for e in &file.intervals {
        let members = e.members.iter().map(label).collect::<Result<Vec<_>>>()?;
        let set = ambient.set_of_labels(&members)?;
        Interval::new(&ambient, set.clone())?;
        let q = build_poset(&e.poset)?;
        let mut v = vec![usize::MAX; q.len()];
        for (u, x) in &e.map {
            v[q.index_of(u)?] = ambient.index_of(&label(x)?)?;
        }
        if let Some(u) = v.iter().position(|&x| x == usize::MAX) {
            return Err(Error::Input(format!(
                "custom system entry {} leaves `{}` unmapped",
                ambient.format_set(&set),
                q.label(u)
            )));
        }
        entries.push((set, Arc::new(q), v));
    }
    CustomSystem::new(
        file.name.unwrap_or_else(|| default_name.to_string()),
        ambient,
        entries,
    )
}

pub fn interval_json(p: &Poset, iv: &Interval) -> Value {
    let names = |xs: &[usize]| {
        xs.iter()
            .map(|&x| p.label(x).to_string())
            .collect::<Vec<_>>()
    };
    json!({
        "members": names(iv.members()),
        "sources": names(iv.sources()),
        "sinks": names(iv.sinks()),
    })
}

/// Splits `a,b,(1,2)` at top-level commas.
pub fn split_members(s: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    for ch in s.chars() {
        match ch {
            '(' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
            ',' if depth == 0 => {
                out.push(std::mem::take(&mut cur).trim().to_string());
                continue;
            }
            _ => {}
        }
        cur.push(ch);
    }
    if !cur.trim().is_empty() {
        out.push(cur.trim().to_string());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn member_lists() {
        assert_eq!(split_members("1,2, 3"), vec!["1", "2", "3"]);
        assert_eq!(split_members("(1,1),(2,1)"), vec!["(1,1)", "(2,1)"]);
        assert!(split_members("").is_empty());
    }

    #[test]
    fn modules_round_trip() {
        for name in fixtures::NAMES {
            let m = fixtures::by_name(name, Rationals).unwrap();
            let text = serde_json::to_string(&module_to_json(&m)).unwrap();
            match parse_module(&text, None).unwrap() {
                AnyModule::Rational(back) => assert_eq!(back, m, "{name}"),
                AnyModule::Prime(_) => panic!("field changed"),
            }
        }
    }

    #[test]
    fn numeric_labels_and_fractions() {
        let text = r#"{
            "poset": {"elements": [1, 2], "relations": [[1, 2]]},
            "dims": {"1": 1, "2": 1},
            "maps": {"1->2": [["1/2"]]}
        }"#;
        let AnyModule::Rational(m) = parse_module(text, None).unwrap() else {
            panic!("expected rationals");
        };
        assert_eq!(Rationals.format(m.arrow_maps()[&(0, 1)].get(0, 0)), "1/2");
        let AnyModule::Prime(m) = parse_module(text, Some(ExactField::Prime(3))).unwrap() else {
            panic!("expected a prime field");
        };
        assert_eq!(*m.arrow_maps()[&(0, 1)].get(0, 0), 2);
    }

    #[test]
    fn syntax_errors_carry_positions() {
        let err = parse_module("{\n \"poset\": ", None).unwrap_err();
        assert!(err.to_string().contains("line 2"), "{err}");
    }
}
