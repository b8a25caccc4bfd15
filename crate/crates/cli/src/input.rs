//! Loading calculus, group and cocycle specifications from JSON.

use std::path::Path;

use qgc_core::calculus::InvariantCalculus;
use qgc_core::exactla::{int, parse_scalar, Mat, Scalar};
use qgc_core::groupbackend::{klein_bicharacter, AdCalculusSpec, CocycleData, FiniteGroup, GroupError};
use serde::Deserialize;
use serde_json::Value;

/// Failure while turning input files into core objects.
#[derive(Debug)]
pub enum InputError {
    /// Unreadable file, malformed JSON or a malformed entry.
    Parse(String),
    /// Well-formed input that violates a mathematical requirement.
    Invalid(String),
}

impl std::fmt::Display for InputError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            InputError::Parse(m) => write!(f, "parse error: {m}"),
            InputError::Invalid(m) => write!(f, "invalid input: {m}"),
        }
    }
}

impl From<GroupError> for InputError {
    fn from(e: GroupError) -> Self {
        match e {
            GroupError::UnknownPreset(_) => InputError::Parse(e.to_string()),
            other => InputError::Invalid(other.to_string()),
        }
    }
}

fn read_json(path: &Path) -> Result<Value, InputError> {
    let text =
        std::fs::read_to_string(path).map_err(|e| InputError::Parse(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| InputError::Parse(format!("{}: {e}", path.display())))
}

fn scalar(v: &Value) -> Result<Scalar, InputError> {
    match v {
        Value::String(s) => parse_scalar(s).map_err(|e| InputError::Parse(e.to_string())),
        Value::Number(n) => n
            .as_i64()
            .map(int)
            .ok_or_else(|| InputError::Parse(format!("{n} is not an integer; use a \"p/q\" string"))),
        other => Err(InputError::Parse(format!("expected a scalar, got {other}"))),
    }
}

/// A matrix as an array of rows of `"p/q"` strings or integers.
pub fn matrix(v: &Value, what: &str) -> Result<Mat, InputError> {
    let rows = v.as_array().ok_or_else(|| InputError::Parse(format!("{what}: expected an array of rows")))?;
    let parsed = rows
        .iter()
        .map(|r| {
            r.as_array()
                .ok_or_else(|| InputError::Parse(format!("{what}: expected an array of rows")))?
                .iter()
                .map(scalar)
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()?;
    Mat::from_rows(parsed).map_err(|e| InputError::Parse(format!("{what}: {e}")))
}

fn optional_matrix(obj: &Value, key: &str) -> Result<Option<Mat>, InputError> {
    obj.get(key).filter(|v| !v.is_null()).map(|v| matrix(v, key)).transpose()
}

/// `{"labels": [...], "sigma": [[...]], "metric": [[...]], "mc": [[...]]}`.
pub fn load_raw(path: &Path) -> Result<InvariantCalculus, InputError> {
    let v = read_json(path)?;
    let sigma = matrix(v.get("sigma").ok_or_else(|| InputError::Parse("missing \"sigma\"".into()))?, "sigma")?;
    let labels = match v.get("labels") {
        Some(l) => serde_json::from_value::<Vec<String>>(l.clone()).map_err(|e| InputError::Parse(format!("labels: {e}")))?,
        None => {
            let n = (sigma.rows() as f64).sqrt().round() as usize;
            (0..n).map(|i| format!("w{i}")).collect()
        }
    };
    InvariantCalculus::new(labels, sigma, optional_matrix(&v, "metric")?, optional_matrix(&v, "mc")?)
        .map_err(|e| InputError::Invalid(e.to_string()))
}

#[derive(Debug, Deserialize)]
struct TableSpec {
    name: Option<String>,
    elements: Option<Vec<String>>,
    table: Vec<Vec<usize>>,
}

/// A group spec file: `{"group": "S3" | {"table": ...}, "subset": [...], "metric": [[...]]}`.
#[derive(Debug)]
pub struct GroupJob {
    pub spec: AdCalculusSpec,
    pub metric: Option<Mat>,
}

pub fn group_from_value(v: &Value) -> Result<FiniteGroup, InputError> {
    match v {
        Value::String(name) => Ok(FiniteGroup::preset(name)?),
        Value::Object(_) => {
            let t: TableSpec = serde_json::from_value(v.clone()).map_err(|e| InputError::Parse(format!("group: {e}")))?;
            let elements = t.elements.unwrap_or_else(|| (0..t.table.len()).map(|i| i.to_string()).collect());
            Ok(FiniteGroup::from_table(t.name.as_deref().unwrap_or("custom"), elements, t.table)?)
        }
        other => Err(InputError::Parse(format!("group: expected a preset name or a table, got {other}"))),
    }
}

pub fn parse_subset(text: &str) -> Result<Vec<usize>, InputError> {
    text.split(',')
        .map(|s| s.trim().parse::<usize>().map_err(|e| InputError::Parse(format!("subset entry {s:?}: {e}"))))
        .collect()
}

/// Builds the group job from a spec file and command-line overrides.
pub fn load_group(
    spec_path: Option<&Path>,
    group: Option<&str>,
    subset: Option<&str>,
    max_order: usize,
) -> Result<GroupJob, InputError> {
    let file = spec_path.map(read_json).transpose()?.unwrap_or(Value::Null);
    let group = match (group, file.get("group")) {
        (Some(name), _) => FiniteGroup::preset(name)?,
        (None, Some(v)) => group_from_value(v)?,
        (None, None) => return Err(InputError::Parse("no group given; use --group or a spec file".into())),
    };
    if group.order() > max_order {
        return Err(InputError::Invalid(format!("group order {} exceeds the cap {max_order}", group.order())));
    }
    let subset = match (subset, file.get("subset")) {
        (Some(s), _) => parse_subset(s)?,
        (None, Some(v)) => serde_json::from_value(v.clone()).map_err(|e| InputError::Parse(format!("subset: {e}")))?,
        (None, None) => (0..group.order()).filter(|&x| x != group.identity()).collect(),
    };
    let spec = AdCalculusSpec::new(group, subset)?;
    Ok(GroupJob { spec, metric: optional_matrix(&file, "metric")? })
}

/// `{"basis": "character" | "delta", "table": [[...]], "subgroup": {"group": ..., "embedding": [...]}}`.
///
/// The table may also be the string `"klein-bicharacter"`. With `subgroup`,
/// the table lives on that group and is pushed forward along `embedding`.
pub fn load_cocycle(path: &Path, group: &FiniteGroup) -> Result<CocycleData, InputError> {
    let v = read_json(path)?;
    let (base, embedding) = match v.get("subgroup") {
        Some(sub) => {
            let g = group_from_value(sub.get("group").ok_or_else(|| InputError::Parse("subgroup.group missing".into()))?)?;
            let emb: Vec<usize> = serde_json::from_value(sub.get("embedding").cloned().unwrap_or(Value::Null))
                .map_err(|e| InputError::Parse(format!("subgroup.embedding: {e}")))?;
            (g, Some(emb))
        }
        None => (group.clone(), None),
    };
    let table = match v.get("table") {
        Some(Value::String(s)) if s == "klein-bicharacter" => klein_bicharacter(),
        Some(t) => matrix(t, "table")?,
        None => return Err(InputError::Parse("cocycle: missing \"table\"".into())),
    };
    let co = match v.get("basis").and_then(Value::as_str).unwrap_or("character") {
        "character" => CocycleData::from_character_table(&base, &table)?,
        "delta" => CocycleData::from_delta_table(&base, table)?,
        other => return Err(InputError::Parse(format!("cocycle basis {other:?} is not character or delta"))),
    };
    match embedding {
        Some(emb) => Ok(co.pushforward(&base, group, &emb)?),
        None => Ok(co),
    }
}
