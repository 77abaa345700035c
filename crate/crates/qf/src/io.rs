//! File formats.
//!
//! * quandle: `{"order": n, "table": [[...]], "names": [...]}` with
//!   `table[i][j] = i * j`; `names` is optional.
//! * group: `{"order": n, "mul": [[...]], "labels": [...]}`; identity and
//!   inverses are recomputed on load.
//! * certificate: `{"quandle": path, "group": group, "images": [...]}`.
//! * quandle presentation:
//!   `{"generators": ["x", ...], "relations": [["(op x y)", "z"], ...]}`.
//! * group presentation: `{"generators": [...], "relators": [[1, -2], ...]}`
//!   with generator `g` written `g + 1` and its inverse `-(g + 1)`.
//! * union actions: `{"sigma": [[...]], "tau": [[...]]}`, one permutation
//!   image list per element of the first and of the second quandle.

use std::fs;
use std::path::Path;

use qf_core::envelope::GroupPresentation;
use qf_core::freealg::{QWord, QuandlePresentation};
use qf_core::{FiniteGroup, FiniteQuandle, GroupSpec, Permutation};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::CliError;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct QuandleFile {
    pub order: usize,
    pub table: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub names: Option<Vec<String>>,
}

impl QuandleFile {
    pub fn from_quandle(q: &FiniteQuandle) -> Self {
        Self { order: q.order(), table: q.table(), names: q.names().map(<[String]>::to_vec) }
    }

    pub fn to_quandle(&self) -> Result<FiniteQuandle, CliError> {
        if self.table.len() != self.order {
            return Err(CliError::usage(format!("order {} but {} table rows", self.order, self.table.len())));
        }
        let q = FiniteQuandle::from_table(&self.table)?;
        Ok(match &self.names {
            Some(names) => q.with_names(names.clone())?,
            None => q,
        })
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GroupFile {
    pub order: usize,
    pub mul: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

impl GroupFile {
    pub fn from_group(g: &FiniteGroup) -> Self {
        Self { order: g.order(), mul: g.table(), labels: g.labels().map(<[String]>::to_vec) }
    }

    pub fn to_group(&self) -> Result<FiniteGroup, CliError> {
        if self.mul.len() != self.order {
            return Err(CliError::usage(format!("order {} but {} table rows", self.order, self.mul.len())));
        }
        let g = FiniteGroup::from_table(&self.mul)?;
        Ok(match &self.labels {
            Some(labels) => g.with_labels(labels.clone())?,
            None => g,
        })
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CertificateFile {
    pub quandle: String,
    pub group: GroupFile,
    pub images: Vec<usize>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PresentationFile {
    pub generators: Vec<String>,
    #[serde(default)]
    pub relations: Vec<[String; 2]>,
}

impl PresentationFile {
    pub fn from_presentation(p: &QuandlePresentation) -> Self {
        let relations = p.relations.iter().map(|(a, b)| [a.render(&p.names), b.render(&p.names)]).collect();
        Self { generators: p.names.clone(), relations }
    }

    pub fn to_presentation(&self) -> Result<QuandlePresentation, CliError> {
        let relations = self
            .relations
            .iter()
            .map(|[a, b]| Ok((QWord::parse(a, &self.generators)?, QWord::parse(b, &self.generators)?)))
            .collect::<Result<Vec<_>, CliError>>()?;
        Ok(QuandlePresentation::new(self.generators.clone(), relations)?)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GroupPresentationFile {
    pub generators: Vec<String>,
    pub relators: Vec<Vec<i64>>,
    /// The relators written out with generator names, for reading only.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub rendered: Vec<String>,
}

impl GroupPresentationFile {
    pub fn from_presentation(p: &GroupPresentation) -> Self {
        Self {
            generators: p.names.clone(),
            relators: p.relators.iter().map(|r| r.to_signed()).collect(),
            rendered: p.relators.iter().map(|r| p.render_relator(r)).collect(),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ActionsFile {
    pub sigma: Vec<Vec<usize>>,
    pub tau: Vec<Vec<usize>>,
}

impl ActionsFile {
    pub fn permutations(&self) -> Result<(Vec<Permutation>, Vec<Permutation>), CliError> {
        let conv = |rows: &[Vec<usize>]| {
            rows.iter()
                .map(|r| Permutation::new(r.clone()).map_err(|e| CliError::usage(format!("bad permutation {r:?}: {e}"))))
                .collect::<Result<Vec<_>, _>>()
        };
        Ok((conv(&self.sigma)?, conv(&self.tau)?))
    }
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::usage(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::usage(format!("{}: {e}", path.display())))
}

pub fn read_quandle(path: &Path) -> Result<FiniteQuandle, CliError> {
    read_json::<QuandleFile>(path)?.to_quandle()
}

/// A group given as a spec such as `dihedral:4` or as a group file.
pub fn read_group(arg: &str) -> Result<FiniteGroup, CliError> {
    if let Ok(spec) = GroupSpec::parse(arg) {
        return Ok(FiniteGroup::standard(&spec)?);
    }
    let path = Path::new(arg);
    if !path.exists() {
        return Err(CliError::usage(format!("`{arg}` is neither a group spec nor a file")));
    }
    read_json::<GroupFile>(path)?.to_group()
}

/// Pretty JSON with arrays of scalars kept on one line, so tables read as
/// one row per line.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let v = serde_json::to_value(value).expect("plain data serializes");
    let mut out = String::new();
    write_value(&v, 0, &mut out);
    out.push('\n');
    out
}

fn is_flat(v: &Value) -> bool {
    match v {
        Value::Array(items) => items.iter().all(|x| !x.is_array() && !x.is_object()),
        _ => true,
    }
}

fn write_value(v: &Value, indent: usize, out: &mut String) {
    let pad = |n: usize| "  ".repeat(n);
    match v {
        Value::Object(map) if !map.is_empty() => {
            out.push_str("{\n");
            for (k, (key, val)) in map.iter().enumerate() {
                out.push_str(&pad(indent + 1));
                out.push_str(&Value::String(key.clone()).to_string());
                out.push_str(": ");
                write_value(val, indent + 1, out);
                if k + 1 < map.len() {
                    out.push(',');
                }
                out.push('\n');
            }
            out.push_str(&pad(indent));
            out.push('}');
        }
        Value::Array(items) if !is_flat(v) => {
            out.push_str("[\n");
            for (k, item) in items.iter().enumerate() {
                out.push_str(&pad(indent + 1));
                write_value(item, indent + 1, out);
                if k + 1 < items.len() {
                    out.push(',');
                }
                out.push('\n');
            }
            out.push_str(&pad(indent));
            out.push(']');
        }
        Value::Array(items) => {
            let parts: Vec<String> = items.iter().map(Value::to_string).collect();
            out.push('[');
            out.push_str(&parts.join(", "));
            out.push(']');
        }
        other => out.push_str(&other.to_string()),
    }
}
