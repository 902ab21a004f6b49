//! JSON file formats for algebras and representations.
//!
//! Entries are sparse `[i, j, k, "coefficient"]` lists with 1-based indices.
//! Coefficients are strings: `"p"` or `"p/q"` over ℚ, a residue in `[0, p)`
//! over F_p. Writers emit entries sorted by index with canonical
//! coefficients and drop zeros, so read → write → read is the identity.

use std::collections::BTreeSet;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::algebra::{Op, Side, StructureTable};
use crate::error::{Error, Result};
use crate::exactlin::FieldSpec;
use crate::representation::RepresentationData;

/// Environment variable naming the field used when a file omits `"field"`.
pub const FIELD_ENV: &str = "DIAS_FIELD";

/// One sparse entry: three 1-based indices and a coefficient string.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Entry(pub usize, pub usize, pub usize, pub String);

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub field: Option<String>,
    pub dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basis: Option<Vec<String>>,
    #[serde(default)]
    pub left: Vec<Entry>,
    #[serde(default)]
    pub right: Vec<Entry>,
}

/// The algebra of a representation file: a path (relative to the file) or
/// an inline algebra object.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum AlgebraSource {
    Path(String),
    Inline(AlgebraFile),
}

/// `S` entries are `[v_in, d, v_out, c]` and `T` entries `[d, v_in, v_out, c]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RepFile {
    pub algebra: AlgebraSource,
    #[serde(rename = "dimV")]
    pub dim_v: usize,
    #[serde(rename = "S_left", default)]
    pub s_left: Vec<Entry>,
    #[serde(rename = "S_right", default)]
    pub s_right: Vec<Entry>,
    #[serde(rename = "T_left", default)]
    pub t_left: Vec<Entry>,
    #[serde(rename = "T_right", default)]
    pub t_right: Vec<Entry>,
}

/// Field from [`FIELD_ENV`], if set.
pub fn default_field_from_env() -> Result<Option<FieldSpec>> {
    match std::env::var(FIELD_ENV) {
        Ok(s) => s.parse().map(Some).map_err(|e| Error::Format(format!("{FIELD_ENV}: {e}"))),
        Err(_) => Ok(None),
    }
}

fn resolve_field(declared: Option<&str>, default: Option<FieldSpec>) -> Result<FieldSpec> {
    match declared {
        Some(s) => s.parse().map_err(|e| Error::Format(format!("field: {e}"))),
        None => default.ok_or_else(|| Error::Format(format!("field: missing, and {FIELD_ENV} is not set"))),
    }
}

/// Nonzero entries of a 3-index tensor, sorted, 1-based.
fn sparse(tensor: &[crate::exactlin::Scalar], dims: [usize; 3]) -> Vec<Entry> {
    let mut out = Vec::new();
    for a in 0..dims[0] {
        for b in 0..dims[1] {
            for c in 0..dims[2] {
                let x = &tensor[(a * dims[1] + b) * dims[2] + c];
                if !x.is_zero() {
                    out.push(Entry(a + 1, b + 1, c + 1, x.to_string()));
                }
            }
        }
    }
    out
}

/// Validates entries and hands them over 0-based with parsed coefficients.
fn parse_entries(
    name: &str,
    entries: &[Entry],
    dims: [usize; 3],
    field: FieldSpec,
    mut sink: impl FnMut(usize, usize, usize, crate::exactlin::Scalar) -> Result<()>,
) -> Result<()> {
    let mut seen = BTreeSet::new();
    for (pos, Entry(i, j, k, c)) in entries.iter().enumerate() {
        for (idx, bound) in [*i, *j, *k].into_iter().zip(dims) {
            if idx == 0 || idx > bound {
                return Err(Error::Format(format!("{name}[{pos}]: index {idx} outside 1..={bound}")));
            }
        }
        if !seen.insert((*i, *j, *k)) {
            return Err(Error::Format(format!("{name}[{pos}]: duplicate entry ({i}, {j}, {k})")));
        }
        let value = field.parse_scalar(c).map_err(|e| Error::Format(format!("{name}[{pos}]: {e}")))?;
        sink(i - 1, j - 1, k - 1, value)?;
    }
    Ok(())
}

impl AlgebraFile {
    pub fn from_table(table: &StructureTable) -> Self {
        let n = table.dim();
        AlgebraFile {
            field: Some(table.field().to_string()),
            dim: n,
            basis: table.basis_names().map(<[String]>::to_vec),
            left: sparse(table.tensor(Op::Left), [n, n, n]),
            right: sparse(table.tensor(Op::Right), [n, n, n]),
        }
    }

    /// Builds the (unverified) table; `default_field` applies when the file
    /// has no `"field"`.
    pub fn to_table(&self, default_field: Option<FieldSpec>) -> Result<StructureTable> {
        let field = resolve_field(self.field.as_deref(), default_field)?;
        let n = self.dim;
        let mut table = StructureTable::zeros(field, n);
        for (name, op, entries) in [("left", Op::Left, &self.left), ("right", Op::Right, &self.right)] {
            parse_entries(name, entries, [n, n, n], field, |i, j, k, v| table.set_coefficient(op, i, j, k, v))?;
        }
        if let Some(names) = &self.basis {
            if names.len() != n {
                return Err(Error::Format(format!("basis: {} names for dimension {n}", names.len())));
            }
            if names.iter().collect::<BTreeSet<_>>().len() != n {
                return Err(Error::Format("basis: names must be distinct".into()));
            }
            table = table.with_basis_names(names.clone())?;
        }
        Ok(table)
    }
}

fn json_error(e: serde_json::Error) -> Error {
    Error::Format(e.to_string())
}

pub fn parse_algebra(text: &str, default_field: Option<FieldSpec>) -> Result<StructureTable> {
    let file: AlgebraFile = serde_json::from_str(text).map_err(json_error)?;
    file.to_table(default_field)
}

pub fn read_algebra(path: &Path, default_field: Option<FieldSpec>) -> Result<StructureTable> {
    let text = fs::read_to_string(path)?;
    parse_algebra(&text, default_field).map_err(|e| Error::Format(format!("{}: {}", path.display(), strip_prefix(e))))
}

/// Canonical text of a table.
pub fn write_algebra(table: &StructureTable) -> String {
    to_text(&serde_json::to_value(AlgebraFile::from_table(table)).expect("serializable"))
}

impl RepFile {
    /// Representation file with the algebra inlined.
    pub fn from_rep(rep: &RepresentationData) -> Self {
        let (n, m) = (rep.algebra().dim(), rep.dim_v());
        let s = [m, n, m];
        let t = [n, m, m];
        RepFile {
            algebra: AlgebraSource::Inline(AlgebraFile::from_table(rep.algebra())),
            dim_v: m,
            s_left: sparse(rep.tensor(Side::RightMul, Op::Left), s),
            s_right: sparse(rep.tensor(Side::RightMul, Op::Right), s),
            t_left: sparse(rep.tensor(Side::LeftMul, Op::Left), t),
            t_right: sparse(rep.tensor(Side::LeftMul, Op::Right), t),
        }
    }

    /// Builds the (unverified) representation. The algebra itself must pass
    /// the axioms. Relative algebra paths are resolved against `base_dir`.
    pub fn to_data(&self, base_dir: Option<&Path>, default_field: Option<FieldSpec>) -> Result<RepresentationData> {
        let table = match &self.algebra {
            AlgebraSource::Inline(file) => file.to_table(default_field)?,
            AlgebraSource::Path(p) => {
                let path = base_dir.map_or_else(|| Path::new(p).to_path_buf(), |b| b.join(p));
                read_algebra(&path, default_field)?
            }
        };
        let algebra = table.verify()?;
        let (n, m) = (algebra.dim(), self.dim_v);
        let mut data = RepresentationData::zero(algebra, m);
        let lists = [
            ("S_left", Side::RightMul, Op::Left, &self.s_left),
            ("S_right", Side::RightMul, Op::Right, &self.s_right),
            ("T_left", Side::LeftMul, Op::Left, &self.t_left),
            ("T_right", Side::LeftMul, Op::Right, &self.t_right),
        ];
        for (name, side, op, entries) in lists {
            let dims = match side {
                Side::RightMul => [m, n, m],
                Side::LeftMul => [n, m, m],
            };
            let field = data.algebra().field();
            parse_entries(name, entries, dims, field, |a, b, c, v| data.set_entry(side, op, a, b, c, v))?;
        }
        Ok(data)
    }
}

pub fn read_rep(path: &Path, default_field: Option<FieldSpec>) -> Result<RepresentationData> {
    let text = fs::read_to_string(path)?;
    let file: RepFile = serde_json::from_str(&text).map_err(|e| Error::Format(format!("{}: {e}", path.display())))?;
    file.to_data(path.parent(), default_field)
}

pub fn write_rep(rep: &RepresentationData) -> String {
    to_text(&serde_json::to_value(RepFile::from_rep(rep)).expect("serializable"))
}

fn strip_prefix(e: Error) -> String {
    match e {
        Error::Format(msg) => msg,
        other => other.to_string(),
    }
}

/// Objects one key per line; arrays of scalars on one line; arrays of
/// containers one element per line. Keys come out sorted.
pub fn to_text(value: &Value) -> String {
    let mut out = String::new();
    write_value(value, 0, &mut out);
    out.push('\n');
    out
}

fn is_container(v: &Value) -> bool {
    matches!(v, Value::Array(_) | Value::Object(_))
}

fn write_value(value: &Value, indent: usize, out: &mut String) {
    let pad = |n: usize| "  ".repeat(n);
    match value {
        Value::Object(map) if !map.is_empty() => {
            out.push_str("{\n");
            for (i, (k, v)) in map.iter().enumerate() {
                out.push_str(&pad(indent + 1));
                out.push_str(&Value::String(k.clone()).to_string());
                out.push_str(": ");
                write_value(v, indent + 1, out);
                if i + 1 < map.len() {
                    out.push(',');
                }
                out.push('\n');
            }
            out.push_str(&pad(indent));
            out.push('}');
        }
        Value::Array(items) if items.iter().any(is_container) => {
            out.push_str("[\n");
            for (i, v) in items.iter().enumerate() {
                out.push_str(&pad(indent + 1));
                write_value(v, indent + 1, out);
                if i + 1 < items.len() {
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
