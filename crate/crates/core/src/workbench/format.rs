//! JSON encoding of algebras and check reports.
//!
//! All scalars are strings `"p"` or `"p/q"`. Saving is canonical: maps are
//! key-ordered, entries are tuple-ordered, zero entries are dropped, and the
//! output ends with a newline, so `save(load(s)) == s` for any saved `s`.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

use crate::algebra::Algebra;
use crate::linalg::{LinearForm, LinearMap, Vector};
use crate::report::{CheckReport, Verdict};
use crate::scalar::{format_scalar, parse_scalar, Scalar};
use crate::tensor::{StructureTensor, Symmetry, MAX_ARITY};

pub const ALGEBRA_FORMAT: &str = "rbn-algebra";
pub const REPORT_FORMAT: &str = "rbn-report";
pub const FORMAT_VERSION: u64 = 1;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FormatError {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("unsupported format {found:?} (expected {expected:?} version {FORMAT_VERSION})")]
    Version { expected: &'static str, found: String },
    #[error("{location}: {message}")]
    Schema { location: String, message: String },
    #[error("{location}: malformed rational {input:?} ({reason})")]
    Rational { location: String, input: String, reason: String },
    #[error("{location}: index {index} out of range for dimension {dim}")]
    IndexOutOfRange { location: String, index: usize, dim: usize },
    #[error("{location}: tuple {tuple:?} is not in canonical order for a {symmetry} product")]
    NonCanonicalTuple { location: String, tuple: Vec<usize>, symmetry: &'static str },
    #[error("{location}: expected length {expected}, found {found}")]
    DimensionMismatch { location: String, expected: usize, found: usize },
}

fn schema(location: impl Into<String>, message: impl Into<String>) -> FormatError {
    FormatError::Schema {
        location: location.into(),
        message: message.into(),
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct AlgebraFile {
    format: String,
    version: u64,
    name: String,
    dimension: usize,
    basis: Vec<String>,
    scalar: String,
    #[serde(default)]
    products: BTreeMap<String, ProductEntry>,
    #[serde(default)]
    maps: BTreeMap<String, Vec<Vec<String>>>,
    #[serde(default)]
    forms: BTreeMap<String, Vec<String>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ProductEntry {
    arity: usize,
    symmetry: Symmetry,
    entries: Vec<TupleEntry>,
    #[serde(default)]
    claims: Vec<String>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TupleEntry {
    tuple: Vec<usize>,
    value: Vec<String>,
}

fn strings(xs: &[Scalar]) -> Vec<String> {
    xs.iter().map(format_scalar).collect()
}

fn scalar_at(location: String, s: &str) -> Result<Scalar, FormatError> {
    parse_scalar(s).map_err(|e| FormatError::Rational {
        location,
        input: e.input,
        reason: e.reason.to_string(),
    })
}

fn row_at(location: &str, row: &[String], dim: usize) -> Result<Vec<Scalar>, FormatError> {
    if row.len() != dim {
        return Err(FormatError::DimensionMismatch {
            location: location.to_string(),
            expected: dim,
            found: row.len(),
        });
    }
    row.iter()
        .enumerate()
        .map(|(i, s)| scalar_at(format!("{location}[{i}]"), s))
        .collect()
}

fn check_header(value: &Value, expected: &'static str) -> Result<(), FormatError> {
    let format = value.get("format").and_then(Value::as_str);
    let version = value.get("version").and_then(Value::as_u64);
    match (format, version) {
        (Some(f), Some(FORMAT_VERSION)) if f == expected => Ok(()),
        (f, v) => Err(FormatError::Version {
            expected,
            found: format!(
                "{} v{}",
                f.unwrap_or("<missing>"),
                v.map_or("<missing>".to_string(), |v| v.to_string())
            ),
        }),
    }
}

fn parse_json(text: &str) -> Result<Value, FormatError> {
    serde_json::from_str(text).map_err(|e| FormatError::Syntax {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })
}

/// Parses and validates an algebra file.
pub fn parse_algebra(text: &str) -> Result<Algebra, FormatError> {
    let value = parse_json(text)?;
    check_header(&value, ALGEBRA_FORMAT)?;
    let file: AlgebraFile = serde_json::from_value(value).map_err(|e| schema("$", e.to_string()))?;
    if file.scalar != "rational" {
        return Err(schema("scalar", format!("unsupported scalar kind {:?}", file.scalar)));
    }
    let dim = file.dimension;
    if dim == 0 {
        return Err(schema("dimension", "dimension must be positive"));
    }
    if file.basis.len() != dim {
        return Err(FormatError::DimensionMismatch {
            location: "basis".into(),
            expected: dim,
            found: file.basis.len(),
        });
    }
    let mut alg = Algebra::new(file.name, file.basis);
    for (name, p) in &file.products {
        let loc = format!("products.{name}");
        if !(2..=MAX_ARITY).contains(&p.arity) {
            return Err(schema(format!("{loc}.arity"), format!("arity must be in 2..={MAX_ARITY}")));
        }
        let mut t = StructureTensor::new(p.arity, dim, p.symmetry).map_err(|e| schema(&loc, e.to_string()))?;
        let mut prev: Option<&Vec<usize>> = None;
        for (k, entry) in p.entries.iter().enumerate() {
            let eloc = format!("{loc}.entries[{k}]");
            if entry.tuple.len() != p.arity {
                return Err(FormatError::DimensionMismatch {
                    location: format!("{eloc}.tuple"),
                    expected: p.arity,
                    found: entry.tuple.len(),
                });
            }
            if let Some(&index) = entry.tuple.iter().find(|&&i| i >= dim) {
                return Err(FormatError::IndexOutOfRange {
                    location: format!("{eloc}.tuple"),
                    index,
                    dim,
                });
            }
            let canonical = match p.symmetry {
                Symmetry::None => true,
                Symmetry::Skew => entry.tuple.windows(2).all(|w| w[0] < w[1]),
                Symmetry::Symmetric => entry.tuple.windows(2).all(|w| w[0] <= w[1]),
            };
            if !canonical {
                return Err(FormatError::NonCanonicalTuple {
                    location: format!("{eloc}.tuple"),
                    tuple: entry.tuple.clone(),
                    symmetry: p.symmetry.name(),
                });
            }
            if prev.is_some_and(|q| q >= &entry.tuple) {
                return Err(schema(format!("{eloc}.tuple"), "tuples must be strictly increasing and unique"));
            }
            prev = Some(&entry.tuple);
            let value = row_at(&format!("{eloc}.value"), &entry.value, dim)?;
            t.insert(entry.tuple.clone(), Vector::from_coords(value))
                .map_err(|e| schema(&eloc, e.to_string()))?;
        }
        alg.add_product(name.clone(), t).map_err(|e| schema(&loc, e.to_string()))?;
        for c in &p.claims {
            alg.add_claim(name, c.clone()).map_err(|e| schema(&loc, e.to_string()))?;
        }
    }
    for (name, rows) in &file.maps {
        let loc = format!("maps.{name}");
        if rows.len() != dim {
            return Err(FormatError::DimensionMismatch {
                location: loc,
                expected: dim,
                found: rows.len(),
            });
        }
        let rows = rows
            .iter()
            .enumerate()
            .map(|(i, r)| row_at(&format!("{loc}[{i}]"), r, dim))
            .collect::<Result<Vec<_>, _>>()?;
        let m = LinearMap::from_rows(rows).map_err(|e| schema(&loc, e.to_string()))?;
        alg.add_map(name.clone(), m).map_err(|e| schema(&loc, e.to_string()))?;
    }
    for (name, row) in &file.forms {
        let loc = format!("forms.{name}");
        let f = LinearForm::from_row(row_at(&loc, row, dim)?);
        alg.add_form(name.clone(), f).map_err(|e| schema(&loc, e.to_string()))?;
    }
    Ok(alg)
}

fn to_pretty<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

/// Canonical text of an algebra.
pub fn render_algebra(alg: &Algebra) -> String {
    let products = alg
        .products()
        .iter()
        .map(|(name, t)| {
            let entries = t
                .entries()
                .iter()
                .map(|(tuple, v)| TupleEntry {
                    tuple: tuple.clone(),
                    value: strings(v.coords()),
                })
                .collect();
            let entry = ProductEntry {
                arity: t.arity(),
                symmetry: t.symmetry(),
                entries,
                claims: alg.claims(name).map(str::to_string).collect(),
            };
            (name.clone(), entry)
        })
        .collect();
    let file = AlgebraFile {
        format: ALGEBRA_FORMAT.into(),
        version: FORMAT_VERSION,
        name: alg.name.clone(),
        dimension: alg.dim(),
        basis: alg.basis().to_vec(),
        scalar: "rational".into(),
        products,
        maps: alg
            .maps()
            .iter()
            .map(|(n, m)| (n.clone(), m.rows().map(strings).collect()))
            .collect(),
        forms: alg.forms().iter().map(|(n, f)| (n.clone(), strings(f.row()))).collect(),
    };
    to_pretty(&file)
}

pub fn load(path: impl AsRef<Path>) -> crate::Result<Algebra> {
    let text = std::fs::read_to_string(path)?;
    Ok(parse_algebra(&text)?)
}

pub fn save(alg: &Algebra, path: impl AsRef<Path>) -> crate::Result<()> {
    std::fs::write(path, render_algebra(alg))?;
    Ok(())
}

/// One check in a report file, with counterexample coordinates in the named
/// basis.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReportEntry {
    pub identity: String,
    pub verdict: Verdict,
    pub checked: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<CounterexampleEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CounterexampleEntry {
    pub tuple: Vec<usize>,
    pub arguments: Vec<String>,
    pub lhs: Vec<String>,
    pub rhs: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReportFile {
    pub format: String,
    pub version: u64,
    pub command: String,
    pub algebra: String,
    pub exit_code: i32,
    pub checks: Vec<ReportEntry>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl ReportFile {
    pub fn new(command: impl Into<String>, algebra: impl Into<String>) -> Self {
        ReportFile {
            format: REPORT_FORMAT.into(),
            version: FORMAT_VERSION,
            command: command.into(),
            algebra: algebra.into(),
            exit_code: 0,
            checks: Vec::new(),
            notes: Vec::new(),
        }
    }

    /// Adds a check; basis names label the counterexample arguments.
    pub fn push(&mut self, report: &CheckReport, basis: &[String]) {
        let counterexample = report.counterexample.as_ref().map(|c| CounterexampleEntry {
            tuple: c.tuple.clone(),
            arguments: c
                .tuple
                .iter()
                .map(|&i| basis.get(i).cloned().unwrap_or_else(|| format!("#{i}")))
                .collect(),
            lhs: strings(c.lhs.coords()),
            rhs: strings(c.rhs.coords()),
        });
        self.checks.push(ReportEntry {
            identity: report.identity.clone(),
            verdict: report.verdict,
            checked: report.checked,
            counterexample,
        });
    }

    pub fn render(&self) -> String {
        to_pretty(self)
    }

    pub fn parse(text: &str) -> Result<Self, FormatError> {
        let value = parse_json(text)?;
        check_header(&value, REPORT_FORMAT)?;
        serde_json::from_value(value).map_err(|e| schema("$", e.to_string()))
    }
}

/// `Σ c_i e_i` written with basis names, e.g. `-x2 + 1/2 x3`, or `0`.
pub fn format_vector(v: &Vector, basis: &[String]) -> String {
    let mut out = String::new();
    for (i, c) in v.support() {
        let name = basis.get(i).map_or_else(|| format!("e{}", i + 1), Clone::clone);
        let neg = num_traits::Signed::is_negative(c);
        let mag = num_traits::Signed::abs(c);
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        if !num_traits::One::is_one(&mag) {
            out.push_str(&format_scalar(&mag));
            out.push(' ');
        }
        out.push_str(&name);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    fn small() -> Algebra {
        let mut a = Algebra::with_numbered_basis("small", "e", 2);
        let mut t = StructureTensor::new(2, 2, Symmetry::Skew).unwrap();
        t.insert(vec![0, 1], Vector::from_coords(vec![int(0), crate::scalar::frac(1, 2)]))
            .unwrap();
        a.add_product("bracket", t).unwrap();
        a.add_claim("bracket", "lie").unwrap();
        a.add_map("P", LinearMap::from_int_rows(&[&[1, 0], &[-1, 2]]).unwrap()).unwrap();
        a.add_form("f", LinearForm::from_ints(&[1, 0])).unwrap();
        a
    }

    #[test]
    fn round_trip() {
        let a = small();
        let text = render_algebra(&a);
        let b = parse_algebra(&text).unwrap();
        assert_eq!(a, b);
        assert_eq!(render_algebra(&b), text);
    }

    fn edited(from: &str, to: &str) -> String {
        let text = render_algebra(&small());
        assert!(text.contains(from), "{from} not in {text}");
        text.replacen(from, to, 1)
    }

    #[test]
    fn decimal_rejected() {
        let err = parse_algebra(&edited("\"1/2\"", "\"0.5\"")).unwrap_err();
        assert!(matches!(err, FormatError::Rational { ref location, .. } if location == "products.bracket.entries[0].value[1]"), "{err}");
    }

    #[test]
    fn distinct_errors() {
        let err = parse_algebra(&edited("\"tuple\": [\n            0,\n            1", "\"tuple\": [\n            1,\n            0")).unwrap_err();
        assert!(matches!(err, FormatError::NonCanonicalTuple { .. }), "{err}");
        let err = parse_algebra(&edited("\"tuple\": [\n            0,\n            1", "\"tuple\": [\n            0,\n            2")).unwrap_err();
        assert!(matches!(err, FormatError::IndexOutOfRange { index: 2, .. }), "{err}");
        let err = parse_algebra(&edited("\"dimension\": 2", "\"dimension\": 3")).unwrap_err();
        assert!(matches!(err, FormatError::DimensionMismatch { .. }), "{err}");
        let err = parse_algebra(&edited("\"version\": 1", "\"version\": 2")).unwrap_err();
        assert!(matches!(err, FormatError::Version { .. }), "{err}");
        let err = parse_algebra("{\"format\": ").unwrap_err();
        assert!(matches!(err, FormatError::Syntax { line: 1, .. }), "{err}");
    }

    #[test]
    fn vector_text() {
        let basis: Vec<String> = ["x1", "x2", "x3"].iter().map(|s| s.to_string()).collect();
        let v = Vector::from_coords(vec![int(0), int(-1), crate::scalar::frac(1, 2)]);
        assert_eq!(format_vector(&v, &basis), "-x2 + 1/2 x3");
        assert_eq!(format_vector(&Vector::zero(3), &basis), "0");
    }
}
