//! JSON file formats for Seifert matrices, unitary tuples, form tuples and
//! metabolic certificates.
//!
//! Exact entries are coefficient vectors over powers of `zeta_n`, written as
//! `"p/q"` strings (plain integers are accepted on input), so values survive
//! a round trip unchanged.

use std::collections::BTreeMap;
use std::path::Path;

use etalink::algebra::{ComplexF, Cyclotomic, Matrix, Rational};
use etalink::eta::FormTuple;
use etalink::reps::{UnitaryTuple, DEFAULT_UNITARY_TOL};
use etalink::seifert::{MetabolicCertificate, SeifertMatrix};
use serde::{Deserialize, Serialize};
use serde_json::Value as Json;
use sha2::{Digest, Sha256};

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("schema error at line {line}, column {column}: {message}")]
    Schema {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("field {field}: {message}")]
    Field { field: String, message: String },
    #[error(transparent)]
    Math(#[from] etalink::Error),
}

pub type FormatResult<T> = std::result::Result<T, FormatError>;

fn field(field: impl Into<String>, message: impl Into<String>) -> FormatError {
    FormatError::Field {
        field: field.into(),
        message: message.into(),
    }
}

fn from_json<T: for<'de> Deserialize<'de>>(text: &str) -> FormatResult<T> {
    serde_json::from_str(text).map_err(|e| FormatError::Schema {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })
}

pub fn read_text(path: &Path) -> FormatResult<String> {
    std::fs::read_to_string(path).map_err(|source| FormatError::Io {
        path: path.display().to_string(),
        source,
    })
}

/// Hex SHA-256 of the raw file contents.
pub fn digest(text: &str) -> String {
    hex::encode(Sha256::digest(text.as_bytes()))
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SeifertFile {
    pub epsilon: i8,
    pub sizes: Vec<usize>,
    pub matrix: Vec<Vec<i64>>,
}

impl SeifertFile {
    pub fn from_matrix(a: &SeifertMatrix) -> Self {
        Self {
            epsilon: a.epsilon(),
            sizes: a.sizes().to_vec(),
            matrix: a.entries().clone().into_rows(),
        }
    }
}

/// Parses a Seifert file; axiom violations are errors unless `relaxed`.
pub fn parse_seifert(text: &str, relaxed: bool) -> FormatResult<SeifertMatrix> {
    let f: SeifertFile = from_json(text)?;
    if f.epsilon != 1 && f.epsilon != -1 {
        return Err(field("epsilon", format!("must be 1 or -1, got {}", f.epsilon)));
    }
    let n = 2 * f.sizes.iter().sum::<usize>();
    if f.matrix.len() != n {
        return Err(field(
            "matrix",
            format!("sizes {:?} need {n} rows, found {}", f.sizes, f.matrix.len()),
        ));
    }
    if let Some(r) = f.matrix.iter().position(|row| row.len() != n) {
        return Err(field(
            format!("matrix[{r}]"),
            format!("expected {n} entries, found {}", f.matrix[r].len()),
        ));
    }
    let a = if relaxed {
        SeifertMatrix::new_relaxed(f.epsilon, f.sizes, entries(n, f.matrix))?
    } else {
        SeifertMatrix::new(f.epsilon, f.sizes, entries(n, f.matrix))?
    };
    Ok(a)
}

fn entries(n: usize, rows: Vec<Vec<i64>>) -> Matrix<i64> {
    if n == 0 {
        Matrix::zeros(0, 0)
    } else {
        Matrix::from_rows(rows).expect("row lengths checked")
    }
}

pub fn load_seifert(path: &Path, relaxed: bool) -> FormatResult<(SeifertMatrix, String)> {
    let text = read_text(path)?;
    Ok((parse_seifert(&text, relaxed)?, digest(&text)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EntryFormat {
    Cyclotomic,
    Complex,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RepFile {
    pub k: usize,
    pub format: EntryFormat,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub order: Option<u32>,
    pub matrices: Vec<Vec<Vec<Json>>>,
}

fn parse_rational(v: &Json, at: &str) -> FormatResult<Rational> {
    match v {
        Json::String(s) => s
            .trim()
            .parse::<Rational>()
            .map_err(|_| field(at, format!("cannot read {s:?} as p/q"))),
        Json::Number(n) => n
            .as_i64()
            .map(|x| Rational::from_integer(x.into()))
            .ok_or_else(|| field(at, format!("{n} is not an integer"))),
        other => Err(field(at, format!("expected \"p/q\", found {other}"))),
    }
}

fn parse_cyclotomic(v: &Json, order: u32, at: &str) -> FormatResult<Cyclotomic> {
    let coeffs = v
        .as_array()
        .ok_or_else(|| field(at, "expected a coefficient list"))?
        .iter()
        .enumerate()
        .map(|(j, c)| parse_rational(c, &format!("{at}[{j}]")))
        .collect::<FormatResult<Vec<_>>>()?;
    Ok(Cyclotomic::from_coeffs(order, &coeffs))
}

fn parse_complex(v: &Json, at: &str) -> FormatResult<ComplexF> {
    let part = |name: &str| {
        v.get(name)
            .and_then(Json::as_f64)
            .ok_or_else(|| field(format!("{at}.{name}"), "expected a number"))
    };
    Ok(ComplexF::new(part("re")?, part("im")?))
}

fn grid<S>(
    rows: &[Vec<Json>],
    nrows: usize,
    ncols: usize,
    at: &str,
    mut parse: impl FnMut(&Json, &str) -> FormatResult<S>,
) -> FormatResult<Matrix<S>> {
    if rows.len() != nrows || rows.iter().any(|r| r.len() != ncols) {
        return Err(field(at, format!("expected a {nrows}x{ncols} grid")));
    }
    let mut out = Vec::with_capacity(nrows * ncols);
    for (r, row) in rows.iter().enumerate() {
        for (c, v) in row.iter().enumerate() {
            out.push(parse(v, &format!("{at}[{r}][{c}]"))?);
        }
    }
    Ok(Matrix::from_vec(nrows, ncols, out)?)
}

fn order_of(format: EntryFormat, order: Option<u32>) -> FormatResult<u32> {
    match (format, order) {
        (EntryFormat::Cyclotomic, Some(n)) if n >= 1 => Ok(n),
        (EntryFormat::Cyclotomic, _) => Err(field("order", "cyclotomic format needs an order >= 1")),
        (EntryFormat::Complex, _) => Ok(1),
    }
}

pub fn parse_rep(text: &str) -> FormatResult<UnitaryTuple> {
    let f: RepFile = from_json(text)?;
    let order = order_of(f.format, f.order)?;
    match f.format {
        EntryFormat::Cyclotomic => {
            let mats = f
                .matrices
                .iter()
                .enumerate()
                .map(|(i, m)| grid(m, f.k, f.k, &format!("matrices[{i}]"), |v, at| parse_cyclotomic(v, order, at)))
                .collect::<FormatResult<Vec<_>>>()?;
            Ok(UnitaryTuple::exact(mats)?)
        }
        EntryFormat::Complex => {
            let mats = f
                .matrices
                .iter()
                .enumerate()
                .map(|(i, m)| grid(m, f.k, f.k, &format!("matrices[{i}]"), parse_complex))
                .collect::<FormatResult<Vec<_>>>()?;
            Ok(UnitaryTuple::float(mats, DEFAULT_UNITARY_TOL)?)
        }
    }
}

pub fn load_rep(path: &Path) -> FormatResult<UnitaryTuple> {
    parse_rep(&read_text(path)?)
}

fn cyclotomic_json(z: &Cyclotomic, order: u32) -> Json {
    let p = z.promote(order);
    let mut coeffs: Vec<Json> = p.coeffs().iter().map(|c| Json::String(c.to_string())).collect();
    while coeffs.last().is_some_and(|c| c == "0") {
        coeffs.pop();
    }
    Json::Array(coeffs)
}

fn complex_json(z: &ComplexF) -> Json {
    serde_json::json!({ "re": z.re, "im": z.im })
}

/// Serializes a tuple in the representation file format.
pub fn rep_to_file(alpha: &UnitaryTuple) -> RepFile {
    match alpha.exact_matrices() {
        Some(mats) => {
            let order = mats
                .iter()
                .flat_map(|m| m.entries().iter().map(|z| z.order()))
                .fold(1u32, lcm);
            RepFile {
                k: alpha.k(),
                format: EntryFormat::Cyclotomic,
                order: Some(order),
                matrices: mats
                    .iter()
                    .map(|m| m.clone().into_rows().iter().map(|r| r.iter().map(|z| cyclotomic_json(z, order)).collect()).collect())
                    .collect(),
            }
        }
        None => RepFile {
            k: alpha.k(),
            format: EntryFormat::Complex,
            order: None,
            matrices: alpha
                .float_matrices()
                .into_iter()
                .map(|m| m.into_rows().iter().map(|r| r.iter().map(complex_json).collect()).collect())
                .collect(),
        },
    }
}

fn lcm(a: u32, b: u32) -> u32 {
    fn gcd(a: u32, b: u32) -> u32 {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }
    a / gcd(a, b) * b
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FormBlock {
    /// 1-based component indices with `i <= j`.
    pub i: usize,
    pub j: usize,
    pub matrix: Vec<Vec<Json>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FormFile {
    pub dims: Vec<usize>,
    pub format: EntryFormat,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub order: Option<u32>,
    pub blocks: Vec<FormBlock>,
}

pub fn parse_forms(text: &str) -> FormatResult<FormTuple> {
    let f: FormFile = from_json(text)?;
    let order = order_of(f.format, f.order)?;
    let m = f.dims.len();
    let check = |b: &FormBlock, t: usize| {
        if b.i == 0 || b.i > b.j || b.j > m {
            Err(field(format!("blocks[{t}]"), format!("need 1 <= i <= j <= {m}, got ({}, {})", b.i, b.j)))
        } else {
            Ok(())
        }
    };
    match f.format {
        EntryFormat::Cyclotomic => {
            let mut blocks = BTreeMap::new();
            for (t, b) in f.blocks.iter().enumerate() {
                check(b, t)?;
                let at = format!("blocks[{t}].matrix");
                let g = grid(&b.matrix, f.dims[b.i - 1], f.dims[b.j - 1], &at, |v, at| parse_cyclotomic(v, order, at))?;
                blocks.insert((b.i - 1, b.j - 1), g);
            }
            Ok(FormTuple::exact(f.dims, blocks)?)
        }
        EntryFormat::Complex => {
            let mut blocks = BTreeMap::new();
            for (t, b) in f.blocks.iter().enumerate() {
                check(b, t)?;
                let at = format!("blocks[{t}].matrix");
                let g = grid(&b.matrix, f.dims[b.i - 1], f.dims[b.j - 1], &at, parse_complex)?;
                blocks.insert((b.i - 1, b.j - 1), g);
            }
            Ok(FormTuple::float(f.dims, blocks)?)
        }
    }
}

pub fn load_forms(path: &Path) -> FormatResult<FormTuple> {
    parse_forms(&read_text(path)?)
}

/// `{"blocks": [P_1, ..., P_m]}` with integer matrices.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CertificateFile {
    pub blocks: Vec<Vec<Vec<i64>>>,
}

impl CertificateFile {
    pub fn from_certificate(c: &MetabolicCertificate) -> Self {
        Self {
            blocks: c.blocks.iter().map(|b| b.clone().into_rows()).collect(),
        }
    }
}

pub fn parse_certificate(text: &str) -> FormatResult<MetabolicCertificate> {
    let f: CertificateFile = from_json(text)?;
    let blocks = f
        .blocks
        .into_iter()
        .enumerate()
        .map(|(i, rows)| {
            if rows.is_empty() {
                Ok(Matrix::zeros(0, 0))
            } else {
                Matrix::from_rows(rows).map_err(|e| field(format!("blocks[{i}]"), e.to_string()))
            }
        })
        .collect::<FormatResult<Vec<_>>>()?;
    Ok(MetabolicCertificate::new(blocks))
}
