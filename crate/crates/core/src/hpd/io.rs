//! Matrix JSON files: `{"dim": n, "real": [[..]..], "imag": [[..]..]}` with `imag` optional.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::matrix::HermitianMatrix;
use crate::error::{Error, Result};
use crate::numfmt::Sig17;

#[derive(Deserialize)]
#[serde(untagged)]
enum Entries {
    Nested(Vec<Vec<f64>>),
    Flat(Vec<f64>),
}

impl Entries {
    fn flatten(self, dim: usize, what: &str) -> Result<Vec<f64>> {
        let flat = match self {
            Entries::Nested(rows) => {
                if rows.len() != dim || rows.iter().any(|r| r.len() != dim) {
                    return Err(Error::Input(format!("{what} part is not {dim}x{dim}")));
                }
                rows.into_iter().flatten().collect()
            }
            Entries::Flat(v) => v,
        };
        if flat.len() != dim * dim {
            return Err(Error::Input(format!("{what} part is not {dim}x{dim}")));
        }
        Ok(flat)
    }
}

#[derive(Deserialize)]
struct MatrixFileIn {
    dim: usize,
    real: Entries,
    #[serde(default)]
    imag: Option<Entries>,
}

#[derive(Serialize)]
struct MatrixFileOut {
    dim: usize,
    real: Vec<Vec<Sig17>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    imag: Option<Vec<Vec<Sig17>>>,
}

/// Parses the matrix JSON format, rejecting non-Hermitian data.
pub fn matrix_from_json(text: &str) -> Result<HermitianMatrix> {
    let raw: MatrixFileIn =
        serde_json::from_str(text).map_err(|e| Error::Input(format!("matrix JSON: {e}")))?;
    if raw.dim == 0 {
        return Err(Error::Input("matrix JSON: dim must be positive".into()));
    }
    let real = raw.real.flatten(raw.dim, "real")?;
    let imag = raw.imag.map(|i| i.flatten(raw.dim, "imag")).transpose()?;
    HermitianMatrix::from_parts(raw.dim, &real, imag.as_deref())
}

/// Serializes with 17 significant digits; `imag` is omitted for real matrices.
pub fn matrix_to_json(x: &HermitianMatrix) -> String {
    let n = x.dim();
    let (re, im) = x.to_parts();
    let rows = |v: &[f64]| -> Vec<Vec<Sig17>> {
        v.chunks(n)
            .map(|r| r.iter().map(|&a| Sig17(a)).collect())
            .collect()
    };
    let out = MatrixFileOut {
        dim: n,
        real: rows(&re),
        imag: (!x.is_real()).then(|| rows(&im)),
    };
    serde_json::to_string_pretty(&out).expect("matrix serialization cannot fail")
}

pub fn read_matrix(path: &Path) -> Result<HermitianMatrix> {
    let text = fs::read_to_string(path)
        .map_err(|e| Error::Input(format!("cannot read {}: {e}", path.display())))?;
    matrix_from_json(&text)
}

pub fn write_matrix(path: &Path, x: &HermitianMatrix) -> std::io::Result<()> {
    let mut text = matrix_to_json(x);
    text.push('\n');
    fs::write(path, text)
}
