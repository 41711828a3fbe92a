//! JSON file formats for POVMs and states.
//!
//! POVM: `{"dim": d, "elements": [M_0, M_1, ...], "labels": [...]}` where each
//! matrix is row-major and each entry is `[re, im]`. States use the same
//! matrix encoding: `{"dim": d, "matrix": ρ}`. Labels are optional on input.

use nalgebra::DMatrix;
use num_complex::Complex;
use serde::{Deserialize, Serialize};

use super::Povm;
use crate::error::{Error, Result};
use crate::operator::{DensityMatrix, HermitianOperator};
use crate::scalar::Float;
use crate::tolerance::Tolerances;

/// Row-major matrix of `[re, im]` pairs.
pub type MatrixJson = Vec<Vec<[f64; 2]>>;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PovmFile {
    pub dim: usize,
    pub elements: Vec<MatrixJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StateFile {
    pub dim: usize,
    pub matrix: MatrixJson,
}

pub fn matrix_to_json<T: Float>(op: &HermitianOperator<T>) -> MatrixJson {
    let e = op.entries();
    (0..e.nrows())
        .map(|i| {
            (0..e.ncols())
                .map(|j| [e[(i, j)].re.as_f64(), e[(i, j)].im.as_f64()])
                .collect()
        })
        .collect()
}

pub fn matrix_from_json<T: Float>(
    m: &MatrixJson,
    dim: usize,
    tol: &Tolerances<T>,
) -> Result<HermitianOperator<T>> {
    if m.len() != dim {
        return Err(Error::Parse(format!(
            "expected {dim} rows, found {}",
            m.len()
        )));
    }
    if let Some(row) = m.iter().find(|r| r.len() != dim) {
        return Err(Error::Parse(format!(
            "expected {dim} columns, found {}",
            row.len()
        )));
    }
    let entries = DMatrix::from_fn(dim, dim, |i, j| {
        let [re, im] = m[i][j];
        Complex::new(T::lit(re), T::lit(im))
    });
    HermitianOperator::new(entries, tol.herm)
}

impl<T: Float> Povm<T> {
    pub fn to_file(&self) -> PovmFile {
        PovmFile {
            dim: self.dim(),
            elements: self.elements().iter().map(matrix_to_json).collect(),
            labels: Some(self.labels().to_vec()),
        }
    }

    /// Parses shapes and Hermiticity. Positivity and completeness are left to
    /// [`validate`](super::validate).
    pub fn from_file(file: &PovmFile, tol: &Tolerances<T>) -> Result<Self> {
        if file.dim == 0 {
            return Err(Error::Parse("dim must be positive".into()));
        }
        let elements = file
            .elements
            .iter()
            .map(|m| matrix_from_json(m, file.dim, tol))
            .collect::<Result<Vec<_>>>()?;
        match &file.labels {
            Some(labels) => Povm::with_labels(elements, labels.clone()),
            None => Povm::new(elements),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_file()).expect("POVM serialization cannot fail")
    }

    pub fn from_json(s: &str, tol: &Tolerances<T>) -> Result<Self> {
        let file: PovmFile = serde_json::from_str(s)?;
        Self::from_file(&file, tol)
    }
}

impl<T: Float> DensityMatrix<T> {
    pub fn to_file(&self) -> StateFile {
        StateFile {
            dim: self.dim(),
            matrix: matrix_to_json(self.as_operator()),
        }
    }

    pub fn from_file(file: &StateFile, tol: &Tolerances<T>) -> Result<Self> {
        if file.dim == 0 {
            return Err(Error::Parse("dim must be positive".into()));
        }
        let op = matrix_from_json(&file.matrix, file.dim, tol)?;
        DensityMatrix::new(op, tol)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_file()).expect("state serialization cannot fail")
    }

    pub fn from_json(s: &str, tol: &Tolerances<T>) -> Result<Self> {
        let file: StateFile = serde_json::from_str(s)?;
        Self::from_file(&file, tol)
    }
}
