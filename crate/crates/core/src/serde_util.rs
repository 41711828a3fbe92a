//! `serialize_with` helpers for generic scalar fields.

use nalgebra::DMatrix;
use serde::ser::SerializeSeq;
use serde::Serializer;

use crate::operator::DensityMatrix;
use crate::scalar::Float;

pub(crate) fn scalar<T: Float, S: Serializer>(x: &T, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_f64(x.as_f64())
}

pub(crate) fn matrix<T: Float, S: Serializer>(m: &DMatrix<T>, s: S) -> Result<S::Ok, S::Error> {
    let mut seq = s.serialize_seq(Some(m.nrows()))?;
    for i in 0..m.nrows() {
        let row: Vec<f64> = (0..m.ncols()).map(|j| m[(i, j)].as_f64()).collect();
        seq.serialize_element(&row)?;
    }
    seq.end()
}

pub(crate) fn state<T: Float, S: Serializer>(
    rho: &DensityMatrix<T>,
    s: S,
) -> Result<S::Ok, S::Error> {
    serde::Serialize::serialize(&rho.to_file(), s)
}

pub(crate) fn opt_state<T: Float, S: Serializer>(
    rho: &Option<DensityMatrix<T>>,
    s: S,
) -> Result<S::Ok, S::Error> {
    match rho {
        Some(r) => s.serialize_some(&r.to_file()),
        None => s.serialize_none(),
    }
}
