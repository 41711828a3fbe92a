use nalgebra::{DMatrix, DVector};
use num_complex::Complex;

use super::HermitianOperator;
use crate::error::{Error, Result};
use crate::scalar::Float;

/// Hilbert–Schmidt-orthonormal coordinate basis of the `d²`-dimensional real
/// space of Hermitian `d×d` operators.
///
/// Ordering is fixed: `𝟙/√d` first, then for each pair `j < k` (row-major) the
/// symmetric and antisymmetric off-diagonal generators, then the `d − 1`
/// diagonal generators of the generalized Gell-Mann family.
#[derive(Debug, Clone)]
pub struct HermitianBasis<T: Float> {
    dim: usize,
    elements: Vec<HermitianOperator<T>>,
}

impl<T: Float> HermitianBasis<T> {
    pub fn new(dim: usize) -> Self {
        let d = dim;
        let one = Complex::new(T::one(), T::zero());
        let i = Complex::new(T::zero(), T::one());
        let inv_sqrt2 = T::one() / T::lit(2.0).sqrt();
        let mut elements = Vec::with_capacity(d * d);
        elements.push(HermitianOperator::identity(d).scale(T::one() / T::from_count(d).sqrt()));
        for j in 0..d {
            for k in (j + 1)..d {
                let mut s = DMatrix::zeros(d, d);
                s[(j, k)] = one;
                s[(k, j)] = one;
                elements.push(HermitianOperator::hermitian_part(&s).scale(inv_sqrt2));
                let mut a = DMatrix::zeros(d, d);
                a[(j, k)] = -i;
                a[(k, j)] = i;
                elements.push(HermitianOperator::hermitian_part(&a).scale(inv_sqrt2));
            }
        }
        for l in 1..d {
            let mut diag = vec![T::zero(); d];
            for x in diag.iter_mut().take(l) {
                *x = T::one();
            }
            diag[l] = -T::from_count(l);
            let norm = (T::from_count(l) * T::from_count(l + 1)).sqrt();
            elements.push(HermitianOperator::diagonal(&diag).scale(T::one() / norm));
        }
        Self { dim, elements }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Number of basis operators, `d²`.
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[HermitianOperator<T>] {
        &self.elements
    }

    /// Real coordinates `c_b = tr(B_b a)`.
    pub fn coordinates(&self, a: &HermitianOperator<T>) -> Result<DVector<T>> {
        if a.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: a.dim(),
            });
        }
        Ok(DVector::from_iterator(
            self.elements.len(),
            self.elements.iter().map(|b| b.trace_product(a)),
        ))
    }

    /// Inverse of [`coordinates`](Self::coordinates).
    pub fn operator(&self, coords: &DVector<T>) -> Result<HermitianOperator<T>> {
        if coords.len() != self.elements.len() {
            return Err(Error::LengthMismatch(coords.len(), self.elements.len()));
        }
        let mut acc = HermitianOperator::zeros(self.dim);
        for (b, &c) in self.elements.iter().zip(coords.iter()) {
            acc = &acc + &b.scale(c);
        }
        Ok(acc)
    }

    /// Column matrix whose `k`-th column holds the coordinates of `ops[k]`.
    pub fn coordinate_matrix(&self, ops: &[HermitianOperator<T>]) -> Result<DMatrix<T>> {
        let mut m = DMatrix::zeros(self.elements.len(), ops.len());
        for (k, op) in ops.iter().enumerate() {
            m.set_column(k, &self.coordinates(op)?);
        }
        Ok(m)
    }
}
