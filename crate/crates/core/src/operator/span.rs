use super::{hs_inner_unchecked, HermitianOperator};
use crate::error::{Error, Result};
use crate::scalar::Float;

/// Hilbert–Schmidt-orthonormal basis of the real span of a set of operators.
#[derive(Debug, Clone)]
pub struct OperatorSpanBasis<T: Float> {
    dim: usize,
    basis: Vec<HermitianOperator<T>>,
}

impl<T: Float> OperatorSpanBasis<T> {
    pub fn empty(dim: usize) -> Self {
        Self {
            dim,
            basis: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn vectors(&self) -> &[HermitianOperator<T>] {
        &self.basis
    }

    /// Subtracts the projection onto the span with two sweeps of modified
    /// Gram–Schmidt.
    fn residual(&self, a: &HermitianOperator<T>) -> (Vec<T>, HermitianOperator<T>) {
        let mut coeffs = vec![T::zero(); self.basis.len()];
        let mut r = a.clone();
        for _ in 0..2 {
            for (c, b) in coeffs.iter_mut().zip(&self.basis) {
                let proj = hs_inner_unchecked(b, &r);
                *c += proj;
                r = &r - &b.scale(proj);
            }
        }
        (coeffs, r)
    }
}

/// Result of projecting an operator onto a span.
#[derive(Debug, Clone)]
pub struct Projection<T: Float> {
    /// Coefficients on the orthonormal basis vectors.
    pub coefficients: Vec<T>,
    /// The component orthogonal to the span.
    pub residual: HermitianOperator<T>,
    /// Hilbert–Schmidt norm of `residual`.
    pub residual_norm: T,
}

/// Modified Gram–Schmidt with reorthogonalization.
///
/// An input whose residual norm is at most `tol` times its own norm is treated
/// as dependent and dropped. Zero inputs are always dropped.
pub fn orthonormalize<T: Float>(
    ops: &[HermitianOperator<T>],
    tol: T,
) -> Result<OperatorSpanBasis<T>> {
    let Some(first) = ops.first() else {
        return Ok(OperatorSpanBasis::empty(0));
    };
    let dim = first.dim();
    let mut span = OperatorSpanBasis::empty(dim);
    for op in ops {
        if op.dim() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: op.dim(),
            });
        }
        let norm = op.hs_norm();
        if norm <= T::zero() {
            continue;
        }
        let (_, r) = span.residual(op);
        let rn = r.hs_norm();
        if rn > tol * norm {
            span.basis.push(r.scale(T::one() / rn));
        }
    }
    Ok(span)
}

/// Orthogonal projection of `a` onto the span of `basis`.
pub fn project_residual<T: Float>(
    a: &HermitianOperator<T>,
    basis: &OperatorSpanBasis<T>,
) -> Result<Projection<T>> {
    if !basis.is_empty() && a.dim() != basis.dim() {
        return Err(Error::DimensionMismatch {
            expected: basis.dim(),
            found: a.dim(),
        });
    }
    let (coefficients, residual) = basis.residual(a);
    let residual_norm = residual.hs_norm();
    Ok(Projection {
        coefficients,
        residual,
        residual_norm,
    })
}
