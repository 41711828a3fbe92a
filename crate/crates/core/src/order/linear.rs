use nalgebra::DMatrix;
use serde::Serialize;

use crate::error::Result;
use crate::operator::{
    orthonormalize, project_residual, DensityMatrix, HermitianBasis, HermitianOperator,
    TracelessHermitian,
};
use crate::povm::Povm;
use crate::scalar::Float;
use crate::serde_util;
use crate::tolerance::Tolerances;

/// `N_j = Σ_i α_{ji} M_i`, with rows indexing `N` and columns indexing `M`.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(bound = "")]
pub struct LinearRelation<T: Float> {
    #[serde(serialize_with = "serde_util::matrix")]
    pub alpha: DMatrix<T>,
    /// `‖α‖ = Σ_{ji} |α_{ji}|`.
    #[serde(serialize_with = "serde_util::scalar")]
    pub entry_l1_norm: T,
    /// Largest Hilbert–Schmidt residual `‖N_j − Σ_i α_{ji} M_i‖`.
    #[serde(serialize_with = "serde_util::scalar")]
    pub max_residual: T,
}

impl<T: Float> LinearRelation<T> {
    pub fn from_alpha(alpha: DMatrix<T>, n: &Povm<T>, m: &Povm<T>) -> Result<Self> {
        n.check_same_dim(m)?;
        let mut max_residual = T::zero();
        for (j, nj) in n.elements().iter().enumerate() {
            let mut r = nj.clone();
            for (i, mi) in m.elements().iter().enumerate() {
                r = &r - &mi.scale(alpha[(j, i)]);
            }
            max_residual = max_residual.max(r.hs_norm());
        }
        let entry_l1_norm = alpha.iter().fold(T::zero(), |acc, a| acc + a.abs());
        Ok(Self {
            alpha,
            entry_l1_norm,
            max_residual,
        })
    }

    /// `Σ_i α_{ji} M_i`.
    pub fn reconstruct(&self, m: &Povm<T>, j: usize) -> HermitianOperator<T> {
        m.elements()
            .iter()
            .enumerate()
            .fold(HermitianOperator::zeros(m.dim()), |acc, (i, mi)| {
                &acc + &mi.scale(self.alpha[(j, i)])
            })
    }
}

/// Least-squares fit of each `N_j` against the elements of `M` (minimum-norm
/// when `M` is linearly dependent). Always succeeds for matching dimensions.
pub fn fit_linear<T: Float>(
    n: &Povm<T>,
    m: &Povm<T>,
    tol: &Tolerances<T>,
) -> Result<(LinearRelation<T>, Vec<T>)> {
    n.check_same_dim(m)?;
    let basis = HermitianBasis::<T>::new(m.dim());
    let a = basis.coordinate_matrix(m.elements())?;
    let b = basis.coordinate_matrix(n.elements())?;
    let svd = a.clone().svd(true, true);
    let smax = svd
        .singular_values
        .iter()
        .fold(T::zero(), |acc, &s| acc.max(s));
    let x = svd
        .solve(&b, tol.span * smax)
        .expect("both singular factors were requested");
    let alpha = x.transpose();
    let residuals: Vec<T> = (0..n.len())
        .map(|j| {
            let r = &a * alpha.row(j).transpose() - b.column(j);
            r.norm()
        })
        .collect();
    let relation = LinearRelation::from_alpha(alpha, n, m)?;
    Ok((relation, residuals))
}

/// The relation `N ⋑ M`, present iff every `N_j` lies in the span of `M`
/// within `tol_span` (relative to `‖N_j‖`).
pub fn decide_linear<T: Float>(
    n: &Povm<T>,
    m: &Povm<T>,
    tol: &Tolerances<T>,
) -> Result<Option<LinearRelation<T>>> {
    let (relation, residuals) = fit_linear(n, m, tol)?;
    let inside = n
        .elements()
        .iter()
        .zip(&residuals)
        .all(|(nj, &r)| r <= tol.span * nj.hs_norm());
    Ok(inside.then_some(relation))
}

/// A state `σ = (𝟙 + εx)/d` with `x ⊥ span(M)` and `x` not orthogonal to
/// `span(N)`, so that `M` sees `σ` as maximally mixed while `N` does not.
///
/// Absent when `span(N) ⊆ span(M)` within `tol_span`.
pub fn span_witness<T: Float>(
    n: &Povm<T>,
    m: &Povm<T>,
    tol: &Tolerances<T>,
) -> Result<Option<DensityMatrix<T>>> {
    n.check_same_dim(m)?;
    let span = orthonormalize(m.elements(), tol.span)?;
    for nj in n.elements() {
        let proj = project_residual(nj, &span)?;
        if proj.residual_norm > tol.span * nj.hs_norm() {
            let x = TracelessHermitian::project(&proj.residual);
            let lmin = x.as_operator().min_eigenvalue();
            let eps = if lmin < T::zero() {
                T::lit(0.9) / lmin.abs()
            } else {
                T::one()
            };
            let d = T::from_count(m.dim());
            let op = &HermitianOperator::identity(m.dim()) + &x.as_operator().scale(eps);
            return Ok(Some(DensityMatrix::new_unchecked(op.scale(T::one() / d))));
        }
    }
    Ok(None)
}
