//! Dense Hermitian operators, Hilbert–Schmidt geometry and spectral queries.

mod basis;
pub mod random;
mod span;

use std::ops::{Add, Mul, Neg, Sub};

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::Float;
use crate::tolerance::Tolerances;

pub use basis::HermitianBasis;
pub use span::{orthonormalize, project_residual, OperatorSpanBasis, Projection};

/// A `d×d` complex matrix equal to its conjugate transpose.
///
/// The stored matrix is always exactly Hermitian: constructors check the input
/// against a tolerance and then replace it by its Hermitian part `(A + A†)/2`.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianOperator<T: Float> {
    entries: DMatrix<Complex<T>>,
}

impl<T: Float> HermitianOperator<T> {
    /// Checks `entries` against `tol_herm` and symmetrizes.
    pub fn new(entries: DMatrix<Complex<T>>, tol_herm: T) -> Result<Self> {
        let (r, c) = entries.shape();
        if r != c {
            return Err(Error::NotSquare(r, c));
        }
        if r == 0 {
            return Err(Error::InvalidDimension { min: 1, got: 0 });
        }
        let deviation = hermitian_deviation(&entries);
        if deviation > tol_herm {
            return Err(Error::NotHermitian(deviation.as_f64()));
        }
        Ok(Self::hermitian_part(&entries))
    }

    /// Builds `(A + A†)/2` without any check.
    pub fn hermitian_part(entries: &DMatrix<Complex<T>>) -> Self {
        let half = Complex::new(T::lit(0.5), T::zero());
        let sym = (entries + entries.adjoint()) * half;
        Self { entries: sym }
    }

    /// Real symmetric input.
    pub fn from_real(entries: &DMatrix<T>, tol_herm: T) -> Result<Self> {
        Self::new(entries.map(|x| Complex::new(x, T::zero())), tol_herm)
    }

    pub fn zeros(d: usize) -> Self {
        Self {
            entries: DMatrix::zeros(d, d),
        }
    }

    pub fn identity(d: usize) -> Self {
        Self {
            entries: DMatrix::identity(d, d),
        }
    }

    pub fn diagonal(diag: &[T]) -> Self {
        let d = diag.len();
        let mut m = DMatrix::zeros(d, d);
        for (i, &x) in diag.iter().enumerate() {
            m[(i, i)] = Complex::new(x, T::zero());
        }
        Self { entries: m }
    }

    /// The projector `|k⟩⟨k|` on the computational basis of `C^d`.
    pub fn basis_projector(d: usize, k: usize) -> Self {
        let mut m = DMatrix::zeros(d, d);
        m[(k, k)] = Complex::new(T::one(), T::zero());
        Self { entries: m }
    }

    /// `|ψ⟩⟨ψ|` for an arbitrary (not necessarily normalized) vector.
    pub fn ket_bra(psi: &DVector<Complex<T>>) -> Self {
        let m = psi * psi.adjoint();
        Self::hermitian_part(&m)
    }

    pub fn pauli_x() -> Self {
        Self::from_rows_unchecked(&[[(0.0, 0.0), (1.0, 0.0)], [(1.0, 0.0), (0.0, 0.0)]])
    }

    pub fn pauli_y() -> Self {
        Self::from_rows_unchecked(&[[(0.0, 0.0), (0.0, -1.0)], [(0.0, 1.0), (0.0, 0.0)]])
    }

    pub fn pauli_z() -> Self {
        Self::diagonal(&[T::one(), -T::one()])
    }

    fn from_rows_unchecked(rows: &[[(f64, f64); 2]; 2]) -> Self {
        let m = DMatrix::from_fn(2, 2, |i, j| {
            let (re, im) = rows[i][j];
            Complex::new(T::lit(re), T::lit(im))
        });
        Self::hermitian_part(&m)
    }

    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    pub fn entries(&self) -> &DMatrix<Complex<T>> {
        &self.entries
    }

    pub fn into_entries(self) -> DMatrix<Complex<T>> {
        self.entries
    }

    /// Real trace.
    pub fn trace(&self) -> T {
        (0..self.dim()).fold(T::zero(), |acc, i| acc + self.entries[(i, i)].re)
    }

    pub fn scale(&self, c: T) -> Self {
        Self {
            entries: self.entries.map(|z| z * c),
        }
    }

    /// Hilbert–Schmidt norm `sqrt(tr(A†A))`.
    pub fn hs_norm(&self) -> T {
        self.entries
            .iter()
            .fold(T::zero(), |acc, z| acc + z.norm_sqr())
            .sqrt()
    }

    /// Largest absolute entry.
    pub fn max_abs_entry(&self) -> T {
        self.entries
            .iter()
            .fold(T::zero(), |acc, z| acc.max(z.norm_sqr().sqrt()))
    }

    /// Eigenvalues in ascending order.
    pub fn eigenvalues(&self) -> Vec<T> {
        let mut ev: Vec<T> = self
            .entries
            .clone()
            .symmetric_eigenvalues()
            .iter()
            .copied()
            .collect();
        ev.sort_by(|a, b| a.partial_cmp(b).unwrap_or(std::cmp::Ordering::Equal));
        ev
    }

    /// Eigenvalues in ascending order with the matching unit eigenvectors.
    pub fn eigen(&self) -> Vec<(T, DVector<Complex<T>>)> {
        let eig = SymmetricEigen::new(self.entries.clone());
        let mut pairs: Vec<(T, DVector<Complex<T>>)> = eig
            .eigenvalues
            .iter()
            .zip(eig.eigenvectors.column_iter())
            .map(|(&l, v)| (l, v.into_owned()))
            .collect();
        pairs.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap_or(std::cmp::Ordering::Equal));
        pairs
    }

    pub fn min_eigenvalue(&self) -> T {
        min_eigenvalue(self)
    }

    /// Largest absolute eigenvalue.
    pub fn operator_norm(&self) -> T {
        self.eigenvalues()
            .into_iter()
            .fold(T::zero(), |acc, l| acc.max(l.abs()))
    }

    /// Applies `f` to the spectrum: `U f(D) U†`.
    pub fn map_spectrum(&self, f: impl Fn(T) -> T) -> Self {
        let eig = SymmetricEigen::new(self.entries.clone());
        let d = self.dim();
        let mut out = DMatrix::zeros(d, d);
        for (k, &l) in eig.eigenvalues.iter().enumerate() {
            let v = eig.eigenvectors.column(k);
            let w = Complex::new(f(l), T::zero());
            out += (v * v.adjoint()) * w;
        }
        Self::hermitian_part(&out)
    }

    /// Matrix product; not Hermitian in general.
    pub fn matmul(&self, other: &Self) -> DMatrix<Complex<T>> {
        &self.entries * &other.entries
    }

    /// `A B A` for Hermitian `A`, `B`.
    pub fn sandwich(&self, inner: &Self) -> Self {
        let m = &self.entries * &inner.entries * &self.entries;
        Self::hermitian_part(&m)
    }

    /// Real part of `tr(self · other)`.
    pub fn trace_product(&self, other: &Self) -> T {
        hs_inner_unchecked(self, other)
    }

    fn check_dim(&self, other: &Self) -> Result<()> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: other.dim(),
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        Ok(Self {
            entries: &self.entries + &other.entries,
        })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        Ok(Self {
            entries: &self.entries - &other.entries,
        })
    }
}

fn hermitian_deviation<T: Float>(m: &DMatrix<Complex<T>>) -> T {
    let n = m.nrows();
    let mut worst = T::zero();
    for i in 0..n {
        for j in i..n {
            worst = worst.max((m[(i, j)] - m[(j, i)].conj()).norm_sqr().sqrt());
        }
    }
    worst
}

impl<'a, T: Float> Add<&'a HermitianOperator<T>> for &'a HermitianOperator<T> {
    type Output = HermitianOperator<T>;
    fn add(self, rhs: &'a HermitianOperator<T>) -> HermitianOperator<T> {
        self.try_add(rhs).expect("operator dimensions differ")
    }
}

impl<'a, T: Float> Sub<&'a HermitianOperator<T>> for &'a HermitianOperator<T> {
    type Output = HermitianOperator<T>;
    fn sub(self, rhs: &'a HermitianOperator<T>) -> HermitianOperator<T> {
        self.try_sub(rhs).expect("operator dimensions differ")
    }
}

impl<T: Float> Mul<T> for &HermitianOperator<T> {
    type Output = HermitianOperator<T>;
    fn mul(self, c: T) -> HermitianOperator<T> {
        self.scale(c)
    }
}

impl<T: Float> Neg for &HermitianOperator<T> {
    type Output = HermitianOperator<T>;
    fn neg(self) -> HermitianOperator<T> {
        self.scale(-T::one())
    }
}

fn hs_inner_unchecked<T: Float>(a: &HermitianOperator<T>, b: &HermitianOperator<T>) -> T {
    a.entries
        .iter()
        .zip(b.entries.iter())
        .fold(T::zero(), |acc, (x, y)| acc + (x.conj() * y).re)
}

/// Hilbert–Schmidt inner product `tr(a† b)`, real for Hermitian inputs.
pub fn hs_inner<T: Float>(a: &HermitianOperator<T>, b: &HermitianOperator<T>) -> Result<T> {
    a.check_dim(b)?;
    Ok(hs_inner_unchecked(a, b))
}

/// Smallest eigenvalue, computed from the symmetric eigensolver.
pub fn min_eigenvalue<T: Float>(a: &HermitianOperator<T>) -> T {
    a.entries
        .clone()
        .symmetric_eigenvalues()
        .iter()
        .copied()
        .fold(
            T::max_value().unwrap_or_else(|| T::lit(f64::MAX)),
            |acc, l| acc.min(l),
        )
}

/// Half the ℓ1 distance between two probability vectors.
pub fn prob_trace_distance<T: Float>(p: &[T], q: &[T]) -> Result<T> {
    if p.len() != q.len() {
        return Err(Error::LengthMismatch(p.len(), q.len()));
    }
    let l1 = p
        .iter()
        .zip(q)
        .fold(T::zero(), |acc, (&a, &b)| acc + (a - b).abs());
    Ok(l1 * T::lit(0.5))
}

/// A positive semidefinite operator of unit trace.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix<T: Float> {
    op: HermitianOperator<T>,
}

impl<T: Float> DensityMatrix<T> {
    pub fn new(op: HermitianOperator<T>, tol: &Tolerances<T>) -> Result<Self> {
        let tr = op.trace();
        if (tr - T::one()).abs() > tol.trace {
            return Err(Error::InvalidState(format!("trace {}", tr.as_f64())));
        }
        let lmin = op.min_eigenvalue();
        if lmin < -tol.psd {
            return Err(Error::InvalidState(format!(
                "minimum eigenvalue {:e}",
                lmin.as_f64()
            )));
        }
        Ok(Self { op })
    }

    /// Wraps an operator already known to be a state.
    pub(crate) fn new_unchecked(op: HermitianOperator<T>) -> Self {
        Self { op }
    }

    /// `𝟙/d`.
    pub fn maximally_mixed(d: usize) -> Self {
        Self {
            op: HermitianOperator::identity(d).scale(T::one() / T::from_count(d)),
        }
    }

    /// `|k⟩⟨k|`.
    pub fn basis_state(d: usize, k: usize) -> Self {
        Self {
            op: HermitianOperator::basis_projector(d, k),
        }
    }

    /// The normalized projector onto `psi`.
    pub fn pure(psi: &DVector<Complex<T>>) -> Result<Self> {
        let n2 = psi.iter().fold(T::zero(), |acc, z| acc + z.norm_sqr());
        if n2 <= T::zero() {
            return Err(Error::InvalidState("zero vector".into()));
        }
        let op = HermitianOperator::ket_bra(psi).scale(T::one() / n2);
        Ok(Self { op })
    }

    /// Convex mixture `w·self + (1−w)·other`.
    pub fn mix(&self, other: &Self, w: T) -> Result<Self> {
        let op = self.op.scale(w).try_add(&other.op.scale(T::one() - w))?;
        Ok(Self { op })
    }

    pub fn dim(&self) -> usize {
        self.op.dim()
    }

    pub fn as_operator(&self) -> &HermitianOperator<T> {
        &self.op
    }

    pub fn into_operator(self) -> HermitianOperator<T> {
        self.op
    }
}

/// A Hermitian operator of zero trace; a direction in state space.
#[derive(Debug, Clone, PartialEq)]
pub struct TracelessHermitian<T: Float> {
    op: HermitianOperator<T>,
}

impl<T: Float> TracelessHermitian<T> {
    pub fn new(op: HermitianOperator<T>, tol: &Tolerances<T>) -> Result<Self> {
        let tr = op.trace();
        if tr.abs() > tol.trace {
            return Err(Error::NotTraceless(tr.as_f64()));
        }
        Ok(Self { op })
    }

    /// Removes the trace: `A − tr(A)/d · 𝟙`.
    pub fn project(op: &HermitianOperator<T>) -> Self {
        let d = op.dim();
        let shift = HermitianOperator::identity(d).scale(op.trace() / T::from_count(d));
        Self { op: op - &shift }
    }

    pub fn zeros(d: usize) -> Self {
        Self {
            op: HermitianOperator::zeros(d),
        }
    }

    pub fn dim(&self) -> usize {
        self.op.dim()
    }

    pub fn as_operator(&self) -> &HermitianOperator<T> {
        &self.op
    }

    /// The point `𝟙/d + t·X` on the straight line through the maximally mixed state.
    ///
    /// Fails when the point is not positive semidefinite.
    pub fn point_on_line(&self, t: T, tol: &Tolerances<T>) -> Result<DensityMatrix<T>> {
        let d = self.dim();
        let mid = DensityMatrix::<T>::maximally_mixed(d);
        let op = mid.as_operator().try_add(&self.op.scale(t))?;
        if op.min_eigenvalue() < -tol.psd {
            return Err(Error::LeavesStateSpace(t.as_f64()));
        }
        Ok(DensityMatrix::new_unchecked(op))
    }
}
