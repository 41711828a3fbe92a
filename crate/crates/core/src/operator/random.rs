//! Seeded sampling of states, directions and unitaries.
//!
//! All samplers draw from a ChaCha8 stream, so outputs are reproducible across
//! platforms for a given seed.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use super::{DensityMatrix, HermitianOperator, TracelessHermitian};
use crate::error::{Error, Result};
use crate::scalar::Float;

/// State ensembles for [`random_density`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Ensemble {
    /// Haar-random rank-1 projectors.
    Pure,
    /// `G G† / tr(G G†)` with `G` square complex Gaussian.
    HilbertSchmidt,
}

pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Mixes a root seed and an index into an independent stream seed (splitmix64).
pub fn derive_seed(root: u64, index: u64) -> u64 {
    let mut z = root
        .wrapping_add(0x9E37_79B9_7F4A_7C15)
        .wrapping_add(index.wrapping_mul(0xBF58_476D_1CE4_E5B9));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

fn gaussian<T: Float, R: Rng + ?Sized>(rng: &mut R) -> T {
    T::lit(rng.sample::<f64, _>(StandardNormal))
}

fn complex_gaussian<T: Float, R: Rng + ?Sized>(rng: &mut R) -> Complex<T> {
    Complex::new(gaussian(rng), gaussian(rng))
}

pub fn ginibre<T: Float, R: Rng + ?Sized>(d: usize, rng: &mut R) -> DMatrix<Complex<T>> {
    DMatrix::from_fn(d, d, |_, _| complex_gaussian(rng))
}

pub fn sample_density<T: Float, R: Rng + ?Sized>(
    d: usize,
    ensemble: Ensemble,
    rng: &mut R,
) -> Result<DensityMatrix<T>> {
    if d == 0 {
        return Err(Error::InvalidDimension { min: 1, got: 0 });
    }
    match ensemble {
        Ensemble::Pure => {
            let psi = DVector::from_fn(d, |_, _| complex_gaussian::<T, R>(rng));
            DensityMatrix::pure(&psi)
        }
        Ensemble::HilbertSchmidt => {
            let g = ginibre::<T, R>(d, rng);
            let op = HermitianOperator::hermitian_part(&(&g * g.adjoint()));
            let tr = op.trace();
            Ok(DensityMatrix::new_unchecked(op.scale(T::one() / tr)))
        }
    }
}

/// Gaussian Hermitian matrix with its trace removed.
pub fn sample_traceless<T: Float, R: Rng + ?Sized>(
    d: usize,
    rng: &mut R,
) -> Result<TracelessHermitian<T>> {
    if d < 2 {
        return Err(Error::InvalidDimension { min: 2, got: d });
    }
    let g = ginibre::<T, R>(d, rng);
    Ok(TracelessHermitian::project(
        &HermitianOperator::hermitian_part(&g),
    ))
}

/// Haar-random unitary from the QR decomposition of a Ginibre matrix.
pub fn sample_unitary<T: Float, R: Rng + ?Sized>(d: usize, rng: &mut R) -> DMatrix<Complex<T>> {
    let qr = ginibre::<T, R>(d, rng).qr();
    let (mut q, r) = qr.unpack();
    for k in 0..d {
        let rkk = r[(k, k)];
        let n = rkk.norm_sqr().sqrt();
        if n > T::zero() {
            let phase = rkk / Complex::new(n, T::zero());
            let mut col = q.column_mut(k);
            col *= phase;
        }
    }
    q
}

/// Deterministic density matrix for `(d, ensemble, seed)`.
pub fn random_density<T: Float>(
    d: usize,
    ensemble: Ensemble,
    seed: u64,
) -> Result<DensityMatrix<T>> {
    sample_density(d, ensemble, &mut seeded_rng(seed))
}

/// Deterministic traceless Hermitian direction for `(d, seed)`.
pub fn random_traceless<T: Float>(d: usize, seed: u64) -> Result<TracelessHermitian<T>> {
    sample_traceless(d, &mut seeded_rng(seed))
}
