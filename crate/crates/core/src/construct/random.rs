use nalgebra::DMatrix;
use num_complex::Complex;
use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};
use crate::operator::random::{ginibre, sample_unitary, seeded_rng};
use crate::operator::HermitianOperator;
use crate::order::StochasticMap;
use crate::povm::Povm;
use crate::scalar::Float;
use crate::tolerance::Tolerances;

/// A random `k`-outcome POVM: Wishart elements `G_i` renormalized as
/// `S^{-1/2} G_i S^{-1/2}` with `S = Σ G_i`.
pub fn random_povm<T: Float>(d: usize, k: usize, seed: u64) -> Result<Povm<T>> {
    if d == 0 || k == 0 {
        return Err(Error::InvalidDimension {
            min: 1,
            got: d.min(k),
        });
    }
    let mut rng = seeded_rng(seed);
    let raw: Vec<HermitianOperator<T>> = (0..k)
        .map(|_| {
            let g = ginibre::<T, _>(d, &mut rng);
            HermitianOperator::hermitian_part(&(&g * g.adjoint()))
        })
        .collect();
    let total = raw
        .iter()
        .fold(HermitianOperator::zeros(d), |acc, g| &acc + g);
    let inv_sqrt = total.map_spectrum(|x| T::one() / x.sqrt());
    Povm::new(raw.iter().map(|g| inv_sqrt.sandwich(g)).collect())
}

/// A random projective measurement with `blocks` outcomes: the columns of a
/// Haar-random unitary, grouped into nonempty blocks at random.
pub fn random_projective<T: Float>(d: usize, blocks: usize, seed: u64) -> Result<Povm<T>> {
    if blocks == 0 || blocks > d {
        return Err(Error::OutOfRange(format!(
            "{blocks} blocks for dimension {d}"
        )));
    }
    let mut rng = seeded_rng(seed);
    let u = sample_unitary::<T, _>(d, &mut rng);
    // every block gets one index, the rest are scattered
    let mut order: Vec<usize> = (0..d).collect();
    order.shuffle(&mut rng);
    let mut owner = vec![0; d];
    for (pos, &k) in order.iter().enumerate() {
        owner[k] = if pos < blocks {
            pos
        } else {
            rng.random_range(0..blocks)
        };
    }
    let elements = (0..blocks)
        .map(|b| {
            let mut p = DMatrix::<Complex<T>>::zeros(d, d);
            for k in (0..d).filter(|&k| owner[k] == b) {
                let v = u.column(k);
                p += v * v.adjoint();
            }
            HermitianOperator::hermitian_part(&p)
        })
        .collect();
    Povm::new(elements)
}

/// A random column-stochastic matrix with entries drawn uniformly before
/// normalization.
pub fn random_stochastic_map<T: Float>(
    outputs: usize,
    inputs: usize,
    seed: u64,
) -> Result<StochasticMap<T>> {
    let mut rng = seeded_rng(seed);
    let mut m = DMatrix::from_fn(outputs, inputs, |_, _| T::lit(rng.random_range(0.0..1.0)));
    for mut col in m.column_iter_mut() {
        let s = col.sum();
        col /= s;
    }
    StochasticMap::new(m, &Tolerances::default())
}
