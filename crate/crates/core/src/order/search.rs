//! Deterministic falsification search for witnesses of entropic order violations.
//!
//! Candidates are evaluated in a fixed order (structured states, then seeded
//! random samples, then local refinement); a candidate replaces the incumbent
//! only when it improves the violation by more than [`IMPROVEMENT`], so ties go
//! to the earliest candidate.

use nalgebra::DMatrix;
use num_complex::Complex;
use rand::Rng;
use serde::Serialize;

use crate::entropy::{observational_entropy, relative_entropy, EntropyConfig, ExtendedReal};
use crate::operator::random::{
    derive_seed, sample_density, sample_traceless, seeded_rng, Ensemble,
};
use crate::operator::{DensityMatrix, HermitianOperator};
use crate::povm::Povm;
use crate::scalar::Float;
use crate::serde_util;
use crate::tolerance::Tolerances;

const IMPROVEMENT: f64 = 1e-12;
const REFINE_SALT: u64 = 0x5e_ed0f_c11b;

/// Sampling limits for the falsification search.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SearchBudget {
    /// Random states (entropy) or state pairs (relative entropy).
    pub samples: usize,
    /// Hill-climbing steps around the best sample.
    pub refine_steps: usize,
    pub seed: u64,
}

impl Default for SearchBudget {
    fn default() -> Self {
        Self {
            samples: 20_000,
            refine_steps: 200,
            seed: 0,
        }
    }
}

impl SearchBudget {
    pub fn with_seed(seed: u64) -> Self {
        Self {
            seed,
            ..Self::default()
        }
    }
}

/// Evaluations actually spent.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct BudgetUsed {
    pub structured: usize,
    pub samples: usize,
    pub refine_steps: usize,
}

/// A state (or pair) at which a universal inequality fails by `margin > 0`.
///
/// For the entropy order the margin is `S_M(ρ) − S_N(ρ)`; for the relative
/// entropy order it is `D_N(ρ‖σ) − D_M(ρ‖σ)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Witness<T: Float> {
    #[serde(serialize_with = "serde_util::state")]
    pub rho: DensityMatrix<T>,
    #[serde(serialize_with = "serde_util::opt_state")]
    pub sigma: Option<DensityMatrix<T>>,
    pub margin: ExtendedReal<T>,
}

/// `S_M(ρ) − S_N(ρ)`.
pub fn entropy_gap<T: Float>(
    n: &Povm<T>,
    m: &Povm<T>,
    rho: &DensityMatrix<T>,
    cfg: &EntropyConfig,
    tol: &Tolerances<T>,
) -> Option<T> {
    let sn = observational_entropy(n, rho, cfg, tol).ok()?;
    let sm = observational_entropy(m, rho, cfg, tol).ok()?;
    Some(sm - sn)
}

/// `D_N(ρ‖σ) − D_M(ρ‖σ)`; `None` when `D_M` is infinite (no violation possible).
pub fn relent_gap<T: Float>(
    n: &Povm<T>,
    m: &Povm<T>,
    rho: &DensityMatrix<T>,
    sigma: &DensityMatrix<T>,
    cfg: &EntropyConfig,
    tol: &Tolerances<T>,
) -> Option<ExtendedReal<T>> {
    let dn = relative_entropy(n, rho, sigma, cfg, tol).ok()?;
    let dm = relative_entropy(m, rho, sigma, cfg, tol).ok()?;
    dn.excess_over(&dm)
}

fn improves<T: Float>(candidate: ExtendedReal<T>, incumbent: Option<ExtendedReal<T>>) -> bool {
    match (candidate, incumbent) {
        (_, None) => true,
        (ExtendedReal::PosInfinity, Some(ExtendedReal::Finite(_))) => true,
        (ExtendedReal::Finite(a), Some(ExtendedReal::Finite(b))) => a > b + T::lit(IMPROVEMENT),
        _ => false,
    }
}

/// Pure states along eigenvectors of every element of both POVMs, largest
/// eigenvalue first within each element, without repeats.
fn structured_states<T: Float>(povms: &[&Povm<T>]) -> Vec<DensityMatrix<T>> {
    let mut out: Vec<DensityMatrix<T>> = Vec::new();
    for p in povms {
        for e in p.elements() {
            let mut pairs = e.eigen();
            pairs.reverse();
            for (_, v) in pairs {
                let Ok(rho) = DensityMatrix::pure(&v) else {
                    continue;
                };
                if out
                    .iter()
                    .all(|s| (s.as_operator() - rho.as_operator()).hs_norm() > T::lit(1e-9))
                {
                    out.push(rho);
                }
            }
        }
    }
    out
}

fn sample_state<T: Float, R: Rng>(d: usize, kind: usize, rng: &mut R) -> Option<DensityMatrix<T>> {
    match kind % 3 {
        0 => sample_density(d, Ensemble::Pure, rng).ok(),
        1 => sample_density(d, Ensemble::HilbertSchmidt, rng).ok(),
        _ => {
            if d < 2 {
                return Some(DensityMatrix::maximally_mixed(d));
            }
            let x = sample_traceless::<T, R>(d, rng).ok()?;
            let lmin = x.as_operator().min_eigenvalue().abs();
            let u: f64 = rng.random_range(0.0..1.0);
            let eps = T::lit(0.999 * (1.0 - u)) / lmin.max(T::lit(1e-300));
            let op = &HermitianOperator::identity(d) + &x.as_operator().scale(eps);
            Some(DensityMatrix::new_unchecked(
                op.scale(T::one() / T::from_count(d)),
            ))
        }
    }
}

/// Random nearby state: a small unitary rotation (even steps) or a small
/// admixture of a random pure state (odd steps).
fn perturb<T: Float, R: Rng>(
    rho: &DensityMatrix<T>,
    step: usize,
    rng: &mut R,
) -> Option<DensityMatrix<T>> {
    let d = rho.dim();
    let w = T::lit(0.2 * 0.98f64.powi(step as i32));
    if step.is_multiple_of(2) {
        let h = sample_traceless::<T, R>(d, rng).ok()?;
        let norm = h.as_operator().operator_norm();
        if norm <= T::zero() {
            return None;
        }
        let half = Complex::new(T::zero(), w / (T::lit(2.0) * norm));
        let hm = h.as_operator().entries().map(|z| z * half);
        let id = DMatrix::<Complex<T>>::identity(d, d);
        let u = (&id - &hm) * (&id + &hm).try_inverse()?;
        let rotated = &u * rho.as_operator().entries() * u.adjoint();
        let op = HermitianOperator::hermitian_part(&rotated);
        let tr = op.trace();
        Some(DensityMatrix::new_unchecked(op.scale(T::one() / tr)))
    } else {
        let tau = sample_density::<T, R>(d, Ensemble::Pure, rng).ok()?;
        rho.mix(&tau, T::one() - w).ok()
    }
}

/// Looks for `ρ` with `S_N(ρ) < S_M(ρ)`; returns the best candidate found
/// (whatever its sign) and the evaluations spent.
pub fn search_entropy_witness<T: Float>(
    n: &Povm<T>,
    m: &Povm<T>,
    budget: &SearchBudget,
    cfg: &EntropyConfig,
    tol: &Tolerances<T>,
) -> (Option<Witness<T>>, BudgetUsed) {
    let d = n.dim();
    let mut used = BudgetUsed::default();
    let mut best: Option<(T, DensityMatrix<T>)> = None;
    let consider = |rho: DensityMatrix<T>, best: &mut Option<(T, DensityMatrix<T>)>| {
        if let Some(g) = entropy_gap(n, m, &rho, cfg, tol) {
            if improves(
                ExtendedReal::Finite(g),
                best.as_ref().map(|b| ExtendedReal::Finite(b.0)),
            ) {
                *best = Some((g, rho));
            }
        }
    };
    let mut candidates = structured_states(&[n, m]);
    candidates.push(DensityMatrix::maximally_mixed(d));
    for rho in candidates {
        used.structured += 1;
        consider(rho, &mut best);
    }
    for i in 0..budget.samples {
        used.samples += 1;
        let mut rng = seeded_rng(derive_seed(budget.seed, i as u64));
        if let Some(rho) = sample_state(d, i, &mut rng) {
            consider(rho, &mut best);
        }
    }
    if best.is_some() {
        for step in 0..budget.refine_steps {
            used.refine_steps += 1;
            let mut rng = seeded_rng(derive_seed(budget.seed ^ REFINE_SALT, step as u64));
            let current = best.as_ref().expect("checked above").1.clone();
            if let Some(rho) = perturb(&current, step, &mut rng) {
                consider(rho, &mut best);
            }
        }
    }
    let witness = best.map(|(g, rho)| Witness {
        rho,
        sigma: None,
        margin: ExtendedReal::Finite(g),
    });
    (witness, used)
}

/// Looks for `(ρ, σ)` with `D_N(ρ‖σ) > D_M(ρ‖σ)`; returns the best candidate.
pub fn search_relent_witness<T: Float>(
    n: &Povm<T>,
    m: &Povm<T>,
    budget: &SearchBudget,
    cfg: &EntropyConfig,
    tol: &Tolerances<T>,
) -> (Option<Witness<T>>, BudgetUsed) {
    type Best<T> = Option<(ExtendedReal<T>, DensityMatrix<T>, DensityMatrix<T>)>;
    let d = n.dim();
    let mut used = BudgetUsed::default();
    let mut best: Best<T> = None;
    let consider = |rho: DensityMatrix<T>, sigma: DensityMatrix<T>, best: &mut Best<T>| {
        if let Some(g) = relent_gap(n, m, &rho, &sigma, cfg, tol) {
            if improves(g, best.as_ref().map(|b| b.0)) {
                *best = Some((g, rho, sigma));
            }
        }
    };
    let mut states = structured_states(&[n, m]);
    states.push(DensityMatrix::maximally_mixed(d));
    for (a, rho) in states.iter().enumerate() {
        for (b, sigma) in states.iter().enumerate() {
            if a != b {
                used.structured += 1;
                consider(rho.clone(), sigma.clone(), &mut best);
            }
        }
    }
    for i in 0..budget.samples {
        used.samples += 1;
        let mut rng = seeded_rng(derive_seed(budget.seed, i as u64));
        let rho = sample_state(d, i, &mut rng);
        let sigma = sample_state(d, i / 3, &mut rng);
        if let (Some(rho), Some(sigma)) = (rho, sigma) {
            consider(rho, sigma, &mut best);
        }
    }
    if matches!(best, Some((ExtendedReal::Finite(_), _, _))) {
        for step in 0..budget.refine_steps {
            used.refine_steps += 1;
            let mut rng = seeded_rng(derive_seed(budget.seed ^ REFINE_SALT, step as u64));
            let (_, rho, sigma) = best.clone().expect("checked above");
            let (rho, sigma) = if step % 4 < 2 {
                (perturb(&rho, step, &mut rng), Some(sigma))
            } else {
                (Some(rho), perturb(&sigma, step, &mut rng))
            };
            if let (Some(rho), Some(sigma)) = (rho, sigma) {
                consider(rho, sigma, &mut best);
            }
        }
    }
    let witness = best.map(|(g, rho, sigma)| Witness {
        rho,
        sigma: Some(sigma),
        margin: g,
    });
    (witness, used)
}

#[cfg(test)]
pub(crate) fn real_pure<T: Float>(v: &[f64]) -> DensityMatrix<T> {
    let psi = nalgebra::DVector::from_iterator(
        v.len(),
        v.iter().map(|&x| Complex::new(T::lit(x), T::zero())),
    );
    DensityMatrix::pure(&psi).expect("nonzero vector")
}
