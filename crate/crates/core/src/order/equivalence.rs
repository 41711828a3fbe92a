use nalgebra::DMatrix;

use super::stochastic::StochasticMap;
use crate::error::{Error, Result};
use crate::operator::random::{derive_seed, random_traceless};
use crate::operator::HermitianOperator;
use crate::povm::canonical::{proportionality_gap, same_atoms};
use crate::povm::{canonical_form, CanonicalForm, Povm};
use crate::scalar::Float;
use crate::tolerance::Tolerances;

/// `N ≫ M ≫ N`, decided by comparing canonical forms.
pub fn decide_equivalence<T: Float>(n: &Povm<T>, m: &Povm<T>, tol: &Tolerances<T>) -> Result<bool> {
    n.check_same_dim(m)?;
    Ok(same_atoms(
        &canonical_form(n, tol),
        &canonical_form(m, tol),
        tol,
    ))
}

/// Index of the atom of `to` matching each atom of `from`.
fn atom_matching<T: Float>(
    from: &CanonicalForm<T>,
    to: &CanonicalForm<T>,
    tol: &Tolerances<T>,
) -> Vec<usize> {
    let mut used = vec![false; to.len()];
    from.atoms()
        .iter()
        .map(|x| {
            let j = (0..to.len())
                .find(|&j| !used[j] && proportionality_gap(&x.mu, &to.atoms()[j].mu) <= tol.prop)
                .expect("forms were checked to match");
            used[j] = true;
            j
        })
        .collect()
}

/// `Λ_{j|i}` sending `src` to `dst`: each element of `src` is merged into its
/// atom, and each atom is split over the elements of `dst` proportional to it
/// with weights `tr(dst_j)/V(μ)`.
fn map_through_atoms<T: Float>(
    src: &Povm<T>,
    src_form: &CanonicalForm<T>,
    dst: &Povm<T>,
    dst_form: &CanonicalForm<T>,
    tol: &Tolerances<T>,
) -> DMatrix<T> {
    let matching = atom_matching(src_form, dst_form, tol);
    let dst_volumes = dst.volumes();
    let mut lambda = DMatrix::zeros(dst.len(), src.len());
    for (i, atom) in src_form.assignment().iter().enumerate() {
        match atom {
            // zero elements can be sent anywhere
            None => lambda[(0, i)] = T::one(),
            Some(a) => {
                let target = matching[*a];
                let v = dst_form.atoms()[target].volume;
                for (j, b) in dst_form.assignment().iter().enumerate() {
                    if *b == Some(target) {
                        lambda[(j, i)] = dst_volumes[j] / v;
                    }
                }
            }
        }
    }
    lambda
}

/// Explicit maps `(Λ_{M→N}, Λ_{N→M})` with `N_j = Σ_i Λ_{j|i} M_i` and
/// `M_i = Σ_j Λ'_{i|j} N_j`, composed through the shared canonical form.
/// Absent when the POVMs are not equivalent.
pub fn equivalence_witness_maps<T: Float>(
    n: &Povm<T>,
    m: &Povm<T>,
    tol: &Tolerances<T>,
) -> Result<Option<(StochasticMap<T>, StochasticMap<T>)>> {
    n.check_same_dim(m)?;
    let fn_ = canonical_form(n, tol);
    let fm = canonical_form(m, tol);
    if !same_atoms(&fn_, &fm, tol) {
        return Ok(None);
    }
    let m_to_n = StochasticMap::new(map_through_atoms(m, &fm, n, &fn_, tol), tol)?;
    let n_to_m = StochasticMap::new(map_through_atoms(n, &fn_, m, &fm, tol), tol)?;
    Ok(Some((m_to_n, n_to_m)))
}

/// Randomized moment test of equivalence: with merged atoms `μ_k` of both
/// POVMs and a random direction `X`, checks that `Σ_k [V_M(μ_k) − V_N(μ_k)] r_kⁿ`
/// vanishes for `n = 2 … K+1+slack`, where `r_k = ⟨μ_k, X⟩` are required to be
/// nonzero and pairwise distinct.
pub fn moment_equality_test<T: Float>(
    n: &Povm<T>,
    m: &Povm<T>,
    trials: usize,
    max_order_slack: usize,
    seed: u64,
    tol: &Tolerances<T>,
) -> Result<bool> {
    n.check_same_dim(m)?;
    let d = m.dim();
    // merged atoms: (μ, V_M, V_N)
    let mut atoms: Vec<(HermitianOperator<T>, T, T)> = Vec::new();
    for (form, is_m) in [
        (canonical_form(m, tol), true),
        (canonical_form(n, tol), false),
    ] {
        for a in form.atoms() {
            let k = match atoms
                .iter()
                .position(|(mu, _, _)| proportionality_gap(mu, &a.mu) <= tol.prop)
            {
                Some(k) => k,
                None => {
                    atoms.push((a.mu.clone(), T::zero(), T::zero()));
                    atoms.len() - 1
                }
            };
            if is_m {
                atoms[k].1 += a.volume;
            } else {
                atoms[k].2 += a.volume;
            }
        }
    }
    if d == 1 {
        // a single atom (the identity) with volume 1 on both sides
        return Ok(atoms.iter().all(|(_, vm, vn)| (*vm - *vn).abs() <= tol.vol));
    }
    let k = atoms.len();
    let max_order = k + 1 + max_order_slack;
    let mut draw = 0u64;
    for _ in 0..trials {
        let r = loop {
            if draw > 1000 * trials as u64 + 1000 {
                return Err(Error::ResamplingExhausted(draw as usize));
            }
            let x = random_traceless::<T>(d, derive_seed(seed, draw))?;
            draw += 1;
            let r: Vec<T> = atoms
                .iter()
                .map(|(mu, _, _)| mu.trace_product(x.as_operator()))
                .collect();
            let scale = r.iter().fold(T::zero(), |acc, v| acc.max(v.abs()));
            let sep = T::lit(1e-3) * scale;
            let separated = r.iter().enumerate().all(|(a, &ra)| {
                ra.abs() > sep && r.iter().skip(a + 1).all(|&rb| (ra - rb).abs() > sep)
            });
            if separated {
                // normalize so that powers stay well scaled
                break r.iter().map(|&v| v / scale).collect::<Vec<_>>();
            }
        };
        for order in 2..=max_order {
            let mut diff = T::zero();
            let mut mass = T::zero();
            for ((_, vm, vn), &rk) in atoms.iter().zip(&r) {
                let p = rk.powi(order as i32);
                diff += (*vm - *vn) * p;
                mass += (*vm + *vn) * p.abs();
            }
            if diff.abs() > tol.vol * mass.max(T::one()) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::povm::trivial;

    type Op = HermitianOperator<f64>;

    fn tol() -> Tolerances<f64> {
        Tolerances::default()
    }

    fn noisy() -> Povm<f64> {
        let id = Op::identity(2).scale(0.25);
        Povm::new(vec![
            &Op::basis_projector(2, 0).scale(0.5) + &id,
            &Op::basis_projector(2, 1).scale(0.5) + &id,
        ])
        .unwrap()
    }

    fn computational() -> Povm<f64> {
        Povm::new(vec![Op::basis_projector(2, 0), Op::basis_projector(2, 1)]).unwrap()
    }

    #[test]
    fn split_and_permute_is_equivalent() {
        let a = &Op::basis_projector(2, 0).scale(0.6) + &Op::identity(2).scale(0.1);
        let b = &Op::identity(2) - &a;
        let m = Povm::new(vec![a.clone(), b.clone()]).unwrap();
        let n = Povm::new(vec![b, a.scale(0.5), a.scale(0.5)]).unwrap();
        assert!(decide_equivalence(&n, &m, &tol()).unwrap());
        assert!(moment_equality_test(&n, &m, 3, 2, 7, &tol()).unwrap());
        let (fwd, back) = equivalence_witness_maps(&n, &m, &tol()).unwrap().unwrap();
        assert!(fwd.residual(&n, &m).unwrap() < 1e-12);
        assert!(back.residual(&m, &n).unwrap() < 1e-12);
        // split weights ½, ½ and a merge column of ones
        let expected_fwd = DMatrix::from_row_slice(3, 2, &[0.0, 1.0, 0.5, 0.0, 0.5, 0.0]);
        assert!((fwd.matrix() - expected_fwd).amax() < 1e-12);
        let expected_back = DMatrix::from_row_slice(2, 3, &[0.0, 1.0, 1.0, 1.0, 0.0, 0.0]);
        assert!((back.matrix() - expected_back).amax() < 1e-12);
    }

    #[test]
    fn half_identities_are_trivial() {
        let halves =
            Povm::new(vec![Op::identity(2).scale(0.5), Op::identity(2).scale(0.5)]).unwrap();
        assert!(decide_equivalence(&halves, &trivial(2).unwrap(), &tol()).unwrap());
        assert!(moment_equality_test(&halves, &trivial(2).unwrap(), 2, 1, 1, &tol()).unwrap());
    }

    #[test]
    fn noise_breaks_equivalence() {
        assert!(!decide_equivalence(&computational(), &noisy(), &tol()).unwrap());
        assert!(equivalence_witness_maps(&computational(), &noisy(), &tol())
            .unwrap()
            .is_none());
        assert!(!moment_equality_test(&computational(), &noisy(), 3, 1, 11, &tol()).unwrap());
    }

    #[test]
    fn self_equivalence_with_zero_elements() {
        let m = noisy();
        let padded = Povm::new(vec![
            Op::zeros(2),
            m.elements()[1].clone(),
            m.elements()[0].clone(),
        ])
        .unwrap();
        assert!(decide_equivalence(&padded, &m, &tol()).unwrap());
        assert!(moment_equality_test(&m, &m, 2, 1, 3, &tol()).unwrap());
        let (fwd, back) = equivalence_witness_maps(&padded, &m, &tol())
            .unwrap()
            .unwrap();
        assert!(fwd.residual(&padded, &m).unwrap() < 1e-12);
        assert!(back.residual(&m, &padded).unwrap() < 1e-12);
    }
}
