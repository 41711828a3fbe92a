//! Generators for separating families, separation parameters and the fixture
//! registry of worked examples.

mod fixtures;
mod random;
mod reproduce;

pub use fixtures::{
    paper_example, ExampleName, ExpectedRelation, ExpectedValue, FixtureBundle, Quantity, Relation,
};
pub use random::{random_povm, random_projective, random_stochastic_map};
pub use reproduce::{reproduce, RelationCheck, ReproduceReport, ValueCheck};

use nalgebra::DMatrix;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::operator::HermitianOperator;
use crate::order::{decide_linear, LinearRelation, StochasticMap};
use crate::povm::{disjoint_convex, is_linearly_independent, trivial, validate, Povm};
use crate::scalar::Float;
use crate::serde_util;
use crate::tolerance::Tolerances;

/// `N_j = Σ_i Λ_{j|i} M_i`.
pub fn postprocess<T: Float>(m: &Povm<T>, lam: &StochasticMap<T>) -> Result<Povm<T>> {
    lam.apply(m)
}

/// `(N, M)` with `M_i = Σ_j Λ_{i|j} N_j` and `N_j = Σ_i α_{ji} M_i`.
#[derive(Debug, Clone, Serialize)]
#[serde(bound = "")]
pub struct ConstructedPair<T: Float> {
    #[serde(skip)]
    pub n: Povm<T>,
    #[serde(skip)]
    pub m: Povm<T>,
    pub lambda_map: StochasticMap<T>,
    pub alpha: LinearRelation<T>,
    /// Whether `α` is itself stochastic, i.e. whether `N` is a post-processing of `M`.
    pub alpha_is_stochastic: bool,
}

/// Applies an invertible square stochastic map to a linearly independent `n`
/// and records the inverse relation.
pub fn invertible_stochastic_pair<T: Float>(
    n: &Povm<T>,
    lam: &StochasticMap<T>,
    tol: &Tolerances<T>,
) -> Result<ConstructedPair<T>> {
    if lam.inputs() != lam.outputs() {
        return Err(Error::InvalidStochasticMap(format!(
            "{}×{} map is not square",
            lam.outputs(),
            lam.inputs()
        )));
    }
    if !is_linearly_independent(n, tol) {
        return Err(Error::LinearlyDependent);
    }
    let det = lam.matrix().determinant();
    if det.abs() <= tol.span {
        return Err(Error::SingularMap);
    }
    let inverse = lam
        .matrix()
        .clone()
        .try_inverse()
        .ok_or(Error::SingularMap)?;
    let m = postprocess(n, lam)?;
    let alpha_is_stochastic = StochasticMap::new(inverse.clone(), tol).is_ok();
    let alpha = LinearRelation::from_alpha(inverse, n, &m)?;
    Ok(ConstructedPair {
        n: n.clone(),
        m,
        lambda_map: lam.clone(),
        alpha,
        alpha_is_stochastic,
    })
}

/// `N = (A, B)` and `M = ((1−2ε)A + ε𝟙, (1−2ε)B + ε𝟙)`.
pub fn binary_epsilon_mix<T: Float>(
    a: &HermitianOperator<T>,
    b: &HermitianOperator<T>,
    eps: T,
    tol: &Tolerances<T>,
) -> Result<ConstructedPair<T>> {
    if !(eps > T::zero() && eps < T::lit(0.5)) {
        return Err(Error::OutOfRange(format!(
            "ε = {} not in (0, 1/2)",
            eps.as_f64()
        )));
    }
    let n = Povm::new(vec![a.clone(), b.clone()])?;
    let report = validate(&n, tol);
    if !report.is_valid() {
        return Err(Error::InvalidPovm(report.to_string()));
    }
    let keep = T::one() - eps;
    let lam = StochasticMap::new(DMatrix::from_row_slice(2, 2, &[keep, eps, eps, keep]), tol)?;
    invertible_stochastic_pair(&n, &lam, tol)
}

/// `λ′ = β/(2‖α‖²)` and `λ″ = (v/d)/(2‖α‖²)` for a pair `N ⋑ M`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(bound = "")]
pub struct SeparationParameters<T: Float> {
    #[serde(serialize_with = "serde_util::scalar")]
    pub alpha_norm: T,
    /// Smallest eigenvalue over the elements of `N`.
    #[serde(serialize_with = "serde_util::scalar")]
    pub beta: T,
    /// Smallest volume over the elements of `N`.
    #[serde(serialize_with = "serde_util::scalar")]
    pub vol_min: T,
    #[serde(serialize_with = "serde_util::scalar")]
    pub lambda_prime: T,
    #[serde(serialize_with = "serde_util::scalar")]
    pub lambda_double_prime: T,
}

pub fn separation_parameters<T: Float>(
    n: &Povm<T>,
    m: &Povm<T>,
    tol: &Tolerances<T>,
) -> Result<SeparationParameters<T>> {
    if !is_linearly_independent(m, tol) {
        return Err(Error::LinearlyDependent);
    }
    let relation = decide_linear(n, m, tol)?.ok_or(Error::NoLinearRelation)?;
    let min = |f: &dyn Fn(&HermitianOperator<T>) -> T| {
        n.elements()
            .iter()
            .map(f)
            .reduce(|a, b| a.min(b))
            .expect("POVMs are nonempty")
    };
    let beta = min(&|e| e.min_eigenvalue()).max(T::zero());
    let vol_min = min(&|e| e.trace()).max(T::zero());
    let a = relation.entry_l1_norm;
    let denom = T::lit(2.0) * a * a;
    Ok(SeparationParameters {
        alpha_norm: a,
        beta,
        vol_min,
        lambda_prime: beta / denom,
        lambda_double_prime: vol_min / T::from_count(n.dim()) / denom,
    })
}

/// `N_λ = λN ⊕ (1−λ)𝟙`, with the identity element last.
pub fn build_n_lambda<T: Float>(n: &Povm<T>, lambda: T) -> Result<Povm<T>> {
    disjoint_convex(lambda, n, &trivial(n.dim())?)
}

#[cfg(test)]
mod tests {
    use super::*;

    type Op = HermitianOperator<f64>;

    fn tol() -> Tolerances<f64> {
        Tolerances::default()
    }

    fn computational() -> Povm<f64> {
        Povm::new(vec![Op::basis_projector(2, 0), Op::basis_projector(2, 1)]).unwrap()
    }

    fn close(a: &Povm<f64>, b: &Povm<f64>) -> bool {
        a.len() == b.len()
            && a.elements()
                .iter()
                .zip(b.elements())
                .all(|(x, y)| (x - y).hs_norm() < 1e-12)
    }

    #[test]
    fn postprocess_examples() {
        let m = computational();
        assert!(close(
            &postprocess(&m, &StochasticMap::identity(2)).unwrap(),
            &m
        ));
        let merge = StochasticMap::new(DMatrix::from_element(1, 2, 1.0), &tol()).unwrap();
        assert!(close(
            &postprocess(&m, &merge).unwrap(),
            &trivial(2).unwrap()
        ));
        let lam = StochasticMap::new(
            DMatrix::from_row_slice(2, 2, &[0.75, 0.25, 0.25, 0.75]),
            &tol(),
        )
        .unwrap();
        let noisy = postprocess(&m, &lam).unwrap();
        let id = Op::identity(2).scale(0.25);
        assert!(
            (&noisy.elements()[0] - &(&Op::basis_projector(2, 0).scale(0.5) + &id)).hs_norm()
                < 1e-15
        );
    }

    #[test]
    fn inverse_relations() {
        let pair =
            invertible_stochastic_pair(&computational(), &StochasticMap::identity(2), &tol())
                .unwrap();
        assert!(pair.alpha_is_stochastic);
        assert!((pair.alpha.alpha.clone() - DMatrix::identity(2, 2)).amax() < 1e-15);

        let a = Op::basis_projector(2, 0);
        let b = Op::basis_projector(2, 1);
        let pair = binary_epsilon_mix(&a, &b, 0.25, &tol()).unwrap();
        assert!(!pair.alpha_is_stochastic);
        let expected = DMatrix::from_row_slice(2, 2, &[1.5, -0.5, -0.5, 1.5]);
        assert!((pair.alpha.alpha.clone() - expected).amax() < 1e-12);
        for eps in [0.05, 0.1, 0.25, 0.4] {
            let pair = binary_epsilon_mix(&a, &b, eps, &tol()).unwrap();
            assert!((pair.alpha.entry_l1_norm - 2.0 / (1.0 - 2.0 * eps)).abs() < 1e-9);
            assert!(pair.alpha.max_residual < 1e-12);
        }
        assert!(binary_epsilon_mix(&a, &b, 0.0, &tol()).is_err());
        assert!(binary_epsilon_mix(&a, &b, 0.5, &tol()).is_err());
        let singular = StochasticMap::new(DMatrix::from_element(2, 2, 0.5), &tol()).unwrap();
        assert!(matches!(
            invertible_stochastic_pair(&computational(), &singular, &tol()),
            Err(Error::SingularMap)
        ));
    }

    #[test]
    fn repeated_mixing_gives_second_pair() {
        let a = Op::basis_projector(2, 0);
        let b = Op::basis_projector(2, 1);
        let first = binary_epsilon_mix(&a, &b, 0.25, &tol()).unwrap();
        let second =
            binary_epsilon_mix(&first.m.elements()[0], &first.m.elements()[1], 0.25, &tol())
                .unwrap();
        let id = Op::identity(2).scale(0.375);
        assert!((&second.m.elements()[0] - &(&a.scale(0.25) + &id)).hs_norm() < 1e-15);
        assert!((&second.m.elements()[1] - &(&b.scale(0.25) + &id)).hs_norm() < 1e-15);
    }

    #[test]
    fn separation_parameter_examples() {
        let a = Op::basis_projector(2, 0);
        let b = Op::basis_projector(2, 1);
        let first = binary_epsilon_mix(&a, &b, 0.25, &tol()).unwrap();
        let p = separation_parameters(&first.n, &first.m, &tol()).unwrap();
        assert!((p.vol_min - 1.0).abs() < 1e-15 && (p.alpha_norm - 4.0).abs() < 1e-12);
        assert!((p.lambda_double_prime - 1.0 / 64.0).abs() < 1e-15);
        let second =
            binary_epsilon_mix(&first.m.elements()[0], &first.m.elements()[1], 0.25, &tol())
                .unwrap();
        let p = separation_parameters(&second.n, &second.m, &tol()).unwrap();
        assert!((p.beta - 0.25).abs() < 1e-15);
        assert!((p.lambda_prime - 1.0 / 128.0).abs() < 1e-15);
        let p = separation_parameters(&first.m, &first.m, &tol()).unwrap();
        assert!(p.alpha_norm >= 1.0 && p.lambda_prime <= 0.5 && p.lambda_double_prime <= 0.5);
        assert!(matches!(
            separation_parameters(&computational(), &trivial(2).unwrap(), &tol()),
            Err(Error::NoLinearRelation)
        ));
    }

    #[test]
    fn n_lambda_shapes() {
        let n = computational();
        let nl = build_n_lambda(&n, 1.0 / 64.0).unwrap();
        assert_eq!(nl.len(), 3);
        assert!((&nl.elements()[2] - &Op::identity(2).scale(63.0 / 64.0)).hs_norm() < 1e-15);
        for lambda in [0.0, 1.0 / 64.0, 1.0] {
            assert!(validate(&build_n_lambda(&n, lambda).unwrap(), &tol()).is_valid());
        }
        let zero = build_n_lambda(&n, 0.0).unwrap();
        assert!(zero.elements()[0].hs_norm() == 0.0 && zero.elements()[1].hs_norm() == 0.0);
        assert!(build_n_lambda(&n, 1.5).is_err());
    }
}
