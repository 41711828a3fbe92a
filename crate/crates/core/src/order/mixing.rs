use serde::Serialize;

use super::linear::decide_linear;
use crate::error::Result;
use crate::operator::HermitianOperator;
use crate::povm::canonical::proportionality_gap;
use crate::povm::{is_linearly_independent, Povm};
use crate::scalar::Float;
use crate::serde_util;
use crate::tolerance::Tolerances;

/// Which universal inequality a certificate or verdict concerns.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Target {
    /// `S_N(ρ) ≥ S_M(ρ)` for all `ρ`.
    Entropy,
    /// `D_N(ρ‖σ) ≤ D_M(ρ‖σ)` for all `ρ, σ`.
    Relent,
}

/// Parameters certifying that `N = λN′ ⊕ (1−λ)𝟙` is dominated by `M`:
/// `λ ≤ γ/(2‖α‖²)`, where `α` relates `N′` to `M` and `γ` is the smallest
/// eigenvalue (relative entropy) or smallest volume over `d` (entropy) of `N′`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(bound = "")]
pub struct MixingCertificate<T: Float> {
    #[serde(serialize_with = "serde_util::scalar")]
    pub lambda: T,
    #[serde(serialize_with = "serde_util::scalar")]
    pub gamma: T,
    #[serde(serialize_with = "serde_util::scalar")]
    pub alpha_norm: T,
    pub target: Target,
}

impl<T: Float> MixingCertificate<T> {
    /// `γ/(2‖α‖²)`.
    pub fn threshold(&self) -> T {
        self.gamma / (T::lit(2.0) * self.alpha_norm * self.alpha_norm)
    }
}

/// Recognizes `n` as `λN′ ⊕ (1−λ)𝟙` and issues a certificate when the mixing
/// weight is small enough for `N′`'s relation to a linearly independent `m`.
///
/// Requires exactly one element proportional to the identity. Boundary cases
/// `λ = γ/(2‖α‖²)` are accepted with a relative slack of `1e-9`.
pub fn mixing_certificate<T: Float>(
    n: &Povm<T>,
    m: &Povm<T>,
    target: Target,
    tol: &Tolerances<T>,
) -> Result<Option<MixingCertificate<T>>> {
    n.check_same_dim(m)?;
    let d = n.dim();
    let id = HermitianOperator::<T>::identity(d);
    let flat: Vec<usize> = n
        .elements()
        .iter()
        .enumerate()
        .filter(|(_, e)| e.trace() > tol.trace && proportionality_gap(e, &id) <= tol.prop)
        .map(|(k, _)| k)
        .collect();
    let [k] = flat[..] else {
        return Ok(None);
    };
    let dd = T::from_count(d);
    let lambda = T::one() - n.elements()[k].trace() / dd;
    if lambda <= tol.trace || !is_linearly_independent(m, tol) {
        return Ok(None);
    }
    let rest: Vec<HermitianOperator<T>> = n
        .elements()
        .iter()
        .enumerate()
        .filter(|&(j, e)| j != k && e.trace() > tol.trace)
        .map(|(_, e)| e.scale(T::one() / lambda))
        .collect();
    if rest.is_empty() {
        return Ok(None);
    }
    let inner = Povm::new(rest)?;
    let Some(relation) = decide_linear(&inner, m, tol)? else {
        return Ok(None);
    };
    let gamma = inner
        .elements()
        .iter()
        .map(|e| match target {
            Target::Relent => e.min_eigenvalue(),
            Target::Entropy => e.trace() / dd,
        })
        .reduce(|a, b| a.min(b))
        .unwrap_or(T::zero());
    if gamma <= T::zero() {
        return Ok(None);
    }
    let cert = MixingCertificate {
        lambda,
        gamma,
        alpha_norm: relation.entry_l1_norm,
        target,
    };
    Ok((lambda <= cert.threshold() * (T::one() + T::lit(1e-9))).then_some(cert))
}
