use serde::Serialize;

use super::linear::{decide_linear, span_witness};
use super::mixing::{mixing_certificate, MixingCertificate, Target};
use super::search::{
    entropy_gap, relent_gap, search_entropy_witness, search_relent_witness, BudgetUsed,
    SearchBudget, Witness,
};
use super::stochastic::{decide_stochastic, StochasticMap};
use crate::entropy::{EntropyConfig, ExtendedReal};
use crate::error::Result;
use crate::operator::DensityMatrix;
use crate::povm::{is_projective, Povm};
use crate::scalar::Float;
use crate::tolerance::Tolerances;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum VerdictStatus {
    Holds,
    Refuted,
    Unknown,
}

/// Finite evidence that an order holds.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Certificate<T: Float> {
    /// `N` is a post-processing of `M`.
    StochasticMap { map: StochasticMap<T> },
    /// `N` is a small enough mixture of a linearly related POVM with the identity.
    Mixing(MixingCertificate<T>),
    /// Decided through the equivalence of all orders for projective measurements.
    ProjectiveShortcut,
    /// Implied by another verdict through the chain of implications between orders.
    TheoremChain,
}

/// How a verdict was reached.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum VerdictReason {
    Stochastic,
    Mixing,
    SpanWitness,
    ProjectiveShortcut,
    Search,
    TheoremChain,
    BudgetExhausted,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OrderVerdict<T: Float> {
    pub status: VerdictStatus,
    pub certificate: Option<Certificate<T>>,
    pub witness: Option<Witness<T>>,
    pub reason: VerdictReason,
    pub budget_used: BudgetUsed,
}

impl<T: Float> OrderVerdict<T> {
    pub fn holds(certificate: Certificate<T>, reason: VerdictReason) -> Self {
        Self {
            status: VerdictStatus::Holds,
            certificate: Some(certificate),
            witness: None,
            reason,
            budget_used: BudgetUsed::default(),
        }
    }

    pub fn refuted(
        witness: Option<Witness<T>>,
        reason: VerdictReason,
        budget_used: BudgetUsed,
    ) -> Self {
        Self {
            status: VerdictStatus::Refuted,
            certificate: None,
            witness,
            reason,
            budget_used,
        }
    }

    pub fn unknown(budget_used: BudgetUsed) -> Self {
        Self {
            status: VerdictStatus::Unknown,
            certificate: None,
            witness: None,
            reason: VerdictReason::BudgetExhausted,
            budget_used,
        }
    }

    pub fn is_holds(&self) -> bool {
        self.status == VerdictStatus::Holds
    }

    pub fn is_refuted(&self) -> bool {
        self.status == VerdictStatus::Refuted
    }
}

fn accept<T: Float>(w: Option<Witness<T>>, tol: &Tolerances<T>) -> Option<Witness<T>> {
    w.filter(|w| w.margin.exceeds(tol.margin))
}

/// Decides `S_N(ρ) ≥ S_M(ρ)` for all states `ρ`.
///
/// Pipeline, first hit wins: post-processing certificate; span witness when
/// `N` is not linearly related to `M`; mixing certificate; projective `N`
/// (refuted, with a best-effort witness); falsification search; unknown.
pub fn decide_entropy_order<T: Float>(
    n: &Povm<T>,
    m: &Povm<T>,
    budget: &SearchBudget,
    cfg: &EntropyConfig,
    tol: &Tolerances<T>,
) -> Result<OrderVerdict<T>> {
    n.check_same_dim(m)?;
    if let Some(map) = decide_stochastic(n, m, tol)?.map {
        return Ok(OrderVerdict::holds(
            Certificate::StochasticMap { map },
            VerdictReason::Stochastic,
        ));
    }
    if decide_linear(n, m, tol)?.is_none() {
        if let Some(sigma) = span_witness(n, m, tol)? {
            let witness = entropy_gap(n, m, &sigma, cfg, tol).map(|g| Witness {
                rho: sigma,
                sigma: None,
                margin: ExtendedReal::Finite(g),
            });
            if let Some(w) = accept(witness, tol) {
                return Ok(OrderVerdict::refuted(
                    Some(w),
                    VerdictReason::SpanWitness,
                    BudgetUsed::default(),
                ));
            }
        }
    }
    if let Some(cert) = mixing_certificate(n, m, Target::Entropy, tol)? {
        return Ok(OrderVerdict::holds(
            Certificate::Mixing(cert),
            VerdictReason::Mixing,
        ));
    }
    let (witness, used) = search_entropy_witness(n, m, budget, cfg, tol);
    let witness = accept(witness, tol);
    if is_projective(n, tol) {
        return Ok(OrderVerdict::refuted(
            witness,
            VerdictReason::ProjectiveShortcut,
            used,
        ));
    }
    Ok(match witness {
        Some(w) => OrderVerdict::refuted(Some(w), VerdictReason::Search, used),
        None => OrderVerdict::unknown(used),
    })
}

/// Decides `D_N(ρ‖σ) ≤ D_M(ρ‖σ)` for all pairs of states.
///
/// Pipeline: post-processing certificate; span witness pair `(σ_x, 𝟙/d)` when
/// `N` is not linearly related to `M`; mixing certificate; falsification
/// search; unknown.
pub fn decide_relent_order<T: Float>(
    n: &Povm<T>,
    m: &Povm<T>,
    budget: &SearchBudget,
    cfg: &EntropyConfig,
    tol: &Tolerances<T>,
) -> Result<OrderVerdict<T>> {
    n.check_same_dim(m)?;
    if let Some(map) = decide_stochastic(n, m, tol)?.map {
        return Ok(OrderVerdict::holds(
            Certificate::StochasticMap { map },
            VerdictReason::Stochastic,
        ));
    }
    if decide_linear(n, m, tol)?.is_none() {
        if let Some(rho) = span_witness(n, m, tol)? {
            let sigma = DensityMatrix::maximally_mixed(n.dim());
            let witness = relent_gap(n, m, &rho, &sigma, cfg, tol).map(|g| Witness {
                rho,
                sigma: Some(sigma),
                margin: g,
            });
            if let Some(w) = accept(witness, tol) {
                return Ok(OrderVerdict::refuted(
                    Some(w),
                    VerdictReason::SpanWitness,
                    BudgetUsed::default(),
                ));
            }
        }
    }
    if let Some(cert) = mixing_certificate(n, m, Target::Relent, tol)? {
        return Ok(OrderVerdict::holds(
            Certificate::Mixing(cert),
            VerdictReason::Mixing,
        ));
    }
    let (witness, used) = search_relent_witness(n, m, budget, cfg, tol);
    Ok(match accept(witness, tol) {
        Some(w) => OrderVerdict::refuted(Some(w), VerdictReason::Search, used),
        None => OrderVerdict::unknown(used),
    })
}

/// Recomputes a witness's margin: `S_M − S_N` without `σ`, `D_N − D_M` with it.
pub fn reverify_witness<T: Float>(
    n: &Povm<T>,
    m: &Povm<T>,
    w: &Witness<T>,
    cfg: &EntropyConfig,
    tol: &Tolerances<T>,
) -> Option<ExtendedReal<T>> {
    match &w.sigma {
        None => entropy_gap(n, m, &w.rho, cfg, tol).map(ExtendedReal::Finite),
        Some(sigma) => relent_gap(n, m, &w.rho, sigma, cfg, tol),
    }
}
