use serde::Serialize;

use super::decide::{
    decide_entropy_order, decide_relent_order, Certificate, OrderVerdict, VerdictReason,
    VerdictStatus,
};
use super::equivalence::decide_equivalence;
use super::linear::{decide_linear, LinearRelation};
use super::search::{SearchBudget, Witness};
use super::stochastic::{decide_stochastic, StochasticDecision};
use crate::entropy::EntropyConfig;
use crate::error::Result;
use crate::operator::DensityMatrix;
use crate::povm::{is_projective, Povm};
use crate::scalar::Float;
use crate::tolerance::Tolerances;

/// Every relation of one POVM (`first`) against another (`second`).
#[derive(Debug, Clone, Serialize)]
pub struct DirectionReport<T: Float> {
    pub linear: Option<LinearRelation<T>>,
    pub stochastic: StochasticDecision<T>,
    pub relent: OrderVerdict<T>,
    pub entropy: OrderVerdict<T>,
}

impl<T: Float> DirectionReport<T> {
    pub fn is_linear(&self) -> bool {
        self.linear.is_some()
    }

    pub fn is_stochastic(&self) -> bool {
        self.stochastic.is_feasible()
    }
}

/// Relations between `N` and `M` in both directions.
#[derive(Debug, Clone, Serialize)]
pub struct PairClassification<T: Float> {
    /// `N` against `M`: `N ⋑ M`, `N ≫ M`, `N ≥ M`, `N ⪰ M`.
    pub n_vs_m: DirectionReport<T>,
    /// `M` against `N`.
    pub m_vs_n: DirectionReport<T>,
    pub equivalence: bool,
    /// Projectivity of `(N, M)`.
    pub projective: (bool, bool),
}

fn direction<T: Float>(
    a: &Povm<T>,
    b: &Povm<T>,
    both_projective: bool,
    budget: &SearchBudget,
    cfg: &EntropyConfig,
    tol: &Tolerances<T>,
) -> Result<DirectionReport<T>> {
    let linear = decide_linear(a, b, tol)?;
    let stochastic = decide_stochastic(a, b, tol)?;
    let (relent, entropy) = if both_projective && !stochastic.is_feasible() && linear.is_some() {
        // for projective pairs every order coincides with post-processing;
        // reaching here means the tolerances disagree, so defer to the LP
        let r = OrderVerdict::refuted(None, VerdictReason::ProjectiveShortcut, Default::default());
        (r.clone(), r)
    } else {
        (
            decide_relent_order(a, b, budget, cfg, tol)?,
            decide_entropy_order(a, b, budget, cfg, tol)?,
        )
    };
    let mut report = DirectionReport {
        linear,
        stochastic,
        relent,
        entropy,
    };
    enforce_chain(&mut report);
    Ok(report)
}

/// Propagates verdicts along `≫ ⇒ ≥ ⇒ ⪰ ⇒ ⋑` and its contrapositive.
fn enforce_chain<T: Float>(r: &mut DirectionReport<T>) {
    if r.relent.is_holds() && r.entropy.status == VerdictStatus::Unknown {
        r.entropy = OrderVerdict::holds(Certificate::TheoremChain, VerdictReason::TheoremChain);
    }
    if r.entropy.is_refuted() && r.relent.status == VerdictStatus::Unknown {
        // an entropy witness ρ refutes the relative entropy order at (ρ, 𝟙/d)
        let witness = r.entropy.witness.as_ref().map(|w| Witness {
            rho: w.rho.clone(),
            sigma: Some(DensityMatrix::maximally_mixed(w.rho.dim())),
            margin: w.margin,
        });
        let used = r.relent.budget_used;
        r.relent = OrderVerdict::refuted(witness, VerdictReason::TheoremChain, used);
    }
}

/// Classifies `(N, M)` in both directions, with projective shortcuts and
/// consistency along the chain of implications between the orders.
pub fn classify_pair<T: Float>(
    n: &Povm<T>,
    m: &Povm<T>,
    budget: &SearchBudget,
    cfg: &EntropyConfig,
    tol: &Tolerances<T>,
) -> Result<PairClassification<T>> {
    n.check_same_dim(m)?;
    let projective = (is_projective(n, tol), is_projective(m, tol));
    let both = projective.0 && projective.1;
    let n_vs_m = direction(n, m, both, budget, cfg, tol)?;
    let m_vs_n = direction(m, n, both, budget, cfg, tol)?;
    let equivalence = decide_equivalence(n, m, tol)?;
    Ok(PairClassification {
        n_vs_m,
        m_vs_n,
        equivalence,
        projective,
    })
}
