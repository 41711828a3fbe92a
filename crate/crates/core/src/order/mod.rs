//! Decision procedures for the four orders between POVMs on the same space:
//! linear relation (`⋑`), post-processing (`≫`), relative entropy (`≥`) and
//! observational entropy (`⪰`), plus post-processing equivalence.

mod classify;
mod decide;
mod equivalence;
mod linear;
mod mixing;
mod search;
mod stochastic;

pub use classify::{classify_pair, DirectionReport, PairClassification};
pub use decide::{
    decide_entropy_order, decide_relent_order, reverify_witness, Certificate, OrderVerdict,
    VerdictReason, VerdictStatus,
};
pub use equivalence::{decide_equivalence, equivalence_witness_maps, moment_equality_test};
pub use linear::{decide_linear, fit_linear, span_witness, LinearRelation};
pub use mixing::{mixing_certificate, MixingCertificate, Target};
pub use search::{
    entropy_gap, relent_gap, search_entropy_witness, search_relent_witness, BudgetUsed,
    SearchBudget, Witness,
};
pub use stochastic::{decide_stochastic, StochasticDecision, StochasticMap};
