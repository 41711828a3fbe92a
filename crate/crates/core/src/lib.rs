//! Coarse-graining orders between finite-dimensional quantum measurements.
//!
//! A measurement is a POVM, a list of positive semidefinite operators summing to
//! the identity. This crate compares two POVMs `N` and `M` on the same space
//! under four relations, from strongest to weakest:
//!
//! * post-processing `N ≫ M`: `N_j = Σ_i Λ_{j|i} M_i` for a stochastic `Λ`;
//! * relative entropy `N ≥ M`: `D_N(ρ‖σ) ≤ D_M(ρ‖σ)` for all states;
//! * observational entropy `N ⪰ M`: `S_N(ρ) ≥ S_M(ρ)` for all states;
//! * linear relation `N ⋑ M`: every `N_j` lies in the real span of `M`.
//!
//! The first and last are decided exactly (up to tolerances) by a linear
//! program and a least-squares fit. The entropic orders get three-valued
//! verdicts: certified, refuted by an explicit witness state, or unknown after
//! a bounded search.
//!
//! All numerics are generic over [`Float`] (`f32` or `f64`); the aliases at the
//! crate root fix `f64`.
//!
//! ```
//! use povm_order::{classify_pair, paper_example, EntropyConfig, ExampleName, SearchBudget, Tolerances};
//!
//! let ex = paper_example::<f64>(ExampleName::Ex3);
//! let budget = SearchBudget { samples: 500, ..SearchBudget::default() };
//! let c = classify_pair(
//!     ex.povm("N").unwrap(),
//!     ex.povm("M").unwrap(),
//!     &budget,
//!     &EntropyConfig::bits(),
//!     &Tolerances::default(),
//! )
//! .unwrap();
//! assert!(c.n_vs_m.is_linear() && !c.n_vs_m.is_stochastic());
//! assert!(c.n_vs_m.entropy.is_refuted());
//! ```

pub mod construct;
pub mod entropy;
pub mod error;
mod lp;
pub mod operator;
pub mod order;
pub mod povm;
pub mod scalar;
mod serde_util;
pub mod tolerance;

pub use construct::{
    binary_epsilon_mix, build_n_lambda, invertible_stochastic_pair, paper_example, postprocess,
    reproduce, separation_parameters, ExampleName,
};
pub use entropy::{
    curve_derivative_closed, curve_derivative_numeric, kl_divergence, observational_entropy,
    oe_from_relent_identity_check, pinsker_bounds, relative_entropy, EntropyConfig, ExtendedReal,
    LogBase,
};
pub use error::{Error, Result};
pub use order::{
    classify_pair, decide_entropy_order, decide_equivalence, decide_linear, decide_relent_order,
    decide_stochastic, equivalence_witness_maps, mixing_certificate, moment_equality_test,
    span_witness, OrderVerdict, SearchBudget, VerdictStatus,
};
pub use povm::{
    disjoint_convex, is_linearly_independent, is_projective, measure, trivial, validate,
};
pub use scalar::Float;
pub use tolerance::Tolerances;

pub type HermitianOperator = operator::HermitianOperator<f64>;
pub type DensityMatrix = operator::DensityMatrix<f64>;
pub type TracelessHermitian = operator::TracelessHermitian<f64>;
pub type Povm = povm::Povm<f64>;
pub type StochasticMap = order::StochasticMap<f64>;
pub type LinearRelation = order::LinearRelation<f64>;
pub type PairClassification = order::PairClassification<f64>;
pub type ConstructedPair = construct::ConstructedPair<f64>;
pub type SeparationParameters = construct::SeparationParameters<f64>;

pub type PovmF32 = povm::Povm<f32>;
pub type DensityMatrixF32 = operator::DensityMatrix<f32>;
pub type HermitianOperatorF32 = operator::HermitianOperator<f32>;
