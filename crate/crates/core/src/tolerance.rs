//! Numerical tolerances shared by every module.

use serde::Serialize;

use crate::scalar::Float;

/// Tolerances used for validation, rank decisions and witness acceptance.
///
/// The `f64` defaults are tuned for dimensions up to about 16 and up to about
/// 64 outcomes. Lower precision types get proportionally looser values.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Tolerances<T> {
    /// Allowed deviation from `A = A†`, entrywise.
    pub herm: T,
    /// Allowed deviation of traces and of `Σ M_k` from the identity.
    pub trace: T,
    /// Allowed negative eigenvalue magnitude.
    pub psd: T,
    /// Relative Hilbert–Schmidt residual below which an operator counts as in a span.
    pub span: T,
    /// Grouping threshold on `1 - cos(angle)` between normalized elements.
    pub prop: T,
    /// Volume matching threshold for equivalence.
    pub vol: T,
    /// Feasibility threshold for the post-processing program.
    pub stoch: T,
    /// Minimum entropy gap for a witness to be accepted.
    pub margin: T,
}

impl<T: Float> Default for Tolerances<T> {
    fn default() -> Self {
        if T::machine_epsilon() <= T::lit(1e-15) {
            Self {
                herm: T::lit(1e-10),
                trace: T::lit(1e-10),
                psd: T::lit(1e-9),
                span: T::lit(1e-9),
                prop: T::lit(1e-8),
                vol: T::lit(1e-8),
                stoch: T::lit(1e-8),
                margin: T::lit(1e-7),
            }
        } else {
            Self {
                herm: T::lit(1e-5),
                trace: T::lit(1e-5),
                psd: T::lit(1e-4),
                span: T::lit(1e-4),
                prop: T::lit(1e-4),
                vol: T::lit(1e-4),
                stoch: T::lit(1e-4),
                margin: T::lit(1e-3),
            }
        }
    }
}
