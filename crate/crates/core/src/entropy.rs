//! Measured relative entropy, observational entropy, Pinsker-type bounds and
//! derivatives of relative entropy along lines through the maximally mixed
//! state.
//!
//! Conventions, fixed for every function here:
//!
//! * an outcome with `p_k = 0` contributes nothing, whatever `q_k` is;
//! * an outcome with `p_k > 0` and `q_k = 0` makes the divergence `+∞`;
//! * outcomes of (numerically) zero volume are skipped by the observational
//!   entropy; a positive probability on such an outcome is an error.

use std::fmt;

use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::operator::{prob_trace_distance, DensityMatrix, TracelessHermitian};
use crate::povm::{outcome_probabilities, Povm};
use crate::scalar::Float;
use crate::tolerance::Tolerances;

/// A real number or `+∞`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ExtendedReal<T> {
    Finite(T),
    PosInfinity,
}

impl<T: Float> ExtendedReal<T> {
    pub fn is_finite(&self) -> bool {
        matches!(self, ExtendedReal::Finite(_))
    }

    pub fn finite(&self) -> Option<T> {
        match *self {
            ExtendedReal::Finite(x) => Some(x),
            ExtendedReal::PosInfinity => None,
        }
    }

    /// `f64` view with `+∞` mapped to `f64::INFINITY`.
    pub fn to_f64(&self) -> f64 {
        match *self {
            ExtendedReal::Finite(x) => x.as_f64(),
            ExtendedReal::PosInfinity => f64::INFINITY,
        }
    }

    /// `self − other`, where `∞ − finite = ∞` and `finite − ∞` is `None`
    /// (as is `∞ − ∞`).
    pub fn excess_over(&self, other: &Self) -> Option<Self> {
        match (*self, *other) {
            (ExtendedReal::Finite(a), ExtendedReal::Finite(b)) => Some(ExtendedReal::Finite(a - b)),
            (ExtendedReal::PosInfinity, ExtendedReal::Finite(_)) => Some(ExtendedReal::PosInfinity),
            _ => None,
        }
    }

    /// Strictly greater than a finite threshold.
    pub fn exceeds(&self, threshold: T) -> bool {
        match *self {
            ExtendedReal::Finite(x) => x > threshold,
            ExtendedReal::PosInfinity => true,
        }
    }

    pub fn scale(&self, c: T) -> Self {
        match *self {
            ExtendedReal::Finite(x) => ExtendedReal::Finite(x * c),
            ExtendedReal::PosInfinity => ExtendedReal::PosInfinity,
        }
    }
}

impl<T: Float> fmt::Display for ExtendedReal<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtendedReal::Finite(x) => match f.precision() {
                Some(p) => write!(f, "{:.*}", p, x.as_f64()),
                None => write!(f, "{}", x.as_f64()),
            },
            ExtendedReal::PosInfinity => write!(f, "inf"),
        }
    }
}

/// Finite values serialize as numbers, `+∞` as the string `"inf"`.
impl<T: Float> Serialize for ExtendedReal<T> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            ExtendedReal::Finite(x) => s.serialize_f64(x.as_f64()),
            ExtendedReal::PosInfinity => s.serialize_str("inf"),
        }
    }
}

/// Logarithm base, i.e. the unit of information.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub enum LogBase {
    /// Bits.
    #[default]
    #[serde(rename = "2")]
    Two,
    /// Nats.
    #[serde(rename = "e")]
    E,
}

impl LogBase {
    pub fn unit(&self) -> &'static str {
        match self {
            LogBase::Two => "bits",
            LogBase::E => "nats",
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct EntropyConfig {
    pub log_base: LogBase,
}

impl EntropyConfig {
    pub fn bits() -> Self {
        Self {
            log_base: LogBase::Two,
        }
    }

    pub fn nats() -> Self {
        Self {
            log_base: LogBase::E,
        }
    }

    /// Converts a value in nats to the configured unit.
    pub fn from_nats<T: Float>(&self, nats: T) -> T {
        match self.log_base {
            LogBase::Two => nats / T::LN_2(),
            LogBase::E => nats,
        }
    }

    /// `log e` in the configured unit (1 for nats, `1/ln 2` for bits).
    pub fn unit_constant<T: Float>(&self) -> T {
        self.from_nats(T::one())
    }

    /// `log x` in the configured unit.
    pub fn log<T: Float>(&self, x: T) -> T {
        self.from_nats(x.ln())
    }
}

/// Classical relative entropy in nats.
///
/// Summed as `Σ_k [p_k ln(p_k/q_k) − p_k + q_k]`, which equals the usual
/// expression for normalized inputs and keeps every term nonnegative.
pub(crate) fn kl_nats<T: Float>(p: &[T], q: &[T]) -> ExtendedReal<T> {
    let mut acc = T::zero();
    for (&pk, &qk) in p.iter().zip(q) {
        if pk <= T::zero() {
            acc += qk.max(T::zero());
            continue;
        }
        if qk <= T::zero() {
            return ExtendedReal::PosInfinity;
        }
        let diff = pk - qk;
        acc += pk * (diff / qk).ln_1p() - diff;
    }
    ExtendedReal::Finite(acc.max(T::zero()))
}

/// Kullback–Leibler divergence `Σ p_k log(p_k/q_k)` of two probability vectors.
pub fn kl_divergence<T: Float>(p: &[T], q: &[T], cfg: &EntropyConfig) -> Result<ExtendedReal<T>> {
    if p.len() != q.len() {
        return Err(Error::LengthMismatch(p.len(), q.len()));
    }
    Ok(match kl_nats(p, q) {
        ExtendedReal::Finite(x) => ExtendedReal::Finite(cfg.from_nats(x)),
        inf => inf,
    })
}

/// `D_M(ρ‖σ)`: divergence of the outcome distributions of `m` on `rho` and `sigma`.
pub fn relative_entropy<T: Float>(
    m: &Povm<T>,
    rho: &DensityMatrix<T>,
    sigma: &DensityMatrix<T>,
    cfg: &EntropyConfig,
    tol: &Tolerances<T>,
) -> Result<ExtendedReal<T>> {
    m.check_state(rho)?;
    m.check_state(sigma)?;
    let p = outcome_probabilities(m, rho, tol)?;
    let q = outcome_probabilities(m, sigma, tol)?;
    kl_divergence(&p, &q, cfg)
}

/// `S_M(ρ) = −Σ_k p_k log(p_k/V_k)`.
pub fn observational_entropy<T: Float>(
    m: &Povm<T>,
    rho: &DensityMatrix<T>,
    cfg: &EntropyConfig,
    tol: &Tolerances<T>,
) -> Result<T> {
    m.check_state(rho)?;
    let p = outcome_probabilities(m, rho, tol)?;
    let mut acc = T::zero();
    for (index, (&pk, vk)) in p.iter().zip(m.volumes()).enumerate() {
        if vk <= tol.trace {
            if pk > tol.psd {
                return Err(Error::ZeroVolumeOutcome {
                    index,
                    prob: pk.as_f64(),
                    volume: vk.as_f64(),
                });
            }
            continue;
        }
        if pk > T::zero() {
            acc -= pk * (pk / vk).ln();
        }
    }
    Ok(cfg.from_nats(acc))
}

/// Both sides of `S_M(ρ) = log d − D_M(ρ‖𝟙/d)`.
pub fn oe_from_relent_identity_check<T: Float>(
    m: &Povm<T>,
    rho: &DensityMatrix<T>,
    cfg: &EntropyConfig,
    tol: &Tolerances<T>,
) -> Result<(T, T)> {
    let lhs = observational_entropy(m, rho, cfg, tol)?;
    let mixed = DensityMatrix::maximally_mixed(m.dim());
    let d = relative_entropy(m, rho, &mixed, cfg, tol)?;
    let d = d.finite().ok_or_else(|| {
        Error::InvalidPovm("infinite divergence from the maximally mixed state".into())
    })?;
    Ok((lhs, cfg.log(T::from_count(m.dim())) - d))
}

/// Two-sided Pinsker-type bounds `2εt² ≤ D(p‖q) ≤ 4εt²/q_min`, where `t` is
/// the trace distance and `ε = log e` in the configured unit.
///
/// The upper bound is `+∞` when `q_min = 0` and `t > 0`; it is `0` when `t = 0`.
pub fn pinsker_bounds<T: Float>(
    p: &[T],
    q: &[T],
    cfg: &EntropyConfig,
) -> Result<(T, ExtendedReal<T>)> {
    let t = prob_trace_distance(p, q)?;
    let eps = cfg.unit_constant::<T>();
    let t2 = t * t;
    let lower = T::lit(2.0) * eps * t2;
    if t2 <= T::zero() {
        return Ok((lower, ExtendedReal::Finite(T::zero())));
    }
    let q_min = q.iter().copied().fold(T::one(), |a, b| a.min(b));
    let upper = if q_min <= T::zero() {
        ExtendedReal::PosInfinity
    } else {
        ExtendedReal::Finite(T::lit(4.0) * eps * t2 / q_min)
    };
    Ok((lower, upper))
}

fn factorial<T: Float>(k: usize) -> T {
    (1..=k).fold(T::one(), |acc, j| acc * T::from_count(j))
}

/// Closed-form `n`-th derivative (nats) of `t ↦ D_M(𝟙/d + tX ‖ 𝟙/d)` at `t = 0`:
/// `(−1)ⁿ (n−2)! d^{n−1} Σ_i tr(M_i) m_iⁿ` with `m_i = tr(M_i X)/tr(M_i)`.
///
/// Elements with volume at most `tol_trace` are skipped.
pub fn curve_derivative_closed<T: Float>(
    m: &Povm<T>,
    x: &TracelessHermitian<T>,
    n: usize,
    tol: &Tolerances<T>,
) -> Result<T> {
    if n < 2 {
        return Err(Error::DerivativeOrder { min: 2, got: n });
    }
    if x.dim() != m.dim() {
        return Err(Error::DimensionMismatch {
            expected: m.dim(),
            found: x.dim(),
        });
    }
    let sum = m.elements().iter().fold(T::zero(), |acc, e| {
        let v = e.trace();
        if v <= tol.trace {
            return acc;
        }
        let mi = e.trace_product(x.as_operator()) / v;
        acc + v * mi.powi(n as i32)
    });
    let sign = if n.is_multiple_of(2) {
        T::one()
    } else {
        -T::one()
    };
    let d = T::from_count(m.dim());
    Ok(sign * factorial::<T>(n - 2) * d.powi(n as i32 - 1) * sum)
}

/// Default finite-difference step, `1e-3 / ‖X‖_op`.
pub fn default_step<T: Float>(x: &TracelessHermitian<T>) -> T {
    let norm = x.as_operator().operator_norm();
    if norm > T::zero() {
        T::lit(1e-3) / norm
    } else {
        T::lit(1e-3)
    }
}

/// Central finite-difference estimate (second-order accurate) of the `n`-th
/// derivative, `n ≤ 4`, of `t ↦ D_M(𝟙/d + tX ‖ 𝟙/d)` at `t = 0`, in nats.
pub fn curve_derivative_numeric<T: Float>(
    m: &Povm<T>,
    x: &TracelessHermitian<T>,
    n: usize,
    h: T,
    tol: &Tolerances<T>,
) -> Result<T> {
    if n > 4 {
        return Err(Error::DerivativeOrder { min: 0, got: n });
    }
    if x.dim() != m.dim() {
        return Err(Error::DimensionMismatch {
            expected: m.dim(),
            found: x.dim(),
        });
    }
    let mixed = DensityMatrix::maximally_mixed(m.dim());
    let q = outcome_probabilities(m, &mixed, tol)?;
    let f = |k: i32| -> Result<T> {
        let rho = x.point_on_line(h * T::lit(k as f64), tol)?;
        let p = outcome_probabilities(m, &rho, tol)?;
        kl_nats(&p, &q)
            .finite()
            .ok_or_else(|| Error::LeavesStateSpace((h * T::lit(k as f64)).as_f64()))
    };
    let two = T::lit(2.0);
    let value = match n {
        0 => f(0)?,
        1 => (f(1)? - f(-1)?) / (two * h),
        2 => (f(1)? - two * f(0)? + f(-1)?) / (h * h),
        3 => (f(2)? - two * f(1)? + two * f(-1)? - f(-2)?) / (two * h * h * h),
        _ => {
            (f(2)? - T::lit(4.0) * f(1)? + T::lit(6.0) * f(0)? - T::lit(4.0) * f(-1)? + f(-2)?)
                / (h * h * h * h)
        }
    };
    Ok(value)
}
