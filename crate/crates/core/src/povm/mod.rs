//! POVM data model: validation, measurement statistics, disjoint convex
//! combinations, structural predicates and the canonical form.

pub(crate) mod canonical;
pub mod io;

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::operator::{orthonormalize, DensityMatrix, HermitianOperator};
use crate::scalar::Float;
use crate::tolerance::Tolerances;

pub use canonical::{canonical_form, Atom, CanonicalForm};

/// A finite ordered list of operators on `C^d`, meant to be positive
/// semidefinite and to sum to the identity.
///
/// Construction only checks shapes. Use [`validate`] (or
/// [`Povm::new_validated`]) for the positivity and completeness constraints.
/// Labels are carried along but never affect any computation.
#[derive(Debug, Clone, PartialEq)]
pub struct Povm<T: Float> {
    dim: usize,
    elements: Vec<HermitianOperator<T>>,
    labels: Vec<String>,
}

impl<T: Float> Povm<T> {
    pub fn new(elements: Vec<HermitianOperator<T>>) -> Result<Self> {
        let labels = (0..elements.len()).map(|k| k.to_string()).collect();
        Self::with_labels(elements, labels)
    }

    pub fn with_labels(elements: Vec<HermitianOperator<T>>, labels: Vec<String>) -> Result<Self> {
        let Some(first) = elements.first() else {
            return Err(Error::InvalidPovm("no elements".into()));
        };
        let dim = first.dim();
        if let Some(bad) = elements.iter().find(|e| e.dim() != dim) {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: bad.dim(),
            });
        }
        if labels.len() != elements.len() {
            return Err(Error::LengthMismatch(labels.len(), elements.len()));
        }
        Ok(Self {
            dim,
            elements,
            labels,
        })
    }

    /// Builds and rejects anything that fails [`validate`].
    pub fn new_validated(elements: Vec<HermitianOperator<T>>, tol: &Tolerances<T>) -> Result<Self> {
        let m = Self::new(elements)?;
        let report = validate(&m, tol);
        if !report.is_valid() {
            return Err(Error::InvalidPovm(report.to_string()));
        }
        Ok(m)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[HermitianOperator<T>] {
        &self.elements
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Volumes `V_k = tr(M_k)`.
    pub fn volumes(&self) -> Vec<T> {
        self.elements.iter().map(HermitianOperator::trace).collect()
    }

    /// Same elements in a different order.
    pub fn permuted(&self, order: &[usize]) -> Result<Self> {
        if order.len() != self.len() {
            return Err(Error::LengthMismatch(order.len(), self.len()));
        }
        let mut seen = vec![false; self.len()];
        for &k in order {
            if k >= self.len() || std::mem::replace(&mut seen[k], true) {
                return Err(Error::OutOfRange(format!("not a permutation: {order:?}")));
            }
        }
        Self::with_labels(
            order.iter().map(|&k| self.elements[k].clone()).collect(),
            order.iter().map(|&k| self.labels[k].clone()).collect(),
        )
    }

    pub(crate) fn check_same_dim(&self, other: &Self) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: other.dim,
            });
        }
        Ok(())
    }

    pub(crate) fn check_state(&self, rho: &DensityMatrix<T>) -> Result<()> {
        if rho.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: rho.dim(),
            });
        }
        Ok(())
    }
}

/// One failed POVM constraint with its numeric margin.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Violation {
    /// Element `index` has a negative eigenvalue below `-tol_psd`.
    NotPsd { index: usize, min_eigenvalue: f64 },
    /// `Σ_k M_k − 𝟙` has entrywise max-norm `deviation`.
    SumNotIdentity { deviation: f64 },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NotPsd {
                index,
                min_eigenvalue,
            } => write!(
                f,
                "element {index} is not positive semidefinite (min eigenvalue {min_eigenvalue:e})"
            ),
            Violation::SumNotIdentity { deviation } => {
                write!(
                    f,
                    "elements do not sum to the identity (max deviation {deviation:e})"
                )
            }
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return write!(f, "valid");
        }
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// Checks positivity of every element and completeness of the sum.
pub fn validate<T: Float>(m: &Povm<T>, tol: &Tolerances<T>) -> ValidationReport {
    let mut violations = Vec::new();
    for (index, e) in m.elements.iter().enumerate() {
        let lmin = e.min_eigenvalue();
        if lmin < -tol.psd {
            violations.push(Violation::NotPsd {
                index,
                min_eigenvalue: lmin.as_f64(),
            });
        }
    }
    let sum = m
        .elements
        .iter()
        .fold(HermitianOperator::zeros(m.dim), |acc, e| &acc + e);
    let deviation = (&sum - &HermitianOperator::identity(m.dim)).max_abs_entry();
    if deviation > tol.trace {
        violations.push(Violation::SumNotIdentity {
            deviation: deviation.as_f64(),
        });
    }
    ValidationReport { violations }
}

/// Outcome probabilities together with element volumes.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OutcomeDistribution<T> {
    pub probs: Vec<T>,
    pub volumes: Vec<T>,
}

/// `p_k = tr(M_k ρ)`.
///
/// Probabilities more than `tol_psd` outside `[0, 1]` are an error; smaller
/// excursions are clamped.
pub fn measure<T: Float>(
    m: &Povm<T>,
    rho: &DensityMatrix<T>,
    tol: &Tolerances<T>,
) -> Result<OutcomeDistribution<T>> {
    m.check_state(rho)?;
    let probs = outcome_probabilities(m, rho, tol)?;
    Ok(OutcomeDistribution {
        probs,
        volumes: m.volumes(),
    })
}

pub(crate) fn outcome_probabilities<T: Float>(
    m: &Povm<T>,
    rho: &DensityMatrix<T>,
    tol: &Tolerances<T>,
) -> Result<Vec<T>> {
    m.elements
        .iter()
        .map(|e| {
            let p = e.trace_product(rho.as_operator());
            if p < -tol.psd || p > T::one() + tol.psd {
                return Err(Error::ProbabilityOutOfRange(p.as_f64()));
            }
            Ok(p.max(T::zero()).min(T::one()))
        })
        .collect()
}

/// The single-outcome POVM `(𝟙)`.
pub fn trivial<T: Float>(d: usize) -> Result<Povm<T>> {
    if d == 0 {
        return Err(Error::InvalidDimension { min: 1, got: 0 });
    }
    Povm::with_labels(
        vec![HermitianOperator::identity(d)],
        vec!["identity".into()],
    )
}

/// `λM ⊕ (1−λ)N`: both outcome blocks are kept, even at `λ ∈ {0, 1}`.
pub fn disjoint_convex<T: Float>(lambda: T, m: &Povm<T>, n: &Povm<T>) -> Result<Povm<T>> {
    if !(lambda >= T::zero() && lambda <= T::one()) {
        return Err(Error::OutOfRange(format!(
            "mixing weight {} not in [0, 1]",
            lambda.as_f64()
        )));
    }
    m.check_same_dim(n)?;
    let rest = T::one() - lambda;
    let elements = m
        .elements
        .iter()
        .map(|e| e.scale(lambda))
        .chain(n.elements.iter().map(|e| e.scale(rest)))
        .collect();
    let labels = m
        .labels
        .iter()
        .map(|l| format!("M:{l}"))
        .chain(n.labels.iter().map(|l| format!("N:{l}")))
        .collect();
    Povm::with_labels(elements, labels)
}

/// `P_x P_y = δ_xy P_x` for every pair, in operator norm within `tol_psd`.
pub fn is_projective<T: Float>(m: &Povm<T>, tol: &Tolerances<T>) -> bool {
    for (x, px) in m.elements.iter().enumerate() {
        for (y, py) in m.elements.iter().enumerate().skip(x) {
            let mut prod = px.matmul(py);
            if x == y {
                prod -= px.entries();
            }
            let norm = prod
                .singular_values()
                .iter()
                .fold(T::zero(), |acc, &s| acc.max(s));
            if norm > tol.psd {
                return false;
            }
        }
    }
    true
}

/// Numerical rank of the elements equals their count (relative `tol_span`).
pub fn is_linearly_independent<T: Float>(m: &Povm<T>, tol: &Tolerances<T>) -> bool {
    orthonormalize(&m.elements, tol.span).is_ok_and(|b| b.len() == m.len())
}
