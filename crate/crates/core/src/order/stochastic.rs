use nalgebra::DMatrix;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lp::{solve_standard, LpOutcome};
use crate::operator::{HermitianBasis, HermitianOperator};
use crate::povm::Povm;
use crate::scalar::Float;
use crate::serde_util;
use crate::tolerance::Tolerances;

/// Column-stochastic matrix `Λ_{j|i}`: rows index outputs, columns inputs.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(bound = "")]
pub struct StochasticMap<T: Float> {
    #[serde(serialize_with = "serde_util::matrix")]
    lambda: DMatrix<T>,
}

impl<T: Float> StochasticMap<T> {
    /// Entries `≥ −tol_stoch`, columns summing to 1 within `tol_stoch`.
    pub fn new(lambda: DMatrix<T>, tol: &Tolerances<T>) -> Result<Self> {
        if lambda.nrows() == 0 || lambda.ncols() == 0 {
            return Err(Error::InvalidStochasticMap("empty matrix".into()));
        }
        if let Some(x) = lambda
            .iter()
            .find(|&&x| x.partial_cmp(&-tol.stoch).is_none_or(|o| o.is_lt()))
        {
            return Err(Error::InvalidStochasticMap(format!("entry {}", x.as_f64())));
        }
        for (i, col) in lambda.column_iter().enumerate() {
            let s = col.sum();
            if (s - T::one()).abs() > tol.stoch {
                return Err(Error::InvalidStochasticMap(format!(
                    "column {i} sums to {}",
                    s.as_f64()
                )));
            }
        }
        Ok(Self { lambda })
    }

    /// From a list of rows, one per output.
    pub fn from_rows(rows: &[Vec<T>], tol: &Tolerances<T>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::InvalidStochasticMap("rows of unequal length".into()));
        }
        Self::new(DMatrix::from_fn(rows.len(), cols, |j, i| rows[j][i]), tol)
    }

    pub fn identity(n: usize) -> Self {
        Self {
            lambda: DMatrix::identity(n, n),
        }
    }

    /// The permutation sending input `i` to output `order[i]`.
    pub fn permutation(order: &[usize]) -> Self {
        let n = order.len();
        let mut lambda = DMatrix::zeros(n, n);
        for (i, &j) in order.iter().enumerate() {
            lambda[(j, i)] = T::one();
        }
        Self { lambda }
    }

    pub fn matrix(&self) -> &DMatrix<T> {
        &self.lambda
    }

    pub fn outputs(&self) -> usize {
        self.lambda.nrows()
    }

    pub fn inputs(&self) -> usize {
        self.lambda.ncols()
    }

    /// `N_j = Σ_i Λ_{j|i} M_i`, without validating `m`.
    pub fn apply(&self, m: &Povm<T>) -> Result<Povm<T>> {
        if self.inputs() != m.len() {
            return Err(Error::LengthMismatch(self.inputs(), m.len()));
        }
        let elements = (0..self.outputs())
            .map(|j| {
                m.elements()
                    .iter()
                    .enumerate()
                    .fold(HermitianOperator::zeros(m.dim()), |acc, (i, mi)| {
                        &acc + &mi.scale(self.lambda[(j, i)])
                    })
            })
            .collect();
        Povm::new(elements)
    }

    /// Largest `‖N_j − Σ_i Λ_{j|i} M_i‖` (Hilbert–Schmidt).
    pub fn residual(&self, n: &Povm<T>, m: &Povm<T>) -> Result<T> {
        let image = self.apply(m)?;
        if image.len() != n.len() {
            return Err(Error::LengthMismatch(image.len(), n.len()));
        }
        n.check_same_dim(m)?;
        Ok(image
            .elements()
            .iter()
            .zip(n.elements())
            .fold(T::zero(), |acc, (a, b)| acc.max((a - b).hs_norm())))
    }
}

/// Outcome of the post-processing feasibility program.
#[derive(Debug, Clone, Serialize)]
#[serde(bound = "")]
pub struct StochasticDecision<T: Float> {
    pub map: Option<StochasticMap<T>>,
    /// Minimized ∞-norm violation of the operator equalities, in orthonormal
    /// Hermitian coordinates.
    #[serde(serialize_with = "serde_util::scalar")]
    pub margin: T,
}

impl<T: Float> StochasticDecision<T> {
    pub fn is_feasible(&self) -> bool {
        self.map.is_some()
    }
}

/// Decides `N ≫ M`: whether `N_j = Σ_i Λ_{j|i} M_i` for some stochastic `Λ`.
///
/// Solves `min s` subject to `|Σ_i Λ_{j|i} c_a(M_i) − c_a(N_j)| ≤ s` for every
/// outcome `j` and coordinate `a`, `Λ ≥ 0` and unit column sums. Feasible iff
/// the optimum is at most `tol_stoch`.
pub fn decide_stochastic<T: Float>(
    n: &Povm<T>,
    m: &Povm<T>,
    tol: &Tolerances<T>,
) -> Result<StochasticDecision<T>> {
    n.check_same_dim(m)?;
    let basis = HermitianBasis::<T>::new(m.dim());
    let cm = basis.coordinate_matrix(m.elements())?;
    let cn = basis.coordinate_matrix(n.elements())?;
    let (nj, ni, nd) = (n.len(), m.len(), basis.len());

    // variables: Λ (row-major j*ni + i), s, then one slack per inequality
    let n_lam = nj * ni;
    let s_col = n_lam;
    let n_ineq = 2 * nj * nd;
    let n_vars = n_lam + 1 + n_ineq;
    let n_rows = n_ineq + ni;
    let mut a = DMatrix::<T>::zeros(n_rows, n_vars);
    let mut b = vec![T::zero(); n_rows];
    let mut row = 0;
    for j in 0..nj {
        for k in 0..nd {
            for sign in [T::one(), -T::one()] {
                // sign·(Σ_i Λ c − c_N) − s + slack = 0
                for i in 0..ni {
                    a[(row, j * ni + i)] = sign * cm[(k, i)];
                }
                a[(row, s_col)] = -T::one();
                a[(row, n_lam + 1 + row)] = T::one();
                b[row] = sign * cn[(k, j)];
                row += 1;
            }
        }
    }
    for i in 0..ni {
        for j in 0..nj {
            a[(row, j * ni + i)] = T::one();
        }
        b[row] = T::one();
        row += 1;
    }
    let mut c = vec![T::zero(); n_vars];
    c[s_col] = T::one();

    let eps = tol.stoch * T::lit(1e-4);
    let (x, s) = match solve_standard(&a, &b, &c, eps) {
        LpOutcome::Optimal { x, objective } => (x, objective),
        _ => return Ok(fallback_decision(n, m, &cm, &cn)),
    };
    if s > tol.stoch {
        return Ok(StochasticDecision {
            map: None,
            margin: s,
        });
    }
    let mut lambda = DMatrix::from_fn(nj, ni, |j, i| x[j * ni + i].max(T::zero()));
    for mut col in lambda.column_iter_mut() {
        let total = col.sum();
        if total > T::zero() {
            col /= total;
        }
    }
    Ok(StochasticDecision {
        map: Some(StochasticMap { lambda }),
        margin: s,
    })
}

// The simplex only fails on iteration limits, which the problem sizes here do
// not reach; report the uniform map's violation as a conservative margin.
fn fallback_decision<T: Float>(
    n: &Povm<T>,
    m: &Povm<T>,
    cm: &DMatrix<T>,
    cn: &DMatrix<T>,
) -> StochasticDecision<T> {
    let uniform = DMatrix::from_element(n.len(), m.len(), T::one() / T::from_count(n.len()));
    let diff = cm * uniform.transpose() - cn;
    StochasticDecision {
        map: None,
        margin: diff.amax(),
    }
}
