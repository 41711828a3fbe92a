//! Dense two-phase simplex for small linear programs in standard form
//! `min cᵀx  s.t.  Ax = b, x ≥ 0`, with Bland's anti-cycling rule.

use nalgebra::DMatrix;

use crate::scalar::Float;

#[derive(Debug, Clone, PartialEq)]
pub(crate) enum LpOutcome<T> {
    Optimal { x: Vec<T>, objective: T },
    Infeasible,
    Unbounded,
    IterationLimit,
}

struct Tableau<T: Float> {
    // rows 0..m are constraints, row m is the reduced-cost row;
    // the last column holds the right-hand side (negated objective in row m)
    t: DMatrix<T>,
    basis: Vec<usize>,
    eps: T,
    pivot_tol: T,
}

impl<T: Float> Tableau<T> {
    fn rows(&self) -> usize {
        self.basis.len()
    }

    fn rhs_col(&self) -> usize {
        self.t.ncols() - 1
    }

    fn pivot(&mut self, row: usize, col: usize) {
        let p = self.t[(row, col)];
        let ncols = self.t.ncols();
        for j in 0..ncols {
            self.t[(row, j)] /= p;
        }
        for i in 0..self.t.nrows() {
            if i == row {
                continue;
            }
            let f = self.t[(i, col)];
            if f != T::zero() {
                for j in 0..ncols {
                    let v = self.t[(row, j)];
                    self.t[(i, j)] -= f * v;
                }
            }
        }
        self.basis[row] = col;
    }

    /// Runs simplex iterations over columns `< allowed`. Returns `Some(true)` on
    /// optimality, `Some(false)` when unbounded, `None` on iteration limit.
    fn optimize(&mut self, allowed: usize, max_iter: usize) -> Option<bool> {
        let m = self.rows();
        let rhs = self.rhs_col();
        for _ in 0..max_iter {
            let Some(col) = (0..allowed).find(|&j| self.t[(m, j)] < -self.eps) else {
                return Some(true);
            };
            // minimum ratio; near-ties go to the largest pivot, then the lowest basis index
            let mut best: Option<(usize, T)> = None;
            for i in 0..m {
                let a = self.t[(i, col)];
                if a <= self.pivot_tol {
                    continue;
                }
                let ratio = self.t[(i, rhs)] / a;
                best = match best {
                    None => Some((i, ratio)),
                    Some((bi, br)) => {
                        let slack = self.eps * (T::one() + br.abs());
                        let b_a = self.t[(bi, col)];
                        let better = ratio < br - slack
                            || (ratio <= br + slack
                                && (a > b_a * T::lit(1.5)
                                    || (a * T::lit(1.5) >= b_a && self.basis[i] < self.basis[bi])));
                        if better {
                            Some((i, ratio))
                        } else {
                            Some((bi, br))
                        }
                    }
                };
            }
            match best {
                Some((row, _)) => self.pivot(row, col),
                None => return Some(false),
            }
        }
        None
    }
}

/// Solves `min cᵀx s.t. Ax = b, x ≥ 0`.
pub(crate) fn solve_standard<T: Float>(a: &DMatrix<T>, b: &[T], c: &[T], eps: T) -> LpOutcome<T> {
    let (m, n) = a.shape();
    assert_eq!(b.len(), m);
    assert_eq!(c.len(), n);
    let max_iter = 50 * (m + n) + 1000;

    // phase 1: artificials n..n+m, rows flipped so that b ≥ 0
    let mut t = DMatrix::<T>::zeros(m + 1, n + m + 1);
    for i in 0..m {
        let sign = if b[i] < T::zero() {
            -T::one()
        } else {
            T::one()
        };
        for j in 0..n {
            t[(i, j)] = sign * a[(i, j)];
        }
        t[(i, n + i)] = T::one();
        t[(i, n + m)] = sign * b[i];
    }
    for j in 0..n {
        let s = (0..m).fold(T::zero(), |acc, i| acc + t[(i, j)]);
        t[(m, j)] = -s;
    }
    t[(m, n + m)] = -(0..m).fold(T::zero(), |acc, i| acc + t[(i, n + m)]);
    let mut tab = Tableau {
        t,
        basis: (n..n + m).collect(),
        eps,
        pivot_tol: eps.max(T::lit(1e-9)),
    };
    if tab.optimize(n + m, max_iter).is_none() {
        return LpOutcome::IterationLimit;
    }
    let scale = b.iter().fold(T::one(), |acc, &x| acc.max(x.abs()));
    if -tab.t[(m, n + m)] > eps * scale * T::from_count(m.max(1)) {
        return LpOutcome::Infeasible;
    }

    // drive remaining artificials out of the basis where possible
    for i in 0..m {
        if tab.basis[i] >= n {
            if let Some(j) = (0..n).find(|&j| tab.t[(i, j)].abs() > tab.pivot_tol) {
                tab.pivot(i, j);
            }
        }
    }

    // phase 2
    for j in 0..=n + m {
        tab.t[(m, j)] = T::zero();
    }
    for (j, &cj) in c.iter().enumerate() {
        tab.t[(m, j)] = cj;
    }
    for i in 0..m {
        let bi = tab.basis[i];
        let cb = if bi < n { c[bi] } else { T::zero() };
        if cb != T::zero() {
            for j in 0..=n + m {
                let v = tab.t[(i, j)];
                tab.t[(m, j)] -= cb * v;
            }
        }
    }
    match tab.optimize(n, max_iter) {
        None => LpOutcome::IterationLimit,
        Some(false) => LpOutcome::Unbounded,
        Some(true) => {
            let mut x = vec![T::zero(); n];
            for (i, &bi) in tab.basis.iter().enumerate() {
                if bi < n {
                    x[bi] = tab.t[(i, n + m)].max(T::zero());
                }
            }
            let objective = x
                .iter()
                .zip(c)
                .fold(T::zero(), |acc, (&xi, &ci)| acc + xi * ci);
            LpOutcome::Optimal { x, objective }
        }
    }
}
