use std::cmp::Ordering;

use super::Povm;
use crate::operator::HermitianOperator;
use crate::scalar::Float;
use crate::tolerance::Tolerances;

/// A unit-trace direction `μ` together with the total volume carried by it.
#[derive(Debug, Clone, PartialEq)]
pub struct Atom<T: Float> {
    pub mu: HermitianOperator<T>,
    pub volume: T,
}

/// Merged, normalized-element form of a POVM: zero elements dropped,
/// proportional elements merged.
///
/// Two POVMs are post-processing equivalent exactly when their canonical
/// forms coincide.
#[derive(Debug, Clone)]
pub struct CanonicalForm<T: Float> {
    dim: usize,
    atoms: Vec<Atom<T>>,
    /// For each input element, the atom it was merged into (`None` for zero elements).
    assignment: Vec<Option<usize>>,
}

impl<T: Float> CanonicalForm<T> {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn atoms(&self) -> &[Atom<T>] {
        &self.atoms
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    /// Atom index of each element of the source POVM.
    pub fn assignment(&self) -> &[Option<usize>] {
        &self.assignment
    }

    /// The intermediary POVM with elements `μ·V(μ)`, one per atom.
    pub fn to_povm(&self) -> Povm<T> {
        let elements = self.atoms.iter().map(|a| a.mu.scale(a.volume)).collect();
        Povm::new(elements).expect("canonical form has at least one atom")
    }

    /// Index of the atom proportional to `mu`, if any.
    pub fn find(&self, mu: &HermitianOperator<T>, tol: &Tolerances<T>) -> Option<usize> {
        self.atoms
            .iter()
            .position(|a| proportionality_gap(&a.mu, mu) <= tol.prop)
    }
}

/// `1 − ⟨a, b⟩ / (‖a‖‖b‖)`.
pub(crate) fn proportionality_gap<T: Float>(
    a: &HermitianOperator<T>,
    b: &HermitianOperator<T>,
) -> T {
    let na = a.hs_norm();
    let nb = b.hs_norm();
    if na <= T::zero() || nb <= T::zero() {
        return T::one();
    }
    T::one() - a.trace_product(b) / (na * nb)
}

fn lexicographic<T: Float>(a: &HermitianOperator<T>, b: &HermitianOperator<T>, eps: T) -> Ordering {
    for (x, y) in a.entries().iter().zip(b.entries().iter()) {
        for (u, v) in [(x.re, y.re), (x.im, y.im)] {
            if (u - v).abs() > eps {
                return u.partial_cmp(&v).unwrap_or(Ordering::Equal);
            }
        }
    }
    Ordering::Equal
}

/// Drops zero elements, normalizes the rest to unit trace and merges elements
/// whose normalized forms are proportional within `tol_prop`.
///
/// Atoms are sorted lexicographically on their matrix entries (row-major,
/// real part before imaginary part).
pub fn canonical_form<T: Float>(m: &Povm<T>, tol: &Tolerances<T>) -> CanonicalForm<T> {
    // (sum of grouped elements, first normalized member, volume)
    let mut groups: Vec<(HermitianOperator<T>, HermitianOperator<T>, T)> = Vec::new();
    let mut raw_assignment = Vec::with_capacity(m.len());
    for e in m.elements() {
        let v = e.trace();
        if v <= tol.trace {
            raw_assignment.push(None);
            continue;
        }
        let mu = e.scale(T::one() / v);
        let hit = groups
            .iter()
            .position(|(_, rep, _)| proportionality_gap(rep, &mu) <= tol.prop);
        match hit {
            Some(g) => {
                let (sum, _, vol) = &mut groups[g];
                *sum = &*sum + e;
                *vol += v;
                raw_assignment.push(Some(g));
            }
            None => {
                groups.push((e.clone(), mu, v));
                raw_assignment.push(Some(groups.len() - 1));
            }
        }
    }
    let mut atoms: Vec<(usize, Atom<T>)> = groups
        .into_iter()
        .enumerate()
        .map(|(g, (sum, _, volume))| {
            (
                g,
                Atom {
                    mu: sum.scale(T::one() / volume),
                    volume,
                },
            )
        })
        .collect();
    let eps = tol.prop.sqrt();
    atoms.sort_by(|a, b| lexicographic(&a.1.mu, &b.1.mu, eps));
    let mut remap = vec![0; atoms.len()];
    for (new, (old, _)) in atoms.iter().enumerate() {
        remap[*old] = new;
    }
    CanonicalForm {
        dim: m.dim(),
        atoms: atoms.into_iter().map(|(_, a)| a).collect(),
        assignment: raw_assignment
            .into_iter()
            .map(|g| g.map(|g| remap[g]))
            .collect(),
    }
}

/// Atom sets agree: a bijection matching directions within `tol_prop` and
/// volumes within `tol_vol`.
pub(crate) fn same_atoms<T: Float>(
    a: &CanonicalForm<T>,
    b: &CanonicalForm<T>,
    tol: &Tolerances<T>,
) -> bool {
    if a.dim != b.dim || a.len() != b.len() {
        return false;
    }
    let mut used = vec![false; b.len()];
    for x in &a.atoms {
        let hit = b.atoms.iter().enumerate().position(|(j, y)| {
            !used[j]
                && proportionality_gap(&x.mu, &y.mu) <= tol.prop
                && (x.volume - y.volume).abs() <= tol.vol
        });
        match hit {
            Some(j) => used[j] = true,
            None => return false,
        }
    }
    true
}
