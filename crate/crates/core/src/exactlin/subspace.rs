use serde::Serialize;

use super::echelon::{rref, Echelon, Insert};
use super::scalar::{Field, Scalar};
use super::sparse::{SparseMatrix, SparseVec};
use crate::error::{Error, Result};

/// A linear subspace of `k^ambient`, stored by its reduced echelon basis.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Subspace {
    #[serde(skip)]
    pub field: Field,
    pub ambient_dim: usize,
    pub basis: Vec<SparseVec>,
}

impl Subspace {
    pub fn zero(field: Field, ambient_dim: usize) -> Subspace {
        Subspace {
            field,
            ambient_dim,
            basis: Vec::new(),
        }
    }

    pub fn full(field: Field, ambient_dim: usize) -> Subspace {
        Subspace {
            field,
            ambient_dim,
            basis: (0..ambient_dim)
                .map(|i| SparseVec::unit(i, field))
                .collect(),
        }
    }

    pub fn span(field: Field, ambient_dim: usize, vectors: &[SparseVec]) -> Subspace {
        let mut e = Echelon::new(field);
        for v in vectors {
            debug_assert!(v.support_bound() <= ambient_dim);
            e.insert(v);
        }
        Subspace {
            field,
            ambient_dim,
            basis: e.rref_rows(),
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.basis.iter().map(|v| v.leading().unwrap().0).collect()
    }

    fn echelon(&self) -> Echelon {
        let mut e = Echelon::new(self.field);
        for v in &self.basis {
            e.insert(v);
        }
        e
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.echelon().contains(v)
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        let e = self.echelon();
        other.basis.iter().all(|v| e.contains(v))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        let mut all = self.basis.clone();
        all.extend(other.basis.iter().cloned());
        Subspace::span(self.field, self.ambient_dim, &all)
    }

    /// `U ∩ W`, computed from the kernel of `[U | -W]`.
    pub fn intersection(&self, other: &Subspace) -> Subspace {
        let mut e = Echelon::tracking(self.field);
        for v in &self.basis {
            e.insert(v);
        }
        let mut out = Vec::new();
        for w in &other.basis {
            if let Insert::Dependent(Some(combo)) = e.insert(w) {
                // combo · [U | W] = 0, so the W-part equals minus the U-part.
                let mut v = SparseVec::new();
                for (k, c) in combo.iter() {
                    if k < self.basis.len() {
                        v = v.add_scaled(&self.basis[k], c);
                    }
                }
                out.push(v);
            }
        }
        Subspace::span(self.field, self.ambient_dim, &out)
    }
}

/// Basis of `{v : M v = 0}`, one vector per free column of `rref(M)`.
pub fn kernel_basis(m: &SparseMatrix) -> Subspace {
    let (r, pivots) = rref(m);
    let field = m.field;
    let mut is_pivot = vec![false; m.cols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let mut vectors = Vec::new();
    for f in (0..m.cols).filter(|&c| !is_pivot[c]) {
        let mut entries = vec![(f, field.one())];
        for (row, &p) in r.data.iter().zip(&pivots) {
            if let Some(c) = row.get(f) {
                entries.push((p, -c));
            }
        }
        vectors.push(SparseVec::from_entries(entries));
    }
    Subspace::span(field, m.cols, &vectors)
}

/// Some `x` with `M x = b`, or `None` when the system is inconsistent.
pub fn solve(m: &SparseMatrix, b: &SparseVec) -> Result<Option<SparseVec>> {
    if b.support_bound() > m.rows {
        return Err(Error::DimensionMismatch {
            expected: m.rows,
            found: b.support_bound(),
        });
    }
    let mut e = Echelon::tracking(m.field);
    for col in m.columns() {
        e.insert(&col);
    }
    Ok(e.solve(b))
}

/// Vectors of `U` projecting to a basis of `U / W`.
pub fn subspace_quotient(u: &Subspace, w: &Subspace) -> Result<Vec<SparseVec>> {
    if u.ambient_dim != w.ambient_dim {
        return Err(Error::DimensionMismatch {
            expected: u.ambient_dim,
            found: w.ambient_dim,
        });
    }
    if !u.contains_subspace(w) {
        return Err(Error::NotContained);
    }
    let mut e = Echelon::new(u.field);
    for v in &w.basis {
        e.insert(v);
    }
    let mut reps = Vec::new();
    for v in &u.basis {
        if let Insert::Independent(_) = e.insert(v) {
            reps.push(v.clone());
        }
    }
    Ok(reps)
}

/// Evaluates `Σ c_k vectors[k]`.
pub fn combine(combo: &SparseVec, vectors: &[SparseVec]) -> SparseVec {
    let mut acc = super::sparse::Accumulator::new();
    for (k, c) in combo.iter() {
        acc.add_scaled(&vectors[k], c);
    }
    acc.finish()
}

/// Convenience for tests and reports.
pub fn vector_from_i64(field: Field, values: &[i64]) -> SparseVec {
    let dense: Vec<Scalar> = values.iter().map(|&x| field.from_i64(x)).collect();
    SparseVec::from_dense(&dense)
}
