//! Incremental row echelon form with optional tracking of input combinations.

use std::collections::BTreeMap;

use super::scalar::{Field, Scalar};
use super::sparse::{SparseMatrix, SparseVec};

/// Matrices with both sides at most this size are reduced densely.
pub const DEFAULT_DENSE_THRESHOLD: usize = 64;

/// Outcome of inserting a vector into an [`Echelon`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Insert {
    /// The vector enlarged the span; new pivot column.
    Independent(usize),
    /// The vector was already in the span. When tracking, carries the
    /// coefficients `c` (over insertion indices) with `Σ c_k v_k = 0` and `c_new = 1`.
    Dependent(Option<SparseVec>),
}

/// A semi-echelon basis: each row has leading entry 1 at its pivot and no
/// two rows share a pivot. Rows are reduced lazily (pivot order only).
#[derive(Clone, Debug)]
pub struct Echelon {
    field: Field,
    rows: Vec<SparseVec>,
    pivot_row: BTreeMap<usize, usize>,
    combos: Option<Vec<SparseVec>>,
    inserted: usize,
}

impl Echelon {
    pub fn new(field: Field) -> Echelon {
        Echelon {
            field,
            rows: Vec::new(),
            pivot_row: BTreeMap::new(),
            combos: None,
            inserted: 0,
        }
    }

    /// Echelon that records each basis row as a combination of the inserted vectors.
    pub fn tracking(field: Field) -> Echelon {
        Echelon {
            combos: Some(Vec::new()),
            ..Echelon::new(field)
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn inserted(&self) -> usize {
        self.inserted
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.pivot_row.keys().copied()
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.pivot_row.contains_key(&col)
    }

    pub fn rows(&self) -> &[SparseVec] {
        &self.rows
    }

    /// Reduces `v` against the basis. Returns the residual (zero at every
    /// pivot column) and the coefficients of the rows subtracted, keyed by row index.
    pub fn reduce(&self, v: &SparseVec) -> (SparseVec, Vec<(usize, Scalar)>) {
        let mut acc: BTreeMap<usize, Scalar> = v.iter().map(|(i, c)| (i, c.clone())).collect();
        let mut used = Vec::new();
        let mut cursor = 0usize;
        loop {
            let next = acc
                .range(cursor..)
                .find(|(col, _)| self.pivot_row.contains_key(col))
                .map(|(col, c)| (*col, c.clone()));
            let Some((col, c)) = next else { break };
            let r = self.pivot_row[&col];
            for (j, x) in self.rows[r].iter() {
                let delta = x * &c;
                match acc.get_mut(&j) {
                    Some(e) => {
                        *e -= &delta;
                        if e.is_zero() {
                            acc.remove(&j);
                        }
                    }
                    None => {
                        acc.insert(j, -delta);
                    }
                }
            }
            used.push((r, c));
            cursor = col + 1;
        }
        (SparseVec::from_map(acc), used)
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).0.is_zero()
    }

    /// Inserts `v`; see [`Insert`].
    pub fn insert(&mut self, v: &SparseVec) -> Insert {
        let (residual, used) = self.reduce(v);
        let index = self.inserted;
        self.inserted += 1;
        let combo = self.combos.as_ref().map(|combos| {
            let mut acc = super::sparse::Accumulator::new();
            acc.add_term(index, self.field.one());
            for (r, c) in &used {
                acc.add_scaled(&combos[*r], &-c);
            }
            acc.finish()
        });
        match residual.leading() {
            None => Insert::Dependent(combo),
            Some((pivot, lead)) => {
                let inv = lead.inv().expect("leading entry is nonzero");
                let row = residual.scale(&inv);
                if let (Some(combos), Some(combo)) = (self.combos.as_mut(), combo) {
                    combos.push(combo.scale(&inv));
                }
                self.pivot_row.insert(pivot, self.rows.len());
                self.rows.push(row);
                Insert::Independent(pivot)
            }
        }
    }

    /// Coefficients `x` over insertion indices with `Σ x_k v_k = b`, if `b` is in the span.
    /// Panics unless the echelon was created with [`Echelon::tracking`].
    pub fn solve(&self, b: &SparseVec) -> Option<SparseVec> {
        let combos = self
            .combos
            .as_ref()
            .expect("solve requires a tracking echelon");
        let (residual, used) = self.reduce(b);
        if !residual.is_zero() {
            return None;
        }
        let mut acc = super::sparse::Accumulator::new();
        for (r, c) in &used {
            acc.add_scaled(&combos[*r], c);
        }
        Some(acc.finish())
    }

    /// Coordinates of `b` with respect to the basis rows, if `b` is in the span.
    pub fn coordinates(&self, b: &SparseVec) -> Option<SparseVec> {
        let (residual, used) = self.reduce(b);
        if !residual.is_zero() {
            return None;
        }
        Some(SparseVec::from_entries(used))
    }

    /// Fully reduced rows sorted by pivot.
    pub fn rref_rows(&self) -> Vec<SparseVec> {
        let mut order: Vec<(usize, usize)> = self.pivot_row.iter().map(|(p, r)| (*p, *r)).collect();
        order.sort();
        let mut done: BTreeMap<usize, SparseVec> = BTreeMap::new();
        for &(pivot, r) in order.iter().rev() {
            let mut row = self.rows[r].clone();
            let targets: Vec<(usize, Scalar)> = row
                .iter()
                .filter(|(j, _)| *j > pivot && done.contains_key(j))
                .map(|(j, c)| (j, c.clone()))
                .collect();
            for (j, c) in targets {
                row = row.add_scaled(&done[&j], &-c);
            }
            done.insert(pivot, row);
        }
        done.into_values().collect()
    }
}

/// Dense Gauss-Jordan elimination; returns reduced rows (zero rows dropped) and pivots.
pub fn dense_rref(rows: &[Vec<Scalar>], cols: usize) -> (Vec<Vec<Scalar>>, Vec<usize>) {
    let mut m: Vec<Vec<Scalar>> = rows.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].inv().expect("pivot is nonzero");
        for x in m[r].iter_mut() {
            *x = &*x * &inv;
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, p) in row.iter_mut().zip(&pivot_row).take(cols) {
                    *x -= &(p * &f);
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == m.len() {
            break;
        }
    }
    m.truncate(r);
    (m, pivots)
}

/// Reduced row echelon form (same shape as `m`, zero rows at the bottom) and pivot columns.
pub fn rref(m: &SparseMatrix) -> (SparseMatrix, Vec<usize>) {
    rref_with_threshold(m, DEFAULT_DENSE_THRESHOLD)
}

pub fn rref_with_threshold(m: &SparseMatrix, threshold: usize) -> (SparseMatrix, Vec<usize>) {
    let (mut rows, pivots) = if m.rows <= threshold && m.cols <= threshold {
        let (dense, pivots) = dense_rref(&m.to_dense(), m.cols);
        (
            dense
                .iter()
                .map(|r| SparseVec::from_dense(r))
                .collect::<Vec<_>>(),
            pivots,
        )
    } else {
        let mut e = Echelon::new(m.field);
        for row in &m.data {
            e.insert(row);
        }
        let rows = e.rref_rows();
        let pivots = rows.iter().map(|r| r.leading().unwrap().0).collect();
        (rows, pivots)
    };
    rows.resize(m.rows, SparseVec::new());
    (
        SparseMatrix {
            field: m.field,
            rows: m.rows,
            cols: m.cols,
            data: rows,
        },
        pivots,
    )
}

pub fn rank(m: &SparseMatrix) -> usize {
    let mut e = Echelon::new(m.field);
    for row in &m.data {
        e.insert(row);
    }
    e.rank()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rref_examples() {
        let q = Field::Rational;
        let (r, p) = rref(&SparseMatrix::from_i64(q, &[&[2, 4], &[1, 2]]));
        assert_eq!(r, SparseMatrix::from_i64(q, &[&[1, 2], &[0, 0]]));
        assert_eq!(p, vec![0]);
        let (r, p) = rref(&SparseMatrix::zeros(q, 2, 2));
        assert!(r.is_zero());
        assert!(p.is_empty());
        let (r, p) = rref(&SparseMatrix::identity(q, 3));
        assert_eq!(r, SparseMatrix::identity(q, 3));
        assert_eq!(p, vec![0, 1, 2]);
    }

    #[test]
    fn sparse_and_dense_paths_agree() {
        let q = Field::Rational;
        let m = SparseMatrix::from_i64(
            q,
            &[&[0, 2, 4, 1], &[1, 1, 0, 3], &[1, 3, 4, 4], &[2, 0, -4, 5]],
        );
        assert_eq!(rref_with_threshold(&m, 0), rref_with_threshold(&m, 64));
    }

    #[test]
    fn tracked_dependency_is_a_relation() {
        let q = Field::Rational;
        let mut e = Echelon::tracking(q);
        let vs = [
            SparseVec::from_dense(&[q.from_i64(1), q.from_i64(2)]),
            SparseVec::from_dense(&[q.from_i64(3), q.from_i64(1)]),
            SparseVec::from_dense(&[q.from_i64(5), q.from_i64(5)]),
        ];
        assert!(matches!(e.insert(&vs[0]), Insert::Independent(0)));
        assert!(matches!(e.insert(&vs[1]), Insert::Independent(1)));
        let Insert::Dependent(Some(c)) = e.insert(&vs[2]) else {
            panic!()
        };
        let mut acc = SparseVec::new();
        for (k, x) in c.iter() {
            acc = acc.add_scaled(&vs[k], x);
        }
        assert!(acc.is_zero());
    }
}
