use std::collections::BTreeMap;

use serde::Serialize;

use super::scalar::{Field, Scalar};
use crate::error::{Error, Result};

/// Sparse vector: entries sorted by index, no stored zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct SparseVec {
    entries: Vec<(usize, Scalar)>,
}

impl SparseVec {
    pub fn new() -> SparseVec {
        SparseVec {
            entries: Vec::new(),
        }
    }

    /// Builds a vector from unsorted entries, summing duplicates and dropping zeros.
    pub fn from_entries(mut raw: Vec<(usize, Scalar)>) -> SparseVec {
        raw.sort_by_key(|(i, _)| *i);
        let mut entries: Vec<(usize, Scalar)> = Vec::with_capacity(raw.len());
        for (i, c) in raw {
            match entries.last_mut() {
                Some((j, acc)) if *j == i => *acc += &c,
                _ => entries.push((i, c)),
            }
        }
        entries.retain(|(_, c)| !c.is_zero());
        SparseVec { entries }
    }

    pub fn from_map(map: BTreeMap<usize, Scalar>) -> SparseVec {
        SparseVec {
            entries: map.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    pub fn unit(i: usize, field: Field) -> SparseVec {
        SparseVec {
            entries: vec![(i, field.one())],
        }
    }

    pub fn from_dense(values: &[Scalar]) -> SparseVec {
        SparseVec {
            entries: values
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| (i, c.clone()))
                .collect(),
        }
    }

    pub fn to_dense(&self, len: usize, field: Field) -> Vec<Scalar> {
        let mut out = vec![field.zero(); len];
        for (i, c) in &self.entries {
            out[*i] = c.clone();
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &Scalar)> + '_ {
        self.entries.iter().map(|(i, c)| (*i, c))
    }

    pub fn entries(&self) -> &[(usize, Scalar)] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<(usize, Scalar)> {
        self.entries
    }

    pub fn get(&self, i: usize) -> Option<&Scalar> {
        self.entries
            .binary_search_by_key(&i, |(j, _)| *j)
            .ok()
            .map(|k| &self.entries[k].1)
    }

    pub fn leading(&self) -> Option<(usize, &Scalar)> {
        self.entries.first().map(|(i, c)| (*i, c))
    }

    /// Largest stored index plus one.
    pub fn support_bound(&self) -> usize {
        self.entries.last().map(|(i, _)| i + 1).unwrap_or(0)
    }

    pub fn scale(&self, c: &Scalar) -> SparseVec {
        if c.is_zero() {
            return SparseVec::new();
        }
        SparseVec {
            entries: self.entries.iter().map(|(i, x)| (*i, x * c)).collect(),
        }
    }

    pub fn neg(&self) -> SparseVec {
        SparseVec {
            entries: self.entries.iter().map(|(i, x)| (*i, -x)).collect(),
        }
    }

    /// `self + c * other`.
    pub fn add_scaled(&self, other: &SparseVec, c: &Scalar) -> SparseVec {
        if c.is_zero() || other.is_zero() {
            return self.clone();
        }
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let (mut a, mut b) = (
            self.entries.iter().peekable(),
            other.entries.iter().peekable(),
        );
        loop {
            match (a.peek(), b.peek()) {
                (Some((i, x)), Some((j, y))) => {
                    if i < j {
                        out.push((*i, x.clone()));
                        a.next();
                    } else if j < i {
                        out.push((*j, y * c));
                        b.next();
                    } else {
                        let s = x + &(y * c);
                        if !s.is_zero() {
                            out.push((*i, s));
                        }
                        a.next();
                        b.next();
                    }
                }
                (Some((i, x)), None) => {
                    out.push((*i, x.clone()));
                    a.next();
                }
                (None, Some((j, y))) => {
                    out.push((*j, y * c));
                    b.next();
                }
                (None, None) => break,
            }
        }
        SparseVec { entries: out }
    }

    pub fn add(&self, other: &SparseVec) -> SparseVec {
        match other.entries.first() {
            None => self.clone(),
            Some((_, c)) => self.add_scaled(other, &c.field().one()),
        }
    }

    pub fn sub(&self, other: &SparseVec) -> SparseVec {
        match other.entries.first() {
            None => self.clone(),
            Some((_, c)) => self.add_scaled(other, &-c.field().one()),
        }
    }

    pub fn dot(&self, other: &SparseVec, field: Field) -> Scalar {
        let mut acc = field.zero();
        let (mut a, mut b) = (
            self.entries.iter().peekable(),
            other.entries.iter().peekable(),
        );
        while let (Some((i, x)), Some((j, y))) = (a.peek(), b.peek()) {
            if i < j {
                a.next();
            } else if j < i {
                b.next();
            } else {
                acc += &(x * y);
                a.next();
                b.next();
            }
        }
        acc
    }

    /// Reindexes entries through `f`; the caller guarantees `f` is injective on the support.
    pub fn map_indices(&self, f: impl Fn(usize) -> usize) -> SparseVec {
        SparseVec::from_entries(
            self.entries
                .iter()
                .map(|(i, c)| (f(*i), c.clone()))
                .collect(),
        )
    }

    /// Keeps entries whose index satisfies the predicate.
    pub fn filter(&self, keep: impl Fn(usize) -> bool) -> SparseVec {
        SparseVec {
            entries: self
                .entries
                .iter()
                .filter(|(i, _)| keep(*i))
                .cloned()
                .collect(),
        }
    }

    /// Appends `other` shifted by `offset`; every index of `self` must be below `offset`.
    pub fn concat(&self, other: &SparseVec, offset: usize) -> SparseVec {
        debug_assert!(self.support_bound() <= offset);
        let mut entries = self.entries.clone();
        entries.extend(other.entries.iter().map(|(i, c)| (i + offset, c.clone())));
        SparseVec { entries }
    }
}

impl Serialize for SparseVec {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeSeq;
        let mut seq = serializer.serialize_seq(Some(self.entries.len()))?;
        for (i, c) in &self.entries {
            seq.serialize_element(&(i, c.to_string()))?;
        }
        seq.end()
    }
}

/// Accumulates a linear combination of sparse vectors.
#[derive(Clone, Debug, Default)]
pub struct Accumulator {
    map: BTreeMap<usize, Scalar>,
}

impl Accumulator {
    pub fn new() -> Accumulator {
        Accumulator {
            map: BTreeMap::new(),
        }
    }

    pub fn add_term(&mut self, i: usize, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.map.get_mut(&i) {
            Some(acc) => {
                *acc += &c;
                if acc.is_zero() {
                    self.map.remove(&i);
                }
            }
            None => {
                self.map.insert(i, c);
            }
        }
    }

    pub fn add_scaled(&mut self, v: &SparseVec, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        for (i, x) in v.iter() {
            self.add_term(i, x * c);
        }
    }

    pub fn finish(self) -> SparseVec {
        SparseVec::from_map(self.map)
    }
}

/// Row-major sparse matrix.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SparseMatrix {
    #[serde(skip)]
    pub field: Field,
    pub rows: usize,
    pub cols: usize,
    #[serde(rename = "entries")]
    pub data: Vec<SparseVec>,
}

impl SparseMatrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> SparseMatrix {
        SparseMatrix {
            field,
            rows,
            cols,
            data: vec![SparseVec::new(); rows],
        }
    }

    pub fn identity(field: Field, n: usize) -> SparseMatrix {
        SparseMatrix {
            field,
            rows: n,
            cols: n,
            data: (0..n).map(|i| SparseVec::unit(i, field)).collect(),
        }
    }

    /// Builds from rows, checking column bounds.
    pub fn from_rows(field: Field, cols: usize, data: Vec<SparseVec>) -> Result<SparseMatrix> {
        for r in &data {
            if r.support_bound() > cols {
                return Err(Error::DimensionMismatch {
                    expected: cols,
                    found: r.support_bound(),
                });
            }
        }
        Ok(SparseMatrix {
            field,
            rows: data.len(),
            cols,
            data,
        })
    }

    /// Builds the matrix whose columns are the given vectors.
    pub fn from_columns(field: Field, rows: usize, columns: &[SparseVec]) -> SparseMatrix {
        let mut data = vec![Vec::new(); rows];
        for (j, col) in columns.iter().enumerate() {
            for (i, c) in col.iter() {
                assert!(i < rows, "column entry out of range");
                data[i].push((j, c.clone()));
            }
        }
        SparseMatrix {
            field,
            rows,
            cols: columns.len(),
            data: data
                .into_iter()
                .map(|entries| SparseVec { entries })
                .collect(),
        }
    }

    pub fn from_dense(field: Field, values: &[Vec<Scalar>]) -> SparseMatrix {
        let cols = values.first().map(|r| r.len()).unwrap_or(0);
        SparseMatrix {
            field,
            rows: values.len(),
            cols,
            data: values.iter().map(|r| SparseVec::from_dense(r)).collect(),
        }
    }

    pub fn from_i64(field: Field, values: &[&[i64]]) -> SparseMatrix {
        let dense: Vec<Vec<Scalar>> = values
            .iter()
            .map(|r| r.iter().map(|&x| field.from_i64(x)).collect())
            .collect();
        let mut m = SparseMatrix::from_dense(field, &dense);
        if values.is_empty() {
            m.cols = 0;
        }
        m
    }

    pub fn to_dense(&self) -> Vec<Vec<Scalar>> {
        self.data
            .iter()
            .map(|r| r.to_dense(self.cols, self.field))
            .collect()
    }

    pub fn get(&self, i: usize, j: usize) -> Scalar {
        self.data[i]
            .get(j)
            .cloned()
            .unwrap_or_else(|| self.field.zero())
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(SparseVec::nnz).sum()
    }

    pub fn transpose(&self) -> SparseMatrix {
        SparseMatrix::from_columns(self.field, self.cols, &self.data)
    }

    /// Columns as sparse vectors.
    pub fn columns(&self) -> Vec<SparseVec> {
        self.transpose().data
    }

    /// `M v` for a column vector `v` of length `cols`.
    pub fn mul_vec(&self, v: &SparseVec) -> Result<SparseVec> {
        if v.support_bound() > self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: v.support_bound(),
            });
        }
        let entries = self
            .data
            .iter()
            .enumerate()
            .map(|(i, r)| (i, r.dot(v, self.field)))
            .filter(|(_, c)| !c.is_zero())
            .collect();
        Ok(SparseVec { entries })
    }

    pub fn mul(&self, other: &SparseMatrix) -> Result<SparseMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: other.rows,
            });
        }
        let data = self
            .data
            .iter()
            .map(|r| {
                let mut acc = Accumulator::new();
                for (k, c) in r.iter() {
                    acc.add_scaled(&other.data[k], c);
                }
                acc.finish()
            })
            .collect();
        Ok(SparseMatrix {
            field: self.field,
            rows: self.rows,
            cols: other.cols,
            data,
        })
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(SparseVec::is_zero)
    }
}
