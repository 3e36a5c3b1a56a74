//! Finite-dimensional coaugmented coalgebras.

use serde::Serialize;

use super::{add_term, Lin};
use crate::error::{Error, Result};
use crate::exactlin::{Field, Scalar, SparseVec};
use crate::gradedalg::{FdAlgebra, Word};

/// A coalgebra with basis `c_0 = 1, c_1, ..., c_{n-1}`. The counit is the `c_0`
/// coordinate, the coaugmentation sends `1` to `c_0`, and `c_1, ...` span `C̄`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FinCoalgebra {
    #[serde(skip)]
    pub field: Field,
    pub labels: Vec<String>,
    pub degrees: Vec<usize>,
    /// `coproduct[k]` lists `Δ(c_k)` with index `i * dim + j` for `c_i ⊗ c_j`.
    pub coproduct: Vec<SparseVec>,
}

impl FinCoalgebra {
    /// Validates degrees, counit laws and coassociativity.
    pub fn new(
        field: Field,
        labels: Vec<String>,
        degrees: Vec<usize>,
        coproduct: Vec<SparseVec>,
    ) -> Result<FinCoalgebra> {
        let n = labels.len();
        if n == 0 {
            return Err(Error::InvalidPresentation(
                "coalgebra must contain the coaugmentation".into(),
            ));
        }
        if degrees.len() != n || coproduct.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: degrees.len().min(coproduct.len()),
            });
        }
        let c = FinCoalgebra {
            field,
            labels,
            degrees,
            coproduct,
        };
        c.check()?;
        Ok(c)
    }

    /// The trivial coalgebra `k`.
    pub fn trivial(field: Field) -> FinCoalgebra {
        FinCoalgebra {
            field,
            labels: vec!["1".into()],
            degrees: vec![0],
            coproduct: vec![SparseVec::unit(0, field)],
        }
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn delta(&self, k: usize) -> impl Iterator<Item = (usize, usize, &Scalar)> + '_ {
        let n = self.dim();
        self.coproduct[k]
            .iter()
            .map(move |(x, c)| (x / n, x % n, c))
    }

    /// `Δ̄(c_k) = Δ(c_k) - 1⊗c_k - c_k⊗1`: the terms with both factors in `C̄`.
    pub fn reduced(&self, k: usize) -> impl Iterator<Item = (usize, usize, &Scalar)> + '_ {
        self.delta(k).filter(|&(i, j, _)| i != 0 && j != 0)
    }

    fn check(&self) -> Result<()> {
        let n = self.dim();
        let field = self.field;
        if self.degrees[0] != 0 || self.coproduct[0] != SparseVec::unit(0, field) {
            return Err(Error::Invariant("c_0 must be grouplike of degree 0".into()));
        }
        for k in 0..n {
            if self.coproduct[k].support_bound() > n * n {
                return Err(Error::DimensionMismatch {
                    expected: n * n,
                    found: self.coproduct[k].support_bound(),
                });
            }
            let mut left = Lin::new();
            let mut right = Lin::new();
            for (i, j, c) in self.delta(k) {
                if self.degrees[i] + self.degrees[j] != self.degrees[k] {
                    return Err(Error::Invariant(format!(
                        "coproduct of {} is not homogeneous",
                        self.labels[k]
                    )));
                }
                if i == 0 {
                    add_term(&mut left, j, c.clone());
                }
                if j == 0 {
                    add_term(&mut right, i, c.clone());
                }
            }
            let expected: Lin<usize> = [(k, field.one())].into_iter().collect();
            if left != expected || right != expected {
                return Err(Error::Invariant(format!(
                    "counit law fails on {}",
                    self.labels[k]
                )));
            }
        }
        if let Some(k) = self.coassociativity_failure() {
            return Err(Error::Invariant(format!(
                "coproduct is not coassociative on {}",
                self.labels[k]
            )));
        }
        Ok(())
    }

    /// First basis element on which `(Δ⊗1)Δ ≠ (1⊗Δ)Δ`.
    pub fn coassociativity_failure(&self) -> Option<usize> {
        (0..self.dim()).find(|&k| {
            let mut left: Lin<(usize, usize, usize)> = Lin::new();
            let mut right: Lin<(usize, usize, usize)> = Lin::new();
            for (i, j, c) in self.delta(k) {
                for (a, b, e) in self.delta(i) {
                    add_term(&mut left, (a, b, j), c * e);
                }
                for (a, b, e) in self.delta(j) {
                    add_term(&mut right, (i, a, b), c * e);
                }
            }
            left != right
        })
    }

    /// Least `m` with `Δ̄^m = 0` on `C̄` (iterated reduced coproduct into `C̄^{⊗(m+1)}`),
    /// or `NotCocomplete` when it survives `dim C̄` iterations.
    pub fn conilpotency(&self) -> Result<usize> {
        let n = self.dim();
        let mut layer: Vec<Lin<Word>> = (1..n)
            .map(|k| [(vec![k], self.field.one())].into_iter().collect())
            .collect();
        for m in 0..n {
            if layer.iter().all(|l| l.is_empty()) {
                return Ok(m);
            }
            for l in layer.iter_mut() {
                let mut next = Lin::new();
                for (w, c) in l.iter() {
                    let last = *w.last().expect("words are nonempty");
                    for (i, j, e) in self.reduced(last) {
                        let mut v = w[..w.len() - 1].to_vec();
                        v.push(i);
                        v.push(j);
                        add_term(&mut next, v, c * e);
                    }
                }
                *l = next;
            }
        }
        let k = layer
            .iter()
            .position(|l| !l.is_empty())
            .map(|i| i + 1)
            .unwrap_or(0);
        Err(Error::NotCocomplete(format!(
            "iterated reduced coproduct of {} does not vanish",
            self.labels[k]
        )))
    }

    /// The dual algebra `C^#`, with multiplication the transpose of `Δ`.
    pub fn dual_algebra(&self) -> Result<FdAlgebra> {
        let n = self.dim();
        let mut table = vec![crate::exactlin::Accumulator::new(); n * n];
        for k in 0..n {
            for (i, j, c) in self.delta(k) {
                table[i * n + j].add_term(k, c.clone());
            }
        }
        let labels = self.labels.iter().map(|s| toggle_star(s)).collect();
        FdAlgebra::from_structure_constants(
            self.field,
            labels,
            table.into_iter().map(|a| a.finish()).collect(),
        )
    }
}

fn toggle_star(s: &str) -> String {
    match s.strip_suffix('*') {
        Some(base) => base.to_string(),
        None => format!("{s}*"),
    }
}

/// `E^#` with `Δ` the transpose of the multiplication, counit the transpose of the unit
/// and coaugmentation the transpose of `ε`. The basis is dual to that of `E`.
pub fn dual_coalgebra(e: &FdAlgebra) -> Result<FinCoalgebra> {
    let n = e.dim();
    let mut coproduct = vec![crate::exactlin::Accumulator::new(); n];
    for i in 0..n {
        for j in 0..n {
            for (k, c) in e.basis_product(i, j).iter() {
                coproduct[k].add_term(i * n + j, c.clone());
            }
        }
    }
    FinCoalgebra::new(
        e.field,
        e.labels.iter().map(|s| toggle_star(s)).collect(),
        vec![0; n],
        coproduct.into_iter().map(|a| a.finish()).collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dual_numbers() {
        let f = Field::Rational;
        let c = dual_coalgebra(&FdAlgebra::truncated_polynomial(f, 2)).unwrap();
        // Δ(ε*) = 1*⊗ε* + ε*⊗1*
        let expected = SparseVec::from_entries(vec![(1, f.one()), (2, f.one())]);
        assert_eq!(c.coproduct[1], expected);
        assert_eq!(c.reduced(1).count(), 0);
        assert_eq!(c.conilpotency().unwrap(), 1);
    }

    #[test]
    fn truncated_polynomial_reduced_coproduct() {
        let f = Field::Rational;
        let c = dual_coalgebra(&FdAlgebra::truncated_polynomial(f, 4)).unwrap();
        let terms: Vec<(usize, usize)> = c.reduced(3).map(|(i, j, _)| (i, j)).collect();
        assert_eq!(terms, vec![(1, 2), (2, 1)]);
        assert_eq!(
            c.reduced(2).map(|(i, j, _)| (i, j)).collect::<Vec<_>>(),
            vec![(1, 1)]
        );
        assert_eq!(c.conilpotency().unwrap(), 3);
    }

    #[test]
    fn redualize_is_identity() {
        let f = Field::Rational;
        for e in [
            FdAlgebra::trivial(f),
            FdAlgebra::truncated_polynomial(f, 3),
            crate::samples::square_zero_plane(f).unwrap(),
        ] {
            let back = dual_coalgebra(&e).unwrap().dual_algebra().unwrap();
            assert_eq!(back.table, e.table);
            assert_eq!(back.labels, e.labels);
        }
        assert_eq!(
            dual_coalgebra(&FdAlgebra::trivial(f)).unwrap().coproduct,
            FinCoalgebra::trivial(f).coproduct
        );
    }

    #[test]
    fn non_conilpotent_is_rejected() {
        // c_1 grouplike-like: Δ(c_1) = 1⊗c_1 + c_1⊗1 + c_1⊗c_1
        let f = Field::Rational;
        let c = FinCoalgebra::new(
            f,
            vec!["1".into(), "g".into()],
            vec![0, 0],
            vec![
                SparseVec::unit(0, f),
                SparseVec::from_entries(vec![(1, f.one()), (2, f.one()), (3, f.one())]),
            ],
        )
        .unwrap();
        assert!(matches!(c.conilpotency(), Err(Error::NotCocomplete(_))));
    }
}
