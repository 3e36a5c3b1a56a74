//! Finite-dimensional augmented algebras given by structure constants.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::expr::parse_expr;
use super::quotient::GradedQuotient;
use crate::error::{Error, Result};
use crate::exactlin::{Accumulator, Echelon, Field, Scalar, SparseVec, Subspace};

/// A finite-dimensional algebra with basis `e_0 = 1, e_1, ..., e_{n-1}` where
/// `e_1..` span the augmentation ideal `J = ker ε`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FdAlgebra {
    #[serde(serialize_with = "serialize_field")]
    pub field: Field,
    pub labels: Vec<String>,
    /// `table[i * dim + j] = e_i e_j`.
    pub table: Vec<SparseVec>,
    /// Optional internal grading of the basis, kept when the algebra came from a graded presentation.
    pub grading: Option<Vec<usize>>,
}

/// The on-disk form of an algebra given by structure constants. `basis` names `e_1, ...`
/// (the unit is implicit); `products` maps `"a*b"` to a linear combination of `1` and basis
/// names. Missing products are zero.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FdAlgebraFile {
    #[serde(default = "default_field")]
    pub field: String,
    pub basis: Vec<String>,
    #[serde(default)]
    pub products: BTreeMap<String, String>,
}

fn default_field() -> String {
    "Q".to_string()
}

fn serialize_field<S: serde::Serializer>(f: &Field, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&f.name())
}

impl FdAlgebra {
    /// Validates unit, augmentation and associativity.
    pub fn from_structure_constants(
        field: Field,
        labels: Vec<String>,
        table: Vec<SparseVec>,
    ) -> Result<FdAlgebra> {
        let n = labels.len();
        if n == 0 {
            return Err(Error::InvalidPresentation(
                "algebra must contain the unit".into(),
            ));
        }
        if table.len() != n * n {
            return Err(Error::DimensionMismatch {
                expected: n * n,
                found: table.len(),
            });
        }
        let alg = FdAlgebra {
            field,
            labels,
            table,
            grading: None,
        };
        alg.check()?;
        Ok(alg)
    }

    pub fn parse_with_field(text: &str, field: Option<Field>) -> Result<FdAlgebra> {
        let file: FdAlgebraFile = serde_json::from_str(text).map_err(|e| Error::Syntax {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })?;
        FdAlgebra::from_file(&file, field)
    }

    pub fn from_file(file: &FdAlgebraFile, field: Option<Field>) -> Result<FdAlgebra> {
        let field = match field {
            Some(f) => f,
            None => file.field.parse()?,
        };
        let names = &file.basis;
        let mut seen = std::collections::HashSet::new();
        for name in names {
            if !seen.insert(name) {
                return Err(Error::DuplicateGenerator(name.clone()));
            }
        }
        let n = names.len() + 1;
        let linear = |text: &str| -> Result<SparseVec> {
            let p = parse_expr(text, names, field)?;
            let mut acc = Accumulator::new();
            for (w, c) in &p.terms {
                match w.as_slice() {
                    [] => acc.add_term(0, c.clone()),
                    [i] => acc.add_term(i + 1, c.clone()),
                    _ => {
                        return Err(Error::InvalidPresentation(format!(
                            "`{text}` is not a linear combination of basis elements"
                        )))
                    }
                }
            }
            Ok(acc.finish())
        };
        let mut table = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                table.push(match (i, j) {
                    (0, _) => SparseVec::unit(j, field),
                    (_, 0) => SparseVec::unit(i, field),
                    _ => SparseVec::new(),
                });
            }
        }
        for (key, value) in &file.products {
            let p = parse_expr(key, names, field)?;
            let word = match p.terms.iter().next() {
                Some((w, c)) if p.terms.len() == 1 && w.len() == 2 && c.is_one() => w.clone(),
                _ => {
                    return Err(Error::InvalidPresentation(format!(
                        "product key `{key}` must be `a*b`"
                    )))
                }
            };
            table[(word[0] + 1) * n + word[1] + 1] = linear(value)?;
        }
        let mut labels = vec!["1".to_string()];
        labels.extend(names.iter().cloned());
        FdAlgebra::from_structure_constants(field, labels, table)
    }

    fn check(&self) -> Result<()> {
        let n = self.dim();
        for v in &self.table {
            if v.support_bound() > n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: v.support_bound(),
                });
            }
        }
        for i in 0..n {
            let e = SparseVec::unit(i, self.field);
            if self.basis_product(0, i) != &e || self.basis_product(i, 0) != &e {
                return Err(Error::InvalidPresentation(format!(
                    "e_0 is not a unit on {}",
                    self.labels[i]
                )));
            }
        }
        for i in 1..n {
            for j in 1..n {
                if self.basis_product(i, j).get(0).is_some() {
                    return Err(Error::InvalidPresentation(format!(
                        "augmentation is not multiplicative on {} * {}",
                        self.labels[i], self.labels[j]
                    )));
                }
            }
        }
        if let Some((i, j, k)) = self.associativity_failure() {
            return Err(Error::InvalidPresentation(format!(
                "not associative on ({}, {}, {})",
                self.labels[i], self.labels[j], self.labels[k]
            )));
        }
        Ok(())
    }

    /// First basis triple violating associativity, if any.
    pub fn associativity_failure(&self) -> Option<(usize, usize, usize)> {
        let n = self.dim();
        for i in 0..n {
            for j in 0..n {
                let ij = self.basis_product(i, j).clone();
                for k in 0..n {
                    let left = self.mul(&ij, &SparseVec::unit(k, self.field));
                    let right = self.mul(&SparseVec::unit(i, self.field), self.basis_product(j, k));
                    if left != right {
                        return Some((i, j, k));
                    }
                }
            }
        }
        None
    }

    /// The ground field itself.
    pub fn trivial(field: Field) -> FdAlgebra {
        FdAlgebra {
            field,
            labels: vec!["1".into()],
            table: vec![SparseVec::unit(0, field)],
            grading: Some(vec![0]),
        }
    }

    /// `k[t]/(t^n)` with basis `1, t, ..., t^{n-1}`.
    pub fn truncated_polynomial(field: Field, n: usize) -> FdAlgebra {
        assert!(n >= 1);
        let labels = (0..n)
            .map(|i| match i {
                0 => "1".to_string(),
                1 => "t".to_string(),
                _ => format!("t^{i}"),
            })
            .collect();
        let mut table = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                table.push(if i + j < n {
                    SparseVec::unit(i + j, field)
                } else {
                    SparseVec::new()
                });
            }
        }
        FdAlgebra {
            field,
            labels,
            table,
            grading: Some((0..n).collect()),
        }
    }

    /// The finite-dimensional algebra underlying a graded presentation whose
    /// positive part is nilpotent inside the truncation window.
    pub fn from_graded(q: &GradedQuotient) -> Result<FdAlgebra> {
        let d = q.max_degree();
        let max_gen = q.presentation().degrees().into_iter().max().unwrap_or(1);
        let dims = q.hilbert_function(d)?;
        let top = (1..=d)
            .find(|&n| (n..n + max_gen).all(|m| m <= d && dims[m] == 0))
            .ok_or_else(|| {
                Error::NotLocal(format!(
                    "the algebra does not vanish in a block of {max_gen} consecutive degrees within the window {d}"
                ))
            })?;
        let mut offsets = vec![0usize; top + 1];
        for n in 1..=top {
            offsets[n] = offsets[n - 1] + dims[n - 1];
        }
        let total = offsets[top];
        let mut labels = Vec::with_capacity(total);
        let mut grading = Vec::with_capacity(total);
        for (n, &dim) in dims.iter().enumerate().take(top) {
            for i in 0..dim {
                labels.push(q.label(n, i)?);
                grading.push(n);
            }
        }
        let mut table = Vec::with_capacity(total * total);
        for a in 0..total {
            for b in 0..total {
                let (p, i) = (grading[a], a - offsets[grading[a]]);
                let (r, j) = (grading[b], b - offsets[grading[b]]);
                if p + r >= top {
                    table.push(SparseVec::new());
                } else {
                    let off = offsets[p + r];
                    table.push(q.multiply_basis(p, i, r, j)?.map_indices(|k| k + off));
                }
            }
        }
        Ok(FdAlgebra {
            field: q.field(),
            labels,
            table,
            grading: Some(grading),
        })
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn basis_product(&self, i: usize, j: usize) -> &SparseVec {
        &self.table[i * self.dim() + j]
    }

    pub fn mul(&self, u: &SparseVec, v: &SparseVec) -> SparseVec {
        let mut acc = Accumulator::new();
        for (i, a) in u.iter() {
            for (j, b) in v.iter() {
                acc.add_scaled(self.basis_product(i, j), &(a * b));
            }
        }
        acc.finish()
    }

    pub fn one(&self) -> SparseVec {
        SparseVec::unit(0, self.field)
    }

    pub fn augmentation(&self, v: &SparseVec) -> Scalar {
        v.get(0).cloned().unwrap_or_else(|| self.field.zero())
    }

    /// `J = ker ε`.
    pub fn augmentation_ideal(&self) -> Subspace {
        Subspace {
            field: self.field,
            ambient_dim: self.dim(),
            basis: (1..self.dim())
                .map(|i| SparseVec::unit(i, self.field))
                .collect(),
        }
    }

    /// Span of all products `u v` with `u ∈ U`, `v ∈ W`.
    pub fn product_space(&self, u: &Subspace, w: &Subspace) -> Subspace {
        let mut e = Echelon::new(self.field);
        for a in &u.basis {
            for b in &w.basis {
                e.insert(&self.mul(a, b));
            }
        }
        Subspace {
            field: self.field,
            ambient_dim: self.dim(),
            basis: e.rref_rows(),
        }
    }

    /// `[J^0 = E, J^1, J^2, ...]` up to and including the first zero power;
    /// `NotLocal` when `J` is not nilpotent.
    pub fn radical_powers(&self) -> Result<Vec<Subspace>> {
        let j = self.augmentation_ideal();
        let mut powers = vec![Subspace::full(self.field, self.dim()), j.clone()];
        while powers.last().unwrap().dim() > 0 {
            let next = self.product_space(powers.last().unwrap(), &j);
            if next.dim() == powers.last().unwrap().dim() {
                return Err(Error::NotLocal(format!(
                    "augmentation ideal is not nilpotent: J^{} = J^{}",
                    powers.len(),
                    powers.len() - 1
                )));
            }
            powers.push(next);
        }
        Ok(powers)
    }

    /// Nilpotency index check with dimensions of `J^i / J^{i+1}`.
    pub fn radical_layers(&self) -> Result<Vec<usize>> {
        let powers = self.radical_powers()?;
        Ok(powers.windows(2).map(|w| w[0].dim() - w[1].dim()).collect())
    }

    /// Matrix (as columns) of left multiplication by `a`.
    pub fn left_mult_columns(&self, a: &SparseVec) -> Vec<SparseVec> {
        (0..self.dim())
            .map(|j| self.mul(a, &SparseVec::unit(j, self.field)))
            .collect()
    }

    /// The opposite algebra (no grading signs: these algebras are ungraded or even).
    pub fn opposite(&self) -> FdAlgebra {
        let n = self.dim();
        let mut table = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                table.push(self.basis_product(j, i).clone());
            }
        }
        FdAlgebra {
            field: self.field,
            labels: self.labels.clone(),
            table,
            grading: self.grading.clone(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gradedalg::Presentation;

    #[test]
    fn truncated_polynomial_layers() {
        let e = FdAlgebra::truncated_polynomial(Field::Rational, 4);
        assert_eq!(e.radical_layers().unwrap(), vec![1, 1, 1, 1]);
        assert!(e.associativity_failure().is_none());
    }

    #[test]
    fn from_graded_matches_truncated_polynomial() {
        let p = Presentation::from_strings(Field::Rational, &[("t", 1)], &["t^4"], &[], 5).unwrap();
        let e = FdAlgebra::from_graded(&GradedQuotient::new(p)).unwrap();
        assert_eq!(
            e.table,
            FdAlgebra::truncated_polynomial(Field::Rational, 4).table
        );
        assert_eq!(e.labels, vec!["1", "t", "t^2", "t^3"]);
    }

    #[test]
    fn non_nilpotent_ideal_is_rejected() {
        let q = Field::Rational;
        // k x k with idempotent e_1: e_1 e_1 = e_1.
        let table = vec![
            SparseVec::unit(0, q),
            SparseVec::unit(1, q),
            SparseVec::unit(1, q),
            SparseVec::unit(1, q),
        ];
        let r = FdAlgebra::from_structure_constants(q, vec!["1".into(), "e".into()], table);
        assert!(r.is_ok());
        assert!(matches!(
            r.unwrap().radical_powers(),
            Err(Error::NotLocal(_))
        ));
    }

    #[test]
    fn non_associative_table_is_rejected() {
        let q = Field::Rational;
        // a*a = b, a*b = 0, b*a = b  violates (a a) a = a (a a)
        let mut table = vec![SparseVec::new(); 9];
        for i in 0..3 {
            table[i] = SparseVec::unit(i, q);
            table[i * 3] = SparseVec::unit(i, q);
        }
        table[4] = SparseVec::unit(2, q);
        table[7] = SparseVec::unit(2, q);
        let r =
            FdAlgebra::from_structure_constants(q, vec!["1".into(), "a".into(), "b".into()], table);
        assert!(r.is_err());
    }

    #[test]
    fn parse_structure_constants() {
        let text = r#"{"basis": ["u", "v"], "products": {"u*v": "0"}}"#;
        let e = FdAlgebra::parse_with_field(text, None).unwrap();
        assert_eq!(e.dim(), 3);
        assert_eq!(e.radical_layers().unwrap(), vec![1, 2]);
        let t4 = r#"{"basis": ["t", "t2", "t3"], "products": {"t*t": "t2", "t*t2": "t3", "t2*t": "t3"}}"#;
        let e = FdAlgebra::parse_with_field(t4, None).unwrap();
        assert_eq!(
            e.table,
            FdAlgebra::truncated_polynomial(Field::Rational, 4).table
        );
        let bad = r#"{"basis": ["t"], "products": {"t": "t"}}"#;
        assert!(FdAlgebra::parse_with_field(bad, None).is_err());
        let over_gf2 = r#"{"basis": ["a", "b"], "products": {"a*a": "b"}, "field": "GF(2)"}"#;
        assert!(
            FdAlgebra::parse_with_field(over_gf2, None)
                .unwrap()
                .field
                .name()
                == "GF(2)"
        );
    }
}
