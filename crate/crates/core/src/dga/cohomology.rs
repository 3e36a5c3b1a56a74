use serde::Serialize;

use super::CochainAlgebra;
use crate::error::{Error, Result};
use crate::exactlin::{Echelon, Field, SparseVec, Subspace};

/// `H(A)` through a degree bound, with chosen cocycle representatives and products.
#[derive(Clone, Debug)]
pub struct CohomologyAlgebra {
    field: Field,
    max_degree: usize,
    /// The window `D` of the source algebra; degree `D` itself is indeterminate.
    pub source_window: usize,
    pub dims: Vec<usize>,
    /// Cocycle representatives in `A^n`, one per basis class of `H^n`.
    pub reps: Vec<Vec<SparseVec>>,
    labels: Vec<Vec<String>>,
    /// Tracking echelon per degree: the representatives first, then a basis of the coboundaries.
    solvers: Vec<Echelon>,
    products: Vec<Vec<SparseVec>>,
}

/// Computes `H^n(A)` for `0 <= n <= dmax`; requires `dmax < D`.
pub fn cohomology(a: &dyn CochainAlgebra, dmax: usize) -> Result<CohomologyAlgebra> {
    let d = a.max_degree();
    if dmax >= d {
        return Err(Error::DegreeOutOfRange {
            requested: dmax,
            max: d.saturating_sub(1),
        });
    }
    let field = a.field();
    let mut dims = Vec::new();
    let mut reps = Vec::new();
    let mut labels = Vec::new();
    let mut solvers = Vec::new();
    for n in 0..=dmax {
        let dim_n = a.dim(n)?;
        let cocycles = crate::exactlin::kernel_basis(&crate::exactlin::SparseMatrix::from_columns(
            field,
            a.dim(n + 1)?,
            &a.diff_columns(n)?,
        ));
        let boundaries = if n == 0 {
            Subspace::zero(field, dim_n)
        } else {
            Subspace::span(field, dim_n, &a.diff_columns(n - 1)?)
        };
        let r = crate::exactlin::subspace_quotient(&cocycles, &boundaries)?;
        let mut solver = Echelon::tracking(field);
        for v in r.iter().chain(boundaries.basis.iter()) {
            solver.insert(v);
        }
        labels.push(r.iter().map(|v| format!("[{}]", a.render(n, v))).collect());
        dims.push(r.len());
        reps.push(r);
        solvers.push(solver);
    }
    let mut h = CohomologyAlgebra {
        field,
        max_degree: dmax,
        source_window: d,
        dims,
        reps,
        labels,
        solvers,
        products: Vec::new(),
    };
    h.products = h.product_table(a, &h.reps)?;
    Ok(h)
}

impl CohomologyAlgebra {
    /// Coordinates in `H^n` of a cocycle of `A^n`.
    pub fn express(&self, n: usize, z: &SparseVec) -> Result<SparseVec> {
        let x = self.solvers[n]
            .solve(z)
            .ok_or_else(|| Error::Invariant(format!("element of degree {n} is not a cocycle")))?;
        let k = self.dims[n];
        Ok(x.filter(|i| i < k))
    }

    /// Structure constants computed from the given representatives (same classes as `self.reps`).
    pub fn product_table(
        &self,
        a: &dyn CochainAlgebra,
        reps: &[Vec<SparseVec>],
    ) -> Result<Vec<Vec<SparseVec>>> {
        let m = self.max_degree;
        let mut table = vec![Vec::new(); (m + 1) * (m + 1)];
        for p in 0..=m {
            for q in 0..=m - p {
                let mut entries = Vec::with_capacity(self.dims[p] * self.dims[q]);
                for u in &reps[p] {
                    for v in &reps[q] {
                        entries.push(self.express(p + q, &a.mul(p, u, q, v)?)?);
                    }
                }
                table[p * (m + 1) + q] = entries;
            }
        }
        Ok(table)
    }

    pub fn products(&self) -> &[Vec<SparseVec>] {
        &self.products
    }

    pub fn report(&self) -> CohomologyReport {
        let m = self.max_degree;
        let mut products = Vec::new();
        for p in 1..=m {
            for q in 1..=m - p {
                for i in 0..self.dims[p] {
                    for j in 0..self.dims[q] {
                        let v = &self.products[p * (m + 1) + q][i * self.dims[q] + j];
                        if !v.is_zero() {
                            products.push(ProductEntry {
                                left: self.labels[p][i].clone(),
                                right: self.labels[q][j].clone(),
                                degree: p + q,
                                value: v.clone(),
                            });
                        }
                    }
                }
            }
        }
        CohomologyReport {
            dims: self.dims.clone(),
            indeterminate_degree: self.source_window,
            basis: self.labels.clone(),
            products,
        }
    }
}

impl CochainAlgebra for CohomologyAlgebra {
    fn field(&self) -> Field {
        self.field
    }

    fn max_degree(&self) -> usize {
        self.max_degree
    }

    fn dim(&self, n: usize) -> Result<usize> {
        self.dims.get(n).copied().ok_or(Error::DegreeOutOfRange {
            requested: n,
            max: self.max_degree,
        })
    }

    fn multiply_basis(&self, p: usize, i: usize, q: usize, j: usize) -> Result<SparseVec> {
        if p + q > self.max_degree {
            return Err(Error::DegreeOutOfRange {
                requested: p + q,
                max: self.max_degree,
            });
        }
        Ok(self.products[p * (self.max_degree + 1) + q][i * self.dims[q] + j].clone())
    }

    fn differential_basis(&self, n: usize, _i: usize) -> Result<SparseVec> {
        if n + 1 > self.max_degree {
            return Err(Error::DegreeOutOfRange {
                requested: n + 1,
                max: self.max_degree,
            });
        }
        Ok(SparseVec::new())
    }

    fn label(&self, n: usize, i: usize) -> String {
        self.labels[n][i].clone()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ProductEntry {
    pub left: String,
    pub right: String,
    pub degree: usize,
    pub value: SparseVec,
}

#[derive(Clone, Debug, Serialize)]
pub struct CohomologyReport {
    pub dims: Vec<usize>,
    pub indeterminate_degree: usize,
    pub basis: Vec<Vec<String>>,
    pub products: Vec<ProductEntry>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dga::DgAlgebra;
    use crate::gradedalg::Presentation;

    #[test]
    fn example_a_cohomology() {
        let p = Presentation::from_strings(
            Field::Rational,
            &[("x", 1), ("y", 1)],
            &["y^2", "y*x"],
            &[("x", "x*y")],
            6,
        )
        .unwrap();
        let a = DgAlgebra::new(p);
        let h = cohomology(&a, 5).unwrap();
        assert_eq!(h.dims, vec![1, 1, 0, 0, 0, 0]);
        assert_eq!(h.label(1, 0), "[y]");
        assert!(cohomology(&a, 6).is_err());
    }

    #[test]
    fn polynomial_ring_cohomology_is_itself() {
        let p = Presentation::from_strings(Field::Rational, &[("x", 1)], &[], &[], 6).unwrap();
        let a = DgAlgebra::new(p);
        let h = cohomology(&a, 5).unwrap();
        assert_eq!(h.dims, vec![1; 6]);
        assert_eq!(
            h.multiply_basis(2, 0, 3, 0).unwrap(),
            SparseVec::unit(0, Field::Rational)
        );
    }
}
