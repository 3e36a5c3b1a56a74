//! Associated graded algebras of multiplicative filtrations.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactlin::{Echelon, Insert, SparseVec, Subspace};
use crate::gradedalg::FdAlgebra;

#[derive(Clone, Debug, Serialize)]
pub struct FilteredGraded {
    /// `dim F_i / F_{i+1}`.
    pub layer_dims: Vec<usize>,
    /// The associated graded algebra, graded by layer.
    pub algebra: FdAlgebra,
}

impl FilteredGraded {
    /// Layer 1 generates everything.
    pub fn generated_in_degree_one(&self) -> bool {
        let alg = &self.algebra;
        let grading = alg.grading.as_ref().expect("graded");
        let layer = |d: usize| -> Vec<SparseVec> {
            (0..alg.dim())
                .filter(|&i| grading[i] == d)
                .map(|i| SparseVec::unit(i, alg.field))
                .collect()
        };
        let ones = layer(1);
        let mut previous = ones.clone();
        for d in 2..self.layer_dims.len() {
            let mut e = Echelon::new(alg.field);
            for a in &ones {
                for b in &previous {
                    e.insert(&alg.mul(a, b));
                }
            }
            if e.rank() < self.layer_dims[d] {
                return false;
            }
            previous = layer(d);
        }
        true
    }
}

/// `gr(E) = ⊕ F_i / F_{i+1}` for `F_0 = E ⊇ F_1 = J ⊇ ... ⊇ F_L = 0` multiplicative.
pub fn associated_graded(alg: &FdAlgebra, filtration: &[Subspace]) -> Result<FilteredGraded> {
    let field = alg.field;
    let n = alg.dim();
    if filtration.last().map(|f| f.dim()) != Some(0)
        || filtration.first().map(|f| f.dim()) != Some(n)
    {
        return Err(Error::Invariant("filtration must run from E to 0".into()));
    }
    // Adapted basis: for each i a complement of F_{i+1} in F_i, with 1 in layer 0.
    let mut basis = Vec::new();
    let mut grading = Vec::new();
    let mut layer_dims = Vec::new();
    for i in 0..filtration.len() - 1 {
        let mut e = Echelon::new(field);
        for v in &filtration[i + 1].basis {
            e.insert(v);
        }
        let mut count = 0;
        let candidates: Vec<SparseVec> = if i == 0 {
            std::iter::once(alg.one())
                .chain(filtration[0].basis.iter().cloned())
                .collect()
        } else {
            filtration[i].basis.clone()
        };
        for v in candidates {
            if let Insert::Independent(_) = e.insert(&v) {
                basis.push(v);
                grading.push(i);
                count += 1;
            }
        }
        layer_dims.push(count);
    }
    if basis.len() != n || layer_dims[0] != 1 {
        return Err(Error::Invariant(
            "filtration is not exhaustive with F_1 = J".into(),
        ));
    }
    let mut coords = Echelon::tracking(field);
    for v in &basis {
        coords.insert(v);
    }
    let mut table = Vec::with_capacity(n * n);
    for a in 0..n {
        for b in 0..n {
            let prod = alg.mul(&basis[a], &basis[b]);
            let c = coords
                .solve(&prod)
                .ok_or_else(|| Error::Invariant("adapted basis does not span".into()))?;
            let target = grading[a] + grading[b];
            if c.iter().any(|(k, _)| grading[k] < target) {
                return Err(Error::Invariant(format!(
                    "filtration is not multiplicative: layers {} and {}",
                    grading[a], grading[b]
                )));
            }
            table.push(c.filter(|k| grading[k] == target));
        }
    }
    let labels = (0..n)
        .map(|k| {
            if k == 0 {
                "1".to_string()
            } else {
                format!("g{}_{}", grading[k], k)
            }
        })
        .collect();
    let mut out = FdAlgebra::from_structure_constants(field, labels, table)?;
    out.grading = Some(grading);
    Ok(FilteredGraded {
        layer_dims,
        algebra: out,
    })
}
