//! `Tor^A(k,k)` and `Ext_A(k,k)` dimensions from the complexes `k ⊗_A P` and `Hom_A(P, k)`.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::exactlin::{rank, SparseMatrix, SparseVec};
use crate::resolution::Resolution;

#[derive(Clone, Debug, Serialize)]
pub struct DimTable {
    /// Generator counts by `(stage, degree)`.
    pub counts: Vec<(usize, usize, usize)>,
    /// Cohomology dimensions of the reduced complex, by generator degree.
    pub by_degree: BTreeMap<usize, usize>,
    /// Rank of the induced differential; zero for a minimal resolution.
    pub induced_rank: usize,
}

impl DimTable {
    pub fn concentrated_in_degree_zero(&self) -> bool {
        self.by_degree.iter().all(|(&d, &n)| d == 0 || n == 0)
    }
}

/// Matrix of `k ⊗_A d` on the generators: entry `(h, g)` is the coefficient of `1·h` in `d(g)`.
fn induced_differential(p: &Resolution) -> SparseMatrix {
    let m = &p.module;
    let n = m.generators.len();
    let cols: Vec<SparseVec> = m
        .generators
        .iter()
        .map(|g| SparseVec::from_entries(m.unit_components(g.degree + 1, &g.d)))
        .collect();
    SparseMatrix::from_columns(p.field(), n, &cols)
}

/// `H(k ⊗_A P)` in each generator degree. With `dual`, the transposed complex `Hom_A(P,k)`.
fn reduced_dims(p: &Resolution, dual: bool) -> DimTable {
    let field = p.field();
    let gens = p.generators();
    let mut d = induced_differential(p);
    if dual {
        d = d.transpose();
    }
    let mut degrees: Vec<usize> = gens.iter().map(|g| g.degree).collect();
    degrees.sort();
    degrees.dedup();
    let block =
        |deg: usize| -> Vec<usize> { (0..gens.len()).filter(|&g| gens[g].degree == deg).collect() };
    // restriction of d to columns in degree a, rows in degree b
    let sub = |cols: &[usize], rows: &[usize]| -> usize {
        if cols.is_empty() || rows.is_empty() {
            return 0;
        }
        let data: Vec<SparseVec> = rows
            .iter()
            .map(|&r| {
                SparseVec::from_entries(
                    cols.iter()
                        .enumerate()
                        .map(|(k, &c)| (k, d.get(r, c)))
                        .collect(),
                )
            })
            .collect();
        rank(&SparseMatrix::from_rows(field, cols.len(), data).expect("shape"))
    };
    let mut by_degree = BTreeMap::new();
    let induced_rank = rank(&d);
    for &deg in &degrees {
        let here = block(deg);
        // k ⊗ d raises degree by one; its transpose lowers it.
        let (next, prev) = if dual {
            (
                if deg > 0 { block(deg - 1) } else { Vec::new() },
                block(deg + 1),
            )
        } else {
            (
                block(deg + 1),
                if deg > 0 { block(deg - 1) } else { Vec::new() },
            )
        };
        let out = sub(&here, &next);
        let inc = sub(&prev, &here);
        by_degree.insert(deg, here.len() - out - inc);
    }
    DimTable {
        counts: p.counts(),
        by_degree,
        induced_rank,
    }
}

pub fn tor_dims(p: &Resolution) -> DimTable {
    reduced_dims(p, false)
}

pub fn ext_dims(p: &Resolution) -> DimTable {
    reduced_dims(p, true)
}
