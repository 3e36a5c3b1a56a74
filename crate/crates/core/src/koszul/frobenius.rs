//! Frobenius test for finite-dimensional local algebras.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use super::verdict::{Outcome, Scope, Verdict};
use crate::error::Result;
use crate::exactlin::{kernel_basis, rank, Scalar, SparseMatrix, SparseVec};
use crate::gradedalg::FdAlgebra;

/// Random functionals tried after the deterministic sweep.
pub const RANDOM_FUNCTIONALS: usize = 64;
/// Over `GF(p)` with `p^dim` at most this many functionals, all are enumerated.
pub const EXHAUSTIVE_LIMIT: u64 = 1 << 16;

/// Gram matrix of `(a, b) ↦ λ(ab)` on the basis.
fn form(e: &FdAlgebra, lambda: &SparseVec) -> SparseMatrix {
    let n = e.dim();
    let rows = (0..n)
        .map(|i| {
            SparseVec::from_entries(
                (0..n)
                    .map(|j| (j, e.basis_product(i, j).dot(lambda, e.field)))
                    .collect(),
            )
        })
        .collect();
    SparseMatrix::from_rows(e.field, n, rows).expect("square")
}

fn nondegenerate(e: &FdAlgebra, lambda: &SparseVec) -> bool {
    rank(&form(e, lambda)) == e.dim()
}

/// `{a : a J = 0}` (right socle) or `{a : J a = 0}` (left socle), as a dimension.
pub fn socle_dim(e: &FdAlgebra, right: bool) -> usize {
    let n = e.dim();
    let field = e.field;
    // columns indexed by a; rows (j, k) collect the products with each basis element of J
    let mut cols = Vec::with_capacity(n);
    for a in 0..n {
        let mut entries = Vec::new();
        for j in 1..n {
            let p = if right {
                e.basis_product(a, j)
            } else {
                e.basis_product(j, a)
            };
            for (k, c) in p.iter() {
                entries.push(((j - 1) * n + k, c.clone()));
            }
        }
        cols.push(SparseVec::from_entries(entries));
    }
    kernel_basis(&SparseMatrix::from_columns(field, (n - 1) * n, &cols)).dim()
}

fn candidates(e: &FdAlgebra, seed: u64) -> Vec<SparseVec> {
    let n = e.dim();
    let field = e.field;
    if let Some(p) = field.order() {
        if (n as f64) * (p as f64).log2() <= (EXHAUSTIVE_LIMIT as f64).log2() {
            let total = p.pow(n as u32);
            return (1..total)
                .map(|mut code| {
                    let mut entries = Vec::new();
                    for i in 0..n {
                        entries.push((i, field.from_i64((code % p) as i64)));
                        code /= p;
                    }
                    SparseVec::from_entries(entries)
                })
                .collect();
        }
    }
    let mut out = Vec::new();
    for i in 0..n {
        out.push(SparseVec::unit(i, field));
    }
    for i in 0..n {
        for j in i + 1..n {
            out.push(SparseVec::unit(i, field).add(&SparseVec::unit(j, field)));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..RANDOM_FUNCTIONALS {
        let entries: Vec<(usize, Scalar)> = (0..n)
            .map(|i| (i, field.from_i64(rng.gen_range(-9..=9))))
            .collect();
        out.push(SparseVec::from_entries(entries));
    }
    out
}

pub fn is_frobenius(e: &FdAlgebra, seed: u64) -> Result<Verdict> {
    e.radical_powers()?;
    let right = socle_dim(e, true);
    let left = socle_dim(e, false);
    let details = json!({ "right_socle_dim": right, "left_socle_dim": left });
    if let Some(lambda) = candidates(e, seed)
        .into_iter()
        .find(|l| nondegenerate(e, l))
    {
        return Ok(Verdict::new("frobenius", Outcome::Yes, Scope::Exact)
            .with_witness(json!({ "functional": lambda }))
            .with_details(details));
    }
    if right >= 2 || left >= 2 {
        let (side, dim) = if right >= 2 {
            ("right", right)
        } else {
            ("left", left)
        };
        return Ok(Verdict::new("frobenius", Outcome::No, Scope::Exact)
            .with_witness(json!({ "socle": side, "dim": dim }))
            .with_details(details));
    }
    Ok(Verdict::new("frobenius", Outcome::Inconclusive, Scope::Exact).with_details(details))
}
