//! Quasi-Koszul and strongly quasi-Koszul tests for finite-dimensional local algebras.

use serde::Serialize;
use serde_json::json;

use super::verdict::{Outcome, Scope, Verdict};
use crate::error::Result;
use crate::exactlin::{
    kernel_basis, subspace_quotient, Accumulator, SparseMatrix, SparseVec, Subspace,
};
use crate::gradedalg::FdAlgebra;

/// `a · (v_1, ..., v_r)` on `E^r`, blocks of size `dim E`.
fn act(e: &FdAlgebra, a: &SparseVec, v: &SparseVec) -> SparseVec {
    let n = e.dim();
    let mut acc = Accumulator::new();
    for (k, c) in v.iter() {
        let (block, i) = (k / n, k % n);
        let prod = e.mul(a, &SparseVec::unit(i, e.field));
        for (j, x) in prod.iter() {
            acc.add_term(block * n + j, x * c);
        }
    }
    acc.finish()
}

/// Span of `a · k` for `a ∈ A`, `k ∈ K` inside `E^r`.
fn product(e: &FdAlgebra, a: &Subspace, k: &Subspace, ambient: usize) -> Subspace {
    let mut vectors = Vec::new();
    for x in &a.basis {
        for v in &k.basis {
            vectors.push(act(e, x, v));
        }
    }
    Subspace::span(e.field, ambient, &vectors)
}

/// `J^i ⊕ ... ⊕ J^i` inside `E^r`.
fn power_sum(e: &FdAlgebra, power: &Subspace, r: usize) -> Subspace {
    let n = e.dim();
    let vectors: Vec<SparseVec> = (0..r)
        .flat_map(|b| {
            power
                .basis
                .iter()
                .map(move |v| v.map_indices(|i| b * n + i))
        })
        .collect();
    Subspace::span(e.field, r * n, &vectors)
}

#[derive(Clone, Debug, Serialize)]
pub struct QuasiFailure {
    pub n: usize,
    pub i: usize,
    pub intersection_dim: usize,
    pub product_dim: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct LocalResolution {
    /// Ranks `r_n` of `P_n = E^{r_n}`.
    pub ranks: Vec<usize>,
    pub finite: bool,
    pub first_failure_quasi: Option<QuasiFailure>,
    pub first_failure_strong: Option<QuasiFailure>,
}

/// Builds the minimal free resolution of `E/J` through `max_stage` kernels and checks
/// `ker δ_n ∩ J^i P_n = J^{i-1} ker δ_n` for `i >= 2`.
pub fn local_resolution(e: &FdAlgebra, max_stage: usize) -> Result<LocalResolution> {
    let field = e.field;
    let n = e.dim();
    let powers = e.radical_powers()?;
    let j = &powers[1];
    let mut ranks = vec![1];
    // kernel of δ_0 = ε
    let mut kernel = j.clone();
    let mut finite = false;
    let mut quasi = None;
    let mut strong = None;
    for stage in 0..max_stage {
        let r = ranks[stage];
        let ambient = r * n;
        if kernel.dim() == 0 {
            finite = true;
            break;
        }
        for i in 2..=powers.len() {
            let ji = powers
                .get(i)
                .cloned()
                .unwrap_or_else(|| Subspace::zero(field, n));
            let left = kernel.intersection(&power_sum(e, &ji, r));
            let right = product(e, &powers[i - 1], &kernel, ambient);
            if left.dim() != right.dim() || !left.contains_subspace(&right) {
                let failure = QuasiFailure {
                    n: stage,
                    i,
                    intersection_dim: left.dim(),
                    product_dim: right.dim(),
                };
                if i == 2 && quasi.is_none() {
                    quasi = Some(failure.clone());
                }
                if strong.is_none() {
                    strong = Some(failure);
                }
            }
        }
        // minimal generators of the kernel: a complement of J·K
        let jk = product(e, j, &kernel, ambient);
        let gens = subspace_quotient(&kernel, &jk)?;
        let next_rank = gens.len();
        let mut cols = Vec::with_capacity(next_rank * n);
        for g in &gens {
            for b in 0..n {
                cols.push(act(e, &SparseVec::unit(b, field), g));
            }
        }
        kernel = kernel_basis(&SparseMatrix::from_columns(field, ambient, &cols));
        ranks.push(next_rank);
    }
    Ok(LocalResolution {
        ranks,
        finite,
        first_failure_quasi: quasi,
        first_failure_strong: strong,
    })
}

fn verdict(
    property: &str,
    res: &LocalResolution,
    failure: &Option<QuasiFailure>,
    max_stage: usize,
) -> Verdict {
    let details = json!({ "ranks": res.ranks, "finite": res.finite, "max_stage": max_stage });
    match failure {
        Some(f) => Verdict::new(property, Outcome::No, Scope::Exact).with_witness(json!(f)),
        None => Verdict::new(
            property,
            Outcome::Yes,
            if res.finite {
                Scope::Exact
            } else {
                Scope::WithinWindow
            },
        ),
    }
    .with_details(details)
}

pub fn is_quasi_koszul(e: &FdAlgebra, max_stage: usize) -> Result<Verdict> {
    let res = local_resolution(e, max_stage)?;
    Ok(verdict(
        "quasi-koszul",
        &res,
        &res.first_failure_quasi,
        max_stage,
    ))
}

pub fn is_strongly_quasi_koszul(e: &FdAlgebra, max_stage: usize) -> Result<Verdict> {
    let res = local_resolution(e, max_stage)?;
    Ok(verdict(
        "strongly-quasi-koszul",
        &res,
        &res.first_failure_strong,
        max_stage,
    ))
}
