//! `Ext_A(k,k)` from a minimal resolution: dual semibasis and Yoneda products.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactlin::{Field, SparseVec, Subspace};
use crate::gradedalg::FdAlgebra;
use crate::resolution::{lift_through, Resolution, Window};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExtBasis {
    pub label: String,
    pub stage: usize,
    /// Degree of the dual generator; the Ext class sits in degree `-generator_degree`.
    pub generator_degree: usize,
}

/// `E = Ext_A(k,k)` with basis `g^*` for the generators `g` of a minimal resolution.
#[derive(Clone, Debug, Serialize)]
pub struct ExtAlgebra {
    #[serde(skip)]
    pub field: Field,
    pub basis: Vec<ExtBasis>,
    /// `table[i * dim + j] = b_i · b_j`, `None` when it depends on stages outside the window.
    pub table: Vec<Option<SparseVec>>,
    /// The resolution terminated, so `E` is known exactly.
    pub complete: bool,
    pub stages: usize,
    pub window: Window,
}

/// Builds `E` from `P`. For `x = g_j^*` the lift `f_x: P/P(n-1) → P` gives
/// `(g_i^* · x)(g) = coefficient of 1·g_i in f_x(g)`.
pub fn ext_algebra(p: &Resolution) -> Result<ExtAlgebra> {
    let field = p.field();
    let gens = p.generators();
    let n = gens.len();
    let mut table = vec![None; n * n];
    for (j, gj) in gens.iter().enumerate() {
        let fx = match lift_through(p, &SparseVec::unit(j, field), gj.stage) {
            Ok(f) => f,
            Err(
                e @ (Error::WindowExhausted(_)
                | Error::LiftFailed(_)
                | Error::DegreeOutOfRange { .. }),
            ) if !p.terminated => {
                log::debug!("products with {} unknown: {e}", gj.label);
                continue;
            }
            Err(e) => return Err(e),
        };
        // columns[g] = (b_i · x)(g) for all i at once
        let mut columns: Vec<Vec<(usize, crate::exactlin::Scalar)>> = vec![Vec::new(); n];
        for (g, img) in fx.images.iter().enumerate() {
            let Some(t) = fx.target_degree(&p.module, g) else {
                continue;
            };
            for (i, c) in p.module.unit_components(t, img) {
                columns[i].push((g, c));
            }
        }
        for (i, gi) in gens.iter().enumerate() {
            if !p.terminated && gi.stage + gj.stage >= p.stages {
                continue;
            }
            table[i * n + j] = Some(SparseVec::from_entries(std::mem::take(&mut columns[i])));
        }
    }
    Ok(ExtAlgebra {
        field,
        basis: gens
            .iter()
            .map(|g| ExtBasis {
                label: format!("{}*", g.label),
                stage: g.stage,
                generator_degree: g.degree,
            })
            .collect(),
        table,
        complete: p.terminated,
        stages: p.stages,
        window: p.window,
    })
}

impl ExtAlgebra {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn product(&self, i: usize, j: usize) -> Option<&SparseVec> {
        self.table[i * self.dim() + j].as_ref()
    }

    pub fn unknown_products(&self) -> usize {
        self.table.iter().filter(|v| v.is_none()).count()
    }

    /// `F_n`: span of the duals of generators of stage `>= n`.
    pub fn filtration_layer(&self, n: usize) -> Subspace {
        let vectors: Vec<SparseVec> = (0..self.dim())
            .filter(|&i| self.basis[i].stage >= n)
            .map(|i| SparseVec::unit(i, self.field))
            .collect();
        Subspace::span(self.field, self.dim(), &vectors)
    }

    /// `[F_0, F_1, ..., F_stages = 0]` (the last layer is zero only inside the window).
    pub fn filtration(&self) -> Vec<Subspace> {
        (0..=self.stages)
            .map(|n| self.filtration_layer(n))
            .collect()
    }

    /// Whether every generator has degree zero (Ext concentrated in degree zero).
    pub fn concentrated_in_degree_zero(&self) -> bool {
        self.basis.iter().all(|b| b.generator_degree == 0)
    }

    /// First known product violating `F_m · F_n ⊆ F_{m+n}`.
    pub fn filtration_violation(&self) -> Option<(usize, usize)> {
        for i in 0..self.dim() {
            for j in 0..self.dim() {
                let Some(v) = self.product(i, j) else {
                    continue;
                };
                let s = self.basis[i].stage + self.basis[j].stage;
                if v.iter().any(|(k, _)| self.basis[k].stage < s) {
                    return Some((i, j));
                }
            }
        }
        None
    }

    /// `E / F_stages` as a finite-dimensional algebra; equals `E` when complete.
    /// Products that land in `F_stages` are zero there, so every entry is known
    /// unless a lift failed inside the window.
    pub fn truncated_algebra(&self) -> Result<FdAlgebra> {
        let n = self.dim();
        let mut table = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                match self.product(i, j) {
                    Some(v) => table.push(v.clone()),
                    None if self.basis[i].stage + self.basis[j].stage >= self.stages => {
                        table.push(SparseVec::new())
                    }
                    None => {
                        return Err(Error::WindowExhausted(format!(
                            "product {} · {} is outside the degree window",
                            self.basis[i].label, self.basis[j].label
                        )))
                    }
                }
            }
        }
        let mut alg = FdAlgebra::from_structure_constants(
            self.field,
            self.basis.iter().map(|b| b.label.clone()).collect(),
            table,
        )?;
        alg.grading = Some(self.basis.iter().map(|b| b.stage).collect());
        Ok(alg)
    }

    /// `E` itself; `WindowExhausted` unless the resolution terminated.
    pub fn algebra(&self) -> Result<FdAlgebra> {
        if !self.complete {
            return Err(Error::WindowExhausted(format!(
                "resolution did not terminate within {} stages",
                self.stages
            )));
        }
        self.truncated_algebra()
    }
}
