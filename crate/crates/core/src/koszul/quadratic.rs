//! Quadratic algebras `T(V)/(U)` and their quadratic duals `T(V^*)/(U^⊥)`.

use serde::Serialize;

use crate::dga::{CochainAlgebra, CohomologyAlgebra};
use crate::error::{Error, Result};
use crate::exactlin::{kernel_basis, Field, SparseMatrix, SparseVec, Subspace};
use crate::gradedalg::{GeneratorSpec, GradedQuotient, NCPoly, Presentation};

const DUAL_SUFFIX: &str = "_star";

/// `V` by its basis names and `U ⊆ V ⊗ V`, with `x_i ⊗ x_j` at index `i * dim V + j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuadraticData {
    #[serde(skip)]
    pub field: Field,
    pub names: Vec<String>,
    pub relations: Subspace,
}

impl QuadraticData {
    pub fn new(field: Field, names: Vec<String>, relations: &[SparseVec]) -> QuadraticData {
        let n = names.len();
        QuadraticData {
            field,
            relations: Subspace::span(field, n * n, relations),
            names,
        }
    }

    /// Reads `V` and `U` off a presentation with degree-1 generators and quadratic relations.
    pub fn from_presentation(p: &Presentation) -> Result<QuadraticData> {
        let degrees = p.degrees();
        if degrees.iter().any(|&d| d != 1) {
            return Err(Error::NotQuadratic("generators must have degree 1".into()));
        }
        if !p.has_zero_differential() {
            return Err(Error::NotQuadratic("differential must vanish".into()));
        }
        let n = degrees.len();
        let mut rels = Vec::new();
        for r in &p.relations {
            let mut entries = Vec::new();
            for (w, c) in &r.terms {
                if w.len() != 2 {
                    return Err(Error::NotQuadratic(format!(
                        "relation {} is not quadratic",
                        r.render(&p.names())
                    )));
                }
                entries.push((w[0] * n + w[1], c.clone()));
            }
            rels.push(SparseVec::from_entries(entries));
        }
        Ok(QuadraticData::new(p.field, p.names(), &rels))
    }

    /// `V = H^1`, `U = ker(H^1 ⊗ H^1 → H^2)`; requires `H` through degree 2.
    pub fn from_cohomology(h: &CohomologyAlgebra) -> Result<QuadraticData> {
        let field = h.field();
        if h.max_degree() < 2 {
            return Err(Error::DegreeOutOfRange {
                requested: 2,
                max: h.max_degree(),
            });
        }
        let n = h.dim(1)?;
        let mut cols = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                cols.push(h.multiply_basis(1, i, 1, j)?);
            }
        }
        let u = kernel_basis(&SparseMatrix::from_columns(field, h.dim(2)?, &cols));
        let names = (0..n).map(|i| format!("h{i}")).collect();
        Ok(QuadraticData::new(field, names, &u.basis))
    }

    pub fn dim_v(&self) -> usize {
        self.names.len()
    }

    /// `U^⊥ ⊆ V^* ⊗ V^*` under `<x_i^* ⊗ x_j^*, x_k ⊗ x_l> = δ_ik δ_jl`.
    pub fn dual(&self) -> QuadraticData {
        let n = self.dim_v();
        let m = SparseMatrix {
            field: self.field,
            rows: self.relations.dim(),
            cols: n * n,
            data: self.relations.basis.clone(),
        };
        let perp = kernel_basis(&m);
        let names = self
            .names
            .iter()
            .map(|s| match s.strip_suffix(DUAL_SUFFIX) {
                Some(base) => base.to_string(),
                None => format!("{s}{DUAL_SUFFIX}"),
            })
            .collect();
        QuadraticData::new(self.field, names, &perp.basis)
    }

    pub fn to_presentation(&self, truncation: usize) -> Result<Presentation> {
        let n = self.dim_v();
        let generators = self
            .names
            .iter()
            .map(|s| GeneratorSpec {
                name: s.clone(),
                degree: 1,
            })
            .collect();
        let relations = self
            .relations
            .basis
            .iter()
            .map(|v| {
                let mut p = NCPoly::zero();
                for (k, c) in v.iter() {
                    p.add_term(vec![k / n, k % n], c.clone());
                }
                p
            })
            .collect();
        Presentation::new(
            self.field,
            generators,
            relations,
            vec![NCPoly::zero(); n],
            truncation.max(2),
        )
    }

    pub fn hilbert_function(&self, d: usize) -> Result<Vec<usize>> {
        GradedQuotient::new(self.to_presentation(d)?).hilbert_function(d)
    }
}

/// `R^! = T(V^*)/(U^⊥)` as a presentation.
pub fn quadratic_dual(p: &Presentation) -> Result<Presentation> {
    QuadraticData::from_presentation(p)?
        .dual()
        .to_presentation(p.truncation_degree)
}
