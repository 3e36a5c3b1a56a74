//! The standard semifree filtration `F(n) = A ⊗ V_{≤n}` of a semifree module.

use serde::Serialize;

use super::semifree::{Morphism, SemifreeModule};
use crate::error::Result;
use crate::exactlin::{kernel_basis, Accumulator, SparseMatrix, SparseVec, Subspace};

#[derive(Clone, Debug, Serialize)]
pub struct StandardFiltration {
    /// Least `n` with the generator in `V_{≤n}`; `None` if it never enters.
    pub indices: Vec<Option<usize>>,
    /// `V_{≤0} ⊆ V_{≤1} ⊆ ...` inside the span of the semibasis, until it stabilizes.
    #[serde(skip)]
    pub layers: Vec<Subspace>,
}

impl StandardFiltration {
    pub fn layer(&self, n: usize) -> &Subspace {
        &self.layers[n.min(self.layers.len() - 1)]
    }
}

/// `(1 ⊗ φ)(m) ∈ A^{n - δ}` for a functional `φ` on generators of degree `δ`.
fn contract(module: &SemifreeModule, n: usize, m: &SparseVec, phi: &SparseVec) -> SparseVec {
    let mut acc = Accumulator::new();
    for (g, a) in module.split(n, m) {
        if let Some(c) = phi.get(g) {
            acc.add_scaled(&a, c);
        }
    }
    acc.finish()
}

/// Homogeneous functionals (one generator degree each) spanning the annihilator of `w`.
fn annihilator(module: &SemifreeModule, w: &Subspace) -> Vec<SparseVec> {
    let field = module.field();
    let gens = &module.generators;
    let mut degrees: Vec<usize> = gens.iter().map(|g| g.degree).collect();
    degrees.sort();
    degrees.dedup();
    let mut out = Vec::new();
    for delta in degrees {
        let block: Vec<usize> = (0..gens.len())
            .filter(|&g| gens[g].degree == delta)
            .collect();
        // Restrict W to this block, then take the orthogonal complement inside the block.
        let rows: Vec<SparseVec> = w
            .basis
            .iter()
            .map(|v| {
                SparseVec::from_entries(
                    block
                        .iter()
                        .enumerate()
                        .filter_map(|(k, &g)| v.get(g).map(|c| (k, c.clone())))
                        .collect(),
                )
            })
            .collect();
        let m = SparseMatrix {
            field,
            rows: rows.len(),
            cols: block.len(),
            data: rows,
        };
        for phi in kernel_basis(&m).basis {
            out.push(phi.map_indices(|k| block[k]));
        }
    }
    out
}

/// Whether `m ∈ P^n` lies in `A ⊗ W`.
pub fn in_tensor(module: &SemifreeModule, n: usize, m: &SparseVec, w: &Subspace) -> bool {
    annihilator(module, w)
        .iter()
        .all(|phi| contract(module, n, m, phi).is_zero())
}

/// Iterates `V_{≤n} = {v ∈ kE : d(v) ∈ A ⊗ V_{≤n-1}}` from `V_{≤-1} = 0`.
pub fn standard_filtration(module: &SemifreeModule) -> Result<StandardFiltration> {
    let field = module.field();
    let gens = &module.generators;
    let count = gens.len();
    let mut layers: Vec<Subspace> = Vec::new();
    let mut previous = Subspace::zero(field, count);
    loop {
        let phis = annihilator(module, &previous);
        let mut degrees: Vec<usize> = gens.iter().map(|g| g.degree).collect();
        degrees.sort();
        degrees.dedup();
        let mut vectors = Vec::new();
        for delta in degrees {
            let block: Vec<usize> = (0..count).filter(|&g| gens[g].degree == delta).collect();
            vectors.extend(kernel_of_columns(module, &block, &phis, delta)?);
        }
        let current = Subspace::span(field, count, &vectors).sum(&previous);
        let stable = current.dim() == previous.dim();
        layers.push(current.clone());
        if stable || current.dim() == count {
            break;
        }
        previous = current;
    }
    let indices = (0..count)
        .map(|g| {
            let e = SparseVec::unit(g, field);
            layers.iter().position(|l| l.contains(&e))
        })
        .collect();
    Ok(StandardFiltration { indices, layers })
}

/// Kernel of `v ↦ ((1 ⊗ φ)(d v))_φ` on the generators of one degree, as vectors over all generators.
fn kernel_of_columns(
    module: &SemifreeModule,
    block: &[usize],
    phis: &[SparseVec],
    delta: usize,
) -> Result<Vec<SparseVec>> {
    let field = module.field();
    let gens = &module.generators;
    let alg = module.algebra();
    let mut columns = Vec::with_capacity(block.len());
    let mut rows = 0;
    for &g in block {
        let mut col = SparseVec::new();
        let mut offset = 0;
        for phi in phis {
            let phi_degree = phi.leading().map(|(h, _)| gens[h].degree).unwrap_or(0);
            let part = contract(module, delta + 1, &gens[g].d, phi);
            col = col.concat(&part, offset);
            offset += if delta + 1 >= phi_degree {
                alg.dim(delta + 1 - phi_degree).unwrap_or(0)
            } else {
                0
            };
        }
        rows = offset;
        columns.push(col);
    }
    let m = SparseMatrix::from_columns(field, rows, &columns);
    Ok(kernel_basis(&m)
        .basis
        .into_iter()
        .map(|v| v.map_indices(|k| block[k]))
        .collect())
}

/// Whether `f(F_src(n)) ⊆ F_tgt(n)` for every layer of the source filtration.
pub fn check_filtration_preservation(
    f: &Morphism,
    src: &SemifreeModule,
    tgt: &SemifreeModule,
    src_filt: &StandardFiltration,
    tgt_filt: &StandardFiltration,
) -> Result<bool> {
    for (n, layer) in src_filt.layers.iter().enumerate() {
        let target = tgt_filt.layer(n);
        for v in &layer.basis {
            // Layers are graded, but a basis vector may mix generator degrees; map each part.
            let mut by_degree: std::collections::BTreeMap<
                usize,
                Vec<(usize, crate::exactlin::Scalar)>,
            > = std::collections::BTreeMap::new();
            for (g, c) in v.iter() {
                by_degree
                    .entry(src.generators[g].degree)
                    .or_default()
                    .push((g, c.clone()));
            }
            for (deg, entries) in by_degree {
                let Some(t) = (deg as i64 + f.degree).try_into().ok() else {
                    continue;
                };
                let mut acc = Accumulator::new();
                for (g, c) in entries {
                    acc.add_scaled(&f.images[g], &c);
                }
                let image = acc.finish();
                if !in_tensor(tgt, t, &image, target) {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dga::{CochainAlgebra, DgAlgebra};
    use crate::exactlin::Field;
    use crate::resolution::{resolve_dga, Generator, ResolutionOptions, Side, Window};
    use crate::samples;

    fn gen(label: &str, degree: usize, stage: usize, d: SparseVec) -> Generator {
        Generator {
            label: label.into(),
            degree,
            stage,
            d,
        }
    }

    /// `P = A e0 ⊕ A e1`, `|e1| = 1`, `d(e1) = d(x) e0` over the nilpotent example, in two semibases.
    #[test]
    fn filtration_depends_on_semibasis() {
        let f = Field::Rational;
        let a = DgAlgebra::new(samples::example_a(f, 5).unwrap());
        let x = SparseVec::unit(
            a.quotient()
                .degree_basis(1)
                .unwrap()
                .reduced_words()
                .position(|w| w == &vec![0])
                .unwrap(),
            f,
        );
        let dx = a.diff(1, &x).unwrap();
        assert!(!dx.is_zero());
        let alg = a.arc();

        let mut p = SemifreeModule::new(alg.clone());
        p.push(gen("e0", 0, 0, SparseVec::new()));
        let d_e1 = p.assemble(2, &[(0, dx.clone())]);
        p.push(gen("e1", 1, 1, d_e1));
        assert!(p.check_d_squared().unwrap());

        let mut q = SemifreeModule::new(alg);
        q.push(gen("e0", 0, 0, SparseVec::new()));
        q.push(gen("e1'", 1, 0, SparseVec::new()));

        assert_eq!(
            standard_filtration(&p).unwrap().indices,
            vec![Some(0), Some(1)]
        );
        assert_eq!(
            standard_filtration(&q).unwrap().indices,
            vec![Some(0), Some(0)]
        );

        // e0 ↦ e0, e1 ↦ e1' + x e0 and back e1' ↦ e1 - x e0.
        let to_q = Morphism {
            degree: 0,
            images: vec![
                q.generator_element(0),
                q.generator_element(1)
                    .add(&q.assemble(1, &[(0, x.clone())])),
            ],
        };
        let to_p = Morphism {
            degree: 0,
            images: vec![
                p.generator_element(0),
                p.generator_element(1).sub(&p.assemble(1, &[(0, x)])),
            ],
        };
        assert!(to_q.is_dg(&p, &q).unwrap());
        assert!(to_p.is_dg(&q, &p).unwrap());
        for g in 0..2 {
            let n = p.generators[g].degree;
            let back = to_p.apply(&q, &p, n, &to_q.images[g]).unwrap();
            assert_eq!(back, p.generator_element(g));
        }
    }

    #[test]
    fn resolution_filtration_is_stage() {
        let a = DgAlgebra::new(samples::example_a(Field::Rational, 7).unwrap());
        let r = resolve_dga(
            &a,
            Window::new(7, 5),
            Side::Left,
            &ResolutionOptions { seed: Some(9) },
        )
        .unwrap();
        let filt = standard_filtration(&r.module).unwrap();
        let stages: Vec<Option<usize>> = r.generators().iter().map(|g| Some(g.stage)).collect();
        assert_eq!(filt.indices, stages);
    }

    #[test]
    fn zero_differential_is_all_index_zero() {
        let a = DgAlgebra::new(samples::polynomial(Field::Rational, 4).unwrap());
        let mut p = SemifreeModule::new(a.arc());
        p.push(gen("e0", 0, 0, SparseVec::new()));
        assert_eq!(standard_filtration(&p).unwrap().indices, vec![Some(0)]);
    }
}
