//! AS-Gorenstein tests through `Hom_{A^op}(P, A)`, and generation in degree one.

use std::collections::BTreeMap;

use serde_json::json;

use super::verdict::{Outcome, Scope, Verdict};
use crate::dga::{CochainAlgebra, CohomologyAlgebra, DgAlgebra};
use crate::error::Result;
use crate::exactlin::{rank, sign, Echelon, SparseMatrix, SparseVec};
use crate::resolution::{
    resolve_dga, Generator, Morphism, Resolution, ResolutionOptions, SemifreeModule, Side, Window,
};

/// `H^m(Hom(P, A))` for a left resolution `P` over `B` (here `B = A^op`), with `A` viewed
/// as the free module `B·1`. Degree `m` is computed when every image degree stays in the window.
pub fn rhom_dims(p: &Resolution) -> Result<BTreeMap<i64, usize>> {
    let field = p.field();
    let alg = p.algebra().clone();
    let dmax = alg.max_degree();
    let mut free = SemifreeModule::new(alg.clone());
    free.push(Generator {
        label: "1".into(),
        degree: 0,
        stage: 0,
        d: SparseVec::new(),
    });
    let gens = p.generators();
    let top = gens.iter().map(|g| g.degree).max().unwrap_or(0) as i64;
    // Hom^m = ⊕_g A^{|g| + m}; basis (g, i) in generator order.
    let block = |g: usize, m: i64| -> usize {
        let t = gens[g].degree as i64 + m;
        if t < 0 || t as usize > dmax {
            0
        } else {
            alg.dim(t as usize).unwrap_or(0)
        }
    };
    let offsets = |m: i64| -> Vec<usize> {
        let mut out = vec![0];
        for g in 0..gens.len() {
            out.push(out.last().unwrap() + block(g, m));
        }
        out
    };
    // D(f)(g) = d(f(g)) - (-1)^m f(d g)
    let differential = |m: i64| -> Result<SparseMatrix> {
        let dst = offsets(m + 1);
        let mut cols = Vec::new();
        for g in 0..gens.len() {
            for i in 0..block(g, m) {
                let mut images = vec![SparseVec::new(); gens.len()];
                images[g] = SparseVec::unit(i, field);
                let f = Morphism { degree: m, images };
                let mut col = Vec::new();
                for (h, gen) in gens.iter().enumerate() {
                    let t = gen.degree as i64 + m;
                    let mut v = SparseVec::new();
                    if h == g {
                        v = alg.diff(t as usize, &f.images[h])?;
                    }
                    let fd = f.apply(&p.module, &free, gen.degree + 1, &gen.d)?;
                    v = v.add_scaled(&fd, &-sign(field, m));
                    for (k, c) in v.iter() {
                        col.push((dst[h] + k, c.clone()));
                    }
                }
                cols.push(SparseVec::from_entries(col));
            }
        }
        Ok(SparseMatrix::from_columns(
            field,
            *dst.last().unwrap(),
            &cols,
        ))
    };
    let mut out = BTreeMap::new();
    // m + 1 + top must stay inside the window for D to be known.
    let m_max = dmax as i64 - 1 - top;
    for m in -top..=m_max {
        let dim = *offsets(m).last().unwrap();
        let out_rank = rank(&differential(m)?);
        let in_rank = if m > -top {
            rank(&differential(m - 1)?)
        } else {
            0
        };
        out.insert(m, dim - out_rank - in_rank);
    }
    Ok(out)
}

/// `RHom_{A^op}(k, A)` one-dimensional and concentrated in one degree `l`.
pub fn as_gorenstein(
    a: &DgAlgebra,
    window: Window,
    options: &ResolutionOptions,
) -> Result<Verdict> {
    let p = resolve_dga(a, window, Side::Right, options)?;
    as_gorenstein_from(&p)
}

pub fn as_gorenstein_from(p: &Resolution) -> Result<Verdict> {
    let dims = rhom_dims(p)?;
    let total: usize = dims.values().sum();
    let top_stage = p.stages - 1;
    let top_rank = p.stage_generators(top_stage).len();
    let boundary = dims.iter().next_back().map(|(&m, &d)| (m, d));
    let details = json!({
        "rhom_dims": dims.iter().map(|(m, d)| (m.to_string(), *d)).collect::<BTreeMap<_, _>>(),
        "compact": p.terminated,
        "top_stage": top_stage,
        "top_stage_rank": top_rank,
    });
    let verdict = if !p.terminated {
        Verdict::new("as-gorenstein", Outcome::Inconclusive, Scope::WithinWindow)
            .with_witness(json!({ "reason": "resolution of k is not finite within the window" }))
    } else if total >= 2 {
        Verdict::new("as-gorenstein", Outcome::No, Scope::Exact)
            .with_witness(json!({ "total_dim": total }))
    } else if matches!(boundary, Some((_, d)) if d > 0) || total == 0 {
        Verdict::new("as-gorenstein", Outcome::Inconclusive, Scope::WithinWindow)
            .with_witness(json!({ "reason": "classes reach the window boundary" }))
    } else {
        let l = dims.iter().find(|(_, &d)| d == 1).map(|(&m, _)| m).unwrap();
        let mut v = Verdict::new("as-gorenstein", Outcome::Yes, Scope::WithinWindow);
        v.shift = Some(l);
        v
    };
    Ok(verdict.with_window(p.window).with_details(details))
}

/// `H^1 · H^{n-1}` spans `H^n` for `2 <= n <= max_degree`.
pub fn generated_in_degree_one(h: &CohomologyAlgebra) -> Result<Verdict> {
    let field = h.field();
    for n in 2..=h.max_degree() {
        let mut e = Echelon::new(field);
        for i in 0..h.dim(1)? {
            for j in 0..h.dim(n - 1)? {
                e.insert(&h.multiply_basis(1, i, n - 1, j)?);
            }
        }
        if let Some(k) = (0..h.dim(n)?).find(|&k| !e.contains(&SparseVec::unit(k, field))) {
            return Ok(
                Verdict::new("generated-in-degree-one", Outcome::No, Scope::Exact)
                    .with_witness(json!({ "degree": n, "class": h.label(n, k) })),
            );
        }
    }
    Ok(
        Verdict::new("generated-in-degree-one", Outcome::Yes, Scope::WithinWindow)
            .with_details(json!({ "max_degree": h.max_degree() })),
    )
}
