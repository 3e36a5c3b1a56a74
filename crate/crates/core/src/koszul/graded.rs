//! Classical Koszulity: the graded minimal free resolution of `k` by syzygies.

use serde::Serialize;
use serde_json::json;

use super::verdict::{Outcome, Scope, Verdict};
use crate::dga::{CochainAlgebra, DgAlgebra};
use crate::error::{Error, Result};
use crate::exactlin::{
    kernel_basis, subspace_quotient, Accumulator, SparseMatrix, SparseVec, Subspace,
};
use crate::gradedalg::Presentation;
use crate::resolution::Window;

/// A graded free module `⊕_j R(-a_j)`; its degree-`t` part is `⊕_j R_{t - a_j}`.
#[derive(Clone, Debug, Default)]
struct FreeModule {
    degrees: Vec<usize>,
    /// `images[j]` in the previous module, degree `degrees[j]`.
    images: Vec<SparseVec>,
}

impl FreeModule {
    fn offsets(&self, r: &dyn CochainAlgebra, t: usize) -> Vec<usize> {
        let mut out = vec![0];
        for &a in &self.degrees {
            let size = if a <= t { r.dim(t - a).unwrap_or(0) } else { 0 };
            out.push(out.last().unwrap() + size);
        }
        out
    }

    fn dim(&self, r: &dyn CochainAlgebra, t: usize) -> usize {
        *self.offsets(r, t).last().unwrap()
    }
}

/// `x · m` for `x` a basis element of `R_p` and `m` in degree `t` of a free module.
fn act(
    r: &dyn CochainAlgebra,
    f: &FreeModule,
    p: usize,
    x: usize,
    t: usize,
    m: &SparseVec,
) -> Result<SparseVec> {
    let src = f.offsets(r, t);
    let dst = f.offsets(r, t + p);
    let mut acc = Accumulator::new();
    for (k, c) in m.iter() {
        let j = src.partition_point(|&o| o <= k) - 1;
        let q = t - f.degrees[j];
        let prod = r.multiply_basis(p, x, q, k - src[j])?;
        for (i, v) in prod.iter() {
            acc.add_term(dst[j] + i, v * c);
        }
    }
    Ok(acc.finish())
}

/// The images of the degree-`t` basis of `f` in `prev` (for `f`'s map `f → prev`).
fn map_columns(
    r: &dyn CochainAlgebra,
    f: &FreeModule,
    prev: &FreeModule,
    t: usize,
) -> Result<Vec<SparseVec>> {
    let mut cols = Vec::new();
    for (j, &a) in f.degrees.iter().enumerate() {
        if a > t {
            continue;
        }
        for x in 0..r.dim(t - a)? {
            cols.push(act(r, prev, t - a, x, a, &f.images[j])?);
        }
    }
    Ok(cols)
}

#[derive(Clone, Debug, Serialize)]
pub struct GradedResolution {
    /// `(homological degree, internal degree, number of generators)`.
    pub counts: Vec<(usize, usize, usize)>,
    /// First generator of `Q_n` not in internal degree `n`.
    pub nonlinear: Option<(usize, usize, String)>,
    /// Some `Q_n` has no generators inside the internal-degree window.
    pub finite: bool,
}

fn render(r: &dyn CochainAlgebra, f: &FreeModule, t: usize, v: &SparseVec) -> String {
    let offsets = f.offsets(r, t);
    let mut parts = Vec::new();
    for (k, c) in v.iter() {
        let j = offsets.partition_point(|&o| o <= k) - 1;
        let q = t - f.degrees[j];
        let coeff = if c.is_one() {
            String::new()
        } else {
            format!("({c})*")
        };
        let mono = if q == 0 {
            String::new()
        } else {
            format!("{}·", r.label(q, k - offsets[j]))
        };
        parts.push(format!("{coeff}{mono}f{j}"));
    }
    parts.join(" + ")
}

/// Resolves `k` over `R` (zero differential) through homological degree `max_stage`
/// and internal degree `max_degree`.
pub fn graded_resolution(
    pres: &Presentation,
    max_degree: usize,
    max_stage: usize,
) -> Result<GradedResolution> {
    if !pres.has_zero_differential() {
        return Err(Error::InvalidPresentation(
            "graded Koszulity needs a zero differential".into(),
        ));
    }
    let pres = pres.with_truncation(max_degree.max(pres.max_relation_degree()))?;
    let r = DgAlgebra::new(pres);
    let r: &dyn CochainAlgebra = &r;
    let field = r.field();
    let mut modules = vec![FreeModule {
        degrees: vec![0],
        images: vec![SparseVec::new()],
    }];
    let mut counts = vec![(0, 0, 1)];
    let mut nonlinear = None;
    let mut finite = false;
    for n in 1..=max_stage {
        let prev = &modules[n - 1];
        let mut next = FreeModule::default();
        for t in 1..=max_degree {
            let kernel = if n == 1 {
                Subspace::full(field, prev.dim(r, t))
            } else {
                let target = &modules[n - 2];
                let cols = map_columns(r, prev, target, t)?;
                kernel_basis(&SparseMatrix::from_columns(field, target.dim(r, t), &cols))
            };
            let image = Subspace::span(field, prev.dim(r, t), &map_columns(r, &next, prev, t)?);
            let fresh = subspace_quotient(&kernel, &image)?;
            if !fresh.is_empty() {
                counts.push((n, t, fresh.len()));
                if t != n && nonlinear.is_none() {
                    nonlinear = Some((n, t, render(r, prev, t, &fresh[0])));
                }
            }
            for v in fresh {
                next.degrees.push(t);
                next.images.push(v);
            }
        }
        if next.degrees.is_empty() {
            finite = true;
            break;
        }
        modules.push(next);
    }
    Ok(GradedResolution {
        counts,
        nonlinear,
        finite,
    })
}

/// Koszul in the classical sense: every `Q_n` generated in internal degree `n`.
pub fn is_koszul_graded(pres: &Presentation, window: Window) -> Result<Verdict> {
    if pres.degrees().iter().any(|&d| d != 1) {
        return Ok(Verdict::new("koszul-graded", Outcome::No, Scope::Exact)
            .with_window(window)
            .with_witness(json!({ "reason": "generator not in degree 1" })));
    }
    let res = graded_resolution(pres, window.max_degree, window.max_stage)?;
    let details = json!({ "counts": res.counts, "finite": res.finite });
    let verdict = match &res.nonlinear {
        Some((n, t, syzygy)) => Verdict::new("koszul-graded", Outcome::No, Scope::Exact)
            .with_witness(json!({
                "homological_degree": n,
                "internal_degree": t,
                "syzygy": syzygy,
            })),
        None => Verdict::new("koszul-graded", Outcome::Yes, Scope::WithinWindow),
    };
    Ok(verdict.with_window(window).with_details(details))
}
