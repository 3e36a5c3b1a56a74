//! Twisting cochains `C → Ω(C)`, twisted tensor products and the adjunction map.

use std::collections::HashMap;
use std::hash::Hash;

use serde::Serialize;

use super::coalgebra::FinCoalgebra;
use super::cobar::cobar_word_differential;
use super::{add_term, Lin};
use crate::error::{Error, Result};
use crate::exactlin::{
    kernel_basis, rank, sign, Echelon, Field, SparseMatrix, SparseVec, Subspace,
};
use crate::gradedalg::Word;

/// A degree-1 map `τ: C → Ω(C)`, given on the basis of `C`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistingCochain {
    pub images: Vec<Lin<Word>>,
}

impl TwistingCochain {
    /// `τ_0(c) = [c]` on `C̄` and `τ_0(1) = 0`.
    pub fn canonical(c: &FinCoalgebra) -> TwistingCochain {
        let mut images = vec![Lin::new()];
        for k in 1..c.dim() {
            images.push([(vec![k - 1], c.field.one())].into_iter().collect());
        }
        TwistingCochain { images }
    }

    pub fn zero(c: &FinCoalgebra) -> TwistingCochain {
        TwistingCochain {
            images: vec![Lin::new(); c.dim()],
        }
    }
}

/// Degree of a word in `Ω(C)`: `Σ (|c_k| + 1)` over its letters `k - 1`.
pub fn cobar_degree(c: &FinCoalgebra, w: &[usize]) -> usize {
    w.iter().map(|&g| c.degrees[g + 1] + 1).sum()
}

fn differentiate(c: &FinCoalgebra, x: &Lin<Word>) -> Lin<Word> {
    let mut out = Lin::new();
    for (w, e) in x {
        for (v, f) in &cobar_word_differential(c, w).terms {
            add_term(&mut out, v.clone(), e * f);
        }
    }
    out
}

fn concat(u: &[usize], v: &[usize]) -> Word {
    let mut w = u.to_vec();
    w.extend_from_slice(v);
    w
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TwistingCheck {
    pub basis_checked: usize,
    pub violations: Vec<String>,
}

/// `ε_B τ η_C = 0` and `m_B (τ ⊗ τ) Δ + d_B τ + τ d_C = 0` on every basis element of `C`
/// (`d_C = 0`); `(τ ⊗ τ)(x ⊗ y) = (-1)^{|x|} τ(x) ⊗ τ(y)`.
pub fn check_twisting(c: &FinCoalgebra, tau: &TwistingCochain) -> TwistingCheck {
    let field = c.field;
    let mut violations = Vec::new();
    if tau.images[0].contains_key(&Vec::new()) {
        violations.push("ε τ η ≠ 0".to_string());
    }
    for k in 0..c.dim() {
        let mut total = differentiate(c, &tau.images[k]);
        for (i, j, e) in c.delta(k) {
            let s = &sign(field, c.degrees[i] as i64) * e;
            for (u, a) in &tau.images[i] {
                for (v, b) in &tau.images[j] {
                    add_term(&mut total, concat(u, v), &(&s * a) * b);
                }
            }
        }
        if !total.is_empty() {
            violations.push(format!("identity fails on {}", c.labels[k]));
        }
    }
    TwistingCheck {
        basis_checked: c.dim(),
        violations,
    }
}

/// A complex with a finite basis in each degree `0..=top`, differential known on degrees `< top`.
#[derive(Clone, Debug)]
pub struct KeyedComplex<K> {
    pub field: Field,
    pub bases: Vec<Vec<K>>,
    index: Vec<HashMap<K, usize>>,
    /// `columns[t][j]`: image of basis element `j` of degree `t`, in the basis of degree `t + 1`.
    pub columns: Vec<Vec<SparseVec>>,
    pub d_squared_zero: bool,
}

impl<K: Ord + Hash + Clone + std::fmt::Debug> KeyedComplex<K> {
    pub fn build(
        field: Field,
        bases: Vec<Vec<K>>,
        diff: impl Fn(&K) -> Lin<K>,
    ) -> Result<KeyedComplex<K>> {
        let index: Vec<HashMap<K, usize>> = bases
            .iter()
            .map(|b| b.iter().enumerate().map(|(i, k)| (k.clone(), i)).collect())
            .collect();
        let top = bases.len().saturating_sub(1);
        let mut columns = Vec::with_capacity(top);
        let mut images: Vec<Vec<Lin<K>>> = Vec::with_capacity(top);
        for t in 0..top {
            let mut cols = Vec::with_capacity(bases[t].len());
            let mut imgs = Vec::with_capacity(bases[t].len());
            for k in &bases[t] {
                let d = diff(k);
                let mut entries = Vec::with_capacity(d.len());
                for (key, c) in &d {
                    let i = *index[t + 1].get(key).ok_or_else(|| {
                        Error::Invariant(format!(
                            "differential of {k:?} leaves the basis at {key:?}"
                        ))
                    })?;
                    entries.push((i, c.clone()));
                }
                cols.push(SparseVec::from_entries(entries));
                imgs.push(d);
            }
            columns.push(cols);
            images.push(imgs);
        }
        let mut complex = KeyedComplex {
            field,
            bases,
            index,
            columns,
            d_squared_zero: true,
        };
        for t in 0..top.saturating_sub(1) {
            for col in &complex.columns[t] {
                if !complex.apply(t + 1, col).is_zero() {
                    complex.d_squared_zero = false;
                }
            }
        }
        Ok(complex)
    }

    pub fn top(&self) -> usize {
        self.bases.len() - 1
    }

    pub fn dim(&self, t: usize) -> usize {
        self.bases[t].len()
    }

    pub fn position(&self, t: usize, k: &K) -> Option<usize> {
        self.index[t].get(k).copied()
    }

    /// `δ(v)` for `v` in degree `t < top`.
    pub fn apply(&self, t: usize, v: &SparseVec) -> SparseVec {
        let mut acc = crate::exactlin::Accumulator::new();
        for (j, c) in v.iter() {
            acc.add_scaled(&self.columns[t][j], c);
        }
        acc.finish()
    }

    fn matrix(&self, t: usize) -> SparseMatrix {
        SparseMatrix::from_columns(self.field, self.dim(t + 1), &self.columns[t])
    }

    pub fn cocycles(&self, t: usize) -> Subspace {
        kernel_basis(&self.matrix(t))
    }

    pub fn coboundaries(&self, t: usize) -> Subspace {
        if t == 0 {
            Subspace::zero(self.field, self.dim(0))
        } else {
            Subspace::span(self.field, self.dim(t), &self.columns[t - 1])
        }
    }

    /// `dim H^t` for `t < top`.
    pub fn cohomology_dims(&self) -> Vec<usize> {
        let ranks: Vec<usize> = (0..self.top()).map(|t| rank(&self.matrix(t))).collect();
        (0..self.top())
            .map(|t| self.dim(t) - ranks[t] - if t == 0 { 0 } else { ranks[t - 1] })
            .collect()
    }
}

/// Words of `Ω(C)` by degree, `0..=top`.
fn cobar_words(c: &FinCoalgebra, top: usize) -> Vec<Vec<Word>> {
    let mut out: Vec<Vec<Word>> = vec![Vec::new(); top + 1];
    out[0].push(Vec::new());
    for t in 1..=top {
        for g in 0..c.dim() - 1 {
            let dg = c.degrees[g + 1] + 1;
            if dg <= t {
                let prev = out[t - dg].clone();
                out[t].extend(prev.into_iter().map(|w| concat(&w, &[g])));
            }
        }
        out[t].sort();
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TwistedReport {
    pub label: String,
    pub top_degree: usize,
    pub dims: Vec<usize>,
    pub d_squared_zero: bool,
    pub cohomology: Vec<usize>,
}

fn require_twisting(c: &FinCoalgebra, tau: &TwistingCochain) -> Result<()> {
    let check = check_twisting(c, tau);
    match check.violations.first() {
        Some(v) => Err(Error::TwistingIdentityViolated(v.clone())),
        None => Ok(()),
    }
}

/// `C ⊗_τ Ω(C)` with `C` a right comodule over itself:
/// `δ(n⊗a) = d(n)⊗a + (-1)^{|n|} n⊗d(a) + Σ (-1)^{|n_(0)|} n_(0)⊗τ(n_(1)) a`.
pub fn twisted_right(
    c: &FinCoalgebra,
    tau: &TwistingCochain,
    top: usize,
) -> Result<KeyedComplex<(usize, Word)>> {
    require_twisting(c, tau)?;
    let field = c.field;
    let words = cobar_words(c, top);
    let bases = (0..=top)
        .map(|t| {
            let mut b = Vec::new();
            for k in 0..c.dim() {
                if c.degrees[k] <= t {
                    b.extend(words[t - c.degrees[k]].iter().map(|w| (k, w.clone())));
                }
            }
            b
        })
        .collect();
    KeyedComplex::build(field, bases, |(k, a)| {
        let mut out = Lin::new();
        let s = sign(field, c.degrees[*k] as i64);
        for (v, e) in &cobar_word_differential(c, a).terms {
            add_term(&mut out, (*k, v.clone()), &s * e);
        }
        for (i, j, e) in c.delta(*k) {
            let s = &sign(field, c.degrees[i] as i64) * e;
            for (u, f) in &tau.images[j] {
                add_term(&mut out, (i, concat(u, a)), &s * f);
            }
        }
        out
    })
}

/// `Ω(C) ⊗_τ C` with `Ω(C)` a right module over itself:
/// `δ(m⊗c) = d(m)⊗c + (-1)^{|m|} m⊗d(c) - Σ (-1)^{|m|} m τ(c_(1))⊗c_(2)`.
pub fn twisted_left(
    c: &FinCoalgebra,
    tau: &TwistingCochain,
    top: usize,
) -> Result<KeyedComplex<(Word, usize)>> {
    require_twisting(c, tau)?;
    let field = c.field;
    let words = cobar_words(c, top);
    let bases = (0..=top)
        .map(|t| {
            let mut b = Vec::new();
            for k in 0..c.dim() {
                if c.degrees[k] <= t {
                    b.extend(words[t - c.degrees[k]].iter().map(|w| (w.clone(), k)));
                }
            }
            b
        })
        .collect();
    KeyedComplex::build(field, bases, |(m, k)| {
        let mut out = Lin::new();
        for (v, e) in &cobar_word_differential(c, m).terms {
            add_term(&mut out, (v.clone(), *k), e.clone());
        }
        let s = -sign(field, cobar_degree(c, m) as i64);
        for (i, j, e) in c.delta(*k) {
            for (u, f) in &tau.images[i] {
                add_term(&mut out, (concat(m, u), j), &(&s * e) * f);
            }
        }
        out
    })
}

pub fn twisted_report<K: Ord + Hash + Clone + std::fmt::Debug>(
    label: &str,
    x: &KeyedComplex<K>,
) -> TwistedReport {
    TwistedReport {
        label: label.to_string(),
        top_degree: x.top(),
        dims: (0..=x.top()).map(|t| x.dim(t)).collect(),
        d_squared_zero: x.d_squared_zero,
        cohomology: x.cohomology_dims(),
    }
}

/// `Ω(C)` itself as a keyed complex on words.
pub fn cobar_complex(c: &FinCoalgebra, top: usize) -> Result<KeyedComplex<Word>> {
    let words = cobar_words(c, top);
    KeyedComplex::build(c.field, words, |w| {
        cobar_word_differential(c, w).terms.into_iter().collect()
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AdjunctionDegree {
    pub degree: usize,
    pub total: usize,
    pub target: usize,
    /// Rank of the induced map `H^t(B ⊗_τ C ⊗_τ B) → H^t(B)`.
    pub induced_rank: usize,
    pub iso: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AdjunctionReport {
    pub max_degree: usize,
    pub d_squared_zero: bool,
    pub chain_map: bool,
    pub degrees: Vec<AdjunctionDegree>,
    pub quasi_isomorphism: bool,
}

type TripleKey = (Word, usize, Word);

/// `B ⊗_τ C ⊗_τ B → B`, `m⊗c⊗b ↦ ε(c) m b`, for `B = Ω(C)` and `τ = τ_0`, compared in
/// cohomology through degree `max_degree`. The differential is
/// `δ(m⊗c⊗b) = δ_{B⊗C}(m⊗c)⊗b + (-1)^{|m|+|c|} m⊗c⊗d(b) + Σ (-1)^{|m|+|c_(1)|} m⊗c_(1)⊗τ(c_(2)) b`.
pub fn adjunction_check(c: &FinCoalgebra, max_degree: usize) -> Result<AdjunctionReport> {
    if max_degree < 1 {
        return Err(Error::BoundsTooSmall(
            "adjunction check needs max degree >= 1".into(),
        ));
    }
    c.conilpotency()?;
    let field = c.field;
    let tau = TwistingCochain::canonical(c);
    require_twisting(c, &tau)?;
    let top = max_degree + 1;
    let words = cobar_words(c, top);
    let mut bases: Vec<Vec<TripleKey>> = vec![Vec::new(); top + 1];
    for (p, left) in words.iter().enumerate() {
        for k in 0..c.dim() {
            for (q, right) in words.iter().enumerate() {
                let t = p + c.degrees[k] + q;
                if t > top {
                    continue;
                }
                for m in left {
                    for b in right {
                        bases[t].push((m.clone(), k, b.clone()));
                    }
                }
            }
        }
    }
    let deg = |w: &Word| cobar_degree(c, w) as i64;
    let total = KeyedComplex::build(field, bases, |(m, k, b)| {
        let mut out: Lin<TripleKey> = Lin::new();
        let sm = sign(field, deg(m));
        for (v, e) in &cobar_word_differential(c, m).terms {
            add_term(&mut out, (v.clone(), *k, b.clone()), e.clone());
        }
        for (i, j, e) in c.delta(*k) {
            for (u, f) in &tau.images[i] {
                add_term(&mut out, (concat(m, u), j, b.clone()), -&(&(&sm * e) * f));
            }
        }
        let smc = sign(field, deg(m) + c.degrees[*k] as i64);
        for (v, e) in &cobar_word_differential(c, b).terms {
            add_term(&mut out, (m.clone(), *k, v.clone()), &smc * e);
        }
        for (i, j, e) in c.delta(*k) {
            let s = sign(field, deg(m) + c.degrees[i] as i64);
            for (u, f) in &tau.images[j] {
                add_term(&mut out, (m.clone(), i, concat(u, b)), &(&s * e) * f);
            }
        }
        out
    })?;
    let base = cobar_complex(c, top)?;
    let mu = |t: usize, v: &SparseVec| -> SparseVec {
        let mut entries = Vec::new();
        for (j, e) in v.iter() {
            let (m, k, b) = &total.bases[t][j];
            if *k == 0 {
                let i = base
                    .position(t, &concat(m, b))
                    .expect("product lies in the basis");
                entries.push((i, e.clone()));
            }
        }
        let mut acc = crate::exactlin::Accumulator::new();
        for (i, e) in entries {
            acc.add_term(i, e);
        }
        acc.finish()
    };
    let mut chain_map = true;
    for t in 0..top {
        for j in 0..total.dim(t) {
            let e = SparseVec::unit(j, field);
            if mu(t + 1, &total.apply(t, &e)) != base.apply(t, &mu(t, &e)) {
                chain_map = false;
            }
        }
    }
    let h_total = total.cohomology_dims();
    let h_base = base.cohomology_dims();
    let mut degrees = Vec::new();
    for t in 0..=max_degree {
        let bounds = base.coboundaries(t);
        let mut e = Echelon::new(field);
        for v in &bounds.basis {
            e.insert(v);
        }
        for z in &total.cocycles(t).basis {
            e.insert(&mu(t, z));
        }
        let induced_rank = e.rank() - bounds.dim();
        degrees.push(AdjunctionDegree {
            degree: t,
            total: h_total[t],
            target: h_base[t],
            induced_rank,
            iso: h_total[t] == h_base[t] && induced_rank == h_base[t],
        });
    }
    let quasi_isomorphism = total.d_squared_zero && chain_map && degrees.iter().all(|d| d.iso);
    Ok(AdjunctionReport {
        max_degree,
        d_squared_zero: total.d_squared_zero,
        chain_map,
        degrees,
        quasi_isomorphism,
    })
}
