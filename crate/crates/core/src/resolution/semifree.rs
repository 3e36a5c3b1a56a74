//! Semifree DG modules `A ⊗ V` given by a semibasis and its differential.

use std::sync::Arc;

use serde::Serialize;

use crate::dga::CochainAlgebra;
use crate::error::{Error, Result};
use crate::exactlin::{sign, Accumulator, Field, SparseVec};

/// A semibasis element.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Generator {
    pub label: String,
    pub degree: usize,
    pub stage: usize,
    /// `d(e)` as an element of `P^{degree + 1}`.
    pub d: SparseVec,
}

/// A left semifree module over a cochain algebra. The basis of `P^n` is the list of
/// pairs `(g, i)` with `i` a basis index of `A^{n - |g|}`, ordered by generator.
#[derive(Clone, Debug)]
pub struct SemifreeModule {
    alg: Arc<dyn CochainAlgebra>,
    pub generators: Vec<Generator>,
}

impl SemifreeModule {
    pub fn new(alg: Arc<dyn CochainAlgebra>) -> SemifreeModule {
        SemifreeModule {
            alg,
            generators: Vec::new(),
        }
    }

    pub fn algebra(&self) -> &Arc<dyn CochainAlgebra> {
        &self.alg
    }

    pub fn field(&self) -> Field {
        self.alg.field()
    }

    /// Highest degree in which `P` is fully known.
    pub fn max_degree(&self) -> usize {
        self.alg.max_degree()
    }

    /// Appends a generator; `d` must already be expressed in this module.
    pub fn push(&mut self, g: Generator) -> usize {
        self.generators.push(g);
        self.generators.len() - 1
    }

    fn block(&self, n: usize, g: usize) -> usize {
        let dg = self.generators[g].degree;
        if n < dg {
            0
        } else {
            self.alg.dim(n - dg).unwrap_or(0)
        }
    }

    /// Offsets of each generator block in `P^n` (length `generators + 1`).
    pub fn offsets(&self, n: usize) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.generators.len() + 1);
        let mut acc = 0;
        out.push(0);
        for g in 0..self.generators.len() {
            acc += self.block(n, g);
            out.push(acc);
        }
        out
    }

    pub fn dim(&self, n: usize) -> usize {
        (0..self.generators.len()).map(|g| self.block(n, g)).sum()
    }

    pub fn index(&self, n: usize, g: usize, i: usize) -> usize {
        let off: usize = (0..g).map(|h| self.block(n, h)).sum();
        off + i
    }

    /// Splits an element of `P^n` into `(generator, coefficient in A^{n-|g|})` blocks.
    pub fn split(&self, n: usize, v: &SparseVec) -> Vec<(usize, SparseVec)> {
        let offsets = self.offsets(n);
        let mut out: Vec<(usize, Vec<(usize, crate::exactlin::Scalar)>)> = Vec::new();
        for (k, c) in v.iter() {
            let g = offsets.partition_point(|&o| o <= k) - 1;
            match out.last_mut() {
                Some((h, entries)) if *h == g => entries.push((k - offsets[g], c.clone())),
                _ => out.push((g, vec![(k - offsets[g], c.clone())])),
            }
        }
        out.into_iter()
            .map(|(g, e)| (g, SparseVec::from_entries(e)))
            .collect()
    }

    /// Assembles `Σ a_g g` from blocks.
    pub fn assemble(&self, n: usize, blocks: &[(usize, SparseVec)]) -> SparseVec {
        let offsets = self.offsets(n);
        let mut acc = Accumulator::new();
        for (g, a) in blocks {
            for (i, c) in a.iter() {
                acc.add_term(offsets[*g] + i, c.clone());
            }
        }
        acc.finish()
    }

    /// The element `1 · g` of `P^{|g|}`.
    pub fn generator_element(&self, g: usize) -> SparseVec {
        let n = self.generators[g].degree;
        SparseVec::unit(self.index(n, g, 0), self.field())
    }

    /// `a · m` for `a ∈ A^p`, `m ∈ P^n`.
    pub fn act(&self, p: usize, a: &SparseVec, n: usize, m: &SparseVec) -> Result<SparseVec> {
        let mut blocks = Vec::new();
        for (g, b) in self.split(n, m) {
            let q = n - self.generators[g].degree;
            blocks.push((g, self.alg.mul(p, a, q, &b)?));
        }
        Ok(self.assemble(n + p, &blocks))
    }

    /// `d(a g) = d(a) g + (-1)^{|a|} a d(g)` on basis element `(g, i)` of `P^n`.
    pub fn diff_basis(&self, n: usize, g: usize, i: usize) -> Result<SparseVec> {
        let gen = &self.generators[g];
        let p = n - gen.degree;
        let field = self.field();
        let a = SparseVec::unit(i, field);
        let da = self.alg.diff(p, &a)?;
        let first = self.assemble(n + 1, &[(g, da)]);
        let second = self.act(p, &a, gen.degree + 1, &gen.d)?;
        Ok(first.add_scaled(&second, &sign(field, p as i64)))
    }

    pub fn diff(&self, n: usize, m: &SparseVec) -> Result<SparseVec> {
        let mut acc = Accumulator::new();
        for (g, a) in self.split(n, m) {
            for (i, c) in a.iter() {
                acc.add_scaled(&self.diff_basis(n, g, i)?, c);
            }
        }
        Ok(acc.finish())
    }

    /// Images of the basis of `P^n` under `d`; requires `n + 1 <= max_degree`.
    pub fn diff_columns(&self, n: usize) -> Result<Vec<SparseVec>> {
        if n + 1 > self.max_degree() {
            return Err(Error::DegreeOutOfRange {
                requested: n + 1,
                max: self.max_degree(),
            });
        }
        let mut out = Vec::with_capacity(self.dim(n));
        for g in 0..self.generators.len() {
            for i in 0..self.block(n, g) {
                out.push(self.diff_basis(n, g, i)?);
            }
        }
        Ok(out)
    }

    /// Coefficient of `1 · g` in `m ∈ P^n` for each generator `g` of degree `n`.
    pub fn unit_components(
        &self,
        n: usize,
        m: &SparseVec,
    ) -> Vec<(usize, crate::exactlin::Scalar)> {
        self.split(n, m)
            .into_iter()
            .filter(|(g, _)| self.generators[*g].degree == n)
            .filter_map(|(g, a)| a.get(0).map(|c| (g, c.clone())))
            .collect()
    }

    /// Whether `m ∈ I · P`: no component along `1 · g`.
    pub fn in_ip(&self, n: usize, m: &SparseVec) -> bool {
        self.unit_components(n, m).is_empty()
    }

    /// Basis element label such as `x*y·e1`.
    pub fn render(&self, n: usize, m: &SparseVec) -> String {
        if m.is_zero() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (g, a) in self.split(n, m) {
            let q = n - self.generators[g].degree;
            for (i, c) in a.iter() {
                let coeff = if c.is_one() {
                    String::new()
                } else {
                    format!("({c})*")
                };
                let mono = if q == 0 {
                    String::new()
                } else {
                    format!("{}·", self.alg.label(q, i))
                };
                parts.push(format!("{coeff}{mono}{}", self.generators[g].label));
            }
        }
        parts.join(" + ")
    }

    /// Checks `d^2 = 0` on every basis element up to degree `max_degree - 2`.
    pub fn check_d_squared(&self) -> Result<bool> {
        for n in 0..self.max_degree().saturating_sub(1) {
            for (k, col) in self.diff_columns(n)?.iter().enumerate() {
                if !self.diff(n + 1, col)?.is_zero() {
                    log::debug!("d^2 != 0 on basis element {k} of degree {n}");
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

/// A morphism of semifree modules of cohomological degree `degree`, given on generators.
/// On general elements `f(a m) = (-1)^{degree·|a|} a f(m)`.
#[derive(Clone, Debug)]
pub struct Morphism {
    pub degree: i64,
    /// `images[g] ∈ Q^{|g| + degree}`; zero when that degree is negative.
    pub images: Vec<SparseVec>,
}

impl Morphism {
    pub fn target_degree(&self, src: &SemifreeModule, g: usize) -> Option<usize> {
        let t = src.generators[g].degree as i64 + self.degree;
        (t >= 0).then_some(t as usize)
    }

    /// `f(m)` for `m ∈ src^n`, landing in `tgt^{n + degree}`.
    pub fn apply(
        &self,
        src: &SemifreeModule,
        tgt: &SemifreeModule,
        n: usize,
        m: &SparseVec,
    ) -> Result<SparseVec> {
        let field = src.field();
        let mut acc = Accumulator::new();
        for (g, a) in src.split(n, m) {
            let Some(t) = self.target_degree(src, g) else {
                continue;
            };
            let p = n - src.generators[g].degree;
            let img = tgt.act(p, &a, t, &self.images[g])?;
            acc.add_scaled(&img, &sign(field, self.degree * p as i64));
        }
        Ok(acc.finish())
    }

    /// `d f(g) = (-1)^{degree} f(d g)` for every generator whose degrees stay in the window.
    pub fn is_dg(&self, src: &SemifreeModule, tgt: &SemifreeModule) -> Result<bool> {
        let field = src.field();
        for (g, gen) in src.generators.iter().enumerate() {
            let Some(t) = self.target_degree(src, g) else {
                continue;
            };
            if t + 1 > tgt.max_degree() || gen.degree + 1 > src.max_degree() {
                continue;
            }
            let left = tgt.diff(t, &self.images[g])?;
            let right = self
                .apply(src, tgt, gen.degree + 1, &gen.d)?
                .scale(&sign(field, self.degree));
            if left != right {
                return Ok(false);
            }
        }
        Ok(true)
    }
}
