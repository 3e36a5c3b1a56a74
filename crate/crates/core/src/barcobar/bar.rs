//! The bar construction `B(A) = T(s^{-1} I(A))` and the module bar construction `A ⊗ B(A)`.

use std::collections::HashMap;
use std::sync::Arc;

use serde::Serialize;

use super::{add_term, Lin};
use crate::dga::CochainAlgebra;
use crate::error::{Error, Result};
use crate::exactlin::{kernel_basis, sign, Echelon, Field, Scalar, SparseMatrix, SparseVec};
use crate::gradedalg::Word;

/// A basis element `m[a_1|...|a_n]` of `A ⊗ B(A)`: `(|m|, index of m, letters)`.
pub type ModuleKey = (usize, usize, Word);

/// Words over the basis of `I(A)`. Letters are all basis elements of `A^1..A^D` (`D` the
/// truncation of `A`); the stored words use letters of degree `<= max_letter_degree` and
/// have length `<= max_length`.
#[derive(Clone, Debug)]
pub struct BarCoalgebra {
    alg: Arc<dyn CochainAlgebra>,
    pub max_letter_degree: usize,
    pub max_length: usize,
    /// `(degree, basis index)` of each letter, ordered by degree.
    pub letters: Vec<(usize, usize)>,
    offsets: Vec<usize>,
}

pub fn bar(
    a: Arc<dyn CochainAlgebra>,
    max_letter_degree: usize,
    max_length: usize,
) -> Result<BarCoalgebra> {
    if max_length < 1 {
        return Err(Error::BoundsTooSmall(
            "bar word length must be at least 1".into(),
        ));
    }
    let top = a.max_degree();
    if max_letter_degree < 1 || max_letter_degree > top {
        return Err(Error::BoundsTooSmall(format!(
            "letter degree window {max_letter_degree} must lie in 1..={top}"
        )));
    }
    let mut letters = Vec::new();
    let mut offsets = vec![0, 0];
    for p in 1..=top {
        for i in 0..a.dim(p)? {
            letters.push((p, i));
        }
        offsets.push(letters.len());
    }
    Ok(BarCoalgebra {
        alg: a,
        max_letter_degree,
        max_length,
        letters,
        offsets,
    })
}

impl BarCoalgebra {
    pub fn algebra(&self) -> &Arc<dyn CochainAlgebra> {
        &self.alg
    }

    pub fn field(&self) -> Field {
        self.alg.field()
    }

    pub fn letter(&self, p: usize, i: usize) -> usize {
        self.offsets[p] + i
    }

    pub fn letter_degree(&self, l: usize) -> usize {
        self.letters[l].0
    }

    /// `Σ |a_i| - n`.
    pub fn degree(&self, w: &[usize]) -> usize {
        w.iter().map(|&l| self.letter_degree(l) - 1).sum()
    }

    /// `Σ |a_i|`.
    pub fn weight(&self, w: &[usize]) -> usize {
        w.iter().map(|&l| self.letter_degree(l)).sum()
    }

    pub fn in_bounds(&self, w: &[usize]) -> bool {
        w.len() <= self.max_length
            && w.iter()
                .all(|&l| self.letter_degree(l) <= self.max_letter_degree)
    }

    /// Letters of degree at most `max_letter_degree`.
    pub fn window_letters(&self) -> usize {
        self.offsets[self.max_letter_degree + 1]
    }

    /// All stored words, shortest first.
    pub fn words(&self) -> Vec<Word> {
        super::all_words(self.window_letters(), self.max_length)
    }

    pub fn render(&self, w: &[usize]) -> String {
        let parts: Vec<String> = w
            .iter()
            .map(|&l| {
                let (p, i) = self.letters[l];
                self.alg.label(p, i)
            })
            .collect();
        format!("[{}]", parts.join("|"))
    }

    /// Splits `v ∈ A^p` (`p >= 1`) into letters.
    fn letters_of(&self, p: usize, v: &SparseVec) -> Result<Vec<(usize, Scalar)>> {
        if p > self.alg.max_degree() {
            return Err(Error::DegreeOutOfRange {
                requested: p,
                max: self.alg.max_degree(),
            });
        }
        Ok(v.iter()
            .map(|(i, c)| (self.letter(p, i), c.clone()))
            .collect())
    }

    fn d_letter(&self, l: usize) -> Result<Vec<(usize, Scalar)>> {
        let (p, i) = self.letters[l];
        let dv = self.alg.differential_basis(p, i)?;
        self.letters_of(p + 1, &dv)
    }

    fn mul_letters(&self, l: usize, r: usize) -> Result<Vec<(usize, Scalar)>> {
        let (p, i) = self.letters[l];
        let (q, j) = self.letters[r];
        if p + q > self.alg.max_degree() {
            return Err(Error::DegreeOutOfRange {
                requested: p + q,
                max: self.alg.max_degree(),
            });
        }
        let v = self.alg.multiply_basis(p, i, q, j)?;
        self.letters_of(p + q, &v)
    }

    /// `ω_i = Σ_{j<i} (|a_j| - 1)` for `i = 0..=n`.
    fn omegas(&self, w: &[usize]) -> Vec<i64> {
        let mut out = Vec::with_capacity(w.len() + 1);
        let mut acc = 0i64;
        for &l in w {
            out.push(acc);
            acc += self.letter_degree(l) as i64 - 1;
        }
        out.push(acc);
        out
    }

    /// `δ_0([a_1|...|a_n]) = -Σ (-1)^{ω_i} [a_1|...|d(a_i)|...|a_n]`.
    pub fn delta0(&self, w: &[usize]) -> Result<Lin<Word>> {
        let field = self.field();
        let omega = self.omegas(w);
        let mut out = Lin::new();
        for (pos, &l) in w.iter().enumerate() {
            let s = -sign(field, omega[pos]);
            for (m, c) in self.d_letter(l)? {
                let mut v = w.to_vec();
                v[pos] = m;
                add_term(&mut out, v, &s * &c);
            }
        }
        Ok(out)
    }

    /// `δ_1([a_1|...|a_n]) = Σ_{i>=2} (-1)^{ω_i} [a_1|...|a_{i-1} a_i|...|a_n]`.
    pub fn delta1(&self, w: &[usize]) -> Result<Lin<Word>> {
        let field = self.field();
        let omega = self.omegas(w);
        let mut out = Lin::new();
        for pos in 1..w.len() {
            let s = sign(field, omega[pos]);
            for (m, c) in self.mul_letters(w[pos - 1], w[pos])? {
                let mut v = w[..pos - 1].to_vec();
                v.push(m);
                v.extend_from_slice(&w[pos + 1..]);
                add_term(&mut out, v, &s * &c);
            }
        }
        Ok(out)
    }

    pub fn delta(&self, w: &[usize]) -> Result<Lin<Word>> {
        let mut out = self.delta0(w)?;
        for (v, c) in self.delta1(w)? {
            add_term(&mut out, v, c);
        }
        Ok(out)
    }

    pub fn delta_of(&self, x: &Lin<Word>) -> Result<Lin<Word>> {
        let mut out = Lin::new();
        for (w, c) in x {
            for (v, e) in self.delta(w)? {
                add_term(&mut out, v, c * &e);
            }
        }
        Ok(out)
    }

    /// Deconcatenation `Δ([a_1|...|a_n]) = Σ_i [a_1|...|a_i] ⊗ [a_{i+1}|...|a_n]`.
    pub fn coproduct(&self, w: &[usize]) -> Vec<(Word, Word)> {
        (0..=w.len())
            .map(|i| (w[..i].to_vec(), w[i..].to_vec()))
            .collect()
    }

    /// The counit: coefficient of the empty word.
    pub fn counit(&self, x: &Lin<Word>) -> Scalar {
        x.get(&Vec::new())
            .cloned()
            .unwrap_or_else(|| self.field().zero())
    }

    /// Differential of `m[a_1|...|a_n]` in `A ⊗ B(A)`:
    /// `δ_0 = d(m)[a] - Σ (-1)^{ω_i + |m|} m[...|d(a_i)|...]`,
    /// `δ_1 = (-1)^{|m|} m a_1 [a_2|...] + Σ_{i>=2} (-1)^{ω_i + |m|} m[...|a_{i-1} a_i|...]`.
    pub fn module_delta(&self, key: &ModuleKey) -> Result<Lin<ModuleKey>> {
        let field = self.field();
        let (p, i, w) = key;
        let (p, i) = (*p, *i);
        let mut out = Lin::new();
        let dm = self.alg.differential_basis(p, i)?;
        for (j, c) in dm.iter() {
            add_term(&mut out, (p + 1, j, w.clone()), c.clone());
        }
        let sm = sign(field, p as i64);
        for (v, c) in self.delta(w)? {
            add_term(&mut out, (p, i, v), &sm * &c);
        }
        if let Some((&first, rest)) = w.split_first() {
            let (q, j) = self.letters[first];
            if p + q > self.alg.max_degree() {
                return Err(Error::DegreeOutOfRange {
                    requested: p + q,
                    max: self.alg.max_degree(),
                });
            }
            for (k, c) in self.alg.multiply_basis(p, i, q, j)?.iter() {
                add_term(&mut out, (p + q, k, rest.to_vec()), &sm * c);
            }
        }
        Ok(out)
    }

    pub fn module_delta_of(&self, x: &Lin<ModuleKey>) -> Result<Lin<ModuleKey>> {
        let mut out = Lin::new();
        for (k, c) in x {
            for (v, e) in self.module_delta(k)? {
                add_term(&mut out, v, c * &e);
            }
        }
        Ok(out)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BarCheck {
    pub max_letter_degree: usize,
    pub max_length: usize,
    pub words: usize,
    /// Words whose `δ` and `δ²` could be evaluated (letters within the truncation of `A`).
    pub checked: usize,
    /// Words among those whose `δ`-image leaves the stored bounds.
    pub flagged: usize,
    pub d_squared_failures: usize,
    pub coassociative: bool,
    pub counital: bool,
    /// `Δ δ = (δ ⊗ 1 + 1 ⊗ δ) Δ` with the Koszul sign on `1 ⊗ δ`.
    pub coderivation: bool,
}

impl BarCheck {
    pub fn passed(&self) -> bool {
        self.d_squared_failures == 0 && self.coassociative && self.counital && self.coderivation
    }
}

/// Exhaustive structure checks on every stored word.
pub fn check_bar(b: &BarCoalgebra) -> Result<BarCheck> {
    let field = b.field();
    let words = b.words();
    let mut checked = 0;
    let mut flagged = 0;
    let mut failures = 0;
    let mut coderivation = true;
    for w in &words {
        let Ok(d) = b.delta(w) else { continue };
        if d.keys().any(|v| !b.in_bounds(v)) {
            flagged += 1;
        }
        let Ok(dd) = b.delta_of(&d) else { continue };
        checked += 1;
        if !dd.is_empty() {
            log::debug!("δ² ≠ 0 on {}", b.render(w));
            failures += 1;
        }
        let mut left: Lin<(Word, Word)> = Lin::new();
        for (v, c) in &d {
            for pair in b.coproduct(v) {
                add_term(&mut left, pair, c.clone());
            }
        }
        let mut right: Lin<(Word, Word)> = Lin::new();
        for (u, v) in b.coproduct(w) {
            for (x, c) in b.delta(&u)? {
                add_term(&mut right, (x, v.clone()), c);
            }
            let s = sign(field, b.degree(&u) as i64);
            for (y, c) in b.delta(&v)? {
                add_term(&mut right, (u.clone(), y), &s * &c);
            }
        }
        if left != right {
            coderivation = false;
        }
    }
    let mut coassociative = true;
    let mut counital = true;
    for w in &words {
        let mut left: Lin<(Word, Word, Word)> = Lin::new();
        let mut right: Lin<(Word, Word, Word)> = Lin::new();
        for (u, v) in b.coproduct(w) {
            for (x, y) in b.coproduct(&u) {
                add_term(&mut left, (x, y, v.clone()), field.one());
            }
            for (x, y) in b.coproduct(&v) {
                add_term(&mut right, (u.clone(), x, y), field.one());
            }
        }
        coassociative &= left == right;
        let pairs = b.coproduct(w);
        let from_left = pairs
            .iter()
            .filter(|(u, _)| u.is_empty())
            .map(|(_, v)| v)
            .collect::<Vec<_>>();
        let from_right = pairs
            .iter()
            .filter(|(_, v)| v.is_empty())
            .map(|(u, _)| u)
            .collect::<Vec<_>>();
        counital &= from_left == vec![w] && from_right == vec![w];
    }
    Ok(BarCheck {
        max_letter_degree: b.max_letter_degree,
        max_length: b.max_length,
        words: words.len(),
        checked,
        flagged,
        d_squared_failures: failures,
        coassociative,
        counital,
        coderivation,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeCycles {
    pub degree: usize,
    /// Cycles supported on words of length `<= L - 1` and weight `<= W - 1`.
    pub cycles: usize,
    /// Of those, the dimension not accounted for by boundaries (and `1[]` in degree 0).
    pub unresolved: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BarResolutionCheck {
    pub max_weight: usize,
    pub max_length: usize,
    pub elements: usize,
    pub d_squared_zero: bool,
    pub augmentation_nonzero_class: bool,
    pub degrees: Vec<DegreeCycles>,
    pub quasi_isomorphism: bool,
}

/// Elements `m[a_1|...|a_n]` with `n <= max_length` and `|m| + Σ|a_i| <= max_weight`.
fn module_elements(
    b: &BarCoalgebra,
    max_weight: usize,
    max_length: usize,
) -> Result<Vec<ModuleKey>> {
    let a = b.algebra();
    let mut out = Vec::new();
    for p in 0..=max_weight {
        for i in 0..a.dim(p)? {
            let mut stack: Vec<Word> = vec![Vec::new()];
            while let Some(w) = stack.pop() {
                let weight = p + b.weight(&w);
                if w.len() < max_length {
                    for l in 0..b.letters.len() {
                        if weight + b.letter_degree(l) <= max_weight {
                            let mut v = w.clone();
                            v.push(l);
                            stack.push(v);
                        }
                    }
                }
                out.push((p, i, w));
            }
        }
    }
    out.sort();
    Ok(out)
}

/// The augmentation `A ⊗ B(A) → k` is a quasi-isomorphism within bounds: every cycle
/// supported on elements of length `<= L - 1` and weight `<= W - 1` is a boundary of an
/// element of length `<= L` and weight `<= W`, except the class of `1[]` in degree 0.
/// Requires `W + 1 <= D` so that all differentials are exact.
pub fn check_bar_resolution(
    a: Arc<dyn CochainAlgebra>,
    max_weight: usize,
    max_length: usize,
) -> Result<BarResolutionCheck> {
    if max_length < 1 || max_weight < 1 {
        return Err(Error::BoundsTooSmall(
            "bar resolution check needs W, L >= 1".into(),
        ));
    }
    if max_weight + 1 > a.max_degree() {
        return Err(Error::DegreeOutOfRange {
            requested: max_weight + 1,
            max: a.max_degree(),
        });
    }
    let field = a.field();
    let b = bar(a, max_weight, max_length)?;
    let elements = module_elements(&b, max_weight, max_length)?;
    let total = |k: &ModuleKey| k.0 + b.degree(&k.2);
    let mut by_degree: Vec<Vec<&ModuleKey>> = vec![Vec::new(); max_weight + 1];
    for k in &elements {
        by_degree[total(k)].push(k);
    }
    let mut d_squared_zero = true;
    let mut images: HashMap<&ModuleKey, Lin<ModuleKey>> = HashMap::new();
    for k in &elements {
        let d = b.module_delta(k)?;
        if k.0 + b.weight(&k.2) < max_weight && !b.module_delta_of(&d)?.is_empty() {
            d_squared_zero = false;
        }
        images.insert(k, d);
    }
    let unit: ModuleKey = (0, 0, Vec::new());
    let mut degrees = Vec::new();
    let mut augmentation_nonzero_class = true;
    for t in 0..=max_weight {
        // index space: everything in degree t that occurs
        let mut index: HashMap<ModuleKey, usize> = HashMap::new();
        let vectorize = |x: &Lin<ModuleKey>, index: &mut HashMap<ModuleKey, usize>| {
            let entries = x
                .iter()
                .map(|(k, c)| {
                    let n = index.len();
                    (*index.entry(k.clone()).or_insert(n), c.clone())
                })
                .collect();
            SparseVec::from_entries(entries)
        };
        let small: Vec<&ModuleKey> = by_degree[t]
            .iter()
            .copied()
            .filter(|k| k.2.len() < max_length && k.0 + b.weight(&k.2) < max_weight)
            .collect();
        let mut boundaries = Echelon::new(field);
        if t > 0 {
            for k in &by_degree[t - 1] {
                let v = vectorize(&images[*k], &mut index);
                boundaries.insert(&v);
            }
        }
        let unit_vec = (t == 0).then(|| {
            vectorize(
                &[(unit.clone(), field.one())].into_iter().collect(),
                &mut index,
            )
        });
        if let Some(u) = &unit_vec {
            augmentation_nonzero_class &= !boundaries.contains(u);
            boundaries.insert(u);
        }
        let small_vecs: Vec<SparseVec> = small
            .iter()
            .map(|k| {
                vectorize(
                    &[((*k).clone(), field.one())].into_iter().collect(),
                    &mut index,
                )
            })
            .collect();
        let mut rows_index = HashMap::new();
        let columns: Vec<SparseVec> = small
            .iter()
            .map(|k| vectorize(&images[*k], &mut rows_index))
            .collect();
        let cycles = kernel_basis(&SparseMatrix::from_columns(
            field,
            rows_index.len(),
            &columns,
        ));
        let mut unresolved = 0;
        for z in &cycles.basis {
            let mut acc = crate::exactlin::Accumulator::new();
            for (j, c) in z.iter() {
                acc.add_scaled(&small_vecs[j], c);
            }
            if !boundaries.contains(&acc.finish()) {
                unresolved += 1;
            }
        }
        degrees.push(DegreeCycles {
            degree: t,
            cycles: cycles.dim(),
            unresolved,
        });
    }
    let quasi_isomorphism =
        d_squared_zero && augmentation_nonzero_class && degrees.iter().all(|d| d.unresolved == 0);
    Ok(BarResolutionCheck {
        max_weight,
        max_length,
        elements: elements.len(),
        d_squared_zero,
        augmentation_nonzero_class,
        degrees,
        quasi_isomorphism,
    })
}
