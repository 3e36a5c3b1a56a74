//! The cobar construction `Ω(C) = T(sC̄)` of a finite-dimensional coalgebra.

use serde::Serialize;

use super::all_words;
use super::coalgebra::FinCoalgebra;
use crate::dga::DgAlgebra;
use crate::error::Result;
use crate::exactlin::sign;
use crate::gradedalg::{GeneratorSpec, NCPoly, Presentation, Word};

/// Generator `s c_k` of `Ω(C)` is generator `k - 1` of the presentation.
pub fn cobar_generator_name(k: usize) -> String {
    format!("s{k}")
}

/// `∂(s c_k) = Σ (-1)^{|c_(1)| + 1} s c_(1) · s c_(2)` over `Δ̄(c_k)`, i.e. `∂_1` on one-letter
/// words; `C` carries no differential, so `∂_0 = 0`.
pub fn cobar(c: &FinCoalgebra, truncation: usize) -> Result<Presentation> {
    c.conilpotency()?;
    let field = c.field;
    let n = c.dim();
    let generators = (1..n)
        .map(|k| GeneratorSpec {
            name: cobar_generator_name(k),
            degree: c.degrees[k] + 1,
        })
        .collect();
    let differential = (1..n)
        .map(|k| {
            let mut p = NCPoly::zero();
            for (i, j, e) in c.reduced(k) {
                p.add_term(
                    vec![i - 1, j - 1],
                    &sign(field, c.degrees[i] as i64 + 1) * e,
                );
            }
            p
        })
        .collect();
    Presentation::new(field, generators, Vec::new(), differential, truncation)
}

/// `∂_1([x_1|...|x_n]) = Σ_i Σ (-1)^{κ_i + |x_i(1)| + 1} [...|x_i(1)|x_i(2)|...]` with
/// `κ_i = Σ_{j<i} (|x_j| + 1)`, computed on the word directly.
pub fn cobar_word_differential(c: &FinCoalgebra, w: &[usize]) -> NCPoly {
    let field = c.field;
    let mut out = NCPoly::zero();
    let mut kappa = 0i64;
    for (pos, &g) in w.iter().enumerate() {
        let k = g + 1;
        for (i, j, e) in c.reduced(k) {
            let mut v: Word = w[..pos].to_vec();
            v.push(i - 1);
            v.push(j - 1);
            v.extend_from_slice(&w[pos + 1..]);
            out.add_term(v, &sign(field, kappa + c.degrees[i] as i64 + 1) * e);
        }
        kappa += c.degrees[k] as i64 + 1;
    }
    out
}

fn differentiate(c: &FinCoalgebra, p: &NCPoly) -> NCPoly {
    let mut out = NCPoly::zero();
    for (w, e) in &p.terms {
        out.add_scaled(&cobar_word_differential(c, w), e);
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CobarCheck {
    pub max_length: usize,
    pub words_checked: usize,
    pub d_squared_zero: bool,
    /// The word formula agrees with the Leibniz extension of `∂` on generators.
    pub matches_leibniz: bool,
}

/// `∂² = 0` on every word of length `<= max_length - 2` and agreement of the two routes on
/// every word of length `<= max_length - 1`.
pub fn check_cobar(c: &FinCoalgebra, max_length: usize) -> Result<CobarCheck> {
    let pres = cobar(c, max_length.max(1))?;
    let a = DgAlgebra::new(pres);
    let letters = c.dim() - 1;
    let mut words_checked = 0;
    let mut d_squared_zero = true;
    let mut matches_leibniz = true;
    for w in all_words(letters, max_length.saturating_sub(1)) {
        words_checked += 1;
        let d = cobar_word_differential(c, &w);
        if d != a.differentiate_word(&w) {
            matches_leibniz = false;
        }
        if w.len() + 2 <= max_length && !differentiate(c, &d).is_zero() {
            d_squared_zero = false;
        }
    }
    Ok(CobarCheck {
        max_length,
        words_checked,
        d_squared_zero,
        matches_leibniz,
    })
}
