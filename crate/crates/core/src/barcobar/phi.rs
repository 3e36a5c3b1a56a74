//! The map `φ: B(A)^# → End_A(A ⊗ B(A))` and its cochain and multiplicativity checks.

use serde::Serialize;

use super::bar::{BarCoalgebra, ModuleKey};
use super::{add_term, Lin};
use crate::error::Result;
use crate::exactlin::sign;
use crate::gradedalg::Word;

/// A homogeneous functional on `B(A)`, as coefficients on dual words, of degree `-deg(u)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Functional {
    pub degree: i64,
    pub coeffs: Lin<Word>,
}

impl Functional {
    pub fn dual_word(b: &BarCoalgebra, u: &[usize]) -> Functional {
        Functional {
            degree: -(b.degree(u) as i64),
            coeffs: [(u.to_vec(), b.field().one())].into_iter().collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

/// `φ(f)(m[a_1|...|a_n]) = (-1)^{|f||m|} Σ_i (-1)^{|f| ω_i} m[a_1|...|a_i] f([a_{i+1}|...|a_n])`
/// with `ω_i = |a_1| + ... + |a_i| - i`.
pub fn phi_apply(b: &BarCoalgebra, f: &Functional, x: &Lin<ModuleKey>) -> Lin<ModuleKey> {
    let field = b.field();
    let mut out = Lin::new();
    for ((p, i, w), c) in x {
        let sm = sign(field, f.degree * *p as i64);
        for k in 0..=w.len() {
            let Some(value) = f.coeffs.get(&w[k..]) else {
                continue;
            };
            let omega = b.degree(&w[..k]) as i64;
            let s = &sm * &sign(field, f.degree * omega);
            add_term(&mut out, (*p, *i, w[..k].to_vec()), &(&s * c) * value);
        }
    }
    out
}

/// `(f·g)(x) = Σ (-1)^{|g||x_(1)|} f(x_(1)) g(x_(2))`.
pub fn convolve(b: &BarCoalgebra, f: &Functional, g: &Functional) -> Functional {
    let field = b.field();
    let mut coeffs = Lin::new();
    for (u, a) in &f.coeffs {
        let s = sign(field, g.degree * b.degree(u) as i64);
        for (v, c) in &g.coeffs {
            let mut w = u.clone();
            w.extend_from_slice(v);
            add_term(&mut coeffs, w, &(&s * a) * c);
        }
    }
    Functional {
        degree: f.degree + g.degree,
        coeffs,
    }
}

/// `d(f) = -(-1)^{|f|} f ∘ δ`, exact when every word of `f` has length `<= L - 1`.
pub fn dual_differential(b: &BarCoalgebra, f: &Functional) -> Result<Functional> {
    let field = b.field();
    let s = -sign(field, f.degree);
    let mut coeffs = Lin::new();
    let longest = f.coeffs.keys().map(|u| u.len()).max().unwrap_or(0);
    for x in b.words() {
        if x.len() > longest + 1 {
            continue;
        }
        let Ok(d) = b.delta(&x) else { continue };
        for (u, c) in &d {
            if let Some(a) = f.coeffs.get(u) {
                add_term(&mut coeffs, x.clone(), &(&s * a) * c);
            }
        }
    }
    Ok(Functional {
        degree: f.degree + 1,
        coeffs,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PhiReport {
    pub max_letter_degree: usize,
    pub max_length: usize,
    pub functionals: usize,
    pub elements: usize,
    pub cochain_checks: usize,
    pub multiplicative_checks: usize,
    pub skipped: usize,
    pub cochain_violations: Vec<String>,
    pub multiplicative_violations: Vec<String>,
    pub counit_is_identity: bool,
}

impl PhiReport {
    pub fn passed(&self) -> bool {
        self.cochain_violations.is_empty()
            && self.multiplicative_violations.is_empty()
            && self.counit_is_identity
    }
}

/// Checks `φ(d f) = d_End φ(f)` for dual words `f` of length `<= L - 1` and
/// `φ(f·g) = φ(f) ∘ φ(g)` for dual words with total length `<= L`, on every `1[a]` with
/// `a` a stored word whose differentials stay inside the truncation of `A`.
/// `d_End(F) = δ F - (-1)^{|F|} F δ` on `A ⊗ B(A)`.
pub fn phi_check(b: &BarCoalgebra) -> Result<PhiReport> {
    let field = b.field();
    let words = b.words();
    let top = b.algebra().max_degree();
    let elements: Vec<&Word> = words.iter().filter(|a| b.weight(a) < top).collect();
    let skipped = words.len() - elements.len();
    let unit =
        |a: &Word| -> Lin<ModuleKey> { [((0, 0, a.clone()), field.one())].into_iter().collect() };
    let mut cochain_violations = Vec::new();
    let mut cochain_checks = 0;
    let short: Vec<&Word> = words.iter().filter(|u| u.len() < b.max_length).collect();
    for u in &short {
        let f = Functional::dual_word(b, u);
        let df = dual_differential(b, &f)?;
        for a in &elements {
            let x = unit(a);
            let left = phi_apply(b, &df, &x);
            let mut right = b.module_delta_of(&phi_apply(b, &f, &x))?;
            let s = -sign(field, f.degree);
            for (k, c) in phi_apply(b, &f, &b.module_delta_of(&x)?) {
                add_term(&mut right, k, &s * &c);
            }
            cochain_checks += 1;
            if left != right {
                cochain_violations.push(format!("f = {}*, on 1{}", b.render(u), b.render(a)));
            }
        }
    }
    let mut multiplicative_violations = Vec::new();
    let mut multiplicative_checks = 0;
    for u in &words {
        for v in words.iter().filter(|v| u.len() + v.len() <= b.max_length) {
            let f = Functional::dual_word(b, u);
            let g = Functional::dual_word(b, v);
            let fg = convolve(b, &f, &g);
            for a in &words {
                let x = unit(a);
                multiplicative_checks += 1;
                if phi_apply(b, &fg, &x) != phi_apply(b, &f, &phi_apply(b, &g, &x)) {
                    multiplicative_violations.push(format!(
                        "f = {}*, g = {}*, on 1{}",
                        b.render(u),
                        b.render(v),
                        b.render(a)
                    ));
                }
            }
        }
    }
    let counit = Functional::dual_word(b, &[]);
    let counit_is_identity = words
        .iter()
        .all(|a| phi_apply(b, &counit, &unit(a)) == unit(a));
    Ok(PhiReport {
        max_letter_degree: b.max_letter_degree,
        max_length: b.max_length,
        functionals: words.len(),
        elements: elements.len(),
        cochain_checks,
        multiplicative_checks,
        skipped,
        cochain_violations,
        multiplicative_violations,
        counit_is_identity,
    })
}
