//! Lifting maps into an acyclic resolution generator by generator.

use std::collections::HashMap;

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::minimal::Resolution;
use super::semifree::{Morphism, SemifreeModule};
use crate::error::{Error, Result};
use crate::exactlin::{sign, Echelon, Scalar, SparseVec};

/// Tracking echelons of the target differential `d: Q^t → Q^{t+1}`, one per degree.
/// A solution of `d(y) = b` is a combination of columns, i.e. `y` in the basis of `Q^t`.
struct Solver<'a> {
    tgt: &'a SemifreeModule,
    cache: HashMap<usize, Echelon>,
}

impl Solver<'_> {
    fn solve(&mut self, t: usize, rhs: &SparseVec) -> Result<Option<SparseVec>> {
        if !self.cache.contains_key(&t) {
            let mut e = Echelon::tracking(self.tgt.field());
            for c in &self.tgt.diff_columns(t)? {
                e.insert(c);
            }
            self.cache.insert(t, e);
        }
        Ok(self.cache[&t].solve(rhs))
    }
}

/// Builds `f: src → tgt` of the given degree with `ε(f(g)) = values[g]`, `f = 0` on
/// generators of stage below `from_stage`, and `d f = (-1)^degree f d`. With `rng`,
/// each image is perturbed by a random coboundary.
pub fn lift_map(
    src: &SemifreeModule,
    tgt: &Resolution,
    degree: i64,
    values: &[Scalar],
    from_stage: usize,
    mut rng: Option<&mut ChaCha8Rng>,
) -> Result<Morphism> {
    let field = src.field();
    let tm = &tgt.module;
    let mut solver = Solver {
        tgt: tm,
        cache: HashMap::new(),
    };
    let mut f = Morphism {
        degree,
        images: Vec::with_capacity(src.generators.len()),
    };
    for (g, gen) in src.generators.iter().enumerate() {
        let value = &values[g];
        if gen.stage < from_stage {
            f.images.push(SparseVec::new());
            continue;
        }
        if src
            .split(gen.degree + 1, &gen.d)
            .iter()
            .any(|(h, _)| *h >= g)
        {
            return Err(Error::LiftFailed(format!(
                "differential of {} refers to a later generator",
                gen.label
            )));
        }
        // Images so far; later generators are still zero and do not occur in d(g).
        let mut partial = f.clone();
        partial
            .images
            .resize(src.generators.len(), SparseVec::new());
        let rhs = partial
            .apply(src, tm, gen.degree + 1, &gen.d)?
            .scale(&sign(field, degree));
        let t = gen.degree as i64 + degree;
        if t < 0 {
            if !rhs.is_zero() || !value.is_zero() {
                return Err(Error::LiftFailed(format!(
                    "{} would map to a negative degree",
                    gen.label
                )));
            }
            f.images.push(SparseVec::new());
            continue;
        }
        let t = t as usize;
        if t + 1 > tm.max_degree() {
            return Err(Error::WindowExhausted(format!(
                "lifting {} needs degree {} beyond the window",
                gen.label,
                t + 1
            )));
        }
        let mut y = solver.solve(t, &rhs)?.ok_or_else(|| {
            Error::LiftFailed(format!("no preimage for {} in degree {t}", gen.label))
        })?;
        if t == 0 {
            let current = y.get(0).cloned().unwrap_or_else(|| field.zero());
            y = y.add_scaled(&SparseVec::unit(0, field), &(value - &current));
        } else if !value.is_zero() {
            return Err(Error::LiftFailed(format!(
                "{} has a nonzero value but maps to degree {t}",
                gen.label
            )));
        }
        if let (Some(rng), true) = (rng.as_deref_mut(), t >= 1) {
            let dim = tm.dim(t - 1);
            if dim > 0 {
                let mut z = SparseVec::new();
                for k in 0..dim {
                    let c = field.from_i64(rng.gen_range(-2..=2));
                    z = z.add_scaled(&SparseVec::unit(k, field), &c);
                }
                y = y.add(&tm.diff(t - 1, &z)?);
            }
        }
        f.images.push(y);
    }
    Ok(f)
}

/// `f_x: P/P(n-1) → P` with `ε ∘ f_x = x`, for a functional `x` on generators of stage `>= n`
/// that is homogeneous of generator degree `δ` (so `f_x` has degree `-δ`).
pub fn lift_through(p: &Resolution, x: &SparseVec, n: usize) -> Result<Morphism> {
    let field = p.field();
    let gens = p.generators();
    let mut delta = None;
    for (g, _) in x.iter() {
        if gens[g].stage < n {
            return Err(Error::LiftFailed(format!(
                "functional does not vanish on {}",
                gens[g].label
            )));
        }
        match delta {
            None => delta = Some(gens[g].degree),
            Some(d) if d != gens[g].degree => {
                return Err(Error::LiftFailed("functional is not homogeneous".into()))
            }
            _ => {}
        }
    }
    let degree = -(delta.unwrap_or(0) as i64);
    let values: Vec<Scalar> = (0..gens.len())
        .map(|g| x.get(g).cloned().unwrap_or_else(|| field.zero()))
        .collect();
    lift_map(&p.module, p, degree, &values, n, None)
}

/// Lifts `λ · id_k` to a degree-0 morphism between two resolutions of `k`.
pub fn lift_scalar(
    src: &Resolution,
    tgt: &Resolution,
    lambda: &Scalar,
    rng: Option<&mut ChaCha8Rng>,
) -> Result<Morphism> {
    let field = src.field();
    let values: Vec<Scalar> = (0..src.generators().len())
        .map(|g| if g == 0 { lambda.clone() } else { field.zero() })
        .collect();
    lift_map(&src.module, tgt, 0, &values, 0, rng)
}
