//! Randomized search for algebra isomorphisms between finite-dimensional local algebras.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::exactlin::{Accumulator, Echelon, Insert, SparseVec, Subspace};
use crate::gradedalg::FdAlgebra;

/// Minimum number of random trials after the deterministic first guess.
pub const MIN_ISO_TRIALS: usize = 32;
/// Candidate images per generator above which the backtracking stage is skipped.
pub const ISO_CANDIDATE_LIMIT: usize = 1 << 12;
/// Partial assignments the backtracking stage may examine.
pub const ISO_NODE_BUDGET: usize = 1 << 16;

#[derive(Clone, Debug, Serialize)]
pub struct IsoSearch {
    pub found: bool,
    pub trials: usize,
    /// Images of the basis of the source, when found.
    pub map: Option<Vec<SparseVec>>,
    pub reason: Option<String>,
}

impl IsoSearch {
    fn fail(trials: usize, reason: String) -> IsoSearch {
        IsoSearch {
            found: false,
            trials,
            map: None,
            reason: Some(reason),
        }
    }
}

/// Generators with their degrees: a complement of `J^2` in `J`, homogeneous when graded.
fn generators(alg: &FdAlgebra, graded: bool) -> Vec<(SparseVec, Option<usize>)> {
    let j = alg.augmentation_ideal();
    let j2 = alg.product_space(&j, &j);
    let mut e = Echelon::new(alg.field);
    for v in &j2.basis {
        e.insert(v);
    }
    match (graded, alg.grading.as_ref()) {
        (true, Some(grading)) => {
            let mut order: Vec<usize> = (1..alg.dim()).collect();
            order.sort_by_key(|&i| (grading[i], i));
            order
                .into_iter()
                .map(|i| (SparseVec::unit(i, alg.field), Some(grading[i])))
                .filter(|(v, _)| matches!(e.insert(v), Insert::Independent(_)))
                .collect()
        }
        _ => j
            .basis
            .into_iter()
            .filter(|v| matches!(e.insert(v), Insert::Independent(_)))
            .map(|v| (v, None))
            .collect(),
    }
}

/// Closes `gens_src[i] ↦ images[i]` under multiplication. Returns matched pairs of words
/// spanning the subalgebra generated by `gens_src`, or `None` when a relation among those
/// words fails in `tgt` or the images of independent words become dependent.
fn close(
    src: &FdAlgebra,
    tgt: &FdAlgebra,
    gens_src: &[SparseVec],
    images: &[SparseVec],
) -> Option<Vec<(SparseVec, SparseVec)>> {
    let field = src.field;
    let mut words: Vec<(SparseVec, SparseVec)> = vec![(src.one(), tgt.one())];
    let mut ech = Echelon::tracking(field);
    ech.insert(&src.one());
    let mut ech_tgt = Echelon::new(field);
    ech_tgt.insert(&tgt.one());
    // insertion index -> word index, for independent insertions
    let mut word_of: Vec<Option<usize>> = vec![Some(0)];
    let mut frontier = 0;
    while frontier < words.len() {
        let (wa, wb) = words[frontier].clone();
        frontier += 1;
        for (g, u) in gens_src.iter().zip(images) {
            let va = src.mul(&wa, g);
            let vb = tgt.mul(&wb, u);
            match ech.insert(&va) {
                Insert::Independent(_) => {
                    if !matches!(ech_tgt.insert(&vb), Insert::Independent(_)) {
                        return None;
                    }
                    word_of.push(Some(words.len()));
                    words.push((va, vb));
                }
                Insert::Dependent(Some(combo)) => {
                    word_of.push(None);
                    // va + Σ c_k words[k] = 0 must hold after mapping.
                    let mut acc = Accumulator::new();
                    acc.add_scaled(&vb, &field.one());
                    for (k, c) in combo.iter() {
                        if let Some(Some(w)) = word_of.get(k) {
                            acc.add_scaled(&words[*w].1, c);
                        }
                    }
                    if !acc.finish().is_zero() {
                        return None;
                    }
                }
                Insert::Dependent(None) => unreachable!("tracking echelon"),
            }
        }
    }
    Some(words)
}

/// Extends `gens_src[i] ↦ images[i]` to an algebra map and returns the images of the basis
/// of `src`, when the generators generate and every relation holds.
fn extend(
    src: &FdAlgebra,
    tgt: &FdAlgebra,
    gens_src: &[SparseVec],
    images: &[SparseVec],
) -> Option<Vec<SparseVec>> {
    let field = src.field;
    let words = close(src, tgt, gens_src, images)?;
    if words.len() != src.dim() {
        return None;
    }
    let mut basis = Echelon::tracking(field);
    for (wa, _) in &words {
        basis.insert(wa);
    }
    (0..src.dim())
        .map(|i| {
            let c = basis.solve(&SparseVec::unit(i, field))?;
            let mut acc = Accumulator::new();
            for (k, s) in c.iter() {
                acc.add_scaled(&words[k].1, s);
            }
            Some(acc.finish())
        })
        .collect()
}

/// Whether `images` defines a unital, multiplicative bijection `src → tgt`.
pub fn is_isomorphism(src: &FdAlgebra, tgt: &FdAlgebra, images: &[SparseVec]) -> bool {
    if images.len() != src.dim() || src.dim() != tgt.dim() || images[0] != tgt.one() {
        return false;
    }
    if Subspace::span(tgt.field, tgt.dim(), images).dim() != tgt.dim() {
        return false;
    }
    let apply = |v: &SparseVec| {
        let mut acc = Accumulator::new();
        for (k, c) in v.iter() {
            acc.add_scaled(&images[k], c);
        }
        acc.finish()
    };
    for i in 0..src.dim() {
        for j in 0..src.dim() {
            if apply(src.basis_product(i, j)) != tgt.mul(&images[i], &images[j]) {
                return false;
            }
        }
    }
    true
}

/// Ranks of `v ↦ uv` and `v ↦ vu` from `J` to `J^2 / J^3`, and whether `u^2 ∈ J^3`. An
/// isomorphism preserves these for generators, whatever their `J^2` components.
fn graded_signature(
    alg: &FdAlgebra,
    (j, j3): &(Subspace, Subspace),
    u: &SparseVec,
) -> (usize, usize, bool) {
    let rank_mod_j3 =
        |vs: Vec<SparseVec>| j3.sum(&Subspace::span(alg.field, alg.dim(), &vs)).dim() - j3.dim();
    let left = rank_mod_j3(j.basis.iter().map(|v| alg.mul(u, v)).collect());
    let right = rank_mod_j3(j.basis.iter().map(|v| alg.mul(v, u)).collect());
    (left, right, j3.contains(&alg.mul(u, u)))
}

/// Depth-first search over images in the span of the target generators of matching degree,
/// pruning any prefix whose generated subalgebra is not mapped injectively and
/// multiplicatively. Coefficients range over the field when it is finite and over
/// `{0, ±1, ±2}` otherwise.
fn backtrack(
    src: &FdAlgebra,
    tgt: &FdAlgebra,
    gens_src: &[(SparseVec, Option<usize>)],
    gens_tgt: &[(SparseVec, Option<usize>)],
    attempts: &mut usize,
) -> Option<Vec<SparseVec>> {
    if gens_src.is_empty() {
        return None;
    }
    let field = src.field;
    let scalars: Vec<i64> = match field.order() {
        Some(p) if p <= ISO_CANDIDATE_LIMIT as u64 => (0..p as i64).collect(),
        Some(_) => return None,
        None => vec![0, 1, -1, 2, -2],
    };
    let mut candidates: Vec<Vec<SparseVec>> = Vec::with_capacity(gens_src.len());
    for (_, d) in gens_src {
        let span: Vec<&SparseVec> = gens_tgt
            .iter()
            .filter(|(_, e)| e == d)
            .map(|(v, _)| v)
            .collect();
        let count = (scalars.len() as f64).powi(span.len() as i32);
        if count > ISO_CANDIDATE_LIMIT as f64 {
            return None;
        }
        let mut list = Vec::with_capacity(count as usize);
        for mut code in 1..count as usize {
            let mut acc = Accumulator::new();
            for v in &span {
                acc.add_scaled(v, &field.from_i64(scalars[code % scalars.len()]));
                code /= scalars.len();
            }
            list.push(acc.finish());
        }
        candidates.push(list);
    }
    let powers = |alg: &FdAlgebra| {
        let j = alg.augmentation_ideal();
        let j3 = alg.product_space(&alg.product_space(&j, &j), &j);
        (j, j3)
    };
    let (j_src, j_tgt) = (powers(src), powers(tgt));
    for (list, (g, _)) in candidates.iter_mut().zip(gens_src) {
        let want = graded_signature(src, &j_src, g);
        list.retain(|u| graded_signature(tgt, &j_tgt, u) == want);
    }
    // most constrained generators first
    let mut order: Vec<usize> = (0..gens_src.len()).collect();
    order.sort_by_key(|&i| candidates[i].len());
    let candidates: Vec<Vec<SparseVec>> = order
        .iter()
        .map(|&i| std::mem::take(&mut candidates[i]))
        .collect();
    let gens: Vec<SparseVec> = order.iter().map(|&i| gens_src[i].0.clone()).collect();
    let mut chosen: Vec<usize> = vec![0];
    let mut nodes = 0;
    while let Some(&last) = chosen.last() {
        if nodes >= ISO_NODE_BUDGET {
            return None;
        }
        let depth = chosen.len() - 1;
        if last == candidates[depth].len() {
            chosen.pop();
            if let Some(prev) = chosen.last_mut() {
                *prev += 1;
            }
            continue;
        }
        nodes += 1;
        let images: Vec<SparseVec> = chosen
            .iter()
            .enumerate()
            .map(|(i, &c)| candidates[i][c].clone())
            .collect();
        if depth + 1 == gens.len() {
            *attempts += 1;
            if let Some(map) =
                extend(src, tgt, &gens, &images).filter(|m| is_isomorphism(src, tgt, m))
            {
                return Some(map);
            }
        } else if close(src, tgt, &gens[..=depth], &images).is_some() {
            chosen.push(0);
            continue;
        }
        *chosen.last_mut().unwrap() += 1;
    }
    None
}

/// Searches for an isomorphism `src → tgt`. With `graded` (both algebras carrying a grading),
/// only degree-preserving maps are tried.
pub fn find_isomorphism(
    src: &FdAlgebra,
    tgt: &FdAlgebra,
    graded: bool,
    trials: usize,
    seed: u64,
) -> IsoSearch {
    if src.dim() != tgt.dim() {
        return IsoSearch::fail(
            0,
            format!("dimensions differ: {} vs {}", src.dim(), tgt.dim()),
        );
    }
    match (src.radical_layers(), tgt.radical_layers()) {
        (Ok(a), Ok(b)) if a != b => {
            return IsoSearch::fail(0, format!("radical layers differ: {a:?} vs {b:?}"))
        }
        (Err(e), _) | (_, Err(e)) => return IsoSearch::fail(0, e.to_string()),
        _ => {}
    }
    let graded = graded && src.grading.is_some() && tgt.grading.is_some();
    let gens_src = generators(src, graded);
    let gens_tgt = generators(tgt, graded);
    let degrees = |g: &[(SparseVec, Option<usize>)]| g.iter().map(|(_, d)| *d).collect::<Vec<_>>();
    if degrees(&gens_src) != degrees(&gens_tgt) {
        return IsoSearch::fail(
            0,
            format!(
                "generator degrees differ: {:?} vs {:?}",
                degrees(&gens_src),
                degrees(&gens_tgt)
            ),
        );
    }
    // Random images of a generator of degree d: combinations of the target basis in degree d.
    let pool = |d: Option<usize>| -> Vec<SparseVec> {
        match (d, tgt.grading.as_ref()) {
            (Some(d), Some(grading)) => (0..tgt.dim())
                .filter(|&i| grading[i] == d)
                .map(|i| SparseVec::unit(i, tgt.field))
                .collect(),
            _ => tgt.augmentation_ideal().basis,
        }
    };
    let gens_src_vecs: Vec<SparseVec> = gens_src.iter().map(|(v, _)| v.clone()).collect();
    let field = src.field;
    let mut attempts = 0;
    let attempt = |images: &[SparseVec], attempts: &mut usize| -> Option<Vec<SparseVec>> {
        *attempts += 1;
        extend(src, tgt, &gens_src_vecs, images).filter(|map| is_isomorphism(src, tgt, map))
    };
    let found = |trials: usize, map: Vec<SparseVec>| IsoSearch {
        found: true,
        trials,
        map: Some(map),
        reason: None,
    };
    let identity_like: Vec<SparseVec> = gens_tgt.iter().map(|(v, _)| v.clone()).collect();
    if let Some(map) = attempt(&identity_like, &mut attempts) {
        return found(attempts, map);
    }
    if let Some(map) = backtrack(src, tgt, &gens_src, &gens_tgt, &mut attempts) {
        return found(attempts, map);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut coefficient = || match field.order() {
        Some(p) => field.from_i64(rng.gen_range(0..p) as i64),
        None => field.from_i64(rng.gen_range(-3..=3)),
    };
    for _ in 0..trials.max(MIN_ISO_TRIALS) {
        let images: Vec<SparseVec> = gens_src
            .iter()
            .map(|(_, d)| {
                let mut acc = Accumulator::new();
                for v in &pool(*d) {
                    acc.add_scaled(v, &coefficient());
                }
                acc.finish()
            })
            .collect();
        if let Some(map) = attempt(&images, &mut attempts) {
            return found(attempts, map);
        }
    }
    IsoSearch::fail(attempts, "no isomorphism found within search budget".into())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::Field;
    use crate::gradedalg::{GradedQuotient, Presentation};

    fn local(f: Field, relation: &str) -> FdAlgebra {
        let names = ["a", "b", "c"];
        let mut rels = vec![relation.to_string()];
        for x in names {
            for y in names {
                for z in names {
                    rels.push(format!("{x}*{y}*{z}"));
                }
            }
        }
        let rels: Vec<&str> = rels.iter().map(|s| s.as_str()).collect();
        let p =
            Presentation::from_strings(f, &[("a", 1), ("b", 1), ("c", 1)], &rels, &[], 4).unwrap();
        FdAlgebra::from_graded(&GradedQuotient::new(p)).unwrap()
    }

    #[test]
    fn rank_one_relation_over_gf5() {
        let f = Field::Prime(5);
        let src = local(f, "c*b");
        // (b + c)(a + 2b)
        let tgt = local(f, "b*a + 2*b*b + c*a + 2*c*b");
        let s = find_isomorphism(&src, &tgt, false, 0, 1);
        assert!(s.found, "{:?}", s.reason);
        assert!(s.trials > 1);
        assert!(is_isomorphism(&src, &tgt, s.map.as_ref().unwrap()));
        let other = local(f, "c*b - b*c");
        assert!(!find_isomorphism(&src, &other, false, 0, 1).found);
    }
}
