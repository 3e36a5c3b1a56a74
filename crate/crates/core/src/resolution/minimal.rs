//! Minimal semifree resolutions of the trivial module, built stage by stage.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::semifree::{Generator, SemifreeModule};
use crate::dga::{CochainAlgebra, DgAlgebra};
use crate::error::{Error, Result};
use crate::exactlin::{
    kernel_basis, subspace_quotient, Echelon, Field, Scalar, SparseMatrix, SparseVec, Subspace,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

/// Degree and stage bounds of a windowed computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Window {
    #[serde(rename = "D")]
    pub max_degree: usize,
    #[serde(rename = "S")]
    pub max_stage: usize,
}

impl Window {
    pub fn new(max_degree: usize, max_stage: usize) -> Window {
        Window {
            max_degree,
            max_stage,
        }
    }
}

impl Default for Window {
    fn default() -> Self {
        Window::new(8, 8)
    }
}

/// A minimal semifree resolution `ε: P → k` within a window.
#[derive(Clone, Debug)]
pub struct Resolution {
    pub side: Side,
    pub module: SemifreeModule,
    pub window: Window,
    /// Number of stages `V(0), ..., V(stages - 1)` built.
    pub stages: usize,
    /// The augmented complex is acyclic in all degrees below `D`.
    pub terminated: bool,
    /// Degrees `< acyclic_below` are known to be acyclic.
    pub acyclic_below: usize,
}

#[derive(Clone, Debug, Default)]
pub struct ResolutionOptions {
    /// Randomizes representative choices (unitriangular recombination plus coboundaries).
    pub seed: Option<u64>,
}

impl Resolution {
    pub fn field(&self) -> Field {
        self.module.field()
    }

    pub fn algebra(&self) -> &Arc<dyn CochainAlgebra> {
        self.module.algebra()
    }

    pub fn generators(&self) -> &[Generator] {
        &self.module.generators
    }

    /// Partial result: the stage bound was reached before acyclicity through the window.
    pub fn window_exhausted(&self) -> bool {
        !self.terminated
    }

    pub fn stage_generators(&self, s: usize) -> Vec<usize> {
        (0..self.module.generators.len())
            .filter(|&g| self.module.generators[g].stage == s)
            .collect()
    }

    /// Semibasis counts indexed by `(stage, degree)`.
    pub fn counts(&self) -> Vec<(usize, usize, usize)> {
        let mut map = std::collections::BTreeMap::new();
        for g in &self.module.generators {
            *map.entry((g.stage, g.degree)).or_insert(0usize) += 1;
        }
        map.into_iter().map(|((s, d), c)| (s, d, c)).collect()
    }

    /// First generator whose differential has a component outside `I · P`.
    pub fn minimality_violation(&self) -> Option<usize> {
        self.module
            .generators
            .iter()
            .position(|g| !self.module.in_ip(g.degree + 1, &g.d))
    }

    /// First generator whose differential involves a generator of the same or a later stage.
    pub fn stage_order_violation(&self) -> Option<usize> {
        let m = &self.module;
        m.generators.iter().enumerate().position(|(_, g)| {
            m.split(g.degree + 1, &g.d)
                .iter()
                .any(|(h, _)| m.generators[*h].stage >= g.stage)
        })
    }

    /// Recomputes `H^n(P → k)` for `0 <= n < D` from scratch.
    pub fn check_exactness(&self) -> Result<Vec<usize>> {
        let d = self.window.max_degree;
        let mut failures = Vec::new();
        for n in 0..d {
            if reduced_cohomology_dim(&self.module, n)? != 0 {
                failures.push(n);
            }
        }
        Ok(failures)
    }

    pub fn report(&self) -> ResolutionReport {
        let m = &self.module;
        ResolutionReport {
            side: self.side,
            window: self.window,
            stages: self.stages,
            terminated: self.terminated,
            acyclic_below: self.acyclic_below,
            generators: m
                .generators
                .iter()
                .map(|g| GeneratorReport {
                    label: g.label.clone(),
                    stage: g.stage,
                    degree: g.degree,
                    differential: m.render(g.degree + 1, &g.d),
                    coordinates: g.d.clone(),
                })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct GeneratorReport {
    pub label: String,
    pub stage: usize,
    pub degree: usize,
    pub differential: String,
    pub coordinates: SparseVec,
}

#[derive(Clone, Debug, Serialize)]
pub struct ResolutionReport {
    pub side: Side,
    pub window: Window,
    pub stages: usize,
    pub terminated: bool,
    pub acyclic_below: usize,
    pub generators: Vec<GeneratorReport>,
}

/// Dimension of `H^n` of the kernel of the augmentation `P → k`.
pub fn reduced_cohomology_dim(p: &SemifreeModule, n: usize) -> Result<usize> {
    let field = p.field();
    let dim = p.dim(n);
    let r_out = rank_of(field, &p.diff_columns(n)?);
    let r_in = if n == 0 {
        0
    } else {
        rank_of(field, &p.diff_columns(n - 1)?)
    };
    // In degree 0 the class of 1·e0 is accounted for by the augmentation.
    let aug = usize::from(n == 0);
    Ok(dim - r_out - r_in - aug)
}

fn rank_of(field: Field, vectors: &[SparseVec]) -> usize {
    let mut e = Echelon::new(field);
    for v in vectors {
        e.insert(v);
    }
    e.rank()
}

fn small_scalar(rng: &mut ChaCha8Rng, field: Field) -> Scalar {
    field.from_i64(rng.gen_range(-3..=3))
}

/// Builds a minimal semifree resolution of `k` over `alg`, killing the lowest-degree
/// cohomology of the augmentation kernel with one new stage at a time.
pub fn minimal_resolution(
    alg: Arc<dyn CochainAlgebra>,
    window: Window,
    side: Side,
    options: &ResolutionOptions,
) -> Result<Resolution> {
    if window.max_degree < 1 || window.max_stage < 1 {
        return Err(Error::BoundsTooSmall(
            "window needs D >= 1 and S >= 1".into(),
        ));
    }
    if window.max_degree > alg.max_degree() {
        return Err(Error::DegreeOutOfRange {
            requested: window.max_degree,
            max: alg.max_degree(),
        });
    }
    let field = alg.field();
    let d = window.max_degree;
    let mut rng = options.seed.map(ChaCha8Rng::seed_from_u64);
    let mut module = SemifreeModule::new(alg);
    module.push(Generator {
        label: "e0".into(),
        degree: 0,
        stage: 0,
        d: SparseVec::new(),
    });
    let mut stages = 1;
    let mut j = 1;
    loop {
        while j < d && reduced_cohomology_dim(&module, j)? == 0 {
            j += 1;
        }
        if j >= d {
            return Ok(Resolution {
                side,
                module,
                window,
                stages,
                terminated: true,
                acyclic_below: d,
            });
        }
        if stages >= window.max_stage {
            log::info!(
                "stage bound {} reached with cohomology in degree {j}",
                window.max_stage
            );
            return Ok(Resolution {
                side,
                module,
                window,
                stages,
                terminated: false,
                acyclic_below: j,
            });
        }
        let cocycles = kernel_basis(&SparseMatrix::from_columns(
            field,
            module.dim(j + 1),
            &module.diff_columns(j)?,
        ));
        let boundary_cols = module.diff_columns(j - 1)?;
        let boundaries = Subspace::span(field, module.dim(j), &boundary_cols);
        let mut reps = subspace_quotient(&cocycles, &boundaries)?;
        if let Some(rng) = rng.as_mut() {
            randomize(&mut reps, &boundaries, rng, field);
        }
        let before = module.generators.len();
        for z in reps {
            let z = move_into_ip(&module, j, z, &boundary_cols)?;
            let label = format!("e{}", module.generators.len());
            module.push(Generator {
                label,
                degree: j - 1,
                stage: stages,
                d: z,
            });
        }
        log::debug!(
            "stage {stages}: {} generators of degree {} kill H^{j}",
            module.generators.len() - before,
            j - 1
        );
        stages += 1;
    }
}

fn randomize(reps: &mut [SparseVec], boundaries: &Subspace, rng: &mut ChaCha8Rng, field: Field) {
    let original = reps.to_vec();
    for (k, r) in reps.iter_mut().enumerate() {
        let mut v = original[k].clone();
        for later in &original[k + 1..] {
            v = v.add_scaled(later, &small_scalar(rng, field));
        }
        for b in &boundaries.basis {
            v = v.add_scaled(b, &small_scalar(rng, field));
        }
        *r = v;
    }
}

/// Subtracts a coboundary so that the cocycle lies in `I · P`.
fn move_into_ip(
    p: &SemifreeModule,
    n: usize,
    z: SparseVec,
    boundary_cols: &[SparseVec],
) -> Result<SparseVec> {
    let units = p.unit_components(n, &z);
    if units.is_empty() {
        return Ok(z);
    }
    let offsets = p.offsets(n);
    let project = |v: &SparseVec| {
        SparseVec::from_entries(
            p.unit_components(n, v)
                .into_iter()
                .map(|(g, c)| (offsets[g], c))
                .collect(),
        )
    };
    let mut e = Echelon::tracking(p.field());
    for col in boundary_cols {
        e.insert(&project(col));
    }
    let target = project(&z);
    let x = e.solve(&target).ok_or_else(|| {
        Error::RepresentativeNotInIP(format!("cocycle {} in degree {n}", p.render(n, &z)))
    })?;
    let mut out = z;
    for (k, c) in x.iter() {
        out = out.add_scaled(&boundary_cols[k], &-c);
    }
    Ok(out)
}

/// Left resolution over `a`, or right resolution computed over its opposite.
pub fn resolve_dga(
    a: &DgAlgebra,
    window: Window,
    side: Side,
    options: &ResolutionOptions,
) -> Result<Resolution> {
    let base = a.presentation().with_truncation(
        window
            .max_degree
            .max(a.presentation().max_relation_degree()),
    )?;
    let alg = DgAlgebra::new(base);
    let alg = match side {
        Side::Left => alg,
        Side::Right => alg.opposite()?,
    };
    minimal_resolution(alg.arc(), window, side, options)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::samples;

    fn build(p: crate::gradedalg::Presentation, window: Window, seed: Option<u64>) -> Resolution {
        let a = DgAlgebra::new(p);
        resolve_dga(&a, window, Side::Left, &ResolutionOptions { seed }).unwrap()
    }

    #[test]
    fn polynomial_ring_has_two_term_resolution() {
        let r = build(
            samples::polynomial(Field::Rational, 8).unwrap(),
            Window::default(),
            None,
        );
        assert!(r.terminated);
        assert_eq!(r.generators().len(), 2);
        assert_eq!(r.stages, 2);
        let e1 = &r.generators()[1];
        assert_eq!((e1.degree, e1.stage), (0, 1));
        assert_eq!(r.module.render(1, &e1.d), "x·e0");
        assert!(r.check_exactness().unwrap().is_empty());
    }

    #[test]
    fn example_a_semibasis_in_degree_zero() {
        let r = build(
            samples::example_a(Field::Rational, 8).unwrap(),
            Window::default(),
            None,
        );
        assert!(!r.terminated);
        assert_eq!(r.stages, 8);
        assert!(r.generators().iter().all(|g| g.degree == 0));
        assert_eq!(r.minimality_violation(), None);
        assert_eq!(r.stage_order_violation(), None);
        assert_eq!(r.acyclic_below, 1);
        assert!(r.module.check_d_squared().unwrap());
    }

    #[test]
    fn cube_relation_needs_degree_one_generator() {
        let r = build(
            samples::truncated(Field::Rational, 3, 8).unwrap(),
            Window::new(6, 4),
            None,
        );
        let stage2: Vec<usize> = r
            .stage_generators(2)
            .iter()
            .map(|&g| r.generators()[g].degree)
            .collect();
        assert_eq!(stage2, vec![1]);
        assert_eq!(r.minimality_violation(), None);
        assert_eq!(r.stage_order_violation(), None);
    }

    #[test]
    fn counts_do_not_depend_on_seed() {
        for p in [
            samples::example_a(Field::Rational, 7).unwrap(),
            samples::truncated(Field::Rational, 3, 7).unwrap(),
            samples::commutative_plane(Field::Rational, 6).unwrap(),
        ] {
            let w = Window::new(p.truncation_degree, 5);
            let plain = build(p.clone(), w, None);
            for seed in [1, 2, 3] {
                let r = build(p.clone(), w, Some(seed));
                assert_eq!(r.counts(), plain.counts());
                assert_eq!(r.minimality_violation(), None);
                let failures = r.check_exactness().unwrap();
                assert!(failures.iter().all(|&n| n >= r.acyclic_below));
            }
        }
    }

    #[test]
    fn right_side_uses_opposite() {
        let p = samples::example_a(Field::Rational, 6).unwrap();
        let a = DgAlgebra::new(p);
        let r = resolve_dga(
            &a,
            Window::new(6, 4),
            Side::Right,
            &ResolutionOptions::default(),
        )
        .unwrap();
        assert!(r.generators().iter().all(|g| g.degree == 0));
        assert_eq!(r.side, Side::Right);
    }

    #[test]
    fn prime_field_resolution() {
        let r = build(
            samples::truncated(Field::prime(5).unwrap(), 2, 8).unwrap(),
            Window::new(8, 6),
            None,
        );
        assert!(r.generators().iter().all(|g| g.degree == 0));
        assert_eq!(r.stages, 6);
    }

    #[test]
    fn rejects_small_window() {
        let a = DgAlgebra::new(samples::polynomial(Field::Rational, 4).unwrap());
        assert!(matches!(
            minimal_resolution(
                a.arc(),
                Window::new(4, 0),
                Side::Left,
                &ResolutionOptions::default()
            ),
            Err(Error::BoundsTooSmall(_))
        ));
    }
}
