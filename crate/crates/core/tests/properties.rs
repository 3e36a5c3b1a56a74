use dgk_core::barcobar::{check_cobar, check_twisting, dual_coalgebra, TwistingCochain};
use dgk_core::dga::{CochainAlgebra, DgAlgebra};
use dgk_core::exactlin::{kernel_basis, rank, rref_with_threshold, sign, solve};
use dgk_core::ext::find_isomorphism;
use dgk_core::gradedalg::{FdAlgebra, GradedQuotient, Presentation};
use dgk_core::koszul::QuadraticData;
use dgk_core::resolution::{resolve_dga, ResolutionOptions, Side, Window};
use dgk_core::{samples, Field, SparseMatrix, SparseVec, Subspace};
use proptest::prelude::*;

fn field() -> impl Strategy<Value = Field> {
    prop_oneof![
        Just(Field::Rational),
        Just(Field::Prime(2)),
        Just(Field::Prime(5))
    ]
}

fn matrix(f: Field, max: usize) -> impl Strategy<Value = SparseMatrix> {
    (1..=max, 1..=max).prop_flat_map(move |(r, c)| {
        prop::collection::vec(prop::collection::vec(-3i64..=3, c), r).prop_map(move |rows| {
            let refs: Vec<&[i64]> = rows.iter().map(|r| r.as_slice()).collect();
            SparseMatrix::from_i64(f, &refs)
        })
    })
}

fn field_and_matrix(max: usize) -> impl Strategy<Value = SparseMatrix> {
    field().prop_flat_map(move |f| matrix(f, max))
}

fn vector(f: Field, len: usize) -> impl Strategy<Value = SparseVec> {
    prop::collection::vec(-4i64..=4, len).prop_map(move |v| {
        SparseVec::from_entries(
            v.into_iter()
                .enumerate()
                .map(|(i, c)| (i, f.from_i64(c)))
                .collect(),
        )
    })
}

proptest! {
    #[test]
    fn field_axioms(f in field(), a in -20i64..20, b in -20i64..20, c in -20i64..20) {
        let (a, b, c) = (f.from_i64(a), f.from_i64(b), f.from_i64(c));
        prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
        if let Some(inv) = a.inv() {
            prop_assert!((&a * &inv).is_one());
        } else {
            prop_assert!(a.is_zero());
        }
    }

    #[test]
    fn rank_is_transpose_invariant(m in field_and_matrix(7)) {
        prop_assert_eq!(rank(&m), rank(&m.transpose()));
    }

    #[test]
    fn dense_and_sparse_rref_agree(m in field_and_matrix(8)) {
        prop_assert_eq!(rref_with_threshold(&m, 0), rref_with_threshold(&m, 64));
    }

    #[test]
    fn kernel_has_complementary_dimension(m in field_and_matrix(7)) {
        let k = kernel_basis(&m);
        prop_assert_eq!(k.dim() + rank(&m), m.cols);
        for v in &k.basis {
            prop_assert!(m.mul_vec(v).unwrap().is_zero());
        }
    }

    #[test]
    fn solve_recovers_consistent_systems((m, x) in field_and_matrix(6).prop_flat_map(|m| {
        let f = m.field;
        let c = m.cols;
        (Just(m), vector(f, c))
    })) {
        let b = m.mul_vec(&x).unwrap();
        let y = solve(&m, &b).unwrap().expect("b is in the image");
        prop_assert_eq!(m.mul_vec(&y).unwrap(), b);
    }

    #[test]
    fn subspace_dimension_formula((u, w) in field().prop_flat_map(|f| (
        prop::collection::vec(vector(f, 6), 0..5),
        prop::collection::vec(vector(f, 6), 0..5),
        Just(f),
    )).prop_map(|(a, b, f)| (Subspace::span(f, 6, &a), Subspace::span(f, 6, &b)))) {
        let sum = u.sum(&w);
        let meet = u.intersection(&w);
        prop_assert_eq!(sum.dim() + meet.dim(), u.dim() + w.dim());
        prop_assert!(u.contains_subspace(&meet) && w.contains_subspace(&meet));
        prop_assert!(sum.contains_subspace(&u) && sum.contains_subspace(&w));
    }
}

fn quadratic(f: Field) -> impl Strategy<Value = QuadraticData> {
    quadratic_on(f, 3)
}

fn quadratic_on(f: Field, max_gens: usize) -> impl Strategy<Value = QuadraticData> {
    (1usize..=max_gens).prop_flat_map(move |n| {
        prop::collection::vec(vector(f, n * n), 0..=n * n).prop_map(move |rels| {
            let names = ["a", "b", "c"][..n].iter().map(|s| s.to_string()).collect();
            QuadraticData::new(f, names, &rels)
        })
    })
}

/// A quadratic algebra with every cubic word killed: finite dimensional and local.
fn local_algebra(q: &QuadraticData) -> FdAlgebra {
    let base = q.to_presentation(4).unwrap();
    let names = base.names();
    let n = names.len();
    let mut rels: Vec<String> = base.relations.iter().map(|r| r.render(&names)).collect();
    for k in 0..n * n * n {
        rels.push(format!(
            "{}*{}*{}",
            names[k / (n * n)],
            names[(k / n) % n],
            names[k % n]
        ));
    }
    let gens: Vec<(&str, usize)> = names.iter().map(|s| (s.as_str(), 1)).collect();
    let rel_refs: Vec<&str> = rels.iter().map(|s| s.as_str()).collect();
    let p = Presentation::from_strings(q.field, &gens, &rel_refs, &[], 4).unwrap();
    FdAlgebra::from_graded(&GradedQuotient::new(p)).unwrap()
}

/// Rewrites `e` in the basis `e'_i = e_i + Σ_{j>i} c_ij e_j` (for `i >= 1`).
fn change_basis(e: &FdAlgebra, coeffs: &[i64]) -> FdAlgebra {
    let f = e.field;
    let n = e.dim();
    let mut it = coeffs.iter().cycle();
    let new_basis: Vec<SparseVec> = (0..n)
        .map(|i| {
            let mut entries = vec![(i, f.one())];
            if i > 0 {
                for j in i + 1..n {
                    entries.push((j, f.from_i64(*it.next().unwrap())));
                }
            }
            SparseVec::from_entries(entries)
        })
        .collect();
    let p = SparseMatrix::from_columns(f, n, &new_basis);
    let mut table = Vec::with_capacity(n * n);
    for a in &new_basis {
        for b in &new_basis {
            table.push(solve(&p, &e.mul(a, b)).unwrap().unwrap());
        }
    }
    FdAlgebra::from_structure_constants(f, e.labels.clone(), table).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn quadratic_dual_is_involutive(q in field().prop_flat_map(quadratic)) {
        prop_assert_eq!(q.dual().dual(), q);
    }

    #[test]
    fn quotient_multiplication_is_associative(q in field().prop_flat_map(quadratic)) {
        let a = GradedQuotient::new(q.to_presentation(4).unwrap());
        for (p, r, s) in [(1, 1, 1), (1, 1, 2), (1, 2, 1), (2, 1, 1)] {
            for i in 0..a.dim(p).unwrap() {
                for j in 0..a.dim(r).unwrap() {
                    for k in 0..a.dim(s).unwrap() {
                        let ij = a.multiply_basis(p, i, r, j).unwrap();
                        let jk = a.multiply_basis(r, j, s, k).unwrap();
                        let left = a.multiply(p + r, &ij, s, &SparseVec::unit(k, q.field)).unwrap();
                        let right = a.multiply(p, &SparseVec::unit(i, q.field), r + s, &jk).unwrap();
                        prop_assert_eq!(left, right);
                    }
                }
            }
        }
    }

    #[test]
    fn dual_coalgebra_round_trips(q in field().prop_flat_map(quadratic)) {
        let e = local_algebra(&q);
        let c = dual_coalgebra(&e).unwrap();
        prop_assert!(c.coassociativity_failure().is_none());
        prop_assert_eq!(c.dual_algebra().unwrap().table, e.table.clone());
        prop_assert_eq!(c.conilpotency().unwrap() + 1, e.radical_layers().unwrap().len());
    }

    #[test]
    fn cobar_and_twisting_identities(q in field().prop_flat_map(quadratic)) {
        let c = dual_coalgebra(&local_algebra(&q)).unwrap();
        let check = check_cobar(&c, 4).unwrap();
        prop_assert!(check.d_squared_zero);
        prop_assert!(check.matches_leibniz);
        prop_assert!(check_twisting(&c, &TwistingCochain::canonical(&c)).violations.is_empty());
    }

    // Two generators keep the linear assignments within the exhaustive search budget.
    #[test]
    fn iso_search_finds_basis_changes(
        q in field().prop_flat_map(|f| quadratic_on(f, 2)),
        coeffs in prop::collection::vec(-2i64..=2, 1..12),
        seed in 0u64..1000,
    ) {
        let e = local_algebra(&q);
        let moved = change_basis(&e, &coeffs);
        let search = find_isomorphism(&e, &moved, false, 32, seed);
        prop_assert!(search.found, "{:?}", search.reason);
    }
}

fn leibniz_on(a: &DgAlgebra, p: usize, u: &SparseVec, q: usize, v: &SparseVec) -> bool {
    let f = a.field();
    let lhs = a.diff(p + q, &a.mul(p, u, q, v).unwrap()).unwrap();
    let du = a.diff(p, u).unwrap();
    let dv = a.diff(q, v).unwrap();
    let rhs = a
        .mul(p + 1, &du, q, v)
        .unwrap()
        .add(&a.mul(p, u, q + 1, &dv).unwrap().scale(&sign(f, p as i64)));
    lhs == rhs
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn leibniz_on_random_elements(p in 0usize..4, q in 0usize..4, cu in prop::collection::vec(-3i64..=3, 16), cv in prop::collection::vec(-3i64..=3, 16)) {
        let f = Field::Rational;
        let t4 = dual_coalgebra(&FdAlgebra::truncated_polynomial(f, 4)).unwrap();
        for pres in [samples::example_a(f, 8).unwrap(), dgk_core::barcobar::cobar(&t4, 8).unwrap()] {
            let a = DgAlgebra::new(pres);
            let pick = |n: usize, c: &[i64]| SparseVec::from_entries(
                (0..a.dim(n).unwrap()).map(|i| (i, f.from_i64(c[i % c.len()]))).collect(),
            );
            let (u, v) = (pick(p, &cu), pick(q, &cv));
            prop_assert!(leibniz_on(&a, p, &u, q, &v));
            if p + 2 <= a.max_degree() {
                prop_assert!(a.diff(p + 1, &a.diff(p, &u).unwrap()).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn resolution_counts_do_not_depend_on_seed(seed in any::<u64>(), n in 2usize..=4) {
        let f = Field::Rational;
        for p in [samples::example_a(f, 7).unwrap(), samples::truncated(f, n, 7).unwrap()] {
            let a = DgAlgebra::new(p);
            let w = Window::new(7, 4);
            let plain = resolve_dga(&a, w, Side::Left, &ResolutionOptions::default()).unwrap();
            let seeded = resolve_dga(&a, w, Side::Left, &ResolutionOptions { seed: Some(seed) }).unwrap();
            prop_assert_eq!(plain.counts(), seeded.counts());
            prop_assert!(seeded.minimality_violation().is_none());
        }
    }
}

#[test]
fn presentation_json_round_trips() {
    let p = samples::example_a(Field::Rational, 6).unwrap();
    let back = Presentation::parse(&p.to_json()).unwrap();
    assert_eq!(back, p);
}
