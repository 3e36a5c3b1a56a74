//! The ten acceptance criteria, one PASS/FAIL line each. Exact arithmetic throughout, so
//! every numeric comparison is equality; the only tolerances are the runtime limits.

use std::time::{Duration, Instant};

use dgk_core::barcobar::{
    adjunction_check, bar, check_bar, check_bar_resolution, check_cobar, check_twisting, cobar,
    dual_coalgebra, koszul_duality_roundtrip, local_dual_pipeline, phi_check, TwistingCochain,
};
use dgk_core::dga::{cohomology, CochainAlgebra, DgAlgebra};
use dgk_core::exactlin::sign;
use dgk_core::ext::{
    ext_algebra, find_isomorphism, gr_of_filtration, radical_filtration, tor_dims,
};
use dgk_core::gradedalg::{FdAlgebra, GradedQuotient, Presentation};
use dgk_core::koszul::{
    as_gorenstein, is_frobenius, is_koszul_dg, is_koszul_graded, is_strongly_quasi_koszul,
    quadratic_dual, rhom_dims, QuadraticData,
};
use dgk_core::resolution::{
    check_filtration_preservation, lift_scalar, resolve_dga, standard_filtration,
    ResolutionOptions, Side, Window,
};
use dgk_core::{samples, Field, SparseVec};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const Q: Field = Field::Rational;

type Check = Result<(), String>;
/// Name, check and time limit in seconds.
type Criterion = (&'static str, fn() -> Check, u64);

fn ensure(cond: bool, what: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(what())
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn opts() -> ResolutionOptions {
    ResolutionOptions::default()
}

fn criterion_1() -> Check {
    let a = DgAlgebra::validated(samples::example_a(Q, 6).map_err(err)?).map_err(err)?;
    let h = cohomology(&a, 5).map_err(err)?;
    ensure(h.dims == vec![1, 1, 0, 0, 0, 0], || {
        format!("dims {:?}", h.dims)
    })?;
    let label = h.label(1, 0);
    ensure(label == "[y]", || format!("H^1 spanned by {label}"))
}

fn criterion_2() -> Check {
    let a = DgAlgebra::validated(samples::example_a(Q, 8).map_err(err)?).map_err(err)?;
    let v = is_koszul_dg(&a, Window::new(8, 8), &opts()).map_err(err)?;
    ensure(v.is_yes(), || format!("verdict {:?}", v.outcome))?;
    let routes = &v.details.as_ref().ok_or("no details")?["routes"];
    for route in ["semibasis", "ext", "tor"] {
        ensure(routes[route] == true, || format!("route {route} disagrees"))?;
    }
    let r = resolve_dga(&a, Window::new(8, 8), Side::Left, &opts()).map_err(err)?;
    ensure(tor_dims(&r).concentrated_in_degree_zero(), || {
        "Tor off degree 0".into()
    })
}

fn criterion_3() -> Check {
    let w = Window::new(6, 5);
    let cases = [
        (
            "k<x>/(x^2)",
            samples::truncated(Q, 2, 6).map_err(err)?,
            true,
        ),
        (
            "k[x,y]",
            samples::commutative_plane(Q, 6).map_err(err)?,
            true,
        ),
        (
            "k<x>/(x^3)",
            samples::truncated(Q, 3, 6).map_err(err)?,
            false,
        ),
    ];
    for (name, p, expected) in cases {
        let graded = is_koszul_graded(&p, w).map_err(err)?;
        let dg =
            is_koszul_dg(&DgAlgebra::new(p.without_differential()), w, &opts()).map_err(err)?;
        ensure(
            graded.is_yes() == expected && graded.is_no() == !expected,
            || format!("{name}: graded verdict {:?}", graded.outcome),
        )?;
        ensure(graded.outcome == dg.outcome, || {
            format!("{name}: graded {:?} vs dg {:?}", graded.outcome, dg.outcome)
        })?;
        if !expected {
            let wit = graded
                .witness
                .as_ref()
                .ok_or_else(|| format!("{name}: no witness"))?;
            let (hom, int) = (
                wit["homological_degree"].as_u64(),
                wit["internal_degree"].as_u64(),
            );
            ensure(matches!((hom, int), (Some(h), Some(i)) if i != h), || {
                format!("{name}: witness {wit} is linear")
            })?;
        }
    }
    Ok(())
}

fn random_quadratic(rng: &mut ChaCha8Rng) -> QuadraticData {
    let n = rng.gen_range(1..=3usize);
    let names = ["a", "b", "c"][..n].iter().map(|s| s.to_string()).collect();
    let count = rng.gen_range(0..=n * n);
    let rels: Vec<SparseVec> = (0..count)
        .map(|_| {
            let mut entries = Vec::new();
            for k in 0..n * n {
                let c = rng.gen_range(-3..=3i64);
                if c != 0 && rng.gen_bool(0.4) {
                    entries.push((k, Q.from_i64(c)));
                }
            }
            SparseVec::from_entries(entries)
        })
        .collect();
    QuadraticData::new(Q, names, &rels)
}

fn criterion_4() -> Check {
    let plane = samples::commutative_plane(Q, 4).map_err(err)?;
    let dual = quadratic_dual(&plane).map_err(err)?;
    let hilbert = GradedQuotient::new(dual.clone())
        .hilbert_function(3)
        .map_err(err)?;
    ensure(hilbert == vec![1, 2, 1, 0], || {
        format!("Hilbert function {hilbert:?}")
    })?;
    let exterior = Presentation::from_strings(
        Q,
        &[("x_star", 1), ("y_star", 1)],
        &["x_star^2", "y_star^2", "x_star*y_star + y_star*x_star"],
        &[],
        4,
    )
    .map_err(err)?;
    ensure(
        QuadraticData::from_presentation(&dual).map_err(err)?
            == QuadraticData::from_presentation(&exterior).map_err(err)?,
        || "dual relations differ from the exterior algebra".into(),
    )?;
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for trial in 0..10 {
        let q = random_quadratic(&mut rng);
        let p = q.to_presentation(3).map_err(err)?;
        let back = quadratic_dual(&quadratic_dual(&p).map_err(err)?).map_err(err)?;
        ensure(
            QuadraticData::from_presentation(&back).map_err(err)? == q,
            || format!("trial {trial}: (R^!)^! differs for dim V = {}", q.dim_v()),
        )?;
    }
    Ok(())
}

fn criterion_5() -> Check {
    let a = DgAlgebra::validated(samples::polynomial(Q, 8).map_err(err)?).map_err(err)?;
    let r = resolve_dga(&a, Window::new(8, 8), Side::Left, &opts()).map_err(err)?;
    let e = ext_algebra(&r).map_err(err)?;
    let alg = e.algebra().map_err(err)?;
    let iso = find_isomorphism(&alg, &FdAlgebra::truncated_polynomial(Q, 2), false, 32, 5);
    ensure(iso.found, || {
        format!("E not isomorphic to k[e]/e^2: {:?}", iso.reason)
    })?;
    let gr = gr_of_filtration(&e).map_err(err)?;
    let h = cohomology(&a, 7).map_err(err)?;
    let shriek = QuadraticData::from_cohomology(&h)
        .map_err(err)?
        .dual()
        .hilbert_function(4)
        .map_err(err)?;
    let nonzero: Vec<usize> = shriek.into_iter().take_while(|&d| d > 0).collect();
    ensure(
        gr.layer_dims == vec![1, 1] && gr.layer_dims == nonzero,
        || format!("gr_F {:?} vs H(A)^! {:?}", gr.layer_dims, nonzero),
    )?;
    let rad = radical_filtration(&e).map_err(err)?;
    ensure(rad.layer_dims == gr.layer_dims, || {
        "radical layers differ".into()
    })?;
    let powers = alg.radical_powers().map_err(err)?;
    for (i, layer) in powers.iter().enumerate() {
        ensure(layer == &e.filtration_layer(i), || {
            format!("J^{i} != F_{i}")
        })?;
    }
    Ok(())
}

fn criterion_6() -> Check {
    let a = DgAlgebra::validated(samples::polynomial(Q, 7).map_err(err)?).map_err(err)?;
    let rt = koszul_duality_roundtrip(&a, Window::new(7, 7), &opts(), 6).map_err(err)?;
    let ones = vec![1; 7];
    ensure(rt.ext_e_dims == ones, || {
        format!("Ext_E dims {:?}", rt.ext_e_dims)
    })?;
    ensure(rt.cobar_cohomology_dims == ones, || {
        format!("H(Ω(E^#)) dims {:?}", rt.cobar_cohomology_dims)
    })?;
    ensure(rt.cohomology_dims == ones, || {
        format!("H(A) dims {:?}", rt.cohomology_dims)
    })?;
    ensure(rt.passed, || "round trip report did not pass".into())
}

fn criterion_7() -> Check {
    let r = FdAlgebra::truncated_polynomial(Q, 4);
    let rep = local_dual_pipeline(&r, Window::new(6, 6), &opts(), 7).map_err(err)?;
    ensure(rep.koszul_dg.is_yes(), || {
        format!("Ω(R^*) Koszul: {:?}", rep.koszul_dg.outcome)
    })?;
    ensure(rep.ext_dim == Some(4) && rep.ext_iso_to_r.found, || {
        format!(
            "Ext dim {:?}, iso {:?}",
            rep.ext_dim, rep.ext_iso_to_r.reason
        )
    })?;
    let sqk = is_strongly_quasi_koszul(&r, 6).map_err(err)?;
    ensure(sqk.is_no() && sqk.witness.is_some(), || {
        "strongly quasi-Koszul is not a witnessed no".into()
    })?;
    ensure(!rep.cohomology_koszul.koszul, || {
        "H(Ω(R^*)) reported Koszul".into()
    })?;
    ensure(rep.corollary_consistent, || "corollary inconsistent".into())
}

fn criterion_8() -> Check {
    let r = FdAlgebra::truncated_polynomial(Q, 2);
    let rep = local_dual_pipeline(&r, Window::new(6, 6), &opts(), 8).map_err(err)?;
    ensure(rep.strongly_quasi_koszul.is_yes(), || {
        "k[e]/e^2 not strongly quasi-Koszul".into()
    })?;
    ensure(rep.cohomology_koszul.koszul, || {
        "H(Ω(R^*)) not Koszul".into()
    })?;
    ensure(rep.cohomology_dims.iter().all(|&d| d == 1), || {
        format!("dims {:?}", rep.cohomology_dims)
    })?;
    ensure(rep.ext_iso_to_r.found, || "Ext not isomorphic to R".into())?;
    ensure(rep.corollary_consistent, || "corollary inconsistent".into())
}

fn criterion_9() -> Check {
    let a = DgAlgebra::validated(samples::polynomial(Q, 8).map_err(err)?).map_err(err)?;
    let w = Window::new(8, 8);
    let v = as_gorenstein(&a, w, &opts()).map_err(err)?;
    ensure(v.is_yes(), || format!("AS-Gorenstein {:?}", v.outcome))?;
    let right = resolve_dga(&a, w, Side::Right, &opts()).map_err(err)?;
    let total: usize = rhom_dims(&right).map_err(err)?.values().sum();
    ensure(total == 1, || format!("RHom dim {total}"))?;
    let top = right.stage_generators(right.stages - 1).len();
    ensure(top == 1, || format!("top stage rank {top}"))?;
    let e = ext_algebra(&resolve_dga(&a, w, Side::Left, &opts()).map_err(err)?).map_err(err)?;
    let frob = is_frobenius(&e.algebra().map_err(err)?, 9).map_err(err)?;
    ensure(frob.is_yes(), || "E not Frobenius".into())?;
    let neg = is_frobenius(&samples::square_zero_plane(Q).map_err(err)?, 9).map_err(err)?;
    let socle = neg.witness.as_ref().and_then(|w| w["dim"].as_u64());
    ensure(neg.is_no() && socle == Some(2), || {
        format!("negative control: {:?} socle {socle:?}", neg.outcome)
    })
}

/// `d(ab) = d(a) b + (-1)^{|a|} a d(b)` and `d(d(a)) = 0` on basis elements through degree `top`.
fn leibniz(a: &dyn CochainAlgebra, top: usize) -> Check {
    let f = a.field();
    for p in 0..=top {
        for i in 0..a.dim(p).map_err(err)? {
            let u = SparseVec::unit(i, f);
            let du = a.diff(p, &u).map_err(err)?;
            if p + 2 <= a.max_degree() {
                ensure(a.diff(p + 1, &du).map_err(err)?.is_zero(), || {
                    format!("d² ≠ 0 on {}", a.label(p, i))
                })?;
            }
            for q in 0..=top - p {
                if p + q + 1 > a.max_degree() {
                    continue;
                }
                for j in 0..a.dim(q).map_err(err)? {
                    let v = SparseVec::unit(j, f);
                    let lhs = a
                        .diff(p + q, &a.mul(p, &u, q, &v).map_err(err)?)
                        .map_err(err)?;
                    let dv = a.diff(q, &v).map_err(err)?;
                    let rhs = a.mul(p + 1, &du, q, &v).map_err(err)?.add(
                        &a.mul(p, &u, q + 1, &dv)
                            .map_err(err)?
                            .scale(&sign(f, p as i64)),
                    );
                    ensure(lhs == rhs, || {
                        format!("Leibniz fails on {} * {}", a.label(p, i), a.label(q, j))
                    })?;
                }
            }
        }
    }
    Ok(())
}

fn criterion_10() -> Check {
    let t4 = FdAlgebra::truncated_polynomial(Q, 4);
    let dual_numbers = FdAlgebra::truncated_polynomial(Q, 2);
    let plane = samples::square_zero_plane(Q).map_err(err)?;
    let coalgebras = [
        dual_coalgebra(&dual_numbers).map_err(err)?,
        dual_coalgebra(&t4).map_err(err)?,
        dual_coalgebra(&plane).map_err(err)?,
    ];
    let mut algebras = vec![
        samples::example_a(Q, 7),
        samples::ground_field(Q, 7),
        samples::polynomial(Q, 7),
        samples::truncated(Q, 2, 7),
        samples::truncated(Q, 3, 7),
        samples::commutative_plane(Q, 7),
        samples::free_two(Q, 7),
    ]
    .into_iter()
    .collect::<Result<Vec<_>, _>>()
    .map_err(err)?;
    for c in &coalgebras {
        algebras.push(cobar(c, 7).map_err(err)?);
    }
    for p in &algebras {
        let a = DgAlgebra::validated(p.clone()).map_err(err)?;
        leibniz(&a, 6)?;
    }
    for p in [
        samples::example_a(Q, 7).map_err(err)?,
        samples::polynomial(Q, 7).map_err(err)?,
    ] {
        let b = bar(DgAlgebra::new(p.clone()).arc(), 2, 4).map_err(err)?;
        let check = check_bar(&b).map_err(err)?;
        ensure(check.passed(), || format!("bar structure: {check:?}"))?;
        let phi =
            phi_check(&bar(DgAlgebra::new(p.clone()).arc(), 2, 3).map_err(err)?).map_err(err)?;
        ensure(
            phi.passed() && phi.cochain_checks > 0 && phi.multiplicative_checks > 0,
            || {
                format!(
                    "phi: {} cochain, {} multiplicative violations",
                    phi.cochain_violations.len(),
                    phi.multiplicative_violations.len()
                )
            },
        )?;
        let qi = check_bar_resolution(DgAlgebra::new(p).arc(), 5, 4).map_err(err)?;
        ensure(qi.quasi_isomorphism, || {
            "A⊗B(A) → k not a quasi-isomorphism".into()
        })?;
    }
    for c in &coalgebras {
        let cc = check_cobar(c, 4).map_err(err)?;
        ensure(cc.d_squared_zero && cc.matches_leibniz, || {
            format!("cobar: {cc:?}")
        })?;
        let tw = check_twisting(c, &TwistingCochain::canonical(c));
        ensure(tw.violations.is_empty(), || {
            format!("twisting: {:?}", tw.violations)
        })?;
    }
    for c in &coalgebras[..2] {
        let adj = adjunction_check(c, 4).map_err(err)?;
        ensure(
            adj.quasi_isomorphism && adj.chain_map && adj.d_squared_zero,
            || format!("adjunction: {adj:?}"),
        )?;
    }
    let w = Window::new(7, 4);
    for p in [
        samples::example_a(Q, 7).map_err(err)?,
        samples::truncated(Q, 2, 7).map_err(err)?,
        samples::polynomial(Q, 7).map_err(err)?,
    ] {
        let a = DgAlgebra::new(p);
        let mut rng = ChaCha8Rng::seed_from_u64(10);
        for trial in 0..20u64 {
            let src = resolve_dga(
                &a,
                w,
                Side::Left,
                &ResolutionOptions {
                    seed: Some(2 * trial + 1),
                },
            )
            .map_err(err)?;
            let tgt = resolve_dga(
                &a,
                w,
                Side::Left,
                &ResolutionOptions {
                    seed: Some(2 * trial + 2),
                },
            )
            .map_err(err)?;
            let lambda = Q.from_i64(rng.gen_range(1..=5));
            let m = lift_scalar(&src, &tgt, &lambda, Some(&mut rng)).map_err(err)?;
            ensure(m.is_dg(&src.module, &tgt.module).map_err(err)?, || {
                format!("lift {trial} not a DG map")
            })?;
            let sf = standard_filtration(&src.module).map_err(err)?;
            let tf = standard_filtration(&tgt.module).map_err(err)?;
            ensure(
                check_filtration_preservation(&m, &src.module, &tgt.module, &sf, &tf)
                    .map_err(err)?,
                || format!("lift {trial} does not preserve the filtration"),
            )?;
        }
    }
    Ok(())
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("1 Example A cohomology", criterion_1, 1),
        ("2 Example A Koszul DG", criterion_2, 10),
        ("3 graded vs DG Koszul", criterion_3, 10),
        ("4 quadratic duals", criterion_4, 10),
        ("5 Ext of k[x]", criterion_5, 5),
        ("6 duality round trip on k[x]", criterion_6, 30),
        ("7 local pipeline on k[t]/t^4", criterion_7, 120),
        ("8 corollary on k[e]/e^2", criterion_8, 60),
        ("9 AS-Gorenstein and Frobenius", criterion_9, 30),
        ("10 sign and structure suite", criterion_10, 300),
    ];
    let mut failures = 0;
    for (name, run, limit) in criteria {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let timely = elapsed <= Duration::from_secs(limit);
        match (&outcome, timely) {
            (Ok(()), true) => println!(
                "PASS criterion {name} ({:.2}s, limit {limit}s)",
                elapsed.as_secs_f64()
            ),
            (Ok(()), false) => {
                failures += 1;
                println!(
                    "FAIL criterion {name}: {:.2}s exceeds {limit}s",
                    elapsed.as_secs_f64()
                );
            }
            (Err(why), _) => {
                failures += 1;
                println!(
                    "FAIL criterion {name}: {why} ({:.2}s)",
                    elapsed.as_secs_f64()
                );
            }
        }
    }
    if failures > 0 {
        println!("{failures} acceptance criteria failed");
        std::process::exit(1);
    }
}
