//! Duality round trips: `A ↦ E ↦ Ω(E^#)` and `R ↦ Ω(R^*) ↦ Ext`.

use serde::Serialize;

use super::coalgebra::dual_coalgebra;
use super::cobar::cobar;
use crate::dga::{cohomology, CochainAlgebra, CohomologyAlgebra, DgAlgebra};
use crate::error::{Error, Result};
use crate::exactlin::SparseVec;
use crate::ext::{ext_algebra, find_isomorphism, MIN_ISO_TRIALS};
use crate::gradedalg::FdAlgebra;
use crate::koszul::{
    generated_in_degree_one, is_koszul_graded, is_quasi_koszul, is_strongly_quasi_koszul,
    koszul_dg_from_resolution, local_resolution, QuadraticData, Verdict,
};
use crate::resolution::{resolve_dga, ResolutionOptions, Side, Window};

/// `H^{<=N}` as a graded algebra, products landing above `N` set to zero.
pub fn truncated_cohomology(h: &CohomologyAlgebra) -> Result<FdAlgebra> {
    let top = h.max_degree();
    let mut blocks = Vec::new();
    for n in 0..=top {
        for i in 0..h.dim(n)? {
            blocks.push((n, i));
        }
    }
    let offsets: Vec<usize> = (0..=top)
        .scan(0, |acc, n| {
            let o = *acc;
            *acc += h.dims[n];
            Some(o)
        })
        .collect();
    let mut table = Vec::with_capacity(blocks.len() * blocks.len());
    for &(p, i) in &blocks {
        for &(q, j) in &blocks {
            if p + q > top {
                table.push(SparseVec::new());
            } else {
                table.push(
                    h.multiply_basis(p, i, q, j)?
                        .map_indices(|k| offsets[p + q] + k),
                );
            }
        }
    }
    let labels = blocks.iter().map(|&(n, i)| h.label(n, i)).collect();
    let mut alg = FdAlgebra::from_structure_constants(h.field(), labels, table)?;
    alg.grading = Some(blocks.iter().map(|&(n, _)| n).collect());
    Ok(alg)
}

#[derive(Clone, Debug, Serialize)]
pub struct IsoSummary {
    pub found: bool,
    pub trials: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
}

fn iso(src: &FdAlgebra, tgt: &FdAlgebra, graded: bool, seed: u64) -> IsoSummary {
    let s = find_isomorphism(src, tgt, graded, MIN_ISO_TRIALS, seed);
    IsoSummary {
        found: s.found,
        trials: s.trials,
        reason: s.reason,
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ExtOverCobar {
    pub dim: usize,
    pub concentrated_in_degree_zero: bool,
    pub iso_to_e: IsoSummary,
}

#[derive(Clone, Debug, Serialize)]
pub struct RoundtripReport {
    pub window: Window,
    pub koszul: Verdict,
    pub e_dim: usize,
    pub max_degree: usize,
    /// `dim Ext^n_E(k,k)` from the minimal free resolution of `k` over `E`.
    pub ext_e_dims: Vec<usize>,
    /// `dim H^n(Ω(E^#))`: the cobar complex computing `Ext_E(k,k)`.
    pub cobar_cohomology_dims: Vec<usize>,
    pub cohomology_dims: Vec<usize>,
    pub dims_match: bool,
    /// Graded algebra isomorphism `H(Ω(E^#)) → H(A)` through `max_degree`.
    pub cohomology_iso: IsoSummary,
    /// `Ext_{Ω(E^#)}(k,k)`, which should again be `E`.
    pub ext_over_cobar: Option<ExtOverCobar>,
    pub passed: bool,
}

/// `A ↦ E = Ext_A(k,k) ↦ C = E^# ↦ B = Ω(C)`, comparing `Ext_E(k,k)` (both as the ranks of
/// the minimal resolution over `E` and as `H(B)`) with `H(A)` in degrees `< D`.
pub fn koszul_duality_roundtrip(
    a: &DgAlgebra,
    window: Window,
    options: &ResolutionOptions,
    seed: u64,
) -> Result<RoundtripReport> {
    let r = resolve_dga(a, window, Side::Left, options)?;
    if !r.terminated {
        return Err(Error::NotCompact(format!(
            "resolution did not terminate within {} stages",
            window.max_stage
        )));
    }
    let koszul = koszul_dg_from_resolution(&r)?;
    if !koszul.is_yes() {
        return Err(Error::Precondition(
            "algebra is not Koszul within the window".into(),
        ));
    }
    let e = ext_algebra(&r)?.algebra()?;
    let c = dual_coalgebra(&e)?;
    let top = window.max_degree.min(a.max_degree()).saturating_sub(1);
    if top < 1 {
        return Err(Error::BoundsTooSmall(
            "round trip needs a degree window of at least 2".into(),
        ));
    }
    let b = DgAlgebra::validated(cobar(&c, top + 1)?)?;
    let h_b = cohomology(&b, top)?;
    let h_a = cohomology(a, top)?;
    let mut ext_e_dims = local_resolution(&e, top)?.ranks;
    ext_e_dims.resize(top + 1, 0);
    let dims_match = ext_e_dims == h_b.dims && h_b.dims == h_a.dims;
    let cohomology_iso = iso(
        &truncated_cohomology(&h_b)?,
        &truncated_cohomology(&h_a)?,
        true,
        seed,
    );
    let rb = resolve_dga(
        &b,
        Window::new(top + 1, window.max_stage),
        Side::Left,
        options,
    )?;
    let ext_over_cobar = if rb.terminated {
        let eb = ext_algebra(&rb)?;
        let alg = eb.algebra()?;
        Some(ExtOverCobar {
            dim: alg.dim(),
            concentrated_in_degree_zero: eb.concentrated_in_degree_zero(),
            iso_to_e: iso(&alg, &e, false, seed),
        })
    } else {
        None
    };
    let passed = dims_match
        && cohomology_iso.found
        && ext_over_cobar
            .as_ref()
            .is_some_and(|x| x.concentrated_in_degree_zero && x.iso_to_e.found);
    Ok(RoundtripReport {
        window,
        koszul,
        e_dim: e.dim(),
        max_degree: top,
        ext_e_dims,
        cobar_cohomology_dims: h_b.dims.clone(),
        cohomology_dims: h_a.dims.clone(),
        dims_match,
        cohomology_iso,
        ext_over_cobar,
        passed,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct HKoszul {
    pub generated_in_degree_one: Verdict,
    /// Hilbert function of `T(H^1)/(ker(H^1⊗H^1 → H^2))` against `dim H^n`.
    pub quadratic_hilbert: Vec<usize>,
    pub quadratic: bool,
    pub koszul_graded: Option<Verdict>,
    pub koszul: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct LocalPipelineReport {
    pub window: Window,
    pub r_dim: usize,
    pub koszul_dg: Verdict,
    pub ext_dim: Option<usize>,
    pub ext_iso_to_r: IsoSummary,
    pub cohomology_dims: Vec<usize>,
    pub cohomology_koszul: HKoszul,
    pub quasi_koszul: Verdict,
    pub strongly_quasi_koszul: Verdict,
    /// Strongly quasi-Koszul `R` exactly when `H(Ω(R^*))` is Koszul, within the window.
    pub corollary_consistent: bool,
}

/// Builds `Ω(R^*)`, tests it for Koszulness, compares `Ext_{Ω(R^*)}(k,k)` with `R`, and
/// relates strong quasi-Koszulness of `R` to Koszulness of `H(Ω(R^*))`.
pub fn local_dual_pipeline(
    r: &FdAlgebra,
    window: Window,
    options: &ResolutionOptions,
    seed: u64,
) -> Result<LocalPipelineReport> {
    r.radical_powers()?;
    if window.max_degree < 3 {
        return Err(Error::BoundsTooSmall("local pipeline needs D >= 3".into()));
    }
    let c = dual_coalgebra(r)?;
    let b = DgAlgebra::validated(cobar(&c, window.max_degree)?)?;
    let res = resolve_dga(&b, window, Side::Left, options)?;
    let koszul_dg = koszul_dg_from_resolution(&res)?;
    let ext = ext_algebra(&res)?;
    let (ext_dim, ext_iso_to_r) = match ext.algebra() {
        Ok(e) => (Some(e.dim()), iso(&e, r, false, seed)),
        Err(err) => (
            None,
            IsoSummary {
                found: false,
                trials: 0,
                reason: Some(err.to_string()),
            },
        ),
    };
    let top = window.max_degree - 1;
    let h = cohomology(&b, top)?;
    let gen1 = generated_in_degree_one(&h)?;
    let q = QuadraticData::from_cohomology(&h)?;
    let mut quadratic_hilbert = q.hilbert_function(top)?;
    quadratic_hilbert.truncate(top + 1);
    let quadratic = quadratic_hilbert == h.dims;
    let koszul_graded = if gen1.is_yes() && quadratic {
        Some(is_koszul_graded(
            &q.to_presentation(top)?,
            Window::new(top, window.max_stage),
        )?)
    } else {
        None
    };
    let h_koszul = gen1.is_yes() && quadratic && koszul_graded.as_ref().is_some_and(|v| v.is_yes());
    let quasi_koszul = is_quasi_koszul(r, window.max_stage)?;
    let strongly_quasi_koszul = is_strongly_quasi_koszul(r, window.max_stage)?;
    let corollary_consistent = strongly_quasi_koszul.is_yes() == h_koszul;
    Ok(LocalPipelineReport {
        window,
        r_dim: r.dim(),
        koszul_dg,
        ext_dim,
        ext_iso_to_r,
        cohomology_dims: h.dims.clone(),
        cohomology_koszul: HKoszul {
            generated_in_degree_one: gen1,
            quadratic_hilbert,
            quadratic,
            koszul_graded,
            koszul: h_koszul,
        },
        quasi_koszul,
        strongly_quasi_koszul,
        corollary_consistent,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::Field;
    use crate::samples;

    #[test]
    fn roundtrip_on_polynomial_ring() {
        let a = DgAlgebra::new(samples::polynomial(Field::Rational, 8).unwrap());
        let report =
            koszul_duality_roundtrip(&a, Window::new(8, 8), &ResolutionOptions::default(), 1)
                .unwrap();
        assert_eq!(report.e_dim, 2);
        assert_eq!(report.ext_e_dims, vec![1; 8]);
        assert_eq!(report.cobar_cohomology_dims, vec![1; 8]);
        assert!(report.passed, "{report:?}");
    }

    #[test]
    fn roundtrip_on_ground_field() {
        let a = DgAlgebra::new(samples::ground_field(Field::Rational, 4).unwrap());
        let report =
            koszul_duality_roundtrip(&a, Window::new(4, 4), &ResolutionOptions::default(), 1)
                .unwrap();
        assert_eq!(report.e_dim, 1);
        assert_eq!(report.cohomology_dims, vec![1, 0, 0, 0]);
        assert!(report.passed, "{report:?}");
    }

    #[test]
    fn roundtrip_requires_compact_koszul() {
        let opts = ResolutionOptions::default();
        let x3 = DgAlgebra::new(samples::truncated(Field::Rational, 3, 6).unwrap());
        assert!(koszul_duality_roundtrip(&x3, Window::new(6, 6), &opts, 1).is_err());
        let a = DgAlgebra::new(samples::example_a(Field::Rational, 6).unwrap());
        assert!(matches!(
            koszul_duality_roundtrip(&a, Window::new(6, 4), &opts, 1),
            Err(Error::NotCompact(_))
        ));
    }

    #[test]
    fn local_pipeline_on_dual_numbers() {
        let r = FdAlgebra::truncated_polynomial(Field::Rational, 2);
        let report =
            local_dual_pipeline(&r, Window::new(6, 6), &ResolutionOptions::default(), 3).unwrap();
        assert!(report.koszul_dg.is_yes());
        assert_eq!(report.ext_dim, Some(2));
        assert!(report.ext_iso_to_r.found);
        assert!(report.cohomology_koszul.koszul);
        assert!(report.strongly_quasi_koszul.is_yes());
        assert!(report.corollary_consistent);
    }

    #[test]
    fn local_pipeline_rejects_non_local() {
        let f = Field::Rational;
        // k × k: e_1 idempotent
        let mut table = vec![SparseVec::new(); 4];
        table[0] = SparseVec::unit(0, f);
        table[1] = SparseVec::unit(1, f);
        table[2] = SparseVec::unit(1, f);
        table[3] = SparseVec::unit(1, f);
        let r =
            FdAlgebra::from_structure_constants(f, vec!["1".into(), "e".into()], table).unwrap();
        assert!(matches!(
            local_dual_pipeline(&r, Window::new(4, 4), &ResolutionOptions::default(), 0),
            Err(Error::NotLocal(_))
        ));
    }
}
