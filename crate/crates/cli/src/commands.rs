//! One function per command; each returns the `result` member of the report.

use clap::ValueEnum;
use dgk_core::barcobar::{
    adjunction_check, bar, check_bar, check_bar_resolution, check_cobar, check_twisting, cobar,
    cobar_complex, dual_coalgebra, koszul_duality_roundtrip, local_dual_pipeline, phi_check,
    twisted_left, twisted_report, twisted_right, TwistingCochain,
};
use dgk_core::dga::{cohomology, DgAlgebra};
use dgk_core::ext::{ext_algebra, ext_dims, gr_of_filtration, radical_filtration, tor_dims};
use dgk_core::gradedalg::Presentation;
use dgk_core::koszul::{
    as_gorenstein, is_frobenius, is_koszul_dg, is_koszul_graded, is_quasi_koszul,
    is_strongly_quasi_koszul, quadratic_dual, QuadraticData,
};
use dgk_core::resolution::{resolve_dga, ResolutionOptions, Side, Window};
use dgk_core::Error;
use serde::Serialize;
use serde_json::{json, Value};

use crate::input::Input;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    Validate,
    Cohomology,
    Resolve,
    Ext,
    Tor,
    KoszulDg,
    KoszulGraded,
    QuadraticDual,
    QuasiKoszul,
    StronglyQuasiKoszul,
    AsGorenstein,
    Frobenius,
    Bar,
    Cobar,
    DualityRoundtrip,
    LocalPipeline,
    AdjunctionCheck,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Validate => "validate",
            Command::Cohomology => "cohomology",
            Command::Resolve => "resolve",
            Command::Ext => "ext",
            Command::Tor => "tor",
            Command::KoszulDg => "koszul-dg",
            Command::KoszulGraded => "koszul-graded",
            Command::QuadraticDual => "quadratic-dual",
            Command::QuasiKoszul => "quasi-koszul",
            Command::StronglyQuasiKoszul => "strongly-quasi-koszul",
            Command::AsGorenstein => "as-gorenstein",
            Command::Frobenius => "frobenius",
            Command::Bar => "bar",
            Command::Cobar => "cobar",
            Command::DualityRoundtrip => "duality-roundtrip",
            Command::LocalPipeline => "local-pipeline",
            Command::AdjunctionCheck => "adjunction-check",
        }
    }

    /// Commands whose input is a finite-dimensional algebra.
    pub fn takes_algebra(self) -> bool {
        matches!(
            self,
            Command::QuasiKoszul
                | Command::StronglyQuasiKoszul
                | Command::Frobenius
                | Command::Cobar
                | Command::LocalPipeline
                | Command::AdjunctionCheck
        )
    }

    pub fn uses_bar_length(self) -> bool {
        matches!(self, Command::Bar | Command::Cobar)
    }
}

/// Effective bounds after defaults are applied.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Params {
    pub window: Window,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bar_length: Option<usize>,
    pub seed: Option<u64>,
}

pub const DEFAULT_ALGEBRA_DEGREE: usize = 6;
pub const DEFAULT_BAR_LETTER_DEGREE: usize = 2;
pub const DEFAULT_BAR_LENGTH: usize = 3;
pub const DEFAULT_COBAR_LENGTH: usize = 4;

/// `D` defaults to the truncation of a presentation (6 for finite-dimensional inputs, 2 for
/// the letter window of `bar`); `S` defaults to `D`.
pub fn params(
    cmd: Command,
    input: &Input,
    max_degree: Option<usize>,
    max_stage: Option<usize>,
    bar_length: Option<usize>,
    seed: Option<u64>,
) -> Params {
    let d = max_degree.unwrap_or(match (cmd, input) {
        (Command::Bar, _) => DEFAULT_BAR_LETTER_DEGREE,
        (_, Input::Presentation(p)) if !cmd.takes_algebra() => p.truncation_degree,
        _ => DEFAULT_ALGEBRA_DEGREE,
    });
    let bar_length = match cmd {
        Command::Bar => Some(bar_length.unwrap_or(DEFAULT_BAR_LENGTH)),
        Command::Cobar => Some(bar_length.unwrap_or(DEFAULT_COBAR_LENGTH)),
        _ => None,
    };
    Params {
        window: Window::new(d, max_stage.unwrap_or(d)),
        bar_length,
        seed,
    }
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("reports serialize to JSON")
}

/// The presentation truncated at `d`, rejected unless it is a DG algebra there.
fn dg_algebra(p: &Presentation, d: usize) -> Result<DgAlgebra, Error> {
    let a = DgAlgebra::new(p.with_truncation(d)?);
    let report = a.validate()?;
    if let Some(c) = report.checks.iter().find(|c| !c.passed) {
        return Err(Error::Precondition(format!(
            "input is not a DG algebra: {} fails in degree {}",
            c.name, c.degree
        )));
    }
    Ok(a)
}

pub fn run_command(cmd: Command, input: &Input, params: &Params) -> Result<Value, Error> {
    let w = params.window;
    let d = w.max_degree;
    let seed = params.seed.unwrap_or(0);
    let options = ResolutionOptions { seed: params.seed };
    if cmd.takes_algebra() {
        let e = input.algebra()?;
        return Ok(match cmd {
            Command::QuasiKoszul => to_value(&is_quasi_koszul(&e, w.max_stage)?),
            Command::StronglyQuasiKoszul => to_value(&is_strongly_quasi_koszul(&e, w.max_stage)?),
            Command::Frobenius => to_value(&is_frobenius(&e, seed)?),
            Command::LocalPipeline => to_value(&local_dual_pipeline(&e, w, &options, seed)?),
            Command::AdjunctionCheck => to_value(&adjunction_check(&dual_coalgebra(&e)?, d)?),
            Command::Cobar => {
                let c = dual_coalgebra(&e)?;
                let tau = TwistingCochain::canonical(&c);
                json!({
                    "coalgebra": to_value(&c),
                    "conilpotency": c.conilpotency()?,
                    "cobar": to_value(&cobar(&c, d)?.to_file()),
                    "check": to_value(&check_cobar(&c, params.bar_length.unwrap_or(DEFAULT_COBAR_LENGTH))?),
                    "twisting": to_value(&check_twisting(&c, &tau)),
                    "twisted_right": to_value(&twisted_report("C⊗Ω(C)", &twisted_right(&c, &tau, d)?)),
                    "twisted_left": to_value(&twisted_report("Ω(C)⊗C", &twisted_left(&c, &tau, d)?)),
                    "cohomology_dims": cobar_complex(&c, d)?.cohomology_dims(),
                })
            }
            _ => unreachable!("algebra commands are listed in takes_algebra"),
        });
    }
    if cmd == Command::Validate {
        if let Input::Algebra(e) = input {
            return Ok(json!({
                "ok": true,
                "dim": e.dim(),
                "labels": e.labels,
                "radical_layers": e.radical_layers().ok(),
            }));
        }
    }
    let p = input.presentation()?;
    Ok(match cmd {
        Command::Validate => {
            let a = DgAlgebra::new(p.with_truncation(d)?);
            json!({
                "validation": to_value(&a.validate()?),
                "dims": a.quotient().hilbert_function(d)?,
            })
        }
        Command::Cohomology => {
            to_value(&cohomology(&dg_algebra(p, d)?, d.saturating_sub(1))?.report())
        }
        Command::Resolve => {
            to_value(&resolve_dga(&dg_algebra(p, d)?, w, Side::Left, &options)?.report())
        }
        Command::Ext => {
            let r = resolve_dga(&dg_algebra(p, d)?, w, Side::Left, &options)?;
            let e = ext_algebra(&r)?;
            let layers = |g: Result<dgk_core::ext::FilteredGraded, Error>| match g {
                Ok(g) => to_value(&g),
                Err(err) => json!({ "unavailable": err.to_string() }),
            };
            json!({
                "ext": to_value(&e),
                "dims": to_value(&ext_dims(&r)),
                "filtration_graded": layers(gr_of_filtration(&e)),
                "radical_graded": layers(radical_filtration(&e)),
                "unknown_products": e.unknown_products(),
            })
        }
        Command::Tor => to_value(&tor_dims(&resolve_dga(
            &dg_algebra(p, d)?,
            w,
            Side::Left,
            &options,
        )?)),
        Command::KoszulDg => to_value(&is_koszul_dg(&dg_algebra(p, d)?, w, &options)?),
        Command::KoszulGraded => to_value(&is_koszul_graded(&p.with_truncation(d)?, w)?),
        Command::QuadraticDual => {
            let dual = quadratic_dual(&p.with_truncation(d)?)?;
            json!({
                "dual": to_value(&dual.to_file()),
                "hilbert_function": QuadraticData::from_presentation(p)?.dual().hilbert_function(d)?,
            })
        }
        Command::AsGorenstein => to_value(&as_gorenstein(&dg_algebra(p, d)?, w, &options)?),
        Command::Bar => {
            let length = params.bar_length.unwrap_or(DEFAULT_BAR_LENGTH);
            // products of two letters stay inside A, and the quasi-isomorphism check needs W + 1 <= D
            let a = dg_algebra(p, 2 * d + 1)?.arc();
            let b = bar(a.clone(), d, length)?;
            json!({
                "words": b.words().len(),
                "structure": to_value(&check_bar(&b)?),
                "augmentation": to_value(&check_bar_resolution(a, 2 * d, length)?),
                "phi": to_value(&phi_check(&b)?),
            })
        }
        Command::DualityRoundtrip => to_value(&koszul_duality_roundtrip(
            &dg_algebra(p, d)?,
            w,
            &options,
            seed,
        )?),
        _ => unreachable!("algebra commands return above"),
    })
}
