//! Koszulity of a DG algebra read off its minimal resolution, three ways.

use serde_json::json;

use super::verdict::{Outcome, Scope, Verdict};
use crate::dga::DgAlgebra;
use crate::error::{Error, Result};
use crate::ext::{ext_dims, tor_dims};
use crate::resolution::{resolve_dga, Resolution, ResolutionOptions, Side, Window};

/// Verdicts of the three equivalent criteria.
#[derive(Clone, Debug, serde::Serialize)]
pub struct KoszulRoutes {
    pub semibasis: bool,
    pub ext: bool,
    pub tor: bool,
}

pub fn koszul_dg_from_resolution(r: &Resolution) -> Result<Verdict> {
    let semibasis = r.generators().iter().position(|g| g.degree != 0);
    let ext = ext_dims(r);
    let tor = tor_dims(r);
    let routes = KoszulRoutes {
        semibasis: semibasis.is_none(),
        ext: ext.concentrated_in_degree_zero(),
        tor: tor.concentrated_in_degree_zero(),
    };
    if routes.semibasis != routes.ext || routes.semibasis != routes.tor {
        return Err(Error::Invariant(format!(
            "Koszul criteria disagree: semibasis {}, ext {}, tor {}",
            routes.semibasis, routes.ext, routes.tor
        )));
    }
    let details = json!({
        "routes": routes,
        "terminated": r.terminated,
        "stages": r.stages,
        "counts": r.counts(),
        "tor_by_degree": tor.by_degree,
    });
    let verdict = match semibasis {
        Some(g) => {
            let gen = &r.generators()[g];
            Verdict::new("koszul-dg", Outcome::No, Scope::Exact).with_witness(json!({
                "generator": gen.label,
                "stage": gen.stage,
                "degree": gen.degree,
                "differential": r.module.render(gen.degree + 1, &gen.d),
            }))
        }
        None if r.terminated => Verdict::new("koszul-dg", Outcome::Yes, Scope::Exact),
        None => Verdict::new("koszul-dg", Outcome::Yes, Scope::WithinWindow),
    };
    Ok(verdict.with_window(r.window).with_details(details))
}

pub fn is_koszul_dg(a: &DgAlgebra, window: Window, options: &ResolutionOptions) -> Result<Verdict> {
    match resolve_dga(a, window, Side::Left, options) {
        Ok(r) => koszul_dg_from_resolution(&r),
        Err(Error::WindowExhausted(msg)) => {
            Ok(
                Verdict::new("koszul-dg", Outcome::Inconclusive, Scope::WithinWindow)
                    .with_window(window)
                    .with_details(json!({ "reason": msg })),
            )
        }
        Err(e) => Err(e),
    }
}
