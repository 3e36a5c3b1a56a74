//! Bar and cobar constructions, dual coalgebras, twisting cochains and the duality pipelines.

pub mod bar;
pub mod coalgebra;
pub mod cobar;
pub mod phi;
pub mod pipeline;
pub mod twisting;

use std::collections::BTreeMap;

use crate::exactlin::Scalar;
use crate::gradedalg::Word;

pub use bar::{
    bar, check_bar, check_bar_resolution, BarCheck, BarCoalgebra, BarResolutionCheck, ModuleKey,
};
pub use coalgebra::{dual_coalgebra, FinCoalgebra};
pub use cobar::{check_cobar, cobar, cobar_word_differential, CobarCheck};
pub use phi::{convolve, dual_differential, phi_apply, phi_check, Functional, PhiReport};
pub use pipeline::{
    koszul_duality_roundtrip, local_dual_pipeline, truncated_cohomology, LocalPipelineReport,
    RoundtripReport,
};
pub use twisting::{
    adjunction_check, check_twisting, cobar_complex, twisted_left, twisted_report, twisted_right,
    AdjunctionReport, KeyedComplex, TwistedReport, TwistingCheck, TwistingCochain,
};

/// A finite linear combination of basis keys with nonzero coefficients.
pub type Lin<K> = BTreeMap<K, Scalar>;

pub fn add_term<K: Ord>(x: &mut Lin<K>, key: K, c: Scalar) {
    if c.is_zero() {
        return;
    }
    match x.entry(key) {
        std::collections::btree_map::Entry::Vacant(e) => {
            e.insert(c);
        }
        std::collections::btree_map::Entry::Occupied(mut e) => {
            let s = e.get() + &c;
            if s.is_zero() {
                e.remove();
            } else {
                *e.get_mut() = s;
            }
        }
    }
}

/// All words of length `<= max_length` in `letters` letters, shortest first.
pub fn all_words(letters: usize, max_length: usize) -> Vec<Word> {
    let mut out = vec![Vec::new()];
    let mut layer = vec![Vec::new()];
    for _ in 0..max_length {
        let mut next = Vec::with_capacity(layer.len() * letters);
        for w in &layer {
            for l in 0..letters {
                let mut v: Word = w.clone();
                v.push(l);
                next.push(v);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}
