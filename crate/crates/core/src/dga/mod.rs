//! Connected cochain DG algebras: differentials, validation, cohomology and opposites.

pub mod cohomology;

use std::sync::{Arc, OnceLock};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactlin::{sign, Accumulator, Field, SparseVec};
use crate::gradedalg::{GradedQuotient, NCPoly, Presentation, Word};

pub use cohomology::{cohomology, CohomologyAlgebra};

/// A connected cochain DG algebra realized degreewise on a finite window `0..=max_degree`.
/// Basis elements are indexed per degree; degree 0 is spanned by the unit (index 0).
pub trait CochainAlgebra: Send + Sync + std::fmt::Debug {
    fn field(&self) -> Field;
    fn max_degree(&self) -> usize;
    fn dim(&self, n: usize) -> Result<usize>;
    /// Product of basis element `i` of degree `p` with basis element `j` of degree `q`.
    fn multiply_basis(&self, p: usize, i: usize, q: usize, j: usize) -> Result<SparseVec>;
    /// Differential of basis element `i` of degree `n`, in degree `n + 1`.
    fn differential_basis(&self, n: usize, i: usize) -> Result<SparseVec>;
    fn label(&self, n: usize, i: usize) -> String;

    fn mul(&self, p: usize, u: &SparseVec, q: usize, v: &SparseVec) -> Result<SparseVec> {
        let mut acc = Accumulator::new();
        for (i, a) in u.iter() {
            for (j, b) in v.iter() {
                acc.add_scaled(&self.multiply_basis(p, i, q, j)?, &(a * b));
            }
        }
        Ok(acc.finish())
    }

    fn diff(&self, n: usize, u: &SparseVec) -> Result<SparseVec> {
        let mut acc = Accumulator::new();
        for (i, a) in u.iter() {
            acc.add_scaled(&self.differential_basis(n, i)?, a);
        }
        Ok(acc.finish())
    }

    /// Images of the degree-`n` basis under `d`.
    fn diff_columns(&self, n: usize) -> Result<Vec<SparseVec>> {
        (0..self.dim(n)?)
            .map(|i| self.differential_basis(n, i))
            .collect()
    }

    fn render(&self, n: usize, v: &SparseVec) -> String {
        if v.is_zero() {
            return "0".to_string();
        }
        v.iter()
            .map(|(i, c)| {
                if c.is_one() {
                    self.label(n, i)
                } else {
                    format!("({c})*{}", self.label(n, i))
                }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

/// A DG algebra given by a presentation.
#[derive(Debug)]
pub struct DgAlgebra {
    quotient: GradedQuotient,
    diffs: Vec<OnceLock<Vec<SparseVec>>>,
}

impl Clone for DgAlgebra {
    fn clone(&self) -> Self {
        DgAlgebra::new(self.presentation().clone())
    }
}

impl DgAlgebra {
    pub fn new(pres: Presentation) -> DgAlgebra {
        let d = pres.truncation_degree;
        DgAlgebra {
            quotient: GradedQuotient::new(pres),
            diffs: (0..=d).map(|_| OnceLock::new()).collect(),
        }
    }

    /// Builds the algebra and fails unless every validation check passes.
    pub fn validated(pres: Presentation) -> Result<DgAlgebra> {
        let a = DgAlgebra::new(pres);
        let report = a.validate()?;
        if let Some(f) = report.checks.iter().find(|c| !c.passed) {
            return Err(Error::Invariant(format!(
                "{} fails in degree {}: {}",
                f.name,
                f.degree,
                f.witness.clone().unwrap_or_default()
            )));
        }
        Ok(a)
    }

    pub fn arc(self) -> Arc<dyn CochainAlgebra> {
        Arc::new(self)
    }

    pub fn presentation(&self) -> &Presentation {
        self.quotient.presentation()
    }

    pub fn quotient(&self) -> &GradedQuotient {
        &self.quotient
    }

    /// `d` on a word of the tensor algebra, by the graded Leibniz rule.
    pub fn differentiate_word(&self, w: &[usize]) -> NCPoly {
        let pres = self.presentation();
        let field = pres.field;
        let mut out = NCPoly::zero();
        let mut prefix_degree = 0usize;
        for (k, &g) in w.iter().enumerate() {
            let s = sign(field, prefix_degree as i64);
            for (u, c) in &pres.differential[g].terms {
                let mut word: Word = w[..k].to_vec();
                word.extend_from_slice(u);
                word.extend_from_slice(&w[k + 1..]);
                out.add_term(word, &s * c);
            }
            prefix_degree += pres.generators[g].degree;
        }
        out
    }

    pub fn differentiate_poly(&self, p: &NCPoly) -> NCPoly {
        let mut out = NCPoly::zero();
        for (w, c) in &p.terms {
            out.add_scaled(&self.differentiate_word(w), c);
        }
        out
    }

    /// `d` of an element of degree `n`, in normal form; requires `n + 1 <= D`.
    pub fn differentiate(&self, n: usize, v: &SparseVec) -> Result<SparseVec> {
        self.diff(n, v)
    }

    /// Runs the derivation checks on every degree of the window.
    pub fn validate(&self) -> Result<ValidationReport> {
        let pres = self.presentation();
        let names = pres.names();
        let d = pres.truncation_degree;
        let q = &self.quotient;
        let mut checks = Vec::new();
        checks.push(Check {
            name: "degree_shift".into(),
            degree: 0,
            passed: true,
            witness: None,
        });
        for n in 1..d {
            let basis = q.degree_basis(n)?;
            let mut witness = None;
            for row in &basis.ideal {
                let mut p = NCPoly::zero();
                for (k, c) in row.iter() {
                    p.add_term(basis.words[k].clone(), c.clone());
                }
                let dp = self.differentiate_poly(&p);
                if !q.nf_poly(&dp, n + 1)?.is_zero() {
                    witness = Some(format!(
                        "d({}) = {} is not in the ideal",
                        p.render(&names),
                        dp.render(&names)
                    ));
                    break;
                }
            }
            checks.push(Check {
                name: "ideal_stable".into(),
                degree: n,
                passed: witness.is_none(),
                witness,
            });
        }
        for n in 0..d.saturating_sub(1) {
            let mut witness = None;
            for i in 0..q.dim(n)? {
                let dv = self.differential_basis(n, i)?;
                let ddv = self.diff(n + 1, &dv)?;
                if !ddv.is_zero() {
                    witness = Some(format!(
                        "d(d({})) = {}",
                        q.label(n, i)?,
                        q.to_poly(n + 2, &ddv)?.render(&names)
                    ));
                    break;
                }
            }
            checks.push(Check {
                name: "d_squared_zero".into(),
                degree: n,
                passed: witness.is_none(),
                witness,
            });
        }
        Ok(ValidationReport {
            ok: checks.iter().all(|c| c.passed),
            checks,
        })
    }

    /// The opposite DG algebra, presented on the same generators.
    pub fn opposite(&self) -> Result<DgAlgebra> {
        let pres = self.presentation();
        let relations = pres
            .relations
            .iter()
            .map(|r| pres.reverse_with_sign(r))
            .collect();
        let differential = pres
            .differential
            .iter()
            .map(|p| pres.reverse_with_sign(p))
            .collect();
        let op = Presentation::new(
            pres.field,
            pres.generators.clone(),
            relations,
            differential,
            pres.truncation_degree,
        )?;
        Ok(DgAlgebra::new(op))
    }
}

impl CochainAlgebra for DgAlgebra {
    fn field(&self) -> Field {
        self.quotient.field()
    }

    fn max_degree(&self) -> usize {
        self.quotient.max_degree()
    }

    fn dim(&self, n: usize) -> Result<usize> {
        self.quotient.dim(n)
    }

    fn multiply_basis(&self, p: usize, i: usize, q: usize, j: usize) -> Result<SparseVec> {
        self.quotient.multiply_basis(p, i, q, j)
    }

    fn differential_basis(&self, n: usize, i: usize) -> Result<SparseVec> {
        let d = self.max_degree();
        if n + 1 > d {
            return Err(Error::DegreeOutOfRange {
                requested: n + 1,
                max: d,
            });
        }
        let images = self.diffs[n].get_or_init(|| {
            let basis = self.quotient.degree_basis(n).expect("checked");
            basis
                .reduced_words()
                .map(|w| {
                    let dw = self.differentiate_word(w);
                    self.quotient
                        .nf_poly(&dw, n + 1)
                        .expect("differential raises degree by one")
                })
                .collect()
        });
        Ok(images[i].clone())
    }

    fn label(&self, n: usize, i: usize) -> String {
        self.quotient
            .label(n, i)
            .unwrap_or_else(|_| format!("?{n}.{i}"))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub degree: usize,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub ok: bool,
    pub checks: Vec<Check>,
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn example_a(d: usize) -> DgAlgebra {
        let p = Presentation::from_strings(
            Field::Rational,
            &[("x", 1), ("y", 1)],
            &["y^2", "y*x"],
            &[("x", "x*y")],
            d,
        )
        .unwrap();
        DgAlgebra::new(p)
    }

    fn render(a: &DgAlgebra, n: usize, v: &SparseVec) -> String {
        a.quotient()
            .to_poly(n, v)
            .unwrap()
            .render(&a.presentation().names())
    }

    #[test]
    fn example_a_differentials() {
        let a = example_a(6);
        assert_eq!(render(&a, 2, &a.differential_basis(1, 0).unwrap()), "x*y");
        assert!(a.differential_basis(1, 1).unwrap().is_zero());
        assert!(a.differential_basis(0, 0).unwrap().is_zero());
        // d(x*x) = x*y*x - x*x*y = -x*x*y
        assert_eq!(
            render(&a, 3, &a.differential_basis(2, 0).unwrap()),
            "-x^2*y"
        );
        assert!(a.validate().unwrap().ok);
    }

    #[test]
    fn x_squared_differential_on_free_algebra_is_valid() {
        let p = Presentation::from_strings(Field::Rational, &[("x", 1)], &[], &[("x", "x^2")], 6)
            .unwrap();
        let a = DgAlgebra::new(p);
        assert!(a.differential_basis(2, 0).unwrap().is_zero());
        assert!(a.validate().unwrap().ok);
    }

    #[test]
    fn invalid_differential_is_reported_with_witness() {
        let p = Presentation::from_strings(
            Field::Rational,
            &[("x", 1), ("y", 1)],
            &[],
            &[("x", "y^2"), ("y", "x^2")],
            5,
        )
        .unwrap();
        let report = DgAlgebra::new(p).validate().unwrap();
        assert!(!report.ok);
        let failed = report.checks.iter().find(|c| !c.passed).unwrap();
        assert_eq!(failed.name, "d_squared_zero");
        assert!(failed.witness.is_some());
        // d(x^2) = y^2*x - x*y^2 leaves the ideal (x^2)
        let p = Presentation::from_strings(
            Field::Rational,
            &[("x", 1), ("y", 1)],
            &["x^2"],
            &[("x", "y^2")],
            4,
        )
        .unwrap();
        let report = DgAlgebra::new(p).validate().unwrap();
        assert!(report
            .checks
            .iter()
            .any(|c| c.name == "ideal_stable" && !c.passed));
    }

    #[test]
    fn opposite_of_example_a() {
        let a = example_a(5);
        let op = a.opposite().unwrap();
        let names = op.presentation().names();
        let rels: Vec<String> = op
            .presentation()
            .relations
            .iter()
            .map(|r| r.render(&names))
            .collect();
        assert_eq!(rels, vec!["-y^2", "-x*y"]);
        assert_eq!(op.presentation().differential[0].render(&names), "-y*x");
        assert!(op.validate().unwrap().ok);
        let back = op.opposite().unwrap();
        assert_eq!(back.presentation(), a.presentation());
    }
}
