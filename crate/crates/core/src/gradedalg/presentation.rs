use std::collections::{BTreeMap, HashSet};

use serde::{Deserialize, Serialize};

use super::expr::{parse_expr, render_word, word_degree, NCPoly, Word};
use crate::error::{Error, Result};
use crate::exactlin::{Field, Scalar};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorSpec {
    pub name: String,
    pub degree: usize,
}

/// The on-disk form of a presentation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PresentationFile {
    #[serde(default = "default_field")]
    pub field: String,
    pub generators: Vec<GeneratorSpec>,
    #[serde(default)]
    pub relations: Vec<String>,
    #[serde(default)]
    pub differential: BTreeMap<String, String>,
    pub truncation_degree: usize,
}

fn default_field() -> String {
    "Q".to_string()
}

/// A validated presentation `T(V)/(relations)` with a derivation given on generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    pub field: Field,
    pub generators: Vec<GeneratorSpec>,
    pub relations: Vec<NCPoly>,
    /// Image of each generator, indexed like `generators`.
    pub differential: Vec<NCPoly>,
    pub truncation_degree: usize,
}

impl Presentation {
    pub fn parse(text: &str) -> Result<Presentation> {
        Presentation::parse_with_field(text, None)
    }

    /// Parses a JSON document; `field` overrides the document's field when given.
    pub fn parse_with_field(text: &str, field: Option<Field>) -> Result<Presentation> {
        let file: PresentationFile = serde_json::from_str(text).map_err(|e| Error::Syntax {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })?;
        Presentation::from_file(&file, field)
    }

    pub fn from_file(file: &PresentationFile, field: Option<Field>) -> Result<Presentation> {
        let field = match field {
            Some(f) => f,
            None => file.field.parse()?,
        };
        let mut seen = HashSet::new();
        for g in &file.generators {
            if !is_identifier(&g.name) {
                return Err(Error::InvalidPresentation(format!(
                    "bad generator name `{}`",
                    g.name
                )));
            }
            if !seen.insert(g.name.clone()) {
                return Err(Error::DuplicateGenerator(g.name.clone()));
            }
        }
        let names: Vec<String> = file.generators.iter().map(|g| g.name.clone()).collect();
        let mut relations = Vec::new();
        for r in &file.relations {
            relations.push(parse_expr(r, &names, field)?);
        }
        let mut differential = vec![NCPoly::zero(); names.len()];
        for (g, image) in &file.differential {
            let idx = names
                .iter()
                .position(|n| n == g)
                .ok_or_else(|| Error::UnknownGenerator(g.clone()))?;
            differential[idx] = parse_expr(image, &names, field)?;
        }
        let p = Presentation {
            field,
            generators: file.generators.clone(),
            relations,
            differential,
            truncation_degree: file.truncation_degree,
        };
        p.check()?;
        Ok(p)
    }

    /// Builds a presentation from already-parsed parts and validates it.
    pub fn new(
        field: Field,
        generators: Vec<GeneratorSpec>,
        relations: Vec<NCPoly>,
        differential: Vec<NCPoly>,
        truncation_degree: usize,
    ) -> Result<Presentation> {
        let mut seen = HashSet::new();
        for g in &generators {
            if !seen.insert(g.name.clone()) {
                return Err(Error::DuplicateGenerator(g.name.clone()));
            }
        }
        if differential.len() != generators.len() {
            return Err(Error::DimensionMismatch {
                expected: generators.len(),
                found: differential.len(),
            });
        }
        let p = Presentation {
            field,
            generators,
            relations,
            differential,
            truncation_degree,
        };
        p.check()?;
        Ok(p)
    }

    /// Convenience constructor from expression strings; `differential` pairs generator names with images.
    pub fn from_strings(
        field: Field,
        generators: &[(&str, usize)],
        relations: &[&str],
        differential: &[(&str, &str)],
        truncation_degree: usize,
    ) -> Result<Presentation> {
        let file = PresentationFile {
            field: field.name(),
            generators: generators
                .iter()
                .map(|(n, d)| GeneratorSpec {
                    name: n.to_string(),
                    degree: *d,
                })
                .collect(),
            relations: relations.iter().map(|s| s.to_string()).collect(),
            differential: differential
                .iter()
                .map(|(g, e)| (g.to_string(), e.to_string()))
                .collect(),
            truncation_degree,
        };
        Presentation::from_file(&file, Some(field))
    }

    fn check(&self) -> Result<()> {
        if self.truncation_degree < 1 {
            return Err(Error::InvalidPresentation(
                "truncation_degree must be at least 1".into(),
            ));
        }
        let degrees = self.degrees();
        let names = self.names();
        for g in &self.generators {
            if g.degree < 1 {
                return Err(Error::InvalidPresentation(format!(
                    "generator `{}` must have degree at least 1",
                    g.name
                )));
            }
        }
        for r in &self.relations {
            match r.homogeneous_degree(&degrees) {
                Err(_) => return Err(Error::InhomogeneousRelation(r.render(&names))),
                Ok(Some(0)) => {
                    return Err(Error::InvalidPresentation(format!(
                        "relation `{}` is a nonzero constant",
                        r.render(&names)
                    )))
                }
                Ok(Some(d)) if d > self.truncation_degree => {
                    return Err(Error::InvalidPresentation(format!(
                        "relation `{}` has degree {d} above truncation degree {}",
                        r.render(&names),
                        self.truncation_degree
                    )))
                }
                _ => {}
            }
        }
        for (g, image) in self.generators.iter().zip(&self.differential) {
            match image.homogeneous_degree(&degrees) {
                Err(_) => return Err(Error::InhomogeneousRelation(image.render(&names))),
                Ok(Some(d)) if d != g.degree + 1 => {
                    return Err(Error::BadDifferentialDegree {
                        generator: g.name.clone(),
                        expected: g.degree + 1,
                        found: d,
                    })
                }
                _ => {}
            }
        }
        Ok(())
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.generators.iter().map(|g| g.degree).collect()
    }

    pub fn names(&self) -> Vec<String> {
        self.generators.iter().map(|g| g.name.clone()).collect()
    }

    pub fn word_degree(&self, w: &[usize]) -> usize {
        word_degree(w, &self.degrees())
    }

    pub fn render_word(&self, w: &[usize]) -> String {
        render_word(w, &self.names())
    }

    pub fn has_zero_differential(&self) -> bool {
        self.differential.iter().all(NCPoly::is_zero)
    }

    pub fn max_relation_degree(&self) -> usize {
        let degrees = self.degrees();
        self.relations
            .iter()
            .filter_map(|r| r.homogeneous_degree(&degrees).ok().flatten())
            .max()
            .unwrap_or(0)
    }

    /// Same presentation with a different truncation degree.
    pub fn with_truncation(&self, d: usize) -> Result<Presentation> {
        let mut p = self.clone();
        p.truncation_degree = d;
        p.check()?;
        Ok(p)
    }

    /// Same presentation with the differential dropped.
    pub fn without_differential(&self) -> Presentation {
        let mut p = self.clone();
        p.differential = vec![NCPoly::zero(); p.generators.len()];
        p
    }

    pub fn to_file(&self) -> PresentationFile {
        let names = self.names();
        PresentationFile {
            field: self.field.name(),
            generators: self.generators.clone(),
            relations: self.relations.iter().map(|r| r.render(&names)).collect(),
            differential: self
                .generators
                .iter()
                .zip(&self.differential)
                .filter(|(_, d)| !d.is_zero())
                .map(|(g, d)| (g.name.clone(), d.render(&names)))
                .collect(),
            truncation_degree: self.truncation_degree,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_file()).expect("presentation serializes")
    }

    /// Multiplies each term by the Koszul sign of reversing its word, then reverses it.
    pub fn reverse_with_sign(&self, p: &NCPoly) -> NCPoly {
        let degrees = self.degrees();
        let mut out = NCPoly::zero();
        for (w, c) in &p.terms {
            let rev: Word = w.iter().rev().copied().collect();
            let c = if reversal_sign_is_negative(w, &degrees) {
                -c
            } else {
                c.clone()
            };
            out.add_term(rev, c);
        }
        out
    }

    pub fn scalar(&self, n: i64) -> Scalar {
        self.field.from_i64(n)
    }
}

/// Sign of reversing `g_1 ... g_k`: the product of `(-1)^{|g_i||g_j|}` over `i < j`.
pub fn reversal_sign_is_negative(w: &[usize], degrees: &[usize]) -> bool {
    let odd = w.iter().filter(|&&g| degrees[g] % 2 == 1).count();
    (odd * odd.saturating_sub(1) / 2) % 2 == 1
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

#[cfg(test)]
mod tests {
    use super::*;

    const EXAMPLE_A: &str = r#"{
        "field": "Q",
        "generators": [{"name": "x", "degree": 1}, {"name": "y", "degree": 1}],
        "relations": ["y^2", "y*x"],
        "differential": {"x": "x*y"},
        "truncation_degree": 8
    }"#;

    #[test]
    fn parses_example_a() {
        let p = Presentation::parse(EXAMPLE_A).unwrap();
        assert_eq!(p.generators.len(), 2);
        assert_eq!(p.relations.len(), 2);
        assert_eq!(p.differential[0].render(&p.names()), "x*y");
        assert!(p.differential[1].is_zero());
    }

    #[test]
    fn rejects_inhomogeneous_relation() {
        let r = Presentation::from_strings(
            Field::Rational,
            &[("x", 1), ("y", 1)],
            &["x*y - y*x + x"],
            &[],
            4,
        );
        assert!(matches!(r, Err(Error::InhomogeneousRelation(_))));
    }

    #[test]
    fn rejects_bad_differential_degree_and_duplicates() {
        let r =
            Presentation::from_strings(Field::Rational, &[("y", 1)], &["y^2"], &[("y", "y^3")], 4);
        assert!(matches!(
            r,
            Err(Error::BadDifferentialDegree {
                expected: 2,
                found: 3,
                ..
            })
        ));
        let r = Presentation::from_strings(Field::Rational, &[("x", 1), ("x", 2)], &[], &[], 4);
        assert!(matches!(r, Err(Error::DuplicateGenerator(_))));
    }

    #[test]
    fn json_syntax_errors_have_positions() {
        let r = Presentation::parse("{\n  \"generators\": [,\n}");
        assert!(matches!(r, Err(Error::Syntax { line: 2, .. })));
    }

    #[test]
    fn field_override_and_rendering_roundtrip() {
        let p = Presentation::parse_with_field(EXAMPLE_A, Some(Field::Prime(5))).unwrap();
        assert_eq!(p.field, Field::Prime(5));
        let again = Presentation::parse(&p.to_json()).unwrap();
        assert_eq!(p, again);
    }

    #[test]
    fn reversal_sign() {
        let degrees = [1, 2];
        assert!(!reversal_sign_is_negative(&[0], &degrees));
        assert!(reversal_sign_is_negative(&[0, 0], &degrees));
        assert!(!reversal_sign_is_negative(&[0, 1], &degrees));
        assert!(reversal_sign_is_negative(&[0, 0, 0], &degrees));
    }
}
