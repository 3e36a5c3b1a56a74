//! Degreewise realization of `T(V)/(relations)` by linear algebra on word spaces.

use std::collections::HashMap;
use std::sync::OnceLock;

use super::expr::{NCPoly, Word};
use super::presentation::Presentation;
use crate::error::{Error, Result};
use crate::exactlin::{Accumulator, Echelon, Field, Scalar, SparseVec};

/// All words of one degree together with a normal-form map onto a complement of the ideal.
#[derive(Clone, Debug)]
pub struct DegreeBasis {
    pub degree: usize,
    /// Every word of this degree, length-lexicographic by generator index.
    pub words: Vec<Word>,
    index: HashMap<Word, usize>,
    /// Word indices of the reduced words (the non-pivot columns of the ideal slice).
    pub reduced: Vec<usize>,
    /// Normal form of every word, in coordinates over `reduced`.
    nf: Vec<SparseVec>,
    /// Reduced echelon basis of the ideal slice, over word indices.
    pub ideal: Vec<SparseVec>,
}

impl DegreeBasis {
    pub fn dim(&self) -> usize {
        self.reduced.len()
    }

    pub fn reduced_words(&self) -> impl Iterator<Item = &Word> + '_ {
        self.reduced.iter().map(|&i| &self.words[i])
    }

    pub fn reduced_word(&self, i: usize) -> &Word {
        &self.words[self.reduced[i]]
    }

    pub fn word_index(&self, w: &[usize]) -> Option<usize> {
        self.index.get(w).copied()
    }

    /// Normal form of a word of this degree.
    pub fn nf_word(&self, w: &[usize]) -> &SparseVec {
        let i = self.index[w];
        &self.nf[i]
    }

    pub fn nf_index(&self, word_index: usize) -> &SparseVec {
        &self.nf[word_index]
    }
}

/// The graded algebra presented by a [`Presentation`], realized lazily degree by degree
/// up to its truncation degree.
#[derive(Debug)]
pub struct GradedQuotient {
    pres: Presentation,
    bases: Vec<OnceLock<DegreeBasis>>,
    products: Vec<OnceLock<Vec<SparseVec>>>,
}

impl Clone for GradedQuotient {
    fn clone(&self) -> Self {
        GradedQuotient::new(self.pres.clone())
    }
}

impl GradedQuotient {
    pub fn new(pres: Presentation) -> GradedQuotient {
        let d = pres.truncation_degree;
        GradedQuotient {
            bases: (0..=d).map(|_| OnceLock::new()).collect(),
            products: (0..(d + 1) * (d + 1)).map(|_| OnceLock::new()).collect(),
            pres,
        }
    }

    pub fn presentation(&self) -> &Presentation {
        &self.pres
    }

    pub fn field(&self) -> Field {
        self.pres.field
    }

    pub fn max_degree(&self) -> usize {
        self.pres.truncation_degree
    }

    fn check_degree(&self, n: usize) -> Result<()> {
        if n > self.max_degree() {
            return Err(Error::DegreeOutOfRange {
                requested: n,
                max: self.max_degree(),
            });
        }
        Ok(())
    }

    pub fn degree_basis(&self, n: usize) -> Result<&DegreeBasis> {
        self.check_degree(n)?;
        Ok(self.bases[n].get_or_init(|| self.compute_basis(n)))
    }

    pub fn dim(&self, n: usize) -> Result<usize> {
        Ok(self.degree_basis(n)?.dim())
    }

    /// `[dim A^0, ..., dim A^d]`.
    pub fn hilbert_function(&self, d: usize) -> Result<Vec<usize>> {
        (0..=d).map(|n| self.dim(n)).collect()
    }

    fn words_of_degree(&self, n: usize) -> Vec<Word> {
        let degrees = self.pres.degrees();
        let mut out = Vec::new();
        let mut stack: Vec<(Word, usize)> = vec![(Vec::new(), 0)];
        while let Some((w, d)) = stack.pop() {
            if d == n {
                out.push(w);
                continue;
            }
            for (g, &dg) in degrees.iter().enumerate() {
                if d + dg <= n {
                    let mut next = w.clone();
                    next.push(g);
                    stack.push((next, d + dg));
                }
            }
        }
        out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        out
    }

    fn compute_basis(&self, n: usize) -> DegreeBasis {
        let field = self.field();
        let words = self.words_of_degree(n);
        let index: HashMap<Word, usize> = words
            .iter()
            .enumerate()
            .map(|(i, w)| (w.clone(), i))
            .collect();
        let degrees = self.pres.degrees();
        let mut ideal = Echelon::new(field);
        for r in &self.pres.relations {
            if r.homogeneous_degree(&degrees) == Ok(Some(n)) {
                ideal.insert(&poly_to_vec(r, &index));
            }
        }
        // I_n = R_n + sum over generators g of (g I_{n-|g|} + I_{n-|g|} g).
        for (g, &dg) in degrees.iter().enumerate() {
            if dg > n || n == 0 {
                continue;
            }
            let lower = self
                .degree_basis(n - dg)
                .expect("lower degree within window");
            for row in &lower.ideal {
                for left in [true, false] {
                    let v = SparseVec::from_entries(
                        row.iter()
                            .map(|(k, c)| {
                                let mut w = Vec::with_capacity(lower.words[k].len() + 1);
                                if left {
                                    w.push(g);
                                    w.extend_from_slice(&lower.words[k]);
                                } else {
                                    w.extend_from_slice(&lower.words[k]);
                                    w.push(g);
                                }
                                (index[&w], c.clone())
                            })
                            .collect(),
                    );
                    ideal.insert(&v);
                }
            }
        }
        let ideal_rows = ideal.rref_rows();
        let mut pivot_row: HashMap<usize, usize> = HashMap::new();
        for (r, row) in ideal_rows.iter().enumerate() {
            pivot_row.insert(row.leading().unwrap().0, r);
        }
        let reduced: Vec<usize> = (0..words.len())
            .filter(|i| !pivot_row.contains_key(i))
            .collect();
        let mut position = vec![usize::MAX; words.len()];
        for (k, &i) in reduced.iter().enumerate() {
            position[i] = k;
        }
        let nf = (0..words.len())
            .map(|i| match pivot_row.get(&i) {
                None => SparseVec::unit(position[i], field),
                // w_i = -(rest of its ideal row) modulo the ideal.
                Some(&r) => SparseVec::from_entries(
                    ideal_rows[r]
                        .iter()
                        .filter(|(j, _)| *j != i)
                        .map(|(j, c)| (position[j], -c))
                        .collect(),
                ),
            })
            .collect();
        DegreeBasis {
            degree: n,
            words,
            index,
            reduced,
            nf,
            ideal: ideal_rows,
        }
    }

    /// Normal form of a homogeneous polynomial of degree `n`.
    pub fn nf_poly(&self, p: &NCPoly, n: usize) -> Result<SparseVec> {
        let basis = self.degree_basis(n)?;
        let mut acc = Accumulator::new();
        for (w, c) in &p.terms {
            let Some(i) = basis.word_index(w) else {
                return Err(Error::Invariant(format!(
                    "word {} does not have degree {n}",
                    self.pres.render_word(w)
                )));
            };
            acc.add_scaled(basis.nf_index(i), c);
        }
        Ok(acc.finish())
    }

    /// Normal form of a single word.
    pub fn nf_word(&self, w: &[usize]) -> Result<(usize, SparseVec)> {
        let n = self.pres.word_degree(w);
        let basis = self.degree_basis(n)?;
        Ok((n, basis.nf_word(w).clone()))
    }

    /// The polynomial of reduced words with the given coordinates.
    pub fn to_poly(&self, n: usize, v: &SparseVec) -> Result<NCPoly> {
        let basis = self.degree_basis(n)?;
        let mut p = NCPoly::zero();
        for (i, c) in v.iter() {
            p.add_term(basis.reduced_word(i).clone(), c.clone());
        }
        Ok(p)
    }

    /// Product of reduced basis elements `i` in degree `p` and `j` in degree `q`.
    pub fn multiply_basis(&self, p: usize, i: usize, q: usize, j: usize) -> Result<SparseVec> {
        self.check_degree(p + q)?;
        let d = self.max_degree();
        let table = self.products[p * (d + 1) + q].get_or_init(|| {
            let bp = self.degree_basis(p).expect("checked");
            let bq = self.degree_basis(q).expect("checked");
            let bpq = self.degree_basis(p + q).expect("checked");
            let mut out = Vec::with_capacity(bp.dim() * bq.dim());
            for u in bp.reduced_words() {
                for v in bq.reduced_words() {
                    let mut w = u.clone();
                    w.extend_from_slice(v);
                    out.push(bpq.nf_word(&w).clone());
                }
            }
            out
        });
        let dq = self.degree_basis(q)?.dim();
        Ok(table[i * dq + j].clone())
    }

    /// Product of general elements of degrees `p` and `q`.
    pub fn multiply(&self, p: usize, u: &SparseVec, q: usize, v: &SparseVec) -> Result<SparseVec> {
        self.check_degree(p + q)?;
        let mut acc = Accumulator::new();
        for (i, a) in u.iter() {
            for (j, b) in v.iter() {
                acc.add_scaled(&self.multiply_basis(p, i, q, j)?, &(a * b));
            }
        }
        Ok(acc.finish())
    }

    pub fn label(&self, n: usize, i: usize) -> Result<String> {
        Ok(self.pres.render_word(self.degree_basis(n)?.reduced_word(i)))
    }

    pub fn one(&self) -> Scalar {
        self.field().one()
    }
}

fn poly_to_vec(p: &NCPoly, index: &HashMap<Word, usize>) -> SparseVec {
    SparseVec::from_entries(p.terms.iter().map(|(w, c)| (index[w], c.clone())).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn example_a(d: usize) -> GradedQuotient {
        let p = Presentation::from_strings(
            Field::Rational,
            &[("x", 1), ("y", 1)],
            &["y^2", "y*x"],
            &[("x", "x*y")],
            d,
        )
        .unwrap();
        GradedQuotient::new(p)
    }

    #[test]
    fn example_a_degree_two_basis() {
        let a = example_a(6);
        let b = a.degree_basis(2).unwrap();
        let names: Vec<String> = b
            .reduced_words()
            .map(|w| a.presentation().render_word(w))
            .collect();
        assert_eq!(names, vec!["x^2", "x*y"]);
        assert_eq!(a.hilbert_function(6).unwrap(), vec![1, 2, 2, 2, 2, 2, 2]);
        assert_eq!(a.degree_basis(0).unwrap().dim(), 1);
        assert!(matches!(
            a.degree_basis(7),
            Err(Error::DegreeOutOfRange {
                requested: 7,
                max: 6
            })
        ));
    }

    #[test]
    fn example_a_products() {
        let a = example_a(4);
        let q = Field::Rational;
        // degree-1 basis: x = 0, y = 1
        assert!(a.multiply_basis(1, 1, 1, 1).unwrap().is_zero());
        let xy = a.multiply_basis(1, 0, 1, 1).unwrap();
        assert_eq!(
            a.to_poly(2, &xy).unwrap().render(&a.presentation().names()),
            "x*y"
        );
        let v = SparseVec::unit(1, q);
        assert_eq!(a.multiply(0, &SparseVec::unit(0, q), 1, &v).unwrap(), v);
        assert!(a.multiply(2, &xy, 3, &xy).is_err());
    }

    #[test]
    fn free_algebra_and_truncated_tensor_algebra() {
        let p = Presentation::from_strings(Field::Rational, &[("x", 1)], &[], &[], 5).unwrap();
        assert_eq!(
            GradedQuotient::new(p).hilbert_function(5).unwrap(),
            vec![1; 6]
        );
        let p = Presentation::from_strings(
            Field::Rational,
            &[("a", 1), ("b", 1), ("c", 1)],
            &["a^4", "a^3*b", "b*a*c*a"],
            &[],
            5,
        )
        .unwrap();
        let q = GradedQuotient::new(p);
        assert_eq!(q.hilbert_function(3).unwrap(), vec![1, 3, 9, 27]);
        assert_eq!(q.dim(4).unwrap(), 81 - 3);
    }

    #[test]
    fn commutative_polynomial_ring() {
        let p = Presentation::from_strings(
            Field::Rational,
            &[("x", 1), ("y", 1)],
            &["x*y - y*x"],
            &[],
            6,
        )
        .unwrap();
        assert_eq!(
            GradedQuotient::new(p).hilbert_function(6).unwrap(),
            vec![1, 2, 3, 4, 5, 6, 7]
        );
    }
}
