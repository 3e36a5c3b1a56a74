//! Noncommutative polynomials and the expression grammar
//!
//! ```text
//! expr  := term (("+"|"-") term)*
//! term  := [coeff "*"] word | coeff
//! word  := atom ("*" atom)*
//! atom  := genname ["^" posint]
//! coeff := int | int "/" posint
//! ```

use std::collections::BTreeMap;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::exactlin::{Field, Scalar};

/// A word in the generators, stored as generator indices. The empty word is the unit.
pub type Word = Vec<usize>;

/// A linear combination of words with nonzero coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct NCPoly {
    pub terms: BTreeMap<Word, Scalar>,
}

impl NCPoly {
    pub fn zero() -> NCPoly {
        NCPoly::default()
    }

    pub fn monomial(word: Word, c: Scalar) -> NCPoly {
        let mut p = NCPoly::zero();
        p.add_term(word, c);
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, word: Word, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&word) {
            Some(acc) => {
                *acc += &c;
                if acc.is_zero() {
                    self.terms.remove(&word);
                }
            }
            None => {
                self.terms.insert(word, c);
            }
        }
    }

    pub fn add_scaled(&mut self, other: &NCPoly, c: &Scalar) {
        for (w, x) in &other.terms {
            self.add_term(w.clone(), x * c);
        }
    }

    pub fn mul(&self, other: &NCPoly) -> NCPoly {
        let mut out = NCPoly::zero();
        for (u, a) in &self.terms {
            for (v, b) in &other.terms {
                let mut w = u.clone();
                w.extend_from_slice(v);
                out.add_term(w, a * b);
            }
        }
        out
    }

    /// The common degree of all terms; `None` for the zero polynomial.
    /// Errors with two differing term degrees when they are mixed.
    pub fn homogeneous_degree(
        &self,
        degrees: &[usize],
    ) -> std::result::Result<Option<usize>, (usize, usize)> {
        let mut deg = None;
        for w in self.terms.keys() {
            let d = word_degree(w, degrees);
            match deg {
                None => deg = Some(d),
                Some(e) if e != d => return Err((e, d)),
                _ => {}
            }
        }
        Ok(deg)
    }

    pub fn render(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, (w, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let mag = if neg { -c } else { c.clone() };
            if k == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let word = render_word(w, names);
            if w.is_empty() {
                out.push_str(&mag.to_string());
            } else if mag.is_one() {
                out.push_str(&word);
            } else {
                out.push_str(&format!("{mag}*{word}"));
            }
        }
        out
    }
}

pub fn word_degree(w: &[usize], degrees: &[usize]) -> usize {
    w.iter().map(|&g| degrees[g]).sum()
}

/// Renders a word as `x*y^2`; the unit renders as `1`.
pub fn render_word(w: &[usize], names: &[String]) -> String {
    if w.is_empty() {
        return "1".to_string();
    }
    let mut parts: Vec<String> = Vec::new();
    let mut i = 0;
    while i < w.len() {
        let mut j = i;
        while j < w.len() && w[j] == w[i] {
            j += 1;
        }
        let name = &names[w[i]];
        if j - i == 1 {
            parts.push(name.clone());
        } else {
            parts.push(format!("{name}^{}", j - i));
        }
        i = j;
    }
    parts.join("*")
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    Int(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
}

struct Lexed {
    tok: Tok,
    line: usize,
    column: usize,
}

fn lex(text: &str) -> Result<Vec<Lexed>> {
    let mut out = Vec::new();
    let mut chars = text.chars().peekable();
    let (mut line, mut column) = (1usize, 1usize);
    while let Some(&ch) = chars.peek() {
        let (l, c) = (line, column);
        let tok = if ch.is_whitespace() {
            chars.next();
            if ch == '\n' {
                line += 1;
                column = 1;
            } else {
                column += 1;
            }
            continue;
        } else if ch.is_ascii_alphabetic() || ch == '_' {
            let mut s = String::new();
            while let Some(&d) = chars.peek() {
                if d.is_ascii_alphanumeric() || d == '_' {
                    s.push(d);
                    chars.next();
                    column += 1;
                } else {
                    break;
                }
            }
            out.push(Lexed {
                tok: Tok::Ident(s),
                line: l,
                column: c,
            });
            continue;
        } else if ch.is_ascii_digit() {
            let mut s = String::new();
            while let Some(&d) = chars.peek() {
                if d.is_ascii_digit() {
                    s.push(d);
                    chars.next();
                    column += 1;
                } else {
                    break;
                }
            }
            out.push(Lexed {
                tok: Tok::Int(s),
                line: l,
                column: c,
            });
            continue;
        } else {
            match ch {
                '+' => Tok::Plus,
                '-' => Tok::Minus,
                '*' => Tok::Star,
                '/' => Tok::Slash,
                '^' => Tok::Caret,
                other => {
                    return Err(Error::Syntax {
                        line: l,
                        column: c,
                        message: format!("unexpected character `{other}`"),
                    })
                }
            }
        };
        chars.next();
        column += 1;
        out.push(Lexed {
            tok,
            line: l,
            column: c,
        });
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<Lexed>,
    pos: usize,
    names: &'a [String],
    field: Field,
    end: (usize, usize),
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.tok)
    }

    fn here(&self) -> (usize, usize) {
        self.toks
            .get(self.pos)
            .map(|t| (t.line, t.column))
            .unwrap_or(self.end)
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T> {
        let (line, column) = self.here();
        Err(Error::Syntax {
            line,
            column,
            message: message.into(),
        })
    }

    fn expr(&mut self) -> Result<NCPoly> {
        let mut out = NCPoly::zero();
        let mut negate = false;
        if self.peek() == Some(&Tok::Minus) {
            negate = true;
            self.pos += 1;
        } else if self.peek() == Some(&Tok::Plus) {
            self.pos += 1;
        }
        loop {
            let (word, mut c) = self.term()?;
            if negate {
                c = -c;
            }
            out.add_term(word, c);
            match self.peek() {
                Some(Tok::Plus) => negate = false,
                Some(Tok::Minus) => negate = true,
                None => break,
                Some(_) => return self.err("expected `+`, `-` or end of expression"),
            }
            self.pos += 1;
        }
        Ok(out)
    }

    fn term(&mut self) -> Result<(Word, Scalar)> {
        if let Some(Tok::Int(_)) = self.peek() {
            let c = self.coeff()?;
            if self.peek() == Some(&Tok::Star) {
                self.pos += 1;
                let w = self.word()?;
                return Ok((w, c));
            }
            return Ok((Vec::new(), c));
        }
        let w = self.word()?;
        Ok((w, self.field.one()))
    }

    fn coeff(&mut self) -> Result<Scalar> {
        let num = self.int()?;
        let den = if self.peek() == Some(&Tok::Slash) {
            self.pos += 1;
            let d = self.int()?;
            if d == BigInt::from(0) {
                return self.err("zero denominator");
            }
            d
        } else {
            BigInt::from(1)
        };
        match self.field.from_ratio(&num, &den) {
            Ok(c) => Ok(c),
            Err(_) => self.err("denominator vanishes in the field"),
        }
    }

    fn int(&mut self) -> Result<BigInt> {
        match self.peek() {
            Some(Tok::Int(s)) => {
                let v: BigInt = s.parse().expect("lexer yields digits");
                self.pos += 1;
                Ok(v)
            }
            _ => self.err("expected an integer"),
        }
    }

    fn word(&mut self) -> Result<Word> {
        let mut w = self.atom()?;
        while self.peek() == Some(&Tok::Star) {
            self.pos += 1;
            w.extend(self.atom()?);
        }
        Ok(w)
    }

    fn atom(&mut self) -> Result<Word> {
        let name = match self.peek() {
            Some(Tok::Ident(s)) => s.clone(),
            _ => return self.err("expected a generator name"),
        };
        let Some(g) = self.names.iter().position(|n| *n == name) else {
            return Err(Error::UnknownGenerator(name));
        };
        self.pos += 1;
        let mut power = 1usize;
        if self.peek() == Some(&Tok::Caret) {
            self.pos += 1;
            match self.peek() {
                Some(Tok::Int(s)) => match s.parse::<usize>() {
                    Ok(p) if p >= 1 => {
                        power = p;
                        self.pos += 1;
                    }
                    _ => return self.err("exponent must be a positive integer"),
                },
                _ => return self.err("expected an exponent"),
            }
        }
        Ok(vec![g; power])
    }
}

/// Parses an expression over the named generators.
pub fn parse_expr(text: &str, names: &[String], field: Field) -> Result<NCPoly> {
    let toks = lex(text)?;
    let end_line = 1 + text.matches('\n').count();
    let end_col = text
        .rsplit('\n')
        .next()
        .map(|s| s.chars().count())
        .unwrap_or(0)
        + 1;
    if toks.is_empty() {
        return Err(Error::Syntax {
            line: end_line,
            column: end_col,
            message: "empty expression".to_string(),
        });
    }
    let mut p = Parser {
        toks,
        pos: 0,
        names,
        field,
        end: (end_line, end_col),
    };
    p.expr()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names() -> Vec<String> {
        vec!["x".to_string(), "y".to_string()]
    }

    #[test]
    fn parses_words_powers_and_coefficients() {
        let q = Field::Rational;
        let p = parse_expr("x*y - 2*y^2 + 1/3*x", &names(), q).unwrap();
        assert_eq!(p.terms.len(), 3);
        assert_eq!(p.terms[&vec![0, 1]], q.one());
        assert_eq!(p.terms[&vec![1, 1]], q.from_i64(-2));
        assert_eq!(p.terms[&vec![0]].to_string(), "1/3");
    }

    #[test]
    fn zero_and_cancellation() {
        let q = Field::Rational;
        assert!(parse_expr("0", &names(), q).unwrap().is_zero());
        assert!(parse_expr("x*y - x*y", &names(), q).unwrap().is_zero());
    }

    #[test]
    fn syntax_errors_carry_positions() {
        let q = Field::Rational;
        match parse_expr("x*\n  +y", &names(), q) {
            Err(Error::Syntax { line, column, .. }) => assert_eq!((line, column), (2, 3)),
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            parse_expr("x^0", &names(), q),
            Err(Error::Syntax { .. })
        ));
        assert!(matches!(
            parse_expr("x $ y", &names(), q),
            Err(Error::Syntax { .. })
        ));
        assert_eq!(
            parse_expr("z", &names(), q),
            Err(Error::UnknownGenerator("z".into()))
        );
    }

    #[test]
    fn render_roundtrips() {
        let q = Field::Rational;
        let p = parse_expr("x^2*y - 3/2*y*x + 4", &names(), q).unwrap();
        let again = parse_expr(&p.render(&names()), &names(), q).unwrap();
        assert_eq!(p, again);
    }
}
