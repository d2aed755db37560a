//! Expression syntax for polynomials.
//!
//! Juxtaposition (or `*`) is the product, `+`/`-` are sums, `^n` is a power
//! and parentheses group. Generator names are matched longest-first, so with
//! generators `b, c, b1, b2` the input `b1bc` reads as `b1 * b * c`.
//! Numbers are integers or fractions `p/q`.

use std::fmt::Write as _;
use std::sync::Arc;

use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::freealg::{Poly, Signature, Word};
use crate::scalar::{parse_rational, Field, Scalar};

/// What the expression evaluator needs from an algebra.
pub trait ExprAlgebra {
    type Elem: Clone;
    fn field(&self) -> Field;
    fn generator_names(&self) -> Vec<&str>;
    fn scalar(&self, c: Scalar) -> Self::Elem;
    fn generator(&self, i: usize) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
}

impl ExprAlgebra for Arc<Signature> {
    type Elem = Poly;
    fn field(&self) -> Field {
        Signature::field(self)
    }
    fn generator_names(&self) -> Vec<&str> {
        self.generators().iter().map(|g| g.name.as_str()).collect()
    }
    fn scalar(&self, c: Scalar) -> Poly {
        Poly::constant(self, c)
    }
    fn generator(&self, i: usize) -> Poly {
        Poly::generator(self, i)
    }
    fn add(&self, a: &Poly, b: &Poly) -> Poly {
        a + b
    }
    fn mul(&self, a: &Poly, b: &Poly) -> Poly {
        a * b
    }
    fn neg(&self, a: &Poly) -> Poly {
        -a
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Number(BigRational),
    Name(usize),
    Plus,
    Minus,
    Star,
    Caret,
    Open,
    Close,
}

fn tokenize(input: &str, names: &[&str]) -> Result<Vec<Token>> {
    let bytes = input.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let ch = bytes[i] as char;
        match ch {
            c if c.is_whitespace() => i += 1,
            '+' => {
                out.push(Token::Plus);
                i += 1
            }
            '-' => {
                out.push(Token::Minus);
                i += 1
            }
            '*' => {
                out.push(Token::Star);
                i += 1
            }
            '^' => {
                out.push(Token::Caret);
                i += 1
            }
            '(' => {
                out.push(Token::Open);
                i += 1
            }
            ')' => {
                out.push(Token::Close);
                i += 1
            }
            c if c.is_ascii_digit() => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                // fraction only when a digit follows the slash
                if i + 1 < bytes.len() && bytes[i] == b'/' && bytes[i + 1].is_ascii_digit() {
                    i += 1;
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                }
                out.push(Token::Number(parse_rational(&input[start..i])?));
            }
            _ => {
                let rest = &input[i..];
                let best = names
                    .iter()
                    .enumerate()
                    .filter(|(_, n)| rest.starts_with(**n))
                    .max_by_key(|(_, n)| n.len());
                match best {
                    Some((g, n)) => {
                        out.push(Token::Name(g));
                        i += n.len();
                    }
                    None => {
                        let word: String = rest
                            .chars()
                            .take_while(|c| c.is_alphanumeric() || *c == '_')
                            .collect();
                        let shown = if word.is_empty() { rest.chars().take(1).collect() } else { word };
                        return Err(Error::Parse(format!("unknown symbol {shown:?} in {input:?}")));
                    }
                }
            }
        }
    }
    Ok(out)
}

struct Parser<'a, A: ExprAlgebra> {
    alg: &'a A,
    tokens: Vec<Token>,
    pos: usize,
    source: &'a str,
}

impl<'a, A: ExprAlgebra> Parser<'a, A> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn err(&self, what: &str) -> Error {
        Error::Parse(format!("{what} at token {} in {:?}", self.pos, self.source))
    }

    fn expr(&mut self) -> Result<A::Elem> {
        let mut negate = false;
        match self.peek() {
            Some(Token::Minus) => {
                negate = true;
                self.pos += 1
            }
            Some(Token::Plus) => self.pos += 1,
            _ => {}
        }
        let first = self.term()?;
        let mut acc = if negate { self.alg.neg(&first) } else { first };
        loop {
            match self.peek() {
                Some(Token::Plus) => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = self.alg.add(&acc, &t);
                }
                Some(Token::Minus) => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = self.alg.add(&acc, &self.alg.neg(&t));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<A::Elem> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(Token::Star) => {
                    self.pos += 1;
                    let f = self.factor()?;
                    acc = self.alg.mul(&acc, &f);
                }
                Some(Token::Number(_)) | Some(Token::Name(_)) | Some(Token::Open) => {
                    let f = self.factor()?;
                    acc = self.alg.mul(&acc, &f);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<A::Elem> {
        let base = self.atom()?;
        if let Some(Token::Caret) = self.peek() {
            self.pos += 1;
            let e = match self.peek() {
                Some(Token::Number(n)) if n.is_integer() => {
                    let e: u32 = n.to_integer().try_into().map_err(|_| self.err("bad exponent"))?;
                    e
                }
                _ => return Err(self.err("expected a nonnegative integer exponent")),
            };
            self.pos += 1;
            let mut acc = self.alg.scalar(self.alg.field().one());
            for _ in 0..e {
                acc = self.alg.mul(&acc, &base);
            }
            return Ok(acc);
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<A::Elem> {
        match self.tokens.get(self.pos).cloned() {
            Some(Token::Number(q)) => {
                self.pos += 1;
                Ok(self.alg.scalar(self.alg.field().from_rational(&q)?))
            }
            Some(Token::Name(g)) => {
                self.pos += 1;
                Ok(self.alg.generator(g))
            }
            Some(Token::Open) => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(&Token::Close) {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(e)
            }
            _ => Err(self.err("expected a number, generator or '('")),
        }
    }
}

/// Parses an expression in the given algebra.
pub fn parse_expr<A: ExprAlgebra>(alg: &A, input: &str) -> Result<A::Elem> {
    let names = alg.generator_names();
    let tokens = tokenize(input, &names)?;
    if tokens.is_empty() {
        return Err(Error::Parse("empty expression".into()));
    }
    let mut p = Parser { alg, tokens, pos: 0, source: input };
    let e = p.expr()?;
    if p.pos != p.tokens.len() {
        return Err(p.err("trailing input"));
    }
    Ok(e)
}

impl Poly {
    pub fn parse(sig: &Arc<Signature>, input: &str) -> Result<Poly> {
        parse_expr(sig, input)
    }
}

/// Renders a word with repeated letters folded into powers: `a2 a2 b` is
/// printed `a2^2 b`.
pub fn format_word(names: &[&str]) -> String {
    let mut out = String::new();
    let mut i = 0;
    while i < names.len() {
        let mut j = i;
        while j < names.len() && names[j] == names[i] {
            j += 1;
        }
        if !out.is_empty() {
            out.push(' ');
        }
        out.push_str(names[i]);
        if j - i > 1 {
            let _ = write!(out, "^{}", j - i);
        }
        i = j;
    }
    out
}

/// Renders a list of `(word names, coefficient)` terms in the given order.
pub fn format_terms<'a>(terms: impl Iterator<Item = (Vec<&'a str>, &'a Scalar)>) -> String {
    let mut out = String::new();
    for (names, c) in terms {
        let neg = c.is_negative();
        let abs = if neg { -c } else { c.clone() };
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let word = format_word(&names);
        if word.is_empty() {
            let _ = write!(out, "{abs}");
        } else if abs.is_one() {
            out.push_str(&word);
        } else {
            let _ = write!(out, "{abs} {word}");
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

impl std::fmt::Display for Poly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let sig = self.signature();
        f.write_str(&format_terms(self.terms().map(|(w, c)| (sig.names(&w.0), c))))
    }
}

/// Structured form: `(coefficient string, generator names)` per term in
/// canonical order.
pub fn structured_terms(p: &Poly) -> Vec<(String, Vec<String>)> {
    let sig = p.signature();
    p.terms()
        .map(|(w, c)| (c.to_string(), sig.names(&w.0).into_iter().map(String::from).collect()))
        .collect()
}

/// Inverse of [`structured_terms`].
pub fn poly_from_structured(sig: &Arc<Signature>, terms: &[(String, Vec<String>)]) -> Result<Poly> {
    let mut p = Poly::zero(sig);
    for (c, names) in terms {
        let coef = sig.field().parse(c)?;
        let word = names
            .iter()
            .map(|n| {
                sig.index_of(n)
                    .map(|g| g as u32)
                    .ok_or_else(|| Error::Structure(format!("unknown generator {n:?}")))
            })
            .collect::<Result<Vec<u32>>>()?;
        p.add_term(Word(word), coef);
    }
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn longest_match_tokenization() {
        let dga = fixtures::nc1();
        let sig = dga.signature();
        let p = Poly::parse(sig, "b1bc").unwrap();
        assert_eq!(p, Poly::from_named(sig, &[(1, &["b1", "b", "c"])]));
        let q = Poly::parse(sig, "bcbc").unwrap();
        assert_eq!(q, Poly::from_named(sig, &[(1, &["b", "c", "b", "c"])]));
    }

    #[test]
    fn sums_powers_and_fractions() {
        let dga = fixtures::ac2();
        let sig = dga.signature();
        let p = Poly::parse(sig, "b1 - a1 b1 a2 + b2 a2^2").unwrap();
        let expected = Poly::from_named(
            sig,
            &[(1, &["b1"]), (-1, &["a1", "b1", "a2"]), (1, &["b2", "a2", "a2"])],
        );
        assert_eq!(p, expected);
        let r = Poly::parse(sig, "3/4 (a1 + a2) - 1/4 a1 * 3").unwrap();
        assert_eq!(r, Poly::parse(sig, "3/4 a2").unwrap());
    }

    #[test]
    fn display_roundtrip() {
        let dga = fixtures::ac2();
        let sig = dga.signature();
        let p = Poly::parse(sig, "b1 - a1 b1 a2 + b2 a2^2 - 5/3").unwrap();
        assert_eq!(p.to_string(), "-5/3 + b1 - a1 b1 a2 + b2 a2^2");
        assert_eq!(Poly::parse(sig, &p.to_string()).unwrap(), p);
        assert_eq!(Poly::zero(sig).to_string(), "0");
    }

    #[test]
    fn parse_errors() {
        let dga = fixtures::nc1();
        let sig = dga.signature();
        assert!(Poly::parse(sig, "").is_err());
        assert!(Poly::parse(sig, "x").is_err());
        assert!(Poly::parse(sig, "(b").is_err());
        assert!(Poly::parse(sig, "b^").is_err());
        assert!(Poly::parse(sig, "b +").is_err());
    }

    #[test]
    fn structured_roundtrip() {
        let dga = fixtures::nc1();
        let sig = dga.signature();
        let p = Poly::parse(sig, "2 b1 b - 1/2 c + 7").unwrap();
        let s = structured_terms(&p);
        assert_eq!(poly_from_structured(sig, &s).unwrap(), p);
    }
}
