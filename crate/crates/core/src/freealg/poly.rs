use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_rational::BigRational;

use super::degree::Word;
use super::signature::Signature;
use crate::error::{Error, Result};
use crate::scalar::{Field, Scalar};

/// Map key carrying the cached `nu` of its word so that map order is the
/// canonical monomial order: `nu`, then length, then lexicographic.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub(crate) struct Mono {
    pub nu: u64,
    pub word: Word,
}

/// Grading class of a polynomial.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Grading {
    /// The zero polynomial, which lies in every degree.
    Any,
    Degree(i64),
    Mixed,
}

/// Element of the free algebra over a [`Signature`]: a finite map from words
/// to nonzero scalars.
#[derive(Clone)]
pub struct Poly {
    sig: Arc<Signature>,
    terms: BTreeMap<Mono, Scalar>,
}

pub fn same_signature(a: &Arc<Signature>, b: &Arc<Signature>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl Poly {
    pub fn zero(sig: &Arc<Signature>) -> Poly {
        Poly { sig: sig.clone(), terms: BTreeMap::new() }
    }

    pub fn one(sig: &Arc<Signature>) -> Poly {
        Poly::constant(sig, sig.field().one())
    }

    pub fn constant(sig: &Arc<Signature>, c: Scalar) -> Poly {
        Poly::monomial(sig, Word::unit(), c)
    }

    pub fn generator(sig: &Arc<Signature>, g: usize) -> Poly {
        assert!(g < sig.len(), "generator index {g} out of range");
        Poly::monomial(sig, Word::letter(g as u32), sig.field().one())
    }

    pub fn monomial(sig: &Arc<Signature>, word: Word, c: Scalar) -> Poly {
        let mut p = Poly::zero(sig);
        p.add_term(word, c);
        p
    }

    pub fn from_terms(sig: &Arc<Signature>, terms: impl IntoIterator<Item = (Word, Scalar)>) -> Poly {
        let mut p = Poly::zero(sig);
        for (w, c) in terms {
            p.add_term(w, c);
        }
        p
    }

    /// Builds a polynomial from generator names; panics on unknown names.
    /// Intended for fixtures and tests.
    pub fn from_named(sig: &Arc<Signature>, terms: &[(i64, &[&str])]) -> Poly {
        let field = sig.field();
        Poly::from_terms(
            sig,
            terms.iter().map(|(c, names)| {
                let word = names
                    .iter()
                    .map(|n| sig.index_of(n).unwrap_or_else(|| panic!("unknown generator {n}")) as u32)
                    .collect::<Vec<_>>();
                (Word(word), field.from_i64(*c))
            }),
        )
    }

    pub fn signature(&self) -> &Arc<Signature> {
        &self.sig
    }

    pub fn field(&self) -> Field {
        self.sig.field()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending canonical order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Word, &Scalar)> + '_ {
        self.terms.iter().map(|(m, c)| (&m.word, c))
    }

    pub(crate) fn mono_terms(&self) -> impl DoubleEndedIterator<Item = (&Mono, &Scalar)> + '_ {
        self.terms.iter()
    }

    pub fn coefficient(&self, word: &Word) -> Scalar {
        let key = self.key(word.clone());
        self.terms.get(&key).cloned().unwrap_or_else(|| self.field().zero())
    }

    fn key(&self, word: Word) -> Mono {
        Mono { nu: self.sig.degree_fn().word_nu(&word.0), word }
    }

    /// Adds `c * word` in place, keeping the map free of zero coefficients.
    pub fn add_term(&mut self, word: Word, c: Scalar) {
        debug_assert!(word.0.iter().all(|&g| (g as usize) < self.sig.len()));
        if c.is_zero() {
            return;
        }
        let key = self.key(word);
        self.add_mono(key, c);
    }

    pub(crate) fn add_mono(&mut self, key: Mono, c: Scalar) {
        use std::collections::btree_map::Entry;
        match self.terms.entry(key) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let s = o.get() + &c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    /// `nu` of the polynomial; `None` encodes minus infinity.
    pub fn nu(&self) -> Option<u64> {
        self.terms.keys().next_back().map(|m| m.nu)
    }

    /// Largest action over the monomials; `None` encodes minus infinity.
    pub fn action(&self) -> Option<BigRational> {
        self.terms.keys().map(|m| self.sig.word_action(&m.word.0)).max()
    }

    pub fn grading(&self) -> Grading {
        let mut degrees = self.terms.keys().map(|m| self.sig.word_degree(&m.word.0));
        match degrees.next() {
            None => Grading::Any,
            Some(d) => {
                if degrees.all(|e| e == d) {
                    Grading::Degree(d)
                } else {
                    Grading::Mixed
                }
            }
        }
    }

    /// True when every monomial has degree `d` (vacuous for zero).
    pub fn is_homogeneous_of(&self, d: i64) -> bool {
        let d = self.sig.reduce_degree(d);
        self.terms.keys().all(|m| self.sig.word_degree(&m.word.0) == d)
    }

    /// The sub-polynomial of monomials attaining `nu(self)`.
    pub fn leading_part(&self) -> Result<Poly> {
        let top = self
            .nu()
            .ok_or_else(|| Error::EmptyInput("leading part of the zero polynomial".into()))?;
        Ok(self.filter(|m| m.nu == top))
    }

    pub(crate) fn filter(&self, keep: impl Fn(&Mono) -> bool) -> Poly {
        Poly {
            sig: self.sig.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| keep(m))
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.word.is_empty())
    }

    pub fn constant_term(&self) -> Scalar {
        self.coefficient(&Word::unit())
    }

    pub fn involves(&self, g: usize) -> bool {
        self.terms.keys().any(|m| m.word.0.contains(&(g as u32)))
    }

    /// Multiplies each odd-degree monomial by `-1`. For `v` with `d(v) = 0`
    /// this gives `d(v.twist() * y) = v * d(y)`.
    pub fn twist(&self) -> Poly {
        let mut out = Poly::zero(&self.sig);
        for (m, c) in &self.terms {
            let c = if self.sig.word_is_odd(&m.word.0) { -c } else { c.clone() };
            out.terms.insert(m.clone(), c);
        }
        out
    }

    /// Homogeneous component of degree `d` (reduced mod `mu`).
    pub fn component(&self, d: i64) -> Poly {
        let d = self.sig.reduce_degree(d);
        self.filter(|m| self.sig.word_degree(&m.word.0) == d)
    }

    pub fn scale(&self, c: &Scalar) -> Poly {
        if c.is_zero() {
            return Poly::zero(&self.sig);
        }
        Poly {
            sig: self.sig.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one(&self.sig);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Re-expresses the polynomial in `target`, shifting generator indices by
    /// `offset`. Used for free products.
    pub fn embed(&self, target: &Arc<Signature>, offset: u32) -> Poly {
        Poly::from_terms(
            target,
            self.terms().map(|(w, c)| (Word(w.0.iter().map(|g| g + offset).collect()), c.clone())),
        )
    }

    fn check_same(&self, other: &Poly) -> Result<()> {
        if same_signature(&self.sig, &other.sig) {
            Ok(())
        } else {
            Err(Error::Structure("polynomials belong to different signatures".into()))
        }
    }

    pub fn checked_add(&self, other: &Poly) -> Result<Poly> {
        self.check_same(other)?;
        Ok(self + other)
    }

    pub fn checked_sub(&self, other: &Poly) -> Result<Poly> {
        self.check_same(other)?;
        Ok(self - other)
    }

    pub fn checked_mul(&self, other: &Poly) -> Result<Poly> {
        self.check_same(other)?;
        Ok(self * other)
    }

    pub fn checked_scale(&self, c: &Scalar) -> Result<Poly> {
        if !self.field().contains(c) {
            return Err(Error::Structure(format!("scalar {c} is not in {}", self.field())));
        }
        Ok(self.scale(c))
    }

    fn assert_same(&self, other: &Poly) {
        assert!(
            same_signature(&self.sig, &other.sig),
            "polynomial arithmetic across different signatures"
        );
    }
}

pub fn poly_add(p: &Poly, q: &Poly) -> Result<Poly> {
    p.checked_add(q)
}

pub fn poly_mul(p: &Poly, q: &Poly) -> Result<Poly> {
    p.checked_mul(q)
}

pub fn poly_scale(c: &Scalar, p: &Poly) -> Result<Poly> {
    p.checked_scale(c)
}

impl PartialEq for Poly {
    fn eq(&self, other: &Self) -> bool {
        same_signature(&self.sig, &other.sig) && self.terms == other.terms
    }
}

impl Eq for Poly {}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        self.assert_same(rhs);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_mono(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self.assert_same(rhs);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_mono(m.clone(), -c);
        }
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            sig: self.sig.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        self.assert_same(rhs);
        let mut out = Poly::zero(&self.sig);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                let key = Mono { nu: ma.nu + mb.nu, word: ma.word.concat(&mb.word) };
                out.add_mono(key, ca * cb);
            }
        }
        out
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr for Poly {
            type Output = Poly;
            fn $f(self, rhs: Poly) -> Poly {
                (&self).$f(&rhs)
            }
        }
        impl $tr<&Poly> for Poly {
            type Output = Poly;
            fn $f(self, rhs: &Poly) -> Poly {
                (&self).$f(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freealg::GeneratorInfo;

    fn nc1() -> Arc<Signature> {
        let q = |n: i64| BigRational::from_integer(n.into());
        Signature::new(
            Field::Rational,
            0,
            vec![
                GeneratorInfo::new("b", 1, q(1)),
                GeneratorInfo::new("c", -1, q(1)),
                GeneratorInfo::new("b1", 1, q(3)),
                GeneratorInfo::new("b2", 1, q(3)),
            ],
        )
        .unwrap()
    }

    #[test]
    fn unit_is_multiplicative_identity() {
        let sig = nc1();
        let x = Poly::from_named(&sig, &[(2, &["b", "c"]), (-1, &["b1"])]);
        assert_eq!(&Poly::one(&sig) * &x, x);
        assert_eq!(&x * &Poly::one(&sig), x);
    }

    #[test]
    fn concatenation_product() {
        let sig = nc1();
        let bc = Poly::from_named(&sig, &[(1, &["b", "c"])]);
        assert_eq!(&bc * &bc, Poly::from_named(&sig, &[(1, &["b", "c", "b", "c"])]));
        assert!((&bc + &(-&bc)).is_zero());
    }

    #[test]
    fn grading_cases() {
        let sig = nc1();
        assert_eq!(Poly::constant(&sig, Field::Rational.from_i64(5)).grading(), Grading::Degree(0));
        assert_eq!(Poly::from_named(&sig, &[(1, &["b", "c", "b2"])]).grading(), Grading::Degree(1));
        assert_eq!(Poly::from_named(&sig, &[(1, &["b"]), (1, &["b", "c"])]).grading(), Grading::Mixed);
        assert_eq!(Poly::zero(&sig).grading(), Grading::Any);
    }

    #[test]
    fn action_and_nu() {
        let sig = nc1();
        assert_eq!(Poly::zero(&sig).action(), None);
        assert_eq!(Poly::one(&sig).action(), Some(BigRational::from_integer(0.into())));
        let x = Poly::from_named(&sig, &[(1, &["b", "c"]), (1, &["b1"])]);
        assert_eq!(x.action(), Some(BigRational::from_integer(3.into())));
        assert_eq!(Poly::from_named(&sig, &[(1, &["b", "c", "b", "c"])]).nu(), Some(4));
        assert_eq!(Poly::zero(&sig).nu(), None);
    }

    #[test]
    fn leading_part_cases() {
        let sig = nc1();
        let x = Poly::from_named(&sig, &[(1, &["b", "c"]), (1, &["b1"])]);
        assert_eq!(x.leading_part().unwrap(), Poly::from_named(&sig, &[(1, &["b1"])]));
        let m = Poly::from_named(&sig, &[(3, &["c", "b"])]);
        assert_eq!(m.leading_part().unwrap(), m);
        let bc = Poly::from_named(&sig, &[(1, &["b", "c"])]);
        assert!(matches!((&bc - &bc).leading_part(), Err(Error::EmptyInput(_))));
    }

    #[test]
    fn mismatched_signatures_rejected() {
        let a = nc1();
        let b = Signature::new(Field::prime(5).unwrap(), 0, vec![]).unwrap();
        let x = Poly::one(&a);
        let y = Poly::one(&b);
        assert!(matches!(poly_add(&x, &y), Err(Error::Structure(_))));
        assert!(matches!(poly_mul(&x, &y), Err(Error::Structure(_))));
        assert!(poly_scale(&Field::prime(5).unwrap().one(), &x).is_err());
    }

    #[test]
    fn twist_flips_odd_monomials() {
        let sig = nc1();
        let x = Poly::from_named(&sig, &[(1, &["b"]), (1, &["b", "c"])]);
        assert_eq!(x.twist(), Poly::from_named(&sig, &[(-1, &["b"]), (1, &["b", "c"])]));
    }
}
