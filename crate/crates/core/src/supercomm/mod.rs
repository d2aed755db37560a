//! Graded-commutative algebras: `ab = (-1)^{|a||b|} ba`, and odd elements
//! square to zero outside characteristic 2.
//!
//! This is a separate normal-form engine, not a quotient of [`crate::freealg`].

mod dga;
mod witness;

pub use dga::{
    example14_table, sc_char_vanishing, sc_is_boundary_bruteforce, ScCertificate, ScDga, ScValidationReport,
    TableLine,
};
pub use witness::{acyclicity_witness_char2, acyclicity_witness_char_ne2, TrivialityCertificate};

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_rational::BigRational;
use num_traits::Signed;

use crate::error::{Error, Result};
use crate::freealg::{check_mu, check_names, reduce_degree};
use crate::scalar::{Field, Scalar};
use crate::text::{format_terms, parse_expr, ExprAlgebra};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScGenerator {
    pub name: String,
    pub degree: i64,
    pub action: Option<BigRational>,
}

impl ScGenerator {
    pub fn new(name: impl Into<String>, degree: i64, action: Option<BigRational>) -> Self {
        ScGenerator { name: name.into(), degree, action }
    }
}

/// Field, grading modulus and generators of a graded-commutative algebra.
/// Actions are optional but must be given for all generators or none.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScSignature {
    field: Field,
    mu: u64,
    generators: Vec<ScGenerator>,
}

impl ScSignature {
    pub fn new(field: Field, mu: u64, generators: Vec<ScGenerator>) -> Result<Arc<ScSignature>> {
        check_mu(field, mu)?;
        check_names(generators.iter().map(|g| g.name.as_str()))?;
        let with_action = generators.iter().filter(|g| g.action.is_some()).count();
        if with_action != 0 && with_action != generators.len() {
            return Err(Error::Validation("actions must be given for every generator or for none".into()));
        }
        if let Some(g) = generators.iter().find(|g| g.action.as_ref().is_some_and(|a| !a.is_positive())) {
            return Err(Error::Validation(format!("generator {} has non-positive action", g.name)));
        }
        let generators = generators
            .into_iter()
            .map(|mut g| {
                g.degree = reduce_degree(mu, g.degree);
                g
            })
            .collect();
        Ok(Arc::new(ScSignature { field, mu, generators }))
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn mu(&self) -> u64 {
        self.mu
    }

    pub fn generators(&self) -> &[ScGenerator] {
        &self.generators
    }

    pub fn generator(&self, i: usize) -> &ScGenerator {
        &self.generators[i]
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g.name == name)
    }

    pub fn has_actions(&self) -> bool {
        self.generators.first().is_some_and(|g| g.action.is_some())
    }

    pub fn is_odd(&self, g: u32) -> bool {
        self.generators[g as usize].degree.rem_euclid(2) == 1
    }

    pub fn word_degree(&self, w: &ScWord) -> i64 {
        reduce_degree(self.mu, w.0.iter().map(|&g| self.generators[g as usize].degree).sum())
    }

    pub fn word_is_odd(&self, w: &ScWord) -> bool {
        w.0.iter().filter(|&&g| self.is_odd(g)).count() % 2 == 1
    }

    pub fn word_action(&self, w: &ScWord) -> Option<BigRational> {
        w.0.iter().try_fold(BigRational::from_integer(0.into()), |acc, &g| {
            self.generators[g as usize].action.as_ref().map(|a| acc + a)
        })
    }

    pub fn reduce_degree(&self, d: i64) -> i64 {
        reduce_degree(self.mu, d)
    }

    pub fn names(&self, w: &ScWord) -> Vec<&str> {
        w.0.iter().map(|&g| self.generators[g as usize].name.as_str()).collect()
    }

    /// Squares of odd generators vanish unless the characteristic is 2.
    fn odd_squares_vanish(&self) -> bool {
        self.field.characteristic() != 2
    }

    /// Every normal word of length at most `max_len`, shortlex ordered.
    pub fn normal_words_up_to(&self, max_len: usize) -> Vec<ScWord> {
        let n = self.len() as u32;
        let mut out = vec![ScWord::unit()];
        let mut frontier = vec![ScWord::unit()];
        for _ in 0..max_len {
            let mut next = Vec::new();
            for w in &frontier {
                let start = w.0.last().copied().unwrap_or(0);
                for g in start..n {
                    if w.0.last() == Some(&g) && self.is_odd(g) && self.odd_squares_vanish() {
                        continue;
                    }
                    let mut v = w.0.clone();
                    v.push(g);
                    next.push(ScWord(v));
                }
            }
            out.extend(next.iter().cloned());
            frontier = next;
        }
        out.sort();
        out
    }
}

/// A graded-commutative monomial: generator indices in nondecreasing order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct ScWord(Vec<u32>);

impl ScWord {
    pub fn unit() -> ScWord {
        ScWord(Vec::new())
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl Ord for ScWord {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for ScWord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Normal form of `u * v`: the merged word and whether the sign is negative,
/// or `None` when the product vanishes.
fn mul_words(sig: &ScSignature, u: &ScWord, v: &ScWord) -> Option<(ScWord, bool)> {
    let mut out = Vec::with_capacity(u.len() + v.len());
    let mut negative = false;
    // odd letters of u not yet merged; each odd letter of v that overtakes
    // them picks up one sign per letter
    let (mut i, mut j) = (0, 0);
    let odd_in_u: usize = u.0.iter().filter(|&&g| sig.is_odd(g)).count();
    let mut odd_u_taken = 0;
    while i < u.len() || j < v.len() {
        let take_u = j == v.len() || (i < u.len() && u.0[i] <= v.0[j]);
        if take_u {
            if sig.is_odd(u.0[i]) {
                odd_u_taken += 1;
            }
            out.push(u.0[i]);
            i += 1;
        } else {
            let g = v.0[j];
            if sig.is_odd(g) {
                if sig.odd_squares_vanish() && u.0.binary_search(&g).is_ok() {
                    return None;
                }
                if (odd_in_u - odd_u_taken) % 2 == 1 {
                    negative = !negative;
                }
            }
            out.push(g);
            j += 1;
        }
    }
    Some((ScWord(out), negative))
}

/// Element of a graded-commutative algebra in normal form.
#[derive(Clone)]
pub struct ScPoly {
    sig: Arc<ScSignature>,
    terms: BTreeMap<ScWord, Scalar>,
}

fn same_sc_signature(a: &Arc<ScSignature>, b: &Arc<ScSignature>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl ScPoly {
    pub fn zero(sig: &Arc<ScSignature>) -> ScPoly {
        ScPoly { sig: sig.clone(), terms: BTreeMap::new() }
    }

    pub fn one(sig: &Arc<ScSignature>) -> ScPoly {
        ScPoly::constant(sig, sig.field().one())
    }

    pub fn constant(sig: &Arc<ScSignature>, c: Scalar) -> ScPoly {
        let mut p = ScPoly::zero(sig);
        p.add_term(ScWord::unit(), c);
        p
    }

    pub fn generator(sig: &Arc<ScSignature>, g: usize) -> ScPoly {
        assert!(g < sig.len(), "generator index {g} out of range");
        let mut p = ScPoly::zero(sig);
        p.add_term(ScWord(vec![g as u32]), sig.field().one());
        p
    }

    /// `c` times the normal form of the product of the given generators in
    /// the given order (which may be zero or carry a sign).
    pub fn product_of(sig: &Arc<ScSignature>, gens: &[u32], c: Scalar) -> ScPoly {
        let mut acc = ScPoly::constant(sig, c);
        for &g in gens {
            acc = &acc * &ScPoly::generator(sig, g as usize);
        }
        acc
    }

    pub fn parse(sig: &Arc<ScSignature>, input: &str) -> Result<ScPoly> {
        parse_expr(sig, input)
    }

    pub fn signature(&self) -> &Arc<ScSignature> {
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

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&ScWord, &Scalar)> + '_ {
        self.terms.iter()
    }

    pub fn coefficient(&self, w: &ScWord) -> Scalar {
        self.terms.get(w).cloned().unwrap_or_else(|| self.field().zero())
    }

    /// Adds `c * w` for a word already in normal form.
    pub fn add_term(&mut self, w: ScWord, c: Scalar) {
        debug_assert!(w.0.windows(2).all(|p| p[0] <= p[1]), "word not in normal form");
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(w) {
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

    pub fn max_len(&self) -> Option<usize> {
        self.terms.keys().map(|w| w.len()).max()
    }

    pub fn is_homogeneous_of(&self, d: i64) -> bool {
        let d = self.sig.reduce_degree(d);
        self.terms.keys().all(|w| self.sig.word_degree(w) == d)
    }

    /// The common degree of all monomials; `None` for zero or mixed input.
    pub fn degree(&self) -> Option<i64> {
        let mut it = self.terms.keys().map(|w| self.sig.word_degree(w));
        let d = it.next()?;
        it.all(|e| e == d).then_some(d)
    }

    pub fn component(&self, d: i64) -> ScPoly {
        let d = self.sig.reduce_degree(d);
        self.filter(|w| self.sig.word_degree(w) == d)
    }

    /// The even-degree and odd-degree parts.
    pub fn parity_split(&self) -> (ScPoly, ScPoly) {
        (self.filter(|w| !self.sig.word_is_odd(w)), self.filter(|w| self.sig.word_is_odd(w)))
    }

    fn filter(&self, keep: impl Fn(&ScWord) -> bool) -> ScPoly {
        ScPoly {
            sig: self.sig.clone(),
            terms: self.terms.iter().filter(|(w, _)| keep(w)).map(|(w, c)| (w.clone(), c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> ScPoly {
        if c.is_zero() {
            return ScPoly::zero(&self.sig);
        }
        ScPoly { sig: self.sig.clone(), terms: self.terms.iter().map(|(w, a)| (w.clone(), a * c)).collect() }
    }

    pub fn pow(&self, e: u32) -> ScPoly {
        let mut acc = ScPoly::one(&self.sig);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn checked_add(&self, other: &ScPoly) -> Result<ScPoly> {
        self.check_same(other)?;
        Ok(self + other)
    }

    pub fn checked_mul(&self, other: &ScPoly) -> Result<ScPoly> {
        self.check_same(other)?;
        Ok(self * other)
    }

    fn check_same(&self, other: &ScPoly) -> Result<()> {
        if same_sc_signature(&self.sig, &other.sig) {
            Ok(())
        } else {
            Err(Error::Structure("elements of different super-commutative algebras".into()))
        }
    }
}

pub fn sc_add(p: &ScPoly, q: &ScPoly) -> Result<ScPoly> {
    p.checked_add(q)
}

pub fn sc_mul(p: &ScPoly, q: &ScPoly) -> Result<ScPoly> {
    p.checked_mul(q)
}

impl PartialEq for ScPoly {
    fn eq(&self, other: &Self) -> bool {
        same_sc_signature(&self.sig, &other.sig) && self.terms == other.terms
    }
}

impl Eq for ScPoly {}

impl fmt::Display for ScPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_terms(self.terms.iter().map(|(w, c)| (self.sig.names(w), c))))
    }
}

impl fmt::Debug for ScPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ScPoly({self})")
    }
}

impl Add for &ScPoly {
    type Output = ScPoly;
    fn add(self, rhs: &ScPoly) -> ScPoly {
        assert!(same_sc_signature(&self.sig, &rhs.sig), "arithmetic across different algebras");
        let mut out = self.clone();
        for (w, c) in &rhs.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }
}

impl Sub for &ScPoly {
    type Output = ScPoly;
    fn sub(self, rhs: &ScPoly) -> ScPoly {
        self + &(-rhs)
    }
}

impl Neg for &ScPoly {
    type Output = ScPoly;
    fn neg(self) -> ScPoly {
        ScPoly { sig: self.sig.clone(), terms: self.terms.iter().map(|(w, c)| (w.clone(), -c)).collect() }
    }
}

impl Mul for &ScPoly {
    type Output = ScPoly;
    fn mul(self, rhs: &ScPoly) -> ScPoly {
        assert!(same_sc_signature(&self.sig, &rhs.sig), "arithmetic across different algebras");
        let mut out = ScPoly::zero(&self.sig);
        for (u, a) in &self.terms {
            for (v, b) in &rhs.terms {
                if let Some((w, neg)) = mul_words(&self.sig, u, v) {
                    let c = a * b;
                    out.add_term(w, if neg { -c } else { c });
                }
            }
        }
        out
    }
}

impl ExprAlgebra for Arc<ScSignature> {
    type Elem = ScPoly;
    fn field(&self) -> Field {
        ScSignature::field(self)
    }
    fn generator_names(&self) -> Vec<&str> {
        self.generators.iter().map(|g| g.name.as_str()).collect()
    }
    fn scalar(&self, c: Scalar) -> ScPoly {
        ScPoly::constant(self, c)
    }
    fn generator(&self, i: usize) -> ScPoly {
        ScPoly::generator(self, i)
    }
    fn add(&self, a: &ScPoly, b: &ScPoly) -> ScPoly {
        a + b
    }
    fn mul(&self, a: &ScPoly, b: &ScPoly) -> ScPoly {
        a * b
    }
    fn neg(&self, a: &ScPoly) -> ScPoly {
        -a
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use proptest::prelude::*;

    #[test]
    fn sign_rule_and_square_zero() {
        let dga = fixtures::ex14();
        let sig = dga.signature();
        let (c, b) = (dga.parse("c").unwrap(), dga.parse("b").unwrap());
        assert_eq!(&c * &b, -&(&b * &c));
        let b1 = dga.parse("b1").unwrap();
        assert!((&b1 * &b1).is_zero());
        assert_eq!(ScPoly::parse(sig, "c b").unwrap().to_string(), "-b c");
    }

    #[test]
    fn odd_squares_survive_in_char_two() {
        let sig = ScSignature::new(Field::prime(2).unwrap(), 0, vec![ScGenerator::new("x", 1, None)]).unwrap();
        let x = ScPoly::generator(&sig, 0);
        assert_eq!((&x * &x).to_string(), "x^2");
    }

    #[test]
    fn even_generators_commute_freely() {
        let sig = ScSignature::new(
            Field::Rational,
            0,
            vec![ScGenerator::new("e", 0, None), ScGenerator::new("o", 1, None), ScGenerator::new("p", 2, None)],
        )
        .unwrap();
        let p = ScPoly::parse(&sig, "p e o e").unwrap();
        assert_eq!(p.to_string(), "e^2 o p");
    }

    #[test]
    fn normal_word_enumeration() {
        let dga = fixtures::ex14();
        let sig = dga.signature();
        // four odd generators: subsets only
        assert_eq!(sig.normal_words_up_to(4).len(), 16);
        assert_eq!(sig.normal_words_up_to(9).len(), 16);
    }

    #[test]
    fn mismatched_signatures() {
        let a = fixtures::ex14();
        let sig = ScSignature::new(Field::Rational, 0, vec![]).unwrap();
        assert!(sc_mul(&a.parse("b").unwrap(), &ScPoly::one(&sig)).is_err());
        assert!(sc_add(&a.parse("b").unwrap(), &ScPoly::one(&sig)).is_err());
    }

    fn mixed_sig() -> Arc<ScSignature> {
        ScSignature::new(
            Field::Rational,
            0,
            vec![
                ScGenerator::new("x", 0, None),
                ScGenerator::new("y", 1, None),
                ScGenerator::new("z", 1, None),
                ScGenerator::new("w", 2, None),
                ScGenerator::new("v", -1, None),
            ],
        )
        .unwrap()
    }

    fn arb_word_product() -> impl Strategy<Value = (i64, Vec<u32>)> {
        (-3i64..4, prop::collection::vec(0u32..5, 0..5))
    }

    proptest! {
        #[test]
        fn normal_form_is_confluent(gens in prop::collection::vec(0u32..5, 0..6), split in 0usize..6) {
            // left-to-right product vs. bracketing at an arbitrary split point
            let sig = mixed_sig();
            let one = sig.field().one();
            let whole = ScPoly::product_of(&sig, &gens, one.clone());
            let k = split.min(gens.len());
            let left = ScPoly::product_of(&sig, &gens[..k], one.clone());
            let right = ScPoly::product_of(&sig, &gens[k..], one);
            prop_assert_eq!(&left * &right, whole);
        }

        #[test]
        fn graded_commutativity((ca, a) in arb_word_product(), (cb, b) in arb_word_product()) {
            let sig = mixed_sig();
            let f = sig.field();
            let p = ScPoly::product_of(&sig, &a, f.from_i64(ca));
            let q = ScPoly::product_of(&sig, &b, f.from_i64(cb));
            let odd = |g: &[u32]| g.iter().filter(|&&h| sig.is_odd(h)).count() % 2 == 1;
            let pq = &p * &q;
            let qp = &q * &p;
            if odd(&a) && odd(&b) {
                prop_assert_eq!(pq, -&qp);
            } else {
                prop_assert_eq!(pq, qp);
            }
        }

        #[test]
        fn associativity(a in arb_word_product(), b in arb_word_product(), c in arb_word_product()) {
            let sig = mixed_sig();
            let f = sig.field();
            let mk = |(k, g): (i64, Vec<u32>)| &ScPoly::product_of(&sig, &g, f.from_i64(k)) + &ScPoly::generator(&sig, 0);
            let (p, q, r) = (mk(a), mk(b), mk(c));
            prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
        }
    }
}
