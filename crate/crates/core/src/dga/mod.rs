//! Semifree DGA presentations: a free algebra together with the images of
//! the generators under the differential.

mod morphism;
mod tame;

pub use morphism::{pushforward_differential, ActionPolicy, AlgebraMorphism, ElementaryAuto};
pub use tame::{
    acyclic_stable_normal_form, euler_invariant, free_product, normalize_acyclic, stabilization,
    stabilization_named, StableNormalForm,
};

use std::fmt;
use std::sync::Arc;

use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::freealg::{same_signature, Poly, Signature, Word};
use crate::scalar::Field;

/// A semifree DGA: signature plus `d(a_i)` for every generator.
///
/// Construction only checks that the differential images live in the right
/// algebra; use [`Dga::validate`] for the DGA axioms.
#[derive(Clone, PartialEq, Eq)]
pub struct Dga {
    sig: Arc<Signature>,
    diff: Vec<Poly>,
}

impl Dga {
    pub fn new(sig: Arc<Signature>, diff: Vec<Poly>) -> Result<Dga> {
        if diff.len() != sig.len() {
            return Err(Error::Structure(format!(
                "{} differential images for {} generators",
                diff.len(),
                sig.len()
            )));
        }
        if diff.iter().any(|p| !same_signature(p.signature(), &sig)) {
            return Err(Error::Structure("differential image in a different algebra".into()));
        }
        Ok(Dga { sig, diff })
    }

    /// Builds a presentation from `(generator name, d(generator))` pairs;
    /// unlisted generators are cycles.
    pub fn with_differentials(sig: &Arc<Signature>, images: Vec<(&str, Poly)>) -> Result<Dga> {
        let mut diff = vec![Poly::zero(sig); sig.len()];
        for (name, p) in images {
            let i = sig
                .index_of(name)
                .ok_or_else(|| Error::Structure(format!("unknown generator {name:?}")))?;
            diff[i] = p;
        }
        Dga::new(sig.clone(), diff)
    }

    /// The DGA with no generators, i.e. the ground field.
    pub fn empty(field: Field, mu: u64) -> Result<Dga> {
        Dga::new(Signature::new(field, mu, vec![])?, vec![])
    }

    pub fn signature(&self) -> &Arc<Signature> {
        &self.sig
    }

    pub fn field(&self) -> Field {
        self.sig.field()
    }

    pub fn len(&self) -> usize {
        self.sig.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sig.is_empty()
    }

    pub fn diff_of(&self, g: usize) -> &Poly {
        &self.diff[g]
    }

    pub fn differentials(&self) -> &[Poly] {
        &self.diff
    }

    pub fn generator(&self, g: usize) -> Poly {
        Poly::generator(&self.sig, g)
    }

    pub fn parse(&self, expr: &str) -> Result<Poly> {
        Poly::parse(&self.sig, expr)
    }

    /// `d` extended by the graded Leibniz rule
    /// `d(ab) = d(a) b + (-1)^|a| a d(b)`.
    pub fn leibniz_extend(&self, p: &Poly) -> Result<Poly> {
        if !same_signature(p.signature(), &self.sig) {
            return Err(Error::Structure("element is not in the algebra of this DGA".into()));
        }
        Ok(self.d(p))
    }

    /// Infallible form of [`Dga::leibniz_extend`]; panics on a foreign element.
    pub fn d(&self, p: &Poly) -> Poly {
        assert!(same_signature(p.signature(), &self.sig), "element from a different algebra");
        let mut out = Poly::zero(&self.sig);
        for (word, c) in p.terms() {
            let w = word.as_slice();
            let mut odd_prefix = false;
            for j in 0..w.len() {
                let g = w[j];
                let dg = &self.diff[g as usize];
                if !dg.is_zero() {
                    let sign = if odd_prefix { -c } else { c.clone() };
                    for (m, e) in dg.terms() {
                        let mut nw = Vec::with_capacity(w.len() + m.len());
                        nw.extend_from_slice(&w[..j]);
                        nw.extend_from_slice(m.as_slice());
                        nw.extend_from_slice(&w[j + 1..]);
                        out.add_term(Word(nw), &sign * e);
                    }
                }
                odd_prefix ^= self.sig.is_odd(g);
            }
        }
        out
    }

    pub fn is_cycle(&self, p: &Poly) -> bool {
        self.d(p).is_zero()
    }

    /// Checks degree, condition (F) and `d^2 = 0` on every generator.
    pub fn validate(&self) -> ValidationReport {
        let sig = &self.sig;
        let mut violations = Vec::new();
        for (i, dg) in self.diff.iter().enumerate() {
            let info = sig.generator(i);
            let want = sig.reduce_degree(info.degree - 1);
            for (w, _) in dg.terms() {
                let got = sig.word_degree(w.as_slice());
                if got != want {
                    violations.push(Violation::Degree {
                        generator: info.name.clone(),
                        monomial: sig.names(w.as_slice()).join(" "),
                        degree: got,
                        expected: want,
                    });
                }
                let act = sig.word_action(w.as_slice());
                if act >= info.action {
                    violations.push(Violation::Filtration {
                        generator: info.name.clone(),
                        monomial: sig.names(w.as_slice()).join(" "),
                        monomial_action: act,
                        generator_action: info.action.clone(),
                    });
                }
            }
            let dd = self.d(dg);
            if !dd.is_zero() {
                violations.push(Violation::SquareNonzero { generator: info.name.clone(), value: dd.to_string() });
            }
        }
        ValidationReport { violations }
    }

    /// `Ok` for a valid presentation; otherwise the first violation, as a
    /// filtration error when it is one.
    pub fn require_valid(&self) -> Result<()> {
        let report = self.validate();
        match report.violations.iter().find(|v| matches!(v, Violation::Filtration { .. })) {
            Some(v) => Err(Error::Filtration(v.to_string())),
            None => match report.violations.first() {
                Some(v) => Err(Error::Validation(v.to_string())),
                None => Ok(()),
            },
        }
    }

    /// Checks `nu(d x) < nu(x)`: first on every generator, then on each
    /// nonzero sample.
    pub fn check_nu_decrease(&self, samples: &[Poly]) -> NuDecreaseReport {
        let df = self.sig.degree_fn();
        let generator_failures = (0..self.len())
            .filter(|&i| {
                let bound = df.weight(i as u32);
                self.diff[i].nu().is_some_and(|n| n >= bound)
            })
            .map(|i| self.sig.generator(i).name.clone())
            .collect();
        let sample_failures = samples
            .iter()
            .enumerate()
            .filter(|(_, x)| !x.is_zero() && self.d(x).nu() >= x.nu())
            .map(|(k, _)| k)
            .collect();
        NuDecreaseReport { generator_failures, sample_failures }
    }

    /// Same presentation over a new signature with identical generators but
    /// different actions.
    pub(crate) fn with_signature(&self, sig: Arc<Signature>) -> Result<Dga> {
        let diff = self.diff.iter().map(|p| p.embed(&sig, 0)).collect();
        Dga::new(sig, diff)
    }
}

impl fmt::Debug for Dga {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Dga {{ field: {}, mu: {}, ", self.field(), self.sig.mu())?;
        f.debug_list()
            .entries(self.sig.generators().iter().zip(&self.diff).map(|(g, d)| {
                format!("{} (deg {}, action {}) -> {}", g.name, g.degree, g.action, d)
            }))
            .finish()?;
        write!(f, " }}")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    Degree { generator: String, monomial: String, degree: i64, expected: i64 },
    Filtration { generator: String, monomial: String, monomial_action: BigRational, generator_action: BigRational },
    SquareNonzero { generator: String, value: String },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Degree { generator, monomial, degree, expected } => write!(
                f,
                "degree: d({generator}) has monomial '{monomial}' of degree {degree}, expected {expected}"
            ),
            Violation::Filtration { generator, monomial, monomial_action, generator_action } => write!(
                f,
                "filtration: d({generator}) has monomial '{}' of action {monomial_action}, not below {generator_action}",
                if monomial.is_empty() { "1" } else { monomial }
            ),
            Violation::SquareNonzero { generator, value } => {
                write!(f, "d^2: d(d({generator})) = {value}, expected 0")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return write!(f, "valid");
        }
        for (k, v) in self.violations.iter().enumerate() {
            if k > 0 {
                writeln!(f)?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct NuDecreaseReport {
    /// Generators whose differential has `nu` at least their own weight.
    pub generator_failures: Vec<String>,
    /// Indices of samples with `nu(d x) >= nu(x)`.
    pub sample_failures: Vec<usize>,
}

impl NuDecreaseReport {
    pub fn passed(&self) -> bool {
        self.generator_failures.is_empty() && self.sample_failures.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::freealg::GeneratorInfo;
    use crate::scalar::Field;
    use proptest::prelude::*;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn leibniz_on_products() {
        let dga = fixtures::nc1();
        let x = dga.parse("b1 b2").unwrap();
        assert_eq!(dga.d(&x), dga.parse("b c b2 - b1 b c").unwrap());
        assert!(dga.d(&dga.parse("7").unwrap()).is_zero());
    }

    #[test]
    fn leibniz_example_acyclic_witness() {
        let dga = fixtures::ac2();
        let x = dga.parse("b1 - a1 b1 a2 + b2 a2^2").unwrap();
        assert_eq!(dga.d(&x), Poly::one(dga.signature()));
    }

    #[test]
    fn leibniz_rejects_foreign_elements() {
        let a = fixtures::nc1();
        let b = fixtures::ac2();
        assert!(matches!(a.leibniz_extend(&b.generator(0)), Err(Error::Structure(_))));
    }

    #[test]
    fn fixtures_validate() {
        for (name, dga) in fixtures::all_free() {
            assert!(dga.validate().is_valid(), "{name}: {}", dga.validate());
        }
    }

    #[test]
    fn filtration_boundary_is_strict() {
        let broken = fixtures::nc1_broken();
        let report = broken.validate();
        assert_eq!(report.violations.len(), 1);
        assert!(matches!(report.violations[0], Violation::Filtration { .. }));
        assert!(matches!(broken.require_valid(), Err(Error::Filtration(_))));
    }

    #[test]
    fn square_violation_reported() {
        let sig = Signature::new(
            Field::Rational,
            0,
            vec![GeneratorInfo::new("a", 0, q(1)), GeneratorInfo::new("b", 1, q(2))],
        )
        .unwrap();
        let dga = Dga::with_differentials(&sig, vec![("a", Poly::one(&sig)), ("b", Poly::parse(&sig, "a").unwrap())])
            .unwrap();
        let report = dga.validate();
        assert!(report.violations.iter().any(|v| matches!(v, Violation::SquareNonzero { generator, .. } if generator == "b")));
        // d(a) = 1 has degree 0, not -1
        assert!(report.violations.iter().any(|v| matches!(v, Violation::Degree { generator, .. } if generator == "a")));
    }

    #[test]
    fn nu_decrease_on_generators() {
        let dga = fixtures::nc1();
        let b1 = dga.generator(2);
        assert_eq!(dga.d(&b1).nu(), Some(2));
        assert_eq!(b1.nu(), Some(3));
        let cycle = dga.parse("b c").unwrap();
        assert!(dga.check_nu_decrease(&[b1, cycle]).passed());
        assert!(!fixtures::nc1_broken().check_nu_decrease(&[]).passed());
    }

    fn arb_poly(dga: Dga) -> impl Strategy<Value = Poly> {
        let n = dga.len() as u32;
        prop::collection::vec((-3i64..4, prop::collection::vec(0..n, 0..4)), 0..5).prop_map(move |terms| {
            let f = dga.field();
            Poly::from_terms(dga.signature(), terms.into_iter().map(|(c, w)| (Word(w), f.from_i64(c))))
        })
    }

    fn homogeneous(p: Poly) -> Poly {
        let degree = p.terms().next().map(|(w, _)| p.signature().word_degree(w.as_slice()));
        match degree {
            Some(d) => p.component(d),
            None => p,
        }
    }

    proptest! {
        #[test]
        fn square_of_differential_vanishes(x in arb_poly(fixtures::ac2()), y in arb_poly(fixtures::nc1())) {
            prop_assert!(fixtures::ac2().d(&fixtures::ac2().d(&x)).is_zero());
            prop_assert!(fixtures::nc1().d(&fixtures::nc1().d(&y)).is_zero());
        }

        #[test]
        fn graded_leibniz_rule(p in arb_poly(fixtures::nc1()), q in arb_poly(fixtures::nc1())) {
            let dga = fixtures::nc1();
            let (p, q) = (homogeneous(p), homogeneous(q));
            let lhs = dga.d(&(&p * &q));
            let rhs = &(&dga.d(&p) * &q) + &(&p.twist() * &dga.d(&q));
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn nu_strictly_drops(x in arb_poly(fixtures::nc1())) {
            let dga = fixtures::nc1();
            prop_assume!(!x.is_zero());
            prop_assert!(dga.d(&x).nu() < x.nu());
        }
    }
}
