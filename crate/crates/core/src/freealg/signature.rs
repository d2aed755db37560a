use std::sync::Arc;

use num_rational::BigRational;
use num_traits::Signed;

use super::degree::DegreeFunction;
use crate::error::{Error, Result};
use crate::scalar::Field;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorInfo {
    pub name: String,
    /// Representative of the grading class; reduced into `[0, mu)` when `mu > 0`.
    pub degree: i64,
    pub action: BigRational,
}

impl GeneratorInfo {
    pub fn new(name: impl Into<String>, degree: i64, action: BigRational) -> Self {
        GeneratorInfo { name: name.into(), degree, action }
    }
}

/// Ground field, grading modulus and ordered generators of a free algebra.
///
/// The action-induced [`DegreeFunction`] is derived once at construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Signature {
    field: Field,
    mu: u64,
    generators: Vec<GeneratorInfo>,
    degree_fn: DegreeFunction,
}

impl Signature {
    pub fn new(field: Field, mu: u64, generators: Vec<GeneratorInfo>) -> Result<Arc<Signature>> {
        check_mu(field, mu)?;
        check_names(generators.iter().map(|g| g.name.as_str()))?;
        for g in &generators {
            if !g.action.is_positive() {
                return Err(Error::Validation(format!(
                    "generator {} has non-positive action {}",
                    g.name, g.action
                )));
            }
        }
        let generators: Vec<GeneratorInfo> = generators
            .into_iter()
            .map(|mut g| {
                g.degree = reduce_degree(mu, g.degree);
                g
            })
            .collect();
        let actions: Vec<BigRational> = generators.iter().map(|g| g.action.clone()).collect();
        let degree_fn = DegreeFunction::from_actions(&actions)?;
        Ok(Arc::new(Signature { field, mu, generators, degree_fn }))
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn mu(&self) -> u64 {
        self.mu
    }

    pub fn generators(&self) -> &[GeneratorInfo] {
        &self.generators
    }

    pub fn generator(&self, i: usize) -> &GeneratorInfo {
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

    pub fn degree_fn(&self) -> &DegreeFunction {
        &self.degree_fn
    }

    pub fn reduce_degree(&self, d: i64) -> i64 {
        reduce_degree(self.mu, d)
    }

    pub fn word_degree(&self, word: &[u32]) -> i64 {
        let total: i64 = word.iter().map(|&g| self.generators[g as usize].degree).sum();
        self.reduce_degree(total)
    }

    pub fn is_odd(&self, gen: u32) -> bool {
        self.generators[gen as usize].degree.rem_euclid(2) == 1
    }

    pub fn word_is_odd(&self, word: &[u32]) -> bool {
        word.iter().filter(|&&g| self.is_odd(g)).count() % 2 == 1
    }

    pub fn word_action(&self, word: &[u32]) -> BigRational {
        word.iter()
            .fold(BigRational::from_integer(0.into()), |acc, &g| acc + &self.generators[g as usize].action)
    }

    pub fn names(&self, word: &[u32]) -> Vec<&str> {
        word.iter().map(|&g| self.generators[g as usize].name.as_str()).collect()
    }
}

pub(crate) fn reduce_degree(mu: u64, d: i64) -> i64 {
    if mu == 0 {
        d
    } else {
        d.rem_euclid(mu as i64)
    }
}

/// Signs `(-1)^|a|` need a well-defined parity, so outside characteristic 2
/// the grading modulus must be zero or even.
pub(crate) fn check_mu(field: Field, mu: u64) -> Result<()> {
    if field.characteristic() != 2 && mu % 2 == 1 {
        return Err(Error::Validation(format!(
            "grading modulus {mu} is odd; signs need mu = 0 or even outside characteristic 2"
        )));
    }
    Ok(())
}

pub(crate) fn check_names<'a>(names: impl Iterator<Item = &'a str>) -> Result<()> {
    let mut seen = std::collections::HashSet::new();
    for name in names {
        let mut chars = name.chars();
        let ok = match chars.next() {
            Some(c) if c.is_ascii_alphabetic() || c == '_' => {
                chars.all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '\'')
            }
            _ => false,
        };
        if !ok {
            return Err(Error::Validation(format!("invalid generator name {name:?}")));
        }
        if !seen.insert(name) {
            return Err(Error::Validation(format!("duplicate generator name {name:?}")));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn odd_mu_rejected_outside_char_two() {
        let gens = vec![GeneratorInfo::new("a", 1, q(1))];
        assert!(Signature::new(Field::Rational, 3, gens.clone()).is_err());
        assert!(Signature::new(Field::prime(2).unwrap(), 3, gens.clone()).is_ok());
        assert!(Signature::new(Field::Rational, 4, gens).is_ok());
    }

    #[test]
    fn degrees_reduced_mod_mu() {
        let gens = vec![GeneratorInfo::new("c", -1, q(1))];
        let sig = Signature::new(Field::Rational, 2, gens).unwrap();
        assert_eq!(sig.generator(0).degree, 1);
    }

    #[test]
    fn rejects_bad_generators() {
        let dup = vec![GeneratorInfo::new("a", 0, q(1)), GeneratorInfo::new("a", 0, q(2))];
        assert!(Signature::new(Field::Rational, 0, dup).is_err());
        let zero = vec![GeneratorInfo::new("a", 0, q(0))];
        assert!(Signature::new(Field::Rational, 0, zero).is_err());
        let bad = vec![GeneratorInfo::new("1a", 0, q(1))];
        assert!(Signature::new(Field::Rational, 0, bad).is_err());
    }

    #[test]
    fn empty_signature_is_the_ground_field() {
        let sig = Signature::new(Field::Rational, 0, vec![]).unwrap();
        assert!(sig.is_empty());
        assert_eq!(sig.degree_fn().scale(), 1);
    }
}
