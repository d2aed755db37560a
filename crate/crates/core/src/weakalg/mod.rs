//! Left weak division for the action-induced degree function `nu`.
//!
//! An element is `nu`-dependent on a family when a left combination of the
//! family matches its top `nu`-slice. Because `nu` satisfies the weak
//! algorithm, repeated top-slice reduction decides membership in the left
//! ideal of a `nu`-independent family, and a predecessor scan decides
//! dependence of a sorted family.

mod boundary;

pub use boundary::{boundary_basis, ideal_member, CompletionResult};

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::error::{Error, Result};
use crate::freealg::{Poly, Word};
use crate::linalg::LinearSystem;

/// Nonzero polynomials sorted by nondecreasing `nu`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NuFamily {
    members: Vec<Poly>,
}

impl NuFamily {
    /// Requires nonzero members already in `nu` order.
    pub fn new(members: Vec<Poly>) -> Result<NuFamily> {
        if members.iter().any(Poly::is_zero) {
            return Err(Error::Precondition("a family member is zero".into()));
        }
        if members.windows(2).any(|p| p[0].nu() > p[1].nu()) {
            return Err(Error::Precondition("family is not sorted by nu".into()));
        }
        Ok(NuFamily { members })
    }

    /// Drops zeros and sorts stably by `nu`. Also returns, for each
    /// position, the index of the member in the input.
    pub fn sorted(members: Vec<Poly>) -> (NuFamily, Vec<usize>) {
        let mut indexed: Vec<(usize, Poly)> = members.into_iter().enumerate().filter(|(_, p)| !p.is_zero()).collect();
        indexed.sort_by_key(|(_, p)| p.nu());
        let (order, members) = indexed.into_iter().unzip();
        (NuFamily { members }, order)
    }

    pub fn members(&self) -> &[Poly] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn into_members(self) -> Vec<Poly> {
        self.members
    }
}

/// `x = sum_i quotients[i] * family[i] + remainder`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DivisionResult {
    pub quotients: Vec<Poly>,
    pub remainder: Poly,
}

impl DivisionResult {
    /// Re-evaluates the division identity.
    pub fn check(&self, x: &Poly, family: &[Poly]) -> bool {
        let mut acc = self.remainder.clone();
        for (q, f) in self.quotients.iter().zip(family) {
            acc = &acc + &(q * f);
        }
        &acc == x
    }
}

/// Quotients `y_i` with `nu(x - sum y_i x_i) < nu(x)` and
/// `nu(y_i x_i) <= nu(x)`, or `None` when `x` is not `nu`-dependent on the
/// family.
///
/// Only the top slice is matched. Unknowns are the coefficients of `w` in
/// `y_i` with `nu(w) = nu(x) - nu(x_i)`; starting from the monomials of the
/// top slice, an unknown `(i, w)` is added whenever a monomial ends with a
/// leading monomial `u` of `x_i` with prefix `w`, and then every monomial of
/// `w * lead(x_i)` is visited in turn. Unknowns never reached only touch
/// monomials outside this closure, so dropping them loses no solutions.
pub fn nu_dependent_on(x: &Poly, family: &[Poly]) -> Result<Option<Vec<Poly>>> {
    let top = x
        .nu()
        .ok_or_else(|| Error::Precondition("dependence of the zero polynomial".into()))?;
    let sig = x.signature();
    let leads: Vec<Option<Poly>> = family
        .iter()
        .map(|f| match f.nu() {
            Some(n) if n <= top => Some(f.leading_part().expect("nonzero")),
            _ => None,
        })
        .collect();

    let slice = x.leading_part()?;
    let mut seen: BTreeSet<Word> = slice.terms().map(|(w, _)| w.clone()).collect();
    let mut queue: VecDeque<Word> = seen.iter().cloned().collect();
    let mut unknowns: BTreeMap<(usize, Word), usize> = BTreeMap::new();
    let mut sys: LinearSystem<Word> = LinearSystem::new(x.field());
    let mut keys: Vec<(usize, Word)> = Vec::new();

    while let Some(s) = queue.pop_front() {
        for (i, lead) in leads.iter().enumerate() {
            let Some(lead) = lead else { continue };
            for (u, _) in lead.terms() {
                if u.len() > s.len() || !s.as_slice().ends_with(u.as_slice()) {
                    continue;
                }
                let w = Word(s.as_slice()[..s.len() - u.len()].to_vec());
                if unknowns.contains_key(&(i, w.clone())) {
                    continue;
                }
                let mut column = Vec::with_capacity(lead.num_terms());
                for (u2, c2) in lead.terms() {
                    let m = w.concat(u2);
                    if seen.insert(m.clone()) {
                        queue.push_back(m.clone());
                    }
                    column.push((m, c2.clone()));
                }
                unknowns.insert((i, w.clone()), sys.push_column(column));
                keys.push((i, w));
            }
        }
    }
    if keys.is_empty() {
        return Ok(None);
    }
    sys.set_rhs(slice.terms().map(|(w, c)| (w.clone(), c.clone())).collect::<Vec<_>>());
    let Some(sol) = sys.solve() else { return Ok(None) };
    let mut quotients = vec![Poly::zero(sig); family.len()];
    for ((i, w), c) in keys.into_iter().zip(sol) {
        quotients[i].add_term(w, c);
    }
    let mut rest = x.clone();
    for (q, f) in quotients.iter().zip(family) {
        if !q.is_zero() {
            rest = &rest - &(q * f);
        }
    }
    if rest.nu() >= Some(top) {
        return Err(Error::InternalAssertion("top-slice reduction did not lower nu".into()));
    }
    Ok(Some(quotients))
}

/// Repeated top-slice reduction of `x` by the family until the top of the
/// remainder is not `nu`-dependent (or the remainder is zero).
pub fn weak_divide(x: &Poly, family: &[Poly]) -> Result<DivisionResult> {
    let sig = x.signature();
    let mut quotients = vec![Poly::zero(sig); family.len()];
    let mut remainder = x.clone();
    while !remainder.is_zero() {
        let Some(step) = nu_dependent_on(&remainder, family)? else { break };
        for ((q, s), f) in quotients.iter_mut().zip(step).zip(family) {
            if !s.is_zero() {
                remainder = &remainder - &(&s * f);
                *q = &*q + &s;
            }
        }
    }
    let result = DivisionResult { quotients, remainder };
    if !result.check(x, family) {
        return Err(Error::InternalAssertion("division identity failed".into()));
    }
    Ok(result)
}

/// The least index `i` such that `family[i]` is `nu`-dependent on
/// `family[..i]`, with the quotients over those predecessors; `None` when
/// the family is `nu`-independent.
pub fn nu_dependent(family: &NuFamily) -> Result<Option<(usize, Vec<Poly>)>> {
    first_dependent(family.members())
}

fn first_dependent(family: &[Poly]) -> Result<Option<(usize, Vec<Poly>)>> {
    for i in 1..family.len() {
        if let Some(q) = nu_dependent_on(&family[i], &family[..i])? {
            return Ok(Some((i, q)));
        }
    }
    Ok(None)
}

/// A `nu`-independent family generating the same left ideal as the input,
/// with expressions in both directions.
#[derive(Debug, Clone)]
pub struct BasisCompletion {
    pub family: NuFamily,
    /// `family[j] = sum_k basis_over_inputs[j][k] * inputs[k]`
    pub basis_over_inputs: Vec<Vec<Poly>>,
    /// `inputs[k] = sum_j inputs_over_basis[k][j] * family[j]`
    pub inputs_over_basis: Vec<Vec<Poly>>,
}

pub fn complete_basis(gens: &[Poly]) -> Result<BasisCompletion> {
    let Some(first) = gens.first() else { return Err(Error::EmptyIdeal) };
    let sig = first.signature().clone();
    let n = gens.len();
    let mut items: Vec<(Poly, Vec<Poly>)> = gens
        .iter()
        .enumerate()
        .filter(|(_, g)| !g.is_zero())
        .map(|(k, g)| {
            let mut e = vec![Poly::zero(&sig); n];
            e[k] = Poly::one(&sig);
            (g.clone(), e)
        })
        .collect();
    if items.is_empty() {
        return Err(Error::EmptyIdeal);
    }
    loop {
        items.sort_by_key(|(p, _)| p.nu());
        let family: Vec<Poly> = items.iter().map(|(p, _)| p.clone()).collect();
        let Some((i, q)) = first_dependent(&family)? else { break };
        let mut reduced = items[i].clone();
        for (j, qj) in q.iter().enumerate() {
            if qj.is_zero() {
                continue;
            }
            reduced.0 = &reduced.0 - &(qj * &items[j].0);
            for k in 0..n {
                reduced.1[k] = &reduced.1[k] - &(qj * &items[j].1[k]);
            }
        }
        if reduced.0.is_zero() {
            items.remove(i);
        } else {
            items[i] = reduced;
        }
    }
    let (members, basis_over_inputs): (Vec<Poly>, Vec<Vec<Poly>>) = items.into_iter().unzip();
    let mut inputs_over_basis = Vec::with_capacity(n);
    for g in gens {
        let div = weak_divide(g, &members)?;
        if !div.remainder.is_zero() {
            return Err(Error::InternalAssertion(format!("input {g} does not reduce to zero")));
        }
        inputs_over_basis.push(div.quotients);
    }
    Ok(BasisCompletion { family: NuFamily { members }, basis_over_inputs, inputs_over_basis })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::scalar::Field;
    use proptest::prelude::*;

    #[test]
    fn dependence_examples() {
        let dga = fixtures::nc1();
        let p = |s: &str| dga.parse(s).unwrap();
        let q = nu_dependent_on(&p("b c b c"), &[p("b c")]).unwrap().unwrap();
        assert_eq!(q, vec![p("b c")]);
        assert_eq!(nu_dependent_on(&p("b c b2"), &[p("b c")]).unwrap(), None);
        let x = p("b1 + 2 b c - c");
        assert_eq!(nu_dependent_on(&x, std::slice::from_ref(&x)).unwrap().unwrap(), vec![p("1")]);
        assert!(matches!(nu_dependent_on(&p("0"), &[x]), Err(Error::Precondition(_))));
    }

    #[test]
    fn family_dependence() {
        let nc1 = fixtures::nc1();
        let fam = NuFamily::new(vec![nc1.parse("b c").unwrap(), nc1.parse("b c b c").unwrap()]).unwrap();
        let (i, q) = nu_dependent(&fam).unwrap().unwrap();
        assert_eq!(i, 1);
        assert_eq!(q, vec![nc1.parse("b c").unwrap()]);
        let ac2 = fixtures::ac2();
        let fam = NuFamily::new(vec![ac2.parse("a1").unwrap(), ac2.parse("a2").unwrap()]).unwrap();
        assert_eq!(nu_dependent(&fam).unwrap(), None);
        let single = NuFamily::new(vec![ac2.parse("1 + a1 a2").unwrap()]).unwrap();
        assert_eq!(nu_dependent(&single).unwrap(), None);
    }

    #[test]
    fn family_invariants_enforced() {
        let nc1 = fixtures::nc1();
        assert!(NuFamily::new(vec![nc1.parse("b1").unwrap(), nc1.parse("b").unwrap()]).is_err());
        assert!(NuFamily::new(vec![nc1.parse("0").unwrap()]).is_err());
        let (fam, order) = NuFamily::sorted(vec![nc1.parse("b1").unwrap(), nc1.parse("0").unwrap(), nc1.parse("b").unwrap()]);
        assert_eq!(order, vec![2, 0]);
        assert_eq!(fam.len(), 2);
    }

    #[test]
    fn division_examples() {
        let dga = fixtures::nc1();
        let p = |s: &str| dga.parse(s).unwrap();
        let bc = [p("b c")];
        let d = weak_divide(&p("b1 b c"), &bc).unwrap();
        assert_eq!((d.quotients[0].clone(), d.remainder), (p("b1"), p("0")));
        let d = weak_divide(&p("b c b2"), &bc).unwrap();
        assert_eq!((d.quotients[0].clone(), d.remainder), (p("0"), p("b c b2")));
        let d = weak_divide(&p("b c b c + b"), &bc).unwrap();
        assert_eq!((d.quotients[0].clone(), d.remainder), (p("b c"), p("b")));
    }

    #[test]
    fn completion_examples() {
        let dga = fixtures::nc1();
        let p = |s: &str| dga.parse(s).unwrap();
        let c = complete_basis(&[p("b c"), p("b c b c")]).unwrap();
        assert_eq!(c.family.members(), &[p("b c")]);
        assert_eq!(c.inputs_over_basis, vec![vec![p("1")], vec![p("b c")]]);
        let single = complete_basis(&[p("b1 - c")]).unwrap();
        assert_eq!(single.family.members(), &[p("b1 - c")]);
        assert_eq!(complete_basis(&[p("0")]).unwrap_err(), Error::EmptyIdeal);
        assert_eq!(complete_basis(&[]).unwrap_err(), Error::EmptyIdeal);
    }

    #[test]
    fn completion_over_prime_field_with_overlaps() {
        let sig = crate::freealg::Signature::new(
            Field::prime(3).unwrap(),
            0,
            vec![
                crate::GeneratorInfo::new("x", 0, num_rational::BigRational::from_integer(1.into())),
                crate::GeneratorInfo::new("y", 0, num_rational::BigRational::from_integer(1.into())),
            ],
        )
        .unwrap();
        let p = |s: &str| Poly::parse(&sig, s).unwrap();
        let gens = [p("x y + y"), p("y x y + x"), p("y y")];
        let c = complete_basis(&gens).unwrap();
        assert_eq!(nu_dependent(&c.family).unwrap(), None);
        for (j, b) in c.family.members().iter().enumerate() {
            let mut acc = p("0");
            for (k, g) in gens.iter().enumerate() {
                acc = &acc + &(&c.basis_over_inputs[j][k] * g);
            }
            assert_eq!(&acc, b);
        }
    }

    fn arb_gens() -> impl Strategy<Value = Vec<Poly>> {
        let term = (-2i64..3, prop::collection::vec(0u32..4, 0..4));
        prop::collection::vec(prop::collection::vec(term, 1..4), 1..4).prop_map(|gens| {
            let dga = fixtures::nc1();
            gens.into_iter()
                .map(|ts| {
                    Poly::from_terms(
                        dga.signature(),
                        ts.into_iter().map(|(c, w)| (Word(w), dga.field().from_i64(c))),
                    )
                })
                .collect()
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn completion_round_trip(gens in arb_gens()) {
            prop_assume!(gens.iter().any(|g| !g.is_zero()));
            let c = complete_basis(&gens).unwrap();
            prop_assert_eq!(nu_dependent(&c.family).unwrap(), None);
            for g in &gens {
                let d = weak_divide(g, c.family.members()).unwrap();
                prop_assert!(d.remainder.is_zero());
            }
            for (b, expr) in c.family.members().iter().zip(&c.basis_over_inputs) {
                let mut acc = Poly::zero(b.signature());
                for (e, g) in expr.iter().zip(&gens) {
                    acc = &acc + &(e * g);
                }
                prop_assert_eq!(&acc, b);
            }
        }

        #[test]
        fn division_identity_and_rounds(x in arb_gens(), fam in arb_gens()) {
            let (fam, _) = NuFamily::sorted(fam);
            prop_assume!(!fam.is_empty());
            for xi in &x {
                let d = weak_divide(xi, fam.members()).unwrap();
                prop_assert!(d.check(xi, fam.members()));
                for (q, f) in d.quotients.iter().zip(fam.members()) {
                    if !q.is_zero() {
                        prop_assert!((q * f).nu() <= xi.nu());
                    }
                }
                if !d.remainder.is_zero() {
                    prop_assert_eq!(nu_dependent_on(&d.remainder, fam.members()).unwrap(), None);
                }
            }
        }
    }
}
