use std::sync::Arc;

use num_rational::BigRational;

use super::morphism::pushforward_unchecked;
use super::{Dga, ElementaryAuto};
use crate::error::{Error, Result};
use crate::freealg::{check_names, GeneratorInfo, Poly, Signature};
use crate::scalar::Field;

/// Moves `a -> a + b d(a)` for every non-cycle `a`, where `d(b) = 1`.
///
/// Afterwards every generator except `b` is a cycle. Intermediate
/// presentations may violate (F); the final one is validated.
pub fn normalize_acyclic(dga: &Dga, pivot: usize) -> Result<(Dga, Vec<ElementaryAuto>)> {
    if pivot >= dga.len() {
        return Err(Error::Structure(format!("pivot index {pivot} out of range")));
    }
    let sig = dga.signature();
    if dga.diff_of(pivot) != &Poly::one(sig) {
        return Err(Error::Precondition(format!(
            "d({}) = {}, expected 1",
            sig.generator(pivot).name,
            dga.diff_of(pivot)
        )));
    }
    let b = dga.generator(pivot);
    let mut cur = dga.clone();
    let mut moves = Vec::new();
    for g in 0..dga.len() {
        if g == pivot || cur.diff_of(g).is_zero() {
            continue;
        }
        let tail = &b * cur.diff_of(g);
        let e = ElementaryAuto::new(sig, g, sig.field().one(), tail)?;
        cur = pushforward_unchecked(&cur, &e)?;
        if !cur.diff_of(g).is_zero() {
            return Err(Error::InternalAssertion(format!(
                "{} is not a cycle after its move",
                sig.generator(g).name
            )));
        }
        moves.push(e);
    }
    cur.require_valid()?;
    Ok((cur, moves))
}

/// Free product: generators of `d1` followed by those of `d2`.
pub fn free_product(d1: &Dga, d2: &Dga) -> Result<Dga> {
    let (s1, s2) = (d1.signature(), d2.signature());
    if s1.field() != s2.field() {
        return Err(Error::Structure(format!("fields differ: {} vs {}", s1.field(), s2.field())));
    }
    if s1.mu() != s2.mu() {
        return Err(Error::Structure(format!("grading moduli differ: {} vs {}", s1.mu(), s2.mu())));
    }
    let gens: Vec<GeneratorInfo> = s1.generators().iter().chain(s2.generators()).cloned().collect();
    check_names(gens.iter().map(|g| g.name.as_str())).map_err(|e| Error::Structure(e.to_string()))?;
    let sig = Signature::new(s1.field(), s1.mu(), gens)?;
    let offset = s1.len() as u32;
    let diff = d1
        .differentials()
        .iter()
        .map(|p| p.embed(&sig, 0))
        .chain(d2.differentials().iter().map(|p| p.embed(&sig, offset)))
        .collect();
    Dga::new(sig, diff)
}

/// The stabilisation in degree `degree`: generators `a` (degree `degree`,
/// action `la`) and `b` (degree `degree + 1`, action `lb`) with `d(b) = a`.
pub fn stabilization(field: Field, mu: u64, degree: i64, la: BigRational, lb: BigRational) -> Result<Dga> {
    stabilization_named(field, mu, degree, ("a", "b"), la, lb)
}

pub fn stabilization_named(
    field: Field,
    mu: u64,
    degree: i64,
    names: (&str, &str),
    la: BigRational,
    lb: BigRational,
) -> Result<Dga> {
    if lb <= la {
        return Err(Error::Filtration(format!(
            "action of {} ({lb}) must exceed action of {} ({la})",
            names.1, names.0
        )));
    }
    let sig = Signature::new(
        field,
        mu,
        vec![GeneratorInfo::new(names.0, degree, la), GeneratorInfo::new(names.1, degree + 1, lb)],
    )?;
    let diff = vec![Poly::zero(&sig), Poly::generator(&sig, 0)];
    Dga::new(sig, diff)
}

/// Number of odd generators minus number of even generators.
pub fn euler_invariant(dga: &Dga) -> Result<i64> {
    let sig = dga.signature();
    if sig.mu() % 2 == 1 {
        return Err(Error::Precondition(format!("parity is undefined for mu = {}", sig.mu())));
    }
    Ok((0..sig.len() as u32).map(|g| if sig.is_odd(g) { 1 } else { -1 }).sum())
}

/// Output of [`acyclic_stable_normal_form`].
#[derive(Debug, Clone)]
pub struct StableNormalForm {
    pub dga: Dga,
    /// The generator with `d = 1`.
    pub pivot: usize,
    pub moves: Vec<ElementaryAuto>,
}

/// Stabilises in degree 1, moves the new degree-1 generator `a -> a - x`
/// so that `d(a) = 1`, then normalises with `a` as pivot.
pub fn acyclic_stable_normal_form(dga: &Dga, x: &Poly) -> Result<StableNormalForm> {
    let sig = dga.signature();
    let dx = dga.leibniz_extend(x)?;
    if dx != Poly::one(sig) {
        return Err(Error::Precondition(format!("d(x) = {dx}, expected 1")));
    }
    if !x.is_homogeneous_of(1) {
        return Err(Error::Precondition(format!("x = {x} is not homogeneous of degree 1")));
    }
    let (na, nb) = fresh_pair(sig);
    let one = BigRational::from_integer(1.into());
    let two = BigRational::from_integer(2.into());
    let stab = stabilization_named(sig.field(), sig.mu(), 1, (&na, &nb), one, two)?;
    let prod = free_product(dga, &stab)?;
    let psig = prod.signature().clone();
    let a = dga.len();
    let shift = ElementaryAuto::new(&psig, a, psig.field().one(), -&x.embed(&psig, 0))?;
    let shifted = pushforward_unchecked(&prod, &shift)?;
    if shifted.diff_of(a) != &Poly::one(&psig) {
        return Err(Error::InternalAssertion("shifted generator does not bound 1".into()));
    }
    let (out, mut moves) = normalize_acyclic(&shifted, a)?;
    moves.insert(0, shift);
    Ok(StableNormalForm { dga: out, pivot: a, moves })
}

fn fresh_pair(sig: &Arc<Signature>) -> (String, String) {
    let mut na = String::from("a");
    let mut nb = String::from("b");
    while sig.index_of(&na).is_some() || sig.index_of(&nb).is_some() {
        na.push('\'');
        nb.push('\'');
    }
    (na, nb)
}
