//! Cycles in the two-sided ideal generated by boundaries: certificates,
//! explicit boundary witnesses, bounded membership probes and a brute-force
//! oracle on a finite truncation of the algebra.

use std::collections::BTreeMap;

use crate::dga::Dga;
use crate::error::{Bounded, Error, Result};
use crate::freealg::{same_signature, Grading, Poly, Word};
use crate::linalg::LinearSystem;
use crate::scalar::Scalar;
use crate::weakalg::{boundary_basis, ideal_member};

/// Triples `(u, v, w)` with `x = sum u d(v) w` for a fixed `x`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwoSidedCertificate {
    terms: Vec<(Poly, Poly, Poly)>,
}

impl TwoSidedCertificate {
    /// Checks `x = sum u d(v) w` before accepting the triples.
    pub fn new(dga: &Dga, x: &Poly, terms: Vec<(Poly, Poly, Poly)>) -> Result<Self> {
        let cert = TwoSidedCertificate { terms };
        cert.check(dga, x)?;
        Ok(cert)
    }

    pub fn terms(&self) -> &[(Poly, Poly, Poly)] {
        &self.terms
    }

    pub fn evaluate(&self, dga: &Dga) -> Poly {
        let mut acc = Poly::zero(dga.signature());
        for (u, v, w) in &self.terms {
            acc = &acc + &(&(u * &dga.d(v)) * w);
        }
        acc
    }

    pub fn check(&self, dga: &Dga, x: &Poly) -> Result<()> {
        let sig = dga.signature();
        let foreign = |p: &Poly| !same_signature(p.signature(), sig);
        if foreign(x) || self.terms.iter().any(|(u, v, w)| foreign(u) || foreign(v) || foreign(w)) {
            return Err(Error::Structure("certificate lives in a different algebra".into()));
        }
        let total = self.evaluate(dga);
        if &total != x {
            return Err(Error::Certificate(format!("sum of u d(v) w is {total}, not {x}")));
        }
        Ok(())
    }
}

/// `y` together with the cycle `x = d(y)` it bounds.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundaryWitness {
    y: Poly,
    x: Poly,
}

impl BoundaryWitness {
    pub fn new(dga: &Dga, y: Poly, x: Poly) -> Result<Self> {
        let dy = dga.leibniz_extend(&y)?;
        if dy != x {
            return Err(Error::InternalAssertion(format!("d({y}) is {dy}, not {x}")));
        }
        Ok(BoundaryWitness { y, x })
    }

    pub fn y(&self) -> &Poly {
        &self.y
    }

    pub fn x(&self) -> &Poly {
        &self.x
    }
}

/// Boundary pairs and left coefficients with `x = sum coefficients[k] * pairs[k].1`.
#[derive(Debug, Clone)]
pub struct LeftIdealForm {
    pub pairs: Vec<(Poly, Poly)>,
    pub coefficients: Vec<Poly>,
}

/// Rewrites each `u d(v) w` as `u d(v w) - u twist(v) d(w)`, which puts `x`
/// in the left ideal of the boundaries `d(v w)` and `d(w)`. Pairs with equal
/// preimages are merged and zero boundaries dropped.
pub fn certificate_to_left_ideal(dga: &Dga, x: &Poly, cert: &TwoSidedCertificate) -> Result<LeftIdealForm> {
    cert.check(dga, x)?;
    let sig = dga.signature();
    let mut form = LeftIdealForm { pairs: Vec::new(), coefficients: Vec::new() };
    let mut add = |y: Poly, c: Poly| {
        let g = dga.d(&y);
        if g.is_zero() || c.is_zero() {
            return;
        }
        let k = match form.pairs.iter().position(|(y0, _)| *y0 == y) {
            Some(k) => k,
            None => {
                form.pairs.push((y, g));
                form.coefficients.push(Poly::zero(sig));
                form.pairs.len() - 1
            }
        };
        form.coefficients[k] = &form.coefficients[k] + &c;
    };
    for (u, v, w) in cert.terms() {
        add(v * w, u.clone());
        add(w.clone(), -&(u * &v.twist()));
    }
    let mut total = Poly::zero(sig);
    for (c, (_, g)) in form.coefficients.iter().zip(&form.pairs) {
        total = &total + &(c * g);
    }
    if &total != x {
        return Err(Error::InternalAssertion("left-ideal rewrite does not reproduce x".into()));
    }
    Ok(form)
}

/// An explicit `y` with `d(y) = x` for a cycle `x` in the two-sided
/// boundary ideal.
///
/// The certificate is rewritten into left-ideal form, the boundaries are
/// completed to a free family `d(y_i)`, and `x = sum x_i d(y_i)` is read off
/// by division. Freeness forces every `x_i` to be a cycle, and then
/// `y = sum twist(x_i) y_i`.
pub fn boundary_witness(dga: &Dga, x: &Poly, cert: &TwoSidedCertificate) -> Result<BoundaryWitness> {
    if !same_signature(x.signature(), dga.signature()) {
        return Err(Error::Structure("element lives in a different algebra".into()));
    }
    if !dga.is_cycle(x) {
        return Err(Error::Precondition(format!("{x} is not a cycle")));
    }
    let sig = dga.signature();
    if x.is_zero() {
        return BoundaryWitness::new(dga, Poly::zero(sig), x.clone());
    }
    let form = certificate_to_left_ideal(dga, x, cert)?;
    let cr = boundary_basis(dga, &form.pairs)?;
    let coeffs = ideal_member(x, &cr)?
        .ok_or_else(|| Error::Certificate(format!("{x} is not in the left ideal of the rewritten boundaries")))?;
    let mut y = Poly::zero(sig);
    for (xi, (yi, _)) in coeffs.iter().zip(&cr.pairs) {
        if !dga.is_cycle(xi) {
            return Err(Error::InternalAssertion(format!("coefficient {xi} is not a cycle")));
        }
        y = &y + &(&xi.twist() * yi);
    }
    BoundaryWitness::new(dga, y, x.clone())
}

/// Degree of `d(a_i)` when every generator differential is homogeneous.
fn diff_degree(dga: &Dga, i: usize) -> Option<i64> {
    match dga.diff_of(i).grading() {
        Grading::Degree(d) => Some(d),
        _ => None,
    }
}

/// Searches for `x = sum c * u d(a_i) w` over words `u, w` with
/// `nu(u d(a_i) w) <= cap`. A found certificate uses `v = a_i`; failure
/// only means no certificate exists within the cap.
pub fn two_sided_member_bounded(dga: &Dga, x: &Poly, cap: u64) -> Result<Bounded<TwoSidedCertificate>> {
    let sig = dga.signature();
    if !same_signature(x.signature(), sig) {
        return Err(Error::Structure("element lives in a different algebra".into()));
    }
    if x.nu().is_some_and(|n| n > cap) {
        return Err(Error::Precondition(format!("nu({x}) exceeds the cap {cap}")));
    }
    if x.is_zero() {
        return Ok(Bounded::Found(TwoSidedCertificate { terms: vec![] }));
    }
    let target = match x.grading() {
        Grading::Degree(d) => Some(d),
        _ => None,
    };
    let df = sig.degree_fn();
    let words = df.words_up_to(cap);
    let mut sys: LinearSystem<Word> = LinearSystem::new(dga.field());
    let mut keys: Vec<(usize, usize, usize)> = Vec::new();
    for i in 0..dga.len() {
        let da = dga.diff_of(i);
        let Some(n) = da.nu() else { continue };
        if n > cap {
            continue;
        }
        let room = cap - n;
        let dd = diff_degree(dga, i);
        for (ui, u) in words.iter().enumerate() {
            let nu_u = df.word_nu(u.as_slice());
            if nu_u > room {
                continue;
            }
            for (wi, w) in words.iter().enumerate() {
                if nu_u + df.word_nu(w.as_slice()) > room {
                    continue;
                }
                if let (Some(t), Some(d)) = (target, dd) {
                    let total = sig.word_degree(u.as_slice()) + d + sig.word_degree(w.as_slice());
                    if sig.reduce_degree(total) != t {
                        continue;
                    }
                }
                let column: Vec<(Word, Scalar)> =
                    da.terms().map(|(m, c)| (u.concat(m).concat(w), c.clone())).collect();
                sys.push_column(column);
                keys.push((ui, i, wi));
            }
        }
    }
    sys.set_rhs(x.terms().map(|(w, c)| (w.clone(), c.clone())).collect::<Vec<_>>());
    let Some(sol) = sys.solve() else { return Ok(Bounded::UnknownAtCap { cap }) };
    // group by (generator, right factor) so each triple is u d(a_i) w
    let mut grouped: BTreeMap<(usize, usize), Poly> = BTreeMap::new();
    for ((ui, i, wi), c) in keys.into_iter().zip(sol) {
        if c.is_zero() {
            continue;
        }
        let e = grouped.entry((i, wi)).or_insert_with(|| Poly::zero(sig));
        e.add_term(words[ui].clone(), c);
    }
    let terms = grouped
        .into_iter()
        .map(|((i, wi), u)| (u, dga.generator(i), Poly::monomial(sig, words[wi].clone(), dga.field().one())))
        .collect();
    let cert = TwoSidedCertificate::new(dga, x, terms)
        .map_err(|e| Error::InternalAssertion(format!("solver certificate does not validate: {e}")))?;
    Ok(Bounded::Found(cert))
}

/// A witness `y` with `d(y) = 1` when `1` is found in the boundary ideal
/// within the cap.
pub fn is_acyclic_bounded(dga: &Dga, cap: u64) -> Result<Bounded<BoundaryWitness>> {
    let one = Poly::one(dga.signature());
    match two_sided_member_bounded(dga, &one, cap)? {
        Bounded::Found(cert) => Ok(Bounded::Found(boundary_witness(dga, &one, &cert)?)),
        Bounded::UnknownAtCap { cap } => Ok(Bounded::UnknownAtCap { cap }),
    }
}

/// The finite-dimensional span of the words with `nu <= cap`, which `d`
/// preserves, together with the matrix of `d` on it.
#[derive(Debug, Clone)]
pub struct TruncatedComplex {
    dga: Dga,
    cap: u64,
    /// Basis words by reduced degree.
    basis: BTreeMap<i64, Vec<Word>>,
    /// Column of `d` for every basis word.
    columns: BTreeMap<Word, Vec<(Word, Scalar)>>,
}

impl TruncatedComplex {
    pub fn new(dga: &Dga, cap: u64) -> Self {
        let sig = dga.signature();
        let mut basis: BTreeMap<i64, Vec<Word>> = BTreeMap::new();
        let mut columns = BTreeMap::new();
        for w in sig.degree_fn().words_up_to(cap) {
            let image = dga.d(&Poly::monomial(sig, w.clone(), dga.field().one()));
            columns.insert(w.clone(), image.terms().map(|(m, c)| (m.clone(), c.clone())).collect());
            basis.entry(sig.word_degree(w.as_slice())).or_default().push(w);
        }
        TruncatedComplex { dga: dga.clone(), cap, basis, columns }
    }

    pub fn cap(&self) -> u64 {
        self.cap
    }

    pub fn basis(&self) -> &BTreeMap<i64, Vec<Word>> {
        &self.basis
    }

    pub fn dimension(&self) -> usize {
        self.columns.len()
    }

    /// Whether the matrix of `d` squares to zero, computed from the stored
    /// columns alone. Also fails if some image leaves the truncation.
    pub fn square_is_zero(&self) -> bool {
        let field = self.dga.field();
        for col in self.columns.values() {
            let mut acc: BTreeMap<&Word, Scalar> = BTreeMap::new();
            for (m, c) in col {
                let Some(inner) = self.columns.get(m) else { return false };
                for (m2, c2) in inner {
                    let e = acc.entry(m2).or_insert_with(|| field.zero());
                    *e = &*e + &(c * c2);
                }
            }
            if acc.values().any(|c| !c.is_zero()) {
                return false;
            }
        }
        true
    }

    /// Some `y` in the truncation with `d(y) = x`, found by an exact linear
    /// solve in each degree.
    pub fn is_boundary_bruteforce(&self, x: &Poly) -> Result<Bounded<Poly>> {
        let sig = self.dga.signature();
        if !same_signature(x.signature(), sig) {
            return Err(Error::Structure("element lives in a different algebra".into()));
        }
        if x.nu().is_some_and(|n| n > self.cap) {
            return Err(Error::Precondition(format!("nu({x}) exceeds the cap {}", self.cap)));
        }
        let mut degrees: Vec<i64> = x.terms().map(|(w, _)| sig.word_degree(w.as_slice())).collect();
        degrees.sort_unstable();
        degrees.dedup();
        let mut y = Poly::zero(sig);
        for d in degrees {
            let part = x.component(d);
            let mut sys: LinearSystem<Word> = LinearSystem::new(self.dga.field());
            let candidates = self.basis.get(&sig.reduce_degree(d + 1)).map(Vec::as_slice).unwrap_or(&[]);
            for w in candidates {
                sys.push_column(self.columns[w].iter().cloned());
            }
            sys.set_rhs(part.terms().map(|(w, c)| (w.clone(), c.clone())).collect::<Vec<_>>());
            let Some(sol) = sys.solve() else { return Ok(Bounded::UnknownAtCap { cap: self.cap }) };
            for (w, c) in candidates.iter().zip(sol) {
                y.add_term(w.clone(), c);
            }
        }
        if &self.dga.d(&y) != x {
            return Err(Error::InternalAssertion("brute-force solution does not bound x".into()));
        }
        Ok(Bounded::Found(y))
    }
}

/// Convenience wrapper building the truncation and solving once.
pub fn is_boundary_bruteforce(dga: &Dga, x: &Poly, cap: u64) -> Result<Bounded<Poly>> {
    TruncatedComplex::new(dga, cap).is_boundary_bruteforce(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn nc1_cert(dga: &Dga) -> (Poly, TwoSidedCertificate) {
        let p = |s: &str| dga.parse(s).unwrap();
        let x = p("b c b c");
        let cert = TwoSidedCertificate::new(dga, &x, vec![(p("1"), p("b1"), p("b c"))]).unwrap();
        (x, cert)
    }

    #[test]
    fn rewrite_drops_zero_boundaries() {
        let dga = fixtures::nc1();
        let p = |s: &str| dga.parse(s).unwrap();
        let (x, cert) = nc1_cert(&dga);
        let form = certificate_to_left_ideal(&dga, &x, &cert).unwrap();
        assert_eq!(form.pairs, vec![(p("b1 b c"), p("b c b c"))]);
        assert_eq!(form.coefficients, vec![p("1")]);
    }

    #[test]
    fn rewrite_sign_with_odd_middle_factor() {
        // d(b1) b2 = d(b1 b2) + b1 d(b2): the d(w) term enters with a plus sign
        let dga = fixtures::nc1();
        let p = |s: &str| dga.parse(s).unwrap();
        let x = p("b c b2");
        let cert = TwoSidedCertificate::new(&dga, &x, vec![(p("1"), p("b1"), p("b2"))]).unwrap();
        let form = certificate_to_left_ideal(&dga, &x, &cert).unwrap();
        assert_eq!(form.pairs, vec![(p("b1 b2"), p("b c b2 - b1 b c")), (p("b2"), p("b c"))]);
        assert_eq!(form.coefficients, vec![p("1"), p("b1")]);
        let bad = TwoSidedCertificate::new(&dga, &x, vec![(p("1"), p("b1"), p("b1"))]);
        assert!(matches!(bad, Err(Error::Certificate(_))));
    }

    #[test]
    fn degenerate_certificate() {
        let dga = fixtures::ac2();
        let p = |s: &str| dga.parse(s).unwrap();
        let x = p("a1^2");
        let cert = TwoSidedCertificate::new(&dga, &x, vec![(p("1"), p("b2"), p("1"))]).unwrap();
        let form = certificate_to_left_ideal(&dga, &x, &cert).unwrap();
        assert_eq!(form.pairs, vec![(p("b2"), x.clone())]);
        let w = boundary_witness(&dga, &x, &cert).unwrap();
        assert_eq!(dga.d(w.y()), x);
    }

    #[test]
    fn witness_for_nc1() {
        let dga = fixtures::nc1();
        let (x, cert) = nc1_cert(&dga);
        let w = boundary_witness(&dga, &x, &cert).unwrap();
        assert_eq!(w.y(), &dga.parse("b1 b c").unwrap());
        let zero = Poly::zero(dga.signature());
        let empty = TwoSidedCertificate::new(&dga, &zero, vec![]).unwrap();
        assert!(boundary_witness(&dga, &zero, &empty).unwrap().y().is_zero());
        let b = dga.parse("b").unwrap();
        assert!(matches!(boundary_witness(&dga, &dga.parse("b1").unwrap(), &empty), Err(Error::Precondition(_))));
        assert!(matches!(boundary_witness(&dga, &b, &empty), Err(Error::Certificate(_))));
    }

    #[test]
    fn bounded_membership() {
        let dga = fixtures::nc1();
        let p = |s: &str| dga.parse(s).unwrap();
        let x = p("b c b c");
        let cert = two_sided_member_bounded(&dga, &x, 4).unwrap().found().unwrap();
        cert.check(&dga, &x).unwrap();
        assert_eq!(two_sided_member_bounded(&dga, &p("b"), 6).unwrap(), Bounded::UnknownAtCap { cap: 6 });
        let d = p("b c");
        let cert = two_sided_member_bounded(&dga, &d, 2).unwrap().found().unwrap();
        assert_eq!(cert.terms().len(), 1);
        assert!(matches!(two_sided_member_bounded(&dga, &x, 3), Err(Error::Precondition(_))));
    }

    #[test]
    fn acyclicity_probes() {
        let ac2 = fixtures::ac2();
        let w = is_acyclic_bounded(&ac2, 6).unwrap().found().unwrap();
        assert_eq!(ac2.d(w.y()), Poly::one(ac2.signature()));
        assert!(!is_acyclic_bounded(&fixtures::nc1(), 8).unwrap().is_found());
        assert!(!is_acyclic_bounded(&fixtures::s1(), 3).unwrap().is_found());
    }

    #[test]
    fn truncation_oracle() {
        let dga = fixtures::nc1();
        let p = |s: &str| dga.parse(s).unwrap();
        // nu(b1 b c) = 5, so a cap of 4 cannot see the preimage of b c b c
        let small = TruncatedComplex::new(&dga, 4);
        assert!(!small.is_boundary_bruteforce(&p("b c b c")).unwrap().is_found());
        let tc = TruncatedComplex::new(&dga, 5);
        assert!(tc.square_is_zero());
        let y = tc.is_boundary_bruteforce(&p("b c b c")).unwrap().found().unwrap();
        assert_eq!(dga.d(&y), p("b c b c"));
        let y = tc.is_boundary_bruteforce(&p("b c")).unwrap().found().unwrap();
        assert_eq!(dga.d(&y), p("b c"));
        assert!(!is_boundary_bruteforce(&dga, &p("1"), 8).unwrap().is_found());
        assert!(!tc.is_boundary_bruteforce(&p("b")).unwrap().is_found());
    }
}
