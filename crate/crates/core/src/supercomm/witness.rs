use super::{same_sc_signature, ScDga, ScPoly};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Pairs `(x_i, y_i)` with `1 = sum_i x_i d(y_i)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrivialityCertificate {
    pub pairs: Vec<(ScPoly, ScPoly)>,
}

impl TrivialityCertificate {
    pub fn new(pairs: Vec<(ScPoly, ScPoly)>) -> Self {
        TrivialityCertificate { pairs }
    }

    pub fn evaluate(&self, dga: &ScDga) -> ScPoly {
        self.pairs
            .iter()
            .fold(ScPoly::zero(dga.signature()), |acc, (x, y)| &acc + &(x * &dga.d(y)))
    }

    pub fn check(&self, dga: &ScDga) -> Result<()> {
        for (x, y) in &self.pairs {
            if !same_sc_signature(x.signature(), dga.signature()) || !same_sc_signature(y.signature(), dga.signature()) {
                return Err(Error::Structure("certificate lives in a different algebra".into()));
            }
        }
        let total = self.evaluate(dga);
        if total != ScPoly::one(dga.signature()) {
            return Err(Error::Certificate(format!("sum of x d(y) is {total}, not 1")));
        }
        Ok(())
    }
}

fn binomial(n: u64, k: u64) -> i64 {
    (0..k).fold(1i64, |acc, i| acc * (n - i) as i64 / (i + 1) as i64)
}

/// An element `w` with `d(w) = 1`, outside characteristic 2.
///
/// The certificate is first rewritten as `1 = d(w0) + z` with
/// `z = sum u_i d(v_i)` and every `u_i` odd, using
/// `x d(y) = d(x y) + y d(x)` for even `x` and odd `y`. Each summand of `z`
/// is even and contains the odd factor `u_i`, so `z^k = 0` for some
/// `k <= n + 1`. With `d = d(w0)` and `(1 - d)^k = 0`,
/// `w = w0 * sum_{j=1..k} (-1)^{j+1} C(k, j) d^{j-1}` satisfies `d(w) = 1`;
/// `k = 2` gives `2 w0 - w0 d(w0)`. The result is checked before returning.
pub fn acyclicity_witness_char_ne2(dga: &ScDga, cert: &TrivialityCertificate) -> Result<ScPoly> {
    let sig = dga.signature();
    if sig.field().characteristic() == 2 {
        return Err(Error::Precondition("characteristic 2: use the squaring construction".into()));
    }
    cert.check(dga)?;
    let mut w0 = ScPoly::zero(sig);
    let mut uv: Vec<(ScPoly, ScPoly)> = Vec::new();
    for (x, y) in &cert.pairs {
        let (x_even, x_odd) = x.parity_split();
        let (y_even, y_odd) = y.parity_split();
        // same-parity pieces contribute only odd-degree terms, which cancel
        // in total since 1 is even
        if !x_odd.is_zero() && !y_even.is_zero() {
            uv.push((x_odd, y_even));
        }
        if !x_even.is_zero() && !y_odd.is_zero() {
            w0 = &w0 + &(&x_even * &y_odd);
            uv.push((y_odd, x_even));
        }
    }
    let z: ScPoly = uv.iter().fold(ScPoly::zero(sig), |acc, (u, v)| &acc + &(u * &dga.d(v)));
    let dw0 = dga.d(&w0);
    if &dw0 + &z != ScPoly::one(sig) {
        return Err(Error::InternalAssertion("rewritten certificate does not sum to 1".into()));
    }
    // nilpotency index of z
    let mut k = 1u64;
    let mut power = z.clone();
    while !power.is_zero() {
        if k > uv.len() as u64 + 1 {
            return Err(Error::InternalAssertion(format!("z^{k} is nonzero")));
        }
        power = &power * &z;
        k += 1;
    }
    let f = sig.field();
    let mut series = ScPoly::zero(sig);
    let mut dpow = ScPoly::one(sig);
    for j in 1..=k {
        let c: Scalar = f.from_i64(if j % 2 == 1 { 1 } else { -1 } * binomial(k, j));
        series = &series + &dpow.scale(&c);
        dpow = &dpow * &dw0;
    }
    let w = &w0 * &series;
    // the degree-1 part already bounds the degree-0 element 1
    let w = w.component(1);
    if dga.d(&w) != ScPoly::one(sig) {
        return Err(Error::InternalAssertion(format!("d({w}) is not 1")));
    }
    Ok(w)
}

/// In characteristic 2, `w = sum x_i^2 y_i d(y_i)` satisfies `d(w) = 1`.
pub fn acyclicity_witness_char2(dga: &ScDga, cert: &TrivialityCertificate) -> Result<ScPoly> {
    let sig = dga.signature();
    if sig.field().characteristic() != 2 {
        return Err(Error::Precondition(format!("characteristic of {} is not 2", sig.field())));
    }
    cert.check(dga)?;
    let w = cert
        .pairs
        .iter()
        .fold(ScPoly::zero(sig), |acc, (x, y)| &acc + &(&(&(x * x) * y) * &dga.d(y)));
    if dga.d(&w) != ScPoly::one(sig) {
        return Err(Error::InternalAssertion(format!("d({w}) is not 1")));
    }
    Ok(w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Field;
    use crate::supercomm::{ScGenerator, ScSignature};

    fn unit_boundary(field: Field) -> ScDga {
        let sig = ScSignature::new(field, 2, vec![ScGenerator::new("b", 1, None)]).unwrap();
        ScDga::with_differentials(&sig, vec![("b", ScPoly::one(&sig))]).unwrap()
    }

    #[test]
    fn degenerate_certificate() {
        let dga = unit_boundary(Field::Rational);
        let sig = dga.signature();
        let cert = TrivialityCertificate::new(vec![(ScPoly::one(sig), dga.generator(0))]);
        assert_eq!(acyclicity_witness_char_ne2(&dga, &cert).unwrap(), dga.generator(0));
        let f2 = unit_boundary(Field::prime(2).unwrap());
        let cert2 = TrivialityCertificate::new(vec![(ScPoly::one(f2.signature()), f2.generator(0))]);
        assert_eq!(acyclicity_witness_char2(&f2, &cert2).unwrap(), f2.generator(0));
    }

    #[test]
    fn wrong_characteristic_and_bad_certificates() {
        let dga = unit_boundary(Field::Rational);
        let sig = dga.signature();
        let cert = TrivialityCertificate::new(vec![(ScPoly::one(sig), dga.generator(0))]);
        assert!(matches!(acyclicity_witness_char2(&dga, &cert), Err(Error::Precondition(_))));
        let bad = TrivialityCertificate::new(vec![(ScPoly::one(sig).scale(&Field::Rational.from_i64(2)), dga.generator(0))]);
        assert!(matches!(acyclicity_witness_char_ne2(&dga, &bad), Err(Error::Certificate(_))));
        let f2 = unit_boundary(Field::prime(2).unwrap());
        let cert2 = TrivialityCertificate::new(vec![(ScPoly::one(f2.signature()), f2.generator(0))]);
        assert!(matches!(acyclicity_witness_char_ne2(&f2, &cert2), Err(Error::Precondition(_))));
    }

    /// Odd cycles `p1, p2`, even `v1, v2` with `d v_i = q_i` odd cycles, and
    /// odd `t` with `d t = 1 - p1 q1 - p2 q2`. Then `z = p1 q1 + p2 q2` has
    /// `z^2 = 2 p1 q1 p2 q2 != 0`, so `2 w - w d(w)` is not enough.
    fn square_nonzero_example() -> (ScDga, TrivialityCertificate) {
        let names = [("p1", 1), ("p2", 1), ("q1", 1), ("q2", 1), ("v1", 0), ("v2", 0), ("t", 1)];
        let sig = ScSignature::new(
            Field::Rational,
            2,
            names.iter().map(|(n, d)| ScGenerator::new(*n, *d, None)).collect(),
        )
        .unwrap();
        let p = |s: &str| ScPoly::parse(&sig, s).unwrap();
        let dga = ScDga::with_differentials(
            &sig,
            vec![("v1", p("q1")), ("v2", p("q2")), ("t", p("1 - p1 q1 - p2 q2"))],
        )
        .unwrap();
        assert!(dga.validate().is_valid());
        let cert = TrivialityCertificate::new(vec![(p("1"), p("t")), (p("p1"), p("v1")), (p("p2"), p("v2"))]);
        (dga, cert)
    }

    #[test]
    fn square_of_z_need_not_vanish() {
        let (dga, cert) = square_nonzero_example();
        let sig = dga.signature();
        let w0 = ScPoly::parse(sig, "t").unwrap();
        let naive = &w0.scale(&Field::Rational.from_i64(2)) - &(&w0 * &dga.d(&w0));
        assert_ne!(dga.d(&naive), ScPoly::one(sig));
        let w = acyclicity_witness_char_ne2(&dga, &cert).unwrap();
        assert_eq!(dga.d(&w), ScPoly::one(sig));
    }

    #[test]
    fn even_x_term_is_moved() {
        // e even with d(e) = q, s odd with d(s) = q h, d(t) = 1 - e q h
        let names = [("e", 0), ("q", 1), ("h", 1), ("s", 1), ("t", 1)];
        let sig = ScSignature::new(
            Field::prime(7).unwrap(),
            2,
            names.iter().map(|(n, d)| ScGenerator::new(*n, *d, None)).collect(),
        )
        .unwrap();
        let p = |s: &str| ScPoly::parse(&sig, s).unwrap();
        let dga = ScDga::with_differentials(&sig, vec![("e", p("q")), ("s", p("q h")), ("t", p("1 - e q h"))])
            .unwrap();
        assert!(dga.validate().is_valid(), "{}", dga.validate());
        let cert = TrivialityCertificate::new(vec![(p("1"), p("t")), (p("e"), p("s"))]);
        cert.check(&dga).unwrap();
        let w = acyclicity_witness_char_ne2(&dga, &cert).unwrap();
        assert_eq!(dga.d(&w), ScPoly::one(&sig));
    }
}
