//! Small named presentations used throughout the tests and shipped with the
//! command-line tool.

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::dga::{stabilization, Dga};
use crate::freealg::{GeneratorInfo, Poly, Signature};
use crate::scalar::Field;
use crate::supercomm::{ScDga, ScGenerator, ScPoly, ScSignature};

fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn build(gens: &[(&str, i64, i64)], diff: &[(&str, &str)]) -> Dga {
    let sig: Arc<Signature> = Signature::new(
        Field::Rational,
        0,
        gens.iter().map(|&(n, d, l)| GeneratorInfo::new(n, d, int(l))).collect(),
    )
    .expect("fixture signature");
    let images = diff
        .iter()
        .map(|&(g, e)| (g, Poly::parse(&sig, e).expect("fixture differential")))
        .collect();
    Dga::with_differentials(&sig, images).expect("fixture presentation")
}

/// `b, c, b1, b2` of degrees `1, -1, 1, 1` and actions `1, 1, 3, 3`, with
/// `d(b1) = d(b2) = b c`. Not acyclic.
pub fn nc1() -> Dga {
    build(&[("b", 1, 1), ("c", -1, 1), ("b1", 1, 3), ("b2", 1, 3)], &[("b1", "b c"), ("b2", "b c")])
}

/// [`nc1`] with the action of `b1` lowered to 2, so `d(b1)` no longer drops
/// the action.
pub fn nc1_broken() -> Dga {
    build(&[("b", 1, 1), ("c", -1, 1), ("b1", 1, 2), ("b2", 1, 3)], &[("b1", "b c"), ("b2", "b c")])
}

/// `a1, a2` in degree 0 and `b1, b2` in degree 1 with `d(b1) = 1`.
pub fn ac1() -> Dga {
    build(&[("a1", 0, 1), ("a2", 0, 1), ("b1", 1, 1), ("b2", 1, 1)], &[("b1", "1")])
}

/// Same generators as [`ac1`] with `d(b1) = 1 + a1 a2`, `d(b2) = a1^2`;
/// actions `1, 1, 3, 3`.
pub fn ac2() -> Dga {
    build(&[("a1", 0, 1), ("a2", 0, 1), ("b1", 1, 3), ("b2", 1, 3)], &[("b1", "1 + a1 a2"), ("b2", "a1^2")])
}

/// Stabilisation in degree 1: `d(b) = a`, actions 1 and 2.
pub fn s1() -> Dga {
    stabilization(Field::Rational, 0, 1, int(1), int(2)).expect("fixture stabilisation")
}

/// `b` (degree 1, `d(b) = 1`), `e` (degree 0, cycle), `f` (degree 1,
/// `d(f) = e`) with actions 1, 2, 3.
pub fn an1() -> Dga {
    build(&[("b", 1, 1), ("e", 0, 2), ("f", 1, 3)], &[("b", "1"), ("f", "e")])
}

/// Graded-commutative `b, b1, b2, c` of degrees `1, 1, 1, -1` with
/// `d(b1) = d(b2) = b c`.
pub fn ex14() -> ScDga {
    let sig = ScSignature::new(
        Field::Rational,
        0,
        [("b", 1), ("b1", 1), ("b2", 1), ("c", -1)]
            .iter()
            .map(|&(n, d)| ScGenerator::new(n, d, None))
            .collect(),
    )
    .expect("fixture signature");
    let bc = ScPoly::parse(&sig, "b c").expect("fixture differential");
    ScDga::with_differentials(&sig, vec![("b1", bc.clone()), ("b2", bc)]).expect("fixture presentation")
}

/// All valid noncommutative fixtures by name.
pub fn all_free() -> Vec<(&'static str, Dga)> {
    vec![("NC1", nc1()), ("AC1", ac1()), ("AC2", ac2()), ("S1", s1()), ("AN1", an1())]
}
