//! Exact ground-field arithmetic: arbitrary-precision rationals or residues
//! modulo a prime.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Largest modulus accepted, so that products of residues fit in a `u64`.
pub const MAX_PRIME: u64 = (1 << 32) - 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Field {
    Rational,
    Prime(u64),
}

impl Field {
    pub fn prime(p: u64) -> Result<Field> {
        if !(2..=MAX_PRIME).contains(&p) || !is_prime(p) {
            return Err(Error::Validation(format!(
                "{p} is not a prime modulus in [2, {MAX_PRIME}]"
            )));
        }
        Ok(Field::Prime(p))
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            Field::Rational => 0,
            Field::Prime(p) => *p,
        }
    }

    pub fn zero(&self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> Scalar {
        match self {
            Field::Rational => Scalar::Rational(BigRational::from_integer(n.into())),
            Field::Prime(p) => Scalar::Mod {
                value: n.rem_euclid(*p as i64) as u64,
                modulus: *p,
            },
        }
    }

    /// Maps a rational number into the field; fails when the denominator
    /// vanishes modulo the characteristic.
    pub fn from_rational(&self, q: &BigRational) -> Result<Scalar> {
        match self {
            Field::Rational => Ok(Scalar::Rational(q.clone())),
            Field::Prime(p) => {
                let modulus = BigInt::from(*p);
                let num = q.numer().mod_floor(&modulus).to_u64().unwrap();
                let den = q.denom().mod_floor(&modulus).to_u64().unwrap();
                if den == 0 {
                    return Err(Error::Validation(format!(
                        "denominator of {q} vanishes modulo {p}"
                    )));
                }
                let num = Scalar::Mod { value: num, modulus: *p };
                let den = Scalar::Mod { value: den, modulus: *p };
                Ok(&num * &den.inv().unwrap())
            }
        }
    }

    /// Parses `"5"`, `"-3/4"` and the like into a field element.
    pub fn parse(&self, s: &str) -> Result<Scalar> {
        let q = parse_rational(s)?;
        self.from_rational(&q)
    }

    pub fn contains(&self, c: &Scalar) -> bool {
        match (self, c) {
            (Field::Rational, Scalar::Rational(_)) => true,
            (Field::Prime(p), Scalar::Mod { modulus, .. }) => p == modulus,
            _ => false,
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "Q"),
            Field::Prime(p) => write!(f, "F_{p}"),
        }
    }
}

/// Parses an integer or a fraction `p/q` with optional sign.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let t = s.trim();
    let bad = || Error::Parse(format!("malformed scalar {s:?}"));
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let valid = |x: &str, signed: bool| {
        let digits = if signed {
            x.strip_prefix('-').or_else(|| x.strip_prefix('+')).unwrap_or(x)
        } else {
            x
        };
        !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit())
    };
    if !valid(num, true) || !valid(den, false) {
        return Err(bad());
    }
    let n: BigInt = num.trim_start_matches('+').parse().map_err(|_| bad())?;
    let d: BigInt = den.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(Error::Parse(format!("zero denominator in {s:?}")));
    }
    Ok(BigRational::new(n, d))
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// An element of a [`Field`]. Rationals are kept in lowest terms by
/// `BigRational`; residues live in `[0, modulus)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Mod { value: u64, modulus: u64 },
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Rational(_) => Field::Rational,
            Scalar::Mod { modulus, .. } => Field::Prime(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_zero(),
            Scalar::Mod { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_one(),
            Scalar::Mod { value, .. } => *value == 1,
        }
    }

    pub fn inv(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Scalar::Rational(q) => Scalar::Rational(q.recip()),
            Scalar::Mod { value, modulus } => Scalar::Mod {
                value: pow_mod(*value, modulus - 2, *modulus),
                modulus: *modulus,
            },
        })
    }

    pub fn pow(&self, mut e: u32) -> Scalar {
        let mut base = self.clone();
        let mut acc = self.field().one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// True when the printed form starts with a minus sign.
    pub fn is_negative(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_negative(),
            Scalar::Mod { .. } => false,
        }
    }
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc
}

fn mismatch(a: &Scalar, b: &Scalar) -> ! {
    panic!("scalar field mismatch: {} vs {}", a.field(), b.field())
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (Scalar::Mod { value: a, modulus: p }, Scalar::Mod { value: b, modulus: q }) if p == q => {
                Scalar::Mod { value: (a + b) % p, modulus: *p }
            }
            _ => mismatch(self, rhs),
        }
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self + &(-rhs)
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (Scalar::Mod { value: a, modulus: p }, Scalar::Mod { value: b, modulus: q }) if p == q => {
                Scalar::Mod { value: a * b % p, modulus: *p }
            }
            _ => mismatch(self, rhs),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(a) => Scalar::Rational(-a),
            Scalar::Mod { value, modulus } => Scalar::Mod {
                value: (modulus - value) % modulus,
                modulus: *modulus,
            },
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(q) => {
                if q.is_integer() {
                    write!(f, "{}", q.numer())
                } else {
                    write!(f, "{}/{}", q.numer(), q.denom())
                }
            }
            Scalar::Mod { value, .. } => write!(f, "{value}"),
        }
    }
}
