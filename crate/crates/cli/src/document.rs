//! JSON documents describing presentations and certificates.
//!
//! Polynomials are read either as expression strings (`"b1 - a1 b1 a2"`) or
//! as lists of `[coefficient, [generator, ...]]`; they are always written in
//! the list form, in canonical monomial order.

use std::fmt;
use std::sync::Arc;

use indexmap::IndexMap;
use serde::de::{self, MapAccess, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use semifree::dga::Dga;
use semifree::scalar::parse_rational;
use semifree::supercomm::{ScDga, ScGenerator, ScPoly, ScSignature};
use semifree::text::{poly_from_structured, structured_terms};
use semifree::{Error, Field, GeneratorInfo, Poly, Signature};

use crate::CliError;

pub type Terms = Vec<(String, Vec<String>)>;

/// A polynomial as written in a document.
#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
#[serde(untagged)]
pub enum PolyInput {
    Expr(String),
    Terms(Terms),
}

impl Serialize for PolyInput {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            PolyInput::Expr(e) => e.serialize(s),
            PolyInput::Terms(t) => t.serialize(s),
        }
    }
}

impl PolyInput {
    /// Reads a command-line argument: JSON lists start with `[`, anything
    /// else is an expression.
    pub fn from_arg(arg: &str) -> Result<PolyInput, CliError> {
        if arg.trim_start().starts_with('[') {
            let terms: Terms =
                serde_json::from_str(arg).map_err(|e| CliError::Parse(format!("polynomial {arg:?}: {e}")))?;
            Ok(PolyInput::Terms(terms))
        } else {
            Ok(PolyInput::Expr(arg.to_string()))
        }
    }

    pub fn to_poly(&self, sig: &Arc<Signature>) -> Result<Poly, Error> {
        match self {
            PolyInput::Expr(e) => Poly::parse(sig, e),
            PolyInput::Terms(t) => poly_from_structured(sig, t),
        }
    }

    pub fn to_sc_poly(&self, sig: &Arc<ScSignature>) -> Result<ScPoly, Error> {
        match self {
            PolyInput::Expr(e) => ScPoly::parse(sig, e),
            PolyInput::Terms(t) => {
                let mut p = ScPoly::zero(sig);
                for (c, names) in t {
                    let coef = sig.field().parse(c)?;
                    let word = names
                        .iter()
                        .map(|n| {
                            sig.index_of(n)
                                .map(|g| g as u32)
                                .ok_or_else(|| Error::Structure(format!("unknown generator {n:?}")))
                        })
                        .collect::<Result<Vec<u32>, Error>>()?;
                    p = &p + &ScPoly::product_of(sig, &word, coef);
                }
                Ok(p)
            }
        }
    }
}

pub fn sc_structured_terms(p: &ScPoly) -> Terms {
    let sig = p.signature();
    p.terms()
        .map(|(w, c)| (c.to_string(), sig.names(w).into_iter().map(String::from).collect()))
        .collect()
}

/// `"rational"` or `{"prime": p}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldSpec {
    Rational,
    Prime(u64),
}

#[derive(Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
struct PrimeSpec {
    prime: u64,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum RawField {
    Name(String),
    Prime(PrimeSpec),
}

impl<'de> Deserialize<'de> for FieldSpec {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        match RawField::deserialize(d)? {
            RawField::Name(n) if n == "rational" => Ok(FieldSpec::Rational),
            RawField::Name(n) => Err(de::Error::custom(format!("unknown field {n:?}; expected \"rational\" or {{\"prime\": p}}"))),
            RawField::Prime(p) => Ok(FieldSpec::Prime(p.prime)),
        }
    }
}

impl Serialize for FieldSpec {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            FieldSpec::Rational => s.serialize_str("rational"),
            FieldSpec::Prime(p) => PrimeSpec { prime: *p }.serialize(s),
        }
    }
}

impl FieldSpec {
    pub fn to_field(self) -> Result<Field, Error> {
        match self {
            FieldSpec::Rational => Ok(Field::Rational),
            FieldSpec::Prime(p) => Field::prime(p),
        }
    }

    pub fn of(field: Field) -> FieldSpec {
        match field.characteristic() {
            0 => FieldSpec::Rational,
            p => FieldSpec::Prime(p),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Deserialize, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    #[default]
    Free,
    Supercommutative,
}

impl Kind {
    fn is_free(&self) -> bool {
        *self == Kind::Free
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorSpec {
    pub name: String,
    pub degree: i64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub action: Option<String>,
}

fn unique_keys<'de, D: Deserializer<'de>>(d: D) -> Result<IndexMap<String, PolyInput>, D::Error> {
    struct Unique;
    impl<'de> Visitor<'de> for Unique {
        type Value = IndexMap<String, PolyInput>;

        fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
            f.write_str("a map from generator names to polynomials")
        }

        fn visit_map<A: MapAccess<'de>>(self, mut map: A) -> Result<Self::Value, A::Error> {
            let mut out = IndexMap::new();
            while let Some((k, v)) = map.next_entry::<String, PolyInput>()? {
                if out.contains_key(&k) {
                    return Err(de::Error::custom(format!("duplicate differential entry {k:?}")));
                }
                out.insert(k, v);
            }
            Ok(out)
        }
    }
    d.deserialize_map(Unique)
}

/// A presentation: field, grading modulus, generators and the differential
/// of each non-cycle generator.
#[derive(Debug, Clone, PartialEq, Eq, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct DgaDocument {
    #[serde(default, skip_serializing_if = "Kind::is_free")]
    pub kind: Kind,
    pub field: FieldSpec,
    pub mu: u64,
    pub generators: Vec<GeneratorSpec>,
    #[serde(default, deserialize_with = "unique_keys")]
    pub differential: IndexMap<String, PolyInput>,
}

/// A built presentation of either kind.
#[derive(Debug, Clone)]
pub enum Loaded {
    Free(Dga),
    Super(ScDga),
}

impl DgaDocument {
    pub fn from_json(text: &str) -> Result<DgaDocument, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Parse(e.to_string()))
    }

    /// Pretty JSON with a trailing newline.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("documents serialize");
        s.push('\n');
        s
    }

    pub fn build(&self) -> Result<Loaded, Error> {
        let field = self.field.to_field()?;
        let mut names = std::collections::BTreeSet::new();
        for g in &self.generators {
            if !names.insert(g.name.as_str()) {
                return Err(Error::Validation(format!("duplicate generator {:?}", g.name)));
            }
        }
        for k in self.differential.keys() {
            if !names.contains(k.as_str()) {
                return Err(Error::Structure(format!("differential given for unknown generator {k:?}")));
            }
        }
        match self.kind {
            Kind::Free => {
                let gens = self
                    .generators
                    .iter()
                    .map(|g| {
                        let a = g
                            .action
                            .as_deref()
                            .ok_or_else(|| Error::Validation(format!("generator {:?} has no action", g.name)))?;
                        Ok(GeneratorInfo::new(g.name.clone(), g.degree, parse_rational(a)?))
                    })
                    .collect::<Result<Vec<_>, Error>>()?;
                let sig = Signature::new(field, self.mu, gens)?;
                let images = self
                    .differential
                    .iter()
                    .map(|(k, p)| Ok((k.as_str(), p.to_poly(&sig)?)))
                    .collect::<Result<Vec<_>, Error>>()?;
                Ok(Loaded::Free(Dga::with_differentials(&sig, images)?))
            }
            Kind::Supercommutative => {
                let gens = self
                    .generators
                    .iter()
                    .map(|g| Ok(ScGenerator::new(g.name.clone(), g.degree, g.action.as_deref().map(parse_rational).transpose()?)))
                    .collect::<Result<Vec<_>, Error>>()?;
                let sig = ScSignature::new(field, self.mu, gens)?;
                let images = self
                    .differential
                    .iter()
                    .map(|(k, p)| Ok((k.as_str(), p.to_sc_poly(&sig)?)))
                    .collect::<Result<Vec<_>, Error>>()?;
                Ok(Loaded::Super(ScDga::with_differentials(&sig, images)?))
            }
        }
    }

    /// Canonical document of a free presentation.
    pub fn from_dga(dga: &Dga) -> DgaDocument {
        let sig = dga.signature();
        DgaDocument {
            kind: Kind::Free,
            field: FieldSpec::of(sig.field()),
            mu: sig.mu(),
            generators: sig
                .generators()
                .iter()
                .map(|g| GeneratorSpec { name: g.name.clone(), degree: g.degree, action: Some(g.action.to_string()) })
                .collect(),
            differential: (0..dga.len())
                .filter(|&i| !dga.diff_of(i).is_zero())
                .map(|i| (sig.generator(i).name.clone(), PolyInput::Terms(structured_terms(dga.diff_of(i)))))
                .collect(),
        }
    }

    /// Canonical document of a graded-commutative presentation.
    pub fn from_sc_dga(dga: &ScDga) -> DgaDocument {
        let sig = dga.signature();
        DgaDocument {
            kind: Kind::Supercommutative,
            field: FieldSpec::of(sig.field()),
            mu: sig.mu(),
            generators: sig
                .generators()
                .iter()
                .map(|g| GeneratorSpec {
                    name: g.name.clone(),
                    degree: g.degree,
                    action: g.action.as_ref().map(|a| a.to_string()),
                })
                .collect(),
            differential: (0..dga.len())
                .filter(|&i| !dga.diff_of(i).is_zero())
                .map(|i| (sig.generator(i).name.clone(), PolyInput::Terms(sc_structured_terms(dga.diff_of(i)))))
                .collect(),
        }
    }

    pub fn canonical(loaded: &Loaded) -> DgaDocument {
        match loaded {
            Loaded::Free(d) => DgaDocument::from_dga(d),
            Loaded::Super(d) => DgaDocument::from_sc_dga(d),
        }
    }
}

/// One term `u d(v) w` of a two-sided certificate.
#[derive(Debug, Clone, PartialEq, Eq, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct CertTerm {
    pub u: PolyInput,
    pub v: PolyInput,
    pub w: PolyInput,
}

#[derive(Debug, Clone, PartialEq, Eq, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct CertificateDocument {
    pub terms: Vec<CertTerm>,
}

impl CertificateDocument {
    pub fn from_json(text: &str) -> Result<CertificateDocument, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Parse(e.to_string()))
    }

    pub fn triples(&self, sig: &Arc<Signature>) -> Result<Vec<(Poly, Poly, Poly)>, Error> {
        self.terms
            .iter()
            .map(|t| Ok((t.u.to_poly(sig)?, t.v.to_poly(sig)?, t.w.to_poly(sig)?)))
            .collect()
    }
}
