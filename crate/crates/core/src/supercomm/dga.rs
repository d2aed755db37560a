use std::fmt;
use std::sync::Arc;

use super::{same_sc_signature, ScPoly, ScSignature, ScWord};
use crate::error::{Bounded, Error, Result};
use crate::linalg::LinearSystem;
use crate::scalar::Field;

/// A graded-commutative DGA on finitely many generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScDga {
    sig: Arc<ScSignature>,
    diff: Vec<ScPoly>,
}

impl ScDga {
    pub fn new(sig: Arc<ScSignature>, diff: Vec<ScPoly>) -> Result<ScDga> {
        if diff.len() != sig.len() {
            return Err(Error::Structure(format!("{} differential images for {} generators", diff.len(), sig.len())));
        }
        if diff.iter().any(|p| !same_sc_signature(p.signature(), &sig)) {
            return Err(Error::Structure("differential image in a different algebra".into()));
        }
        Ok(ScDga { sig, diff })
    }

    pub fn with_differentials(sig: &Arc<ScSignature>, images: Vec<(&str, ScPoly)>) -> Result<ScDga> {
        let mut diff = vec![ScPoly::zero(sig); sig.len()];
        for (name, p) in images {
            let g = sig
                .index_of(name)
                .ok_or_else(|| Error::Structure(format!("unknown generator {name:?}")))?;
            diff[g] = p;
        }
        ScDga::new(sig.clone(), diff)
    }

    pub fn signature(&self) -> &Arc<ScSignature> {
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

    pub fn diff_of(&self, g: usize) -> &ScPoly {
        &self.diff[g]
    }

    pub fn parse(&self, expr: &str) -> Result<ScPoly> {
        ScPoly::parse(&self.sig, expr)
    }

    pub fn generator(&self, g: usize) -> ScPoly {
        ScPoly::generator(&self.sig, g)
    }

    pub fn sc_leibniz(&self, p: &ScPoly) -> Result<ScPoly> {
        if !same_sc_signature(p.signature(), &self.sig) {
            return Err(Error::Structure("element is not in the algebra of this DGA".into()));
        }
        Ok(self.d(p))
    }

    /// Leibniz extension on normal words `g_1 <= ... <= g_k`.
    pub fn d(&self, p: &ScPoly) -> ScPoly {
        let mut out = ScPoly::zero(&self.sig);
        let one = self.field().one();
        for (w, c) in p.terms() {
            let letters = w.as_slice();
            let mut odd_prefix = false;
            for j in 0..letters.len() {
                let g = letters[j];
                let dg = &self.diff[g as usize];
                if !dg.is_zero() {
                    let prefix = ScPoly::product_of(&self.sig, &letters[..j], one.clone());
                    let suffix = ScPoly::product_of(&self.sig, &letters[j + 1..], one.clone());
                    let term = &(&prefix * dg) * &suffix;
                    let coef = if odd_prefix { -c } else { c.clone() };
                    out = &out + &term.scale(&coef);
                }
                odd_prefix ^= self.sig.is_odd(g);
            }
        }
        out
    }

    pub fn is_cycle(&self, p: &ScPoly) -> bool {
        self.d(p).is_zero()
    }

    /// Degree `-1`, `d^2 = 0` and, when actions are present, condition (F).
    pub fn validate(&self) -> ScValidationReport {
        let mut problems = Vec::new();
        for (g, dg) in self.diff.iter().enumerate() {
            let info = self.sig.generator(g);
            let want = self.sig.reduce_degree(info.degree - 1);
            if !dg.is_homogeneous_of(want) {
                problems.push(format!("d({}) = {dg} is not homogeneous of degree {want}", info.name));
            }
            if let Some(bound) = &info.action {
                for (w, _) in dg.terms() {
                    let a = self.sig.word_action(w).expect("all generators carry actions");
                    if &a >= bound {
                        problems.push(format!(
                            "filtration: d({}) has a monomial of action {a}, not below {bound}",
                            info.name
                        ));
                    }
                }
            }
            let dd = self.d(dg);
            if !dd.is_zero() {
                problems.push(format!("d^2: d(d({})) = {dd}, expected 0", info.name));
            }
        }
        ScValidationReport { problems }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ScValidationReport {
    pub problems: Vec<String>,
}

impl ScValidationReport {
    pub fn is_valid(&self) -> bool {
        self.problems.is_empty()
    }
}

impl fmt::Display for ScValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.problems.is_empty() {
            write!(f, "valid")
        } else {
            write!(f, "{}", self.problems.join("\n"))
        }
    }
}

/// One recomputed identity `d(lhs) = expected`.
#[derive(Debug, Clone)]
pub struct TableLine {
    pub label: String,
    pub computed: ScPoly,
    pub expected: ScPoly,
}

impl TableLine {
    pub fn passed(&self) -> bool {
        self.computed == self.expected
    }
}

impl fmt::Display for TableLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} = {} (expected {}) {}",
            self.label,
            self.computed,
            self.expected,
            if self.passed() { "ok" } else { "FAIL" }
        )
    }
}

/// Recomputes the differential identities of the four-generator example
/// (`d b1 = d b2 = b c`), and checks that every word of length 5 vanishes.
/// The DGA must have generators named `b, b1, b2, c`.
pub fn example14_table(dga: &ScDga) -> Result<Vec<TableLine>> {
    for n in ["b", "b1", "b2", "c"] {
        if dga.sig.index_of(n).is_none() {
            return Err(Error::Structure(format!("generator {n:?} missing")));
        }
    }
    let p = |s: &str| dga.parse(s);
    let zero = ScPoly::zero(&dga.sig);
    let mut lines = Vec::new();
    let mut line = |label: String, x: ScPoly, expected: ScPoly| {
        lines.push(TableLine { label, computed: dga.d(&x), expected });
    };
    line("d(b1 b2)".into(), p("b1 b2")?, p("b c b2 - b1 b c")?);
    let bi = ["b1", "b2"];
    for i in bi {
        line(format!("d({i} {i})"), p(&format!("{i} {i}"))?, zero.clone());
    }
    for i in bi {
        line(format!("d({i} b)"), p(&format!("{i} b"))?, zero.clone());
    }
    for i in bi {
        line(format!("d({i} c)"), p(&format!("{i} c"))?, zero.clone());
    }
    line("d(b c)".into(), p("b c")?, zero.clone());
    for tail in ["b", "c", "b c"] {
        for i in bi {
            for j in bi {
                let s = format!("{i} {j} {tail}");
                line(format!("d({s})"), p(&s)?, zero.clone());
            }
        }
    }
    let n = dga.len() as u32;
    let mut count = 0usize;
    let mut nonzero = 0usize;
    let mut word = vec![0u32; 5];
    loop {
        let prod = ScPoly::product_of(&dga.sig, &word, dga.field().one());
        count += 1;
        if !prod.is_zero() {
            nonzero += 1;
        }
        // odometer over all 4^5 ordered words
        let mut k = 0;
        while k < 5 && word[k] == n - 1 {
            word[k] = 0;
            k += 1;
        }
        if k == 5 {
            break;
        }
        word[k] += 1;
    }
    lines.push(TableLine {
        label: format!("nonzero products among all {count} words of length 5"),
        computed: ScPoly::constant(&dga.sig, dga.field().from_i64(nonzero as i64)),
        expected: zero,
    });
    Ok(lines)
}

/// Exact solve of `d(y) = x` over normal words of length at most `length_cap`.
pub fn sc_is_boundary_bruteforce(dga: &ScDga, x: &ScPoly, length_cap: usize) -> Result<Bounded<ScPoly>> {
    if !same_sc_signature(x.signature(), &dga.sig) {
        return Err(Error::Structure("element is not in the algebra of this DGA".into()));
    }
    if x.is_zero() {
        return Ok(Bounded::Found(ScPoly::zero(&dga.sig)));
    }
    let target_degrees: Vec<i64> = x.terms().map(|(w, _)| dga.sig.word_degree(w) + 1).collect();
    let basis: Vec<ScWord> = dga
        .sig
        .normal_words_up_to(length_cap)
        .into_iter()
        .filter(|w| {
            let d = dga.sig.word_degree(w);
            target_degrees.iter().any(|&t| dga.sig.reduce_degree(t) == d)
        })
        .collect();
    let mut sys = LinearSystem::new(dga.field());
    for w in &basis {
        let mut m = ScPoly::zero(&dga.sig);
        m.add_term(w.clone(), dga.field().one());
        let dm = dga.d(&m);
        sys.push_column(dm.terms().map(|(k, c)| (k.clone(), c.clone())).collect::<Vec<_>>());
    }
    sys.set_rhs(x.terms().map(|(k, c)| (k.clone(), c.clone())).collect::<Vec<_>>());
    Ok(match sys.solve() {
        Some(sol) => {
            let mut y = ScPoly::zero(&dga.sig);
            for (w, c) in basis.into_iter().zip(sol) {
                y.add_term(w, c);
            }
            debug_assert_eq!(&dga.d(&y), x);
            Bounded::Found(y)
        }
        None => Bounded::UnknownAtCap { cap: length_cap as u64 },
    })
}

/// `x = sum_i u_i d(v_i) w_i`, graded-commutative version.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScCertificate {
    pub terms: Vec<(ScPoly, ScPoly, ScPoly)>,
}

impl ScCertificate {
    pub fn evaluate(&self, dga: &ScDga) -> ScPoly {
        self.terms
            .iter()
            .fold(ScPoly::zero(&dga.sig), |acc, (u, v, w)| &acc + &(&(u * &dga.d(v)) * w))
    }
}

/// Bounded search for `x` in the ideal generated by the boundaries. Since
/// the algebra is graded-commutative, `u d(a) w = +- d(a) (u w)`, so the
/// unknowns are right multipliers `w` of each `d(a_i)`. The search uses all
/// `w` with `len(w) + (longest monomial of d(a_i)) <= cap`.
pub fn sc_char_vanishing(dga: &ScDga, x: &ScPoly, cap: usize) -> Result<Bounded<ScCertificate>> {
    if !same_sc_signature(x.signature(), &dga.sig) {
        return Err(Error::Structure("element is not in the algebra of this DGA".into()));
    }
    let sig = &dga.sig;
    if x.is_zero() {
        return Ok(Bounded::Found(ScCertificate { terms: vec![] }));
    }
    let words = sig.normal_words_up_to(cap);
    let homogeneous = x.degree();
    let mut unknowns: Vec<(usize, ScWord)> = Vec::new();
    let mut sys = LinearSystem::new(dga.field());
    for (g, dg) in dga.diff.iter().enumerate() {
        let Some(len) = dg.max_len() else { continue };
        if len > cap {
            continue;
        }
        let dg_degree = sig.reduce_degree(sig.generator(g).degree - 1);
        for w in words.iter().filter(|w| w.len() + len <= cap) {
            if let Some(d) = homogeneous {
                if sig.reduce_degree(dg_degree + sig.word_degree(w)) != d {
                    continue;
                }
            }
            let mut m = ScPoly::zero(sig);
            m.add_term(w.clone(), dga.field().one());
            let col = dg * &m;
            if col.is_zero() {
                continue;
            }
            sys.push_column(col.terms().map(|(k, c)| (k.clone(), c.clone())).collect::<Vec<_>>());
            unknowns.push((g, w.clone()));
        }
    }
    sys.set_rhs(x.terms().map(|(k, c)| (k.clone(), c.clone())).collect::<Vec<_>>());
    let Some(sol) = sys.solve() else {
        return Ok(Bounded::UnknownAtCap { cap: cap as u64 });
    };
    let mut grouped: Vec<ScPoly> = vec![ScPoly::zero(sig); dga.len()];
    for ((g, w), c) in unknowns.into_iter().zip(sol) {
        grouped[g].add_term(w, c);
    }
    let terms = grouped
        .into_iter()
        .enumerate()
        .filter(|(_, w)| !w.is_zero())
        .map(|(g, w)| (ScPoly::one(sig), ScPoly::generator(sig, g), w))
        .collect();
    let cert = ScCertificate { terms };
    if &cert.evaluate(dga) != x {
        return Err(Error::InternalAssertion("certificate does not re-validate".into()));
    }
    Ok(Bounded::Found(cert))
}
