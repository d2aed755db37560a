//! Random instances shared by the integration tests.
#![allow(dead_code)]

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::seq::SliceRandom;
use rand::Rng;
use semifree::charalg::TwoSidedCertificate;
use semifree::dga::Dga;
use semifree::supercomm::{ScDga, ScGenerator, ScPoly, ScSignature, TrivialityCertificate};
use semifree::{Field, GeneratorInfo, Poly, Scalar, Signature, Word};

pub const NAMES: [&str; 6] = ["x", "y", "z", "u", "v", "w"];

pub fn nonzero_scalar<R: Rng>(rng: &mut R, field: Field) -> Scalar {
    loop {
        let c = field.from_i64(rng.gen_range(-3..=3));
        if !c.is_zero() {
            return c;
        }
    }
}

/// Words over the allowed generators with `nu <= cap`.
fn words_over(sig: &Arc<Signature>, allowed: &[u32], cap: u64) -> Vec<Word> {
    sig.degree_fn()
        .words_up_to(cap)
        .into_iter()
        .filter(|w| w.as_slice().iter().all(|g| allowed.contains(g)))
        .collect()
}

/// A valid filtered DGA on 2 to 4 generators with integer actions in
/// `1..=4`. Each differential is `d(p) + c` for a combination `p` of words in
/// generators of smaller action and a combination `c` of cycle words, so
/// `d^2 = 0` and the filtration condition hold by construction.
pub fn random_filtered_dga<R: Rng>(rng: &mut R, field: Field, mu: u64) -> Dga {
    loop {
        let n = rng.gen_range(2..=4);
        let mut actions: Vec<i64> = (0..n).map(|_| rng.gen_range(1..=4)).collect();
        actions.sort_unstable();
        let gens: Vec<GeneratorInfo> = (0..n)
            .map(|i| {
                GeneratorInfo::new(NAMES[i], rng.gen_range(-1..=2), BigRational::from_integer(BigInt::from(actions[i])))
            })
            .collect();
        let sig = Signature::new(field, mu, gens).expect("random signature");
        let mut diff = vec![Poly::zero(&sig); n];
        for k in 0..n {
            let partial = Dga::new(sig.clone(), diff.clone()).expect("partial presentation");
            let lk = actions[k] as u64;
            let below: Vec<u32> = (0..k as u32).filter(|&g| (actions[g as usize] as u64) < lk).collect();
            let deg = sig.generator(k).degree;
            let mut image = Poly::zero(&sig);
            // boundary part
            let bwords: Vec<Word> = words_over(&sig, &below, lk)
                .into_iter()
                .filter(|w| !w.is_empty() && sig.word_degree(w.as_slice()) == sig.reduce_degree(deg))
                .collect();
            for _ in 0..rng.gen_range(0..=2) {
                if let Some(w) = bwords.choose(rng) {
                    let m = Poly::monomial(&sig, w.clone(), nonzero_scalar(rng, field));
                    image = &image + &partial.d(&m);
                }
            }
            // cycle part
            let cwords: Vec<Word> = words_over(&sig, &below, lk - 1)
                .into_iter()
                .filter(|w| sig.word_degree(w.as_slice()) == sig.reduce_degree(deg - 1))
                .filter(|w| partial.d(&Poly::monomial(&sig, w.clone(), field.one())).is_zero())
                .collect();
            for _ in 0..rng.gen_range(0..=2) {
                if let Some(w) = cwords.choose(rng) {
                    image = &image + &Poly::monomial(&sig, w.clone(), nonzero_scalar(rng, field));
                }
            }
            diff[k] = image;
        }
        let dga = Dga::new(sig, diff).expect("random presentation");
        if dga.differentials().iter().all(Poly::is_zero) {
            continue;
        }
        assert!(dga.validate().is_valid(), "{:?}\n{}", dga, dga.validate());
        return dga;
    }
}

/// A random nonzero element with at most `terms` monomials of `nu <= cap`
/// (raised to the lightest generator weight if needed),
/// homogeneous when `homogeneous` is set.
pub fn random_element<R: Rng>(rng: &mut R, sig: &Arc<Signature>, cap: u64, terms: usize, homogeneous: bool) -> Poly {
    let lightest = sig.degree_fn().weights().iter().copied().min().unwrap_or(1);
    let words: Vec<Word> =
        sig.degree_fn().words_up_to(cap.max(lightest)).into_iter().filter(|w| !w.is_empty()).collect();
    loop {
        let first = words.choose(rng).expect("some word");
        let deg = sig.word_degree(first.as_slice());
        let mut p = Poly::monomial(sig, first.clone(), nonzero_scalar(rng, sig.field()));
        for _ in 1..rng.gen_range(1..=terms) {
            let w = words.choose(rng).expect("some word");
            if homogeneous && sig.word_degree(w.as_slice()) != deg {
                continue;
            }
            p = &p + &Poly::monomial(sig, w.clone(), nonzero_scalar(rng, sig.field()));
        }
        if !p.is_zero() {
            return p;
        }
    }
}

/// Expands `d(z)` by the Leibniz rule into triples `(s * prefix, a_j, suffix)`.
pub fn leibniz_certificate(dga: &Dga, z: &Poly) -> TwoSidedCertificate {
    let sig = dga.signature();
    let f = dga.field();
    let mut terms = Vec::new();
    for (w, c) in z.terms() {
        let letters = w.as_slice();
        for j in 0..letters.len() {
            if dga.diff_of(letters[j] as usize).is_zero() {
                continue;
            }
            let prefix = &letters[..j];
            let sign = if sig.word_is_odd(prefix) { -c } else { c.clone() };
            terms.push((
                Poly::monomial(sig, Word(prefix.to_vec()), sign),
                dga.generator(letters[j] as usize),
                Poly::monomial(sig, Word(letters[j + 1..].to_vec()), f.one()),
            ));
        }
    }
    TwoSidedCertificate::new(dga, &dga.d(z), terms).expect("Leibniz expansion is a certificate")
}

/// Nonzero products of cycle generators of the given reduced degree, up to
/// length 3.
fn cycle_products(sig: &Arc<ScSignature>, cycles: &[u32], degree: i64) -> Vec<ScPoly> {
    let one = sig.field().one();
    let mut out = Vec::new();
    let mut stack: Vec<Vec<u32>> = vec![vec![]];
    while let Some(w) = stack.pop() {
        let p = ScPoly::product_of(sig, &w, one.clone());
        if !p.is_zero() && p.degree() == Some(sig.reduce_degree(degree)) {
            out.push(p);
        }
        if w.len() < 3 {
            for &g in cycles {
                let mut next = w.clone();
                next.push(g);
                stack.push(next);
            }
        }
    }
    out
}

/// A graded-commutative DGA with an odd generator `t` whose differential is
/// `1 - sum c_i x_i d(y_i)`, where the `x_i` and `d(y_i)` are products of
/// cycle generators, together with the certificate
/// `1 = d(t) + sum c_i x_i d(y_i)`.
pub fn random_sc_acyclic<R: Rng>(rng: &mut R, field: Field, mu: u64) -> (ScDga, TrivialityCertificate) {
    loop {
        let r = rng.gen_range(1..=3);
        let s = rng.gen_range(1..=3);
        let mut gens = Vec::new();
        for i in 0..r {
            gens.push(ScGenerator::new(format!("p{i}"), rng.gen_range(-1..=1), None));
        }
        for i in 0..s {
            gens.push(ScGenerator::new(format!("y{i}"), rng.gen_range(0..=2), None));
        }
        gens.push(ScGenerator::new("t", 1, None));
        let sig = ScSignature::new(field, mu, gens).expect("random signature");
        let cycles: Vec<u32> = (0..r as u32).collect();
        let mut images = Vec::new();
        let mut cert = vec![(ScPoly::one(&sig), ScPoly::generator(&sig, r + s))];
        let mut sum = ScPoly::zero(&sig);
        for i in 0..s {
            let yi = r + i;
            let ydeg = sig.generator(yi).degree;
            let Some(dy) = cycle_products(&sig, &cycles, ydeg - 1).choose(rng).cloned() else { continue };
            let Some(x) = cycle_products(&sig, &cycles, 1 - ydeg).choose(rng).cloned() else { continue };
            let x = x.scale(&nonzero_scalar(rng, field));
            sum = &sum + &(&x * &dy);
            images.push((sig.generator(yi).name.clone(), dy));
            cert.push((x, ScPoly::generator(&sig, yi)));
        }
        let dt = &ScPoly::one(&sig) - &sum;
        images.push(("t".to_string(), dt));
        let dga = ScDga::with_differentials(&sig, images.iter().map(|(n, p)| (n.as_str(), p.clone())).collect())
            .expect("random presentation");
        if !dga.validate().is_valid() {
            continue;
        }
        let cert = TrivialityCertificate::new(cert);
        cert.check(&dga).expect("constructed certificate");
        return (dga, cert);
    }
}
