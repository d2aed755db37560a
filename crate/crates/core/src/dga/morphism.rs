use std::collections::BTreeMap;
use std::sync::Arc;

use num_rational::BigRational;

use super::Dga;
use crate::error::{Error, Result};
use crate::freealg::{same_signature, GeneratorInfo, Poly, Signature};
use crate::scalar::Scalar;

/// A unital algebra map determined by the images of the generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraMorphism {
    source: Arc<Signature>,
    target: Arc<Signature>,
    images: Vec<Poly>,
}

impl AlgebraMorphism {
    pub fn new(source: &Arc<Signature>, target: &Arc<Signature>, images: Vec<Poly>) -> Result<Self> {
        if images.len() != source.len() {
            return Err(Error::Structure(format!(
                "{} images for {} generators",
                images.len(),
                source.len()
            )));
        }
        if source.field() != target.field() {
            return Err(Error::Structure("source and target fields differ".into()));
        }
        if images.iter().any(|p| !same_signature(p.signature(), target)) {
            return Err(Error::Structure("image outside the target algebra".into()));
        }
        Ok(AlgebraMorphism { source: source.clone(), target: target.clone(), images })
    }

    pub fn identity(sig: &Arc<Signature>) -> Self {
        let images = (0..sig.len()).map(|g| Poly::generator(sig, g)).collect();
        AlgebraMorphism { source: sig.clone(), target: sig.clone(), images }
    }

    /// Sends each named generator to a scalar and fixes the others.
    pub fn evaluation(sig: &Arc<Signature>, values: &[(&str, Scalar)]) -> Result<Self> {
        let mut m = AlgebraMorphism::identity(sig);
        for (name, c) in values {
            let g = sig
                .index_of(name)
                .ok_or_else(|| Error::Structure(format!("unknown generator {name:?}")))?;
            if !sig.field().contains(c) {
                return Err(Error::Structure(format!("{c} is not in {}", sig.field())));
            }
            m.images[g] = Poly::constant(sig, c.clone());
        }
        Ok(m)
    }

    pub fn source(&self) -> &Arc<Signature> {
        &self.source
    }

    pub fn target(&self) -> &Arc<Signature> {
        &self.target
    }

    pub fn image(&self, g: usize) -> &Poly {
        &self.images[g]
    }

    pub fn apply(&self, p: &Poly) -> Result<Poly> {
        if !same_signature(p.signature(), &self.source) {
            return Err(Error::Structure("element is not in the source algebra".into()));
        }
        Ok(self.map(p))
    }

    pub(crate) fn map(&self, p: &Poly) -> Poly {
        let mut out = Poly::zero(&self.target);
        for (w, c) in p.terms() {
            let mut acc = Poly::constant(&self.target, c.clone());
            for &g in w.as_slice() {
                acc = &acc * &self.images[g as usize];
                if acc.is_zero() {
                    break;
                }
            }
            out = &out + &acc;
        }
        out
    }
}

/// The tame automorphism `a_pivot -> r a_pivot + A` fixing the other
/// generators, where `A` does not involve `a_pivot`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ElementaryAuto {
    sig: Arc<Signature>,
    pivot: usize,
    unit: Scalar,
    tail: Poly,
}

impl ElementaryAuto {
    pub fn new(sig: &Arc<Signature>, pivot: usize, unit: Scalar, tail: Poly) -> Result<Self> {
        if pivot >= sig.len() {
            return Err(Error::Structure(format!("pivot index {pivot} out of range")));
        }
        if !same_signature(tail.signature(), sig) {
            return Err(Error::Structure("tail is not in the algebra".into()));
        }
        if unit.is_zero() || !sig.field().contains(&unit) {
            return Err(Error::Validation(format!("unit {unit} is not invertible in {}", sig.field())));
        }
        if tail.involves(pivot) {
            return Err(Error::Validation(format!(
                "tail {tail} involves the pivot {}",
                sig.generator(pivot).name
            )));
        }
        let deg = sig.generator(pivot).degree;
        if !tail.is_homogeneous_of(deg) {
            return Err(Error::Validation(format!("tail {tail} is not homogeneous of degree {deg}")));
        }
        Ok(ElementaryAuto { sig: sig.clone(), pivot, unit, tail })
    }

    pub fn pivot(&self) -> usize {
        self.pivot
    }

    pub fn unit(&self) -> &Scalar {
        &self.unit
    }

    pub fn tail(&self) -> &Poly {
        &self.tail
    }

    pub fn as_morphism(&self) -> AlgebraMorphism {
        let mut m = AlgebraMorphism::identity(&self.sig);
        m.images[self.pivot] = &Poly::generator(&self.sig, self.pivot).scale(&self.unit) + &self.tail;
        m
    }

    pub fn apply(&self, p: &Poly) -> Result<Poly> {
        self.as_morphism().apply(p)
    }

    /// `a_pivot -> r^{-1} (a_pivot - A)`.
    pub fn inverse(&self) -> ElementaryAuto {
        let rinv = self.unit.inv().expect("unit is nonzero");
        ElementaryAuto {
            sig: self.sig.clone(),
            pivot: self.pivot,
            unit: rinv.clone(),
            tail: (-&self.tail).scale(&rinv),
        }
    }

    /// Human-readable `a -> r a + A`.
    pub fn describe(&self) -> String {
        let image = &Poly::generator(&self.sig, self.pivot).scale(&self.unit) + &self.tail;
        format!("{} -> {}", self.sig.generator(self.pivot).name, image)
    }
}

/// What to do when a pushed-forward differential violates condition (F)
/// for the existing actions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ActionPolicy {
    /// Report the violation as a filtration error.
    Strict,
    /// Assign fresh integer actions in topological order of the differential.
    Reassign,
}

/// Conjugates the differential by `e`: `d' = e . d . e^{-1}` on generators.
pub fn pushforward_differential(dga: &Dga, e: &ElementaryAuto, policy: ActionPolicy) -> Result<Dga> {
    let out = pushforward_unchecked(dga, e)?;
    match out.require_valid() {
        Ok(()) => Ok(out),
        Err(Error::Filtration(msg)) => match policy {
            ActionPolicy::Strict => Err(Error::Filtration(msg)),
            ActionPolicy::Reassign => {
                let fixed = reassign_actions(&out)?;
                fixed.require_valid().map_err(|e| Error::InternalAssertion(e.to_string()))?;
                Ok(fixed)
            }
        },
        // a conjugate of a valid differential has degree -1 and squares to 0
        Err(other) if dga.validate().is_valid() => Err(Error::InternalAssertion(other.to_string())),
        Err(other) => Err(other),
    }
}

pub(crate) fn pushforward_unchecked(dga: &Dga, e: &ElementaryAuto) -> Result<Dga> {
    if !same_signature(&e.sig, dga.signature()) {
        return Err(Error::Structure("automorphism of a different algebra".into()));
    }
    let fwd = e.as_morphism();
    let back = e.inverse().as_morphism();
    let diff = (0..dga.len())
        .map(|g| fwd.map(&dga.d(back.image(g))))
        .collect();
    Dga::new(dga.signature().clone(), diff)
}

/// Integer actions `l(a) = 1 + max action of a monomial of d(a)`, computed
/// along a topological order of the "appears in d(a)" relation.
fn reassign_actions(dga: &Dga) -> Result<Dga> {
    let sig = dga.signature();
    let n = dga.len();
    let mut deps: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (g, dep) in deps.iter_mut().enumerate() {
        let mut set = std::collections::BTreeSet::new();
        for (w, _) in dga.diff_of(g).terms() {
            set.extend(w.as_slice().iter().map(|&h| h as usize));
        }
        *dep = set.into_iter().collect();
    }
    let mut actions: BTreeMap<usize, u64> = BTreeMap::new();
    // 0 = unvisited, 1 = on stack, 2 = done
    let mut state = vec![0u8; n];
    for root in 0..n {
        let mut stack = vec![(root, 0usize)];
        while let Some((g, k)) = stack.pop() {
            if k == 0 {
                if state[g] == 2 {
                    continue;
                }
                state[g] = 1;
            }
            if k < deps[g].len() {
                stack.push((g, k + 1));
                let h = deps[g][k];
                match state[h] {
                    0 => stack.push((h, 0)),
                    1 => {
                        return Err(Error::Filtration(format!(
                            "no admissible actions: {} depends on itself through the differential",
                            sig.generator(h).name
                        )))
                    }
                    _ => {}
                }
            } else {
                let top = dga
                    .diff_of(g)
                    .terms()
                    .map(|(w, _)| w.as_slice().iter().map(|&h| actions[&(h as usize)]).sum::<u64>())
                    .max()
                    .unwrap_or(0);
                actions.insert(g, top + 1);
                state[g] = 2;
            }
        }
    }
    let gens = sig
        .generators()
        .iter()
        .enumerate()
        .map(|(g, info)| {
            GeneratorInfo::new(info.name.clone(), info.degree, BigRational::from_integer(actions[&g].into()))
        })
        .collect();
    let new_sig = Signature::new(sig.field(), sig.mu(), gens)?;
    dga.with_signature(new_sig)
}
