//! Completion of a left ideal generated by boundaries to a free family of
//! boundaries `d(y_1), ..., d(y_m)` with explicit preimages.

use std::cmp::Ordering;

use super::{first_dependent, nu_dependent_on, weak_divide, DivisionResult};
use crate::dga::Dga;
use crate::error::{Error, Result};
use crate::freealg::{same_signature, Mono, Poly};

/// A tracked pair `(y, g = d(y))` with `g = sum_k expr[k] * G_k` over the
/// input boundaries `G_k`.
#[derive(Debug, Clone)]
struct PoolPair {
    y: Poly,
    g: Poly,
    expr: Vec<Poly>,
}

/// One accepted element: pool index, remainder `b`, and the triangular
/// coefficients `u` with `b = g - sum_{j < i} u[j] b_j`.
#[derive(Debug, Clone)]
struct Accepted {
    pool: usize,
    b: Poly,
    u: Vec<Poly>,
}

/// Free `nu`-independent family of boundaries generating the same left
/// ideal as the input boundaries.
#[derive(Debug, Clone)]
pub struct CompletionResult {
    /// The input pairs `(y, d(y))` as given.
    pub inputs: Vec<(Poly, Poly)>,
    /// Accepted pairs `(y_i, g_i = d(y_i))`.
    pub pairs: Vec<(Poly, Poly)>,
    /// Remainders `b_i = g_i - sum_{j<i} u[i][j] b_j`, sorted by `nu`.
    pub b: Vec<Poly>,
    pub u: Vec<Vec<Poly>>,
    /// Largest `nu` of an input boundary.
    pub max_nu: u64,
    /// `g_i = sum_k g_over_inputs[i][k] * inputs[k].1`
    pub g_over_inputs: Vec<Vec<Poly>>,
    /// `inputs[k].1 = sum_i inputs_over_g[k][i] * g_i`
    pub inputs_over_g: Vec<Vec<Poly>>,
    /// Cycles `y - sum twist(v_i) y_i` found when a tracked boundary reduced
    /// to zero.
    pub cycle_relations: Vec<Poly>,
}

fn pick_key(r: &Poly, pool: usize) -> (Option<u64>, Option<Mono>, usize) {
    (r.nu(), r.mono_terms().next_back().map(|(m, _)| m.clone()), pool)
}

/// Converts quotients over the `b` family, taken from position `from`
/// upwards, into coefficients over the corresponding `g`'s. Lower quotients
/// absorb the triangular corrections and are returned in place.
fn convert_top_down(quotients: &mut [Poly], accepted: &[Accepted], from: usize) -> Vec<Poly> {
    let n = accepted.len();
    let mut v = vec![Poly::zero(quotients[0].signature()); n];
    for j in (from..n).rev() {
        let cj = std::mem::replace(&mut quotients[j], v[j].clone());
        if cj.is_zero() {
            continue;
        }
        for (l, ul) in accepted[j].u.iter().enumerate() {
            if !ul.is_zero() {
                quotients[l] = &quotients[l] - &(&cj * ul);
            }
        }
        v[j] = cj;
    }
    v
}

/// Builds the completion for the given boundary pairs.
///
/// Pending pairs are weak-divided by the accepted family and the one with
/// the smallest remainder (by `nu`, then top monomial, then pool index) is
/// accepted, provided its remainder is not below the last accepted `nu`.
/// Otherwise its quotients on the accepted elements above that `nu` are
/// cycles `v_j`, and the explicit pair
/// `(y - sum twist(v_j) y_j, g - sum v_j g_j)` is added to the pool before
/// the family is cut back to the elements of `nu` at most the remainder's.
/// Each cut strictly lowers the padded sequence of `nu` values, so the
/// process terminates.
pub fn boundary_basis(dga: &Dga, pairs: &[(Poly, Poly)]) -> Result<CompletionResult> {
    let sig = dga.signature();
    for (y, g) in pairs {
        if !same_signature(y.signature(), sig) || !same_signature(g.signature(), sig) {
            return Err(Error::Structure("pair lives in a different algebra".into()));
        }
        if &dga.d(y) != g {
            return Err(Error::Precondition(format!("d({y}) is {}, not {g}", dga.d(y))));
        }
    }
    let n_in = pairs.len();
    let mut pool: Vec<PoolPair> = Vec::new();
    for (k, (y, g)) in pairs.iter().enumerate() {
        if g.is_zero() {
            continue;
        }
        let mut expr = vec![Poly::zero(sig); n_in];
        expr[k] = Poly::one(sig);
        pool.push(PoolPair { y: y.clone(), g: g.clone(), expr });
    }
    if pool.is_empty() {
        return Err(Error::EmptyIdeal);
    }
    let max_nu = pool.iter().filter_map(|p| p.g.nu()).max().unwrap_or(0);

    let mut accepted: Vec<Accepted> = Vec::new();
    // per pool entry: division of g by the accepted family, when current
    let mut cache: Vec<Option<DivisionResult>> = vec![None; pool.len()];
    let mut cycle_relations: Vec<Poly> = Vec::new();

    loop {
        let family: Vec<Poly> = accepted.iter().map(|a| a.b.clone()).collect();
        let in_family: Vec<bool> = {
            let mut v = vec![false; pool.len()];
            for a in &accepted {
                v[a.pool] = true;
            }
            v
        };
        let mut best: Option<(usize, (Option<u64>, Option<Mono>, usize))> = None;
        for p in 0..pool.len() {
            if in_family[p] {
                continue;
            }
            // continue an earlier division with the elements added since
            let div = match cache[p].take() {
                Some(prev) if prev.quotients.len() < family.len() => {
                    let more = weak_divide(&prev.remainder, &family)?;
                    let mut quotients = more.quotients;
                    for (q, old) in quotients.iter_mut().zip(prev.quotients) {
                        *q = &*q + &old;
                    }
                    DivisionResult { quotients, remainder: more.remainder }
                }
                Some(prev) => prev,
                None => weak_divide(&pool[p].g, &family)?,
            };
            if div.remainder.is_zero() {
                // g lies in the ideal of the family: record the cycle it gives
                let mut q = div.quotients.clone();
                if !q.is_empty() {
                    let v = convert_top_down(&mut q, &accepted, 0);
                    if v.iter().all(|vi| dga.is_cycle(vi)) {
                        let mut rel = pool[p].y.clone();
                        for (vj, a) in v.iter().zip(&accepted) {
                            rel = &rel - &(&vj.twist() * &pool[a.pool].y);
                        }
                        if !rel.is_zero() && !cycle_relations.contains(&rel) {
                            cycle_relations.push(rel);
                        }
                    }
                }
            } else {
                let key = pick_key(&div.remainder, p);
                if best.as_ref().is_none_or(|(_, k)| key.cmp(k) == Ordering::Less) {
                    best = Some((p, key));
                }
            }
            cache[p] = Some(div);
        }

        let Some((p, (t, _, _))) = best else { break };
        let t = t.expect("nonzero remainder");
        let last = accepted.last().and_then(|a| a.b.nu());
        if last.is_none_or(|l| t >= l) {
            let div = cache[p].clone().expect("division computed above");
            accepted.push(Accepted { pool: p, b: div.remainder, u: div.quotients });
            continue;
        }

        // the remainder dropped below the accepted top: peel the quotients
        // on elements above t back onto their boundaries
        let s = accepted.iter().take_while(|a| a.b.nu().expect("nonzero") <= t).count();
        let mut q = cache[p].clone().expect("division computed above").quotients;
        let v = convert_top_down(&mut q, &accepted, s);
        for (j, vj) in v.iter().enumerate().skip(s) {
            if !dga.is_cycle(vj) {
                return Err(Error::Filtration(format!(
                    "peeled quotient {vj} on boundary {} is not a cycle",
                    pool[accepted[j].pool].g
                )));
            }
        }
        let mut new = pool[p].clone();
        for (j, vj) in v.iter().enumerate().skip(s) {
            if vj.is_zero() {
                continue;
            }
            let src = &pool[accepted[j].pool];
            new.y = &new.y - &(&vj.twist() * &src.y);
            new.g = &new.g - &(vj * &src.g);
            for k in 0..n_in {
                new.expr[k] = &new.expr[k] - &(vj * &src.expr[k]);
            }
        }
        if dga.d(&new.y) != new.g {
            return Err(Error::InternalAssertion("synthesized pair is not a boundary pair".into()));
        }
        if new.g.is_zero() {
            return Err(Error::InternalAssertion("synthesized boundary vanished".into()));
        }
        pool.push(new);
        accepted.truncate(s);
        cache = vec![None; pool.len()];
    }

    let result = finish(dga, pairs, &pool, &accepted, max_nu, cycle_relations)?;
    result.verify(dga)?;
    Ok(result)
}

fn finish(
    dga: &Dga,
    pairs: &[(Poly, Poly)],
    pool: &[PoolPair],
    accepted: &[Accepted],
    max_nu: u64,
    cycle_relations: Vec<Poly>,
) -> Result<CompletionResult> {
    let mut cr = CompletionResult {
        inputs: pairs.to_vec(),
        pairs: accepted.iter().map(|a| (pool[a.pool].y.clone(), pool[a.pool].g.clone())).collect(),
        b: accepted.iter().map(|a| a.b.clone()).collect(),
        u: accepted.iter().map(|a| a.u.clone()).collect(),
        max_nu,
        g_over_inputs: accepted.iter().map(|a| pool[a.pool].expr.clone()).collect(),
        inputs_over_g: Vec::new(),
        cycle_relations,
    };
    for (_, g) in pairs {
        let coeffs = ideal_member(g, &cr)?.ok_or_else(|| {
            Error::InternalAssertion(format!("input boundary {g} is not in the completed ideal"))
        })?;
        cr.inputs_over_g.push(coeffs);
    }
    let _ = dga;
    Ok(cr)
}

/// Coefficients `x_i` with `x = sum x_i g_i`, or `None` when `x` is not in
/// the left ideal.
pub fn ideal_member(x: &Poly, cr: &CompletionResult) -> Result<Option<Vec<Poly>>> {
    let sig = x.signature();
    if cr.b.is_empty() {
        return Ok(if x.is_zero() { Some(vec![]) } else { None });
    }
    let div = weak_divide(x, &cr.b)?;
    if !div.remainder.is_zero() {
        return Ok(None);
    }
    let mut c = div.quotients;
    let n = cr.b.len();
    let mut out = vec![Poly::zero(sig); n];
    for j in (0..n).rev() {
        let cj = std::mem::replace(&mut c[j], Poly::zero(sig));
        if cj.is_zero() {
            continue;
        }
        for (l, ul) in cr.u[j].iter().enumerate() {
            if !ul.is_zero() {
                c[l] = &c[l] - &(&cj * ul);
            }
        }
        out[j] = cj;
    }
    let mut acc = Poly::zero(sig);
    for (o, (_, g)) in out.iter().zip(&cr.pairs) {
        acc = &acc + &(o * g);
    }
    if &acc != x {
        return Err(Error::InternalAssertion("ideal membership expression does not evaluate to x".into()));
    }
    Ok(Some(out))
}

impl CompletionResult {
    /// Re-checks every stored identity and inequality.
    pub fn verify(&self, dga: &Dga) -> Result<()> {
        let fail = |what: String| Err(Error::InternalAssertion(what));
        for (i, ((y, g), b)) in self.pairs.iter().zip(&self.b).enumerate() {
            if &dga.d(y) != g {
                return fail(format!("pair {i}: d(y) != g"));
            }
            let mut acc = g.clone();
            for (uj, bj) in self.u[i].iter().zip(&self.b) {
                let t = uj * bj;
                if t.nu() > g.nu() {
                    return fail(format!("pair {i}: a triangular term exceeds nu(g)"));
                }
                acc = &acc - &t;
            }
            if &acc != b {
                return fail(format!("pair {i}: triangular relation fails"));
            }
            if b.is_zero() || b.nu() > g.nu() {
                return fail(format!("pair {i}: remainder is zero or above nu(g)"));
            }
        }
        if self.b.windows(2).any(|w| w[0].nu() > w[1].nu()) {
            return fail("remainders are not sorted by nu".into());
        }
        if self.b.last().and_then(|b| b.nu()) > Some(self.max_nu) {
            return fail("top remainder exceeds the input bound".into());
        }
        if first_dependent(&self.b)?.is_some() {
            return fail("remainder family is nu-dependent".into());
        }
        for (i, (_, g)) in self.pairs.iter().enumerate() {
            let mut acc = Poly::zero(g.signature());
            for (e, (_, gk)) in self.g_over_inputs[i].iter().zip(&self.inputs) {
                acc = &acc + &(e * gk);
            }
            if &acc != g {
                return fail(format!("pair {i}: expression over the inputs fails"));
            }
        }
        for (k, (_, gk)) in self.inputs.iter().enumerate() {
            let mut acc = Poly::zero(gk.signature());
            for (c, (_, g)) in self.inputs_over_g[k].iter().zip(&self.pairs) {
                acc = &acc + &(c * g);
            }
            if &acc != gk {
                return fail(format!("input {k}: expression over the family fails"));
            }
        }
        for rel in &self.cycle_relations {
            if !dga.is_cycle(rel) {
                return fail(format!("recorded relation {rel} is not a cycle"));
            }
        }
        Ok(())
    }

    /// Whether `x` is `nu`-dependent on the remainder family.
    pub fn top_reducible(&self, x: &Poly) -> Result<bool> {
        Ok(!x.is_zero() && nu_dependent_on(x, &self.b)?.is_some())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn single_pair() {
        let dga = fixtures::nc1();
        let p = |s: &str| dga.parse(s).unwrap();
        let cr = boundary_basis(&dga, &[(p("b1 b c"), p("b c b c")), (p("b c"), p("0"))]).unwrap();
        assert_eq!(cr.pairs.len(), 1);
        assert_eq!(cr.b, vec![p("b c b c")]);
        assert_eq!(ideal_member(&p("b c b c"), &cr).unwrap(), Some(vec![p("1")]));
        assert_eq!(ideal_member(&p("b"), &cr).unwrap(), None);
        assert_eq!(ideal_member(&p("0"), &cr).unwrap(), Some(vec![p("0")]));
    }

    #[test]
    fn identical_boundaries_give_a_cycle_relation() {
        let dga = fixtures::nc1();
        let p = |s: &str| dga.parse(s).unwrap();
        let cr = boundary_basis(&dga, &[(p("b1"), p("b c")), (p("b2"), p("b c"))]).unwrap();
        assert_eq!(cr.pairs.len(), 1);
        assert_eq!(cr.cycle_relations, vec![p("b2 - b1")]);
        assert_eq!(cr.inputs_over_g, vec![vec![p("1")], vec![p("1")]]);
    }

    #[test]
    fn empty_and_forged_inputs() {
        let dga = fixtures::nc1();
        let p = |s: &str| dga.parse(s).unwrap();
        assert_eq!(boundary_basis(&dga, &[]).unwrap_err(), Error::EmptyIdeal);
        assert!(matches!(boundary_basis(&dga, &[(p("b1"), p("b"))]), Err(Error::Precondition(_))));
    }

    #[test]
    fn acyclic_example_rebuilds_to_the_unit() {
        // d(b1) = 1 + a1 a2 and d(b2) = a1^2 generate an ideal containing 1
        let dga = fixtures::ac2();
        let p = |s: &str| dga.parse(s).unwrap();
        let x = p("b1 - a1 b1 a2 + b2 a2^2");
        let pairs = vec![
            (p("b1"), p("1 + a1 a2")),
            (p("a1 b1 a2"), p("a1 a2 + a1 a1 a2 a2")),
            (p("b2 a2 a2"), p("a1 a1 a2 a2")),
        ];
        let cr = boundary_basis(&dga, &pairs).unwrap();
        assert_eq!(cr.b.len(), 1);
        assert_eq!(cr.b[0].nu(), Some(0));
        let coeffs = ideal_member(&p("1"), &cr).unwrap().unwrap();
        let _ = x;
        assert_eq!(coeffs.len(), 1);
    }
}
