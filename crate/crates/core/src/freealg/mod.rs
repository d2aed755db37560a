//! The free unital algebra on finitely many graded generators, with action
//! and the action-induced degree function `nu`.

mod degree;
mod poly;
mod signature;

pub use degree::{DegreeFunction, Word};
pub(crate) use poly::Mono;
pub use poly::{poly_add, poly_mul, poly_scale, same_signature, Grading, Poly};
pub use signature::{GeneratorInfo, Signature};
pub(crate) use signature::{check_mu, check_names, reduce_degree};

use num_rational::BigRational;

use crate::error::Result;

pub fn grading_of(p: &Poly) -> Grading {
    p.grading()
}

pub fn action_of(p: &Poly) -> Option<BigRational> {
    p.action()
}

pub fn nu_of(p: &Poly) -> Option<u64> {
    p.nu()
}

pub fn leading_part(p: &Poly) -> Result<Poly> {
    p.leading_part()
}

pub fn build_degree_function(sig: &Signature) -> Result<DegreeFunction> {
    let actions: Vec<BigRational> = sig.generators().iter().map(|g| g.action.clone()).collect();
    DegreeFunction::from_actions(&actions)
}

pub fn words_up_to(df: &DegreeFunction, cap: u64) -> Vec<Word> {
    df.words_up_to(cap)
}
