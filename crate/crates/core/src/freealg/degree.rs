use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive};

use crate::error::{Error, Result};

/// A monomial as a sequence of generator indices; the empty word is the unit.
///
/// Words order shortlex (length first, then lexicographic on indices).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(pub Vec<u32>);

impl Word {
    pub fn unit() -> Word {
        Word(Vec::new())
    }

    pub fn letter(g: u32) -> Word {
        Word(vec![g])
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl From<Vec<u32>> for Word {
    fn from(v: Vec<u32>) -> Self {
        Word(v)
    }
}

/// Integer weights `N * action(a_i)` with `N` the least common multiple of
/// the action denominators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeFunction {
    scale: u64,
    weights: Vec<u64>,
}

impl DegreeFunction {
    pub fn from_actions(actions: &[BigRational]) -> Result<DegreeFunction> {
        let mut lcm = BigInt::one();
        for (i, a) in actions.iter().enumerate() {
            if !a.is_positive() {
                return Err(Error::Validation(format!(
                    "action of generator {i} is {a}, must be positive"
                )));
            }
            lcm = lcm.lcm(a.denom());
        }
        let scale = lcm
            .to_u64()
            .ok_or_else(|| Error::Validation("action denominators too large".into()))?;
        let weights = actions
            .iter()
            .map(|a| {
                let w = a * BigRational::from_integer(lcm.clone());
                debug_assert!(w.is_integer());
                w.to_integer()
                    .to_u64()
                    .ok_or_else(|| Error::Validation(format!("weight of action {a} overflows")))
            })
            .collect::<Result<Vec<u64>>>()?;
        Ok(DegreeFunction { scale, weights })
    }

    /// The common scaling `N`.
    pub fn scale(&self) -> u64 {
        self.scale
    }

    pub fn weights(&self) -> &[u64] {
        &self.weights
    }

    pub fn weight(&self, gen: u32) -> u64 {
        self.weights[gen as usize]
    }

    pub fn word_nu(&self, word: &[u32]) -> u64 {
        word.iter().map(|&g| self.weights[g as usize]).sum()
    }

    /// Every word with `nu <= cap`, in canonical order.
    pub fn words_up_to(&self, cap: u64) -> Vec<Word> {
        let mut out = Vec::new();
        let mut stack = vec![(Vec::<u32>::new(), 0u64)];
        while let Some((w, nu)) = stack.pop() {
            for (g, &wt) in self.weights.iter().enumerate() {
                if nu + wt <= cap {
                    let mut next = w.clone();
                    next.push(g as u32);
                    stack.push((next, nu + wt));
                }
            }
            out.push(Word(w));
        }
        out.sort_by(|a, b| self.canonical_cmp(a, b));
        out
    }

    /// Every word with `nu` exactly `target`, in canonical order.
    pub fn words_of_weight(&self, target: u64) -> Vec<Word> {
        let mut out = Vec::new();
        let mut stack = vec![(Vec::<u32>::new(), 0u64)];
        while let Some((w, nu)) = stack.pop() {
            if nu == target {
                out.push(Word(w));
                continue;
            }
            for (g, &wt) in self.weights.iter().enumerate() {
                if nu + wt <= target {
                    let mut next = w.clone();
                    next.push(g as u32);
                    stack.push((next, nu + wt));
                }
            }
        }
        out.sort();
        out
    }

    pub fn canonical_cmp(&self, a: &Word, b: &Word) -> Ordering {
        self.word_nu(&a.0).cmp(&self.word_nu(&b.0)).then_with(|| a.cmp(b))
    }
}

impl fmt::Display for DegreeFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ws: Vec<String> = self.weights.iter().map(|w| w.to_string()).collect();
        write!(f, "N = {}, weights = [{}]", self.scale, ws.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    // Independent count of words with weight <= cap.
    fn count_by_dp(weights: &[u64], cap: u64) -> usize {
        let mut exact = vec![0usize; cap as usize + 1];
        exact[0] = 1;
        for t in 1..=cap as usize {
            exact[t] = weights
                .iter()
                .filter(|&&w| w as usize <= t)
                .map(|&w| exact[t - w as usize])
                .sum();
        }
        exact.iter().sum()
    }

    #[test]
    fn integer_actions_keep_scale_one() {
        let df = DegreeFunction::from_actions(&[r(1, 1), r(1, 1), r(3, 1), r(3, 1)]).unwrap();
        assert_eq!(df.scale(), 1);
        assert_eq!(df.weights(), &[1, 1, 3, 3]);
    }

    #[test]
    fn fractional_actions_use_lcm_of_denominators() {
        let df = DegreeFunction::from_actions(&[r(1, 2), r(3, 4)]).unwrap();
        assert_eq!(df.scale(), 4);
        assert_eq!(df.weights(), &[2, 3]);
        let single = DegreeFunction::from_actions(&[r(1, 1)]).unwrap();
        assert_eq!((single.scale(), single.weights()), (1, &[1u64][..]));
    }

    #[test]
    fn non_positive_action_rejected() {
        assert!(DegreeFunction::from_actions(&[r(0, 1)]).is_err());
        assert!(DegreeFunction::from_actions(&[r(-1, 2)]).is_err());
    }

    #[test]
    fn enumeration_at_cap_zero_and_two() {
        let df = DegreeFunction::from_actions(&[r(1, 1), r(1, 1), r(3, 1), r(3, 1)]).unwrap();
        assert_eq!(df.words_up_to(0), vec![Word::unit()]);
        let w2: Vec<Vec<u32>> = df.words_up_to(2).into_iter().map(|w| w.0).collect();
        assert_eq!(
            w2,
            vec![vec![], vec![0], vec![1], vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]
        );
    }

    #[test]
    fn enumeration_count_matches_dp() {
        for weights in [vec![1u64, 1, 3, 3], vec![2, 3], vec![1, 2, 2, 4]] {
            let actions: Vec<BigRational> = weights.iter().map(|&w| r(w as i64, 1)).collect();
            let df = DegreeFunction::from_actions(&actions).unwrap();
            let mut prev = 0;
            for cap in 0..9 {
                let n = df.words_up_to(cap).len();
                assert_eq!(n, count_by_dp(&weights, cap), "weights {weights:?} cap {cap}");
                assert!(n >= prev);
                prev = n;
            }
        }
    }

    #[test]
    fn exact_weight_words_partition_the_truncation() {
        let df = DegreeFunction::from_actions(&[r(1, 1), r(2, 1)]).unwrap();
        let total: usize = (0..=6).map(|t| df.words_of_weight(t).len()).sum();
        assert_eq!(total, df.words_up_to(6).len());
    }
}
