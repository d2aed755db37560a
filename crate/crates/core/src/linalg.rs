//! Exact sparse linear systems over a [`Field`].
//!
//! Columns are sparse vectors indexed by an arbitrary ordered key (words of
//! the free or super-commutative algebra). Solving is incremental Gaussian
//! elimination on sparse rows followed by back substitution; the solution is
//! re-checked by substitution before it is returned.

use std::collections::{BTreeMap, HashMap};
use std::hash::Hash;

use crate::scalar::{Field, Scalar};

type Row = BTreeMap<usize, Scalar>;

#[derive(Debug, Clone)]
pub struct LinearSystem<K> {
    field: Field,
    columns: Vec<Vec<(K, Scalar)>>,
    rhs: Vec<(K, Scalar)>,
}

impl<K: Ord + Hash + Clone> LinearSystem<K> {
    pub fn new(field: Field) -> Self {
        LinearSystem { field, columns: Vec::new(), rhs: Vec::new() }
    }

    /// Adds an unknown whose column has the given entries; returns its index.
    pub fn push_column(&mut self, entries: impl IntoIterator<Item = (K, Scalar)>) -> usize {
        self.columns.push(entries.into_iter().filter(|(_, c)| !c.is_zero()).collect());
        self.columns.len() - 1
    }

    pub fn set_rhs(&mut self, entries: impl IntoIterator<Item = (K, Scalar)>) {
        self.rhs = entries.into_iter().filter(|(_, c)| !c.is_zero()).collect();
    }

    pub fn num_unknowns(&self) -> usize {
        self.columns.len()
    }

    /// An exact solution, or `None` when the system is inconsistent.
    pub fn solve(&self) -> Option<Vec<Scalar>> {
        let mut index: HashMap<&K, usize> = HashMap::new();
        for (k, _) in self.columns.iter().flatten().chain(self.rhs.iter()) {
            let n = index.len();
            index.entry(k).or_insert(n);
        }
        let mut rows: Vec<(Row, Scalar)> = vec![(Row::new(), self.field.zero()); index.len()];
        for (j, col) in self.columns.iter().enumerate() {
            for (k, c) in col {
                let row = &mut rows[index[k]].0;
                let e = row.entry(j).or_insert_with(|| self.field.zero());
                *e = &*e + c;
            }
        }
        for (k, c) in &self.rhs {
            let e = &mut rows[index[k]].1;
            *e = &*e + c;
        }

        // pivot column -> normalized row whose smallest column is the pivot
        let mut pivots: BTreeMap<usize, (Row, Scalar)> = BTreeMap::new();
        for (mut row, mut rhs) in rows {
            row.retain(|_, c| !c.is_zero());
            loop {
                let Some((&lead, lead_coef)) = row.iter().next() else {
                    if !rhs.is_zero() {
                        return None;
                    }
                    break;
                };
                match pivots.get(&lead) {
                    Some((prow, prhs)) => {
                        let f = lead_coef.clone();
                        for (c, v) in prow {
                            let e = row.entry(*c).or_insert_with(|| self.field.zero());
                            *e = &*e - &(&f * v);
                            if e.is_zero() {
                                row.remove(c);
                            }
                        }
                        rhs = &rhs - &(&f * prhs);
                    }
                    None => {
                        let inv = lead_coef.inv().expect("nonzero pivot");
                        for v in row.values_mut() {
                            *v = &*v * &inv;
                        }
                        rhs = &rhs * &inv;
                        pivots.insert(lead, (row, rhs));
                        break;
                    }
                }
            }
        }

        let mut x = vec![self.field.zero(); self.columns.len()];
        for (&pc, (row, rhs)) in pivots.iter().rev() {
            let mut v = rhs.clone();
            for (c, a) in row.range(pc + 1..) {
                v = &v - &(a * &x[*c]);
            }
            x[pc] = v;
        }
        assert!(self.check(&x), "linear solve failed substitution check");
        Some(x)
    }

    /// True when `x` satisfies every equation exactly.
    pub fn check(&self, x: &[Scalar]) -> bool {
        let mut acc: BTreeMap<&K, Scalar> = BTreeMap::new();
        for (col, xj) in self.columns.iter().zip(x) {
            if xj.is_zero() {
                continue;
            }
            for (k, c) in col {
                let e = acc.entry(k).or_insert_with(|| self.field.zero());
                *e = &*e + &(c * xj);
            }
        }
        for (k, c) in &self.rhs {
            let e = acc.entry(k).or_insert_with(|| self.field.zero());
            *e = &*e - c;
        }
        acc.values().all(|v| v.is_zero())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn identity_system() {
        let f = Field::Rational;
        let mut sys = LinearSystem::new(f);
        for i in 0..4u32 {
            sys.push_column([(i, f.one())]);
        }
        sys.set_rhs((0..4u32).map(|i| (i, f.from_i64(i as i64 + 1))));
        let x = sys.solve().unwrap();
        assert_eq!(x, (1..=4).map(|v| f.from_i64(v)).collect::<Vec<_>>());
    }

    #[test]
    fn inconsistent_two_by_one() {
        let f = Field::Rational;
        let mut sys = LinearSystem::new(f);
        sys.push_column([(0u32, f.one()), (1u32, f.one())]);
        sys.set_rhs([(0u32, f.one()), (1u32, f.from_i64(2))]);
        assert!(sys.solve().is_none());
    }

    #[test]
    fn empty_rhs_gives_zero_solution() {
        let f = Field::Rational;
        let mut sys: LinearSystem<u32> = LinearSystem::new(f);
        sys.push_column([(0, f.one())]);
        assert_eq!(sys.solve().unwrap(), vec![f.zero()]);
    }

    #[test]
    fn random_solvable_sparse_systems() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for field in [Field::Rational, Field::prime(101).unwrap()] {
            for _ in 0..40 {
                let n = rng.gen_range(1..12);
                let m = rng.gen_range(1..15);
                let mut sys = LinearSystem::new(field);
                let mut cols = Vec::new();
                for _ in 0..n {
                    let mut col: Vec<(u32, Scalar)> = Vec::new();
                    for r in 0..m {
                        if rng.gen_bool(0.3) {
                            col.push((r, field.from_i64(rng.gen_range(-3..4))));
                        }
                    }
                    sys.push_column(col.clone());
                    cols.push(col);
                }
                let hidden: Vec<Scalar> = (0..n).map(|_| field.from_i64(rng.gen_range(-4..5))).collect();
                let mut rhs: BTreeMap<u32, Scalar> = BTreeMap::new();
                for (col, h) in cols.iter().zip(&hidden) {
                    for (r, c) in col {
                        let e = rhs.entry(*r).or_insert_with(|| field.zero());
                        *e = &*e + &(c * h);
                    }
                }
                sys.set_rhs(rhs);
                let x = sys.solve().expect("constructed to be solvable");
                assert!(sys.check(&x));
            }
        }
    }
}
