//! Finite chain complexes over a field and their homology.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{rank, SparseMatrix};

/// `… → C_k → C_{k−1} → …` for `k` in `lo..lo + dims.len()`, homologically graded.
#[derive(Clone, Debug)]
pub struct ChainComplex<F: Field> {
    pub field: F,
    pub lo: i64,
    pub dims: Vec<usize>,
    /// `diffs[i]` is `d: C_{lo+i} → C_{lo+i−1}`; `diffs[0]` maps to zero.
    pub diffs: Vec<SparseMatrix<F::Elem>>,
    /// Optional internal grading of every basis vector, preserved by `d`.
    pub gradings: Option<Vec<Vec<i64>>>,
}

impl<F: Field> ChainComplex<F> {
    /// Validates shapes and `d² = 0`.
    pub fn new(
        field: F,
        lo: i64,
        dims: Vec<usize>,
        diffs: Vec<SparseMatrix<F::Elem>>,
        gradings: Option<Vec<Vec<i64>>>,
    ) -> Result<Self> {
        if diffs.len() != dims.len() {
            return Err(Error::InvalidComplex("one differential per degree required".into()));
        }
        for (i, d) in diffs.iter().enumerate() {
            let rows = if i == 0 { 0 } else { dims[i - 1] };
            if d.ncols != dims[i] || d.nrows != rows {
                return Err(Error::InvalidComplex(format!("differential out of degree {} has the wrong shape", lo + i as i64)));
            }
            if d.columns.iter().flatten().any(|(r, _)| *r >= rows) {
                return Err(Error::InvalidComplex("differential entry out of range".into()));
            }
        }
        if let Some(g) = &gradings {
            if g.len() != dims.len() || g.iter().zip(&dims).any(|(g, d)| g.len() != *d) {
                return Err(Error::InvalidComplex("grading shape mismatch".into()));
            }
        }
        let c = ChainComplex { field, lo, dims, diffs, gradings };
        c.check_square_zero()?;
        c.check_homogeneous()?;
        Ok(c)
    }

    fn check_square_zero(&self) -> Result<()> {
        for i in 1..self.diffs.len() {
            let dd = self.diffs[i - 1].compose(&self.field, &self.diffs[i]);
            if !dd.is_zero() {
                return Err(Error::InvalidComplex(format!("d² ≠ 0 out of degree {}", self.lo + i as i64)));
            }
        }
        Ok(())
    }

    fn check_homogeneous(&self) -> Result<()> {
        let Some(g) = &self.gradings else { return Ok(()) };
        for i in 1..self.diffs.len() {
            for (j, col) in self.diffs[i].columns.iter().enumerate() {
                if col.iter().any(|(r, _)| g[i - 1][*r] != g[i][j]) {
                    return Err(Error::InvalidComplex("differential does not preserve the internal grading".into()));
                }
            }
        }
        Ok(())
    }

    pub fn hi(&self) -> i64 {
        self.lo + self.dims.len() as i64 - 1
    }

    /// Rank of every differential, split by internal grading when present.
    fn ranks(&self) -> Vec<BTreeMap<i64, usize>> {
        (0..self.diffs.len())
            .into_par_iter()
            .map(|i| matrix_ranks(&self.field, &self.diffs[i], self.gradings.as_ref().map(|g| g[i].as_slice())))
            .collect()
    }

    /// Ranks of `H_k` for every degree in the window. The top degree assumes the next
    /// differential is zero.
    pub fn homology(&self) -> BTreeMap<i64, usize> {
        self.graded_homology()
            .into_iter()
            .map(|(k, g)| (k, g.values().sum()))
            .collect()
    }

    /// `H_k` split by internal degree (a single degree 0 when ungraded).
    pub fn graded_homology(&self) -> BTreeMap<i64, BTreeMap<i64, usize>> {
        let ranks = self.ranks();
        let mut out = BTreeMap::new();
        for i in 0..self.dims.len() {
            let mut dims: BTreeMap<i64, usize> = BTreeMap::new();
            match &self.gradings {
                Some(g) => g[i].iter().for_each(|d| *dims.entry(*d).or_insert(0) += 1),
                None => {
                    dims.insert(0, self.dims[i]);
                }
            }
            let next = ranks.get(i + 1);
            let h: BTreeMap<i64, usize> = dims
                .into_iter()
                .map(|(d, n)| {
                    let r = ranks[i].get(&d).copied().unwrap_or(0) + next.and_then(|r| r.get(&d)).copied().unwrap_or(0);
                    (d, n - r)
                })
                .filter(|(_, h)| *h > 0)
                .collect();
            out.insert(self.lo + i as i64, h);
        }
        out
    }
}

/// Rank of `m`, split by the grading of its columns when given.
pub fn matrix_ranks<F: Field>(field: &F, m: &SparseMatrix<F::Elem>, col_grading: Option<&[i64]>) -> BTreeMap<i64, usize> {
    let mut groups: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
    for j in 0..m.ncols {
        groups.entry(col_grading.map_or(0, |g| g[j])).or_default().push(j);
    }
    groups
        .into_par_iter()
        .map(|(d, cols)| (d, rank(field, m.nrows, cols.into_iter().map(|j| m.columns[j].clone()))))
        .filter(|(_, r)| *r > 0)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use num_rational::BigRational;

    fn q(v: i64) -> BigRational {
        Rationals.from_i64(v)
    }

    fn m(nrows: usize, cols: Vec<Vec<(usize, i64)>>) -> SparseMatrix<BigRational> {
        SparseMatrix {
            nrows,
            ncols: cols.len(),
            columns: cols.into_iter().map(|c| c.into_iter().map(|(i, x)| (i, q(x))).collect()).collect(),
        }
    }

    #[test]
    fn zero_differential() {
        let c = ChainComplex::new(Rationals, 0, vec![2, 3], vec![m(0, vec![vec![], vec![]]), m(2, vec![vec![]; 3])], None).unwrap();
        assert_eq!(c.homology(), BTreeMap::from([(0, 2), (1, 3)]));
    }

    #[test]
    fn identity_is_acyclic() {
        let c = ChainComplex::new(Rationals, 0, vec![1, 1], vec![m(0, vec![vec![]]), m(1, vec![vec![(0, 1)]])], None).unwrap();
        assert_eq!(c.homology().values().sum::<usize>(), 0);
    }

    #[test]
    fn koszul_three_term() {
        // 0 → F --(1,−1)ᵀ--> F² --(1 1)--> F → 0
        let d0 = m(0, vec![vec![]]);
        let d1 = m(1, vec![vec![(0, 1)], vec![(0, 1)]]);
        let d2 = m(2, vec![vec![(0, 1), (1, -1)]]);
        let c = ChainComplex::new(Rationals, 0, vec![1, 2, 1], vec![d0, d1, d2], None).unwrap();
        assert_eq!(c.homology(), BTreeMap::from([(0, 0), (1, 0), (2, 0)]));
    }

    #[test]
    fn rejects_nonzero_square() {
        let d1 = m(1, vec![vec![(0, 1)]]);
        let d2 = m(1, vec![vec![(0, 1)]]);
        let err = ChainComplex::new(Rationals, 0, vec![1, 1, 1], vec![m(0, vec![vec![]]), d1, d2], None);
        assert!(matches!(err, Err(Error::InvalidComplex(_))));
    }

    proptest::proptest! {
        /// `d2 = [R; 0]` into `F^a ⊕ F^b` and `d1 = [0 | S]`, so `d1 d2 = 0`; ranks
        /// come from the dense oracle.
        #[test]
        fn homology_matches_dense_oracle(
            r in proptest::collection::vec(proptest::collection::vec(-2i64..=2, 3), 2),
            s in proptest::collection::vec(proptest::collection::vec(-2i64..=2, 2), 3),
        ) {
            let (a, b) = (3usize, 3usize);
            let d2 = m(a + b, r.iter().map(|c| c.iter().enumerate().filter(|(_, x)| **x != 0).map(|(i, x)| (i, *x)).collect()).collect());
            let mut d1cols = vec![vec![]; a];
            d1cols.extend(s.iter().map(|c| c.iter().enumerate().filter(|(_, x)| **x != 0).map(|(i, x)| (i, *x)).collect::<Vec<_>>()));
            let d1 = m(2, d1cols);
            let c = ChainComplex::new(Rationals, 0, vec![2, a + b, 2], vec![m(0, vec![vec![]; 2]), d1, d2], None).unwrap();
            let dense = |rows: usize, cols: &Vec<Vec<i64>>, off: usize| {
                let mut mat = vec![vec![q(0); cols.len()]; rows + off];
                for (j, col) in cols.iter().enumerate() {
                    for (i, x) in col.iter().enumerate() {
                        mat[i + off][j] = q(*x);
                    }
                }
                crate::linalg::tests::dense_rank(mat)
            };
            let r2 = dense(a, &r, 0);
            let r1 = dense(2, &s, 0);
            let h = c.homology();
            proptest::prop_assert_eq!(h[&0], 2 - r1);
            proptest::prop_assert_eq!(h[&1], a + b - r1 - r2);
            proptest::prop_assert_eq!(h[&2], 2 - r2);
        }
    }

    #[test]
    fn characteristic_matters() {
        // Z --2--> Z: acyclic over Q, not over F_2.
        let f = PrimeField::new(2).unwrap();
        let d = SparseMatrix { nrows: 1, ncols: 1, columns: vec![vec![]] };
        let c = ChainComplex::new(f, 0, vec![1, 1], vec![SparseMatrix::zero(0, 1), d], None).unwrap();
        assert_eq!(c.homology(), BTreeMap::from([(0, 1), (1, 1)]));
        let cq = ChainComplex::new(Rationals, 0, vec![1, 1], vec![m(0, vec![vec![]]), m(1, vec![vec![(0, 2)]])], None).unwrap();
        assert_eq!(cq.homology().values().sum::<usize>(), 0);
    }
}
