//! Sparse exact linear algebra over a [`Field`].

use crate::field::Field;

/// Sparse vector: `(index, value)` pairs, strictly increasing indices, no zeros.
pub type SparseVec<E> = Vec<(usize, E)>;

/// Sorts, merges duplicate indices, and drops zeros.
pub fn normalize<F: Field>(field: &F, mut v: Vec<(usize, F::Elem)>) -> SparseVec<F::Elem> {
    v.sort_by_key(|(i, _)| *i);
    let mut out: SparseVec<F::Elem> = Vec::with_capacity(v.len());
    for (i, x) in v {
        match out.last_mut() {
            Some((j, y)) if *j == i => *y = field.add(y, &x),
            _ => out.push((i, x)),
        }
    }
    out.retain(|(_, x)| !field.is_zero(x));
    out
}

/// `v + c·w`.
pub fn axpy<F: Field>(
    field: &F,
    v: &[(usize, F::Elem)],
    c: &F::Elem,
    w: &[(usize, F::Elem)],
) -> SparseVec<F::Elem> {
    let mut out = Vec::with_capacity(v.len() + w.len());
    let (mut a, mut b) = (0, 0);
    while a < v.len() || b < w.len() {
        if b == w.len() || (a < v.len() && v[a].0 < w[b].0) {
            out.push(v[a].clone());
            a += 1;
        } else if a == v.len() || w[b].0 < v[a].0 {
            out.push((w[b].0, field.mul(c, &w[b].1)));
            b += 1;
        } else {
            let x = field.add(&v[a].1, &field.mul(c, &w[b].1));
            if !field.is_zero(&x) {
                out.push((v[a].0, x));
            }
            a += 1;
            b += 1;
        }
    }
    out
}

pub fn scale<F: Field>(field: &F, c: &F::Elem, v: &[(usize, F::Elem)]) -> SparseVec<F::Elem> {
    if field.is_zero(c) {
        return Vec::new();
    }
    v.iter().map(|(i, x)| (*i, field.mul(c, x))).collect()
}

/// Row-echelon basis of a growing subspace of `F^ncols`.
///
/// Each stored row has leading coefficient 1 at its pivot, and no stored row
/// has a nonzero entry at an earlier row's pivot to its left, so a single
/// left-to-right sweep fully reduces a vector.
#[derive(Clone, Debug)]
pub struct Echelon<F: Field> {
    field: F,
    ncols: usize,
    rows: Vec<SparseVec<F::Elem>>,
    pivot_row: Vec<u32>,
}

const NONE: u32 = u32::MAX;

impl<F: Field> Echelon<F> {
    pub fn new(field: F, ncols: usize) -> Self {
        Echelon {
            field,
            ncols,
            rows: Vec::new(),
            pivot_row: vec![NONE; ncols],
        }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.pivot_row[col] != NONE
    }

    pub fn pivots(&self) -> Vec<usize> {
        (0..self.ncols).filter(|&c| self.is_pivot(c)).collect()
    }

    /// Removes every pivot coordinate; the result is supported on non-pivot columns.
    pub fn reduce(&self, mut v: SparseVec<F::Elem>) -> SparseVec<F::Elem> {
        let mut k = 0;
        while k < v.len() {
            let (col, ref x) = v[k];
            let r = self.pivot_row[col];
            if r == NONE {
                k += 1;
                continue;
            }
            let c = self.field.neg(x);
            let prefix_len = k;
            let tail = axpy(&self.field, &v[k..], &c, &self.rows[r as usize]);
            v.truncate(prefix_len);
            v.extend(tail);
        }
        v
    }

    /// Adds `v` to the span; returns `true` if it was independent.
    pub fn insert(&mut self, v: SparseVec<F::Elem>) -> bool {
        let v = self.reduce(v);
        let Some((col, lead)) = v.first().cloned() else {
            return false;
        };
        let inv = self.field.inv(&lead);
        let row = scale(&self.field, &inv, &v);
        self.pivot_row[col] = self.rows.len() as u32;
        self.rows.push(row);
        true
    }

    pub fn contains(&self, v: SparseVec<F::Elem>) -> bool {
        self.reduce(v).is_empty()
    }
}

/// Rank of the span of `vectors` in `F^ncols`.
pub fn rank<F: Field>(field: &F, ncols: usize, vectors: impl IntoIterator<Item = SparseVec<F::Elem>>) -> usize {
    let mut vs: Vec<SparseVec<F::Elem>> = vectors.into_iter().filter(|v| !v.is_empty()).collect();
    // Short rows first keeps fill-in down.
    vs.sort_by_key(|v| v.len());
    let mut ech = Echelon::new(field.clone(), ncols);
    for v in vs {
        ech.insert(v);
        if ech.rank() == ncols {
            break;
        }
    }
    ech.rank()
}

/// A linear map `F^ncols → F^nrows` stored by the images of basis vectors.
#[derive(Clone, Debug)]
pub struct SparseMatrix<E> {
    pub nrows: usize,
    pub ncols: usize,
    /// `columns[j]` is the image of the j-th basis vector.
    pub columns: Vec<SparseVec<E>>,
}

impl<E: Clone> SparseMatrix<E> {
    pub fn zero(nrows: usize, ncols: usize) -> Self {
        SparseMatrix {
            nrows,
            ncols,
            columns: vec![Vec::new(); ncols],
        }
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(|c| c.len()).sum()
    }
}

impl<E: Clone> SparseMatrix<E> {
    pub fn rank<F: Field<Elem = E>>(&self, field: &F) -> usize {
        rank(field, self.nrows, self.columns.iter().cloned())
    }

    pub fn apply<F: Field<Elem = E>>(&self, field: &F, v: &[(usize, E)]) -> SparseVec<E> {
        let mut acc: SparseVec<E> = Vec::new();
        for (j, c) in v {
            acc = axpy(field, &acc, c, &self.columns[*j]);
        }
        acc
    }

    /// `self ∘ other`.
    pub fn compose<F: Field<Elem = E>>(&self, field: &F, other: &SparseMatrix<E>) -> SparseMatrix<E> {
        SparseMatrix {
            nrows: self.nrows,
            ncols: other.ncols,
            columns: other.columns.iter().map(|c| self.apply(field, c)).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(|c| c.is_empty())
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use num_rational::BigRational;
    use num_traits::{One, Zero};
    use proptest::prelude::*;

    /// Dense Gaussian elimination over Q, used as an oracle.
    pub(crate) fn dense_rank(mut m: Vec<Vec<BigRational>>) -> usize {
        let rows = m.len();
        let cols = if rows == 0 { 0 } else { m[0].len() };
        let mut r = 0;
        for c in 0..cols {
            let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
                continue;
            };
            m.swap(r, p);
            let inv = BigRational::one() / m[r][c].clone();
            for i in 0..rows {
                if i != r && !m[i][c].is_zero() {
                    let f = m[i][c].clone() * inv.clone();
                    for k in 0..cols {
                        let t = m[r][k].clone() * f.clone();
                        m[i][k] -= t;
                    }
                }
            }
            r += 1;
        }
        r
    }

    fn q(v: i64) -> BigRational {
        Rationals.from_i64(v)
    }

    fn to_sparse(row: &[i64]) -> SparseVec<BigRational> {
        row.iter()
            .enumerate()
            .filter(|(_, x)| **x != 0)
            .map(|(i, x)| (i, q(*x)))
            .collect()
    }

    #[test]
    fn rank_small() {
        let rows = vec![to_sparse(&[1, 1, 0]), to_sparse(&[0, 1, 1]), to_sparse(&[1, 2, 1])];
        assert_eq!(rank(&Rationals, 3, rows), 2);
    }

    #[test]
    fn reduce_gives_quotient_coordinates() {
        let mut e = Echelon::new(Rationals, 3);
        assert!(e.insert(to_sparse(&[0, 2, 2])));
        assert!(!e.insert(to_sparse(&[0, 1, 1])));
        let r = e.reduce(to_sparse(&[1, 1, 0]));
        assert_eq!(r, vec![(0, q(1)), (2, q(-1))]);
    }

    #[test]
    fn prime_field_rank_can_drop() {
        let rows = || vec![to_sparse(&[2, 0]), to_sparse(&[0, 1])];
        let f = PrimeField::new(2).unwrap();
        let modp: Vec<SparseVec<u64>> = rows()
            .into_iter()
            .map(|r| {
                r.into_iter()
                    .map(|(i, x)| (i, f.from_i64(num_traits::ToPrimitive::to_i64(&x.to_integer()).unwrap())))
                    .filter(|(_, x)| *x != 0)
                    .collect()
            })
            .collect();
        assert_eq!(rank(&Rationals, 2, rows()), 2);
        assert_eq!(rank(&f, 2, modp), 1);
    }

    proptest! {
        #[test]
        fn sparse_rank_matches_dense(entries in prop::collection::vec(prop::collection::vec(-2i64..=2, 6), 0..7)) {
            let dense: Vec<Vec<BigRational>> = entries.iter().map(|r| r.iter().map(|x| q(*x)).collect()).collect();
            let sparse: Vec<_> = entries.iter().map(|r| to_sparse(r)).collect();
            prop_assert_eq!(rank(&Rationals, 6, sparse), dense_rank(dense));
        }
    }
}
