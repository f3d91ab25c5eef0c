//! Finite-dimensional bimodules over arc algebras, given by action tables.

use std::collections::HashMap;

use rayon::prelude::*;

use crate::algebra::{AlgebraKind, ArcAlgebra};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{axpy, normalize, Echelon, SparseMatrix, SparseVec};
use crate::structure::Check;

/// An `A`-bimodule with a basis of vectors `e_λ m e_μ`.
#[derive(Clone, Debug)]
pub struct Bimodule<F: Field> {
    pub name: String,
    pub kind: AlgebraKind,
    pub left_idem: Vec<usize>,
    pub right_idem: Vec<usize>,
    /// Internal degrees, when every action is homogeneous.
    pub degrees: Option<Vec<i64>>,
    pub labels: Vec<String>,
    /// `left[x][i] = x · m_i`.
    left: Vec<Vec<SparseVec<F::Elem>>>,
    /// `right[x][i] = m_i · x`.
    right: Vec<Vec<SparseVec<F::Elem>>>,
}

/// A bimodule map, stored by the images of basis vectors.
pub type BimoduleMap<F> = SparseMatrix<<F as Field>::Elem>;

pub(crate) fn int_vec<F: Field>(field: &F, v: &[(usize, i64)]) -> SparseVec<F::Elem> {
    v.iter().map(|&(i, c)| (i, field.from_i64(c))).filter(|(_, c)| !field.is_zero(c)).collect()
}

impl<F: Field> Bimodule<F> {
    /// Builds the action tables from closures computing `x · m_i` and `m_i · x`.
    #[allow(clippy::too_many_arguments)]
    pub fn from_actions(
        alg: &ArcAlgebra,
        name: impl Into<String>,
        left_idem: Vec<usize>,
        right_idem: Vec<usize>,
        degrees: Option<Vec<i64>>,
        labels: Vec<String>,
        left_fn: impl Fn(usize, usize) -> SparseVec<F::Elem> + Sync,
        right_fn: impl Fn(usize, usize) -> SparseVec<F::Elem> + Sync,
    ) -> Self {
        let dim = left_idem.len();
        let left = (0..alg.dim())
            .into_par_iter()
            .map(|x| {
                (0..dim)
                    .map(|i| if alg.right_idempotent(x) == left_idem[i] { left_fn(x, i) } else { Vec::new() })
                    .collect()
            })
            .collect();
        let right = (0..alg.dim())
            .into_par_iter()
            .map(|x| {
                (0..dim)
                    .map(|i| if right_idem[i] == alg.left_idempotent(x) { right_fn(i, x) } else { Vec::new() })
                    .collect()
            })
            .collect();
        Bimodule { name: name.into(), kind: alg.kind(), left_idem, right_idem, degrees, labels, left, right }
    }

    /// `A` as a bimodule over itself.
    pub fn diagonal(alg: &ArcAlgebra, field: &F) -> Self {
        let n = alg.dim();
        Self::from_actions(
            alg,
            format!("Δ_{}", alg.kind()),
            (0..n).map(|i| alg.left_idempotent(i)).collect(),
            (0..n).map(|i| alg.right_idempotent(i)).collect(),
            Some((0..n).map(|i| alg.degree(i) as i64).collect()),
            alg.basis().iter().map(|d| d.to_string()).collect(),
            |x, i| int_vec(field, &alg.multiply_basis(x, i)),
            |i, x| int_vec(field, &alg.multiply_basis(i, x)),
        )
    }

    /// The zero bimodule.
    pub fn zero(alg: &ArcAlgebra, name: impl Into<String>) -> Self {
        Bimodule {
            name: name.into(),
            kind: alg.kind(),
            left_idem: Vec::new(),
            right_idem: Vec::new(),
            degrees: Some(Vec::new()),
            labels: Vec::new(),
            left: vec![Vec::new(); alg.dim()],
            right: vec![Vec::new(); alg.dim()],
        }
    }

    pub fn dim(&self) -> usize {
        self.left_idem.len()
    }

    pub fn left_act(&self, x: usize, i: usize) -> &SparseVec<F::Elem> {
        &self.left[x][i]
    }

    pub fn right_act(&self, i: usize, x: usize) -> &SparseVec<F::Elem> {
        &self.right[x][i]
    }

    fn act_left_vec(&self, field: &F, x: usize, v: &[(usize, F::Elem)]) -> SparseVec<F::Elem> {
        let mut acc = Vec::new();
        for (i, c) in v {
            acc = axpy(field, &acc, c, self.left_act(x, *i));
        }
        acc
    }

    fn act_right_vec(&self, field: &F, v: &[(usize, F::Elem)], x: usize) -> SparseVec<F::Elem> {
        let mut acc = Vec::new();
        for (i, c) in v {
            acc = axpy(field, &acc, c, self.right_act(*i, x));
        }
        acc
    }

    /// Idempotent decomposition, associativity of both actions, and `(x·m)·y = x·(m·y)`,
    /// exhaustively over algebra basis pairs.
    pub fn check(&self, alg: &ArcAlgebra, field: &F) -> Check {
        let mut c = Check::new(format!("{} is a bimodule", self.name));
        if alg.kind() != self.kind {
            c.record(false, || format!("{} is not over {}", self.name, alg.kind()));
            return c;
        }
        for i in 0..self.dim() {
            for w in 0..alg.weights().len() {
                let e = alg.idempotent(w);
                let unit = vec![(i, field.one())];
                let l = if w == self.left_idem[i] { unit.clone() } else { Vec::new() };
                let r = if w == self.right_idem[i] { unit } else { Vec::new() };
                c.record(*self.left_act(e, i) == l && *self.right_act(i, e) == r, || format!("idempotents on {}", self.labels[i]));
            }
        }
        let sub = (0..self.dim())
            .into_par_iter()
            .map(|i| {
                let mut c = Check::new(&self.name);
                let mi = vec![(i, field.one())];
                for x in 0..alg.dim() {
                    let xm = self.act_left_vec(field, x, &mi);
                    let mx = self.act_right_vec(field, &mi, x);
                    for y in 0..alg.dim() {
                        let xy = int_vec(field, &alg.multiply_basis(x, y));
                        let lhs = self.act_left_vec(field, x, &self.act_left_vec(field, y, &mi));
                        let rhs = xy.iter().fold(Vec::new(), |acc, (z, k)| axpy(field, &acc, k, self.left_act(*z, i)));
                        c.record(lhs == rhs, || format!("left associativity at {}", self.labels[i]));
                        let lhs = self.act_right_vec(field, &mx, y);
                        let rhs = xy.iter().fold(Vec::new(), |acc, (z, k)| axpy(field, &acc, k, self.right_act(i, *z)));
                        c.record(lhs == rhs, || format!("right associativity at {}", self.labels[i]));
                        let lhs = self.act_right_vec(field, &xm, y);
                        let rhs = self.act_left_vec(field, x, &self.act_right_vec(field, &mi, y));
                        c.record(lhs == rhs, || format!("actions commute at {}", self.labels[i]));
                    }
                }
                c
            })
            .reduce(|| Check::new(&self.name), |mut a, b| {
                a.absorb(b);
                a
            });
        c.absorb(sub);
        c
    }

    /// Whether `f: self → other` commutes with both actions.
    pub fn is_map_to(&self, other: &Bimodule<F>, field: &F, f: &BimoduleMap<F>) -> bool {
        if f.ncols != self.dim() || f.nrows != other.dim() {
            return false;
        }
        let na = self.left.len();
        (0..self.dim()).into_par_iter().all(|i| {
            (0..na).all(|x| {
                f.apply(field, self.left_act(x, i)) == other.act_left_vec(field, x, &f.columns[i])
                    && f.apply(field, self.right_act(i, x)) == other.act_right_vec(field, &f.columns[i], x)
            })
        })
    }

    /// Whether `f: self → other` preserves degrees up to a constant shift.
    pub fn map_degree(&self, other: &Bimodule<F>, f: &BimoduleMap<F>) -> Option<i64> {
        let (Some(ds), Some(dt)) = (&self.degrees, &other.degrees) else { return None };
        let mut shift = None;
        for (j, col) in f.columns.iter().enumerate() {
            for (i, _) in col {
                let s = dt[*i] - ds[j];
                if *shift.get_or_insert(s) != s {
                    return None;
                }
            }
        }
        Some(shift.unwrap_or(0))
    }

    pub fn identity_map(&self, field: &F) -> BimoduleMap<F> {
        SparseMatrix {
            nrows: self.dim(),
            ncols: self.dim(),
            columns: (0..self.dim()).map(|i| vec![(i, field.one())]).collect(),
        }
    }
}

/// `M ⊗_A N` as a quotient of `M ⊗_R N`, with the data needed to tensor maps.
#[derive(Clone, Debug)]
pub struct Tensor<F: Field> {
    pub module: Bimodule<F>,
    pairs: Vec<(usize, usize)>,
    pair_index: HashMap<(usize, usize), usize>,
    relations: Echelon<F>,
    /// Pair index of every quotient basis vector.
    quotient: Vec<usize>,
    position: Vec<Option<usize>>,
}

impl<F: Field> Tensor<F> {
    /// Quotient coordinates of a vector given on `M ⊗_R N` pairs.
    fn coords(&self, v: SparseVec<F::Elem>) -> SparseVec<F::Elem> {
        self.relations
            .reduce(v)
            .into_iter()
            .map(|(p, c)| (self.position[p].expect("reduced vectors avoid pivots"), c))
            .collect()
    }

    fn pair_vec(&self, field: &F, terms: impl IntoIterator<Item = ((usize, usize), F::Elem)>) -> SparseVec<F::Elem> {
        normalize(field, terms.into_iter().map(|(p, c)| (self.pair_index[&p], c)).collect())
    }

    /// Basis vector `k` of the quotient as a pair `(i, j)` of factor basis indices.
    pub fn pair(&self, k: usize) -> (usize, usize) {
        self.pairs[self.quotient[k]]
    }
}

/// `M ⊗_A N`: pairs with matching middle idempotent modulo `m·a ⊗ n − m ⊗ a·n`.
pub fn tensor_over<F: Field>(alg: &ArcAlgebra, field: &F, m: &Bimodule<F>, n: &Bimodule<F>) -> Result<Tensor<F>> {
    if m.kind != alg.kind() || n.kind != alg.kind() {
        return Err(Error::InvalidParameters(format!("{} and {} are not both over {}", m.name, n.name, alg.kind())));
    }
    let mut pairs = Vec::new();
    let mut by_left: Vec<Vec<usize>> = vec![Vec::new(); alg.weights().len()];
    for k in 0..n.dim() {
        by_left[n.left_idem[k]].push(k);
    }
    for i in 0..m.dim() {
        for &k in &by_left[m.right_idem[i]] {
            pairs.push((i, k));
        }
    }
    let pair_index: HashMap<(usize, usize), usize> = pairs.iter().enumerate().map(|(p, &q)| (q, p)).collect();
    let mut rels: Vec<SparseVec<F::Elem>> = (0..alg.dim())
        .into_par_iter()
        .filter(|&a| alg.degree(a) > 0)
        .flat_map_iter(|a| {
            let (la, ra) = (alg.left_idempotent(a), alg.right_idempotent(a));
            let ms: Vec<usize> = (0..m.dim()).filter(|&i| m.right_idem[i] == la).collect();
            let ks = by_left[ra].clone();
            let pair_index = &pair_index;
            ms.into_iter().flat_map(move |i| {
                let ks = ks.clone();
                ks.into_iter().map(move |k| {
                    let mut v: Vec<(usize, F::Elem)> = m
                        .right_act(i, a)
                        .iter()
                        .map(|(j, c)| (pair_index[&(*j, k)], c.clone()))
                        .collect();
                    v.extend(n.left_act(a, k).iter().map(|(l, c)| (pair_index[&(i, *l)], field.neg(c))));
                    normalize(field, v)
                })
            })
        })
        .filter(|v| !v.is_empty())
        .collect();
    rels.sort_by_key(|v| v.len());
    let mut relations = Echelon::new(field.clone(), pairs.len());
    for r in rels {
        relations.insert(r);
    }
    let quotient: Vec<usize> = (0..pairs.len()).filter(|&p| !relations.is_pivot(p)).collect();
    let mut position = vec![None; pairs.len()];
    for (k, &p) in quotient.iter().enumerate() {
        position[p] = Some(k);
    }
    let degrees = match (&m.degrees, &n.degrees) {
        (Some(a), Some(b)) => Some(quotient.iter().map(|&p| a[pairs[p].0] + b[pairs[p].1]).collect()),
        _ => None,
    };
    let labels = quotient
        .iter()
        .map(|&p| format!("{}⊗{}", m.labels[pairs[p].0], n.labels[pairs[p].1]))
        .collect();
    let left_idem = quotient.iter().map(|&p| m.left_idem[pairs[p].0]).collect();
    let right_idem = quotient.iter().map(|&p| n.right_idem[pairs[p].1]).collect();
    let mut t = Tensor {
        module: Bimodule::zero(alg, format!("{}⊗{}", m.name, n.name)),
        pairs,
        pair_index,
        relations,
        quotient,
        position,
    };
    let module = Bimodule::from_actions(
        alg,
        format!("{}⊗{}", m.name, n.name),
        left_idem,
        right_idem,
        degrees,
        labels,
        |x, q| {
            let (i, k) = t.pair(q);
            let v = t.pair_vec(field, m.left_act(x, i).iter().map(|(j, c)| ((*j, k), c.clone())));
            t.coords(v)
        },
        |q, x| {
            let (i, k) = t.pair(q);
            let v = t.pair_vec(field, n.right_act(k, x).iter().map(|(l, c)| ((i, *l), c.clone())));
            t.coords(v)
        },
    );
    t.module = module;
    Ok(t)
}

/// `f ⊗ g: M ⊗_A N → M' ⊗_A N'`.
pub fn tensor_map<F: Field>(
    field: &F,
    src: &Tensor<F>,
    dst: &Tensor<F>,
    f: &BimoduleMap<F>,
    g: &BimoduleMap<F>,
) -> BimoduleMap<F> {
    let columns = (0..src.module.dim())
        .into_par_iter()
        .map(|q| {
            let (i, k) = src.pair(q);
            let mut terms = Vec::new();
            for (j, a) in &f.columns[i] {
                for (l, b) in &g.columns[k] {
                    terms.push(((*j, *l), field.mul(a, b)));
                }
            }
            dst.coords(dst.pair_vec(field, terms))
        })
        .collect();
    SparseMatrix { nrows: dst.module.dim(), ncols: src.module.dim(), columns }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};

    #[test]
    fn diagonal_is_a_bimodule() {
        let k = ArcAlgebra::k(1, 3).unwrap();
        let d = Bimodule::diagonal(&k, &Rationals);
        let c = d.check(&k, &Rationals);
        assert!(c.pass(), "{c:?}");
        assert!(d.is_map_to(&d, &Rationals, &d.identity_map(&Rationals)));
    }

    #[test]
    fn diagonal_is_a_tensor_unit() {
        let f = PrimeField::new(101).unwrap();
        let k = ArcAlgebra::k(2, 4).unwrap();
        let d = Bimodule::diagonal(&k, &f);
        let t = tensor_over(&k, &f, &d, &d).unwrap();
        assert_eq!(t.module.dim(), k.dim());
        assert!(t.module.check(&k, &f).pass());
    }

    #[test]
    fn right_multiplication_is_not_a_bimodule_map() {
        let k = ArcAlgebra::k(1, 2).unwrap();
        let d = Bimodule::diagonal(&k, &Rationals);
        let x = k.index_of(&"v^:^v:^v".parse().unwrap()).unwrap();
        let f = SparseMatrix {
            nrows: k.dim(),
            ncols: k.dim(),
            columns: (0..k.dim()).map(|i| int_vec(&Rationals, &k.multiply_basis(i, x))).collect(),
        };
        assert!(!d.is_map_to(&d, &Rationals, &f));
    }
}
