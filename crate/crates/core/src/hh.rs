//! Hochschild homology through the bar complex relative to the idempotents `R = ⊕ F e_λ`.
//!
//! `C_p(M) = M ⊗_R Ā^{⊗_R p}` (cyclically composable chains), with `Ā` the positive-degree
//! part. For a complex of bimodules `M^k` (cohomological `k`) the total degree is `p − k`
//! and `D = b + (−1)^p δ`.

use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::ArcAlgebra;
use crate::bimodule::{Bimodule, BimoduleMap};
use crate::complex::ChainComplex;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{normalize, SparseMatrix, SparseVec};

/// One term of a complex of bimodules.
#[derive(Clone, Debug)]
pub struct Term<F: Field> {
    /// Cohomological degree.
    pub k: i64,
    /// Added to every internal degree of `module`.
    pub shift: i64,
    pub module: Bimodule<F>,
}

/// A bounded complex of bimodules; `maps` go from degree `k` to `k + 1`.
#[derive(Clone, Debug)]
pub struct BimoduleComplex<F: Field> {
    pub terms: Vec<Term<F>>,
    pub maps: Vec<(usize, usize, BimoduleMap<F>)>,
}

impl<F: Field> BimoduleComplex<F> {
    pub fn single(module: Bimodule<F>) -> Self {
        BimoduleComplex { terms: vec![Term { k: 0, shift: 0, module }], maps: Vec::new() }
    }

    /// Checks degrees, shapes, and `δ² = 0`.
    pub fn validate(&self, field: &F) -> Result<()> {
        for (s, t, f) in &self.maps {
            let (a, b) = (&self.terms[*s], &self.terms[*t]);
            if b.k != a.k + 1 || f.ncols != a.module.dim() || f.nrows != b.module.dim() {
                return Err(Error::InvalidComplex(format!("map {s} → {t} has the wrong degree or shape")));
            }
        }
        let mut out: HashMap<usize, Vec<usize>> = HashMap::new();
        for (e, (s, _, _)) in self.maps.iter().enumerate() {
            out.entry(*s).or_default().push(e);
        }
        for (s, _) in self.terms.iter().enumerate() {
            let mut sums: BTreeMap<usize, SparseMatrix<F::Elem>> = BTreeMap::new();
            for &e1 in out.get(&s).into_iter().flatten() {
                let (_, mid, f) = &self.maps[e1];
                for &e2 in out.get(mid).into_iter().flatten() {
                    let (_, t, g) = &self.maps[e2];
                    let gf = g.compose(field, f);
                    let acc = sums.entry(*t).or_insert_with(|| SparseMatrix::zero(gf.nrows, gf.ncols));
                    for (c, col) in acc.columns.iter_mut().enumerate() {
                        let mut v = std::mem::take(col);
                        v.extend(gf.columns[c].iter().cloned());
                        *col = normalize(field, v);
                    }
                }
            }
            if sums.values().any(|m| !m.is_zero()) {
                return Err(Error::InvalidComplex(format!("δ² ≠ 0 starting at term {s}")));
            }
        }
        Ok(())
    }

    fn k_range(&self) -> (i64, i64) {
        let ks = self.terms.iter().map(|t| t.k);
        (ks.clone().min().unwrap_or(0), ks.max().unwrap_or(0))
    }

    /// Number of cube directions, `k_max − k_min`.
    pub fn length(&self) -> usize {
        let (a, b) = self.k_range();
        (b - a) as usize
    }

    fn graded(&self) -> bool {
        self.terms.iter().all(|t| t.module.degrees.is_some())
    }
}

/// Hochschild homology ranks with their certification window.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HHReport {
    pub algebra: String,
    pub field: String,
    pub bar_depth: usize,
    /// Ranks for every certified total degree.
    pub ranks: BTreeMap<i64, usize>,
    /// Same, split by internal degree, when all maps are homogeneous.
    pub graded: Option<BTreeMap<i64, BTreeMap<i64, usize>>>,
    /// Lowest and highest certified total degree.
    pub certified: (i64, i64),
    /// Dimension of the total complex in each built degree.
    pub chain_dims: BTreeMap<i64, usize>,
    /// Whether the certified window covers every degree where homology can be nonzero.
    pub complete: bool,
}

impl HHReport {
    pub fn total(&self) -> usize {
        self.ranks.values().sum()
    }
}

/// Positive-degree basis elements grouped by left idempotent.
struct Abar {
    by_left: Vec<Vec<u32>>,
}

impl Abar {
    fn new(alg: &ArcAlgebra) -> Self {
        let mut by_left = vec![Vec::new(); alg.weights().len()];
        for a in 0..alg.dim() {
            if alg.degree(a) > 0 {
                by_left[alg.left_idempotent(a)].push(a as u32);
            }
        }
        Abar { by_left }
    }

    /// All composable `a_1 … a_p` starting at idempotent `from`, ending at `to` (any end
    /// when `None`).
    fn walks(&self, alg: &ArcAlgebra, from: usize, to: Option<usize>, p: usize) -> Vec<Vec<u32>> {
        let mut out = Vec::new();
        let mut cur = Vec::with_capacity(p);
        self.extend(alg, from, to, p, &mut cur, &mut out);
        out
    }

    fn extend(&self, alg: &ArcAlgebra, at: usize, to: Option<usize>, p: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == p {
            if to.is_none_or(|t| t == at) {
                out.push(cur.clone());
            }
            return;
        }
        for &a in &self.by_left[at] {
            cur.push(a);
            self.extend(alg, alg.right_idempotent(a as usize), to, p, cur, out);
            cur.pop();
        }
    }
}

/// The product `a · b` of two positive-degree basis elements.
fn abar_product<F: Field>(field: &F, alg: &ArcAlgebra, a: u32, b: u32) -> Vec<(u32, F::Elem)> {
    alg.multiply_basis(a as usize, b as usize)
        .iter()
        .map(|&(z, c)| (z as u32, field.from_i64(c)))
        .filter(|(_, c)| !field.is_zero(c))
        .collect()
}

fn sign<F: Field>(field: &F, odd: bool, c: &F::Elem) -> F::Elem {
    if odd {
        field.neg(c)
    } else {
        c.clone()
    }
}

/// Chains of the total complex in one total degree: `(term, p, [m, a_1, …, a_p])`.
struct TotalDegree {
    chains: Vec<(usize, usize, Vec<u32>)>,
    index: HashMap<(usize, Vec<u32>), usize>,
}

/// `HH_*(A, M)` for a complex of bimodules `M`, building bar degrees `0..=pmax`.
///
/// Degree `t` is certified when every chain that can reach or leave it is built, that is
/// for `t ≤ pmax − 1 − k_max`. When `gldim` is supplied the report says whether the window
/// covers all degrees where homology can be nonzero (`t ≤ gldim − k_min`).
pub fn relative_bar_hochschild<F: Field>(
    alg: &ArcAlgebra,
    field: &F,
    complex: &BimoduleComplex<F>,
    pmax: usize,
    gldim: Option<usize>,
) -> Result<HHReport> {
    for t in &complex.terms {
        if t.module.kind != alg.kind() {
            return Err(Error::InvalidParameters(format!("{} is not over {}", t.module.name, alg.kind())));
        }
    }
    complex.validate(field)?;
    let (kmin, kmax) = complex.k_range();
    let lo = -kmax;
    let hi = pmax as i64 - kmax;
    let certified = (lo, hi - 1);
    if certified.1 < certified.0 {
        return Err(Error::Truncation(format!(
            "bar depth {pmax} certifies no degree for a complex with k_max = {kmax}"
        )));
    }
    let abar = Abar::new(alg);
    let graded = complex.graded();
    let mut out_maps: Vec<Vec<usize>> = vec![Vec::new(); complex.terms.len()];
    for (e, (s, _, _)) in complex.maps.iter().enumerate() {
        out_maps[*s].push(e);
    }

    let degrees: Vec<TotalDegree> = (lo..=hi)
        .map(|t| {
            let mut chains = Vec::new();
            for (s, term) in complex.terms.iter().enumerate() {
                let p = t + term.k;
                if p < 0 || p > pmax as i64 {
                    continue;
                }
                let p = p as usize;
                let m = &term.module;
                let per_m: Vec<Vec<Vec<u32>>> = (0..m.dim())
                    .into_par_iter()
                    .map(|i| abar.walks(alg, m.right_idem[i], Some(m.left_idem[i]), p))
                    .collect();
                for (i, ws) in per_m.into_iter().enumerate() {
                    for w in ws {
                        let mut c = Vec::with_capacity(p + 1);
                        c.push(i as u32);
                        c.extend(w);
                        chains.push((s, p, c));
                    }
                }
            }
            let index = chains.iter().enumerate().map(|(n, (s, _, c))| ((*s, c.clone()), n)).collect();
            TotalDegree { chains, index }
        })
        .collect();

    let grading = |s: usize, c: &[u32]| -> i64 {
        let term = &complex.terms[s];
        let dm = term.module.degrees.as_ref().map_or(0, |d| d[c[0] as usize]);
        dm + term.shift + c[1..].iter().map(|&a| alg.degree(a as usize) as i64).sum::<i64>()
    };

    let mut diffs = Vec::with_capacity(degrees.len());
    for (ti, deg) in degrees.iter().enumerate() {
        if ti == 0 {
            diffs.push(SparseMatrix::zero(0, deg.chains.len()));
            continue;
        }
        let target = &degrees[ti - 1];
        let columns: Vec<SparseVec<F::Elem>> = deg
            .chains
            .par_iter()
            .map(|(s, p, c)| {
                let (s, p) = (*s, *p);
                let m = &complex.terms[s].module;
                let mut v: Vec<(usize, F::Elem)> = Vec::new();
                let mut push = |term: usize, chain: Vec<u32>, coeff: F::Elem| {
                    let row = target.index[&(term, chain)];
                    v.push((row, coeff));
                };
                if p >= 1 {
                    let mi = c[0] as usize;
                    let a1 = c[1] as usize;
                    for (j, x) in m.right_act(mi, a1) {
                        let mut ch = vec![*j as u32];
                        ch.extend_from_slice(&c[2..]);
                        push(s, ch, x.clone());
                    }
                    for i in 1..p {
                        for (z, x) in abar_product(field, alg, c[i], c[i + 1]) {
                            let mut ch = c[..i].to_vec();
                            ch.push(z);
                            ch.extend_from_slice(&c[i + 2..]);
                            push(s, ch, sign(field, i % 2 == 1, &x));
                        }
                    }
                    let ap = c[p] as usize;
                    for (j, x) in m.left_act(ap, mi) {
                        let mut ch = vec![*j as u32];
                        ch.extend_from_slice(&c[1..p]);
                        push(s, ch, sign(field, p % 2 == 1, x));
                    }
                }
                for &e in &out_maps[s] {
                    let (_, t, f) = &complex.maps[e];
                    for (j, x) in &f.columns[c[0] as usize] {
                        let mut ch = vec![*j as u32];
                        ch.extend_from_slice(&c[1..]);
                        push(*t, ch, sign(field, p % 2 == 1, x));
                    }
                }
                normalize(field, v)
            })
            .collect();
        diffs.push(SparseMatrix { nrows: target.chains.len(), ncols: deg.chains.len(), columns });
    }

    let gradings = graded.then(|| {
        degrees
            .iter()
            .map(|d| d.chains.iter().map(|(s, _, c)| grading(*s, c)).collect())
            .collect()
    });
    let dims: Vec<usize> = degrees.iter().map(|d| d.chains.len()).collect();
    let chain_dims = (lo..=hi).zip(dims.iter().copied()).collect();
    let cx = match ChainComplex::new(field.clone(), lo, dims.clone(), diffs.clone(), gradings) {
        Ok(cx) => cx,
        Err(Error::InvalidComplex(msg)) if msg.contains("grading") => {
            ChainComplex::new(field.clone(), lo, dims, diffs, None)?
        }
        Err(e) => return Err(e),
    };
    let gh = cx.graded_homology();
    let keep = |t: &i64| *t >= certified.0 && *t <= certified.1;
    let ranks = gh.iter().filter(|(t, _)| keep(t)).map(|(t, g)| (*t, g.values().sum())).collect();
    let graded_out = cx
        .gradings
        .is_some()
        .then(|| gh.into_iter().filter(|(t, _)| keep(t)).collect());
    Ok(HHReport {
        algebra: alg.kind().to_string(),
        field: field.name(),
        bar_depth: pmax,
        ranks,
        graded: graded_out,
        certified,
        chain_dims,
        complete: gldim.is_some_and(|g| g as i64 - kmin <= certified.1),
    })
}

/// `HH_*(A, A)` in degrees `0..pmax`.
pub fn hochschild_diagonal<F: Field>(alg: &ArcAlgebra, field: &F, pmax: usize) -> Result<HHReport> {
    let cx = BimoduleComplex::single(Bimodule::diagonal(alg, field));
    relative_bar_hochschild(alg, field, &cx, pmax, None)
}

/// Global dimension as the largest `p` with `Tor_p^A(R, R) ≠ 0`, computed from the
/// reduced bar complex `Ā^{⊗_R p}`. Gives up with a truncation error past `max_p`.
pub fn global_dimension<F: Field>(alg: &ArcAlgebra, field: &F, max_p: usize) -> Result<usize> {
    let abar = Abar::new(alg);
    let nw = alg.weights().len();
    let chains = |p: usize| -> Vec<Vec<u32>> {
        if p == 0 {
            return Vec::new();
        }
        (0..nw).flat_map(|w| abar.walks(alg, w, None, p)).collect()
    };
    let grading = |c: &[u32]| c.iter().map(|&a| alg.degree(a as usize) as i64).sum::<i64>();
    // rank of d: B_p → B_{p−1}, d(a_1…a_p) = Σ (−1)^i a_1…(a_i a_{i+1})…a_p.
    let rank_of = |p: usize, src: &[Vec<u32>], dst: &[Vec<u32>]| -> usize {
        if p <= 1 {
            return 0;
        }
        let index: HashMap<&[u32], usize> = dst.iter().enumerate().map(|(i, c)| (c.as_slice(), i)).collect();
        let columns: Vec<SparseVec<F::Elem>> = src
            .par_iter()
            .map(|c| {
                let mut v = Vec::new();
                for i in 0..p - 1 {
                    for (z, x) in abar_product(field, alg, c[i], c[i + 1]) {
                        let mut ch = c[..i].to_vec();
                        ch.push(z);
                        ch.extend_from_slice(&c[i + 2..]);
                        v.push((index[ch.as_slice()], sign(field, i % 2 == 0, &x)));
                    }
                }
                normalize(field, v)
            })
            .collect();
        let g: Vec<i64> = src.iter().map(|c| grading(c)).collect();
        let m = SparseMatrix { nrows: dst.len(), ncols: src.len(), columns };
        crate::complex::matrix_ranks(field, &m, Some(&g)).values().sum()
    };
    // Tor_0 = R ≠ 0; find the first p ≥ 1 with Tor_p = 0.
    let mut cur = chains(1);
    let mut r_here = 0;
    for p in 1..=max_p {
        let next = chains(p + 1);
        let r_next = rank_of(p + 1, &next, &cur);
        if cur.len() == r_here + r_next {
            return Ok(p - 1);
        }
        r_here = r_next;
        cur = next;
    }
    Err(Error::Truncation(format!("Tor_p(R, R) is nonzero for all p ≤ {max_p}")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};

    #[test]
    fn hh_of_k12() {
        let k = ArcAlgebra::k(1, 2).unwrap();
        let r = hochschild_diagonal(&k, &Rationals, 4).unwrap();
        assert_eq!(r.ranks, BTreeMap::from([(0, 2), (1, 0), (2, 0), (3, 0)]));
        assert_eq!(r.certified, (0, 3));
    }

    #[test]
    fn hh_of_k13_mod_p() {
        let k = ArcAlgebra::k(1, 3).unwrap();
        let r = hochschild_diagonal(&k, &PrimeField::new(1_000_003).unwrap(), 3).unwrap();
        assert_eq!(r.ranks, BTreeMap::from([(0, 3), (1, 0), (2, 0)]));
    }

    #[test]
    fn ground_field() {
        let k = ArcAlgebra::k(0, 2).unwrap();
        let r = hochschild_diagonal(&k, &Rationals, 2).unwrap();
        assert_eq!(r.ranks, BTreeMap::from([(0, 1), (1, 0)]));
        assert_eq!(global_dimension(&k, &Rationals, 3).unwrap(), 0);
    }

    #[test]
    fn global_dimension_k12() {
        let k = ArcAlgebra::k(1, 2).unwrap();
        assert_eq!(global_dimension(&k, &Rationals, 6).unwrap(), 2);
    }

    #[test]
    fn zero_depth_is_a_truncation_error() {
        let k = ArcAlgebra::k(1, 2).unwrap();
        assert!(matches!(hochschild_diagonal(&k, &Rationals, 0), Err(Error::Truncation(_))));
    }
}
