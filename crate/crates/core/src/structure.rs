//! Structural checks on arc algebras, shared by the test suites and `arcalg verify`.

use std::collections::BTreeMap;

use num_rational::BigRational;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::{AlgebraElement, ArcAlgebra, Ideal};
use crate::diagram::{cap_diagram, cup_diagram, is_oriented_half, orientations_of, OrientedCircleDiagram};
use crate::error::Result;
use crate::field::Rationals;
use crate::linalg::rank;
use crate::weight::max_weight;

/// Outcome of one named check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub checked: usize,
    pub failures: usize,
    pub first_failure: Option<String>,
}

impl Check {
    pub fn new(name: impl Into<String>) -> Self {
        Check { name: name.into(), checked: 0, failures: 0, first_failure: None }
    }

    pub fn pass(&self) -> bool {
        self.failures == 0
    }

    pub fn record(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failures += 1;
            if self.first_failure.is_none() {
                self.first_failure = Some(what());
            }
        }
    }

    pub fn absorb(&mut self, other: Check) {
        self.checked += other.checked;
        self.failures += other.failures;
        if self.first_failure.is_none() {
            self.first_failure = other.first_failure;
        }
    }
}

/// How to choose basis tuples.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Sampling {
    Exhaustive,
    Random { samples: usize, seed: u64 },
}

type Vector = BTreeMap<usize, i64>;

fn accumulate(into: &mut Vector, k: usize, c: i64) {
    let e = into.entry(k).or_insert(0);
    *e += c;
    if *e == 0 {
        into.remove(&k);
    }
}

fn times_right(alg: &ArcAlgebra, x: &Vector, j: usize) -> Vector {
    let mut out = Vector::new();
    for (&i, &a) in x {
        for &(k, c) in alg.multiply_basis(i, j).iter() {
            accumulate(&mut out, k, a * c);
        }
    }
    out
}

fn times_left(alg: &ArcAlgebra, i: usize, y: &Vector) -> Vector {
    let mut out = Vector::new();
    for (&j, &b) in y {
        for &(k, c) in alg.multiply_basis(i, j).iter() {
            accumulate(&mut out, k, b * c);
        }
    }
    out
}

fn basis_vec(alg: &ArcAlgebra, i: usize, j: usize) -> Vector {
    alg.multiply_basis(i, j).iter().copied().collect()
}

fn by_left(alg: &ArcAlgebra) -> Vec<Vec<usize>> {
    let mut rows = vec![Vec::new(); alg.weights().len()];
    for i in 0..alg.dim() {
        rows[alg.left_idempotent(i)].push(i);
    }
    rows
}

/// Composable triples `(i, j, k)`: either all of them or random ones.
fn triples(alg: &ArcAlgebra, sampling: Sampling) -> Vec<(usize, usize, usize)> {
    let rows = by_left(alg);
    match sampling {
        Sampling::Exhaustive => {
            let mut out = Vec::new();
            for i in 0..alg.dim() {
                for &j in &rows[alg.right_idempotent(i)] {
                    for &k in &rows[alg.right_idempotent(j)] {
                        out.push((i, j, k));
                    }
                }
            }
            out
        }
        Sampling::Random { samples, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            if alg.dim() == 0 {
                return Vec::new();
            }
            (0..samples)
                .map(|_| {
                    let i = rng.gen_range(0..alg.dim());
                    let j = *rows[alg.right_idempotent(i)].choose(&mut rng).expect("idempotent in row");
                    let k = *rows[alg.right_idempotent(j)].choose(&mut rng).expect("idempotent in row");
                    (i, j, k)
                })
                .collect()
        }
    }
}

fn pairs(alg: &ArcAlgebra, sampling: Sampling) -> Vec<(usize, usize)> {
    match sampling {
        Sampling::Exhaustive => (0..alg.dim())
            .flat_map(|i| (0..alg.dim()).map(move |j| (i, j)))
            .collect(),
        Sampling::Random { .. } => triples(alg, sampling).into_iter().map(|(i, j, _)| (i, j)).collect(),
    }
}

fn label(alg: &ArcAlgebra, ids: &[usize]) -> String {
    ids.iter()
        .map(|&i| alg.basis()[i].to_string())
        .collect::<Vec<_>>()
        .join(" · ")
}

pub fn check_associativity(alg: &ArcAlgebra, sampling: Sampling) -> Check {
    let ts = triples(alg, sampling);
    ts.par_iter()
        .map(|&(i, j, k)| {
            let mut c = Check::new("associativity");
            let l = times_right(alg, &basis_vec(alg, i, j), k);
            let r = times_left(alg, i, &basis_vec(alg, j, k));
            c.record(l == r, || label(alg, &[i, j, k]));
            c
        })
        .reduce(|| Check::new("associativity"), |mut a, b| {
            a.absorb(b);
            a
        })
}

/// `1·x = x = x·1` and `e_λ e_μ = δ_{λμ} e_λ`.
pub fn check_unit_and_idempotents(alg: &ArcAlgebra) -> Check {
    let mut c = Check::new("unit and orthogonal idempotents");
    let one = alg.unit();
    for i in 0..alg.dim() {
        let x = alg.basis_element(i);
        let ok = alg.multiply(&one, &x).ok() == Some(x.clone()) && alg.multiply(&x, &one).ok() == Some(x);
        c.record(ok, || format!("unit fails on {}", alg.basis()[i]));
    }
    for a in 0..alg.weights().len() {
        for b in 0..alg.weights().len() {
            let (ea, eb) = (alg.idempotent(a), alg.idempotent(b));
            let p = basis_vec(alg, ea, eb);
            let want: Vector = if a == b { [(ea, 1)].into_iter().collect() } else { Vector::new() };
            c.record(p == want, || label(alg, &[ea, eb]));
        }
    }
    c
}

pub fn check_degree_homogeneity(alg: &ArcAlgebra, sampling: Sampling) -> Check {
    let ps = pairs(alg, sampling);
    ps.par_iter()
        .map(|&(i, j)| {
            let mut c = Check::new("degree homogeneity");
            let d = alg.degree(i) + alg.degree(j);
            let ok = alg.multiply_basis(i, j).iter().all(|&(k, coeff)| alg.degree(k) == d && coeff > 0);
            c.record(ok, || label(alg, &[i, j]));
            c
        })
        .reduce(|| Check::new("degree homogeneity"), |mut a, b| {
            a.absorb(b);
            a
        })
}

fn permutations(k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(k - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, k - 1);
            out.push(q);
        }
    }
    out
}

/// Every order of the middle surgeries gives the same product. Exhaustive sampling
/// tries all orders when there are at most five surgeries, and otherwise one random
/// order per pair.
pub fn check_surgery_order_independence(alg: &ArcAlgebra, sampling: Sampling) -> Check {
    let seed = match sampling {
        Sampling::Random { seed, .. } => seed,
        Sampling::Exhaustive => 0,
    };
    let ps: Vec<(usize, usize)> = pairs(alg, sampling)
        .into_iter()
        .filter(|&(i, j)| alg.right_idempotent(i) == alg.left_idempotent(j))
        .collect();
    ps.par_iter()
        .enumerate()
        .map(|(t, &(i, j))| {
            let mut c = Check::new("surgery order independence");
            let k = alg.surgery_count(i);
            let orders = if k <= 5 && sampling == Sampling::Exhaustive {
                permutations(k)
            } else {
                let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (t as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15));
                let mut p: Vec<usize> = (0..k).collect();
                p.shuffle(&mut rng);
                vec![p]
            };
            let base = alg.multiply_basis(i, j);
            for o in orders {
                let other = alg.multiply_basis_ordered(i, j, Some(&o));
                c.record(other.as_ref().ok() == Some(&*base), || format!("{} with order {o:?}", label(alg, &[i, j])));
            }
            c
        })
        .reduce(|| Check::new("surgery order independence"), |mut a, b| {
            a.absorb(b);
            a
        })
}

/// `(b λ λ̄)(λ̲ λ a) = b λ a` whenever both factors are basis diagrams. The second check
/// is the weaker statement that `b λ a` occurs in the product with coefficient 1.
pub fn check_cancelling_products(alg: &ArcAlgebra) -> (Check, Check) {
    let mut exact = Check::new("cancelling products");
    let mut nonzero = Check::new("cancelling products contain bλa");
    let ws = alg.weights();
    for lam in ws {
        for b in ws {
            if !is_oriented_half(&cup_diagram(b), lam) {
                continue;
            }
            for a in ws {
                if !is_oriented_half(&cap_diagram(a), lam) {
                    continue;
                }
                let x = OrientedCircleDiagram { cup: *b, mid: *lam, cap: *lam };
                let y = OrientedCircleDiagram { cup: *lam, mid: *lam, cap: *a };
                let z = OrientedCircleDiagram { cup: *b, mid: *lam, cap: *a };
                let (xi, yi, zi) = (alg.index_of(&x), alg.index_of(&y), alg.index_of(&z));
                let (ok, has) = match (xi, yi, zi) {
                    (Some(xi), Some(yi), Some(zi)) => {
                        let p = alg.multiply_basis(xi, yi);
                        (*p == vec![(zi, 1)], p.contains(&(zi, 1)))
                    }
                    _ => (false, false),
                };
                let what = || {
                    let terms = match (xi, yi) {
                        (Some(xi), Some(yi)) => alg
                            .multiply_basis(xi, yi)
                            .iter()
                            .map(|&(k, c)| format!("{c}·{}", alg.basis()[k]))
                            .collect::<Vec<_>>()
                            .join(" + "),
                        _ => "undefined".into(),
                    };
                    format!("({x})({y}) = {terms}, expected {z}")
                };
                exact.record(ok, what);
                nonzero.record(has, what);
            }
        }
    }
    (exact, nonzero)
}

fn rank_of(vectors: Vec<Vector>, ncols: usize) -> usize {
    let field = Rationals;
    let vs = vectors.into_iter().map(|v| {
        v.into_iter()
            .map(|(k, c)| (k, BigRational::from_integer(c.into())))
            .collect::<Vec<_>>()
    });
    rank(&field, ncols, vs)
}

/// Every nonzero block `e_{λ1} K e_{λ0}` has a one-dimensional lowest degree, and its
/// lowest-degree vector generates the block over each diagonal block.
pub fn check_cyclicity(alg: &ArcAlgebra) -> (Check, Check) {
    let mut one_dim = Check::new("one-dimensional minimal degree");
    let mut cyc = Check::new("cyclic blocks");
    let nw = alg.weights().len();
    for l1 in 0..nw {
        for l0 in 0..nw {
            let block = alg.block(l1, l0);
            if block.is_empty() {
                continue;
            }
            let dmin = block.iter().map(|&i| alg.degree(i)).min().expect("nonempty");
            let mins: Vec<usize> = block.iter().copied().filter(|&i| alg.degree(i) == dmin).collect();
            let name = || format!("block ({}, {})", alg.weights()[l1], alg.weights()[l0]);
            one_dim.record(mins.len() == 1, name);
            let xmin = mins[0];
            let left: Vec<Vector> = alg.block(l1, l1).iter().map(|&y| basis_vec(alg, y, xmin)).collect();
            let right: Vec<Vector> = alg.block(l0, l0).iter().map(|&z| basis_vec(alg, xmin, z)).collect();
            let in_block = |vs: &[Vector]| vs.iter().all(|v| v.keys().all(|k| block.contains(k)));
            let ok = in_block(&left)
                && in_block(&right)
                && rank_of(left, alg.dim()) == block.len()
                && rank_of(right, alg.dim()) == block.len();
            cyc.record(ok, name);
        }
    }
    (one_dim, cyc)
}

/// For all `λ0, λ1`: no orientation of `λ̲1 ∪ λ̄0`, or one outside `{λ0, λ1}`, or one of
/// them is the maximal orientation of the other's diagram.
pub fn check_trichotomy(alg: &ArcAlgebra) -> Check {
    let mut c = Check::new("trichotomy");
    for l0 in alg.weights() {
        for l1 in alg.weights() {
            let Ok(os) = orientations_of(l1, l0) else {
                c.record(false, || format!("({l0}, {l1})"));
                continue;
            };
            let ok = os.is_empty()
                || os.iter().any(|e| e != l0 && e != l1)
                || *l0 == max_weight(l1)
                || *l1 == max_weight(l0);
            c.record(ok, || format!("({l0}, {l1})"));
        }
    }
    c
}

/// The degree-zero basis vectors are exactly the idempotents.
pub fn check_degree_zero_span(alg: &ArcAlgebra) -> Check {
    let mut c = Check::new("degree zero = idempotents");
    for (i, d) in alg.basis().iter().enumerate() {
        c.record((alg.degree(i) == 0) == d.is_idempotent(), || d.to_string());
    }
    c
}

/// `φ(xy) = φ(y)φ(x)` on all basis pairs, where `φ` is a degree-preserving bijection
/// of bases into `target`.
fn check_anti(
    name: &str,
    src: &ArcAlgebra,
    target: &ArcAlgebra,
    phi: impl Fn(&AlgebraElement) -> Result<AlgebraElement> + Sync,
) -> Check {
    let mut c = Check::new(name);
    let images: Vec<Option<usize>> = src
        .basis()
        .iter()
        .enumerate()
        .map(|(i, d)| {
            let img = phi(&src.basis_element(i)).ok()?;
            let (t, coeff) = img.terms().next()?;
            (img.len() == 1 && *coeff == BigRational::from_integer(1.into()) && t.degree() == d.degree())
                .then(|| target.index_of(t))
                .flatten()
        })
        .collect();
    let mut seen = vec![false; target.dim()];
    let mut bijective = src.dim() == target.dim();
    for im in &images {
        match im {
            Some(t) if !seen[*t] => seen[*t] = true,
            _ => bijective = false,
        }
    }
    c.record(bijective, || "not a degree-preserving bijection of bases".into());
    if !bijective {
        return c;
    }
    let img: Vec<usize> = images.into_iter().map(|x| x.expect("checked")).collect();
    let sub = (0..src.dim())
        .into_par_iter()
        .map(|i| {
            let mut c = Check::new(name);
            for j in 0..src.dim() {
                let mut lhs: Vec<(usize, i64)> = src.multiply_basis(i, j).iter().map(|&(k, x)| (img[k], x)).collect();
                lhs.sort_unstable();
                let rhs = target.multiply_basis(img[j], img[i]);
                c.record(lhs == *rhs, || label(src, &[i, j]));
            }
            c
        })
        .reduce(|| Check::new(name), |mut a, b| {
            a.absorb(b);
            a
        });
    c.absorb(sub);
    c
}

pub fn check_opposite_anti(alg: &ArcAlgebra) -> Check {
    check_anti("reflection anti-automorphism", alg, alg, |x| alg.opposite_iso(x))
}

/// Requires `alg = K(n,m)` and `target = K(m−n,m)`.
pub fn check_pd_anti(alg: &ArcAlgebra, target: &ArcAlgebra) -> Check {
    check_anti("rotation anti-isomorphism", alg, target, |x| alg.pd_iso(x))
}

/// `H·I·H ⊆ I` on basis vectors.
pub fn check_ideal_two_sided(h: &ArcAlgebra, ideal: Ideal) -> Check {
    let mut c = Check::new(format!("{ideal:?} is a two-sided ideal"));
    let members: Vec<usize> = (0..h.dim()).filter(|&i| ideal.contains(&h.basis()[i].mid)).collect();
    for &x in &members {
        for y in 0..h.dim() {
            let ok = h
                .multiply_basis(x, y)
                .iter()
                .chain(h.multiply_basis(y, x).iter())
                .all(|&(k, _)| ideal.contains(&h.basis()[k].mid));
            c.record(ok, || label(h, &[x, y]));
        }
    }
    c
}

/// `I_Λ = I1 + I2` as spans of basis vectors.
pub fn check_ideal_sum(h: &ArcAlgebra, n: usize, m: usize) -> Check {
    let mut c = Check::new("I_Λ = I1 + I2");
    for d in h.basis() {
        let sum = Ideal::I1 { n, m }.contains(&d.mid) || Ideal::I2 { n, m }.contains(&d.mid);
        c.record(sum == Ideal::ILambda { n, m }.contains(&d.mid), || d.to_string());
    }
    c
}

/// All algebra-level structure checks at one size.
pub fn structure_suite(alg: &ArcAlgebra, sampling: Sampling) -> Vec<Check> {
    let (one_dim, cyc) = check_cyclicity(alg);
    let (cancel, cancel_nonzero) = check_cancelling_products(alg);
    vec![
        check_associativity(alg, sampling),
        check_unit_and_idempotents(alg),
        check_degree_homogeneity(alg, sampling),
        check_surgery_order_independence(alg, sampling),
        cancel,
        cancel_nonzero,
        cyc,
        one_dim,
        check_trichotomy(alg),
        check_degree_zero_span(alg),
    ]
}
