//! Projective, standard and irreducible right modules over arc algebras.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::{AlgebraKind, ArcAlgebra};
use crate::diagram::{clockwise_arcs, cup_diagram, is_oriented_half, OrientedCircleDiagram};
use crate::error::{Error, Result};
use crate::poly::Laurent;
use crate::structure::{check_degree_zero_span, Check};
use crate::weight::{bruhat_leq, Weight};

/// A graded right module given by integer action matrices in a homogeneous basis.
#[derive(Clone, Debug)]
pub struct RightModule {
    pub name: String,
    pub kind: AlgebraKind,
    pub basis: Vec<OrientedCircleDiagram>,
    pub degrees: Vec<usize>,
    /// `action[j][i]` is `v_i · x_j`, for algebra basis element `x_j`.
    action: Vec<Vec<Vec<(usize, i64)>>>,
}

impl RightModule {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn graded_dimension(&self) -> Laurent {
        self.degrees.iter().map(|&d| (d as i64, 1)).collect()
    }

    /// `v_i · x_j` in module coordinates.
    pub fn act(&self, i: usize, j: usize) -> &[(usize, i64)] {
        &self.action[j][i]
    }

    /// Degree compatibility, `Σ e_λ` acting as the identity, and `(v·x)·y = v·(xy)` on
    /// all triples.
    pub fn check_action(&self, alg: &ArcAlgebra) -> Check {
        let mut c = Check::new(format!("{} is a graded right module", self.name));
        for i in 0..self.dim() {
            for j in 0..alg.dim() {
                let ok = self.act(i, j)
                    .iter()
                    .all(|&(k, _)| self.degrees[k] == self.degrees[i] + alg.degree(j));
                c.record(ok, || format!("degree of v{i} · {}", alg.basis()[j]));
            }
            let mut sum = BTreeMap::new();
            for w in 0..alg.weights().len() {
                for &(k, x) in self.act(i, alg.idempotent(w)) {
                    *sum.entry(k).or_insert(0) += x;
                }
            }
            sum.retain(|_, x| *x != 0);
            c.record(sum.into_iter().collect::<Vec<_>>() == vec![(i, 1)], || format!("unit on v{i}"));
        }
        let sub = (0..self.dim())
            .into_par_iter()
            .map(|i| {
                let mut c = Check::new(&self.name);
                for x in 0..alg.dim() {
                    for y in 0..alg.dim() {
                        if alg.right_idempotent(x) != alg.left_idempotent(y) {
                            continue;
                        }
                        let mut lhs = BTreeMap::new();
                        for &(k, a) in self.act(i, x) {
                            for &(l, b) in self.act(k, y) {
                                *lhs.entry(l).or_insert(0) += a * b;
                            }
                        }
                        let mut rhs = BTreeMap::new();
                        for &(z, a) in alg.multiply_basis(x, y).iter() {
                            for &(l, b) in self.act(i, z) {
                                *rhs.entry(l).or_insert(0) += a * b;
                            }
                        }
                        lhs.retain(|_, v| *v != 0);
                        rhs.retain(|_, v| *v != 0);
                        c.record(lhs == rhs, || format!("(v{i}·x{x})·x{y}"));
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
}

fn weight_idx(alg: &ArcAlgebra, lambda: &Weight) -> Result<usize> {
    alg.weight_index(lambda)
        .ok_or_else(|| Error::InvalidParameters(format!("{lambda} is not a weight of {}", alg.kind())))
}

/// Right module spanned by the basis diagrams in `rows`, with products projected onto them.
/// Products landing outside `rows` must have been shown to vanish in the quotient.
fn restricted(alg: &ArcAlgebra, name: String, rows: Vec<usize>) -> RightModule {
    let pos: BTreeMap<usize, usize> = rows.iter().enumerate().map(|(k, &i)| (i, k)).collect();
    let action = (0..alg.dim())
        .map(|j| {
            rows.iter()
                .map(|&i| {
                    alg.multiply_basis(i, j)
                        .iter()
                        .filter_map(|&(k, c)| pos.get(&k).map(|&p| (p, c)))
                        .collect()
                })
                .collect()
        })
        .collect();
    RightModule {
        name,
        kind: alg.kind(),
        basis: rows.iter().map(|&i| alg.basis()[i]).collect(),
        degrees: rows.iter().map(|&i| alg.degree(i)).collect(),
        action,
    }
}

/// `P(λ) = e_λ K`: basis diagrams with cup weight `λ`.
pub fn projective(alg: &ArcAlgebra, lambda: &Weight) -> Result<RightModule> {
    let l = weight_idx(alg, lambda)?;
    let rows = (0..alg.dim()).filter(|&i| alg.left_idempotent(i) == l).collect();
    Ok(restricted(alg, format!("P({lambda})"), rows))
}

/// `V(λ) = P(λ)/U(λ)` with `U(λ)` spanned by the diagrams whose middle weight is not `λ`.
/// Fails with [`Error::StructuralAssumption`] if `U(λ)` is not a submodule.
pub fn standard(alg: &ArcAlgebra, lambda: &Weight) -> Result<RightModule> {
    let l = weight_idx(alg, lambda)?;
    let p: Vec<usize> = (0..alg.dim()).filter(|&i| alg.left_idempotent(i) == l).collect();
    for &u in p.iter().filter(|&&i| alg.basis()[i].mid != *lambda) {
        for j in 0..alg.dim() {
            if let Some(&(k, _)) = alg.multiply_basis(u, j).iter().find(|&&(k, _)| alg.basis()[k].mid == *lambda) {
                return Err(Error::StructuralAssumption(format!(
                    "U({lambda}) is not a submodule: {} · {} has the term {}",
                    alg.basis()[u],
                    alg.basis()[j],
                    alg.basis()[k]
                )));
            }
        }
    }
    let rows = p.into_iter().filter(|&i| alg.basis()[i].mid == *lambda).collect();
    Ok(restricted(alg, format!("V({lambda})"), rows))
}

/// The one-dimensional module `L(λ)` on which only `e_λ` acts nontrivially.
pub fn irreducible(alg: &ArcAlgebra, lambda: &Weight) -> Result<RightModule> {
    let l = weight_idx(alg, lambda)?;
    let e = alg.idempotent(l);
    let action = (0..alg.dim())
        .map(|j| vec![if j == e { vec![(0, 1)] } else { Vec::new() }])
        .collect();
    Ok(RightModule {
        name: format!("L({lambda})"),
        kind: alg.kind(),
        basis: vec![alg.basis()[e]],
        degrees: vec![0],
        action,
    })
}

/// Graded decomposition numbers and the Cartan data of an algebra.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DecompositionData {
    pub weights: Vec<String>,
    /// `d[μ][λ] = q^{deg(λ̲ μ)}` when `μ` orients the cup diagram of `λ`, else 0.
    pub d: Vec<Vec<Laurent>>,
    /// `cartan[a][b] = dim_q e_a K e_b`.
    pub cartan: Vec<Vec<Laurent>>,
    pub cartan_equals_dt_d: bool,
    pub unitriangular: bool,
}

pub fn decomposition_data(alg: &ArcAlgebra) -> Result<DecompositionData> {
    let ws = alg.weights();
    let n = ws.len();
    let d: Vec<Vec<Laurent>> = ws
        .iter()
        .map(|mu| {
            ws.iter()
                .map(|lam| {
                    let cup = cup_diagram(lam);
                    if is_oriented_half(&cup, mu) {
                        Laurent::monomial(clockwise_arcs(&cup, mu) as i64, 1)
                    } else {
                        Laurent::zero()
                    }
                })
                .collect()
        })
        .collect();
    let mut cartan = vec![vec![Laurent::zero(); n]; n];
    for (a, row) in cartan.iter_mut().enumerate() {
        for (b, entry) in row.iter_mut().enumerate() {
            *entry = alg.graded_dimension(Some((&ws[a], &ws[b])))?;
        }
    }
    let mut dtd = vec![vec![Laurent::zero(); n]; n];
    for (a, row) in dtd.iter_mut().enumerate() {
        for (b, entry) in row.iter_mut().enumerate() {
            for dm in &d {
                *entry = &*entry + &(&dm[a] * &dm[b]);
            }
        }
    }
    let unitriangular = (0..n).all(|mu| {
        (0..n).all(|lam| {
            if mu == lam {
                d[mu][lam] == Laurent::one()
            } else {
                d[mu][lam].is_zero() || bruhat_leq(&ws[lam], &ws[mu]).unwrap_or(false)
            }
        })
    });
    Ok(DecompositionData {
        weights: ws.iter().map(|w| w.to_string()).collect(),
        d,
        cartan_equals_dt_d: cartan == dtd,
        cartan,
        unitriangular,
    })
}

/// Per-weight graded dimensions of `P`, `V`, `L`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct WeightModules {
    pub weight: String,
    pub projective: Laurent,
    pub standard: Laurent,
    pub irreducible: Laurent,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ModulesReport {
    pub algebra: String,
    pub modules: Vec<WeightModules>,
    pub decomposition: DecompositionData,
}

pub fn modules_report(alg: &ArcAlgebra) -> Result<ModulesReport> {
    let modules = alg
        .weights()
        .iter()
        .map(|w| {
            Ok(WeightModules {
                weight: w.to_string(),
                projective: projective(alg, w)?.graded_dimension(),
                standard: standard(alg, w)?.graded_dimension(),
                irreducible: irreducible(alg, w)?.graded_dimension(),
            })
        })
        .collect::<Result<_>>()?;
    Ok(ModulesReport {
        algebra: alg.kind().to_string(),
        modules,
        decomposition: decomposition_data(alg)?,
    })
}

/// Module numerology at one size. Action checks run on every module when
/// `check_actions` is set.
pub fn module_suite(alg: &ArcAlgebra, check_actions: bool) -> Result<Vec<Check>> {
    let ws = alg.weights();
    let mut regular = Check::new("⊕P(λ) = K");
    let mut owner = vec![0usize; alg.dim()];
    let mut total = Laurent::zero();
    let mut squares = Laurent::zero();
    let mut max_standard = Check::new("V(λ) = P(λ) for Bruhat-maximal λ");
    let mut actions = Check::new("module actions");
    for w in ws {
        let p = projective(alg, w)?;
        let v = standard(alg, w)?;
        for b in &p.basis {
            owner[alg.index_of(b).expect("basis diagram")] += 1;
        }
        total = &total + &p.graded_dimension();
        let vq = v.graded_dimension();
        squares = &squares + &(&vq * &vq);
        if ws.iter().all(|u| u == w || !bruhat_leq(w, u).unwrap_or(false)) {
            max_standard.record(p.dim() == v.dim(), || w.to_string());
        }
        if check_actions {
            for m in [p, v, irreducible(alg, w)?] {
                actions.absorb(m.check_action(alg));
            }
        }
    }
    let kq = alg.graded_dimension(None)?;
    regular.record(owner.iter().all(|&c| c == 1), || "basis not partitioned by cup weight".into());
    regular.record(total == kq, || format!("Σ dim_q P = {total}, dim_q K = {kq}"));
    let mut sq = Check::new("Σ (dim_q V(λ))² = dim_q K");
    sq.record(squares == kq, || format!("{squares} != {kq}"));
    let dd = decomposition_data(alg)?;
    let mut tri = Check::new("D unitriangular");
    tri.record(dd.unitriangular, || alg.kind().to_string());
    let mut cartan = Check::new("DᵀD = Cartan");
    cartan.record(dd.cartan_equals_dt_d, || alg.kind().to_string());
    let mut out = vec![regular, check_degree_zero_span(alg), sq, tri, cartan, max_standard];
    if check_actions {
        out.push(actions);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Weight {
        s.parse().unwrap()
    }

    #[test]
    fn k12_modules() {
        let k = ArcAlgebra::k(1, 2).unwrap();
        assert_eq!(projective(&k, &w("v^")).unwrap().dim(), 3);
        assert_eq!(projective(&k, &w("^v")).unwrap().dim(), 2);
        assert_eq!(standard(&k, &w("v^")).unwrap().dim(), 1);
        assert_eq!(standard(&k, &w("^v")).unwrap().dim(), 2);
        let top = k.index_of(&"v^:^v:v^".parse().unwrap()).unwrap();
        let l = irreducible(&k, &w("v^")).unwrap();
        assert!(l.act(0, top).is_empty());
        for c in module_suite(&k, true).unwrap() {
            assert!(c.pass(), "{c:?}");
        }
    }

    #[test]
    fn k12_decomposition() {
        let k = ArcAlgebra::k(1, 2).unwrap();
        let dd = decomposition_data(&k).unwrap();
        assert!(dd.unitriangular && dd.cartan_equals_dt_d);
        assert_eq!(dd.weights, vec!["v^", "^v"]);
        // μ = ∧∨ orients the cup of λ = ∨∧ clockwise.
        assert_eq!(dd.d[1][0], Laurent::monomial(1, 1));
        assert!(dd.d[0][1].is_zero());
    }

    #[test]
    fn module_suite_up_to_k24() {
        for (n, m) in [(0, 3), (1, 3), (2, 3), (2, 4)] {
            let k = ArcAlgebra::k(n, m).unwrap();
            for c in module_suite(&k, m <= 3).unwrap() {
                assert!(c.pass(), "K({n},{m}) {c:?}");
            }
        }
    }

    #[test]
    fn unknown_weight() {
        let k = ArcAlgebra::k(1, 2).unwrap();
        assert!(matches!(projective(&k, &w("vv")), Err(Error::InvalidParameters(_))));
    }
}
