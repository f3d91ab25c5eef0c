//! The graded algebras `H_{m,2m}`, `H_{n,m}` and `K_{n,m}`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, RwLock};

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::diagram::{orientations_of, OrientedCircleDiagram};
use crate::error::{Error, Result};
use crate::field::{parse_rational, rational_to_string};
use crate::poly::Laurent;
use crate::tqft::surgery_product;
use crate::weight::{c_map, cl, cl_inverse, e_map, enumerate_weights, is_compact, Weight};

/// Which algebra: `H(m) = H_{m,2m}`, `K(n,m)`, or the compact subalgebra `H_{n,m}` of `K(n,m)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum AlgebraKind {
    H { m: usize },
    K { n: usize, m: usize },
    Compact { n: usize, m: usize },
}

impl AlgebraKind {
    /// Number of `∨` labels in a weight.
    pub fn downs(&self) -> usize {
        match *self {
            AlgebraKind::H { m } => m,
            AlgebraKind::K { n, .. } | AlgebraKind::Compact { n, .. } => n,
        }
    }

    /// Length of a weight.
    pub fn points(&self) -> usize {
        match *self {
            AlgebraKind::H { m } => 2 * m,
            AlgebraKind::K { m, .. } | AlgebraKind::Compact { m, .. } => m,
        }
    }

    fn compact_only(&self) -> bool {
        !matches!(self, AlgebraKind::K { .. })
    }

    /// Products are computed by direct surgery (all-circle diagrams) rather than via `cl`.
    fn direct(&self) -> bool {
        self.compact_only() && self.points() == 2 * self.downs()
    }
}

impl fmt::Display for AlgebraKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            AlgebraKind::H { m } => write!(f, "H({m})"),
            AlgebraKind::K { n, m } => write!(f, "K({n},{m})"),
            AlgebraKind::Compact { n, m } => write!(f, "H({n},{m})"),
        }
    }
}

impl FromStr for AlgebraKind {
    type Err = Error;

    /// `H(2)`, `K(1,2)`, `H(1,3)`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("unknown algebra {s:?}"));
        let s = s.trim();
        let (head, rest) = s.split_at(1.min(s.len()));
        let inner = rest
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(bad)?;
        let nums: Vec<usize> = inner
            .split(',')
            .map(|x| x.trim().parse().map_err(|_| bad()))
            .collect::<Result<_>>()?;
        match (head, nums.as_slice()) {
            ("H", [m]) => Ok(AlgebraKind::H { m: *m }),
            ("H", [n, m]) => Ok(AlgebraKind::Compact { n: *n, m: *m }),
            ("K", [n, m]) => Ok(AlgebraKind::K { n: *n, m: *m }),
            _ => Err(bad()),
        }
    }
}

type Product = Arc<Vec<(usize, i64)>>;

/// An arc algebra with its diagram basis and a memoized product table.
pub struct ArcAlgebra {
    kind: AlgebraKind,
    weights: Vec<Weight>,
    weight_index: HashMap<Weight, usize>,
    basis: Vec<OrientedCircleDiagram>,
    index: HashMap<OrientedCircleDiagram, usize>,
    left: Vec<usize>,
    right: Vec<usize>,
    degree: Vec<usize>,
    blocks: HashMap<(usize, usize), Vec<usize>>,
    idempotents: Vec<usize>,
    cache: RwLock<HashMap<(usize, usize), Product>>,
}

impl fmt::Debug for ArcAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ArcAlgebra({}, dim {})", self.kind, self.dim())
    }
}

impl ArcAlgebra {
    pub fn new(kind: AlgebraKind) -> Result<Self> {
        let (n, m) = (kind.downs(), kind.points());
        if m > 32 {
            return Err(Error::InvalidParameters(format!("{kind} is too large")));
        }
        let mut weights = enumerate_weights(n, m)?;
        if kind.compact_only() {
            weights.retain(is_compact);
        }
        weights.sort();
        let weight_index: HashMap<Weight, usize> =
            weights.iter().enumerate().map(|(i, w)| (*w, i)).collect();
        let mut basis = Vec::new();
        let (mut left, mut right, mut degree) = (Vec::new(), Vec::new(), Vec::new());
        let mut blocks: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
        for (bi, b) in weights.iter().enumerate() {
            for (ai, a) in weights.iter().enumerate() {
                for mid in orientations_of(b, a)? {
                    let d = OrientedCircleDiagram { cup: *b, mid, cap: *a };
                    blocks.entry((bi, ai)).or_default().push(basis.len());
                    left.push(bi);
                    right.push(ai);
                    degree.push(d.degree());
                    basis.push(d);
                }
            }
        }
        let index: HashMap<OrientedCircleDiagram, usize> =
            basis.iter().enumerate().map(|(i, d)| (*d, i)).collect();
        let idempotents = weights
            .iter()
            .map(|w| index[&OrientedCircleDiagram::idempotent(*w)])
            .collect();
        Ok(ArcAlgebra {
            kind,
            weights,
            weight_index,
            basis,
            index,
            left,
            right,
            degree,
            blocks,
            idempotents,
            cache: RwLock::new(HashMap::new()),
        })
    }

    /// `H(m) = H_{m,2m}`.
    pub fn h(m: usize) -> Result<Self> {
        Self::new(AlgebraKind::H { m })
    }

    pub fn k(n: usize, m: usize) -> Result<Self> {
        if n > m {
            return Err(Error::InvalidParameters(format!("K({n},{m}) needs n <= m")));
        }
        Self::new(AlgebraKind::K { n, m })
    }

    /// The compact subalgebra `H_{n,m}` of `K(n,m)`.
    pub fn compact(n: usize, m: usize) -> Result<Self> {
        if n > m {
            return Err(Error::InvalidParameters(format!("H({n},{m}) needs n <= m")));
        }
        Self::new(AlgebraKind::Compact { n, m })
    }

    pub fn kind(&self) -> AlgebraKind {
        self.kind
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn weights(&self) -> &[Weight] {
        &self.weights
    }

    pub fn weight_index(&self, w: &Weight) -> Option<usize> {
        self.weight_index.get(w).copied()
    }

    pub fn basis(&self) -> &[OrientedCircleDiagram] {
        &self.basis
    }

    pub fn index_of(&self, d: &OrientedCircleDiagram) -> Option<usize> {
        self.index.get(d).copied()
    }

    /// Weight index of the cup weight, i.e. the idempotent acting as identity on the left.
    pub fn left_idempotent(&self, i: usize) -> usize {
        self.left[i]
    }

    /// Weight index of the cap weight.
    pub fn right_idempotent(&self, i: usize) -> usize {
        self.right[i]
    }

    pub fn degree(&self, i: usize) -> usize {
        self.degree[i]
    }

    /// Basis index of `e_λ` for the weight with index `w`.
    pub fn idempotent(&self, w: usize) -> usize {
        self.idempotents[w]
    }

    /// Basis indices of `e_b K e_a` (cup weight `b`, cap weight `a`), in basis order.
    pub fn block(&self, b: usize, a: usize) -> &[usize] {
        self.blocks.get(&(b, a)).map(|v| v.as_slice()).unwrap_or(&[])
    }

    /// Basis product `x_i · x_j` with integer coefficients.
    pub fn multiply_basis(&self, i: usize, j: usize) -> Product {
        if self.right[i] != self.left[j] {
            return Arc::new(Vec::new());
        }
        if let Some(p) = self.cache.read().expect("cache lock").get(&(i, j)) {
            return p.clone();
        }
        let p = Arc::new(
            self.multiply_basis_ordered(i, j, None)
                .expect("product of two basis diagrams"),
        );
        self.cache.write().expect("cache lock").insert((i, j), p.clone());
        p
    }

    /// As [`multiply_basis`](Self::multiply_basis) with the surgeries done in the given
    /// order (a permutation of the cups of the middle diagram, after lifting). Uncached.
    pub fn multiply_basis_ordered(&self, i: usize, j: usize, order: Option<&[usize]>) -> Result<Vec<(usize, i64)>> {
        let (x, y) = (&self.basis[i], &self.basis[j]);
        if x.cap != y.cup {
            return Ok(Vec::new());
        }
        let terms = if self.kind.direct() {
            surgery_product(x, y, order)?
        } else {
            let lx = lift(x)?;
            let ly = lift(y)?;
            let n = self.kind.downs();
            surgery_product(&lx, &ly, order)?
                .into_iter()
                .filter_map(|(d, c)| cl_inverse(&d.mid, n).map(|mid| (OrientedCircleDiagram { cup: x.cup, mid, cap: y.cap }, c)))
                .collect()
        };
        let mut out: Vec<(usize, i64)> = terms
            .into_iter()
            .map(|(d, c)| {
                self.index_of(&d)
                    .map(|k| (k, c))
                    .ok_or_else(|| Error::Convention(format!("product term {d} is not a basis diagram")))
            })
            .collect::<Result<_>>()?;
        out.sort_unstable();
        Ok(out)
    }

    /// Number of cups in the middle diagram that a product of `x_i` with something surgers.
    pub fn surgery_count(&self, i: usize) -> usize {
        let c = &self.basis[i].cap;
        if self.kind.direct() {
            c.downs()
        } else {
            c.len()
        }
    }

    pub fn element(&self, terms: impl IntoIterator<Item = (usize, BigRational)>) -> AlgebraElement {
        let mut e = AlgebraElement::zero(self.kind);
        for (i, c) in terms {
            e.add_term(self.basis[i], c);
        }
        e
    }

    pub fn basis_element(&self, i: usize) -> AlgebraElement {
        self.element([(i, BigRational::one())])
    }

    /// `Σ_λ e_λ`.
    pub fn unit(&self) -> AlgebraElement {
        self.element(self.idempotents.iter().map(|&i| (i, BigRational::one())))
    }

    fn check_owner(&self, x: &AlgebraElement) -> Result<()> {
        if x.kind != self.kind {
            return Err(Error::InvalidParameters(format!(
                "element of {} used in {}",
                x.kind, self.kind
            )));
        }
        Ok(())
    }

    /// Basis coordinates of an element.
    pub fn coordinates(&self, x: &AlgebraElement) -> Result<Vec<(usize, BigRational)>> {
        self.check_owner(x)?;
        x.terms
            .iter()
            .map(|(d, c)| {
                self.index_of(d)
                    .map(|i| (i, c.clone()))
                    .ok_or_else(|| Error::InvalidParameters(format!("{d} is not in {}", self.kind)))
            })
            .collect()
    }

    pub fn multiply(&self, x: &AlgebraElement, y: &AlgebraElement) -> Result<AlgebraElement> {
        let xs = self.coordinates(x)?;
        let ys = self.coordinates(y)?;
        let mut out = AlgebraElement::zero(self.kind);
        for (i, a) in &xs {
            for (j, b) in &ys {
                for &(k, c) in self.multiply_basis(*i, *j).iter() {
                    out.add_term(self.basis[k], a * b * BigRational::from_integer(c.into()));
                }
            }
        }
        Ok(out)
    }

    /// Poincaré polynomial of the whole algebra or of the block `e_b K e_a`.
    pub fn graded_dimension(&self, block: Option<(&Weight, &Weight)>) -> Result<Laurent> {
        let idx: Vec<usize> = match block {
            None => (0..self.dim()).collect(),
            Some((b, a)) => {
                let (bi, ai) = (self.weight_index(b), self.weight_index(a));
                match (bi, ai) {
                    (Some(bi), Some(ai)) => self.block(bi, ai).to_vec(),
                    _ => {
                        return Err(Error::InvalidParameters(format!(
                            "{b} or {a} is not a weight of {}",
                            self.kind
                        )))
                    }
                }
            }
        };
        Ok(idx.iter().map(|&i| (self.degree[i] as i64, 1)).collect())
    }

    /// The anti-automorphism `b λ a ↦ a λ b`.
    pub fn opposite_iso(&self, x: &AlgebraElement) -> Result<AlgebraElement> {
        self.check_owner(x)?;
        Ok(x.map_diagrams(self.kind, |d| d.reflect()))
    }

    /// Rotation by π, `K(n,m) → K(m−n,m)`; anti-multiplicative.
    pub fn pd_iso(&self, x: &AlgebraElement) -> Result<AlgebraElement> {
        self.check_owner(x)?;
        let AlgebraKind::K { n, m } = self.kind else {
            return Err(Error::InvalidParameters("pd_iso is defined on K(n,m)".into()));
        };
        Ok(x.map_diagrams(AlgebraKind::K { n: m - n, m }, |d| d.rotate_pd()))
    }

    /// Whether every term of `x ∈ H(m')` has its middle weight in the given ideal.
    pub fn ideal_membership(&self, x: &AlgebraElement, which: Ideal) -> Result<bool> {
        self.check_owner(x)?;
        let AlgebraKind::H { m } = self.kind else {
            return Err(Error::InvalidParameters("ideals live in H(m)".into()));
        };
        if which.big_m() != m {
            return Err(Error::InvalidParameters(format!("{which:?} is an ideal of H({})", which.big_m())));
        }
        Ok(x.terms.keys().all(|d| which.contains(&d.mid)))
    }
}

/// `cl` on a diagram: `cl(b) cl(λ) cl(a)` in `H_{m,2m}`.
pub fn lift(d: &OrientedCircleDiagram) -> Result<OrientedCircleDiagram> {
    Ok(OrientedCircleDiagram {
        cup: cl(&d.cup)?,
        mid: cl(&d.mid)?,
        cap: cl(&d.cap)?,
    })
}

/// Ideals of `H_{m,2m}` cut out by conditions on middle weights.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Ideal {
    /// `{1..m−n} ⊄ λ⁻¹(∨)`.
    I1 { n: usize, m: usize },
    /// `{2m−n+1..2m} ⊄ λ⁻¹(∧)`.
    I2 { n: usize, m: usize },
    /// `I1 + I2`: middle weight outside `cl(Λ_{n,m})`.
    ILambda { n: usize, m: usize },
}

impl Ideal {
    fn big_m(&self) -> usize {
        match *self {
            Ideal::I1 { m, .. } | Ideal::I2 { m, .. } | Ideal::ILambda { m, .. } => m,
        }
    }

    pub fn contains(&self, lambda: &Weight) -> bool {
        match *self {
            Ideal::I1 { n, m } => !(1..=m - n).all(|a| lambda.is_down(a)),
            Ideal::I2 { n, m } => !(2 * m - n + 1..=2 * m).all(|a| !lambda.is_down(a)),
            Ideal::ILambda { n, m } => {
                Ideal::I1 { n, m }.contains(lambda) || Ideal::I2 { n, m }.contains(lambda)
            }
        }
    }
}

/// A linear combination of basis diagrams with rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraElement {
    kind: AlgebraKind,
    terms: BTreeMap<OrientedCircleDiagram, BigRational>,
}

impl AlgebraElement {
    pub fn zero(kind: AlgebraKind) -> Self {
        AlgebraElement { kind, terms: BTreeMap::new() }
    }

    pub fn kind(&self) -> AlgebraKind {
        self.kind
    }

    pub fn add_term(&mut self, d: OrientedCircleDiagram, c: BigRational) {
        let e = self.terms.entry(d).or_insert_with(BigRational::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&d);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&OrientedCircleDiagram, &BigRational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }

    pub fn coefficient(&self, d: &OrientedCircleDiagram) -> BigRational {
        self.terms.get(d).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn add(&self, other: &AlgebraElement) -> AlgebraElement {
        let mut out = self.clone();
        for (d, c) in &other.terms {
            out.add_term(*d, c.clone());
        }
        out
    }

    pub fn scale(&self, s: &BigRational) -> AlgebraElement {
        let mut out = AlgebraElement::zero(self.kind);
        for (d, c) in &self.terms {
            out.add_term(*d, c * s);
        }
        out
    }

    /// Degrees occurring in the element.
    pub fn degrees(&self) -> Vec<usize> {
        let mut d: Vec<usize> = self.terms.keys().map(|d| d.degree()).collect();
        d.sort_unstable();
        d.dedup();
        d
    }

    fn map_diagrams(&self, kind: AlgebraKind, f: impl Fn(&OrientedCircleDiagram) -> OrientedCircleDiagram) -> Self {
        let mut out = AlgebraElement::zero(kind);
        for (d, c) in &self.terms {
            out.add_term(f(d), c.clone());
        }
        out
    }

    /// `[(coefficient, "cup:mid:cap")]`.
    pub fn to_pairs(&self) -> Vec<(String, String)> {
        self.terms
            .iter()
            .map(|(d, c)| (rational_to_string(c), d.to_string()))
            .collect()
    }

    pub fn from_pairs(algebra: &ArcAlgebra, pairs: &[(String, String)]) -> Result<Self> {
        let mut out = AlgebraElement::zero(algebra.kind);
        for (c, d) in pairs {
            let d: OrientedCircleDiagram = d.parse()?;
            if algebra.index_of(&d).is_none() {
                return Err(Error::InvalidParameters(format!("{d} is not in {}", algebra.kind)));
            }
            out.add_term(d, parse_rational(c)?);
        }
        Ok(out)
    }
}

impl fmt::Display for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(d, c)| format!("{}·[{d}]", rational_to_string(c)))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Which quotient isomorphism to check.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum QuotientMap {
    /// `c: H_{n,m} → H_{m−n,2(m−n)}/I`, for `2n ≤ m`.
    Bc { n: usize, m: usize },
    /// `e: K_{n,m} → H_{n,m+n}/J`.
    Be { n: usize, m: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IsoReport {
    pub map: QuotientMap,
    pub pass: bool,
    pub source_dim: usize,
    pub quotient_dim: usize,
    pub pairs_checked: usize,
    pub counterexample: Option<String>,
}

/// Checks a quotient isomorphism exhaustively: degree-preserving bijection onto the
/// quotient basis, and multiplicativity modulo the ideal on all basis pairs.
pub fn verify_quotient_iso(which: QuotientMap) -> Result<IsoReport> {
    let (source, target, in_ideal, map): (ArcAlgebra, ArcAlgebra, Box<dyn Fn(&Weight) -> bool>, fn(&Weight) -> Result<Weight>) =
        match which {
            QuotientMap::Bc { n, m } => {
                if n > m {
                    return Err(Error::InvalidParameters("bc needs n <= m".into()));
                }
                if 2 * n > m {
                    // H_{n,m} = 0 and the ideal is everything.
                    let source = ArcAlgebra::compact(n, m)?;
                    return Ok(IsoReport {
                        map: which,
                        pass: source.dim() == 0,
                        source_dim: source.dim(),
                        quotient_dim: 0,
                        pairs_checked: 0,
                        counterexample: None,
                    });
                }
                let k = m - 2 * n;
                (
                    ArcAlgebra::compact(n, m)?,
                    ArcAlgebra::h(m - n)?,
                    Box::new(move |l: &Weight| !(1..=k).all(|a| l.is_down(a))),
                    c_map,
                )
            }
            QuotientMap::Be { n, m } => {
                if n > m {
                    return Err(Error::InvalidParameters("be needs n <= m".into()));
                }
                (
                    ArcAlgebra::k(n, m)?,
                    ArcAlgebra::compact(n, m + n)?,
                    Box::new(move |l: &Weight| !(m + 1..=m + n).all(|a| !l.is_down(a))),
                    e_map,
                )
            }
        };
    let mut report = IsoReport {
        map: which,
        pass: true,
        source_dim: source.dim(),
        quotient_dim: target.basis().iter().filter(|d| !in_ideal(&d.mid)).count(),
        pairs_checked: 0,
        counterexample: None,
    };
    let fail = |r: &mut IsoReport, msg: String| {
        if r.counterexample.is_none() {
            r.counterexample = Some(msg);
        }
        r.pass = false;
    };
    let mut image = vec![usize::MAX; source.dim()];
    let mut hit = vec![false; target.dim()];
    for (i, d) in source.basis().iter().enumerate() {
        let md = OrientedCircleDiagram {
            cup: map(&d.cup)?,
            mid: map(&d.mid)?,
            cap: map(&d.cap)?,
        };
        match target.index_of(&md) {
            Some(t) if !in_ideal(&md.mid) && md.degree() == d.degree() && !hit[t] => {
                hit[t] = true;
                image[i] = t;
            }
            _ => fail(&mut report, format!("{d} maps to {md}, not a fresh quotient basis vector of the same degree")),
        }
    }
    if report.quotient_dim != source.dim() {
        let msg = format!("quotient has dimension {} but source has {}", report.quotient_dim, source.dim());
        fail(&mut report, msg);
    }
    if !report.pass {
        return Ok(report);
    }
    let back: HashMap<usize, usize> = image.iter().enumerate().map(|(i, &t)| (t, i)).collect();
    for i in 0..source.dim() {
        for j in 0..source.dim() {
            report.pairs_checked += 1;
            let lhs: Vec<(usize, i64)> = source.multiply_basis(i, j).to_vec();
            let mut rhs: Vec<(usize, i64)> = Vec::new();
            let mut ok = true;
            for &(t, c) in target.multiply_basis(image[i], image[j]).iter() {
                if in_ideal(&target.basis()[t].mid) {
                    continue;
                }
                match back.get(&t) {
                    Some(&s) => rhs.push((s, c)),
                    None => ok = false,
                }
            }
            rhs.sort_unstable();
            if !ok || lhs != rhs {
                fail(
                    &mut report,
                    format!("product of {} and {} not preserved", source.basis()[i], source.basis()[j]),
                );
                return Ok(report);
            }
        }
    }
    Ok(report)
}

/// `cl(x)·cl(y) ≡ cl(xy)` modulo `I_Λ` for all basis pairs of `K(n,m)`, computed in an
/// explicit `H(m)`. Returns the first failing pair.
pub fn verify_cl_multiplicative(n: usize, m: usize) -> Result<Option<String>> {
    let k = ArcAlgebra::k(n, m)?;
    let h = ArcAlgebra::h(m)?;
    let ideal = Ideal::ILambda { n, m };
    let lifted: Vec<usize> = k
        .basis()
        .iter()
        .map(|d| {
            let l = lift(d)?;
            h.index_of(&l)
                .ok_or_else(|| Error::Convention(format!("cl({d}) is not in H({m})")))
        })
        .collect::<Result<_>>()?;
    for i in 0..k.dim() {
        for j in 0..k.dim() {
            let mut lhs: Vec<(usize, i64)> = k
                .multiply_basis(i, j)
                .iter()
                .map(|&(t, c)| (lifted[t], c))
                .collect();
            lhs.sort_unstable();
            let rhs: Vec<(usize, i64)> = h
                .multiply_basis(lifted[i], lifted[j])
                .iter()
                .filter(|(t, _)| !ideal.contains(&h.basis()[*t].mid))
                .copied()
                .collect();
            if lhs != rhs {
                return Ok(Some(format!("{} · {}", k.basis()[i], k.basis()[j])));
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Weight {
        s.parse().unwrap()
    }

    fn d(s: &str) -> OrientedCircleDiagram {
        s.parse().unwrap()
    }

    #[test]
    fn dimensions() {
        let k12 = ArcAlgebra::k(1, 2).unwrap();
        assert_eq!(k12.dim(), 5);
        assert_eq!(
            k12.graded_dimension(None).unwrap(),
            Laurent::from_iter([(0, 2), (1, 2), (2, 1)])
        );
        assert_eq!(ArcAlgebra::h(2).unwrap().dim(), 12);
        assert_eq!(ArcAlgebra::k(0, 3).unwrap().dim(), 1);
        assert_eq!(ArcAlgebra::k(1, 3).unwrap().dim(), 9);
    }

    #[test]
    fn k12_generators() {
        let k = ArcAlgebra::k(1, 2).unwrap();
        // Degree-one generators between the two weights.
        let a = k.index_of(&d("v^:^v:^v")).unwrap();
        let b = k.index_of(&d("^v:^v:v^")).unwrap();
        assert_eq!(k.degree(a), 1);
        assert_eq!(k.degree(b), 1);
        let top = k.index_of(&d("v^:^v:v^")).unwrap();
        assert_eq!(k.degree(top), 2);
        assert_eq!(*k.multiply_basis(a, b), vec![(top, 1)]);
        assert!(k.multiply_basis(b, a).is_empty());
    }

    #[test]
    fn direct_and_lifted_products_agree_on_compact_diagrams() {
        let h = ArcAlgebra::h(2).unwrap();
        let k = ArcAlgebra::k(2, 4).unwrap();
        for i in 0..h.dim() {
            for j in 0..h.dim() {
                let direct: Vec<(OrientedCircleDiagram, i64)> =
                    h.multiply_basis(i, j).iter().map(|&(t, c)| (h.basis()[t], c)).collect();
                let (ki, kj) = (k.index_of(&h.basis()[i]).unwrap(), k.index_of(&h.basis()[j]).unwrap());
                let mut lifted: Vec<(OrientedCircleDiagram, i64)> =
                    k.multiply_basis(ki, kj).iter().map(|&(t, c)| (k.basis()[t], c)).collect();
                lifted.sort();
                let mut direct = direct;
                direct.sort();
                assert_eq!(direct, lifted);
            }
        }
    }

    #[test]
    fn kind_parsing() {
        assert_eq!("K(1,2)".parse::<AlgebraKind>().unwrap(), AlgebraKind::K { n: 1, m: 2 });
        assert_eq!("H(2)".parse::<AlgebraKind>().unwrap(), AlgebraKind::H { m: 2 });
        assert_eq!("H(1,3)".parse::<AlgebraKind>().unwrap(), AlgebraKind::Compact { n: 1, m: 3 });
        assert!("Q(1)".parse::<AlgebraKind>().is_err());
    }

    #[test]
    fn element_round_trip() {
        let k = ArcAlgebra::k(1, 2).unwrap();
        let x = k.unit();
        let pairs = x.to_pairs();
        assert_eq!(AlgebraElement::from_pairs(&k, &pairs).unwrap(), x);
        assert_eq!(k.multiply(&x, &x).unwrap(), x);
    }

    #[test]
    fn ideal_examples() {
        let h = ArcAlgebra::h(2).unwrap();
        let ideal = Ideal::ILambda { n: 1, m: 2 };
        for lam in enumerate_weights(1, 2).unwrap() {
            let e = OrientedCircleDiagram::idempotent(cl(&lam).unwrap());
            let x = h.basis_element(h.index_of(&e).unwrap());
            assert!(!h.ideal_membership(&x, ideal).unwrap());
        }
        for (i, bd) in h.basis().iter().enumerate() {
            if bd.mid == w("^vv^") {
                assert!(h.ideal_membership(&h.basis_element(i), ideal).unwrap());
            }
        }
    }

    #[test]
    fn quotient_isos_small() {
        for q in [QuotientMap::Be { n: 1, m: 2 }, QuotientMap::Bc { n: 1, m: 3 }, QuotientMap::Bc { n: 2, m: 3 }] {
            let r = verify_quotient_iso(q).unwrap();
            assert!(r.pass, "{r:?}");
        }
        assert_eq!(verify_quotient_iso(QuotientMap::Be { n: 1, m: 2 }).unwrap().source_dim, 5);
    }
}
