//! Braid words, tangle bimodules over `K(j,n)`, and annular Khovanov homology as
//! Hochschild homology of the braid's bimodule complex.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::algebra::{lift, ArcAlgebra, AlgebraKind};
use crate::bimodule::{tensor_map, tensor_over, Bimodule, BimoduleMap, Tensor};
use crate::diagram::{cup_diagram, OrientedCircleDiagram};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::hh::{global_dimension, relative_bar_hochschild, BimoduleComplex, HHReport, Term};
use crate::linalg::{normalize, SparseMatrix, SparseVec};
use crate::structure::Check;
use crate::tqft::{diagram_piece, orientation_mask, piece_labels, saddle, stack_and_contract, FlatTangle, Piece};
use crate::weight::{binomial, cl, cl_inverse};

/// A word in the braid group `Br_n`: `±i` is `σ_i^{±1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BraidWord {
    strands: usize,
    letters: Vec<i64>,
}

impl BraidWord {
    pub fn new(strands: usize, letters: Vec<i64>) -> Result<Self> {
        if strands == 0 {
            return Err(Error::InvalidParameters("a braid needs at least one strand".into()));
        }
        for &l in &letters {
            if l == 0 || l.unsigned_abs() as usize >= strands {
                return Err(Error::InvalidParameters(format!("letter {l} is out of range for Br_{strands}")));
            }
        }
        Ok(BraidWord { strands, letters })
    }

    /// Whitespace-separated signed integers, e.g. `"1 1 -2"`.
    pub fn parse(strands: usize, s: &str) -> Result<Self> {
        let letters = s
            .split_whitespace()
            .map(|t| t.parse::<i64>().map_err(|_| Error::Parse(format!("bad braid letter {t:?}"))))
            .collect::<Result<_>>()?;
        Self::new(strands, letters)
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[i64] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn positive(&self) -> usize {
        self.letters.iter().filter(|&&l| l > 0).count()
    }

    pub fn negative(&self) -> usize {
        self.letters.iter().filter(|&&l| l < 0).count()
    }

    pub fn writhe(&self) -> i64 {
        self.positive() as i64 - self.negative() as i64
    }

    /// All crossings switched.
    pub fn mirror(&self) -> Self {
        BraidWord { strands: self.strands, letters: self.letters.iter().map(|l| -l).collect() }
    }

    /// `σ β σ^{-1}` for the letter `σ = s`.
    pub fn conjugate(&self, s: i64) -> Result<Self> {
        let mut letters = vec![s];
        letters.extend(&self.letters);
        letters.push(-s);
        Self::new(self.strands, letters)
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let w: Vec<String> = self.letters.iter().map(|l| l.to_string()).collect();
        write!(f, "{}", w.join(" "))
    }
}

/// A flat letter: the identity or `U_i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Letter {
    Id,
    U(usize),
}

/// Resolution of crossing `l` at cube coordinate `bit`.
fn resolve(l: i64, bit: u8) -> Letter {
    let i = l.unsigned_abs() as usize;
    match (l > 0, bit) {
        (true, 0) | (false, 1) => Letter::Id,
        _ => Letter::U(i),
    }
}

fn sector(alg: &ArcAlgebra) -> Result<(usize, usize)> {
    match alg.kind() {
        AlgebraKind::K { n, m } => Ok((n, m)),
        k => Err(Error::InvalidParameters(format!("tangle bimodules live over K(j,n), not {k}"))),
    }
}

/// `B(T)` over `K(j,n)` for a flat letter `T`.
///
/// Built over `H(n)` on the pieces `cl(b)̲ T cl(a)̄`, with `T` placed on the middle
/// `n` of `2n` points, and cut down to the orientations whose weights on both
/// boundary rows of `T` lie in `cl(Λ_{j,n})`. Products and saddles are computed in
/// `H(n)` and projected.
#[derive(Clone, Debug)]
pub struct TangleBimodule<F: Field> {
    pub letter: Letter,
    pub module: Bimodule<F>,
    tangle: FlatTangle,
    pieces: HashMap<(usize, usize), Piece>,
    hbasis: Vec<(usize, usize, u64)>,
    hindex: HashMap<(usize, usize, u64), usize>,
    quotient: Vec<usize>,
    position: Vec<Option<usize>>,
}

impl<F: Field> TangleBimodule<F> {
    pub fn new(alg: &ArcAlgebra, field: &F, letter: Letter) -> Result<Self> {
        let (j, n) = sector(alg)?;
        let tangle = match letter {
            Letter::Id => FlatTangle::identity(2 * n),
            Letter::U(i) if (1..n).contains(&i) => FlatTangle::cup_cap(2 * n, n - j + i)?,
            Letter::U(i) => return Err(Error::InvalidParameters(format!("U_{i} needs 1 <= i < {n}"))),
        };
        let cls: Vec<_> = alg.weights().iter().map(cl).collect::<Result<_>>()?;
        let nw = cls.len();
        let mut pieces = HashMap::new();
        let mut hbasis = Vec::new();
        let mut quotient = Vec::new();
        for b in 0..nw {
            for a in 0..nw {
                let p = Piece::new(cup_diagram(&cls[b]).arcs, tangle.clone(), cup_diagram(&cls[a]).arcs)?;
                for mask in 0..1u64 << p.circles() {
                    let (lo, hi) = piece_labels(&p, mask)?;
                    if cl_inverse(&lo, j).is_some() && cl_inverse(&hi, j).is_some() {
                        quotient.push(hbasis.len());
                    }
                    hbasis.push((b, a, mask));
                }
                pieces.insert((b, a), p);
            }
        }
        let hindex = hbasis.iter().enumerate().map(|(i, &k)| (k, i)).collect();
        let mut position = vec![None; hbasis.len()];
        for (q, &h) in quotient.iter().enumerate() {
            position[h] = Some(q);
        }
        let mut tb = TangleBimodule {
            letter,
            module: Bimodule::zero(alg, ""),
            tangle,
            pieces,
            hbasis,
            hindex,
            quotient,
            position,
        };

        let lifts: Vec<OrientedCircleDiagram> = alg.basis().iter().map(lift).collect::<Result<_>>()?;
        let degrees = tb
            .quotient
            .iter()
            .map(|&h| {
                let (b, a, mask) = tb.hbasis[h];
                tb.pieces[&(b, a)].degree(mask)
            })
            .collect();
        let labels = tb
            .quotient
            .iter()
            .map(|&h| {
                let (b, a, mask) = tb.hbasis[h];
                format!("{}|{}|{mask:b}", alg.weights()[b], alg.weights()[a])
            })
            .collect();
        let name = match letter {
            Letter::Id => format!("B(id)_{}", alg.kind()),
            Letter::U(i) => format!("B(U{i})_{}", alg.kind()),
        };
        let module = {
            let tb = &tb;
            let lifts = &lifts;
            Bimodule::from_actions(
                alg,
                name,
                tb.quotient.iter().map(|&h| tb.hbasis[h].0).collect(),
                tb.quotient.iter().map(|&h| tb.hbasis[h].1).collect(),
                Some(degrees),
                labels,
                |x, q| {
                    let v = tb.h_left(field, alg.left_idempotent(x), &lifts[x], tb.quotient[q]).expect("stackable");
                    tb.coords(v)
                },
                |q, x| {
                    let v = tb.h_right(field, tb.quotient[q], &lifts[x], alg.right_idempotent(x)).expect("stackable");
                    tb.coords(v)
                },
            )
        };
        tb.module = module;
        Ok(tb)
    }

    /// `d · m_h` on the `H`-level basis, where `d` is an all-circle diagram whose cup
    /// weight is `cl` of weight `xb`.
    fn h_left(&self, field: &F, xb: usize, d: &OrientedCircleDiagram, h: usize) -> Result<SparseVec<F::Elem>> {
        let (b, a, mask) = self.hbasis[h];
        let lower = diagram_piece(&d.cup, &d.cap)?;
        let lmask = orientation_mask(&d.cup, &d.mid, &d.cap)?;
        let (_, terms) = stack_and_contract(&lower, lmask, &self.pieces[&(b, a)], mask, None)?;
        Ok(self.collect(field, xb, a, terms))
    }

    /// `m_h · d`, where `d` has cap weight `cl` of weight `ya`.
    fn h_right(&self, field: &F, h: usize, d: &OrientedCircleDiagram, ya: usize) -> Result<SparseVec<F::Elem>> {
        let (b, a, mask) = self.hbasis[h];
        let upper = diagram_piece(&d.cup, &d.cap)?;
        let umask = orientation_mask(&d.cup, &d.mid, &d.cap)?;
        let (_, terms) = stack_and_contract(&self.pieces[&(b, a)], mask, &upper, umask, None)?;
        Ok(self.collect(field, b, ya, terms))
    }

    fn collect(&self, field: &F, b: usize, a: usize, terms: Vec<(u64, i64)>) -> SparseVec<F::Elem> {
        normalize(
            field,
            terms
                .into_iter()
                .map(|(m, c)| (self.hindex[&(b, a, m)], field.from_i64(c)))
                .collect(),
        )
    }

    fn coords(&self, v: SparseVec<F::Elem>) -> SparseVec<F::Elem> {
        v.into_iter().filter_map(|(h, c)| self.position[h].map(|q| (q, c))).collect()
    }

    /// The discarded orientations span a sub-bimodule: acting on one never produces a
    /// kept orientation.
    pub fn check_projection(&self, alg: &ArcAlgebra, field: &F) -> Result<Check> {
        let mut c = Check::new(format!("{} projection", self.module.name));
        let lifts: Vec<OrientedCircleDiagram> = alg.basis().iter().map(lift).collect::<Result<_>>()?;
        for h in 0..self.hbasis.len() {
            if self.position[h].is_some() {
                continue;
            }
            let (b, a, _) = self.hbasis[h];
            for x in 0..alg.dim() {
                if alg.right_idempotent(x) == b {
                    let v = self.h_left(field, alg.left_idempotent(x), &lifts[x], h)?;
                    c.record(self.coords(v).is_empty(), || format!("{} · {:?}", alg.basis()[x], self.hbasis[h]));
                }
                if alg.left_idempotent(x) == a {
                    let v = self.h_right(field, h, &lifts[x], alg.right_idempotent(x))?;
                    c.record(self.coords(v).is_empty(), || format!("{:?} · {}", self.hbasis[h], alg.basis()[x]));
                }
            }
        }
        Ok(c)
    }

    pub fn dim(&self) -> usize {
        self.module.dim()
    }

    /// The saddle `B(self) → B(other)` between `id` and `U_i`, in either direction.
    pub fn saddle_to(&self, other: &TangleBimodule<F>, field: &F, strands: usize, sector: usize) -> Result<BimoduleMap<F>> {
        let i = match (self.letter, other.letter) {
            (Letter::Id, Letter::U(i)) | (Letter::U(i), Letter::Id) => i,
            _ => return Err(Error::InvalidParameters("a saddle joins id and U_i".into())),
        };
        let pos = strands - sector + i;
        let columns = self
            .quotient
            .iter()
            .map(|&h| {
                let (b, a, mask) = self.hbasis[h];
                let (target, terms) = saddle(&self.pieces[&(b, a)], mask, pos)?;
                debug_assert_eq!(target.tangle, other.tangle);
                Ok(other.coords(other.collect(field, b, a, terms)))
            })
            .collect::<Result<_>>()?;
        Ok(SparseMatrix { nrows: other.dim(), ncols: self.dim(), columns })
    }

    /// For `B(id)`: whether the basis matching `x ↦ (cl b, cl a, orientation of lift x)`
    /// identifies the action tables with those of the diagonal bimodule.
    pub fn check_diagonal(&self, alg: &ArcAlgebra, field: &F) -> Result<Check> {
        let mut c = Check::new(format!("B(id) ≅ Δ over {}", alg.kind()));
        if self.letter != Letter::Id {
            return Err(Error::InvalidParameters("only B(id) is compared with Δ".into()));
        }
        let delta = Bimodule::diagonal(alg, field);
        let mut phi = Vec::with_capacity(alg.dim());
        for (x, d) in alg.basis().iter().enumerate() {
            let l = lift(d)?;
            let mask = orientation_mask(&l.cup, &l.mid, &l.cap)?;
            let key = (alg.left_idempotent(x), alg.right_idempotent(x), mask);
            phi.push(self.hindex.get(&key).and_then(|&h| self.position[h]));
        }
        let bijective = self.dim() == alg.dim() && {
            let mut seen = vec![false; self.dim()];
            phi.iter().all(|p| matches!(p, Some(q) if !std::mem::replace(&mut seen[*q], true)))
        };
        c.record(bijective, || format!("dim B(id) = {}, dim K = {}", self.dim(), alg.dim()));
        if !bijective {
            return Ok(c);
        }
        let phi: Vec<usize> = phi.into_iter().map(|p| p.expect("bijective")).collect();
        let map = |v: &SparseVec<F::Elem>| normalize(field, v.iter().map(|(i, x)| (phi[*i], x.clone())).collect());
        for x in 0..alg.dim() {
            for i in 0..alg.dim() {
                c.record(*self.module.left_act(x, phi[i]) == map(delta.left_act(x, i)), || {
                    format!("left action of {} on {}", alg.basis()[x], alg.basis()[i])
                });
                c.record(*self.module.right_act(phi[i], x) == map(delta.right_act(i, x)), || {
                    format!("right action of {} on {}", alg.basis()[x], alg.basis()[i])
                });
            }
        }
        let degrees_match = self.module.degrees.as_ref().is_some_and(|d| (0..alg.dim()).all(|i| d[phi[i]] == alg.degree(i) as i64));
        c.record(degrees_match, || "degrees differ".into());
        Ok(c)
    }
}

/// A cube vertex module: `B(T_1) ⊗ … ⊗ B(T_k)` nested to the left.
enum Node<F: Field> {
    Letter(Letter),
    Tensor(Tensor<F>),
}

/// The bimodule complex of a braid in one sector, with its cube data.
pub struct BraidComplex<F: Field> {
    pub word: BraidWord,
    pub sector: usize,
    pub complex: BimoduleComplex<F>,
}

struct CubeBuilder<'a, F: Field> {
    alg: &'a ArcAlgebra,
    field: &'a F,
    word: &'a BraidWord,
    sector: usize,
    letters: HashMap<Letter, TangleBimodule<F>>,
    nodes: HashMap<Vec<u8>, Arc<Node<F>>>,
}

impl<F: Field> CubeBuilder<'_, F> {
    fn letter(&mut self, l: Letter) -> Result<&TangleBimodule<F>> {
        if !self.letters.contains_key(&l) {
            let tb = TangleBimodule::new(self.alg, self.field, l)?;
            self.letters.insert(l, tb);
        }
        Ok(&self.letters[&l])
    }

    fn node(&mut self, state: &[u8]) -> Result<Arc<Node<F>>> {
        if let Some(n) = self.nodes.get(state) {
            return Ok(n.clone());
        }
        let k = state.len();
        let last = resolve(self.word.letters()[k - 1], state[k - 1]);
        self.letter(last)?;
        let node = if k == 1 {
            Node::Letter(last)
        } else {
            let prev = self.node(&state[..k - 1])?;
            let left = self.module_of(&prev);
            Node::Tensor(tensor_over(self.alg, self.field, left, &self.letters[&last].module)?)
        };
        let node = Arc::new(node);
        self.nodes.insert(state.to_vec(), node.clone());
        Ok(node)
    }

    fn module_of<'b>(&'b self, node: &'b Node<F>) -> &'b Bimodule<F> {
        match node {
            Node::Letter(l) => &self.letters[l].module,
            Node::Tensor(t) => &t.module,
        }
    }

    fn saddle(&mut self, t: usize) -> Result<BimoduleMap<F>> {
        let l = self.word.letters()[t];
        let (s, d) = (resolve(l, 0), resolve(l, 1));
        self.letter(s)?;
        self.letter(d)?;
        self.letters[&s].saddle_to(&self.letters[&d], self.field, self.word.strands(), self.sector)
    }

    /// The map on the prefix `state` flipping coordinate `t` from 0 to 1.
    fn edge(&mut self, state: &[u8], t: usize) -> Result<BimoduleMap<F>> {
        let k = state.len();
        if k == 1 {
            return self.saddle(t);
        }
        let mut target = state.to_vec();
        target[t] = 1;
        let (f, g) = if t == k - 1 {
            let prev = self.node(&state[..k - 1])?;
            let id = self.module_of(&prev).identity_map(self.field);
            (id, self.saddle(t)?)
        } else {
            let last = resolve(self.word.letters()[k - 1], state[k - 1]);
            let field = self.field;
            let id = self.letter(last)?.module.identity_map(field);
            (self.edge(&state[..k - 1], t)?, id)
        };
        let (src, dst) = (self.node(state)?, self.node(&target)?);
        match (&*src, &*dst) {
            (Node::Tensor(a), Node::Tensor(b)) => Ok(tensor_map(self.field, a, b, &f, &g)),
            _ => Err(Error::Convention("prefix of length > 1 is not a tensor".into())),
        }
    }
}

/// The complex `⊗_K` of per-crossing complexes `[B(id) → B(U_i)]` (positive crossing,
/// `B(id)` in degree 0) and `[B(U_i) → B(id)]` (negative, `B(U_i)` in degree −1).
///
/// Vertex `v` of the cube sits in cohomological degree `|v| − n₋` with internal shift
/// `−|v|`; the edge flipping coordinate `t` carries the sign `(−1)^{#1s before t}`.
pub fn braid_bimodule_complex<F: Field>(alg: &ArcAlgebra, field: &F, word: &BraidWord) -> Result<BraidComplex<F>> {
    let (j, n) = sector(alg)?;
    if n != word.strands() {
        return Err(Error::InvalidParameters(format!("a braid on {} strands acts over K(j,{})", word.strands(), word.strands())));
    }
    if word.is_empty() {
        return Ok(BraidComplex { word: word.clone(), sector: j, complex: BimoduleComplex::single(Bimodule::diagonal(alg, field)) });
    }
    let l = word.len();
    let mut cube = CubeBuilder { alg, field, word, sector: j, letters: HashMap::new(), nodes: HashMap::new() };
    let states: Vec<Vec<u8>> = (0..1u32 << l).map(|v| (0..l).map(|t| (v >> t & 1) as u8).collect()).collect();
    let mut terms = Vec::with_capacity(states.len());
    let mut index = HashMap::new();
    for s in &states {
        let ones = s.iter().filter(|&&b| b == 1).count() as i64;
        let node = cube.node(s)?;
        let module = cube.module_of(&node).clone();
        index.insert(s.clone(), terms.len());
        terms.push(Term { k: ones - word.negative() as i64, shift: -ones, module });
    }
    let mut maps = Vec::new();
    for s in &states {
        for t in 0..l {
            if s[t] == 1 {
                continue;
            }
            let mut f = cube.edge(s, t)?;
            if s[..t].iter().filter(|&&b| b == 1).count() % 2 == 1 {
                for col in &mut f.columns {
                    for (_, x) in col.iter_mut() {
                        *x = field.neg(x);
                    }
                }
            }
            let mut d = s.clone();
            d[t] = 1;
            maps.push((index[s], index[&d], f));
        }
    }
    let complex = BimoduleComplex { terms, maps };
    complex
        .validate(field)
        .map_err(|e| Error::Convention(format!("braid complex for {word} in sector {j}: {e}")))?;
    Ok(BraidComplex { word: word.clone(), sector: j, complex })
}

/// HH ranks of one sector.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SectorReport {
    pub sector: usize,
    pub ranks: BTreeMap<i64, usize>,
    pub total: usize,
    pub certified: (i64, i64),
    pub complete: bool,
    pub global_dimension: usize,
    pub bar_depth: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AkhReport {
    pub strands: usize,
    pub word: String,
    pub field: String,
    pub sectors: Vec<SectorReport>,
    pub total: usize,
    pub complete: bool,
}

/// `AKh(β) = ⊕_j HH_*(K(j,n), P_β^{(j)})`.
///
/// Without `pmax`, each sector uses the smallest bar depth that certifies every degree
/// where homology can be nonzero: `gldim K(j,n) + ℓ + 1`.
pub fn akh<F: Field>(field: &F, word: &BraidWord, pmax: Option<usize>) -> Result<AkhReport> {
    let n = word.strands();
    let sectors = (0..=n)
        .map(|j| -> Result<SectorReport> {
            let alg = ArcAlgebra::k(j, n)?;
            let gl = global_dimension(&alg, field, 4 * n + 4)?;
            let bc = braid_bimodule_complex(&alg, field, word)?;
            let depth = pmax.unwrap_or(gl + bc.complex.length() + 1);
            let r: HHReport = relative_bar_hochschild(&alg, field, &bc.complex, depth, Some(gl))?;
            Ok(SectorReport {
                sector: j,
                total: r.total(),
                ranks: r.ranks,
                certified: r.certified,
                complete: r.complete,
                global_dimension: gl,
                bar_depth: depth,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(AkhReport {
        strands: n,
        word: word.to_string(),
        field: field.name(),
        total: sectors.iter().map(|s| s.total).sum(),
        complete: sectors.iter().all(|s| s.complete),
        sectors,
    })
}

/// `Σ_j C(n,j)·C(m−n,n−j)` against `C(m,n)`.
pub fn semi_orthogonal_identity(n: usize, m: usize) -> (u128, u128) {
    let rhs = (0..=n)
        .filter(|&j| n - j <= m - n)
        .map(|j| binomial(n, j) * binomial(m - n, n - j))
        .sum();
    (binomial(m, n), rhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};

    #[test]
    fn parse_and_validate() {
        let b = BraidWord::parse(3, "1 -2  1").unwrap();
        assert_eq!(b.letters(), &[1, -2, 1]);
        assert_eq!((b.positive(), b.negative(), b.writhe()), (2, 1, 1));
        assert!(BraidWord::parse(2, "2").is_err());
        assert!(BraidWord::parse(2, "0").is_err());
        assert!(BraidWord::parse(2, "x").is_err());
        assert_eq!(b.conjugate(2).unwrap().to_string(), "2 1 -2 1 -2");
    }

    #[test]
    fn identity_tangle_is_diagonal() {
        for n in 1..=3 {
            for j in 0..=n {
                let k = ArcAlgebra::k(j, n).unwrap();
                let b = TangleBimodule::new(&k, &Rationals, Letter::Id).unwrap();
                let c = b.check_diagonal(&k, &Rationals).unwrap();
                assert!(c.pass(), "{c:?}");
            }
        }
    }

    #[test]
    fn cup_cap_bimodules() {
        let k = ArcAlgebra::k(1, 2).unwrap();
        let u = TangleBimodule::new(&k, &Rationals, Letter::U(1)).unwrap();
        assert!(u.module.check(&k, &Rationals).pass());
        assert!(u.check_projection(&k, &Rationals).unwrap().pass());
        let t = tensor_over(&k, &Rationals, &u.module, &u.module).unwrap();
        assert_eq!(t.module.dim(), 2 * u.dim());
        for j in [0, 2] {
            let k = ArcAlgebra::k(j, 2).unwrap();
            assert_eq!(TangleBimodule::new(&k, &Rationals, Letter::U(1)).unwrap().dim(), 0);
        }
    }

    #[test]
    fn saddles_are_bimodule_maps() {
        let k = ArcAlgebra::k(1, 3).unwrap();
        let f = PrimeField::new(1_000_003).unwrap();
        let id = TangleBimodule::new(&k, &f, Letter::Id).unwrap();
        for i in 1..3 {
            let u = TangleBimodule::new(&k, &f, Letter::U(i)).unwrap();
            assert!(u.module.check(&k, &f).pass());
            assert!(u.check_projection(&k, &f).unwrap().pass());
            let s = id.saddle_to(&u, &f, 3, 1).unwrap();
            let t = u.saddle_to(&id, &f, 3, 1).unwrap();
            assert!(id.module.is_map_to(&u.module, &f, &s));
            assert!(u.module.is_map_to(&id.module, &f, &t));
            assert_eq!(id.module.map_degree(&u.module, &s), Some(1));
        }
    }

    #[test]
    fn trivial_braids() {
        for n in 1..=3 {
            let r = akh(&Rationals, &BraidWord::new(n, vec![]).unwrap(), None).unwrap();
            assert!(r.complete);
            assert_eq!(r.total, 1 << n);
            for s in &r.sectors {
                assert_eq!(s.total as u128, binomial(n, s.sector));
                assert_eq!(s.ranks.get(&0).copied().unwrap_or(0), s.total);
            }
        }
    }

    #[test]
    fn one_crossing() {
        let r = akh(&Rationals, &BraidWord::parse(2, "1").unwrap(), None).unwrap();
        assert!(r.complete);
        let per: Vec<usize> = r.sectors.iter().map(|s| s.total).collect();
        assert_eq!(per, vec![1, 2, 1]);
    }

    #[test]
    fn semi_orthogonal() {
        assert_eq!(semi_orthogonal_identity(2, 4), (6, 6));
        for m in 0..=8 {
            for n in 0..=m {
                let (a, b) = semi_orthogonal_identity(n, m);
                assert_eq!(a, b, "({n},{m})");
            }
        }
    }
}
