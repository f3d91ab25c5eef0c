//! The rank-two Frobenius TQFT on planar 1-manifolds.
//!
//! Everything that multiplies diagrams goes through [`SurgeryState`]: a closed
//! graph (every node has degree two, so components are circles) together with a
//! formal sum of valuations. A valuation is a bitmask over components ordered by
//! their least node; bit set means `X`, clear means `One`.

use crate::diagram::{cup_diagram, OrientedCircleDiagram};
use crate::error::{Error, Result};
use crate::weight::{is_compact, Label, Weight};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Frobenius {
    /// Anticlockwise circle.
    One,
    /// Clockwise circle.
    X,
}

impl Frobenius {
    fn from_bit(b: bool) -> Self {
        if b {
            Frobenius::X
        } else {
            Frobenius::One
        }
    }

    fn bit(self) -> bool {
        self == Frobenius::X
    }
}

/// `1⊗1 ↦ 1`, `1⊗x ↦ x`, `x⊗1 ↦ x`, `x⊗x ↦ 0`.
pub fn merge(u: Frobenius, v: Frobenius) -> Vec<Frobenius> {
    use Frobenius::*;
    match (u, v) {
        (One, One) => vec![One],
        (One, X) | (X, One) => vec![X],
        (X, X) => vec![],
    }
}

/// `1 ↦ 1⊗x + x⊗1`, `x ↦ x⊗x`.
pub fn split(u: Frobenius) -> Vec<(Frobenius, Frobenius)> {
    use Frobenius::*;
    match u {
        One => vec![(One, X), (X, One)],
        X => vec![(X, X)],
    }
}

const FREE: usize = usize::MAX;

/// A 1-manifold as a multigraph in which every node has exactly two edge ends.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosedGraph {
    nbr: Vec<[usize; 2]>,
}

/// Components of a [`ClosedGraph`], numbered by least node.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Components {
    pub comp_of: Vec<usize>,
    /// Least node of each component, increasing.
    pub reps: Vec<usize>,
}

impl Components {
    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }
}

impl ClosedGraph {
    /// Builds from an edge list; fails unless every node ends up with degree two.
    pub fn from_edges(nodes: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut nbr = vec![[FREE; 2]; nodes];
        for &(u, v) in edges {
            for (a, b) in [(u, v), (v, u)] {
                let slot = nbr
                    .get_mut(a)
                    .and_then(|s| s.iter_mut().find(|x| **x == FREE))
                    .ok_or_else(|| Error::Convention(format!("node {a} has degree > 2")))?;
                *slot = b;
            }
        }
        if nbr.iter().any(|s| s.contains(&FREE)) {
            return Err(Error::Convention("graph is not closed".into()));
        }
        Ok(ClosedGraph { nbr })
    }

    pub fn nodes(&self) -> usize {
        self.nbr.len()
    }

    pub fn components(&self) -> Components {
        let n = self.nbr.len();
        let mut comp_of = vec![FREE; n];
        let mut reps = Vec::new();
        let mut stack = Vec::new();
        for start in 0..n {
            if comp_of[start] != FREE {
                continue;
            }
            let id = reps.len();
            reps.push(start);
            comp_of[start] = id;
            stack.push(start);
            while let Some(u) = stack.pop() {
                for &v in &self.nbr[u] {
                    if comp_of[v] == FREE {
                        comp_of[v] = id;
                        stack.push(v);
                    }
                }
            }
        }
        Components { comp_of, reps }
    }

    fn has_edge(&self, u: usize, v: usize) -> bool {
        self.nbr.get(u).is_some_and(|s| s.contains(&v))
    }

    fn redirect(&mut self, u: usize, from: usize, to: usize) {
        let slot = self.nbr[u].iter_mut().find(|x| **x == from).expect("edge present");
        *slot = to;
    }

    /// Replaces edges `(a1,a2)`, `(b1,b2)` by `(a1,b1)`, `(a2,b2)`.
    pub fn resolve(&mut self, (a1, a2): (usize, usize), (b1, b2): (usize, usize)) -> Result<()> {
        if !self.has_edge(a1, a2) || !self.has_edge(b1, b2) {
            return Err(Error::PatternMismatch(format!(
                "no edges ({a1},{a2}) and ({b1},{b2}) to resolve"
            )));
        }
        let mut ends = [a1, a2, b1, b2];
        ends.sort_unstable();
        if ends.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::PatternMismatch("resolved edges share a node".into()));
        }
        self.redirect(a1, a2, b1);
        self.redirect(a2, a1, b2);
        self.redirect(b1, b2, a1);
        self.redirect(b2, b1, a2);
        Ok(())
    }
}

/// A formal sum of valuations on the components of a closed graph.
#[derive(Clone, Debug)]
pub struct SurgeryState {
    graph: ClosedGraph,
    comps: Components,
    /// `(valuation mask, coefficient)`, sorted by mask, nonzero coefficients.
    terms: Vec<(u64, i64)>,
}

impl SurgeryState {
    pub fn new(graph: ClosedGraph, terms: Vec<(u64, i64)>) -> Result<Self> {
        let comps = graph.components();
        if comps.len() > 64 {
            return Err(Error::InvalidParameters("more than 64 circles".into()));
        }
        let mut s = SurgeryState { graph, comps, terms };
        s.canonicalize();
        Ok(s)
    }

    pub fn graph(&self) -> &ClosedGraph {
        &self.graph
    }

    pub fn components(&self) -> &Components {
        &self.comps
    }

    pub fn terms(&self) -> &[(u64, i64)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(u64, i64)> {
        self.terms
    }

    fn canonicalize(&mut self) {
        self.terms = canonical_terms(std::mem::take(&mut self.terms));
    }

    /// One saddle: replaces edges `(a1,a2)`, `(b1,b2)` by `(a1,b1)`, `(a2,b2)` and
    /// applies merge or split to the valuations.
    pub fn surgery(&mut self, e1: (usize, usize), e2: (usize, usize)) -> Result<()> {
        let old = self.comps.clone();
        let ca = old.comp_of[e1.0];
        let cb = old.comp_of[e2.0];
        self.graph.resolve(e1, e2)?;
        let new = self.graph.components();
        if new.len() > 64 {
            return Err(Error::InvalidParameters("more than 64 circles".into()));
        }
        // Untouched components keep their node sets.
        let moved: Vec<(usize, usize)> = (0..old.len())
            .filter(|&k| k != ca && k != cb)
            .map(|k| (k, new.comp_of[old.reps[k]]))
            .collect();
        let carry = |mask: u64| -> u64 {
            moved
                .iter()
                .filter(|(k, _)| mask >> k & 1 == 1)
                .fold(0, |acc, (_, nk)| acc | 1 << nk)
        };
        let mut out = Vec::with_capacity(self.terms.len() * 2);
        if ca != cb {
            let target = new.comp_of[e1.0];
            for &(mask, c) in &self.terms {
                let u = Frobenius::from_bit(mask >> ca & 1 == 1);
                let v = Frobenius::from_bit(mask >> cb & 1 == 1);
                for w in merge(u, v) {
                    out.push((carry(mask) | (w.bit() as u64) << target, c));
                }
            }
        } else {
            let (ta, tb) = (new.comp_of[e1.0], new.comp_of[e1.1]);
            if ta == tb {
                return Err(Error::Convention("saddle does not split a circle".into()));
            }
            for &(mask, c) in &self.terms {
                let u = Frobenius::from_bit(mask >> ca & 1 == 1);
                for (x, y) in split(u) {
                    out.push((carry(mask) | (x.bit() as u64) << ta | (y.bit() as u64) << tb, c));
                }
            }
        }
        self.comps = new;
        self.terms = out;
        self.canonicalize();
        Ok(())
    }
}

/// Sorts by mask, adds duplicate coefficients, drops zeros.
pub fn canonical_terms(mut terms: Vec<(u64, i64)>) -> Vec<(u64, i64)> {
    terms.sort_unstable_by_key(|t| t.0);
    let mut out: Vec<(u64, i64)> = Vec::with_capacity(terms.len());
    for (m, c) in terms {
        match out.last_mut() {
            Some((pm, pc)) if *pm == m => *pc += c,
            _ => out.push((m, c)),
        }
    }
    out.retain(|t| t.1 != 0);
    out
}

/// A crossingless matching between `bottom` and `top` points.
///
/// Points `0..bottom` are the bottom row, `bottom..bottom+top` the top row, both
/// left to right.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FlatTangle {
    bottom: usize,
    top: usize,
    partner: Vec<usize>,
    removed: usize,
}

impl FlatTangle {
    pub fn new(bottom: usize, top: usize, partner: Vec<usize>, removed: usize) -> Result<Self> {
        let t = FlatTangle { bottom, top, partner, removed };
        let n = bottom + top;
        if n % 2 == 1 || t.partner.len() != n {
            return Err(Error::InvalidParameters("tangle has an odd number of endpoints".into()));
        }
        if (0..n).any(|p| t.partner[p] >= n || t.partner[p] == p || t.partner[t.partner[p]] != p) {
            return Err(Error::InvalidParameters("tangle partner map is not a matching".into()));
        }
        if !t.is_planar() {
            return Err(Error::InvalidParameters("tangle is not planar".into()));
        }
        Ok(t)
    }

    pub fn identity(n: usize) -> Self {
        let partner = (0..2 * n).map(|p| if p < n { p + n } else { p - n }).collect();
        FlatTangle { bottom: n, top: n, partner, removed: 0 }
    }

    /// `U_i` on `n` strands: a cap on bottom points `i, i+1` and a cup on the top ones (1-based).
    pub fn cup_cap(n: usize, i: usize) -> Result<Self> {
        if i == 0 || i >= n {
            return Err(Error::InvalidParameters(format!("U_{i} needs 1 <= i < {n}")));
        }
        let mut t = FlatTangle::identity(n);
        let (b, c) = (i - 1, i);
        t.partner[b] = c;
        t.partner[c] = b;
        t.partner[n + b] = n + c;
        t.partner[n + c] = n + b;
        Ok(t)
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn removed_circles(&self) -> usize {
        self.removed
    }

    pub fn partner(&self, p: usize) -> usize {
        self.partner[p]
    }

    pub fn is_identity(&self) -> bool {
        *self == FlatTangle::identity(self.bottom)
    }

    /// Position around the boundary: bottom left to right, then top right to left.
    fn boundary_pos(&self, p: usize) -> usize {
        if p < self.bottom {
            p
        } else {
            self.bottom + (self.top - 1 - (p - self.bottom))
        }
    }

    pub fn is_planar(&self) -> bool {
        let n = self.bottom + self.top;
        let chords: Vec<(usize, usize)> = (0..n)
            .filter(|&p| p < self.partner[p])
            .map(|p| {
                let (x, y) = (self.boundary_pos(p), self.boundary_pos(self.partner[p]));
                (x.min(y), x.max(y))
            })
            .collect();
        chords.iter().all(|&(a, b)| {
            chords
                .iter()
                .all(|&(c, d)| !(a < c && c < b && b < d) && !(c < a && a < d && d < b))
        })
    }

    /// Edges of the tangle, with endpoints in its own point numbering.
    pub fn arcs(&self) -> Vec<(usize, usize)> {
        (0..self.bottom + self.top)
            .filter(|&p| p < self.partner[p])
            .map(|p| (p, self.partner[p]))
            .collect()
    }
}

/// `s` below `t`: glues the top of `s` to the bottom of `t` and deletes closed loops.
pub fn compose_tangles(s: &FlatTangle, t: &FlatTangle) -> Result<FlatTangle> {
    if s.top != t.bottom {
        return Err(Error::InvalidParameters(format!(
            "cannot stack a tangle with {} top points under one with {} bottom points",
            s.top, t.bottom
        )));
    }
    let (sb, k, tt) = (s.bottom, s.top, t.top);
    // Outer numbering: s bottom 0..sb, t top sb..sb+tt.
    let mut partner = vec![FREE; sb + tt];
    let mut seen_mid = vec![false; k];
    // Follows a strand entering the middle row at `q` from below (`from_s`) or above.
    let walk = |mut q: usize, mut from_s: bool, seen: &mut Vec<bool>| -> usize {
        loop {
            seen[q] = true;
            if from_s {
                let p = t.partner[q];
                if p >= k {
                    return sb + (p - k);
                }
                q = p;
            } else {
                let p = s.partner[sb + q];
                if p < sb {
                    return p;
                }
                q = p - sb;
            }
            seen[q] = true;
            from_s = !from_s;
        }
    };
    for p in 0..sb + tt {
        if partner[p] != FREE {
            continue;
        }
        let other = if p < sb {
            let x = s.partner[p];
            if x < sb {
                x
            } else {
                walk(x - sb, true, &mut seen_mid)
            }
        } else {
            let x = t.partner[k + (p - sb)];
            if x >= k {
                sb + (x - k)
            } else {
                walk(x, false, &mut seen_mid)
            }
        };
        partner[p] = other;
        partner[other] = p;
    }
    let mut loops = 0;
    for q in 0..k {
        if !seen_mid[q] {
            loops += 1;
            let mut cur = q;
            loop {
                seen_mid[cur] = true;
                let up = t.partner[cur];
                seen_mid[up] = true;
                let down = s.partner[sb + up] - sb;
                if down == q {
                    break;
                }
                cur = down;
            }
        }
    }
    FlatTangle::new(sb, tt, partner, s.removed + t.removed + loops)
}

/// Cups below a row of `n` points, a flat tangle, and caps above: the picture
/// behind a bimodule basis vector. With the identity tangle it is a circle
/// diagram `b̲ ā`.
///
/// Nodes: bottom row `0..n`, top row `n..2n`. Arcs are 1-based positions.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Piece {
    pub n: usize,
    pub cups: Vec<(usize, usize)>,
    pub tangle: FlatTangle,
    pub caps: Vec<(usize, usize)>,
}

impl Piece {
    pub fn new(cups: Vec<(usize, usize)>, tangle: FlatTangle, caps: Vec<(usize, usize)>) -> Result<Self> {
        let n = tangle.bottom;
        if tangle.top != n {
            return Err(Error::InvalidParameters("piece tangle must be square".into()));
        }
        let p = Piece { n, cups, tangle, caps };
        p.graph()?;
        Ok(p)
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let n = self.n;
        let mut e: Vec<(usize, usize)> = self.cups.iter().map(|&(i, j)| (i - 1, j - 1)).collect();
        e.extend(self.tangle.arcs());
        e.extend(self.caps.iter().map(|&(i, j)| (n + i - 1, n + j - 1)));
        e
    }

    pub fn graph(&self) -> Result<ClosedGraph> {
        ClosedGraph::from_edges(2 * self.n, &self.edges())
    }

    pub fn circles(&self) -> usize {
        self.graph().map(|g| g.components().len()).unwrap_or(0)
    }

    /// Graph circles plus loops removed from the tangle.
    pub fn factors(&self) -> usize {
        self.circles() + self.tangle.removed
    }

    /// `#x − #1 + n/2`; additive under stacking.
    pub fn degree(&self, mask: u64) -> i64 {
        let f = self.factors();
        let xs = (mask & low_bits(f)).count_ones() as i64;
        2 * xs - f as i64 + self.n as i64 / 2
    }
}

fn low_bits(k: usize) -> u64 {
    if k >= 64 {
        u64::MAX
    } else {
        (1u64 << k) - 1
    }
}

/// The piece `b̲ ā` of a compact diagram.
pub fn diagram_piece(b: &Weight, a: &Weight) -> Result<Piece> {
    Piece::new(
        cup_diagram(b).arcs,
        FlatTangle::identity(b.len()),
        cup_diagram(a).arcs,
    )
}

/// Valuation mask of the orientation `mid` on the all-circle diagram `b̲ ā`.
pub fn orientation_mask(b: &Weight, mid: &Weight, a: &Weight) -> Result<u64> {
    if !cup_diagram(b).rays.is_empty() || !cup_diagram(a).rays.is_empty() {
        return Err(Error::NonCompact(format!("{b}:{mid}:{a} has rays")));
    }
    let p = diagram_piece(b, a)?;
    let comps = p.graph()?.components();
    Ok(comps
        .reps
        .iter()
        .enumerate()
        .filter(|(_, &r)| mid.label(r + 1) == Label::Up)
        .fold(0, |acc, (k, _)| acc | 1 << k))
}

/// Inverse of [`orientation_mask`]: the middle weight with the given circle valuations.
pub fn mask_orientation(b: &Weight, a: &Weight, mask: u64) -> Result<Weight> {
    let p = diagram_piece(b, a)?;
    let g = p.graph()?;
    let comps = g.components();
    let n = p.n;
    let mut labels = vec![Label::Down; n];
    for (k, &r) in comps.reps.iter().enumerate() {
        // Least node of a circle through both rows is its leftmost bottom point.
        let first = if mask >> k & 1 == 1 { Label::Up } else { Label::Down };
        let (mut prev, mut cur, mut lab) = (FREE, r, first);
        loop {
            if cur < n {
                labels[cur] = lab;
            }
            let next = if g.nbr[cur][0] != prev { g.nbr[cur][0] } else { g.nbr[cur][1] };
            // Labels flip across cups and caps, not along verticals.
            let vertical = (cur < n) != (next < n);
            if !vertical {
                lab = lab.flip();
            }
            prev = cur;
            cur = next;
            if cur == r {
                break;
            }
        }
    }
    Weight::from_labels(&labels)
}

/// Weights read off the bottom and top rows of `piece` under the valuation `mask`
/// (bit set = clockwise). A circle is clockwise exactly when it points up at its
/// leftmost node; labels flip along arcs within a row and persist along strands
/// between rows.
pub fn piece_labels(piece: &Piece, mask: u64) -> Result<(Weight, Weight)> {
    let n = piece.n;
    let g = piece.graph()?;
    let comps = g.components();
    let mut labels = vec![Label::Down; 2 * n];
    let mut start = vec![FREE; comps.len()];
    for v in 0..2 * n {
        let k = comps.comp_of[v];
        if start[k] == FREE || v % n < start[k] % n {
            start[k] = v;
        }
    }
    for (k, &r) in start.iter().enumerate() {
        let first = if mask >> k & 1 == 1 { Label::Up } else { Label::Down };
        let (mut prev, mut cur, mut lab) = (FREE, r, first);
        loop {
            labels[cur] = lab;
            let next = if g.nbr[cur][0] != prev { g.nbr[cur][0] } else { g.nbr[cur][1] };
            if (cur < n) == (next < n) {
                lab = lab.flip();
            }
            prev = cur;
            cur = next;
            if cur == r {
                break;
            }
        }
    }
    Ok((Weight::from_labels(&labels[..n])?, Weight::from_labels(&labels[n..])?))
}

/// Stacks `lower` under `upper` and resolves every shared middle arc, in the given
/// order (left endpoint order when `None`). One of the two tangles must be the
/// identity. Returns the contracted piece and its valuation terms.
pub fn stack_and_contract(
    lower: &Piece,
    lower_mask: u64,
    upper: &Piece,
    upper_mask: u64,
    order: Option<&[usize]>,
) -> Result<(Piece, Vec<(u64, i64)>)> {
    let n = lower.n;
    if upper.n != n || lower.caps != upper.cups {
        return Err(Error::PatternMismatch("stacked pieces do not match in the middle".into()));
    }
    let (lower_id, upper_id) = (lower.tangle.is_identity(), upper.tangle.is_identity());
    if !lower_id && !upper_id {
        return Err(Error::InvalidParameters("one stacked piece must carry the identity tangle".into()));
    }
    let mut edges = lower.edges();
    edges.extend(upper.edges().into_iter().map(|(u, v)| (u + 2 * n, v + 2 * n)));
    let graph = ClosedGraph::from_edges(4 * n, &edges)?;
    let cl = lower.circles();
    let cu = upper.circles();
    let mask0 = (lower_mask & low_bits(cl)) | (upper_mask & low_bits(cu)) << cl;
    let mut state = SurgeryState::new(graph, vec![(mask0, 1)])?;
    let middle = &lower.caps;
    let idx: Vec<usize> = match order {
        Some(o) => o.to_vec(),
        None => (0..middle.len()).collect(),
    };
    for k in idx {
        let (i, j) = middle[k];
        let (li, lj) = (n + i - 1, n + j - 1);
        let (ui, uj) = (2 * n + i - 1, 2 * n + j - 1);
        state.surgery((li, lj), (ui, uj))?;
    }
    let tangle = if lower_id { upper.tangle.clone() } else { lower.tangle.clone() };
    let removed_mask = if lower_id {
        upper_mask >> cu
    } else {
        lower_mask >> cl
    } & low_bits(tangle.removed);
    let target = Piece::new(lower.cups.clone(), tangle, upper.caps.clone())?;
    let tc = target.graph()?.components();
    let fc = state.components().clone();
    let map: Vec<usize> = tc
        .reps
        .iter()
        .map(|&r| if r < n { fc.comp_of[r] } else { fc.comp_of[3 * n + (r - n)] })
        .collect();
    let ntc = tc.len();
    let terms = state
        .into_terms()
        .into_iter()
        .map(|(m, c)| {
            let mut out = map
                .iter()
                .enumerate()
                .filter(|(_, &f)| m >> f & 1 == 1)
                .fold(0u64, |acc, (k, _)| acc | 1 << k);
            out |= removed_mask << ntc;
            (out, c)
        })
        .collect();
    Ok((target, canonical_terms(terms)))
}

/// The saddle at strands `i, i+1` (1-based) between the identity and `U_i`, in
/// either direction, applied to one basis vector of `source`.
pub fn saddle(source: &Piece, mask: u64, i: usize) -> Result<(Piece, Vec<(u64, i64)>)> {
    let n = source.n;
    if i == 0 || i >= n {
        return Err(Error::InvalidParameters(format!("saddle position {i} out of range")));
    }
    let (b0, b1, t0, t1) = (i - 1, i, n + i - 1, n + i);
    let t = &source.tangle;
    let (e1, e2, target) = if t.partner(b0) == t0 && t.partner(b1) == t1 {
        let mut tt = t.clone();
        tt.partner[b0] = b1;
        tt.partner[b1] = b0;
        tt.partner[t0] = t1;
        tt.partner[t1] = t0;
        ((b0, t0), (b1, t1), tt)
    } else if t.partner(b0) == b1 && t.partner(t0) == t1 {
        let mut tt = t.clone();
        tt.partner[b0] = t0;
        tt.partner[t0] = b0;
        tt.partner[b1] = t1;
        tt.partner[t1] = b1;
        ((b0, b1), (t0, t1), tt)
    } else {
        return Err(Error::PatternMismatch(format!("no saddle pattern at strands {i}, {}", i + 1)));
    };
    let c = source.circles();
    let mut state = SurgeryState::new(source.graph()?, vec![(mask & low_bits(c), 1)])?;
    state.surgery(e1, e2)?;
    let target = Piece::new(source.cups.clone(), target, source.caps.clone())?;
    let tc = target.graph()?.components();
    debug_assert_eq!(tc, *state.components());
    let removed = (mask >> c) & low_bits(source.tangle.removed);
    let nt = tc.len();
    let terms = state
        .into_terms()
        .into_iter()
        .map(|(m, k)| (m | removed << nt, k))
        .collect();
    Ok((target, terms))
}

/// Product of two all-circle basis diagrams `x = d̲ λ c̄` (below) and `y = b̲ μ ā` (above).
///
/// Zero unless `c = b`; otherwise one surgery per cup of `c`, in left endpoint
/// order unless `order` lists the cups to resolve.
pub fn surgery_product(
    x: &OrientedCircleDiagram,
    y: &OrientedCircleDiagram,
    order: Option<&[usize]>,
) -> Result<Vec<(OrientedCircleDiagram, i64)>> {
    for d in [x, y] {
        if d.m() != 2 * d.n() || !is_compact(&d.cup) || !is_compact(&d.cap) {
            return Err(Error::NonCompact(format!("{d} is not an all-circle diagram")));
        }
    }
    if x.m() != y.m() {
        return Err(Error::InvalidParameters(format!("{x} and {y} have different sizes")));
    }
    if x.cap != y.cup {
        return Ok(Vec::new());
    }
    let lower = diagram_piece(&x.cup, &x.cap)?;
    let upper = diagram_piece(&y.cup, &y.cap)?;
    let lm = orientation_mask(&x.cup, &x.mid, &x.cap)?;
    let um = orientation_mask(&y.cup, &y.mid, &y.cap)?;
    let (_, terms) = stack_and_contract(&lower, lm, &upper, um, order)?;
    terms
        .into_iter()
        .map(|(mask, c)| {
            let mid = mask_orientation(&x.cup, &y.cap, mask)?;
            Ok((OrientedCircleDiagram { cup: x.cup, mid, cap: y.cap }, c))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::orientations_of;
    use crate::weight::enumerate_weights;
    use Frobenius::*;

    #[test]
    fn frobenius_rules() {
        assert_eq!(merge(One, One), vec![One]);
        assert_eq!(merge(One, X), vec![X]);
        assert_eq!(merge(X, One), vec![X]);
        assert!(merge(X, X).is_empty());
        assert_eq!(split(One), vec![(One, X), (X, One)]);
        assert_eq!(split(X), vec![(X, X)]);
    }

    #[test]
    fn split_then_merge_is_two_x() {
        let mut total = std::collections::BTreeMap::new();
        for (a, b) in split(One) {
            for c in merge(a, b) {
                *total.entry(c).or_insert(0) += 1;
            }
        }
        assert_eq!(total.into_iter().collect::<Vec<_>>(), vec![(X, 2)]);
    }

    #[test]
    fn tangle_composition_examples() {
        let u1 = FlatTangle::cup_cap(2, 1).unwrap();
        let uu = compose_tangles(&u1, &u1).unwrap();
        assert_eq!(uu.removed_circles(), 1);
        assert_eq!(uu.partner, u1.partner);

        let id3 = FlatTangle::identity(3);
        let a = FlatTangle::cup_cap(3, 1).unwrap();
        let b = FlatTangle::cup_cap(3, 2).unwrap();
        assert_eq!(compose_tangles(&id3, &a).unwrap(), a);
        assert_eq!(compose_tangles(&a, &id3).unwrap(), a);
        let z = compose_tangles(&a, &b).unwrap();
        assert_eq!(z.removed_circles(), 0);
        // Zigzag: bottom 1-2 capped, bottom 3 runs to top 1, top 2-3 cupped.
        assert_eq!(z.partner(0), 1);
        assert_eq!(z.partner(2), 3);
        assert_eq!(z.partner(4), 5);
    }

    #[test]
    fn tangle_composition_is_associative() {
        let gens: Vec<FlatTangle> = (1..4).map(|i| FlatTangle::cup_cap(4, i).unwrap()).collect();
        for x in &gens {
            for y in &gens {
                for z in &gens {
                    let l = compose_tangles(&compose_tangles(x, y).unwrap(), z).unwrap();
                    let r = compose_tangles(x, &compose_tangles(y, z).unwrap()).unwrap();
                    assert_eq!(l, r);
                }
            }
        }
    }

    #[test]
    fn orientation_mask_round_trip() {
        for n in 1..=3 {
            let ws: Vec<Weight> = enumerate_weights(n, 2 * n)
                .unwrap()
                .into_iter()
                .filter(crate::weight::is_compact)
                .collect();
            for b in &ws {
                for a in &ws {
                    for mid in orientations_of(b, a).unwrap() {
                        let m = orientation_mask(b, &mid, a).unwrap();
                        assert_eq!(mask_orientation(b, a, m).unwrap(), mid);
                        let d = OrientedCircleDiagram::new(*b, mid, *a).unwrap();
                        let p = diagram_piece(b, a).unwrap();
                        assert_eq!(p.degree(m), d.degree() as i64);
                    }
                }
            }
        }
    }

    fn piece_id(n: usize) -> Piece {
        // Two side-by-side circles for n = 4: cups (1,2),(3,4) and matching caps.
        let arcs: Vec<(usize, usize)> = (0..n / 2).map(|k| (2 * k + 1, 2 * k + 2)).collect();
        Piece::new(arcs.clone(), FlatTangle::identity(n), arcs).unwrap()
    }

    #[test]
    fn saddle_merge_and_split() {
        let p = piece_id(4);
        // Merge two One-circles at strands 2,3.
        let (t, terms) = saddle(&p, 0b00, 2).unwrap();
        assert_eq!(t.circles(), 1);
        assert_eq!(terms, vec![(0, 1)]);
        let (_, terms) = saddle(&p, 0b11, 2).unwrap();
        assert!(terms.is_empty());
        // Split the merged One-circle back.
        let (back, terms) = saddle(&t, 0, 2).unwrap();
        assert_eq!(back, p);
        assert_eq!(terms, vec![(0b01, 1), (0b10, 1)]);
    }

    #[test]
    fn saddle_pattern_mismatch() {
        let p = piece_id(4);
        let (t, _) = saddle(&p, 0, 2).unwrap();
        assert!(matches!(saddle(&t, 0, 1), Err(Error::PatternMismatch(_))));
    }
}
