//! Cup and cap diagrams, oriented circle diagrams, and their combinatorics.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::weight::{self, good_points, Label, Weight};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Side {
    /// Arcs below the axis, rays pointing down.
    Cup,
    /// Arcs above the axis, rays pointing up.
    Cap,
}

/// A crossingless matching of some of the points `1..=m` plus vertical rays at the rest.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ArcDiagram {
    pub m: usize,
    /// `(i, j)` with `i < j`, sorted by `i`.
    pub arcs: Vec<(usize, usize)>,
    /// Uncovered points, ascending.
    pub rays: Vec<usize>,
    pub side: Side,
}

impl ArcDiagram {
    /// `partner[i]` is the other end of the arc at `i`, or `None` for a ray (1-based index).
    pub fn partners(&self) -> Vec<Option<usize>> {
        let mut p = vec![None; self.m + 1];
        for &(i, j) in &self.arcs {
            p[i] = Some(j);
            p[j] = Some(i);
        }
        p
    }

    pub fn is_planar(&self) -> bool {
        self.arcs.iter().all(|&(i, j)| {
            self.arcs
                .iter()
                .all(|&(k, l)| !(i < k && k < j && j < l) && !(k < i && i < l && l < j))
        })
    }

    pub fn mirror(&self) -> ArcDiagram {
        ArcDiagram {
            side: match self.side {
                Side::Cup => Side::Cap,
                Side::Cap => Side::Cup,
            },
            ..self.clone()
        }
    }
}

/// The cup diagram `λ̲`: a cup from every good point to its partner, rays elsewhere.
pub fn cup_diagram(lambda: &Weight) -> ArcDiagram {
    let arcs = good_points(lambda).good;
    let mut covered = vec![false; lambda.len() + 1];
    for &(i, j) in &arcs {
        covered[i] = true;
        covered[j] = true;
    }
    ArcDiagram {
        m: lambda.len(),
        rays: (1..=lambda.len()).filter(|&i| !covered[i]).collect(),
        arcs,
        side: Side::Cup,
    }
}

/// The cap diagram `λ̄`, the reflection of `λ̲`.
pub fn cap_diagram(lambda: &Weight) -> ArcDiagram {
    cup_diagram(lambda).mirror()
}

/// Whether `diagram` oriented by `lambda` satisfies the arc rule and the ray rule.
pub fn is_oriented_half(diagram: &ArcDiagram, lambda: &Weight) -> bool {
    if diagram.m != lambda.len() {
        return false;
    }
    let arcs_ok = diagram
        .arcs
        .iter()
        .all(|&(i, j)| lambda.label(i) != lambda.label(j));
    let mut seen_down = false;
    let rays_ok = diagram.rays.iter().all(|&r| {
        if lambda.is_down(r) {
            seen_down = true;
            true
        } else {
            !seen_down
        }
    });
    arcs_ok && rays_ok
}

/// Whether `b̲ λ ā` is an oriented circle diagram.
pub fn is_oriented(b: &Weight, lambda: &Weight, a: &Weight) -> Result<bool> {
    for x in [b, a] {
        if x.len() != lambda.len() || x.downs() != lambda.downs() {
            return Err(Error::InvalidParameters(format!(
                "weights {b}, {lambda}, {a} have different types"
            )));
        }
    }
    Ok(is_oriented_half(&cup_diagram(b), lambda) && is_oriented_half(&cap_diagram(a), lambda))
}

/// Clockwise arcs of `diagram` under `lambda`: those whose left end is `∧`.
pub fn clockwise_arcs(diagram: &ArcDiagram, lambda: &Weight) -> usize {
    diagram
        .arcs
        .iter()
        .filter(|&&(i, _)| lambda.label(i) == Label::Up)
        .count()
}

/// A basis diagram `b̲ λ ā`: cup weight `b`, middle weight `λ`, cap weight `a`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct OrientedCircleDiagram {
    pub cup: Weight,
    pub mid: Weight,
    pub cap: Weight,
}

impl OrientedCircleDiagram {
    pub fn new(cup: Weight, mid: Weight, cap: Weight) -> Result<Self> {
        if !is_oriented(&cup, &mid, &cap)? {
            return Err(Error::NotOriented(format!("{cup}:{mid}:{cap}")));
        }
        Ok(OrientedCircleDiagram { cup, mid, cap })
    }

    /// The idempotent `e_λ = λ̲ λ λ̄`.
    pub fn idempotent(lambda: Weight) -> Self {
        OrientedCircleDiagram {
            cup: lambda,
            mid: lambda,
            cap: lambda,
        }
    }

    pub fn m(&self) -> usize {
        self.mid.len()
    }

    pub fn n(&self) -> usize {
        self.mid.downs()
    }

    /// Number of clockwise cups plus clockwise caps.
    pub fn degree(&self) -> usize {
        self.cup_degree() + self.cap_degree()
    }

    pub fn cup_degree(&self) -> usize {
        clockwise_arcs(&cup_diagram(&self.cup), &self.mid)
    }

    pub fn cap_degree(&self) -> usize {
        clockwise_arcs(&cap_diagram(&self.cap), &self.mid)
    }

    pub fn is_idempotent(&self) -> bool {
        self.cup == self.mid && self.mid == self.cap
    }

    /// `(a, λ, b)`, the diagram flipped upside down.
    pub fn reflect(&self) -> Self {
        OrientedCircleDiagram {
            cup: self.cap,
            mid: self.mid,
            cap: self.cup,
        }
    }

    /// The diagram rotated by π; lands in `K(m − n, m)`.
    pub fn rotate_pd(&self) -> Self {
        OrientedCircleDiagram {
            cup: weight::rotate_pd(&self.cap),
            mid: weight::rotate_pd(&self.mid),
            cap: weight::rotate_pd(&self.cup),
        }
    }
}

impl fmt::Display for OrientedCircleDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:{}", self.cup, self.mid, self.cap)
    }
}

impl FromStr for OrientedCircleDiagram {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(':').collect();
        if parts.len() != 3 {
            return Err(Error::Parse(format!("expected cup:mid:cap, got {s:?}")));
        }
        OrientedCircleDiagram::new(parts[0].parse()?, parts[1].parse()?, parts[2].parse()?)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Component {
    /// Points in traversal order from the least point, first step along its cup.
    Circle(Vec<usize>),
    /// Points in order from the smaller ray end to the other.
    Line(Vec<usize>),
}

impl Component {
    pub fn points(&self) -> &[usize] {
        match self {
            Component::Circle(p) | Component::Line(p) => p,
        }
    }

    pub fn is_circle(&self) -> bool {
        matches!(self, Component::Circle(_))
    }
}

/// Components of `b̲ ∪ ā`, ordered by least point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CircleDecomposition {
    pub components: Vec<Component>,
}

impl CircleDecomposition {
    pub fn circles(&self) -> usize {
        self.components.iter().filter(|c| c.is_circle()).count()
    }

    pub fn lines(&self) -> usize {
        self.components.len() - self.circles()
    }
}

pub fn circle_decomposition(b: &Weight, a: &Weight) -> Result<CircleDecomposition> {
    if b.len() != a.len() {
        return Err(Error::InvalidParameters(format!(
            "weights {b} and {a} have different lengths"
        )));
    }
    let m = b.len();
    let lower = cup_diagram(b).partners();
    let upper = cap_diagram(a).partners();
    let mut seen = vec![false; m + 1];
    let mut components = Vec::new();
    for start in 1..=m {
        if seen[start] {
            continue;
        }
        // Walk one way along alternating cup/cap arcs; if a ray is hit, restart
        // from that end to collect the whole line.
        let walk = |from: usize, first_lower: bool| -> (Vec<usize>, bool) {
            let mut pts = vec![from];
            let mut cur = from;
            let mut use_lower = first_lower;
            loop {
                let next = if use_lower { lower[cur] } else { upper[cur] };
                match next {
                    None => return (pts, false),
                    Some(nx) if nx == from => return (pts, true),
                    Some(nx) => {
                        pts.push(nx);
                        cur = nx;
                        use_lower = !use_lower;
                    }
                }
            }
        };
        let (pts, closed) = walk(start, true);
        let comp = if closed {
            Component::Circle(pts)
        } else {
            // `pts` ends at a ray reached via the last arc type; walk from start the other way.
            let (back, _) = walk(start, false);
            let mut line: Vec<usize> = back.into_iter().rev().collect();
            line.extend(pts.into_iter().skip(1));
            if line.first() > line.last() {
                line.reverse();
            }
            Component::Line(line)
        };
        for &p in comp.points() {
            seen[p] = true;
        }
        components.push(comp);
    }
    Ok(CircleDecomposition { components })
}

/// All `λ` orienting `b̲ ∪ ā`, sorted by degree and then lexicographically.
pub fn orientations_of(b: &Weight, a: &Weight) -> Result<Vec<Weight>> {
    if b.len() != a.len() || b.downs() != a.downs() {
        return Err(Error::InvalidParameters(format!(
            "weights {b} and {a} have different types"
        )));
    }
    let m = b.len();
    let n = b.downs();
    let decomposition = circle_decomposition(b, a)?;
    let comps = &decomposition.components;
    let cup = cup_diagram(b);
    let cap = cap_diagram(a);
    // Labels alternate along every component, so each one has two candidate labelings.
    let k = comps.len();
    let mut out = Vec::new();
    for choice in 0u64..(1u64 << k) {
        let mut mask = 0u64;
        for (ci, comp) in comps.iter().enumerate() {
            let first_down = choice >> ci & 1 == 1;
            for (idx, &p) in comp.points().iter().enumerate() {
                if (idx % 2 == 0) == first_down {
                    mask |= 1 << (p - 1);
                }
            }
        }
        if mask.count_ones() as usize != n {
            continue;
        }
        let lambda = Weight::from_mask(m, mask);
        if is_oriented_half(&cup, &lambda) && is_oriented_half(&cap, &lambda) {
            out.push(lambda);
        }
    }
    out.sort_by_key(|lambda| {
        (
            clockwise_arcs(&cup, lambda) + clockwise_arcs(&cap, lambda),
            *lambda,
        )
    });
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weight::enumerate_weights;

    fn w(s: &str) -> Weight {
        s.parse().unwrap()
    }

    fn d(s: &str) -> OrientedCircleDiagram {
        s.parse().unwrap()
    }

    #[test]
    fn cup_diagram_examples() {
        let c = cup_diagram(&w("v^"));
        assert_eq!(c.arcs, vec![(1, 2)]);
        assert!(c.rays.is_empty());
        let c = cup_diagram(&w("^v"));
        assert!(c.arcs.is_empty());
        assert_eq!(c.rays, vec![1, 2]);
        let c = cup_diagram(&w("vv^^"));
        assert_eq!(c.arcs, vec![(1, 4), (2, 3)]);
    }

    #[test]
    fn cup_diagrams_are_planar_partitions_without_nested_rays() {
        for m in 0..=9 {
            for n in 0..=m {
                for lambda in enumerate_weights(n, m).unwrap() {
                    let c = cup_diagram(&lambda);
                    assert!(c.is_planar());
                    let mut hits = vec![0; m + 1];
                    for &(i, j) in &c.arcs {
                        hits[i] += 1;
                        hits[j] += 1;
                    }
                    for &r in &c.rays {
                        hits[r] += 1;
                        assert!(c.arcs.iter().all(|&(i, j)| !(i < r && r < j)));
                    }
                    assert!(hits[1..].iter().all(|&h| h == 1));
                    assert!(is_oriented_half(&c, &lambda));
                }
            }
        }
    }

    #[test]
    fn orientation_examples() {
        assert!(is_oriented(&w("v^"), &w("v^"), &w("v^")).unwrap());
        assert!(!is_oriented(&w("^v"), &w("v^"), &w("^v")).unwrap());
        assert!(is_oriented(&w("v^"), &w("^v"), &w("v^")).unwrap());
        assert!(is_oriented(&w("v^"), &w("v^"), &w("v^^")).is_err());
    }

    #[test]
    fn degree_examples() {
        assert_eq!(d("v^:^v:v^").degree(), 2);
        assert_eq!(d("v^v^:v^v^:vv^^").degree(), 1);
        for lambda in enumerate_weights(3, 6).unwrap() {
            assert_eq!(OrientedCircleDiagram::idempotent(lambda).degree(), 0);
        }
    }

    #[test]
    fn circle_decomposition_examples() {
        let c = circle_decomposition(&w("v^"), &w("v^")).unwrap();
        assert_eq!(c.components, vec![Component::Circle(vec![1, 2])]);
        let c = circle_decomposition(&w("v^v^"), &w("vv^^")).unwrap();
        assert_eq!(c.circles(), 1);
        assert_eq!(c.components[0].points().len(), 4);
        let c = circle_decomposition(&w("^v"), &w("^v")).unwrap();
        assert_eq!(
            c.components,
            vec![Component::Line(vec![1]), Component::Line(vec![2])]
        );
    }

    #[test]
    fn orientation_examples_sorted_by_degree() {
        assert_eq!(orientations_of(&w("v^"), &w("v^")).unwrap(), vec![w("v^"), w("^v")]);
        assert_eq!(orientations_of(&w("^v"), &w("v^")).unwrap(), vec![w("^v")]);
        let o = orientations_of(&w("vv^^"), &w("vv^^")).unwrap();
        let degrees: Vec<usize> = o
            .iter()
            .map(|l| OrientedCircleDiagram::new(w("vv^^"), *l, w("vv^^")).unwrap().degree())
            .collect();
        // Each circle is one cup plus one cap, so it contributes 0 or 2.
        assert_eq!(degrees, vec![0, 2, 2, 4]);
    }

    /// Brute force over all weights of the same type.
    #[test]
    fn orientations_match_brute_force() {
        for (n, m) in [(1, 2), (1, 3), (2, 4), (2, 5), (3, 6)] {
            let ws = enumerate_weights(n, m).unwrap();
            for b in &ws {
                for a in &ws {
                    let brute: Vec<Weight> = ws
                        .iter()
                        .filter(|l| is_oriented(b, l, a).unwrap())
                        .copied()
                        .collect();
                    let mut fast = orientations_of(b, a).unwrap();
                    fast.sort();
                    assert_eq!(fast, brute, "{b} {a}");
                    let dec = circle_decomposition(b, a).unwrap();
                    if !brute.is_empty() {
                        assert_eq!(brute.len(), 1 << dec.circles());
                    }
                }
            }
        }
    }

    #[test]
    fn reflect_and_rotate() {
        assert_eq!(d("v^:^v:^v").reflect(), d("^v:^v:v^"));
        for b in enumerate_weights(1, 3).unwrap() {
            for a in enumerate_weights(1, 3).unwrap() {
                for l in orientations_of(&b, &a).unwrap() {
                    let x = OrientedCircleDiagram::new(b, l, a).unwrap();
                    assert_eq!(x.reflect().reflect(), x);
                    let r = x.rotate_pd();
                    assert!(is_oriented(&r.cup, &r.mid, &r.cap).unwrap());
                    assert_eq!(r.degree(), x.degree());
                    assert_eq!(r.rotate_pd(), x);
                }
            }
        }
    }
}
