//! Weights: finite sequences of `∨`/`∧` labels.
//!
//! A weight of type `(n, m)` has length `m` and exactly `n` entries equal to
//! `∨`. Positions are 1-based throughout the public API. The text form uses
//! `v` for `∨` and `^` for `∧`, so `"v^"` is the weight `∨∧`.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Largest supported weight length.
pub const MAX_LEN: usize = 64;

/// A single label of a weight.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Label {
    /// `∨`, written `v`.
    Down,
    /// `∧`, written `^`.
    Up,
}

impl Label {
    pub fn flip(self) -> Label {
        match self {
            Label::Down => Label::Up,
            Label::Up => Label::Down,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Label::Down => 'v',
            Label::Up => '^',
        }
    }
}

/// A weight, stored as a bit mask of its `∨` positions.
///
/// Ordering is by length, then lexicographic with `∨ < ∧`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Weight {
    len: u8,
    down: u64,
}

impl Weight {
    /// Builds a weight from labels listed left to right.
    pub fn from_labels(labels: &[Label]) -> Result<Self> {
        if labels.len() > MAX_LEN {
            return Err(Error::InvalidParameters(format!(
                "weight length {} exceeds {MAX_LEN}",
                labels.len()
            )));
        }
        let mut down = 0u64;
        for (i, l) in labels.iter().enumerate() {
            if *l == Label::Down {
                down |= 1 << i;
            }
        }
        Ok(Weight {
            len: labels.len() as u8,
            down,
        })
    }

    /// Builds a weight of length `m` whose `∨` positions (1-based) are given.
    pub fn from_down_positions(m: usize, positions: &[usize]) -> Result<Self> {
        if m > MAX_LEN {
            return Err(Error::InvalidParameters(format!(
                "weight length {m} exceeds {MAX_LEN}"
            )));
        }
        let mut down = 0u64;
        for &p in positions {
            if p == 0 || p > m {
                return Err(Error::InvalidParameters(format!(
                    "position {p} out of range 1..={m}"
                )));
            }
            down |= 1 << (p - 1);
        }
        Ok(Weight { len: m as u8, down })
    }

    pub(crate) fn from_mask(m: usize, down: u64) -> Self {
        debug_assert!(m <= MAX_LEN);
        let mask = if m == 64 { u64::MAX } else { (1u64 << m) - 1 };
        Weight {
            len: m as u8,
            down: down & mask,
        }
    }

    /// Length `m`.
    pub fn len(&self) -> usize {
        self.len as usize
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Number of `∨` labels, `n`.
    pub fn downs(&self) -> usize {
        self.down.count_ones() as usize
    }

    /// Label at 1-based position `i`.
    pub fn label(&self, i: usize) -> Label {
        debug_assert!(i >= 1 && i <= self.len());
        if self.down >> (i - 1) & 1 == 1 {
            Label::Down
        } else {
            Label::Up
        }
    }

    pub fn is_down(&self, i: usize) -> bool {
        self.label(i) == Label::Down
    }

    pub fn labels(&self) -> impl Iterator<Item = Label> + '_ {
        (1..=self.len()).map(move |i| self.label(i))
    }

    /// Sorted 1-based positions labelled `∨`.
    pub fn down_positions(&self) -> Vec<usize> {
        (1..=self.len()).filter(|&i| self.is_down(i)).collect()
    }

    /// The weight with the labels at positions `i` and `j` exchanged.
    pub fn swapped(&self, i: usize, j: usize) -> Weight {
        let (a, b) = (self.down >> (i - 1) & 1, self.down >> (j - 1) & 1);
        let mut down = self.down & !(1 << (i - 1)) & !(1 << (j - 1));
        down |= a << (j - 1);
        down |= b << (i - 1);
        Weight { len: self.len, down }
    }

    /// Concatenation `self · other`.
    pub fn concat(&self, other: &Weight) -> Result<Weight> {
        let m = self.len() + other.len();
        if m > MAX_LEN {
            return Err(Error::InvalidParameters(format!(
                "weight length {m} exceeds {MAX_LEN}"
            )));
        }
        Ok(Weight::from_mask(m, self.down | (other.down << self.len())))
    }

    /// The sub-weight on positions `start..=end` (1-based, inclusive).
    pub fn slice(&self, start: usize, end: usize) -> Weight {
        if end < start {
            return Weight::from_mask(0, 0);
        }
        Weight::from_mask(end - start + 1, self.down >> (start - 1))
    }

    /// All `∨` or all `∧` of a given length.
    pub fn constant(m: usize, label: Label) -> Weight {
        match label {
            Label::Down => Weight::from_mask(m, u64::MAX),
            Label::Up => Weight::from_mask(m, 0),
        }
    }
}

impl Ord for Weight {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len.cmp(&other.len).then_with(|| {
            let diff = self.down ^ other.down;
            if diff == 0 {
                Ordering::Equal
            } else {
                let p = diff.trailing_zeros();
                if self.down >> p & 1 == 1 {
                    Ordering::Less
                } else {
                    Ordering::Greater
                }
            }
        })
    }
}

impl PartialOrd for Weight {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in self.labels() {
            write!(f, "{}", l.as_char())?;
        }
        Ok(())
    }
}

impl fmt::Debug for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Weight({self})")
    }
}

impl FromStr for Weight {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let labels = s
            .chars()
            .map(|c| match c {
                'v' | 'V' | '∨' => Ok(Label::Down),
                '^' | '∧' => Ok(Label::Up),
                other => Err(Error::Parse(format!("invalid weight symbol {other:?} in {s:?}"))),
            })
            .collect::<Result<Vec<_>>>()?;
        Weight::from_labels(&labels)
    }
}

/// All weights of type `(n, m)`, lexicographic with `∨ < ∧`.
pub fn enumerate_weights(n: usize, m: usize) -> Result<Vec<Weight>> {
    if n > m {
        return Err(Error::InvalidParameters(format!(
            "need 0 <= n <= m, got n = {n}, m = {m}"
        )));
    }
    if m > MAX_LEN {
        return Err(Error::InvalidParameters(format!(
            "weight length {m} exceeds {MAX_LEN}"
        )));
    }
    let mut out = Vec::new();
    fn rec(pos: usize, m: usize, left: usize, mask: u64, out: &mut Vec<Weight>) {
        if pos == m {
            if left == 0 {
                out.push(Weight::from_mask(m, mask));
            }
            return;
        }
        let remaining = m - pos;
        if left > 0 {
            rec(pos + 1, m, left - 1, mask | 1 << pos, out);
        }
        if remaining > left {
            rec(pos + 1, m, left, mask, out);
        }
    }
    rec(0, m, n, 0, &mut out);
    Ok(out)
}

/// Result of the bracket scan: good points with partners, and bad points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GoodPoints {
    /// `(c, c∧)` for every good `∨` at `c`, sorted by `c`.
    pub good: Vec<(usize, usize)>,
    /// `∨` positions with no partner.
    pub bad: Vec<usize>,
}

/// Left-to-right bracket scan: `∨` opens, `∧` closes the nearest open `∨`.
pub fn good_points(lambda: &Weight) -> GoodPoints {
    let mut stack = Vec::new();
    let mut good = Vec::new();
    for i in 1..=lambda.len() {
        match lambda.label(i) {
            Label::Down => stack.push(i),
            Label::Up => {
                if let Some(c) = stack.pop() {
                    good.push((c, i));
                }
            }
        }
    }
    good.sort_unstable();
    GoodPoints { good, bad: stack }
}

/// A weight is compact when all of its `∨` labels are good points.
pub fn is_compact(lambda: &Weight) -> bool {
    good_points(lambda).bad.is_empty()
}

fn check_same_type(a: &Weight, b: &Weight) -> Result<()> {
    if a.len() != b.len() || a.downs() != b.downs() {
        return Err(Error::InvalidParameters(format!(
            "weights {a} and {b} have different types"
        )));
    }
    Ok(())
}

/// Bruhat order: `λ ≤ μ` iff the k-th `∨` of `λ` is weakly left of the k-th `∨` of `μ` for all k.
///
/// Moving `∨` labels to the right goes up. In particular every oriented
/// circle diagram `b λ a` has `b ≤ λ` and `a ≤ λ`.
pub fn bruhat_leq(lambda: &Weight, mu: &Weight) -> Result<bool> {
    check_same_type(lambda, mu)?;
    Ok(lambda
        .down_positions()
        .iter()
        .zip(mu.down_positions().iter())
        .all(|(a, b)| a <= b))
}

/// The Bruhat-maximal orientation `w_λ` of `λ̲ ∪ λ̄`: every cup of `λ` turned clockwise.
pub fn max_weight(lambda: &Weight) -> Weight {
    good_points(lambda)
        .good
        .iter()
        .fold(*lambda, |w, &(i, j)| w.swapped(i, j))
}

/// Closure `Λ_{n,m} → Λ_{m,2m}`: prepend `m − n` copies of `∨`, append `n` copies of `∧`.
pub fn cl(lambda: &Weight) -> Result<Weight> {
    let (n, m) = (lambda.downs(), lambda.len());
    Weight::constant(m - n, Label::Down)
        .concat(lambda)?
        .concat(&Weight::constant(n, Label::Up))
}

/// Inverse of [`cl`] on its image, for a weight of `Λ_{m,2m}` and target `n`.
pub fn cl_inverse(mu: &Weight, n: usize) -> Option<Weight> {
    let two_m = mu.len();
    if !two_m.is_multiple_of(2) || mu.downs() * 2 != two_m || n > two_m / 2 {
        return None;
    }
    let m = two_m / 2;
    let head_ok = (1..=m - n).all(|a| mu.is_down(a));
    let tail_ok = (2 * m - n + 1..=2 * m).all(|a| !mu.is_down(a));
    if head_ok && tail_ok {
        Some(mu.slice(m - n + 1, 2 * m - n))
    } else {
        None
    }
}

/// `Λ_{n,m} → Λ_{m−n,2(m−n)}` for `2n ≤ m`: prepend `m − 2n` copies of `∨`.
pub fn c_map(lambda: &Weight) -> Result<Weight> {
    let (n, m) = (lambda.downs(), lambda.len());
    if 2 * n > m {
        return Err(Error::InvalidParameters(format!(
            "c-map needs 2n <= m, got n = {n}, m = {m}"
        )));
    }
    Weight::constant(m - 2 * n, Label::Down).concat(lambda)
}

/// `Λ_{n,m} → Λ_{n,m+n}`: append `n` copies of `∧`.
pub fn e_map(lambda: &Weight) -> Result<Weight> {
    lambda.concat(&Weight::constant(lambda.downs(), Label::Up))
}

/// Rotation by π: position `a ↦ m + 1 − a` with `∨ ↔ ∧`; maps `Λ_{n,m}` to `Λ_{m−n,m}`.
pub fn rotate_pd(lambda: &Weight) -> Weight {
    let m = lambda.len();
    let mut down = 0u64;
    for a in 1..=m {
        if !lambda.is_down(a) {
            down |= 1 << (m - a);
        }
    }
    Weight::from_mask(m, down)
}

/// Binomial coefficient as `u128`.
pub fn binomial(m: usize, n: usize) -> u128 {
    if n > m {
        return 0;
    }
    let n = n.min(m - n);
    (0..n).fold(1u128, |acc, i| acc * (m - i) as u128 / (i + 1) as u128)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Weight {
        s.parse().unwrap()
    }

    #[test]
    fn enumerates_in_lex_order() {
        assert_eq!(enumerate_weights(1, 2).unwrap(), vec![w("v^"), w("^v")]);
        assert_eq!(enumerate_weights(0, 3).unwrap(), vec![w("^^^")]);
        assert_eq!(enumerate_weights(2, 4).unwrap().len(), 6);
        assert!(enumerate_weights(3, 2).is_err());
        let all = enumerate_weights(3, 7).unwrap();
        assert_eq!(all.len() as u128, binomial(7, 3));
        assert!(all.windows(2).all(|p| p[0] < p[1]));
    }

    #[test]
    fn text_round_trip() {
        assert_eq!(w("v^^v").to_string(), "v^^v");
        assert_eq!(w("∨∧").to_string(), "v^");
        assert!("vx".parse::<Weight>().is_err());
    }

    /// Direct transcription of the balancing condition: `c'` is an `∧` right of
    /// `c` with equally many `∨` and `∧` strictly between them.
    fn balancing_oracle(lambda: &Weight) -> Vec<(usize, Option<usize>)> {
        lambda
            .down_positions()
            .into_iter()
            .map(|c| {
                let partner = (c + 1..=lambda.len()).find(|&cp| {
                    !lambda.is_down(cp) && {
                        let downs = (c + 1..cp).filter(|&x| lambda.is_down(x)).count();
                        let ups = (c + 1..cp).filter(|&x| !lambda.is_down(x)).count();
                        downs == ups
                    }
                });
                (c, partner)
            })
            .collect()
    }

    #[test]
    fn good_points_examples() {
        assert_eq!(good_points(&w("v^")).good, vec![(1, 2)]);
        let gp = good_points(&w("^v"));
        assert!(gp.good.is_empty());
        assert_eq!(gp.bad, vec![2]);
        let gp = good_points(&w("^^vv^v"));
        assert_eq!(gp.good, vec![(4, 5)]);
        assert_eq!(gp.bad, vec![3, 6]);
    }

    #[test]
    fn bracket_scan_matches_balancing_condition() {
        for m in 0..=9 {
            for n in 0..=m {
                for lambda in enumerate_weights(n, m).unwrap() {
                    let gp = good_points(&lambda);
                    for (c, partner) in balancing_oracle(&lambda) {
                        match partner {
                            Some(p) => assert!(gp.good.contains(&(c, p)), "{lambda}"),
                            None => assert!(gp.bad.contains(&c), "{lambda}"),
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn bruhat_basics() {
        assert!(bruhat_leq(&w("v^"), &w("v^")).unwrap());
        assert!(bruhat_leq(&w("v^"), &w("^v")).unwrap());
        assert!(!bruhat_leq(&w("^v"), &w("v^")).unwrap());
        assert!(bruhat_leq(&w("vv^^"), &w("^^vv")).unwrap());
        assert!(bruhat_leq(&w("v^^v"), &w("^vv^")).is_ok());
        assert!(bruhat_leq(&w("v^"), &w("v^^")).is_err());
    }

    #[test]
    fn max_weight_examples() {
        assert_eq!(max_weight(&w("v^")), w("^v"));
        assert_eq!(max_weight(&w("^v")), w("^v"));
        assert_eq!(max_weight(&w("^^vv")), w("^^vv"));
        assert_eq!(max_weight(&w("vv^^")), w("^^vv"));
    }

    #[test]
    fn padding_maps() {
        assert_eq!(cl(&w("v^")).unwrap(), w("vv^^"));
        assert_eq!(e_map(&w("^v")).unwrap(), w("^v^"));
        assert_eq!(c_map(&w("v^^")).unwrap(), w("vv^^"));
        assert!(c_map(&w("vv^")).is_err());
        for lambda in enumerate_weights(2, 5).unwrap() {
            let c = cl(&lambda).unwrap();
            assert!(is_compact(&c));
            assert_eq!(cl_inverse(&c, 2), Some(lambda));
            assert!(is_compact(&e_map(&lambda).unwrap()));
        }
    }

    #[test]
    fn rotation() {
        assert_eq!(rotate_pd(&w("v^")), w("v^"));
        assert_eq!(rotate_pd(&w("v^^")), w("vv^"));
        for lambda in enumerate_weights(2, 4).unwrap() {
            assert_eq!(rotate_pd(&rotate_pd(&lambda)), lambda);
        }
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(4, 2), 6);
        assert_eq!(binomial(8, 0), 1);
        assert_eq!(binomial(3, 5), 0);
    }
}
