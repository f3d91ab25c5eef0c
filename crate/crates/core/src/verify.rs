//! Named verification suites shared by the acceptance tests and the CLI.

use std::collections::BTreeMap;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::algebra::{verify_cl_multiplicative, verify_quotient_iso, ArcAlgebra, QuotientMap};
use crate::braid::{akh, semi_orthogonal_identity, AkhReport, BraidWord, Letter, TangleBimodule};
use crate::diagram::{clockwise_arcs, cap_diagram, cup_diagram, is_oriented};
use crate::error::{Error, Result};
use crate::field::Rationals;
use crate::hh::hochschild_diagonal;
use crate::khovanov::{jones, kh_cube, ss_check, words};
use crate::modules::module_suite;
use crate::structure::{check_opposite_anti, check_pd_anti, structure_suite, Check, Sampling};
use crate::weight::{binomial, enumerate_weights};

/// Checks behind one acceptance criterion.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CriterionReport {
    pub id: usize,
    pub title: String,
    pub checks: Vec<Check>,
    /// Wall time; not serialized so reports stay reproducible.
    #[serde(skip)]
    pub seconds: f64,
}

impl CriterionReport {
    pub fn pass(&self) -> bool {
        self.checks.iter().all(Check::pass)
    }

    pub fn failing(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass())
    }
}

pub const CRITERIA: [&str; 8] = [
    "algebra dimensions",
    "structure suite",
    "isomorphism suite",
    "HH of the diagonal bimodule",
    "module numerology",
    "Khovanov oracle self-consistency",
    "annular suite",
    "spectral-sequence constraints",
];

fn tagged(prefix: &str, checks: impl IntoIterator<Item = Check>) -> Vec<Check> {
    checks
        .into_iter()
        .map(|mut c| {
            c.name = format!("{prefix}: {}", c.name);
            c
        })
        .collect()
}

/// `(total, degree ↦ count)` by enumerating every weight triple and testing orientation.
pub fn brute_force_dimension(n: usize, m: usize, compact: bool) -> Result<(usize, BTreeMap<usize, usize>)> {
    let ws = enumerate_weights(n, m)?;
    let ws: Vec<_> = if compact { ws.into_iter().filter(crate::weight::is_compact).collect() } else { ws };
    let mut graded = BTreeMap::new();
    for b in &ws {
        for a in &ws {
            for l in enumerate_weights(n, m)? {
                if is_oriented(b, &l, a)? {
                    let d = clockwise_arcs(&cup_diagram(b), &l) + clockwise_arcs(&cap_diagram(a), &l);
                    *graded.entry(d).or_insert(0) += 1;
                }
            }
        }
    }
    Ok((graded.values().sum(), graded))
}

fn dimension_check(name: &str, alg: &ArcAlgebra, n: usize, m: usize, compact: bool, total: usize, profile: Option<&[usize]>) -> Result<Check> {
    let (count, graded) = brute_force_dimension(n, m, compact)?;
    let mut c = Check::new(format!("{name}: dimension {total}"));
    c.record(count == total, || format!("enumeration gives {count}"));
    c.record(alg.dim() == count, || format!("algebra {} vs enumeration {count}", alg.dim()));
    let gd = alg.graded_dimension(None)?;
    let from_alg: BTreeMap<usize, usize> = gd.terms().map(|(e, k)| (e as usize, k as usize)).collect();
    c.record(from_alg == graded, || format!("graded {gd} vs enumeration {graded:?}"));
    if let Some(profile) = profile {
        let want: BTreeMap<usize, usize> = profile.iter().enumerate().filter(|(_, k)| **k > 0).map(|(d, k)| (d, *k)).collect();
        c.record(graded == want, || format!("{graded:?} ≠ {want:?}"));
    }
    Ok(c)
}

pub fn criterion_1() -> Result<Vec<Check>> {
    Ok(vec![
        dimension_check("K(1,2)", &ArcAlgebra::k(1, 2)?, 1, 2, false, 5, Some(&[2, 2, 1]))?,
        dimension_check("H(2)", &ArcAlgebra::h(2)?, 2, 4, true, 12, None)?,
    ])
}

/// Structure suite at one size; exhaustive below `exhaustive_dim`, random above.
pub fn structure_at(n: usize, m: usize, sampling: Sampling) -> Result<Vec<Check>> {
    let alg = ArcAlgebra::k(n, m)?;
    Ok(tagged(&format!("K({n},{m})"), structure_suite(&alg, sampling)))
}

pub fn criterion_2(seed: u64) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for (n, m) in [(1, 2), (1, 3), (2, 3), (2, 4)] {
        out.extend(structure_at(n, m, Sampling::Exhaustive)?);
    }
    for (n, m) in [(2, 5), (3, 6)] {
        out.extend(structure_at(n, m, Sampling::Random { samples: 10_000, seed })?);
    }
    Ok(out)
}

fn iso_check(map: QuotientMap) -> Result<Check> {
    let r = verify_quotient_iso(map)?;
    let mut c = Check::new(format!("{map:?}"));
    c.checked = r.pairs_checked.max(1);
    if !r.pass {
        c.failures = 1;
        c.first_failure = r.counterexample.or(Some(format!("{} vs {}", r.source_dim, r.quotient_dim)));
    }
    Ok(c)
}

fn cl_check(n: usize, m: usize) -> Result<Check> {
    let mut c = Check::new(format!("cl multiplicative mod I_Λ at ({n},{m})"));
    let r = verify_cl_multiplicative(n, m)?;
    c.record(r.is_none(), || r.clone().unwrap_or_default());
    Ok(c)
}

pub fn isomorphisms_at(n: usize, m: usize) -> Result<Vec<Check>> {
    let k = ArcAlgebra::k(n, m)?;
    let mut out = vec![check_opposite_anti(&k)];
    if n <= m {
        out.push(check_pd_anti(&k, &ArcAlgebra::k(m - n, m)?));
    }
    Ok(tagged(&format!("K({n},{m})"), out))
}

pub fn criterion_3() -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for (n, m) in [(1, 3), (2, 4)] {
        out.extend(isomorphisms_at(n, m)?);
    }
    for (n, m) in [(1, 2), (1, 3)] {
        out.push(iso_check(QuotientMap::Bc { n, m })?);
        out.push(iso_check(QuotientMap::Be { n, m })?);
        out.push(cl_check(n, m)?);
    }
    Ok(out)
}

/// `HH_0(K(n,m)) = C(m,n)` and `HH_k = 0` for `1 ≤ k ≤ top`, with every degree certified.
pub fn hh_diagonal_check(n: usize, m: usize, depth: usize, top: i64) -> Result<Check> {
    let alg = ArcAlgebra::k(n, m)?;
    let r = hochschild_diagonal(&alg, &Rationals, depth)?;
    let mut c = Check::new(format!("HH(K({n},{m})) at bar depth {depth}"));
    c.record(r.certified.1 >= top, || format!("certified only to {}", r.certified.1));
    let want = binomial(m, n) as usize;
    c.record(r.ranks.get(&0) == Some(&want), || format!("HH_0 = {:?}, want {want}", r.ranks.get(&0)));
    for k in 1..=top {
        c.record(r.ranks.get(&k) == Some(&0), || format!("HH_{k} = {:?}", r.ranks.get(&k)));
    }
    Ok(c)
}

pub fn criterion_4() -> Result<Vec<Check>> {
    [(1, 2), (1, 3), (2, 4)].into_iter().map(|(n, m)| hh_diagonal_check(n, m, 5, 3)).collect()
}

pub fn modules_at(n: usize, m: usize) -> Result<Vec<Check>> {
    let alg = ArcAlgebra::k(n, m)?;
    Ok(tagged(&format!("K({n},{m})"), module_suite(&alg, true)?))
}

fn sizes(n_max: usize, m_max: usize) -> impl Iterator<Item = (usize, usize)> {
    (1..=m_max).flat_map(move |m| (0..=n_max.min(m)).map(move |n| (n, m)))
}

pub fn criterion_5() -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for (n, m) in sizes(2, 5) {
        out.extend(modules_at(n, m)?);
    }
    Ok(out)
}

/// `χ_q(Kh) = Jones` for every word of length `≤ max_len` in `Br_n`.
pub fn euler_check(n: usize, max_len: usize) -> Result<Check> {
    let mut c = Check::new(format!("χ_q(Kh) = Jones on Br_{n}, length ≤ {max_len}"));
    for len in 0..=max_len {
        for w in words(n, len) {
            let k = kh_cube(&Rationals, &w)?;
            let j = jones(&w);
            c.record(k.euler == j, || format!("[{w}]: {} vs {j}", k.euler));
        }
    }
    Ok(c)
}

pub fn criterion_6() -> Result<Vec<Check>> {
    let mut out = vec![euler_check(2, 4)?, euler_check(3, 4)?];
    let mut c = Check::new("unknot has rank 2");
    for w in [BraidWord::new(1, vec![])?, BraidWord::new(2, vec![1])?, BraidWord::new(3, vec![1, 2])?] {
        let t = kh_cube(&Rationals, &w)?.total;
        c.record(t == 2, || format!("Br_{} [{w}]: {t}", w.strands()));
    }
    out.push(c);
    let mut c = Check::new("trefoil has rank 4");
    let t = kh_cube(&Rationals, &BraidWord::new(2, vec![1, 1, 1])?)?.total;
    c.record(t == 4, || format!("{t}"));
    out.push(c);
    Ok(out)
}

/// Nonzero ranks per sector, for comparing words of different lengths.
fn sector_ranks(r: &AkhReport) -> Vec<BTreeMap<i64, usize>> {
    r.sectors.iter().map(|s| s.ranks.iter().filter(|(_, v)| **v > 0).map(|(k, v)| (*k, *v)).collect()).collect()
}

pub fn trivial_braid_check(n: usize) -> Result<Check> {
    let r = akh(&Rationals, &BraidWord::new(n, vec![])?, None)?;
    let mut c = Check::new(format!("trivial braid in Br_{n}"));
    c.record(r.complete, || "not certified".into());
    c.record(r.total == 1 << n, || format!("total {}", r.total));
    for s in &r.sectors {
        let want = binomial(n, s.sector) as usize;
        c.record(s.total == want && s.ranks.get(&0) == Some(&want), || format!("sector {}: {:?}", s.sector, s.ranks));
    }
    Ok(c)
}

pub fn diagonal_check(n_max: usize) -> Result<Check> {
    let mut c = Check::new(format!("B(id) ≅ Δ for n ≤ {n_max}"));
    for n in 1..=n_max {
        for j in 0..=n {
            let alg = ArcAlgebra::k(j, n)?;
            c.absorb(TangleBimodule::new(&alg, &Rationals, Letter::Id)?.check_diagonal(&alg, &Rationals)?);
        }
    }
    Ok(c)
}

/// AKh ranks of `s β s⁻¹` agree with those of `β` for every listed `s`.
pub fn conjugation_check(word: &BraidWord, by: &[i64]) -> Result<Check> {
    let base = akh(&Rationals, word, None)?;
    let mut c = Check::new(format!("AKh conjugation invariance of [{word}] in Br_{}", word.strands()));
    c.record(base.complete, || format!("[{word}] not certified"));
    for &s in by {
        let w = word.conjugate(s)?;
        let r = akh(&Rationals, &w, None)?;
        c.record(r.complete, || format!("[{w}] not certified"));
        c.record(sector_ranks(&r) == sector_ranks(&base), || {
            format!("[{w}]: {:?} vs {:?}", sector_ranks(&r), sector_ranks(&base))
        });
    }
    Ok(c)
}

pub fn criterion_7() -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for n in 1..=3 {
        out.push(trivial_braid_check(n)?);
    }
    out.push(diagonal_check(3)?);
    out.push(conjugation_check(&BraidWord::new(2, vec![1])?, &[1, -1])?);
    out.push(conjugation_check(&BraidWord::new(2, vec![1, 1])?, &[1, -1])?);
    out.push(conjugation_check(&BraidWord::new(3, vec![1, 2])?, &[1, 2])?);
    Ok(out)
}

pub fn semi_orthogonal_check(m_max: usize) -> Check {
    let mut c = Check::new(format!("C(m,n) = Σ_j C(n,j)C(m−n,n−j) for n ≤ m ≤ {m_max}"));
    for m in 0..=m_max {
        for n in 0..=m {
            let (l, r) = semi_orthogonal_identity(n, m);
            c.record(l == r, || format!("({n},{m}): {l} ≠ {r}"));
        }
    }
    c
}

pub fn ss_checks(words: &[BraidWord]) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for w in words {
        let r = ss_check(&Rationals, w, &[])?;
        let name = format!("Br_{} [{w}] (AKh {}, Kh {})", w.strands(), r.akh_total, r.kh_total);
        out.extend(tagged(&name, r.checks.into_iter().filter(|c| c.checked > 0)));
    }
    Ok(out)
}

pub fn criterion_8() -> Result<Vec<Check>> {
    let ws = [
        BraidWord::new(2, vec![])?,
        BraidWord::new(2, vec![1])?,
        BraidWord::new(2, vec![1, 1])?,
        BraidWord::new(2, vec![1, 1, 1])?,
        BraidWord::new(3, vec![1, 2])?,
    ];
    let mut out = ss_checks(&ws)?;
    out.push(semi_orthogonal_check(8));
    Ok(out)
}

/// Runs one acceptance criterion (1-based).
pub fn criterion(id: usize, seed: u64) -> Result<CriterionReport> {
    let title = CRITERIA
        .get(id.wrapping_sub(1))
        .ok_or_else(|| Error::InvalidParameters(format!("no criterion {id}")))?;
    let t = Instant::now();
    let checks = match id {
        1 => criterion_1()?,
        2 => criterion_2(seed)?,
        3 => criterion_3()?,
        4 => criterion_4()?,
        5 => criterion_5()?,
        6 => criterion_6()?,
        7 => criterion_7()?,
        _ => criterion_8()?,
    };
    Ok(CriterionReport { id, title: title.to_string(), checks, seconds: t.elapsed().as_secs_f64() })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Quick,
    Full,
    Algebra,
    Isomorphisms,
    Modules,
    Hh,
    Khovanov,
    Annular,
    Sseq,
}

impl std::str::FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "quick" => Suite::Quick,
            "full" => Suite::Full,
            "algebra" => Suite::Algebra,
            "isomorphisms" => Suite::Isomorphisms,
            "modules" => Suite::Modules,
            "hh" => Suite::Hh,
            "khovanov" => Suite::Khovanov,
            "annular" => Suite::Annular,
            "sseq" => Suite::Sseq,
            _ => return Err(Error::Parse(format!("unknown suite {s:?}"))),
        })
    }
}

/// Size limits and sampling for [`run_suite`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Limits {
    pub n_max: usize,
    pub m_max: usize,
    /// Algebras of larger dimension are sampled instead of swept exhaustively.
    pub exhaustive_dim: usize,
    pub samples: usize,
    pub seed: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { n_max: 2, m_max: 4, exhaustive_dim: 60, samples: 10_000, seed: 0 }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub limits: Limits,
    pub checks: Vec<Check>,
    pub criteria: Vec<CriterionReport>,
}

impl SuiteReport {
    pub fn pass(&self) -> bool {
        self.checks.iter().all(Check::pass) && self.criteria.iter().all(CriterionReport::pass)
    }
}

/// Runs a named suite. `Full` runs every acceptance criterion; the others sweep all
/// `K(n,m)` with `n ≤ n_max`, `1 ≤ m ≤ m_max` (or the braid-group analogue).
pub fn run_suite(suite: Suite, limits: Limits) -> Result<SuiteReport> {
    if limits.m_max == 0 {
        return Err(Error::InvalidParameters("m-max must be positive".into()));
    }
    let mut checks = Vec::new();
    let mut criteria = Vec::new();
    let sampling = |alg_dim: usize| {
        if alg_dim <= limits.exhaustive_dim {
            Sampling::Exhaustive
        } else {
            Sampling::Random { samples: limits.samples, seed: limits.seed }
        }
    };
    match suite {
        Suite::Full => {
            for id in 1..=CRITERIA.len() {
                criteria.push(criterion(id, limits.seed)?);
            }
        }
        Suite::Quick => {
            criteria.push(criterion(1, limits.seed)?);
            for (n, m) in [(1, 2), (1, 3), (2, 3)] {
                checks.extend(structure_at(n, m, Sampling::Exhaustive)?);
                checks.extend(modules_at(n, m)?);
            }
            checks.extend(isomorphisms_at(1, 3)?);
            checks.push(iso_check(QuotientMap::Bc { n: 1, m: 2 })?);
            checks.push(iso_check(QuotientMap::Be { n: 1, m: 2 })?);
            checks.push(cl_check(1, 2)?);
            checks.push(hh_diagonal_check(1, 2, 4, 2)?);
            checks.push(hh_diagonal_check(1, 3, 4, 2)?);
            checks.push(euler_check(2, 3)?);
            checks.push(euler_check(3, 2)?);
            checks.push(trivial_braid_check(2)?);
            checks.push(diagonal_check(2)?);
            checks.push(conjugation_check(&BraidWord::new(2, vec![1])?, &[1])?);
            checks.extend(ss_checks(&[BraidWord::new(2, vec![1])?])?);
            checks.push(semi_orthogonal_check(8));
        }
        Suite::Algebra => {
            for (n, m) in sizes(limits.n_max, limits.m_max) {
                let alg = ArcAlgebra::k(n, m)?;
                checks.extend(tagged(&format!("K({n},{m})"), structure_suite(&alg, sampling(alg.dim()))));
            }
        }
        Suite::Isomorphisms => {
            for (n, m) in sizes(limits.n_max, limits.m_max) {
                checks.extend(isomorphisms_at(n, m)?);
                checks.push(iso_check(QuotientMap::Be { n, m })?);
                if 2 * n <= m {
                    checks.push(iso_check(QuotientMap::Bc { n, m })?);
                }
                checks.push(cl_check(n, m)?);
            }
        }
        Suite::Modules => {
            for (n, m) in sizes(limits.n_max, limits.m_max) {
                checks.extend(modules_at(n, m)?);
            }
        }
        Suite::Hh => {
            for (n, m) in sizes(limits.n_max, limits.m_max) {
                checks.push(hh_diagonal_check(n, m, 4, 2)?);
            }
        }
        Suite::Khovanov => {
            for n in 1..=limits.n_max.max(1) {
                checks.push(euler_check(n, limits.m_max)?);
            }
        }
        Suite::Annular => {
            for n in 1..=limits.n_max.max(1) {
                checks.push(trivial_braid_check(n)?);
            }
            checks.push(diagonal_check(limits.n_max.max(1))?);
        }
        Suite::Sseq => {
            let ws: Vec<BraidWord> = (0..=limits.m_max.min(3))
                .flat_map(|len| BraidWord::new(2, vec![1; len]))
                .collect();
            checks.extend(ss_checks(&ws)?);
            checks.push(semi_orthogonal_check(limits.m_max));
        }
    }
    Ok(SuiteReport { suite, limits, checks, criteria })
}
