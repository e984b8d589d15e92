//! Exact minimum set cover and the MCB(a) decision procedure built on it.
//!
//! MCB(a) fails exactly when, for some element `p`, at most `a` members of the
//! family avoiding `p` have union `[n] \ {p}`. Any member may be swapped for
//! a maximal `p`-avoiding superset without touching `p`, so each query is a
//! minimum set cover of `[n] \ {p}` by the maximal `p`-avoiding members.

use std::fmt;
use std::sync::atomic::{AtomicUsize, Ordering};

use rayon::prelude::*;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::bitset::{maximal_members, ElemSet, SetFamily};
use crate::matroid::Matroid;

/// A degree that may be infinite. `Finite` values sort before `Infinite`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Degree {
    Finite(usize),
    Infinite,
}

impl Degree {
    pub fn finite(self) -> Option<usize> {
        match self {
            Degree::Finite(k) => Some(k),
            Degree::Infinite => None,
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, Degree::Finite(_))
    }
}

impl From<Option<usize>> for Degree {
    fn from(v: Option<usize>) -> Self {
        v.map_or(Degree::Infinite, Degree::Finite)
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::Finite(k) => write!(f, "{k}"),
            Degree::Infinite => write!(f, "inf"),
        }
    }
}

/// Serialized as a JSON integer, or the string `"inf"`.
impl Serialize for Degree {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Degree::Finite(k) => s.serialize_u64(*k as u64),
            Degree::Infinite => s.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for Degree {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Int(u64),
            Str(String),
        }
        match Raw::deserialize(d)? {
            Raw::Int(k) => Ok(Degree::Finite(k as usize)),
            Raw::Str(s) if s == "inf" => Ok(Degree::Infinite),
            Raw::Str(s) => Err(serde::de::Error::custom(format!("bad degree {s:?}"))),
        }
    }
}

/// Minimum number of `candidates` whose union contains `universe`, together
/// with an optimal choice. Returns `None` when no cover exists, or when
/// `limit` is given and every cover needs more than `limit` members.
///
/// `hints` are sets whose intersections with the candidates are small; each
/// one gives the bound `|T ∩ U| / max_S |S ∩ T ∩ U|`.
pub fn min_cover(
    universe: ElemSet,
    candidates: &[ElemSet],
    hints: &[ElemSet],
    limit: Option<usize>,
) -> Option<Vec<ElemSet>> {
    cover_search(universe, candidates, false, hints, limit)
}

fn cover_search(
    universe: ElemSet,
    candidates: &[ElemSet],
    antichain: bool,
    hints: &[ElemSet],
    limit: Option<usize>,
) -> Option<Vec<ElemSet>> {
    if universe.is_empty() {
        return Some(Vec::new());
    }
    let inside = candidates.iter().all(|c| c.is_subset(universe));
    let (reduced, originals) = if antichain && inside {
        let mut sets: Vec<ElemSet> = candidates.iter().copied().filter(|c| !c.is_empty()).collect();
        sets.sort_by(|a, b| b.len().cmp(&a.len()).then(a.cmp(b)));
        (sets.clone(), sets)
    } else {
        let restricted: Vec<ElemSet> = candidates
            .iter()
            .map(|c| c.intersection(universe))
            .filter(|c| !c.is_empty())
            .collect();
        let reduced = maximal_members(&restricted);
        // map each reduced set back to one original candidate containing it
        let originals: Vec<ElemSet> = reduced
            .iter()
            .map(|r| {
                *candidates
                    .iter()
                    .filter(|c| r.is_subset(**c))
                    .min_by(|a, b| b.len().cmp(&a.len()).then(a.cmp(b)))
                    .unwrap()
            })
            .collect();
        (reduced, originals)
    };
    let reach = reduced.iter().fold(ElemSet::EMPTY, |a, c| a.union(*c));
    if !universe.is_subset(reach) {
        return None;
    }
    let mut hint_sets: Vec<ElemSet> = hints
        .iter()
        .map(|h| h.intersection(universe))
        .filter(|h| h.len() > 1)
        .collect();
    hint_sets.sort_by(|a, b| b.len().cmp(&a.len()).then(a.cmp(b)));
    hint_sets.dedup();
    hint_sets.truncate(4);

    let mut search = Search::new(universe, reduced, hint_sets);
    // The search only records covers strictly smaller than `best`; starting one
    // above the greedy size makes the answer independent of the greedy cover.
    let cap = limit.map_or(usize::MAX, |l| l.saturating_add(1));
    search.best = (search.greedy() + 1).min(cap);
    search.dfs(universe, &mut Vec::new());
    search
        .solution
        .map(|sol| sol.into_iter().map(|i| originals[i]).collect())
}

struct Search {
    sets: Vec<ElemSet>,
    containing: Vec<Vec<usize>>,
    neighbours: Vec<ElemSet>,
    hints: Vec<ElemSet>,
    best: usize,
    solution: Option<Vec<usize>>,
}

impl Search {
    fn new(universe: ElemSet, sets: Vec<ElemSet>, hints: Vec<ElemSet>) -> Self {
        let top = universe.iter().last().map_or(0, |e| e + 1);
        let mut containing = vec![Vec::new(); top];
        let mut neighbours = vec![ElemSet::EMPTY; top];
        for (i, s) in sets.iter().enumerate() {
            for e in s.iter() {
                containing[e].push(i);
                neighbours[e] = neighbours[e].union(*s);
            }
        }
        Search { sets, containing, neighbours, hints, best: usize::MAX, solution: None }
    }

    fn greedy(&self) -> usize {
        let mut unc = self.sets.iter().fold(ElemSet::EMPTY, |a, s| a.union(*s));
        let mut k = 0;
        while !unc.is_empty() {
            let gain = self.sets.iter().map(|s| s.intersection(unc).len()).max().unwrap_or(0);
            let pick = self.sets.iter().find(|s| s.intersection(unc).len() == gain).unwrap();
            unc = unc.difference(*pick);
            k += 1;
        }
        k
    }

    fn lower_bound(&self, unc: ElemSet) -> usize {
        let k = unc.len();
        let cover_of = |s: &ElemSet| s.intersection(unc).len();
        let max_cov = self.sets.iter().map(cover_of).max().unwrap_or(0);
        if max_cov == 0 {
            return usize::MAX;
        }
        let mut lb = k.div_ceil(max_cov);

        // Elements sharing no candidate each need their own set.
        let mut blocked = ElemSet::EMPTY;
        let mut packed = 0;
        let mut reach = 0;
        for e in unc.iter() {
            if blocked.contains(e) {
                continue;
            }
            packed += 1;
            blocked = blocked.union(self.neighbours[e]);
            reach += self.containing[e].iter().map(|&i| cover_of(&self.sets[i])).max().unwrap_or(0);
        }
        lb = lb.max(packed + k.saturating_sub(reach).div_ceil(max_cov));

        for h in &self.hints {
            let t = h.intersection(unc);
            if t.is_empty() {
                continue;
            }
            let m = self.sets.iter().map(|s| s.intersection(t).len()).max().unwrap_or(0);
            if m == 0 {
                return usize::MAX;
            }
            lb = lb.max(t.len().div_ceil(m));
        }
        lb
    }

    fn dfs(&mut self, unc: ElemSet, chosen: &mut Vec<usize>) {
        if unc.is_empty() {
            if chosen.len() < self.best {
                self.best = chosen.len();
                self.solution = Some(chosen.clone());
            }
            return;
        }
        let lb = self.lower_bound(unc);
        if lb == usize::MAX || chosen.len() + lb >= self.best {
            return;
        }
        let pivot = unc
            .iter()
            .min_by_key(|&e| (self.containing[e].len(), e))
            .unwrap();
        let mut options: Vec<usize> = self.containing[pivot].clone();
        options.sort_by(|&a, &b| {
            let (sa, sb) = (self.sets[a], self.sets[b]);
            sb.intersection(unc)
                .len()
                .cmp(&sa.intersection(unc).len())
                .then(sa.cmp(&sb))
        });
        for i in options {
            chosen.push(i);
            self.dfs(unc.difference(self.sets[i]), chosen);
            chosen.pop();
            if chosen.len() + 1 >= self.best {
                break;
            }
        }
    }
}

/// A cover of `[n] \ {avoid}` by members avoiding `avoid`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub avoid: usize,
    pub members: Vec<ElemSet>,
}

impl Witness {
    pub fn union(&self) -> ElemSet {
        self.members.iter().fold(ElemSet::EMPTY, |a, m| a.union(*m))
    }
}

#[derive(Serialize, Deserialize)]
struct WitnessJson {
    p: usize,
    members: Vec<Vec<usize>>,
}

impl Serialize for Witness {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        WitnessJson {
            p: self.avoid + 1,
            members: self.members.iter().map(|m| m.to_one_based()).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Witness {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let w = WitnessJson::deserialize(d)?;
        if w.p == 0 || w.members.iter().flatten().any(|&e| e == 0) {
            return Err(serde::de::Error::custom("elements are 1-based"));
        }
        Ok(Witness {
            avoid: w.p - 1,
            members: w
                .members
                .iter()
                .map(|m| ElemSet::from_elems(m.iter().map(|e| e - 1)))
                .collect(),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct McbReport {
    pub holds: bool,
    pub witness: Option<Witness>,
    pub degree_queried: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct McbProfile {
    pub min_failure_degree: Degree,
    pub min_nontrivial_degree: Degree,
    /// An optimal failure cover, for the largest `p` attaining the minimum.
    pub failure_witness: Option<Witness>,
}

/// Maximal members of `family` that avoid `p`.
pub fn avoiding_members(family: &[ElemSet], p: usize) -> Vec<ElemSet> {
    let avoiding: Vec<ElemSet> = family.iter().copied().filter(|s| !s.contains(p)).collect();
    maximal_members(&avoiding)
}

/// Exact minimum number of `p`-avoiding members of `family` whose union is
/// `[n] \ {p}`, with an optimal cover. At least one member is always used,
/// so for `n = 1` a single member avoiding `p` counts as a cover.
pub fn min_cover_avoiding(n: usize, family: &SetFamily, p: usize) -> Option<Vec<ElemSet>> {
    McbEngine::for_family(n, &family.sets).min_cover_avoiding(p, None)
}

/// MCB queries over a fixed family of proper subsets of `[n]`.
#[derive(Clone, Debug)]
pub struct McbEngine {
    n: usize,
    family: Vec<ElemSet>,
    antichain: bool,
}

impl McbEngine {
    /// Proper members only; `[n]` itself never witnesses a failure.
    pub fn for_family(n: usize, family: &[ElemSet]) -> Self {
        let top = ElemSet::full(n);
        let mut family: Vec<ElemSet> = family.iter().copied().filter(|s| *s != top).collect();
        family.sort();
        family.dedup();
        let antichain = maximal_members(&family).len() == family.len();
        McbEngine { n, family, antichain }
    }

    /// Every proper flat lies in a hyperplane avoiding the same elements, so
    /// hyperplanes suffice.
    pub fn for_matroid(m: &Matroid) -> Self {
        Self::for_family(m.n(), &m.hyperplanes())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn family(&self) -> &[ElemSet] {
        &self.family
    }

    pub fn min_cover_avoiding(&self, p: usize, limit: Option<usize>) -> Option<Vec<ElemSet>> {
        let universe = ElemSet::full(self.n).without(p);
        let cands: Vec<ElemSet> = if self.antichain {
            self.family.iter().copied().filter(|s| !s.contains(p)).collect()
        } else {
            avoiding_members(&self.family, p)
        };
        if universe.is_empty() {
            return cands.first().map(|c| vec![*c]);
        }
        let hints: Vec<ElemSet> = self.family.iter().copied().filter(|s| s.contains(p)).collect();
        let mut cover = cover_search(universe, &cands, self.antichain, &hints, limit)?;
        cover.sort();
        Some(cover)
    }

    /// Minimum number of members whose union is all of `[n]`.
    pub fn min_cover_of_ground(&self) -> Option<Vec<ElemSet>> {
        let cands = maximal_members(&self.family);
        let mut cover = cover_search(ElemSet::full(self.n), &cands, true, &[], None)?;
        cover.sort();
        Some(cover)
    }

    pub fn is_mcb(&self, a: usize) -> McbReport {
        assert!(a >= 1, "MCB degree must be positive");
        let witness = (0..self.n).rev().find_map(|p| {
            self.min_cover_avoiding(p, Some(a))
                .map(|members| Witness { avoid: p, members })
        });
        McbReport { holds: witness.is_none(), witness, degree_queried: a }
    }

    /// Optimal failure cover over all `p`; ties go to the largest `p`.
    pub fn min_failure(&self) -> Option<Witness> {
        let best = AtomicUsize::new(usize::MAX);
        let found: Vec<Option<Witness>> = (0..self.n)
            .into_par_iter()
            .map(|p| {
                let limit = best.load(Ordering::Relaxed);
                let cover = self.min_cover_avoiding(p, (limit != usize::MAX).then_some(limit))?;
                best.fetch_min(cover.len(), Ordering::Relaxed);
                Some(Witness { avoid: p, members: cover })
            })
            .collect();
        found
            .into_iter()
            .flatten()
            .min_by(|a, b| a.members.len().cmp(&b.members.len()).then(b.avoid.cmp(&a.avoid)))
    }

    pub fn min_failure_degree(&self) -> Degree {
        self.min_failure().map(|w| w.members.len()).into()
    }

    /// Least `a` such that some `a` members contain `[n] \ {p}` for some `p`.
    pub fn min_nontrivial_degree(&self) -> Degree {
        self.profile().min_nontrivial_degree
    }

    pub fn profile(&self) -> McbProfile {
        let failure = self.min_failure();
        let fail_deg: Degree = failure.as_ref().map(|w| w.members.len()).into();
        let ground: Degree = self.min_cover_of_ground().map(|c| c.len()).into();
        McbProfile {
            min_failure_degree: fail_deg,
            min_nontrivial_degree: fail_deg.min(ground),
            failure_witness: failure,
        }
    }
}

pub fn is_mcb(m: &Matroid, a: usize) -> McbReport {
    McbEngine::for_matroid(m).is_mcb(a)
}

pub fn min_failure_degree(m: &Matroid) -> Degree {
    McbEngine::for_matroid(m).min_failure_degree()
}

pub fn min_nontrivial_degree(m: &Matroid) -> Degree {
    McbEngine::for_matroid(m).min_nontrivial_degree()
}

pub fn mcb_profile(m: &Matroid) -> McbProfile {
    McbEngine::for_matroid(m).profile()
}
