//! Building sets on `[n]` and their MCB data.
//!
//! A building set contains every singleton and the union of any two of its
//! members that intersect. The facets of the associated nestohedron come
//! from the maximal members of `B \ {[n]}`, so MCB questions reduce to covers
//! by those members.

use std::collections::HashSet;

use serde::Serialize;
use thiserror::Error;

use crate::bitset::{maximal_members, ElemSet, SetFamily, MAX_ELEMENTS};
use crate::cover::{McbEngine, McbProfile, McbReport};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum NestError {
    #[error("ground set must have between 1 and 128 elements, got {0}")]
    BadGroundSet(usize),
    #[error("building set members must be nonempty")]
    EmptyMember,
    #[error("member {0} is not contained in the ground set")]
    OutOfRange(ElemSet),
    #[error("singleton {0} is missing")]
    MissingSingleton(ElemSet),
    #[error("{a} and {b} intersect but their union is not a member")]
    NotUnionClosed { a: ElemSet, b: ElemSet },
    #[error("the ground set is not a member, so the building set is not connected")]
    NotConnected,
}

/// A validated building set, members sorted by `(size, bits)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BuildingSet {
    n: usize,
    members: Vec<ElemSet>,
}

fn sort_members(members: &mut Vec<ElemSet>) {
    members.sort_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)));
    members.dedup();
}

fn check_members(n: usize, family: &[ElemSet]) -> Result<(), NestError> {
    if n == 0 || n > MAX_ELEMENTS {
        return Err(NestError::BadGroundSet(n));
    }
    let top = ElemSet::full(n);
    for &s in family {
        if s.is_empty() {
            return Err(NestError::EmptyMember);
        }
        if !s.is_subset(top) {
            return Err(NestError::OutOfRange(s));
        }
    }
    Ok(())
}

impl BuildingSet {
    /// Validates `family` as a building set without adding anything.
    pub fn new(n: usize, family: &SetFamily) -> Result<BuildingSet, NestError> {
        check_members(n, &family.sets)?;
        let mut members = family.sets.clone();
        sort_members(&mut members);
        let present: HashSet<ElemSet> = members.iter().copied().collect();
        for e in 0..n {
            if !present.contains(&ElemSet::singleton(e)) {
                return Err(NestError::MissingSingleton(ElemSet::singleton(e)));
            }
        }
        for (i, &a) in members.iter().enumerate() {
            for &b in &members[i + 1..] {
                if a.intersects(b) && !present.contains(&a.union(b)) {
                    return Err(NestError::NotUnionClosed { a, b });
                }
            }
        }
        Ok(BuildingSet { n, members })
    }

    /// Smallest building set containing `family`: add the singletons, then
    /// add unions of intersecting members until nothing changes.
    pub fn closure(n: usize, family: &SetFamily) -> Result<BuildingSet, NestError> {
        check_members(n, &family.sets)?;
        let mut present: HashSet<ElemSet> = family.sets.iter().copied().collect();
        present.extend((0..n).map(ElemSet::singleton));
        let mut members: Vec<ElemSet> = present.iter().copied().collect();
        sort_members(&mut members);
        let mut i = 0;
        while i < members.len() {
            let a = members[i];
            for j in 0..i {
                let b = members[j];
                let u = a.union(b);
                if a.intersects(b) && present.insert(u) {
                    members.push(u);
                }
            }
            i += 1;
        }
        sort_members(&mut members);
        Ok(BuildingSet { n, members })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn members(&self) -> &[ElemSet] {
        &self.members
    }

    pub fn to_family(&self) -> SetFamily {
        SetFamily::new(self.n, self.members.clone())
    }

    pub fn contains(&self, s: ElemSet) -> bool {
        self.members.binary_search_by(|m| m.len().cmp(&s.len()).then(m.cmp(&s))).is_ok()
    }

    pub fn is_connected(&self) -> bool {
        self.contains(ElemSet::full(self.n))
    }

    /// Members other than `[n]`.
    pub fn proper_members(&self) -> Vec<ElemSet> {
        let top = ElemSet::full(self.n);
        self.members.iter().copied().filter(|m| *m != top).collect()
    }

    /// Inclusion-maximal members of `B \ {[n]}`.
    pub fn bmax(&self) -> Vec<ElemSet> {
        maximal_members(&self.proper_members())
    }

    pub fn engine(&self) -> McbEngine {
        McbEngine::for_family(self.n, &self.members)
    }

    pub fn mcb(&self, a: usize) -> McbReport {
        self.engine().is_mcb(a)
    }

    pub fn profile(&self) -> McbProfile {
        self.engine().profile()
    }

    /// For each `I` in `BMax`, the number of maximal members strictly inside `I`;
    /// the predicate holds when every count is at least 2.
    pub fn nestmcb_predicate(&self) -> Result<PredicateReport, NestError> {
        if !self.is_connected() {
            return Err(NestError::NotConnected);
        }
        let counts: Vec<(ElemSet, usize)> = self
            .bmax()
            .into_iter()
            .map(|i| {
                let inside: Vec<ElemSet> = self.members.iter().copied().filter(|j| j.is_proper_subset(i)).collect();
                (i, maximal_members(&inside).len())
            })
            .collect();
        Ok(PredicateReport { holds: counts.iter().all(|(_, c)| *c >= 2), counts })
    }

    /// Connected components of the intersection graph on `BMax`.
    pub fn components(&self) -> Result<ComponentReport, NestError> {
        if !self.is_connected() {
            return Err(NestError::NotConnected);
        }
        // blocks stay pairwise disjoint; a new member absorbs every block it meets
        let mut blocks: Vec<ElemSet> = Vec::new();
        for m in self.bmax() {
            let (touching, rest): (Vec<ElemSet>, Vec<ElemSet>) = blocks.into_iter().partition(|b| b.intersects(m));
            blocks = rest;
            blocks.push(touching.into_iter().fold(m, ElemSet::union));
        }
        blocks.sort_by_key(|b| b.first());
        Ok(ComponentReport { count: blocks.len(), n_minus_c: self.n - blocks.len(), components: blocks })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PredicateReport {
    pub holds: bool,
    pub counts: Vec<(ElemSet, usize)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComponentReport {
    pub count: usize,
    pub n_minus_c: usize,
    pub components: Vec<ElemSet>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cover::Degree;

    fn fam(n: usize, lists: &[&[usize]]) -> SetFamily {
        let v: Vec<Vec<usize>> = lists.iter().map(|l| l.to_vec()).collect();
        SetFamily::from_one_based(n, &v).unwrap()
    }

    fn all_nonempty(n: usize) -> BuildingSet {
        BuildingSet::new(n, &SetFamily::new(n, (1..1u128 << n).map(ElemSet).collect())).unwrap()
    }

    #[test]
    fn closure_examples() {
        let b = BuildingSet::closure(3, &fam(3, &[&[1, 2], &[2, 3]])).unwrap();
        assert_eq!(b.members().len(), 6);
        assert!(b.is_connected());
        let b = BuildingSet::closure(3, &fam(3, &[&[1], &[2]])).unwrap();
        assert_eq!(b.members().len(), 3);
        let b = BuildingSet::closure(4, &fam(4, &[&[1, 2], &[2, 3], &[3, 4]])).unwrap();
        let expect = fam(4, &[&[1], &[2], &[3], &[4], &[1, 2], &[2, 3], &[3, 4], &[1, 2, 3], &[2, 3, 4], &[1, 2, 3, 4]]);
        assert_eq!(b, BuildingSet::new(4, &expect).unwrap());
        assert_eq!(BuildingSet::closure(2, &fam(2, &[&[]])).unwrap_err(), NestError::EmptyMember);
    }

    #[test]
    fn validation() {
        assert!(matches!(
            BuildingSet::new(3, &fam(3, &[&[1], &[2], &[3], &[1, 2], &[2, 3]])),
            Err(NestError::NotUnionClosed { .. })
        ));
        assert!(matches!(BuildingSet::new(2, &fam(2, &[&[1]])), Err(NestError::MissingSingleton(_))));
    }

    #[test]
    fn mcb_examples() {
        let r = all_nonempty(3).mcb(1);
        assert!(!r.holds);
        let w = r.witness.unwrap();
        assert_eq!((w.avoid, w.members.clone()), (2, vec![ElemSet::from_elems([0, 1])]));

        let b = BuildingSet::new(3, &fam(3, &[&[1], &[2], &[3], &[1, 2, 3]])).unwrap();
        assert!(b.mcb(1).holds);
        let b = BuildingSet::new(3, &fam(3, &[&[1], &[2], &[3], &[1, 2], &[1, 2, 3]])).unwrap();
        assert!(!b.mcb(1).holds);
    }

    #[test]
    fn predicate_examples() {
        assert!(all_nonempty(3).nestmcb_predicate().unwrap().holds);
        let b = BuildingSet::new(3, &fam(3, &[&[1], &[2], &[3], &[1, 2], &[1, 2, 3]])).unwrap();
        let p = b.nestmcb_predicate().unwrap();
        assert!(!p.holds);
        assert_eq!(p.counts, vec![(ElemSet::from_elems([0, 1]), 2), (ElemSet::singleton(2), 0)]);
        let b = BuildingSet::new(2, &fam(2, &[&[1], &[2], &[1, 2]])).unwrap();
        assert!(!b.nestmcb_predicate().unwrap().holds);
        let b = BuildingSet::new(2, &fam(2, &[&[1], &[2]])).unwrap();
        assert_eq!(b.nestmcb_predicate().unwrap_err(), NestError::NotConnected);
    }

    #[test]
    fn component_examples() {
        let c = all_nonempty(3).components().unwrap();
        assert_eq!((c.count, c.n_minus_c), (1, 2));
        let b = BuildingSet::new(2, &fam(2, &[&[1], &[2], &[1, 2]])).unwrap();
        assert_eq!(b.components().unwrap().count, 2);
        let b = BuildingSet::new(3, &fam(3, &[&[1], &[2], &[3], &[1, 2], &[1, 2, 3]])).unwrap();
        assert_eq!(b.components().unwrap().count, 2);
    }

    #[test]
    fn bmax_of_chain_closure() {
        let b = BuildingSet::closure(4, &fam(4, &[&[1, 2], &[2, 3], &[3, 4]])).unwrap();
        assert_eq!(b.bmax(), vec![ElemSet::from_elems([0, 1, 2]), ElemSet::from_elems([1, 2, 3])]);
        assert_eq!(b.profile().min_failure_degree, Degree::Finite(1));
    }
}
