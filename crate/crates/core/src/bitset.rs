//! Subsets of a small ground set stored as machine words.
//!
//! Elements are 0-based internally; every user-facing format shifts them to
//! 1-based. A single `u128` covers ground sets of up to 128 elements, which is
//! the two-word layout: the low word handles the common `n <= 64` case and the
//! high word is only touched by larger instances.

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Largest ground set supported by [`ElemSet`].
pub const MAX_ELEMENTS: usize = 128;

/// A subset of `{0, .., n-1}`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct ElemSet(pub u128);

impl ElemSet {
    pub const EMPTY: ElemSet = ElemSet(0);

    /// The full set `{0, .., n-1}`.
    pub fn full(n: usize) -> Self {
        assert!(n <= MAX_ELEMENTS, "ground set of size {n} exceeds {MAX_ELEMENTS}");
        if n == MAX_ELEMENTS {
            ElemSet(u128::MAX)
        } else {
            ElemSet((1u128 << n) - 1)
        }
    }

    pub fn singleton(e: usize) -> Self {
        debug_assert!(e < MAX_ELEMENTS);
        ElemSet(1u128 << e)
    }

    pub fn from_elems<I: IntoIterator<Item = usize>>(elems: I) -> Self {
        elems.into_iter().fold(ElemSet::EMPTY, |s, e| s.with(e))
    }

    #[inline]
    pub fn contains(self, e: usize) -> bool {
        e < MAX_ELEMENTS && self.0 >> e & 1 == 1
    }

    #[inline]
    pub fn with(self, e: usize) -> Self {
        ElemSet(self.0 | 1u128 << e)
    }

    #[inline]
    pub fn without(self, e: usize) -> Self {
        ElemSet(self.0 & !(1u128 << e))
    }

    #[inline]
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn union(self, other: Self) -> Self {
        ElemSet(self.0 | other.0)
    }

    #[inline]
    pub fn intersection(self, other: Self) -> Self {
        ElemSet(self.0 & other.0)
    }

    #[inline]
    pub fn difference(self, other: Self) -> Self {
        ElemSet(self.0 & !other.0)
    }

    #[inline]
    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    #[inline]
    pub fn is_proper_subset(self, other: Self) -> bool {
        self.is_subset(other) && self != other
    }

    #[inline]
    pub fn intersects(self, other: Self) -> bool {
        self.0 & other.0 != 0
    }

    /// Smallest element, if any.
    pub fn first(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    pub fn iter(self) -> Elems {
        Elems(self.0)
    }

    /// Elements shifted to 1-based labels.
    pub fn to_one_based(self) -> Vec<usize> {
        self.iter().map(|e| e + 1).collect()
    }
}

impl fmt::Debug for ElemSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter().map(|e| e + 1)).finish()
    }
}

impl fmt::Display for ElemSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, e) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", e + 1)?;
        }
        write!(f, "}}")
    }
}

/// Serialized as a sorted list of 1-based labels.
impl Serialize for ElemSet {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.iter().map(|e| e + 1))
    }
}

impl<'de> Deserialize<'de> for ElemSet {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v = Vec::<usize>::deserialize(d)?;
        if let Some(bad) = v.iter().find(|&&e| e == 0 || e > MAX_ELEMENTS) {
            return Err(serde::de::Error::custom(format!("element {bad} outside 1..=128")));
        }
        Ok(ElemSet::from_elems(v.iter().map(|e| e - 1)))
    }
}

/// Iterator over the elements of an [`ElemSet`] in increasing order.
pub struct Elems(u128);

impl Iterator for Elems {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let e = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(e)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let k = self.0.count_ones() as usize;
        (k, Some(k))
    }
}

impl ExactSizeIterator for Elems {}

/// An ordered list of subsets of a common ground set.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct SetFamily {
    pub n: usize,
    pub sets: Vec<ElemSet>,
}

impl SetFamily {
    pub fn new(n: usize, sets: Vec<ElemSet>) -> Self {
        SetFamily { n, sets }
    }

    /// Builds a family from 1-based element lists, rejecting labels outside `1..=n`.
    pub fn from_one_based(n: usize, lists: &[Vec<usize>]) -> Result<Self, usize> {
        let mut sets = Vec::with_capacity(lists.len());
        for list in lists {
            let mut s = ElemSet::EMPTY;
            for &e in list {
                if e == 0 || e > n {
                    return Err(e);
                }
                s = s.with(e - 1);
            }
            sets.push(s);
        }
        Ok(SetFamily { n, sets })
    }

    pub fn to_one_based(&self) -> Vec<Vec<usize>> {
        self.sets.iter().map(|s| s.to_one_based()).collect()
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, ElemSet> {
        self.sets.iter()
    }

    pub fn union(&self) -> ElemSet {
        self.sets.iter().fold(ElemSet::EMPTY, |acc, s| acc.union(*s))
    }
}

/// Inclusion-maximal members of `sets`, deduplicated and sorted by
/// (size descending, bits ascending).
pub fn maximal_members(sets: &[ElemSet]) -> Vec<ElemSet> {
    let mut sorted: Vec<ElemSet> = sets.to_vec();
    sorted.sort_by(|a, b| b.len().cmp(&a.len()).then(a.cmp(b)));
    sorted.dedup();
    let mut kept: Vec<ElemSet> = Vec::new();
    for s in sorted {
        if !kept.iter().any(|k| s.is_subset(*k)) {
            kept.push(s);
        }
    }
    kept
}

/// All `k`-element subsets of `{0, .., n-1}`, ordered lexicographically by sorted index tuple.
pub fn k_subsets(n: usize, k: usize) -> Vec<ElemSet> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(ElemSet::from_elems(idx.iter().copied()));
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if idx[i] < n - k + i {
                idx[i] += 1;
                for j in i + 1..k {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_ops() {
        let a = ElemSet::from_elems([0, 2, 5]);
        let b = ElemSet::from_elems([2, 3]);
        assert_eq!(a.len(), 3);
        assert_eq!(a.intersection(b), ElemSet::singleton(2));
        assert_eq!(a.union(b).len(), 4);
        assert!(ElemSet::singleton(5).is_subset(a));
        assert_eq!(a.iter().collect::<Vec<_>>(), vec![0, 2, 5]);
        assert_eq!(a.to_string(), "{1,3,6}");
        assert_eq!(ElemSet::full(128).len(), 128);
        assert!(ElemSet::full(100).contains(99));
        assert!(!ElemSet::full(100).contains(100));
    }

    #[test]
    fn maximal_filter() {
        let sets = [
            ElemSet::from_elems([0]),
            ElemSet::from_elems([0, 1]),
            ElemSet::from_elems([2]),
            ElemSet::from_elems([0, 1]),
        ];
        let m = maximal_members(&sets);
        assert_eq!(m, vec![ElemSet::from_elems([0, 1]), ElemSet::from_elems([2])]);
    }

    #[test]
    fn subsets_count() {
        assert_eq!(k_subsets(6, 3).len(), 20);
        assert_eq!(k_subsets(4, 0), vec![ElemSet::EMPTY]);
        assert!(k_subsets(2, 3).is_empty());
        assert!(k_subsets(5, 2).iter().all(|s| s.len() == 2));
    }

    #[test]
    fn one_based_rejects_out_of_range() {
        assert_eq!(SetFamily::from_one_based(3, &[vec![1, 4]]), Err(4));
        assert_eq!(SetFamily::from_one_based(3, &[vec![0]]), Err(0));
        let f = SetFamily::from_one_based(3, &[vec![1, 3]]).unwrap();
        assert_eq!(f.to_one_based(), vec![vec![1, 3]]);
    }
}
