#![allow(dead_code)]

use mcb_core::cover::Witness;
use mcb_core::{ElemSet, Matroid};

fn covers(cands: &[ElemSet], start: usize, left: usize, acc: ElemSet, target: ElemSet) -> bool {
    if target.is_subset(acc) {
        return true;
    }
    if left == 0 {
        return false;
    }
    (start..cands.len()).any(|i| covers(cands, i + 1, left - 1, acc.union(cands[i]), target))
}

/// Fewest members of `cands` (at least one) whose union contains `target`,
/// by trying every subfamily in order of size.
pub fn brute_min_cover(target: ElemSet, cands: &[ElemSet]) -> Option<usize> {
    let all = cands.iter().fold(ElemSet::EMPTY, |a, c| a.union(*c));
    if cands.is_empty() || !target.is_subset(all) {
        return None;
    }
    (1..=cands.len()).find(|&k| covers(cands, 0, k, ElemSet::EMPTY, target))
}

/// Every proper flat avoiding `p`, not only hyperplanes.
pub fn brute_min_cover_avoiding(m: &Matroid, p: usize) -> Option<usize> {
    let cands: Vec<ElemSet> = m.flats().iter().copied().filter(|f| *f != m.ground() && !f.contains(p)).collect();
    brute_min_cover(m.ground().without(p), &cands)
}

pub fn brute_is_mcb(m: &Matroid, a: usize) -> bool {
    (0..m.n()).all(|p| brute_min_cover_avoiding(m, p).is_none_or(|k| k > a))
}

/// A witness is valid when its members are proper flats avoiding `p` whose
/// union is everything else.
pub fn valid_matroid_witness(m: &Matroid, w: &Witness) -> bool {
    !w.members.is_empty()
        && w.members.iter().all(|f| m.is_flat(*f) && *f != m.ground() && !f.contains(w.avoid))
        && w.union() == m.ground().without(w.avoid)
}

pub fn valid_family_witness(n: usize, family: &[ElemSet], w: &Witness) -> bool {
    !w.members.is_empty()
        && w.members.iter().all(|s| family.contains(s) && !s.contains(w.avoid))
        && w.union() == ElemSet::full(n).without(w.avoid)
}
