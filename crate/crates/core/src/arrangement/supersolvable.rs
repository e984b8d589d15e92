//! Supersolvable lattices of flats, pencil extensions and the split-based
//! MCB evaluation.
//!
//! A coatom `X` of a geometric lattice is modular when every line spanned by
//! two atoms outside `X` meets `X` in an atom. A lattice is supersolvable
//! when it has a maximal chain of modular elements; we search for one from
//! the top down, trying coatoms in canonical order and backtracking.

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;

use super::{same_subspace, Arrangement, ArrangementError};
use crate::bitset::ElemSet;
use crate::cover::{min_cover, McbEngine, McbReport};
use crate::linalg::{self, primitive_integer_vector};
use crate::matroid::Matroid;
use crate::poly::IntPolynomial;

/// A modular chain `0̂ = V_0 < V_1 < ... < V_d = E` with its e-vector.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SupersolvableChain {
    pub chain: Vec<ElemSet>,
    /// `e[i-1]` = atoms below `V_i` but not below `V_{i-1}`.
    pub e: Vec<usize>,
}

impl SupersolvableChain {
    pub fn rank(&self) -> usize {
        self.e.len()
    }

    /// The split at level `i` (1-based): `A_0 = V_{i-1}` and `A_1 = V_i \ V_{i-1}`.
    pub fn split(&self, i: usize) -> (ElemSet, ElemSet) {
        (self.chain[i - 1], self.chain[i].difference(self.chain[i - 1]))
    }

    /// `Π (t - e_i)`.
    pub fn product_polynomial(&self) -> IntPolynomial {
        self.e.iter().map(|&e| IntPolynomial::linear_factor(e as i64)).product()
    }
}

fn atoms_within(m: &Matroid, x: ElemSet) -> Vec<ElemSet> {
    m.atoms().into_iter().filter(|a| a.is_subset(x)).collect()
}

/// Whether the flat `y` of rank `rk(x) - 1` is modular in the interval below `x`.
pub fn is_modular_coatom(m: &Matroid, x: ElemSet, y: ElemSet) -> bool {
    let bottom = m.bottom();
    let outside: Vec<ElemSet> = atoms_within(m, x).into_iter().filter(|a| !a.is_subset(y)).collect();
    for (i, p) in outside.iter().enumerate() {
        for q in &outside[i + 1..] {
            let line = m.closure(p.union(*q));
            if line.intersection(y) == bottom {
                return false;
            }
        }
    }
    true
}

/// First modular chain found, or `None` if the lattice is not supersolvable.
pub fn supersolvable_decompose(m: &Matroid) -> Option<SupersolvableChain> {
    let mut chain = find_chain(m, m.ground())?;
    chain.reverse();
    let mut e = Vec::new();
    for w in chain.windows(2) {
        e.push(atoms_within(m, w[1]).len() - atoms_within(m, w[0]).len());
    }
    Some(SupersolvableChain { chain, e })
}

/// Modular chain below the flat `x`, listed from `x` downwards.
fn find_chain(m: &Matroid, x: ElemSet) -> Option<Vec<ElemSet>> {
    let r = m.rank_of_flat(x).expect("x is a flat");
    if r == 0 {
        return Some(vec![x]);
    }
    if r <= 2 {
        let mut chain = vec![x];
        if r == 2 {
            chain.push(atoms_within(m, x)[0]);
        }
        chain.push(m.bottom());
        return Some(chain);
    }
    for y in m.flats_of_rank(r - 1).filter(|y| y.is_subset(x)) {
        if is_modular_coatom(m, x, y) {
            if let Some(mut below) = find_chain(m, y) {
                below.insert(0, x);
                return Some(below);
            }
        }
    }
    None
}

pub fn decompose_arrangement(a: &Arrangement) -> Result<SupersolvableChain, ArrangementError> {
    supersolvable_decompose(&a.matroid()).ok_or(ArrangementError::NotSupersolvable)
}

/// Result of appending a pencil of hyperplanes.
#[derive(Clone, Debug)]
pub struct PencilExtension {
    pub arrangement: Arrangement,
    /// Indices of the appended hyperplanes.
    pub added: Vec<usize>,
    /// For each appended `R`: `R ∩ Ω_{u-1} = Ω_u`, where `Ω_{u-1}` is the
    /// intersection of the old hyperplanes and `Ω_u` that of all of them.
    pub invariant: Vec<bool>,
}

/// Appends `count` hyperplanes through `W = H ∩ {w · x = 0}`, `H` the
/// hyperplane `host` of `a0`. Their normals `w + j·h` span a plane through
/// `h`, so any two of them meet inside `H`. `w` may carry one extra
/// coordinate, in which case `a0` is lifted into the larger space first.
pub fn extend_by_pencil(
    a0: &Arrangement,
    host: usize,
    direction: &[BigRational],
    count: usize,
) -> Result<PencilExtension, ArrangementError> {
    if host >= a0.len() {
        return Err(ArrangementError::BadSubspace(format!("host hyperplane {host} does not exist")));
    }
    if decompose_arrangement(a0).is_err() {
        return Err(ArrangementError::NotSupersolvable);
    }
    let base = match direction.len() {
        d if d == a0.dim() => a0.clone(),
        d if d == a0.dim() + 1 => a0.lift(d),
        d => {
            return Err(ArrangementError::BadSubspace(format!(
                "direction has {d} coordinates, ambient dimension is {}",
                a0.dim()
            )))
        }
    };
    if count == 0 {
        return Ok(PencilExtension { arrangement: base, added: Vec::new(), invariant: Vec::new() });
    }
    let w = primitive_integer_vector(direction);
    let span = linalg::span_of(base.normals(), base.dim());
    if linalg::in_span(&span, &w) {
        return Err(ArrangementError::BadSubspace(
            "the pencil would contain the common line of the base arrangement".into(),
        ));
    }
    let h = &base.normals()[host];
    let mut normals = base.normals().to_vec();
    for j in 0..count {
        let jj = BigInt::from(j);
        normals.push(w.iter().zip(h).map(|(wi, hi)| wi + &jj * hi).collect());
    }
    let arrangement = Arrangement::from_integer_normals(base.dim(), normals)?;
    let old = base.normals();
    let all = arrangement.normals();
    let added: Vec<usize> = (old.len()..all.len()).collect();
    let invariant = added
        .iter()
        .map(|&r| {
            let mut with_r = old.to_vec();
            with_r.push(all[r].clone());
            same_subspace(&with_r, all, arrangement.dim())
        })
        .collect();
    Ok(PencilExtension { arrangement, added, invariant })
}

/// Comparison of the direct MCB answer with evaluations along the split
/// `A = A_0 ⊔ A_1` of the top level of the modular chain.
#[derive(Clone, Debug, Serialize)]
pub struct RecursiveMcbReport {
    pub degree: usize,
    /// Answer of the direct engine; this is the reported result.
    pub direct: McbReport,
    /// Covers split into flats inside `A_0` and flats meeting `A_1`, each
    /// part covering its own side, the `A_0` side evaluated recursively.
    pub disjoint_reading_holds: bool,
    /// Flats meeting `A_1` may also cover elements of `A_0`; `None` when the
    /// enumeration of `P_1` exceeded its budget.
    pub shared_reading_holds: Option<bool>,
    /// `M|A_1` and `M|(A_0 \ B_0)` satisfy MCB(k) for every `1 <= k <= a`.
    pub sufficient_condition: bool,
    pub b0: ElemSet,
}

impl RecursiveMcbReport {
    pub fn disjoint_matches(&self) -> bool {
        self.disjoint_reading_holds == self.direct.holds
    }

    pub fn shared_matches(&self) -> Option<bool> {
        self.shared_reading_holds.map(|h| h == self.direct.holds)
    }

    /// The sufficient condition is contradicted when it holds but MCB fails.
    pub fn sufficient_condition_sound(&self) -> bool {
        !self.sufficient_condition || self.direct.holds
    }
}

const SHARED_BUDGET: usize = 200_000;

pub fn supersolvable_mcb_recursive(a: &Arrangement, degree: usize) -> Result<RecursiveMcbReport, ArrangementError> {
    let m = a.matroid();
    let chain = supersolvable_decompose(&m).ok_or(ArrangementError::NotSupersolvable)?;
    Ok(recursive_report(&m, &chain, degree))
}

pub fn recursive_report(m: &Matroid, chain: &SupersolvableChain, degree: usize) -> RecursiveMcbReport {
    let direct = McbEngine::for_matroid(m).is_mcb(degree);
    let d = chain.rank();
    let (a0, a1) = if d >= 1 { chain.split(d) } else { (ElemSet::EMPTY, ElemSet::EMPTY) };
    let b0 = b0_set(m, a0, a1);

    let disjoint = (0..m.n())
        .filter_map(|p| disjoint_cover(m, chain, d, p))
        .min()
        .is_none_or(|c| c > degree);
    let shared = shared_reading(m, a0, a1, degree);
    let sufficient = (1..=degree).all(|k| {
        restricted_mcb(m, a1, k) && (a0.difference(b0).is_empty() || restricted_mcb(m, a0.difference(b0), k))
    });
    RecursiveMcbReport {
        degree,
        direct,
        disjoint_reading_holds: disjoint,
        shared_reading_holds: shared,
        sufficient_condition: sufficient,
        b0,
    }
}

/// Elements of `A_0` lying on the span of two elements of `A_1`.
fn b0_set(m: &Matroid, a0: ElemSet, a1: ElemSet) -> ElemSet {
    let elems: Vec<usize> = a1.iter().collect();
    let mut b0 = ElemSet::EMPTY;
    for (i, &x) in elems.iter().enumerate() {
        for &y in &elems[i + 1..] {
            b0 = b0.union(m.closure(ElemSet::from_elems([x, y])).intersection(a0));
        }
    }
    b0
}

fn hyperplanes_within(m: &Matroid, v: ElemSet) -> Vec<ElemSet> {
    let r = m.rank_of_flat(v).expect("v is a flat");
    if r == 0 {
        return Vec::new();
    }
    m.flats_of_rank(r - 1).filter(|f| f.is_subset(v)).collect()
}

/// Minimum number of flats of `M|V_level` avoiding `p` with union
/// `V_level \ {p}`, where at each level flats inside `V_{level-1}` cover that
/// part and the remaining flats cover the new elements.
fn disjoint_cover(m: &Matroid, chain: &SupersolvableChain, level: usize, p: usize) -> Option<usize> {
    let v = chain.chain[level];
    if !v.contains(p) {
        return None;
    }
    let flats = hyperplanes_within(m, v);
    let avoiding: Vec<ElemSet> = flats.iter().copied().filter(|f| !f.contains(p)).collect();
    if level <= 2 {
        let universe = v.without(p);
        return if universe.is_empty() {
            (!avoiding.is_empty()).then_some(1)
        } else {
            min_cover(universe, &avoiding, &[], None).map(|c| c.len().max(1))
        };
    }
    let (x, new) = chain.split(level);
    if x.contains(p) {
        let below = disjoint_cover(m, chain, level - 1, p)?;
        let top = min_cover(new, &avoiding, &[], None)?;
        Some(below + top.len())
    } else {
        // A_0 itself is a flat avoiding p
        let rest = new.without(p);
        let top = if rest.is_empty() { 0 } else { min_cover(rest, &avoiding, &[], None)?.len() };
        Some(1 + top)
    }
}

/// Exhaustive over collections `P_1` of flats meeting `A_1`, with the rest of
/// `A_0` covered by flats inside `A_0`.
fn shared_reading(m: &Matroid, a0: ElemSet, a1: ElemSet, degree: usize) -> Option<bool> {
    let hyper = m.hyperplanes();
    let inner = if a0.is_empty() { Vec::new() } else { hyperplanes_within(m, a0) };
    let mut budget = SHARED_BUDGET;
    for p in 0..m.n() {
        let target = m.ground().without(p);
        let meeting: Vec<ElemSet> = hyper.iter().copied().filter(|h| !h.contains(p) && h.intersects(a1)).collect();
        let inside: Vec<ElemSet> = if a0.contains(p) {
            inner.iter().copied().filter(|f| !f.contains(p)).collect()
        } else {
            vec![a0]
        };
        let mut chosen = Vec::new();
        match shared_search(&meeting, &inside, target, a1, degree, 0, &mut chosen, &mut budget) {
            Some(true) => return Some(false),
            Some(false) => {}
            None => return None,
        }
    }
    Some(true)
}

/// `Some(true)` when a failure cover exists, `None` when out of budget.
#[allow(clippy::too_many_arguments)]
fn shared_search(
    meeting: &[ElemSet],
    inside: &[ElemSet],
    target: ElemSet,
    a1: ElemSet,
    degree: usize,
    start: usize,
    chosen: &mut Vec<ElemSet>,
    budget: &mut usize,
) -> Option<bool> {
    if *budget == 0 {
        return None;
    }
    *budget -= 1;
    let covered = chosen.iter().fold(ElemSet::EMPTY, |acc, f| acc.union(*f));
    if target.intersection(a1).is_subset(covered) {
        let k = chosen.len();
        let rest = target.difference(covered);
        let used = if rest.is_empty() {
            (k > 0 || !inside.is_empty() || !meeting.is_empty()).then_some(k.max(1))
        } else if k < degree {
            min_cover(rest, inside, &[], Some(degree - k)).map(|c| k + c.len())
        } else {
            None
        };
        if used.is_some_and(|u| u <= degree) {
            return Some(true);
        }
    }
    if chosen.len() == degree {
        return Some(false);
    }
    for i in start..meeting.len() {
        chosen.push(meeting[i]);
        let r = shared_search(meeting, inside, target, a1, degree, i + 1, chosen, budget);
        chosen.pop();
        match r {
            Some(false) => {}
            other => return other,
        }
    }
    Some(false)
}

/// MCB(k) of the restriction `M|S` (flats `F ∩ S`).
fn restricted_mcb(m: &Matroid, s: ElemSet, k: usize) -> bool {
    let elems: Vec<usize> = s.iter().collect();
    let relabel = |f: ElemSet| ElemSet::from_elems(elems.iter().enumerate().filter(|(_, &e)| f.contains(e)).map(|(i, _)| i));
    let mut flats: Vec<ElemSet> = m.flats().iter().map(|f| relabel(f.intersection(s))).collect();
    flats.sort();
    flats.dedup();
    McbEngine::for_family(elems.len(), &flats).is_mcb(k).holds
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::graphic::Graph;

    fn q(v: &[i64]) -> Vec<BigRational> {
        v.iter().map(|&x| BigRational::from_integer(x.into())).collect()
    }

    #[test]
    fn braid_k4() {
        let c = decompose_arrangement(&Arrangement::braid(4)).unwrap();
        assert_eq!(c.e, vec![1, 2, 3]);
        assert_eq!(c.product_polynomial(), Arrangement::braid(4).characteristic_polynomial());
    }

    #[test]
    fn four_cycle_is_not_supersolvable() {
        let c4 = Graph::new(4, &[(0, 1), (1, 2), (2, 3), (0, 3)]).unwrap();
        assert_eq!(decompose_arrangement(&c4.arrangement()).unwrap_err(), ArrangementError::NotSupersolvable);
    }

    #[test]
    fn rank_two_pencils() {
        for k in 2..6 {
            let normals: Vec<Vec<i64>> = (0..k).map(|j| vec![1, j]).collect();
            let c = decompose_arrangement(&Arrangement::from_i64(2, &normals).unwrap()).unwrap();
            assert_eq!(c.e, vec![1, k as usize - 1]);
        }
    }

    #[test]
    fn pencil_extension_factors() {
        let a0 = Arrangement::coordinate(3);
        let ext = extend_by_pencil(&a0, 0, &q(&[0, 0, 0, 1]), 2).unwrap();
        let a = &ext.arrangement;
        assert_eq!(a.dim(), 4);
        assert_eq!(a.len(), 5);
        assert!(ext.invariant.iter().all(|&b| b));
        let c = decompose_arrangement(a).unwrap();
        assert_eq!(c.e, vec![1, 1, 1, 2]);
        let expect = a0.characteristic_polynomial() * IntPolynomial::linear_factor(2);
        assert_eq!(a.characteristic_polynomial(), expect);

        let twice = extend_by_pencil(a, 4, &q(&[1, 0, 0, 0, 1]), 3).unwrap();
        assert_eq!(decompose_arrangement(&twice.arrangement).unwrap().e, vec![1, 1, 1, 2, 3]);

        let same = extend_by_pencil(&a0, 1, &q(&[0, 0, 0]), 0).unwrap();
        assert_eq!(same.arrangement, a0);
    }

    #[test]
    fn pencil_rejects_bad_direction() {
        let a0 = Arrangement::from_i64(3, &[vec![1, 0, 0], vec![0, 1, 0]]).unwrap();
        let err = extend_by_pencil(&a0, 0, &q(&[1, 1, 0]), 2).unwrap_err();
        assert!(matches!(err, ArrangementError::BadSubspace(_)));
        assert!(extend_by_pencil(&a0, 0, &q(&[0, 0, 1]), 2).is_ok());
    }

    #[test]
    fn recursive_examples() {
        let k3 = Arrangement::braid(3);
        let r = supersolvable_mcb_recursive(&k3, 2).unwrap();
        assert!(!r.direct.holds);
        let pencil = Arrangement::from_i64(2, &[vec![1, 0], vec![0, 1], vec![1, 1], vec![1, 2]]).unwrap();
        let r = supersolvable_mcb_recursive(&pencil, 1).unwrap();
        assert!(r.direct.holds);
        assert_eq!(r.shared_matches(), Some(true));
    }
}
