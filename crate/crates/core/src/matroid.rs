//! Matroids represented by their complete family of flats.
//!
//! A [`Matroid`] stores every flat as an [`ElemSet`] together with its rank,
//! sorted by `(rank, bits)`. Closures, ranks of arbitrary subsets, the lattice
//! of flats with its Möbius function, the characteristic polynomial and the
//! connected components are all derived from that family.

use std::collections::{HashMap, HashSet, VecDeque};

use thiserror::Error;

use crate::bitset::{ElemSet, SetFamily, MAX_ELEMENTS};
use crate::poly::IntPolynomial;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MatroidError {
    #[error("ground set must have at least one element")]
    EmptyGroundSet,
    #[error("ground set of size {0} exceeds the supported maximum of 128")]
    TooManyElements(usize),
    #[error("element {0} outside the ground set")]
    ElementOutOfRange(usize),
    #[error("the ground set itself is not listed as a flat")]
    MissingTop,
    #[error("flats {a} and {b} intersect in a set that is not a flat")]
    NotIntersectionClosed { a: ElemSet, b: ElemSet },
    #[error("the flats covering {flat} do not partition its complement")]
    BadPartition { flat: ElemSet },
    #[error("rank labels are not consistent along covering relations")]
    InconsistentRanks,
    #[error("edge {{{0},{1}}} appears more than once")]
    DuplicateEdge(usize, usize),
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("vertex {0} outside 1..={1}")]
    VertexOutOfRange(usize, usize),
    #[error("uniform matroid U({r},{n}) needs 0 <= r <= n")]
    BadUniform { r: usize, n: usize },
}

/// A matroid on `{0, .., n-1}` given by all of its flats.
#[derive(Clone, Debug)]
pub struct Matroid {
    n: usize,
    flats: Vec<ElemSet>,
    ranks: Vec<usize>,
    index: HashMap<ElemSet, usize>,
}

impl PartialEq for Matroid {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.flats == other.flats && self.ranks == other.ranks
    }
}

impl Eq for Matroid {}

fn check_ground(n: usize) -> Result<(), MatroidError> {
    if n == 0 {
        return Err(MatroidError::EmptyGroundSet);
    }
    if n > MAX_ELEMENTS {
        return Err(MatroidError::TooManyElements(n));
    }
    Ok(())
}

impl Matroid {
    /// Validates a flat family and computes ranks by chain depth above the
    /// bottom flat.
    pub fn from_flats(n: usize, family: &SetFamily) -> Result<Matroid, MatroidError> {
        check_ground(n)?;
        let top = ElemSet::full(n);
        let mut flats: Vec<ElemSet> = Vec::with_capacity(family.len());
        for &f in family.iter() {
            if let Some(e) = f.difference(top).first() {
                return Err(MatroidError::ElementOutOfRange(e + 1));
            }
            flats.push(f);
        }
        flats.sort_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)));
        flats.dedup();
        if !flats.contains(&top) {
            return Err(MatroidError::MissingTop);
        }
        let set: HashSet<ElemSet> = flats.iter().copied().collect();
        for (i, &a) in flats.iter().enumerate() {
            for &b in &flats[i + 1..] {
                if !set.contains(&a.intersection(b)) {
                    return Err(MatroidError::NotIntersectionClosed { a, b });
                }
            }
        }

        // Upward covers of each flat, found as closures of F + e. Disjointness of
        // the distinct closures is equivalent to the partition axiom.
        let pos: HashMap<ElemSet, usize> = flats.iter().enumerate().map(|(i, f)| (*f, i)).collect();
        let mut covers: Vec<Vec<usize>> = vec![Vec::new(); flats.len()];
        for (i, &f) in flats.iter().enumerate() {
            if f == top {
                continue;
            }
            let above: Vec<ElemSet> = flats.iter().copied().filter(|g| f.is_proper_subset(*g)).collect();
            let mut seen = ElemSet::EMPTY;
            for e in top.difference(f).iter() {
                if seen.contains(e) {
                    continue;
                }
                let cl = above
                    .iter()
                    .filter(|g| g.contains(e))
                    .fold(top, |acc, g| acc.intersection(*g));
                let part = cl.difference(f);
                if part.intersects(seen) {
                    return Err(MatroidError::BadPartition { flat: f });
                }
                seen = seen.union(part);
                covers[i].push(pos[&cl]);
            }
        }

        let mut ranks = vec![0usize; flats.len()];
        for i in 0..flats.len() {
            for &j in &covers[i] {
                ranks[j] = ranks[j].max(ranks[i] + 1);
            }
        }
        for i in 0..flats.len() {
            if covers[i].iter().any(|&j| ranks[j] != ranks[i] + 1) {
                return Err(MatroidError::InconsistentRanks);
            }
        }
        Ok(Self::from_ranked_flats(n, flats, ranks))
    }

    /// Builds the matroid whose closure operator is `closure`, enumerating flats
    /// breadth-first from the closure of the empty set. The BFS depth of a
    /// flat is its rank, since `cl(F + e)` covers `F` in a geometric lattice.
    pub(crate) fn from_closure<C>(n: usize, closure: C) -> Matroid
    where
        C: Fn(ElemSet) -> ElemSet,
    {
        let top = ElemSet::full(n);
        let bottom = closure(ElemSet::EMPTY);
        let mut rank_of: HashMap<ElemSet, usize> = HashMap::new();
        rank_of.insert(bottom, 0);
        let mut queue = VecDeque::from([bottom]);
        while let Some(f) = queue.pop_front() {
            let r = rank_of[&f];
            let mut seen = f;
            for e in top.difference(f).iter() {
                if seen.contains(e) {
                    continue;
                }
                let g = closure(f.with(e));
                seen = seen.union(g);
                if let std::collections::hash_map::Entry::Vacant(slot) = rank_of.entry(g) {
                    slot.insert(r + 1);
                    queue.push_back(g);
                }
            }
        }
        let (flats, ranks): (Vec<_>, Vec<_>) = rank_of.into_iter().unzip();
        Self::from_ranked_flats(n, flats, ranks)
    }

    /// Trusted constructor: flats and ranks already known to be a matroid.
    pub(crate) fn from_ranked_flats(n: usize, flats: Vec<ElemSet>, ranks: Vec<usize>) -> Matroid {
        let mut pairs: Vec<(usize, ElemSet)> = ranks.into_iter().zip(flats).collect();
        pairs.sort();
        pairs.dedup();
        let (ranks, flats): (Vec<_>, Vec<_>) = pairs.into_iter().unzip();
        let index = flats.iter().enumerate().map(|(i, f)| (*f, i)).collect();
        Matroid { n, flats, ranks, index }
    }

    /// Cycle matroid of a simple graph on vertices `0..vertices`; element `i`
    /// is `edges[i]`.
    pub fn from_graph(vertices: usize, edges: &[(usize, usize)]) -> Result<Matroid, MatroidError> {
        check_ground(edges.len())?;
        let mut seen = HashSet::new();
        for &(u, v) in edges {
            for w in [u, v] {
                if w >= vertices {
                    return Err(MatroidError::VertexOutOfRange(w + 1, vertices));
                }
            }
            if u == v {
                return Err(MatroidError::SelfLoop(u + 1));
            }
            if !seen.insert((u.min(v), u.max(v))) {
                return Err(MatroidError::DuplicateEdge(u.min(v) + 1, u.max(v) + 1));
            }
        }
        let edges = edges.to_vec();
        Ok(Self::from_closure(edges.len(), move |s| graphic_closure(vertices, &edges, s)))
    }

    /// Uniform matroid `U(r, n)`: flats are the sets of size `< r` and `E`.
    pub fn uniform(r: usize, n: usize) -> Result<Matroid, MatroidError> {
        check_ground(n)?;
        if r > n {
            return Err(MatroidError::BadUniform { r, n });
        }
        let top = ElemSet::full(n);
        let mut flats = Vec::new();
        let mut ranks = Vec::new();
        for k in 0..r.min(n + 1) {
            for s in crate::bitset::k_subsets(n, k) {
                flats.push(s);
                ranks.push(k);
            }
        }
        if r < n || !flats.contains(&top) {
            flats.push(top);
            ranks.push(r);
        }
        Ok(Self::from_ranked_flats(n, flats, ranks))
    }

    /// Boolean matroid `B_n`, every subset a flat.
    pub fn boolean(n: usize) -> Result<Matroid, MatroidError> {
        Self::uniform(n, n)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn ground(&self) -> ElemSet {
        ElemSet::full(self.n)
    }

    /// Rank of the matroid.
    pub fn rank(&self) -> usize {
        *self.ranks.last().expect("a matroid has at least one flat")
    }

    /// All flats, sorted by `(rank, bits)`.
    pub fn flats(&self) -> &[ElemSet] {
        &self.flats
    }

    pub fn flat_ranks(&self) -> &[usize] {
        &self.ranks
    }

    pub fn flat_index(&self, f: ElemSet) -> Option<usize> {
        self.index.get(&f).copied()
    }

    pub fn is_flat(&self, f: ElemSet) -> bool {
        self.index.contains_key(&f)
    }

    pub fn rank_of_flat(&self, f: ElemSet) -> Option<usize> {
        self.flat_index(f).map(|i| self.ranks[i])
    }

    /// Closure of the empty set (the loops).
    pub fn bottom(&self) -> ElemSet {
        self.flats[0]
    }

    pub fn has_loops(&self) -> bool {
        !self.bottom().is_empty()
    }

    /// Smallest flat containing `s`.
    pub fn closure(&self, s: ElemSet) -> ElemSet {
        self.flats
            .iter()
            .filter(|f| s.is_subset(**f))
            .fold(self.ground(), |acc, f| acc.intersection(*f))
    }

    pub fn rank_of_set(&self, s: ElemSet) -> usize {
        let cl = self.closure(s);
        self.ranks[self.index[&cl]]
    }

    pub fn is_independent(&self, s: ElemSet) -> bool {
        self.rank_of_set(s) == s.len()
    }

    pub fn flats_of_rank(&self, r: usize) -> impl Iterator<Item = ElemSet> + '_ {
        self.flats
            .iter()
            .zip(&self.ranks)
            .filter(move |(_, &k)| k == r)
            .map(|(f, _)| *f)
    }

    /// Flats of rank `rank - 1`.
    pub fn hyperplanes(&self) -> Vec<ElemSet> {
        match self.rank() {
            0 => Vec::new(),
            r => self.flats_of_rank(r - 1).collect(),
        }
    }

    /// Flats of rank 1.
    pub fn atoms(&self) -> Vec<ElemSet> {
        self.flats_of_rank(1).collect()
    }

    /// Proper flats (every flat except `E`).
    pub fn proper_flats(&self) -> Vec<ElemSet> {
        let top = self.ground();
        self.flats.iter().copied().filter(|f| *f != top).collect()
    }

    /// Greedy basis, scanning elements in increasing order.
    pub fn basis(&self) -> ElemSet {
        let mut b = ElemSet::EMPTY;
        let mut cl = self.bottom();
        for e in 0..self.n {
            if !cl.contains(e) {
                b = b.with(e);
                cl = self.closure(b);
            }
        }
        b
    }

    /// Restriction to a flat `x`: the matroid on `x` whose flats are the flats
    /// of `self` contained in `x`, relabelled onto `0..|x|`.
    pub fn restrict_to_flat(&self, x: ElemSet) -> Option<Matroid> {
        self.flat_index(x)?;
        let elems: Vec<usize> = x.iter().collect();
        let relabel = |f: ElemSet| ElemSet::from_elems(elems.iter().enumerate().filter(|(_, &e)| f.contains(e)).map(|(i, _)| i));
        let (flats, ranks) = self
            .flats
            .iter()
            .zip(&self.ranks)
            .filter(|(f, _)| f.is_subset(x))
            .map(|(f, r)| (relabel(*f), *r))
            .unzip();
        Some(Self::from_ranked_flats(elems.len(), flats, ranks))
    }

    /// Lattice of flats with covering relations and Möbius values `μ(0̂, F)`.
    pub fn lattice(&self) -> FlatLattice {
        let m = self.flats.len();
        let mut covers = vec![Vec::new(); m];
        for (i, up) in covers.iter_mut().enumerate() {
            for j in i + 1..m {
                if self.ranks[j] == self.ranks[i] + 1 && self.flats[i].is_subset(self.flats[j]) {
                    up.push(j);
                }
            }
        }
        let mut mobius = vec![0i64; m];
        mobius[0] = 1;
        for j in 1..m {
            let fj = self.flats[j];
            let s: i64 = (0..j)
                .filter(|&i| self.ranks[i] < self.ranks[j] && self.flats[i].is_subset(fj))
                .map(|i| mobius[i])
                .sum();
            mobius[j] = -s;
        }
        FlatLattice {
            elements: self.flats.clone(),
            ranks: self.ranks.clone(),
            covers,
            mobius,
        }
    }

    /// `χ(t) = Σ_F μ(0̂, F) t^{rank(M) - rank(F)}`; zero when the matroid has loops.
    pub fn characteristic_polynomial(&self) -> IntPolynomial {
        if self.has_loops() {
            return IntPolynomial::zero();
        }
        let lattice = self.lattice();
        let r = self.rank();
        lattice
            .mobius
            .iter()
            .zip(&lattice.ranks)
            .map(|(&mu, &k)| IntPolynomial::monomial(r - k, mu))
            .sum()
    }

    /// Connected components, each a separator of the matroid, sorted by their
    /// smallest element.
    ///
    /// Elements are joined when they lie on a common fundamental circuit with
    /// respect to a fixed basis; these circuits generate the same equivalence
    /// relation as all circuits.
    pub fn connected_components(&self) -> Vec<ElemSet> {
        let basis = self.basis();
        let mut parent: Vec<usize> = (0..self.n).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            let mut y = x;
            while p[y] != r {
                let next = p[y];
                p[y] = r;
                y = next;
            }
            r
        }
        let loops = self.bottom();
        let hulls: Vec<(usize, ElemSet)> = basis.iter().map(|b| (b, self.closure(basis.without(b)))).collect();
        for x in self.ground().difference(basis).difference(loops).iter() {
            for &(b, hull) in &hulls {
                if !hull.contains(x) {
                    let (rx, rb) = (find(&mut parent, x), find(&mut parent, b));
                    parent[rx] = rb;
                }
            }
        }
        let mut groups: HashMap<usize, ElemSet> = HashMap::new();
        for e in 0..self.n {
            let r = find(&mut parent, e);
            let g = groups.entry(r).or_default();
            *g = g.with(e);
        }
        let mut comps: Vec<ElemSet> = groups.into_values().collect();
        comps.sort_by_key(|c| c.first());
        comps
    }

    pub fn component_count(&self) -> usize {
        self.connected_components().len()
    }

    pub fn is_connected(&self) -> bool {
        self.component_count() == 1
    }

    /// Flats as 1-based element lists, in canonical order.
    pub fn flats_one_based(&self) -> Vec<Vec<usize>> {
        self.flats.iter().map(|f| f.to_one_based()).collect()
    }
}

/// Closure in the cycle matroid: all edges whose endpoints are joined by `s`.
pub(crate) fn graphic_closure(vertices: usize, edges: &[(usize, usize)], s: ElemSet) -> ElemSet {
    let mut parent: Vec<usize> = (0..vertices).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        p[x] = r;
        r
    }
    for e in s.iter() {
        let (u, v) = edges[e];
        let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
        parent[ru] = rv;
    }
    let mut out = ElemSet::EMPTY;
    for (i, &(u, v)) in edges.iter().enumerate() {
        if find(&mut parent, u) == find(&mut parent, v) {
            out = out.with(i);
        }
    }
    out
}

/// The lattice of flats ordered by inclusion.
#[derive(Clone, Debug)]
pub struct FlatLattice {
    /// Flats sorted by `(rank, bits)`; index 0 is the bottom, the last is `E`.
    pub elements: Vec<ElemSet>,
    pub ranks: Vec<usize>,
    /// `covers[i]` lists the indices of flats covering `elements[i]`.
    pub covers: Vec<Vec<usize>>,
    /// `mobius[i] = μ(0̂, elements[i])`.
    pub mobius: Vec<i64>,
}

impl FlatLattice {
    pub fn bottom(&self) -> ElemSet {
        self.elements[0]
    }

    pub fn top(&self) -> ElemSet {
        *self.elements.last().unwrap()
    }

    pub fn mobius_of_top(&self) -> i64 {
        *self.mobius.last().unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fam(n: usize, lists: &[&[usize]]) -> SetFamily {
        let v: Vec<Vec<usize>> = lists.iter().map(|l| l.to_vec()).collect();
        SetFamily::from_one_based(n, &v).unwrap()
    }

    fn all_subsets(n: usize) -> SetFamily {
        SetFamily::new(n, (0..1u128 << n).map(ElemSet).collect())
    }

    #[test]
    fn boolean_from_flats() {
        let m = Matroid::from_flats(3, &all_subsets(3)).unwrap();
        assert_eq!(m.rank(), 3);
        assert_eq!(m.flats().len(), 8);
        assert_eq!(m, Matroid::boolean(3).unwrap());
    }

    #[test]
    fn u23_from_flats() {
        let m = Matroid::from_flats(3, &fam(3, &[&[], &[1], &[2], &[3], &[1, 2, 3]])).unwrap();
        assert_eq!(m.rank(), 2);
        assert_eq!(m, Matroid::uniform(2, 3).unwrap());
    }

    #[test]
    fn rejects_bad_families() {
        let err = Matroid::from_flats(3, &fam(3, &[&[], &[1], &[1, 2, 3]])).unwrap_err();
        assert!(matches!(
            err,
            MatroidError::BadPartition { .. } | MatroidError::NotIntersectionClosed { .. }
        ));
        let err = Matroid::from_flats(3, &fam(3, &[&[], &[1, 2], &[2, 3], &[1, 2, 3]])).unwrap_err();
        assert!(matches!(err, MatroidError::NotIntersectionClosed { .. }));
        assert_eq!(Matroid::from_flats(3, &fam(3, &[&[], &[1]])).unwrap_err(), MatroidError::MissingTop);
        assert_eq!(
            Matroid::from_flats(0, &SetFamily::default()).unwrap_err(),
            MatroidError::EmptyGroundSet
        );
    }

    #[test]
    fn graphs() {
        let k3 = Matroid::from_graph(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        assert_eq!(k3, Matroid::uniform(2, 3).unwrap());
        let p3 = Matroid::from_graph(3, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(p3, Matroid::boolean(2).unwrap());
        let k4 = Matroid::from_graph(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        assert_eq!(k4.rank(), 3);
        // partition lattice of a 4-set: Bell(4) flats
        assert_eq!(k4.flats().len(), 15);
        assert_eq!(Matroid::from_graph(2, &[(0, 0)]).unwrap_err(), MatroidError::SelfLoop(1));
        assert_eq!(
            Matroid::from_graph(3, &[(0, 1), (1, 0)]).unwrap_err(),
            MatroidError::DuplicateEdge(1, 2)
        );
    }

    #[test]
    fn characteristic_polynomials() {
        assert_eq!(Matroid::uniform(2, 3).unwrap().characteristic_polynomial().coeffs(), &[2, -3, 1]);
        assert_eq!(Matroid::boolean(3).unwrap().characteristic_polynomial().coeffs(), &[-1, 3, -3, 1]);
        let k4 = Matroid::from_graph(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        assert_eq!(k4.characteristic_polynomial().coeffs(), &[-6, 11, -6, 1]);
    }

    #[test]
    fn loops_give_zero_characteristic_polynomial() {
        // element 1 is a loop: every flat contains it
        let m = Matroid::from_flats(2, &fam(2, &[&[1], &[1, 2]])).unwrap();
        assert!(m.has_loops());
        assert_eq!(m.rank(), 1);
        assert!(m.characteristic_polynomial().is_zero());
    }

    #[test]
    fn mobius_values() {
        assert_eq!(Matroid::uniform(2, 3).unwrap().lattice().mobius_of_top(), 2);
        assert_eq!(Matroid::boolean(2).unwrap().lattice().mobius_of_top(), 1);
        let l = Matroid::boolean(1).unwrap().lattice();
        assert_eq!(l.elements.len(), 2);
        assert_eq!(l.mobius_of_top(), -1);
    }

    #[test]
    fn components() {
        assert_eq!(Matroid::uniform(2, 3).unwrap().component_count(), 1);
        assert_eq!(Matroid::boolean(3).unwrap().component_count(), 3);
        let p3 = Matroid::from_graph(3, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(p3.component_count(), 2);
    }

    #[test]
    fn closure_and_rank() {
        let k4 = Matroid::from_graph(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        // edges 01 and 12 close up to the triangle 01,02,12
        let cl = k4.closure(ElemSet::from_elems([0, 3]));
        assert_eq!(cl, ElemSet::from_elems([0, 1, 3]));
        assert_eq!(k4.rank_of_set(ElemSet::from_elems([0, 3, 5])), 3);
        assert_eq!(k4.hyperplanes().len(), 7);
        assert_eq!(k4.atoms().len(), 6);
    }

    #[test]
    fn restriction() {
        let k4 = Matroid::from_graph(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        let tri = ElemSet::from_elems([0, 1, 3]);
        let r = k4.restrict_to_flat(tri).unwrap();
        assert_eq!(r, Matroid::uniform(2, 3).unwrap());
        assert!(k4.restrict_to_flat(ElemSet::from_elems([0, 1])).is_none());
    }
}
