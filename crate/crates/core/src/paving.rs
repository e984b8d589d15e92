//! Paving matroids from m-partitions.
//!
//! A paving matroid of rank `m + 1` on `[n]` is determined by a family of
//! blocks of size at least `m` such that every `m`-subset lies in exactly one
//! block. Its flats are the sets of size below `m`, the blocks (the
//! hyperplanes), and the ground set.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::bitset::{k_subsets, ElemSet, MAX_ELEMENTS};
use crate::linalg::format_rational;
use crate::matroid::Matroid;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PavingError {
    #[error("bad parameters: {0}")]
    BadParameters(String),
    #[error("block {0} has fewer than m elements")]
    BlockTooSmall(ElemSet),
    #[error("block {0} is not contained in the ground set")]
    OutOfRange(ElemSet),
    #[error("a block equal to the whole ground set leaves no room for rank m + 1")]
    BlockIsGround,
    #[error("blocks {a} and {b} share at least m elements")]
    DoublyCovered { a: ElemSet, b: ElemSet },
    #[error("the m-subset {0} lies in no block")]
    UncoveredMSet(ElemSet),
    #[error("designated blocks do not cover the ground set")]
    NotACover,
    #[error("{0} is not a block")]
    NotABlock(ElemSet),
    #[error("largest/smallest designated block ratio {max}/{min} is not below C = {c}")]
    RatioViolated { max: usize, min: usize, c: usize },
}

fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::from(0);
    }
    let k = k.min(n - k);
    (0..k).fold(BigInt::from(1), |acc, i| acc * BigInt::from(n - i) / BigInt::from(i + 1))
}

/// A validated m-partition of `[n]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PavingBlocks {
    n: usize,
    m: usize,
    blocks: Vec<ElemSet>,
}

impl PavingBlocks {
    pub fn new(n: usize, m: usize, blocks: &[ElemSet]) -> Result<Self, PavingError> {
        if n == 0 || n > MAX_ELEMENTS || m == 0 || m >= n {
            return Err(PavingError::BadParameters(format!("need 1 <= m < n <= 128, got n={n}, m={m}")));
        }
        let top = ElemSet::full(n);
        let mut blocks = blocks.to_vec();
        blocks.sort_by(|a, b| b.len().cmp(&a.len()).then(a.cmp(b)));
        blocks.dedup();
        for &b in &blocks {
            if !b.is_subset(top) {
                return Err(PavingError::OutOfRange(b));
            }
            if b.len() < m {
                return Err(PavingError::BlockTooSmall(b));
            }
            if b == top {
                return Err(PavingError::BlockIsGround);
            }
        }
        for (i, &a) in blocks.iter().enumerate() {
            for &b in &blocks[i + 1..] {
                if a.intersection(b).len() >= m {
                    return Err(PavingError::DoublyCovered { a, b });
                }
            }
        }
        // with no m-subset covered twice, coverage is a counting question
        let covered: BigInt = blocks.iter().map(|b| binomial(b.len(), m)).sum();
        if covered != binomial(n, m) {
            let missing = first_uncovered(n, m, &blocks).expect("count mismatch implies a gap");
            return Err(PavingError::UncoveredMSet(missing));
        }
        Ok(PavingBlocks { n, m, blocks })
    }

    /// Adds every uncovered `m`-subset as a block of its own, then validates.
    pub fn complete(n: usize, m: usize, blocks: &[ElemSet]) -> Result<Self, PavingError> {
        if m == 0 || m >= n || n > MAX_ELEMENTS {
            return Err(PavingError::BadParameters(format!("need 1 <= m < n <= 128, got n={n}, m={m}")));
        }
        let mut all = blocks.to_vec();
        for s in k_subsets(n, m) {
            if !blocks.iter().any(|b| s.is_subset(*b)) {
                all.push(s);
            }
        }
        Self::new(n, m, &all)
    }

    /// Disjoint designated blocks of the given sizes on consecutive elements,
    /// completed by `m`-subsets.
    pub fn partitioned(m: usize, sizes: &[usize]) -> Result<Self, PavingError> {
        let n: usize = sizes.iter().sum();
        let mut start = 0;
        let mut blocks = Vec::new();
        for &s in sizes {
            blocks.push(ElemSet::from_elems(start..start + s));
            start += s;
        }
        Self::complete(n, m, &blocks)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// Blocks sorted by size descending, then bits.
    pub fn blocks(&self) -> &[ElemSet] {
        &self.blocks
    }

    pub fn matroid(&self) -> Matroid {
        let mut flats = Vec::new();
        let mut ranks = Vec::new();
        for k in 0..self.m {
            for s in k_subsets(self.n, k) {
                flats.push(s);
                ranks.push(k);
            }
        }
        flats.extend(self.blocks.iter().copied());
        ranks.extend(std::iter::repeat_n(self.m, self.blocks.len()));
        flats.push(ElemSet::full(self.n));
        ranks.push(self.m + 1);
        Matroid::from_ranked_flats(self.n, flats, ranks)
    }

    fn check_designated(&self, designated: &[ElemSet]) -> Result<(), PavingError> {
        for d in designated {
            if !self.blocks.contains(d) {
                return Err(PavingError::NotABlock(*d));
            }
        }
        let union = designated.iter().fold(ElemSet::EMPTY, |a, b| a.union(*b));
        if union != ElemSet::full(self.n) {
            return Err(PavingError::NotACover);
        }
        Ok(())
    }

    /// Largest `A` with `A < 1 + (k - 1) min|H_i| / (k (m - 1))`.
    pub fn bound_part2(&self, designated: &[ElemSet]) -> Result<Part2Bound, PavingError> {
        self.check_designated(designated)?;
        let min = designated.iter().map(|b| b.len()).min().unwrap_or(0);
        part2_bound(designated.len(), min, self.m)
    }
}

fn first_uncovered(n: usize, m: usize, blocks: &[ElemSet]) -> Option<ElemSet> {
    k_subsets(n, m).into_iter().find(|s| !blocks.iter().any(|b| s.is_subset(*b)))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Part2Bound {
    /// `1 + (k - 1) min / (k (m - 1))` as an exact rational.
    pub threshold: String,
    /// Largest integer strictly below the threshold.
    pub max_degree: usize,
}

pub fn part2_bound(k: usize, min_size: usize, m: usize) -> Result<Part2Bound, PavingError> {
    if m < 2 || k == 0 {
        return Err(PavingError::BadParameters(format!("need m >= 2 and k >= 1, got m={m}, k={k}")));
    }
    let t = BigRational::from_integer(1.into())
        + BigRational::new(BigInt::from((k - 1) * min_size), BigInt::from(k * (m - 1)));
    let a: BigInt = t.ceil().to_integer() - 1;
    Ok(Part2Bound { threshold: format_rational(&t), max_degree: a.to_usize().unwrap_or(0) })
}

/// Parameters of the large-block family: `k` designated blocks of the given
/// sizes on `[n]`, rank `m + 1`, ratio bound `C`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PavingFamilyParams {
    pub n: usize,
    pub m: usize,
    pub k: usize,
    pub c: usize,
    pub sizes: Vec<usize>,
}

/// Factor turning the asymptotic hypothesis into `n / (C k² (m-1)) >= 4k`.
pub const REGIME_FACTOR: usize = 4;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Part1Bound {
    /// `k - 1 + n / (2 C k² (m - 1))` as an exact rational.
    pub value: String,
    pub max_degree: usize,
    pub in_regime: bool,
    pub regime_factor: usize,
}

pub fn pav_bound_part1(p: &PavingFamilyParams) -> Result<Part1Bound, PavingError> {
    if p.m < 2 || p.k == 0 || p.c == 0 {
        return Err(PavingError::BadParameters(format!("need m >= 2, k >= 1, C >= 1, got m={}, k={}, C={}", p.m, p.k, p.c)));
    }
    if let (Some(&max), Some(&min)) = (p.sizes.iter().max(), p.sizes.iter().min()) {
        if max >= p.c * min {
            return Err(PavingError::RatioViolated { max, min, c: p.c });
        }
    }
    let denom = p.c * p.k * p.k * (p.m - 1);
    let v = BigRational::from_integer(BigInt::from(p.k - 1)) + BigRational::new(BigInt::from(p.n), BigInt::from(2 * denom));
    let max_degree = v.floor().to_integer().to_usize().unwrap_or(0);
    Ok(Part1Bound {
        value: format_rational(&v),
        max_degree,
        in_regime: p.n >= REGIME_FACTOR * p.k * denom,
        regime_factor: REGIME_FACTOR,
    })
}

/// Sparse paving matroid from a seeded greedy choice of `(m+1)`-subsets with
/// pairwise intersections below `m`.
pub fn random_sparse_paving(n: usize, m: usize, seed: u64) -> Result<PavingBlocks, PavingError> {
    if m < 2 || n <= m || n > MAX_ELEMENTS {
        return Err(PavingError::BadParameters(format!("need 2 <= m < n <= 128, got n={n}, m={m}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    const CAP: usize = 20_000;
    let total = binomial(n, m + 1);
    let candidates: Vec<ElemSet> = if total <= BigInt::from(CAP) {
        let mut all = k_subsets(n, m + 1);
        all.shuffle(&mut rng);
        all
    } else {
        (0..CAP)
            .map(|_| {
                let mut idx: Vec<usize> = (0..n).collect();
                let (chosen, _) = idx.partial_shuffle(&mut rng, m + 1);
                ElemSet::from_elems(chosen.iter().copied())
            })
            .collect()
    };
    let top = ElemSet::full(n);
    let mut blocks: Vec<ElemSet> = Vec::new();
    for c in candidates {
        if c != top && blocks.iter().all(|b| b.intersection(c).len() < m) {
            blocks.push(c);
        }
    }
    PavingBlocks::complete(n, m, &blocks)
}

/// Fano plane as a 2-partition of `[7]`.
pub fn fano() -> PavingBlocks {
    let lines: [[usize; 3]; 7] = [[0, 1, 2], [0, 3, 4], [0, 5, 6], [1, 3, 5], [1, 4, 6], [2, 3, 6], [2, 4, 5]];
    let blocks: Vec<ElemSet> = lines.iter().map(|l| ElemSet::from_elems(l.iter().copied())).collect();
    PavingBlocks::new(7, 2, &blocks).expect("Fano lines form a 2-partition")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cover::{Degree, McbEngine};

    fn set(v: &[usize]) -> ElemSet {
        ElemSet::from_elems(v.iter().map(|e| e - 1))
    }

    #[test]
    fn validation_examples() {
        let f = fano();
        let m = f.matroid();
        assert_eq!(m.rank(), 3);
        assert_eq!(m.hyperplanes().len(), 7);
        let small = PavingBlocks::new(4, 2, &[set(&[1, 2, 3]), set(&[1, 4]), set(&[2, 4]), set(&[3, 4])]).unwrap();
        assert_eq!(small.matroid().rank(), 3);
        assert_eq!(
            PavingBlocks::new(3, 2, &[set(&[1, 2]), set(&[2, 3])]).unwrap_err(),
            PavingError::UncoveredMSet(set(&[1, 3]))
        );
        assert!(matches!(
            PavingBlocks::new(4, 2, &[set(&[1, 2, 3]), set(&[1, 2, 4]), set(&[3, 4])]),
            Err(PavingError::DoublyCovered { .. })
        ));
    }

    #[test]
    fn paving_matroid_is_valid() {
        let f = fano().matroid();
        let again = Matroid::from_flats(7, &crate::bitset::SetFamily::new(7, f.flats().to_vec())).unwrap();
        assert_eq!(again, f);
    }

    #[test]
    fn covers() {
        let e = McbEngine::for_matroid(&fano().matroid());
        assert_eq!(e.min_cover_of_ground().unwrap().len(), 3);
        assert_eq!(e.min_failure_degree(), Degree::Finite(3));
        let small = PavingBlocks::new(4, 2, &[set(&[1, 2, 3]), set(&[1, 4]), set(&[2, 4]), set(&[3, 4])]).unwrap();
        assert_eq!(McbEngine::for_matroid(&small.matroid()).min_cover_of_ground().unwrap().len(), 2);
    }

    #[test]
    fn bounds() {
        assert_eq!(part2_bound(3, 12, 3).unwrap().max_degree, 4);
        assert_eq!(part2_bound(2, 2, 2).unwrap().max_degree, 1);
        let p = |n, k, c, m| PavingFamilyParams { n, m, k, c, sizes: Vec::new() };
        let b = pav_bound_part1(&p(36, 3, 2, 3)).unwrap();
        assert_eq!((b.value.as_str(), b.max_degree), ("5/2", 2));
        assert_eq!(pav_bound_part1(&p(12, 2, 2, 2)).unwrap().max_degree, 1);
        assert!(pav_bound_part1(&p(64, 2, 2, 2)).unwrap().in_regime);
        assert!(!pav_bound_part1(&p(7, 3, 2, 2)).unwrap().in_regime);
        let ratio = PavingFamilyParams { n: 10, m: 2, k: 2, c: 2, sizes: vec![3, 7] };
        assert!(matches!(pav_bound_part1(&ratio), Err(PavingError::RatioViolated { .. })));
    }

    #[test]
    fn designated_blocks() {
        let inst = PavingBlocks::partitioned(3, &[12, 12, 12]).unwrap();
        assert_eq!(inst.n(), 36);
        let big: Vec<ElemSet> = inst.blocks()[..3].to_vec();
        assert_eq!(inst.bound_part2(&big).unwrap().max_degree, 4);
        assert_eq!(inst.bound_part2(&big[..2]).unwrap_err(), PavingError::NotACover);
    }

    #[test]
    fn random_generation() {
        let a = random_sparse_paving(7, 2, 1).unwrap();
        assert_eq!(a, random_sparse_paving(7, 2, 1).unwrap());
        assert!(a.blocks().iter().all(|b| b.len() == 2 || b.len() == 3));
        let tiny = random_sparse_paving(4, 3, 5).unwrap();
        assert_eq!(tiny.matroid(), Matroid::boolean(4).unwrap());
    }
}
