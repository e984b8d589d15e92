//! Chow rings of matroids.
//!
//! The Hilbert series comes from the flag formula
//! `H(t) = 1 + Σ_r Π_i (t + ... + t^{r_i - r_{i-1} - 1}) · f(r)`, where `f(r)`
//! counts chains of nonempty flats (the top flat included) with ranks `r`.
//! It is cross-checked by a presentation oracle: proper nonempty flats are
//! variables, products of incomparable flats vanish, and the linear forms
//! `Σ_{F∋i} x_F - Σ_{F∋j} x_F` are divided out. The quadrics form a monomial
//! ideal, so degree `d` of the quotient is spanned by monomials supported on a
//! chain, and the linear forms contribute the rows `ℓ · m` for chain monomials
//! `m` of degree `d - 1`. Dimensions are exact integer ranks.

use std::collections::HashMap;

use rayon::prelude::*;
use thiserror::Error;

use crate::bitset::ElemSet;
use crate::linalg::{Echelon, ExactScalar, LinalgError, SparseRow};
use crate::matroid::Matroid;
use crate::poly::IntPolynomial;

/// Largest ground set the presentation oracle accepts.
pub const ORACLE_MAX_ELEMENTS: usize = 6;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ChowError {
    #[error("the matroid has loops")]
    LoopyMatroid,
    #[error("presentation oracle is limited to {ORACLE_MAX_ELEMENTS} elements, got {0}")]
    TooLarge(usize),
    #[error("{0} is not a hyperplane")]
    NotAHyperplane(ElemSet),
}

fn require_loopless(m: &Matroid) -> Result<(), ChowError> {
    if m.has_loops() {
        Err(ChowError::LoopyMatroid)
    } else {
        Ok(())
    }
}

/// Hilbert series of the Chow ring from the flag formula.
pub fn hilbert_fy(m: &Matroid) -> Result<IntPolynomial, ChowError> {
    require_loopless(m)?;
    let flats = m.flats();
    let ranks = m.flat_ranks();
    // chains[i]: sum over flags ending at flats[i] of the product of gap factors
    let mut chains: Vec<IntPolynomial> = vec![IntPolynomial::zero(); flats.len()];
    for i in 1..flats.len() {
        let mut acc = IntPolynomial::gap_factor(ranks[i]);
        for j in 1..i {
            if ranks[i] >= ranks[j] + 2 && flats[j].is_proper_subset(flats[i]) && !chains[j].is_zero() {
                acc = &acc + &(&chains[j] * &IntPolynomial::gap_factor(ranks[i] - ranks[j]));
            }
        }
        chains[i] = acc;
    }
    Ok(chains.into_iter().fold(IntPolynomial::one(), |a, p| a + p))
}

/// One FY basis monomial: a chain of flats with exponents.
pub type FyMonomial = Vec<(ElemSet, usize)>;

/// Monomials `x_{F_1}^{α_1} ... x_{F_k}^{α_k}` over chains `0̂ < F_1 < ... < F_k`
/// with `1 <= α_i <= rk F_i - rk F_{i-1} - 1` and `Σ α_i = d`.
pub fn fy_basis_enumerate(m: &Matroid, d: usize) -> Result<Vec<FyMonomial>, ChowError> {
    require_loopless(m)?;
    let mut out = Vec::new();
    let mut current = Vec::new();
    fy_extend(m, 0, d, &mut current, &mut out);
    Ok(out)
}

fn fy_extend(m: &Matroid, from: usize, left: usize, current: &mut FyMonomial, out: &mut Vec<FyMonomial>) {
    if left == 0 {
        out.push(current.clone());
        return;
    }
    let flats = m.flats();
    let ranks = m.flat_ranks();
    for g in from + 1..flats.len() {
        if !flats[from].is_proper_subset(flats[g]) || ranks[g] < ranks[from] + 2 {
            continue;
        }
        for alpha in 1..=(ranks[g] - ranks[from] - 1).min(left) {
            current.push((flats[g], alpha));
            fy_extend(m, g, left - alpha, current, out);
            current.pop();
        }
    }
}

/// Graded presentation of the Chow ring restricted to chain monomials.
pub struct ChowPresentation {
    /// Proper nonempty flats, in canonical order; variable `i` is `x_{flats[i]}`.
    pub flats: Vec<ElemSet>,
    comparable: Vec<Vec<bool>>,
    /// Linear forms `Σ_{F∋j} x_F - Σ_{F∋e} x_F`, `e` the first element.
    pub linear: Vec<Vec<(usize, i64)>>,
    rank: usize,
}

impl ChowPresentation {
    pub fn new(m: &Matroid) -> Result<Self, ChowError> {
        require_loopless(m)?;
        if m.n() > ORACLE_MAX_ELEMENTS {
            return Err(ChowError::TooLarge(m.n()));
        }
        let top = m.ground();
        let flats: Vec<ElemSet> = m.flats().iter().copied().filter(|f| !f.is_empty() && *f != top).collect();
        let comparable = flats
            .iter()
            .map(|a| flats.iter().map(|b| a.is_subset(*b) || b.is_subset(*a)).collect())
            .collect();
        let linear = (1..m.n())
            .map(|j| {
                flats
                    .iter()
                    .enumerate()
                    .filter_map(|(i, f)| match (f.contains(j), f.contains(0)) {
                        (true, false) => Some((i, 1)),
                        (false, true) => Some((i, -1)),
                        _ => None,
                    })
                    .collect()
            })
            .collect();
        Ok(ChowPresentation { flats, comparable, linear, rank: m.rank() })
    }

    /// Degree-`d` monomials whose support is a chain, as non-decreasing
    /// variable-index sequences.
    pub fn chain_monomials(&self, d: usize) -> Vec<Vec<u16>> {
        let mut out = Vec::new();
        let mut cur = Vec::with_capacity(d);
        self.extend_chain(0, d, &mut cur, &mut out);
        out
    }

    fn extend_chain(&self, start: usize, d: usize, cur: &mut Vec<u16>, out: &mut Vec<Vec<u16>>) {
        if cur.len() == d {
            out.push(cur.clone());
            return;
        }
        for v in start..self.flats.len() {
            if cur.iter().all(|&u| self.comparable[u as usize][v]) {
                cur.push(v as u16);
                self.extend_chain(v, d, cur, out);
                cur.pop();
            }
        }
    }

    /// `x_v · m` if it is still a chain monomial.
    fn times(&self, m: &[u16], v: usize) -> Option<Vec<u16>> {
        if !m.iter().all(|&u| self.comparable[u as usize][v]) {
            return None;
        }
        let mut out = m.to_vec();
        let pos = out.partition_point(|&u| (u as usize) <= v);
        out.insert(pos, v as u16);
        Some(out)
    }

    fn relation_rows(&self, d: usize, columns: &HashMap<Vec<u16>, u32>) -> Vec<SparseRow<i64>> {
        let mut rows = Vec::new();
        if d == 0 {
            return rows;
        }
        for m in self.chain_monomials(d - 1) {
            for form in &self.linear {
                let mut row: SparseRow<i64> = form
                    .iter()
                    .filter_map(|&(v, c)| self.times(&m, v).map(|p| (columns[&p], c)))
                    .collect();
                row.sort_unstable_by_key(|e| e.0);
                if !row.is_empty() {
                    rows.push(row);
                }
            }
        }
        rows
    }

    fn column_index(&self, d: usize) -> HashMap<Vec<u16>, u32> {
        self.chain_monomials(d).into_iter().enumerate().map(|(i, m)| (m, i as u32)).collect()
    }

    /// Dimension of the degree-`d` part of the Chow ring.
    pub fn dimension(&self, d: usize) -> usize {
        if d == 0 {
            return 1;
        }
        let columns = self.column_index(d);
        let rows = self.relation_rows(d, &columns);
        columns.len() - exact_rank(columns.len(), &rows)
    }

    /// Dimension of `x_F · A^d` inside `A^{d+1}`, which is the degree-`d` part
    /// of `A / Ann(x_F)`.
    pub fn multiplication_rank(&self, flat: usize, d: usize) -> usize {
        let columns = self.column_index(d + 1);
        let rel = self.relation_rows(d + 1, &columns);
        let images: Vec<SparseRow<i64>> = self
            .chain_monomials(d)
            .iter()
            .filter_map(|m| self.times(m, flat).map(|p| vec![(columns[&p], 1i64)]))
            .collect();
        let base = exact_rank(columns.len(), &rel);
        let all: Vec<SparseRow<i64>> = rel.into_iter().chain(images).collect();
        exact_rank(columns.len(), &all) - base
    }

    pub fn matroid_rank(&self) -> usize {
        self.rank
    }
}

fn rank_with<T: ExactScalar>(ncols: usize, rows: &[SparseRow<i64>]) -> Result<usize, LinalgError> {
    let mut ech = Echelon::<T>::new(ncols);
    for r in rows {
        ech.insert(r.iter().map(|(c, x)| (*c, T::from(*x as i32))).collect())?;
    }
    Ok(ech.rank())
}

/// Exact rank, in machine integers when they suffice.
fn exact_rank(ncols: usize, rows: &[SparseRow<i64>]) -> usize {
    rank_with::<i64>(ncols, rows)
        .unwrap_or_else(|_| rank_with::<num_bigint::BigInt>(ncols, rows).expect("BigInt elimination cannot overflow"))
}

/// Hilbert series from the presentation, degrees `0..=max_degree`
/// (default `rank - 1`).
pub fn hilbert_presentation_oracle(m: &Matroid, max_degree: Option<usize>) -> Result<IntPolynomial, ChowError> {
    let pres = ChowPresentation::new(m)?;
    let top = max_degree.unwrap_or(m.rank().saturating_sub(1));
    let dims: Vec<usize> = (0..=top).into_par_iter().map(|d| pres.dimension(d)).collect();
    Ok(IntPolynomial::new(dims.into_iter().map(|x| x as i64).collect()))
}

/// Per-degree dimensions of `A / Ann(x_F)` for a hyperplane `F`.
pub fn annihilator_quotient_dims(m: &Matroid, f: ElemSet) -> Result<Vec<usize>, ChowError> {
    if m.rank() == 0 || m.rank_of_flat(f) != Some(m.rank() - 1) || f == m.ground() {
        return Err(ChowError::NotAHyperplane(f));
    }
    let pres = ChowPresentation::new(m)?;
    let var = pres.flats.iter().position(|g| *g == f).ok_or(ChowError::NotAHyperplane(f))?;
    let top = m.rank().saturating_sub(1);
    Ok((0..top).into_par_iter().map(|d| pres.multiplication_rank(var, d)).collect())
}
