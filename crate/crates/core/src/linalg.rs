//! Exact linear algebra over the rationals.
//!
//! Everything is done with integer rows and fraction-free elimination: a row
//! is reduced against a pivot row by cross-multiplying the two leading
//! coefficients and then dividing out the content, so no fractions ever
//! appear and ranks are exact. The same echelon structure serves the dense
//! normal-vector matrices of hyperplane arrangements and the large sparse
//! relation matrices of Chow rings.

use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{CheckedMul, CheckedSub, One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("cannot parse rational number {0:?}")]
    BadRational(String),
    #[error("integer overflow during elimination")]
    Overflow,
}

/// Parses `"3"`, `"-2/5"` or a plain decimal such as `"0.25"`.
pub fn parse_rational(s: &str) -> Result<BigRational, LinalgError> {
    let t = s.trim();
    if let Some((int, frac)) = t.split_once('.') {
        if !t.contains('/') && frac.chars().all(|c| c.is_ascii_digit()) {
            let neg = int.starts_with('-');
            let digits = format!("{}{}", int.trim_start_matches(['-', '+']), frac);
            let num = BigInt::from_str(if digits.is_empty() { "0" } else { &digits })
                .map_err(|_| LinalgError::BadRational(s.to_string()))?;
            let den = num_traits::pow(BigInt::from(10), frac.len());
            let r = BigRational::new(num, den);
            return Ok(if neg { -r } else { r });
        }
    }
    BigRational::from_str(t).map_err(|_| LinalgError::BadRational(s.to_string()))
}

pub fn format_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Scales a rational vector to a primitive integer vector whose first nonzero
/// entry is positive. Two vectors are parallel exactly when their primitive
/// forms coincide.
pub fn primitive_integer_vector(v: &[BigRational]) -> Vec<BigInt> {
    let lcm = v
        .iter()
        .fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
    let mut ints: Vec<BigInt> = v.iter().map(|r| (r * BigRational::from(lcm.clone())).to_integer()).collect();
    normalize_integer_vector(&mut ints);
    ints
}

/// Divides out the content and fixes the sign of the first nonzero entry.
pub fn normalize_integer_vector(v: &mut [BigInt]) {
    let g = v.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return;
    }
    let neg = v.iter().find(|x| !x.is_zero()).map(|x| x.is_negative()).unwrap_or(false);
    for x in v.iter_mut() {
        *x = &*x / &g;
        if neg {
            *x = -&*x;
        }
    }
}

/// Integer types usable for fraction-free elimination. `i64` rows report
/// overflow instead of wrapping; `BigInt` never overflows.
pub trait ExactScalar:
    Clone + Integer + Signed + CheckedMul + CheckedSub + From<i32> + Send + Sync + std::fmt::Debug
{
}

impl<T> ExactScalar for T where
    T: Clone + Integer + Signed + CheckedMul + CheckedSub + From<i32> + Send + Sync + std::fmt::Debug
{
}

/// Sparse row: strictly increasing column indices with nonzero entries.
pub type SparseRow<T> = Vec<(u32, T)>;

pub fn dense_to_sparse<T: ExactScalar>(row: &[T]) -> SparseRow<T> {
    row.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(i, x)| (i as u32, x.clone()))
        .collect()
}

/// Row echelon form kept incrementally, one pivot per leading column.
#[derive(Clone, Debug)]
pub struct Echelon<T> {
    pivots: Vec<Option<SparseRow<T>>>,
    rank: usize,
}

impl<T: ExactScalar> Echelon<T> {
    pub fn new(ncols: usize) -> Self {
        Echelon { pivots: vec![None; ncols], rank: 0 }
    }

    pub fn ncols(&self) -> usize {
        self.pivots.len()
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Adds a row; returns whether it enlarged the row space.
    pub fn insert(&mut self, row: SparseRow<T>) -> Result<bool, LinalgError> {
        let reduced = self.reduce(row)?;
        match reduced {
            None => Ok(false),
            Some(r) => {
                let lead = r[0].0 as usize;
                self.pivots[lead] = Some(r);
                self.rank += 1;
                Ok(true)
            }
        }
    }

    /// Whether `row` lies in the current row space.
    pub fn contains(&self, row: SparseRow<T>) -> Result<bool, LinalgError> {
        Ok(self.reduce(row)?.is_none())
    }

    fn reduce(&self, mut row: SparseRow<T>) -> Result<Option<SparseRow<T>>, LinalgError> {
        row.retain(|(_, x)| !x.is_zero());
        loop {
            let Some((lead, _)) = row.first() else {
                return Ok(None);
            };
            match &self.pivots[*lead as usize] {
                Some(p) => row = eliminate(&row, p)?,
                None => {
                    make_primitive(&mut row);
                    return Ok(Some(row));
                }
            }
        }
    }
}

/// `b0 * a - a0 * b` scaled down by `gcd(a0, b0)`; the shared leading column cancels.
fn eliminate<T: ExactScalar>(a: &SparseRow<T>, b: &SparseRow<T>) -> Result<SparseRow<T>, LinalgError> {
    debug_assert_eq!(a[0].0, b[0].0);
    let g = a[0].1.gcd(&b[0].1);
    let ma = b[0].1.clone() / g.clone();
    let mb = a[0].1.clone() / g;
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (1, 1);
    let mul = |x: &T, m: &T| x.checked_mul(m).ok_or(LinalgError::Overflow);
    while i < a.len() || j < b.len() {
        let ca = a.get(i).map(|e| e.0).unwrap_or(u32::MAX);
        let cb = b.get(j).map(|e| e.0).unwrap_or(u32::MAX);
        if ca < cb {
            out.push((ca, mul(&a[i].1, &ma)?));
            i += 1;
        } else if cb < ca {
            out.push((cb, T::zero().checked_sub(&mul(&b[j].1, &mb)?).ok_or(LinalgError::Overflow)?));
            j += 1;
        } else {
            let v = mul(&a[i].1, &ma)?
                .checked_sub(&mul(&b[j].1, &mb)?)
                .ok_or(LinalgError::Overflow)?;
            if !v.is_zero() {
                out.push((ca, v));
            }
            i += 1;
            j += 1;
        }
    }
    make_primitive(&mut out);
    Ok(out)
}

fn make_primitive<T: ExactScalar>(row: &mut SparseRow<T>) {
    let g = row.iter().fold(T::zero(), |acc, (_, x)| acc.gcd(x));
    if g.is_zero() || g.is_one() {
        return;
    }
    for (_, x) in row.iter_mut() {
        *x = x.clone() / g.clone();
    }
}

/// Rank of a dense integer matrix.
pub fn rank_of(rows: &[Vec<BigInt>]) -> usize {
    let ncols = rows.first().map(|r| r.len()).unwrap_or(0);
    let mut ech = Echelon::<BigInt>::new(ncols);
    for r in rows {
        ech.insert(dense_to_sparse(r)).expect("BigInt elimination cannot overflow");
    }
    ech.rank()
}

/// Echelon basis of the span of some dense integer vectors.
pub fn span_of(rows: &[Vec<BigInt>], ncols: usize) -> Echelon<BigInt> {
    let mut ech = Echelon::<BigInt>::new(ncols);
    for r in rows {
        ech.insert(dense_to_sparse(r)).expect("BigInt elimination cannot overflow");
    }
    ech
}

pub fn in_span(span: &Echelon<BigInt>, v: &[BigInt]) -> bool {
    span.contains(dense_to_sparse(v)).expect("BigInt elimination cannot overflow")
}

/// Column indices of a maximal set of linearly independent columns, chosen
/// greedily from the left.
pub fn pivot_columns(rows: &[Vec<BigInt>]) -> Vec<usize> {
    let ncols = rows.first().map(|r| r.len()).unwrap_or(0);
    let transposed: Vec<Vec<BigInt>> = (0..ncols)
        .map(|c| rows.iter().map(|r| r[c].clone()).collect())
        .collect();
    let mut ech = Echelon::<BigInt>::new(rows.len());
    let mut cols = Vec::new();
    for (c, col) in transposed.iter().enumerate() {
        if ech.insert(dense_to_sparse(col)).expect("BigInt elimination cannot overflow") {
            cols.push(c);
        }
    }
    cols
}

/// Cross product of two integer 3-vectors.
pub fn cross3(a: &[BigInt], b: &[BigInt]) -> [BigInt; 3] {
    [
        &a[1] * &b[2] - &a[2] * &b[1],
        &a[2] * &b[0] - &a[0] * &b[2],
        &a[0] * &b[1] - &a[1] * &b[0],
    ]
}

pub fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}
