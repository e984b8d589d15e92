//! Integer polynomials in one variable.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

/// Integer-coefficient polynomial; `coeffs[i]` is the coefficient of `t^i`.
///
/// Trailing zeros are always stripped, so the zero polynomial has no
/// coefficients and degree `-1`.
#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(from = "Vec<i64>", into = "Vec<i64>")]
pub struct IntPolynomial {
    coeffs: Vec<i64>,
}

impl IntPolynomial {
    pub fn zero() -> Self {
        IntPolynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant(c: i64) -> Self {
        Self::new(vec![c])
    }

    /// `t^k`
    pub fn monomial(k: usize, c: i64) -> Self {
        let mut coeffs = vec![0; k + 1];
        coeffs[k] = c;
        Self::new(coeffs)
    }

    /// `t - root`
    pub fn linear_factor(root: i64) -> Self {
        Self::new(vec![-root, 1])
    }

    pub fn new(mut coeffs: Vec<i64>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> i64 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn degree(&self) -> i64 {
        self.coeffs.len() as i64 - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading_coeff(&self) -> i64 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn eval(&self, t: i64) -> i64 {
        self.coeffs.iter().rev().fold(0, |acc, &c| acc * t + c)
    }

    /// Exact division by `t - root`; `None` when it does not divide.
    pub fn div_linear(&self, root: i64) -> Option<Self> {
        if self.is_zero() {
            return Some(Self::zero());
        }
        let d = self.coeffs.len() - 1;
        let mut q = vec![0i64; d];
        let mut carry = 0i64;
        for i in (1..=d).rev() {
            carry = self.coeffs[i] + carry * root;
            q[i - 1] = carry;
        }
        let rem = self.coeffs[0] + carry * root;
        (rem == 0).then(|| Self::new(q))
    }

    /// Multiplicity of `root` as a root.
    pub fn root_multiplicity(&self, root: i64) -> usize {
        if self.is_zero() {
            return usize::MAX;
        }
        let mut p = self.clone();
        let mut k = 0;
        while let Some(q) = p.div_linear(root) {
            p = q;
            k += 1;
        }
        k
    }

    /// Coefficient list reversed equals itself (up to the stripped tail).
    pub fn is_palindromic(&self) -> bool {
        let c = &self.coeffs;
        c.iter().eq(c.iter().rev())
    }

    /// `t + t^2 + ... + t^{k-1}`, zero when `k <= 1`.
    pub fn gap_factor(k: usize) -> Self {
        if k <= 1 {
            return Self::zero();
        }
        let mut c = vec![1i64; k];
        c[0] = 0;
        Self::new(c)
    }
}

impl From<Vec<i64>> for IntPolynomial {
    fn from(v: Vec<i64>) -> Self {
        Self::new(v)
    }
}

impl From<IntPolynomial> for Vec<i64> {
    fn from(p: IntPolynomial) -> Self {
        p.coeffs
    }
}

impl Add for &IntPolynomial {
    type Output = IntPolynomial;
    fn add(self, rhs: &IntPolynomial) -> IntPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPolynomial::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Add for IntPolynomial {
    type Output = IntPolynomial;
    fn add(self, rhs: IntPolynomial) -> IntPolynomial {
        &self + &rhs
    }
}

impl Sub for &IntPolynomial {
    type Output = IntPolynomial;
    fn sub(self, rhs: &IntPolynomial) -> IntPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPolynomial::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Sub for IntPolynomial {
    type Output = IntPolynomial;
    fn sub(self, rhs: IntPolynomial) -> IntPolynomial {
        &self - &rhs
    }
}

impl Neg for IntPolynomial {
    type Output = IntPolynomial;
    fn neg(self) -> IntPolynomial {
        IntPolynomial::new(self.coeffs.into_iter().map(|c| -c).collect())
    }
}

impl Mul for &IntPolynomial {
    type Output = IntPolynomial;
    fn mul(self, rhs: &IntPolynomial) -> IntPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return IntPolynomial::zero();
        }
        let mut out = vec![0i64; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if *a == 0 {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPolynomial::new(out)
    }
}

impl Mul for IntPolynomial {
    type Output = IntPolynomial;
    fn mul(self, rhs: IntPolynomial) -> IntPolynomial {
        &self * &rhs
    }
}

impl std::iter::Product for IntPolynomial {
    fn product<I: Iterator<Item = IntPolynomial>>(iter: I) -> Self {
        iter.fold(IntPolynomial::one(), |acc, p| acc * p)
    }
}

impl std::iter::Sum for IntPolynomial {
    fn sum<I: Iterator<Item = IntPolynomial>>(iter: I) -> Self {
        iter.fold(IntPolynomial::zero(), |acc, p| acc + p)
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let sign = if c < 0 { "-" } else { "+" };
            if first {
                if c < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let a = c.abs();
            match (i, a) {
                (0, _) => write!(f, "{a}")?,
                (1, 1) => write!(f, "t")?,
                (1, _) => write!(f, "{a}t")?,
                (_, 1) => write!(f, "t^{i}")?,
                _ => write!(f, "{a}t^{i}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPolynomial({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_has_degree_minus_one() {
        assert_eq!(IntPolynomial::zero().degree(), -1);
        assert_eq!(IntPolynomial::new(vec![0, 0, 0]).degree(), -1);
        assert_eq!(IntPolynomial::new(vec![1, 2, 0]).degree(), 1);
    }

    #[test]
    fn product_of_linear_factors() {
        let p: IntPolynomial = [1, 2, 3].iter().map(|&r| IntPolynomial::linear_factor(r)).product();
        assert_eq!(p.coeffs(), &[-6, 11, -6, 1]);
        assert_eq!(p.to_string(), "t^3 - 6t^2 + 11t - 6");
        assert_eq!(p.eval(1), 0);
        assert_eq!(p.eval(-1), -24);
        assert_eq!(p.root_multiplicity(2), 1);
        assert_eq!(p.div_linear(4), None);
    }

    #[test]
    fn gap_factor_values() {
        assert!(IntPolynomial::gap_factor(1).is_zero());
        assert_eq!(IntPolynomial::gap_factor(2).coeffs(), &[0, 1]);
        assert_eq!(IntPolynomial::gap_factor(4).coeffs(), &[0, 1, 1, 1]);
    }

    #[test]
    fn serde_is_plain_list() {
        let p = IntPolynomial::new(vec![1, 4, 1]);
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(s, "[1,4,1]");
        let back: IntPolynomial = serde_json::from_str(&s).unwrap();
        assert_eq!(back, p);
    }
}
