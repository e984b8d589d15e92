//! Central hyperplane arrangements over the rationals.
//!
//! Hyperplanes are stored by primitive integer normal vectors, so parallel
//! normals are detected exactly. The intersection matroid has rank equal to
//! the rank of the normal matrix, that is, the codimension of the
//! intersection.

pub mod graphic;
pub mod lines;
pub mod supersolvable;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;
use thiserror::Error;

use crate::bitset::{ElemSet, MAX_ELEMENTS};
use crate::linalg::{self, cross3, normalize_integer_vector, primitive_integer_vector, LinalgError};
use crate::matroid::Matroid;
use crate::poly::IntPolynomial;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ArrangementError {
    #[error("ambient dimension must be positive")]
    ZeroDimension,
    #[error("arrangement must have between 1 and 128 hyperplanes, got {0}")]
    BadSize(usize),
    #[error("normal {index} has {got} coordinates, expected {expected}")]
    WrongLength { index: usize, expected: usize, got: usize },
    #[error("normal {0} is zero")]
    ZeroNormal(usize),
    #[error("hyperplanes {0} and {1} coincide")]
    DuplicateHyperplane(usize, usize),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error("rank {0} is beyond the geometric region counter (at most 3)")]
    TooLarge(usize),
    #[error("bad pencil subspace: {0}")]
    BadSubspace(String),
    #[error("the arrangement is not supersolvable")]
    NotSupersolvable,
}

/// A central arrangement in `Q^dim`, one primitive normal per hyperplane.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrangement {
    dim: usize,
    normals: Vec<Vec<BigInt>>,
}

impl Arrangement {
    pub fn new(dim: usize, normals: &[Vec<BigRational>]) -> Result<Self, ArrangementError> {
        let ints = normals
            .iter()
            .enumerate()
            .map(|(i, v)| {
                if v.len() != dim {
                    return Err(ArrangementError::WrongLength { index: i, expected: dim, got: v.len() });
                }
                Ok(primitive_integer_vector(v))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::from_integer_normals(dim, ints)
    }

    /// Normals given as rational strings such as `"1"`, `"-2/3"`.
    pub fn parse(dim: usize, normals: &[Vec<String>]) -> Result<Self, ArrangementError> {
        let rows = normals
            .iter()
            .map(|row| row.iter().map(|s| linalg::parse_rational(s)).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(dim, &rows)
    }

    pub fn from_i64(dim: usize, normals: &[Vec<i64>]) -> Result<Self, ArrangementError> {
        Self::from_integer_normals(dim, normals.iter().map(|v| v.iter().map(|&x| BigInt::from(x)).collect()).collect())
    }

    pub fn from_integer_normals(dim: usize, mut normals: Vec<Vec<BigInt>>) -> Result<Self, ArrangementError> {
        if dim == 0 {
            return Err(ArrangementError::ZeroDimension);
        }
        if normals.is_empty() || normals.len() > MAX_ELEMENTS {
            return Err(ArrangementError::BadSize(normals.len()));
        }
        for (i, v) in normals.iter_mut().enumerate() {
            if v.len() != dim {
                return Err(ArrangementError::WrongLength { index: i, expected: dim, got: v.len() });
            }
            if v.iter().all(|x| x.is_zero()) {
                return Err(ArrangementError::ZeroNormal(i));
            }
            normalize_integer_vector(v);
        }
        for i in 0..normals.len() {
            for j in i + 1..normals.len() {
                if normals[i] == normals[j] {
                    return Err(ArrangementError::DuplicateHyperplane(i, j));
                }
            }
        }
        Ok(Arrangement { dim, normals })
    }

    /// Coordinate hyperplanes `x_i = 0` in `Q^d`.
    pub fn coordinate(d: usize) -> Self {
        let normals = (0..d)
            .map(|i| (0..d).map(|j| i64::from(i == j)).collect())
            .collect::<Vec<Vec<i64>>>();
        Self::from_i64(d, &normals).expect("coordinate hyperplanes are distinct")
    }

    /// Braid arrangement `x_i = x_j`, `i < j`, in `Q^n`, edges in lexicographic order.
    pub fn braid(n: usize) -> Self {
        let edges: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        Self::graphic(n, &edges).expect("braid arrangement is simple")
    }

    /// Graphic arrangement: `x_u = x_v` for each edge.
    pub fn graphic(vertices: usize, edges: &[(usize, usize)]) -> Result<Self, ArrangementError> {
        let normals = edges
            .iter()
            .map(|&(u, v)| {
                let mut row = vec![0i64; vertices];
                row[u] += 1;
                row[v] -= 1;
                row
            })
            .collect::<Vec<_>>();
        Self::from_i64(vertices, &normals)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.normals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.normals.is_empty()
    }

    pub fn normals(&self) -> &[Vec<BigInt>] {
        &self.normals
    }

    pub fn normals_as_strings(&self) -> Vec<Vec<String>> {
        self.normals.iter().map(|v| v.iter().map(|x| x.to_string()).collect()).collect()
    }

    /// Rank of the normals indexed by `s`.
    pub fn rank_of(&self, s: ElemSet) -> usize {
        let rows: Vec<Vec<BigInt>> = s.iter().map(|i| self.normals[i].clone()).collect();
        if rows.is_empty() {
            0
        } else {
            linalg::rank_of(&rows)
        }
    }

    pub fn rank(&self) -> usize {
        self.rank_of(ElemSet::full(self.len()))
    }

    /// Indices of hyperplanes containing the intersection of those in `s`.
    pub fn closure(&self, s: ElemSet) -> ElemSet {
        let rows: Vec<Vec<BigInt>> = s.iter().map(|i| self.normals[i].clone()).collect();
        let span = linalg::span_of(&rows, self.dim);
        ElemSet::from_elems((0..self.len()).filter(|&i| s.contains(i) || linalg::in_span(&span, &self.normals[i])))
    }

    /// Intersection lattice as a matroid on the hyperplane indices.
    pub fn matroid(&self) -> Matroid {
        Matroid::from_closure(self.len(), |s| self.closure(s))
    }

    pub fn characteristic_polynomial(&self) -> IntPolynomial {
        self.matroid().characteristic_polynomial()
    }

    /// The same arrangement written in `Q^rank`: keeping a maximal independent
    /// set of coordinates preserves every linear relation among normals.
    pub fn essentialize(&self) -> Arrangement {
        let cols = linalg::pivot_columns(&self.normals);
        let normals = self.normals.iter().map(|v| cols.iter().map(|&c| v[c].clone()).collect()).collect();
        Arrangement::from_integer_normals(cols.len().max(1), normals).expect("projection keeps normals distinct")
    }

    /// Adds zero coordinates so the ambient space becomes `Q^dim`.
    pub fn lift(&self, dim: usize) -> Arrangement {
        assert!(dim >= self.dim);
        let normals = self
            .normals
            .iter()
            .map(|v| v.iter().cloned().chain(std::iter::repeat_n(BigInt::zero(), dim - self.dim)).collect())
            .collect();
        Arrangement { dim, normals }
    }

    /// Region count from the cell structure: in rank 3 the hyperplanes cut the
    /// unit sphere into a connected graph of great circles, and Euler's
    /// formula `V - E + F = 2` gives the number of faces.
    pub fn regions_geometric(&self) -> Result<usize, ArrangementError> {
        let ess = self.essentialize();
        let r = ess.rank();
        match r {
            0 => Ok(1),
            1 => Ok(2),
            2 => Ok(2 * ess.len()),
            3 => {
                let mut directions: Vec<Vec<BigInt>> = Vec::new();
                let mut on_circle: Vec<Vec<usize>> = vec![Vec::new(); ess.len()];
                for i in 0..ess.len() {
                    for j in i + 1..ess.len() {
                        let mut v = cross3(&ess.normals[i], &ess.normals[j]).to_vec();
                        normalize_integer_vector(&mut v);
                        let id = match directions.iter().position(|d| *d == v) {
                            Some(id) => id,
                            None => {
                                directions.push(v);
                                directions.len() - 1
                            }
                        };
                        for k in [i, j] {
                            if !on_circle[k].contains(&id) {
                                on_circle[k].push(id);
                            }
                        }
                    }
                }
                let vertices = 2 * directions.len();
                let edges: usize = on_circle.iter().map(|c| 2 * c.len()).sum();
                Ok(2 + edges - vertices)
            }
            r => Err(ArrangementError::TooLarge(r)),
        }
    }

    pub fn regions_count(&self) -> Result<RegionCount, ArrangementError> {
        let geometric = self.regions_geometric()?;
        let chi = self.characteristic_polynomial().eval(-1).unsigned_abs() as usize;
        Ok(RegionCount { from_characteristic: chi, geometric })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct RegionCount {
    pub from_characteristic: usize,
    pub geometric: usize,
}

impl RegionCount {
    pub fn agree(&self) -> bool {
        self.from_characteristic == self.geometric
    }
}

/// Whether the subspaces cut out by two sets of normals coincide, i.e. whether
/// the normals span the same row space.
pub fn same_subspace(a: &[Vec<BigInt>], b: &[Vec<BigInt>], dim: usize) -> bool {
    let sa = linalg::span_of(a, dim);
    let sb = linalg::span_of(b, dim);
    a.iter().all(|v| linalg::in_span(&sb, v)) && b.iter().all(|v| linalg::in_span(&sa, v))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn three_lines_give_u23() {
        let a = Arrangement::from_i64(2, &[vec![1, 0], vec![0, 1], vec![1, 1]]).unwrap();
        assert_eq!(a.matroid(), Matroid::uniform(2, 3).unwrap());
        assert_eq!(a.regions_count().unwrap(), RegionCount { from_characteristic: 6, geometric: 6 });
    }

    #[test]
    fn coordinate_planes() {
        let a = Arrangement::coordinate(3);
        assert_eq!(a.matroid(), Matroid::boolean(3).unwrap());
        assert_eq!(a.regions_count().unwrap().geometric, 8);
    }

    #[test]
    fn braid_is_graphic_k4() {
        let a = Arrangement::braid(4);
        let k4 = Matroid::from_graph(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        assert_eq!(a.matroid(), k4);
        assert_eq!(a.rank(), 3);
        assert_eq!(a.regions_count().unwrap(), RegionCount { from_characteristic: 24, geometric: 24 });
    }

    #[test]
    fn parallel_normals_are_duplicates() {
        let err = Arrangement::parse(2, &[vec!["1".into(), "2".into()], vec!["-1/2".into(), "-1".into()]]).unwrap_err();
        assert_eq!(err, ArrangementError::DuplicateHyperplane(0, 1));
        assert_eq!(Arrangement::from_i64(2, &[vec![0, 0]]).unwrap_err(), ArrangementError::ZeroNormal(0));
    }

    #[test]
    fn low_rank_regions() {
        let two = Arrangement::from_i64(2, &[vec![1, 0], vec![0, 1]]).unwrap();
        assert_eq!(two.regions_geometric().unwrap(), 4);
        let one = Arrangement::from_i64(3, &[vec![1, 2, 3]]).unwrap();
        assert_eq!(one.regions_count().unwrap(), RegionCount { from_characteristic: 2, geometric: 2 });
        assert_eq!(Arrangement::coordinate(4).regions_geometric().unwrap_err(), ArrangementError::TooLarge(4));
    }

    #[test]
    fn generic_planes_in_space() {
        // four generic planes through the origin in Q^3 cut 14 regions
        let a = Arrangement::from_i64(3, &[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1], vec![1, 1, 1]]).unwrap();
        assert_eq!(a.regions_count().unwrap(), RegionCount { from_characteristic: 14, geometric: 14 });
    }
}
