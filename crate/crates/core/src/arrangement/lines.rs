//! Projective line arrangements described by their incidences.
//!
//! A line arrangement is a set of lines together with its intersection points,
//! each point recorded as the set of lines through it. Arrangements given by
//! rational coefficient triples have their points computed exactly; the
//! homogeneous families with three modular points need roots of unity, so
//! those are built directly from their incidence pattern.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;
use thiserror::Error;

use crate::bitset::{ElemSet, MAX_ELEMENTS};
use crate::linalg::{cross3, normalize_integer_vector, primitive_integer_vector};
use crate::matroid::Matroid;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LineError {
    #[error("need between 1 and 128 lines, got {0}")]
    BadSize(usize),
    #[error("line {0} is not a valid coefficient triple")]
    BadLine(usize),
    #[error("lines {0} and {1} coincide")]
    DuplicateLine(usize, usize),
    #[error("lines {0} and {1} do not meet in exactly one listed point")]
    BadIncidence(usize, usize),
    #[error("bad family parameters: {0}")]
    BadParameters(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LineArrangement {
    lines: usize,
    /// Lines through each intersection point, sorted.
    points: Vec<ElemSet>,
}

/// `t_k` = number of points on exactly `k` lines.
pub type TVector = BTreeMap<usize, usize>;

impl LineArrangement {
    /// Lines `a x + b y + c z = 0`.
    pub fn from_triples(triples: &[Vec<BigRational>]) -> Result<Self, LineError> {
        if triples.is_empty() || triples.len() > MAX_ELEMENTS {
            return Err(LineError::BadSize(triples.len()));
        }
        let mut normals = Vec::with_capacity(triples.len());
        for (i, t) in triples.iter().enumerate() {
            let v = primitive_integer_vector(t);
            if v.len() != 3 || v.iter().all(|x| x == &BigInt::from(0)) {
                return Err(LineError::BadLine(i));
            }
            if let Some(j) = normals.iter().position(|w| *w == v) {
                return Err(LineError::DuplicateLine(j, i));
            }
            normals.push(v);
        }
        let mut points: Vec<(Vec<BigInt>, ElemSet)> = Vec::new();
        for i in 0..normals.len() {
            for j in i + 1..normals.len() {
                let mut p = cross3(&normals[i], &normals[j]).to_vec();
                normalize_integer_vector(&mut p);
                match points.iter_mut().find(|(q, _)| *q == p) {
                    Some((_, s)) => *s = s.with(i).with(j),
                    None => points.push((p, ElemSet::from_elems([i, j]))),
                }
            }
        }
        Self::from_incidences(normals.len(), points.into_iter().map(|(_, s)| s).collect())
    }

    pub fn from_i64(triples: &[[i64; 3]]) -> Result<Self, LineError> {
        let rows: Vec<Vec<BigRational>> = triples
            .iter()
            .map(|t| t.iter().map(|&x| BigRational::from_integer(x.into())).collect())
            .collect();
        Self::from_triples(&rows)
    }

    /// Checks that every pair of lines lies on exactly one listed point.
    pub fn from_incidences(lines: usize, mut points: Vec<ElemSet>) -> Result<Self, LineError> {
        if lines == 0 || lines > MAX_ELEMENTS {
            return Err(LineError::BadSize(lines));
        }
        let top = ElemSet::full(lines);
        let mut seen = vec![vec![false; lines]; lines];
        for p in &points {
            if p.len() < 2 || !p.is_subset(top) {
                let e: Vec<usize> = p.iter().collect();
                return Err(LineError::BadIncidence(e.first().copied().unwrap_or(0), e.get(1).copied().unwrap_or(0)));
            }
            for i in p.iter() {
                for j in p.iter().filter(|&j| j > i) {
                    if seen[i][j] {
                        return Err(LineError::BadIncidence(i, j));
                    }
                    seen[i][j] = true;
                }
            }
        }
        for (i, row) in seen.iter().enumerate() {
            if let Some(j) = (i + 1..lines).find(|&j| !row[j]) {
                return Err(LineError::BadIncidence(i, j));
            }
        }
        points.sort_by(|a, b| b.len().cmp(&a.len()).then(a.cmp(b)));
        Ok(LineArrangement { lines, points })
    }

    pub fn line_count(&self) -> usize {
        self.lines
    }

    pub fn points(&self) -> &[ElemSet] {
        &self.points
    }

    pub fn tvector(&self) -> TVector {
        let mut t = TVector::new();
        for p in &self.points {
            *t.entry(p.len()).or_insert(0) += 1;
        }
        t
    }

    /// Points lying on every other point's joining line: a point `P` is
    /// modular when each intersection point shares a line with `P`.
    pub fn modular_points(&self) -> Vec<ElemSet> {
        self.points
            .iter()
            .copied()
            .filter(|p| self.points.iter().all(|q| q == p || q.intersects(*p)))
            .collect()
    }

    /// The inequality `t_2 + t_3 >= k + t_5 + 2 t_6 + ...` read with `k` the
    /// number of lines; skipped below four lines.
    pub fn hirzebruch(&self) -> Option<HirzebruchDiagnostic> {
        if self.lines < 4 {
            return None;
        }
        let t = self.tvector();
        let get = |k: usize| t.get(&k).copied().unwrap_or(0) as i64;
        let lhs = get(2) + get(3);
        let rhs = self.lines as i64 + t.iter().filter(|(&k, _)| k >= 5).map(|(&k, &c)| (k as i64 - 4) * c as i64).sum::<i64>();
        Some(HirzebruchDiagnostic {
            lhs,
            rhs,
            margin: lhs - rhs,
            holds: lhs >= rhs,
            k_interpretation: "k = number of lines".into(),
        })
    }

    /// Matroid of the corresponding central plane arrangement in `Q^3`:
    /// single lines, the points, and everything.
    pub fn matroid(&self) -> Matroid {
        let top = ElemSet::full(self.lines);
        let mut flats = vec![ElemSet::EMPTY];
        let mut ranks = vec![0];
        if self.lines == 1 {
            return Matroid::from_ranked_flats(1, vec![ElemSet::EMPTY, top], vec![0, 1]);
        }
        flats.extend((0..self.lines).map(ElemSet::singleton));
        ranks.extend(std::iter::repeat_n(1, self.lines));
        if self.points.len() == 1 && self.points[0] == top {
            flats.push(top);
            ranks.push(2);
        } else {
            flats.extend(self.points.iter().copied());
            ranks.extend(std::iter::repeat_n(2, self.points.len()));
            flats.push(top);
            ranks.push(3);
        }
        Matroid::from_ranked_flats(self.lines, flats, ranks)
    }

    /// Removes the given lines, keeping the induced incidences.
    pub fn delete_lines(&self, remove: ElemSet) -> Result<LineArrangement, LineError> {
        let keep: Vec<usize> = (0..self.lines).filter(|&i| !remove.contains(i)).collect();
        let relabel = |p: ElemSet| ElemSet::from_elems(keep.iter().enumerate().filter(|(_, &l)| p.contains(l)).map(|(i, _)| i));
        let points: Vec<ElemSet> = self.points.iter().map(|p| relabel(*p)).filter(|p| p.len() >= 2).collect();
        let mut uniq = points;
        uniq.sort();
        uniq.dedup();
        Self::from_incidences(keep.len(), uniq)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HirzebruchDiagnostic {
    pub lhs: i64,
    pub rhs: i64,
    pub margin: i64,
    pub holds: bool,
    pub k_interpretation: String,
}

/// The supersolvable families of the classification.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HhKind {
    /// `a` lines through one modular point and `b` through another,
    /// sharing the joining line.
    TwoModular { a: usize, b: usize },
    /// Linear factors of `xyz (x^q - y^q)(x^q - z^q)(y^q - z^q)`, `q = m - 2`.
    ThreeModular { m: usize },
    /// `x, y, z, x - y, x - z, y - z`.
    FourModular,
}

#[derive(Clone, Debug)]
pub struct HhFamily {
    pub kind: HhKind,
    pub arrangement: LineArrangement,
    /// Double points off the modular points.
    pub ordinary_double_points: usize,
    /// Lines `x = 0, y = 0, z = 0` of the three-modular family.
    pub coordinate_lines: Option<ElemSet>,
}

pub fn hh_family(kind: HhKind) -> Result<HhFamily, LineError> {
    match kind {
        HhKind::TwoModular { a, b } => {
            if !(2 <= a && a < b) {
                return Err(LineError::BadParameters(format!("two_modular needs 2 <= a < b, got a={a}, b={b}")));
            }
            // z = 0 joins [0:1:0] and [1:0:0]; x = i z and y = j z pass through them
            let mut triples = vec![[0, 0, 1]];
            triples.extend((1..a as i64).map(|i| [1, 0, -i]));
            triples.extend((1..b as i64).map(|j| [0, 1, -j]));
            let arrangement = LineArrangement::from_i64(&triples)?;
            Ok(HhFamily { kind, arrangement, ordinary_double_points: (a - 1) * (b - 1), coordinate_lines: None })
        }
        HhKind::FourModular => {
            let arrangement =
                LineArrangement::from_i64(&[[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, -1, 0], [1, 0, -1], [0, 1, -1]])?;
            let ordinary = arrangement.points().iter().filter(|p| p.len() == 2).count();
            Ok(HhFamily { kind, arrangement, ordinary_double_points: ordinary, coordinate_lines: None })
        }
        HhKind::ThreeModular { m } => {
            if m <= 3 {
                return Err(LineError::BadParameters(format!("three_modular needs m > 3, got {m}")));
            }
            let q = m - 2;
            // X, Y, Z, then A_i: x = ζ^i y, B_j: x = ζ^j z, C_k: y = ζ^k z
            let (x, y, z) = (0, 1, 2);
            let a = |i: usize| 3 + i;
            let b = |j: usize| 3 + q + j;
            let c = |k: usize| 3 + 2 * q + k;
            let mut points = vec![
                ElemSet::from_elems([x, y].into_iter().chain((0..q).map(a))),
                ElemSet::from_elems([x, z].into_iter().chain((0..q).map(b))),
                ElemSet::from_elems([y, z].into_iter().chain((0..q).map(c))),
            ];
            for i in 0..q {
                for j in 0..q {
                    points.push(ElemSet::from_elems([a(i), b(j), c((j + q - i) % q)]));
                }
            }
            for k in 0..q {
                points.push(ElemSet::from_elems([x, c(k)]));
                points.push(ElemSet::from_elems([y, b(k)]));
                points.push(ElemSet::from_elems([z, a(k)]));
            }
            let arrangement = LineArrangement::from_incidences(3 + 3 * q, points)?;
            Ok(HhFamily {
                kind,
                arrangement,
                ordinary_double_points: 3 * q,
                coordinate_lines: Some(ElemSet::from_elems([x, y, z])),
            })
        }
    }
}

/// Admissible unexpected-curve degrees `m <= D <= n - m - 1`, with the
/// companion bound `floor(m / 3)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeRange {
    pub low: usize,
    pub high: i64,
    pub empty: bool,
    pub companion_bound: usize,
}

pub fn unexpected_degree_range(n_lines: usize, m: usize) -> DegreeRange {
    let high = n_lines as i64 - m as i64 - 1;
    DegreeRange { low: m, high, empty: (m as i64) > high, companion_bound: m / 3 }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tv(pairs: &[(usize, usize)]) -> TVector {
        pairs.iter().copied().collect()
    }

    #[test]
    fn generic_lines() {
        let l = LineArrangement::from_i64(&[[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 1]]).unwrap();
        assert_eq!(l.tvector(), tv(&[(2, 6)]));
        let h = l.hirzebruch().unwrap();
        assert_eq!((h.lhs, h.rhs), (6, 4));
    }

    #[test]
    fn families() {
        let f = hh_family(HhKind::FourModular).unwrap();
        assert_eq!(f.arrangement.line_count(), 6);
        assert_eq!(f.arrangement.points().len(), 7);
        assert_eq!(f.arrangement.tvector(), tv(&[(2, 3), (3, 4)]));

        let f = hh_family(HhKind::ThreeModular { m: 4 }).unwrap();
        assert_eq!(f.arrangement.line_count(), 9);
        assert_eq!(f.arrangement.tvector(), tv(&[(2, 6), (3, 4), (4, 3)]));
        assert_eq!(f.arrangement.modular_points().len(), 3);

        let f = hh_family(HhKind::TwoModular { a: 2, b: 3 }).unwrap();
        assert_eq!(f.arrangement.line_count(), 4);
        assert_eq!(f.ordinary_double_points, 2);
        // the modular point of multiplicity 2 is itself a double point
        assert_eq!(f.arrangement.tvector(), tv(&[(2, 3), (3, 1)]));
        assert!(hh_family(HhKind::TwoModular { a: 3, b: 3 }).is_err());
        assert!(hh_family(HhKind::ThreeModular { m: 3 }).is_err());
    }

    #[test]
    fn matroid_of_lines() {
        let f = hh_family(HhKind::FourModular).unwrap();
        let m = f.arrangement.matroid();
        assert_eq!(m.rank(), 3);
        let planes = crate::arrangement::Arrangement::braid(4);
        // the four-modular lines are the projectivized braid arrangement
        assert_eq!(m.characteristic_polynomial(), planes.characteristic_polynomial());
        let validated = Matroid::from_flats(6, &crate::bitset::SetFamily::new(6, m.flats().to_vec())).unwrap();
        assert_eq!(validated, m);
    }

    #[test]
    fn degree_ranges() {
        assert_eq!(unexpected_degree_range(9, 4), DegreeRange { low: 4, high: 4, empty: false, companion_bound: 1 });
        assert_eq!(unexpected_degree_range(12, 5).high, 5 + 1);
        assert!(unexpected_degree_range(6, 3).empty);
    }

    #[test]
    fn incidence_errors() {
        assert!(matches!(
            LineArrangement::from_incidences(3, vec![ElemSet::from_elems([0, 1])]),
            Err(LineError::BadIncidence(..))
        ));
        assert!(matches!(LineArrangement::from_i64(&[[1, 0, 0], [2, 0, 0]]), Err(LineError::DuplicateLine(0, 1))));
    }
}
