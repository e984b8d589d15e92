//! Simple graphs, their graphic arrangements and the degree predicate for MCB.

use serde::Serialize;

use super::Arrangement;
use crate::cover::{Degree, McbEngine, Witness};
use crate::matroid::{Matroid, MatroidError};

/// A simple graph on vertices `0..vertices`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    vertices: usize,
    edges: Vec<(usize, usize)>,
}

impl Graph {
    pub fn new(vertices: usize, edges: &[(usize, usize)]) -> Result<Self, MatroidError> {
        Matroid::from_graph(vertices, edges)?;
        Ok(Graph { vertices, edges: edges.to_vec() })
    }

    pub fn complete(n: usize) -> Self {
        let edges: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        Graph { vertices: n, edges }
    }

    pub fn vertices(&self) -> usize {
        self.vertices
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|&&(a, b)| a == v || b == v).count()
    }

    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.edges.iter().any(|&(a, b)| (a, b) == (u, v) || (a, b) == (v, u))
    }

    pub fn matroid(&self) -> Matroid {
        Matroid::from_graph(self.vertices, &self.edges).expect("validated on construction")
    }

    pub fn arrangement(&self) -> Arrangement {
        Arrangement::graphic(self.vertices, &self.edges).expect("simple graphs give distinct hyperplanes")
    }

    /// Every edge has both endpoints of degree at least 2.
    pub fn mcb_predicate(&self) -> bool {
        self.edges.iter().all(|&(u, v)| self.degree(u) >= 2 && self.degree(v) >= 2)
    }

    /// Chordality by repeatedly deleting a simplicial vertex; the deletion
    /// order is a perfect elimination ordering when one exists.
    pub fn perfect_elimination_order(&self) -> Option<Vec<usize>> {
        let mut alive: Vec<usize> = (0..self.vertices).collect();
        let mut order = Vec::new();
        while !alive.is_empty() {
            let pos = alive.iter().position(|&v| {
                let nbrs: Vec<usize> = alive.iter().copied().filter(|&u| u != v && self.adjacent(u, v)).collect();
                nbrs.iter().enumerate().all(|(i, &a)| nbrs[i + 1..].iter().all(|&b| self.adjacent(a, b)))
            })?;
            order.push(alive.remove(pos));
        }
        Some(order)
    }

    pub fn is_chordal(&self) -> bool {
        self.perfect_elimination_order().is_some()
    }

    pub fn mcb_report(&self) -> GraphicMcbReport {
        let profile = McbEngine::for_matroid(&self.matroid()).profile();
        GraphicMcbReport {
            predicate: self.mcb_predicate(),
            min_failure_degree: profile.min_failure_degree,
            min_nontrivial_degree: profile.min_nontrivial_degree,
            witness: profile.failure_witness,
        }
    }
}

/// The degree predicate next to the oracle values it is meant to decide.
#[derive(Clone, Debug, Serialize)]
pub struct GraphicMcbReport {
    pub predicate: bool,
    pub min_failure_degree: Degree,
    pub min_nontrivial_degree: Degree,
    pub witness: Option<Witness>,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn predicates() {
        let k3 = Graph::complete(3);
        let r = k3.mcb_report();
        assert!(r.predicate);
        assert_eq!(r.min_failure_degree, Degree::Finite(2));
        assert!(!Graph::new(3, &[(0, 1), (1, 2)]).unwrap().mcb_predicate());
        assert!(Graph::complete(4).mcb_predicate());
    }

    #[test]
    fn chordality() {
        assert!(Graph::complete(4).is_chordal());
        assert!(!Graph::new(4, &[(0, 1), (1, 2), (2, 3), (0, 3)]).unwrap().is_chordal());
        assert!(Graph::new(4, &[(0, 1), (1, 2), (2, 3), (0, 3), (0, 2)]).unwrap().is_chordal());
    }
}
