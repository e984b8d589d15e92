//! JSON instance descriptors, tagged by `"type"`.
//!
//! Elements, vertices and lines are 1-based in every descriptor.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arrangement::graphic::Graph;
use crate::arrangement::lines::{LineArrangement, LineError};
use crate::arrangement::{Arrangement, ArrangementError};
use crate::bitset::{ElemSet, SetFamily};
use crate::cover::McbEngine;
use crate::linalg::parse_rational;
use crate::matroid::{Matroid, MatroidError};
use crate::nest::{BuildingSet, NestError};
use crate::paving::{PavingBlocks, PavingError};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Descriptor {
    Flats { n: usize, flats: Vec<ElemSet> },
    Graph { vertices: usize, edges: Vec<[usize; 2]> },
    Uniform { r: usize, n: usize },
    BuildingSet { n: usize, members: Vec<ElemSet> },
    Arrangement { dim: usize, normals: Vec<Vec<String>> },
    Lines { triples: Vec<Vec<String>> },
    LineIncidences { lines: usize, points: Vec<ElemSet> },
    GraphArrangement { vertices: usize, edges: Vec<[usize; 2]> },
    Paving { n: usize, m: usize, blocks: Vec<ElemSet> },
}

#[derive(Debug, Error)]
pub enum InputError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Matroid(#[from] MatroidError),
    #[error(transparent)]
    BuildingSet(#[from] NestError),
    #[error(transparent)]
    Arrangement(#[from] ArrangementError),
    #[error(transparent)]
    Lines(#[from] LineError),
    #[error(transparent)]
    Paving(#[from] PavingError),
    #[error("vertex labels are 1-based, got 0")]
    ZeroVertex,
    #[error("this input describes a building set, not a matroid")]
    NotAMatroid,
}

/// A validated instance.
#[derive(Clone, Debug)]
pub enum Instance {
    Matroid(Matroid),
    Graph(Graph),
    BuildingSet(BuildingSet),
    Arrangement(Arrangement),
    Lines(LineArrangement),
    Paving(PavingBlocks),
}

fn zero_based_edges(edges: &[[usize; 2]]) -> Result<Vec<(usize, usize)>, InputError> {
    edges
        .iter()
        .map(|&[u, v]| if u == 0 || v == 0 { Err(InputError::ZeroVertex) } else { Ok((u - 1, v - 1)) })
        .collect()
}

fn one_based_edges(edges: &[(usize, usize)]) -> Vec<[usize; 2]> {
    edges.iter().map(|&(u, v)| [u + 1, v + 1]).collect()
}

impl Descriptor {
    pub fn from_json(text: &str) -> Result<Self, InputError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("descriptors always serialize")
    }

    pub fn resolve(&self) -> Result<Instance, InputError> {
        Ok(match self {
            Descriptor::Flats { n, flats } => Instance::Matroid(Matroid::from_flats(*n, &SetFamily::new(*n, flats.clone()))?),
            Descriptor::Graph { vertices, edges } => Instance::Graph(Graph::new(*vertices, &zero_based_edges(edges)?)?),
            Descriptor::Uniform { r, n } => Instance::Matroid(Matroid::uniform(*r, *n)?),
            Descriptor::BuildingSet { n, members } => {
                Instance::BuildingSet(BuildingSet::new(*n, &SetFamily::new(*n, members.clone()))?)
            }
            Descriptor::Arrangement { dim, normals } => Instance::Arrangement(Arrangement::parse(*dim, normals)?),
            Descriptor::Lines { triples } => {
                let rows = triples
                    .iter()
                    .enumerate()
                    .map(|(i, t)| {
                        t.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>, _>>().map_err(|_| LineError::BadLine(i))
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                Instance::Lines(LineArrangement::from_triples(&rows)?)
            }
            Descriptor::LineIncidences { lines, points } => {
                Instance::Lines(LineArrangement::from_incidences(*lines, points.clone())?)
            }
            Descriptor::GraphArrangement { vertices, edges } => {
                Instance::Arrangement(Arrangement::graphic(*vertices, &zero_based_edges(edges)?)?)
            }
            Descriptor::Paving { n, m, blocks } => Instance::Paving(PavingBlocks::new(*n, *m, blocks)?),
        })
    }

    pub fn of_matroid(m: &Matroid) -> Self {
        Descriptor::Flats { n: m.n(), flats: m.flats().to_vec() }
    }

    pub fn of_graph(g: &Graph) -> Self {
        Descriptor::Graph { vertices: g.vertices(), edges: one_based_edges(g.edges()) }
    }

    pub fn of_graph_arrangement(g: &Graph) -> Self {
        Descriptor::GraphArrangement { vertices: g.vertices(), edges: one_based_edges(g.edges()) }
    }

    pub fn of_building_set(b: &BuildingSet) -> Self {
        Descriptor::BuildingSet { n: b.n(), members: b.members().to_vec() }
    }

    pub fn of_arrangement(a: &Arrangement) -> Self {
        Descriptor::Arrangement { dim: a.dim(), normals: a.normals_as_strings() }
    }

    pub fn of_lines(l: &LineArrangement) -> Self {
        Descriptor::LineIncidences { lines: l.line_count(), points: l.points().to_vec() }
    }

    pub fn of_paving(p: &PavingBlocks) -> Self {
        Descriptor::Paving { n: p.n(), m: p.m(), blocks: p.blocks().to_vec() }
    }
}

impl Instance {
    /// The matroid behind the instance; building sets have none.
    pub fn matroid(&self) -> Result<Matroid, InputError> {
        match self {
            Instance::Matroid(m) => Ok(m.clone()),
            Instance::Graph(g) => Ok(g.matroid()),
            Instance::BuildingSet(_) => Err(InputError::NotAMatroid),
            Instance::Arrangement(a) => Ok(a.matroid()),
            Instance::Lines(l) => Ok(l.matroid()),
            Instance::Paving(p) => Ok(p.matroid()),
        }
    }

    /// Hyperplanes for matroids, `B \ {[n]}` for building sets.
    pub fn engine(&self) -> McbEngine {
        match self {
            Instance::BuildingSet(b) => b.engine(),
            other => McbEngine::for_matroid(&other.matroid().expect("non-building-set instances are matroids")),
        }
    }

    pub fn n(&self) -> usize {
        self.engine().n()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_each_kind() {
        let cases = [
            r#"{"type":"flats","n":3,"flats":[[],[1],[2],[3],[1,2,3]]}"#,
            r#"{"type":"graph","vertices":3,"edges":[[1,2],[2,3],[1,3]]}"#,
            r#"{"type":"uniform","r":2,"n":3}"#,
            r#"{"type":"building_set","n":2,"members":[[1],[2],[1,2]]}"#,
            r#"{"type":"arrangement","dim":2,"normals":[["1","0"],["0","1"],["1","-1/2"]]}"#,
            r#"{"type":"lines","triples":[["1","0","0"],["0","1","0"],["0","0","1"]]}"#,
            r#"{"type":"graph_arrangement","vertices":3,"edges":[[1,2],[2,3],[1,3]]}"#,
            r#"{"type":"paving","n":4,"m":2,"blocks":[[1,2,3],[1,4],[2,4],[3,4]]}"#,
        ];
        for c in cases {
            let d = Descriptor::from_json(c).unwrap();
            let inst = d.resolve().unwrap();
            assert_eq!(Descriptor::from_json(&d.to_json()).unwrap(), d);
            assert!(inst.n() >= 2);
        }
        let u23 = Descriptor::from_json(cases[2]).unwrap().resolve().unwrap().matroid().unwrap();
        let flats = Descriptor::from_json(cases[0]).unwrap().resolve().unwrap().matroid().unwrap();
        assert_eq!(u23, flats);
    }

    #[test]
    fn errors() {
        assert!(matches!(Descriptor::from_json("{\"type\":\"nope\"}"), Err(InputError::Json(_))));
        let bad = Descriptor::from_json(r#"{"type":"flats","n":3,"flats":[[],[1]]}"#).unwrap();
        assert!(matches!(bad.resolve(), Err(InputError::Matroid(MatroidError::MissingTop))));
        let zero = Descriptor::from_json(r#"{"type":"graph","vertices":2,"edges":[[0,1]]}"#).unwrap();
        assert!(matches!(zero.resolve(), Err(InputError::ZeroVertex)));
    }
}
