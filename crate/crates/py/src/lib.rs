//! Python bindings: `import mcb_workbench`.
//!
//! Element labels are 1-based on the Python side, as in the JSON formats.
//! Structured results come back as plain dicts and lists.

use mcb_core::arrangement::lines::{hh_family, HhKind, LineArrangement};
use mcb_core::arrangement::supersolvable::supersolvable_decompose;
use mcb_core::chow;
use mcb_core::descriptor::Descriptor;
use mcb_core::nest::BuildingSet as CoreBuildingSet;
use mcb_core::paving::{self, PavingBlocks as CorePaving};
use mcb_core::{ElemSet, McbEngine, SetFamily};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use serde::Serialize;

fn err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// Converts through JSON so results look exactly like the CLI output.
fn to_py<'py, T: Serialize>(py: Python<'py>, x: &T) -> PyResult<Bound<'py, PyAny>> {
    let text = serde_json::to_string(x).map_err(err)?;
    py.import("json")?.call_method1("loads", (text,))
}

fn to_set(n: usize, elems: &[usize]) -> PyResult<ElemSet> {
    if let Some(&bad) = elems.iter().find(|&&e| e == 0 || e > n) {
        return Err(err(format!("element {bad} is outside 1..={n}")));
    }
    Ok(ElemSet::from_elems(elems.iter().map(|e| e - 1)))
}

fn to_family(n: usize, sets: &[Vec<usize>]) -> PyResult<SetFamily> {
    let sets = sets.iter().map(|s| to_set(n, s)).collect::<PyResult<Vec<_>>>()?;
    Ok(SetFamily::new(n, sets))
}

#[pyclass(module = "mcb_workbench", frozen)]
struct Matroid {
    inner: mcb_core::Matroid,
}

#[pymethods]
impl Matroid {
    /// Builds a matroid from its complete list of flats.
    #[new]
    fn new(n: usize, flats: Vec<Vec<usize>>) -> PyResult<Self> {
        let inner = mcb_core::Matroid::from_flats(n, &to_family(n, &flats)?).map_err(err)?;
        Ok(Matroid { inner })
    }

    #[staticmethod]
    fn uniform(r: usize, n: usize) -> PyResult<Self> {
        Ok(Matroid { inner: mcb_core::Matroid::uniform(r, n).map_err(err)? })
    }

    /// Graphic matroid; edges are 1-based vertex pairs.
    #[staticmethod]
    fn graphic(vertices: usize, edges: Vec<(usize, usize)>) -> PyResult<Self> {
        let edges: Vec<[usize; 2]> = edges.into_iter().map(|(u, v)| [u, v]).collect();
        Self::from_json(&Descriptor::Graph { vertices, edges }.to_json())
    }

    /// Any matroid descriptor: flats, uniform, graph, arrangement, lines, paving.
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        let inst = Descriptor::from_json(text).and_then(|d| d.resolve()).map_err(err)?;
        Ok(Matroid { inner: inst.matroid().map_err(err)? })
    }

    fn to_json(&self) -> String {
        Descriptor::of_matroid(&self.inner).to_json()
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    #[getter]
    fn rank(&self) -> usize {
        self.inner.rank()
    }

    fn flats(&self) -> Vec<Vec<usize>> {
        self.inner.flats_one_based()
    }

    fn hyperplanes(&self) -> Vec<Vec<usize>> {
        self.inner.hyperplanes().into_iter().map(ElemSet::to_one_based).collect()
    }

    fn closure(&self, elems: Vec<usize>) -> PyResult<Vec<usize>> {
        Ok(self.inner.closure(to_set(self.inner.n(), &elems)?).to_one_based())
    }

    /// Coefficients of the characteristic polynomial, constant term first.
    fn characteristic_polynomial(&self) -> Vec<i64> {
        self.inner.characteristic_polynomial().coeffs().to_vec()
    }

    fn is_mcb<'py>(&self, py: Python<'py>, degree: usize) -> PyResult<Bound<'py, PyAny>> {
        if degree == 0 {
            return Err(err("degree must be positive"));
        }
        to_py(py, &McbEngine::for_matroid(&self.inner).is_mcb(degree))
    }

    fn mcb_profile<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &McbEngine::for_matroid(&self.inner).profile())
    }

    fn chow_hilbert(&self) -> PyResult<Vec<i64>> {
        Ok(chow::hilbert_fy(&self.inner).map_err(err)?.coeffs().to_vec())
    }

    /// Supersolvable chain data, or `None`.
    fn supersolvable<'py>(&self, py: Python<'py>) -> PyResult<Option<Bound<'py, PyAny>>> {
        supersolvable_decompose(&self.inner).map(|c| to_py(py, &c)).transpose()
    }

    fn __len__(&self) -> usize {
        self.inner.n()
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.inner == other.inner
    }

    fn __repr__(&self) -> String {
        format!("Matroid(n={}, rank={}, flats={})", self.inner.n(), self.inner.rank(), self.inner.flats().len())
    }
}

#[pyclass(module = "mcb_workbench", frozen)]
struct BuildingSet {
    inner: CoreBuildingSet,
}

#[pymethods]
impl BuildingSet {
    /// Validates `members` as a building set on `[n]`.
    #[new]
    fn new(n: usize, members: Vec<Vec<usize>>) -> PyResult<Self> {
        Ok(BuildingSet { inner: CoreBuildingSet::new(n, &to_family(n, &members)?).map_err(err)? })
    }

    /// The smallest building set containing `members`.
    #[staticmethod]
    fn closure(n: usize, members: Vec<Vec<usize>>) -> PyResult<Self> {
        Ok(BuildingSet { inner: CoreBuildingSet::closure(n, &to_family(n, &members)?).map_err(err)? })
    }

    fn members(&self) -> Vec<Vec<usize>> {
        self.inner.members().iter().map(|s| s.to_one_based()).collect()
    }

    fn is_mcb<'py>(&self, py: Python<'py>, degree: usize) -> PyResult<Bound<'py, PyAny>> {
        if degree == 0 {
            return Err(err("degree must be positive"));
        }
        to_py(py, &self.inner.mcb(degree))
    }

    fn mcb_profile<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &self.inner.profile())
    }

    fn predicate(&self) -> PyResult<bool> {
        Ok(self.inner.nestmcb_predicate().map_err(err)?.holds)
    }

    fn components<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &self.inner.components().map_err(err)?)
    }

    fn __repr__(&self) -> String {
        format!("BuildingSet(n={}, members={})", self.inner.n(), self.inner.members().len())
    }
}

#[pyclass(module = "mcb_workbench", frozen)]
struct PavingMatroid {
    inner: CorePaving,
}

#[pymethods]
impl PavingMatroid {
    /// Rank `m + 1` paving matroid given by blocks covering every `m`-set once.
    #[new]
    fn new(n: usize, m: usize, blocks: Vec<Vec<usize>>) -> PyResult<Self> {
        let blocks = blocks.iter().map(|b| to_set(n, b)).collect::<PyResult<Vec<_>>>()?;
        Ok(PavingMatroid { inner: CorePaving::new(n, m, &blocks).map_err(err)? })
    }

    #[staticmethod]
    fn fano() -> Self {
        PavingMatroid { inner: paving::fano() }
    }

    #[staticmethod]
    #[pyo3(signature = (n, m, seed = 0))]
    fn random_sparse(n: usize, m: usize, seed: u64) -> PyResult<Self> {
        Ok(PavingMatroid { inner: paving::random_sparse_paving(n, m, seed).map_err(err)? })
    }

    fn blocks(&self) -> Vec<Vec<usize>> {
        self.inner.blocks().iter().map(|b| b.to_one_based()).collect()
    }

    fn matroid(&self) -> Matroid {
        Matroid { inner: self.inner.matroid() }
    }

    fn min_hyperplane_cover(&self) -> Option<usize> {
        McbEngine::for_matroid(&self.inner.matroid()).min_cover_of_ground().map(|c| c.len())
    }

    fn to_json(&self) -> String {
        Descriptor::of_paving(&self.inner).to_json()
    }
}

#[pyclass(module = "mcb_workbench", name = "LineArrangement", frozen)]
struct LineArrangementPy {
    inner: LineArrangement,
}

#[pymethods]
impl LineArrangementPy {
    /// Lines `a x + b y + c z = 0` from integer triples.
    #[new]
    fn new(triples: Vec<[i64; 3]>) -> PyResult<Self> {
        Ok(LineArrangementPy { inner: LineArrangement::from_i64(&triples).map_err(err)? })
    }

    /// `kind` is `two_modular` (with `a`, `b`), `three_modular` (with `m`) or `four_modular`.
    #[staticmethod]
    #[pyo3(signature = (kind, m = None, a = None, b = None))]
    fn hh(kind: &str, m: Option<usize>, a: Option<usize>, b: Option<usize>) -> PyResult<Self> {
        let need = |x: Option<usize>, name: &str| x.ok_or_else(|| err(format!("{kind} needs {name}")));
        let kind = match kind {
            "two_modular" => HhKind::TwoModular { a: need(a, "a")?, b: need(b, "b")? },
            "three_modular" => HhKind::ThreeModular { m: need(m, "m")? },
            "four_modular" => HhKind::FourModular,
            other => return Err(err(format!("unknown family {other:?}"))),
        };
        Ok(LineArrangementPy { inner: hh_family(kind).map_err(err)?.arrangement })
    }

    #[getter]
    fn lines(&self) -> usize {
        self.inner.line_count()
    }

    /// `{multiplicity: number of points}`.
    fn tvector(&self) -> std::collections::BTreeMap<usize, usize> {
        self.inner.tvector()
    }

    fn modular_points(&self) -> Vec<Vec<usize>> {
        self.inner.modular_points().into_iter().map(ElemSet::to_one_based).collect()
    }

    fn matroid(&self) -> Matroid {
        Matroid { inner: self.inner.matroid() }
    }
}

#[pyfunction]
fn descriptor_matroid(text: &str) -> PyResult<Matroid> {
    Matroid::from_json(text)
}

/// Names in the instance catalog.
#[pyfunction]
fn catalog_names() -> Vec<String> {
    mcb_core::catalog::catalog().into_iter().map(|e| e.name).collect()
}

#[pyfunction]
fn catalog_descriptor(name: &str) -> PyResult<String> {
    mcb_core::catalog::catalog()
        .into_iter()
        .find(|e| e.name == name)
        .map(|e| e.descriptor.to_json())
        .ok_or_else(|| err(format!("no catalog entry named {name:?}")))
}

/// The claims report as a dict; `only` restricts to some claim ids.
#[pyfunction]
#[pyo3(signature = (seed = 0, only = None))]
fn run_claims<'py>(py: Python<'py>, seed: u64, only: Option<Vec<String>>) -> PyResult<Bound<'py, PyAny>> {
    let report = py.detach(|| mcb_core::claims::run_claims(&only.unwrap_or_default(), seed)).map_err(err)?;
    to_py(py, &report)
}

#[pyfunction]
fn unexpected_degree_range<'py>(py: Python<'py>, n_lines: usize, m: usize) -> PyResult<Bound<'py, PyAny>> {
    to_py(py, &mcb_core::arrangement::lines::unexpected_degree_range(n_lines, m))
}

#[pymodule]
fn mcb_workbench(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Matroid>()?;
    m.add_class::<BuildingSet>()?;
    m.add_class::<PavingMatroid>()?;
    m.add_class::<LineArrangementPy>()?;
    m.add_function(wrap_pyfunction!(descriptor_matroid, m)?)?;
    m.add_function(wrap_pyfunction!(catalog_names, m)?)?;
    m.add_function(wrap_pyfunction!(catalog_descriptor, m)?)?;
    m.add_function(wrap_pyfunction!(run_claims, m)?)?;
    m.add_function(wrap_pyfunction!(unexpected_degree_range, m)?)?;
    Ok(())
}
