//! Python bindings: the main types and operations of the `toric` crate
//! exposed as a `toric_py` extension module.

use num_complex::Complex64;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use toric::frames;
use toric::kempe;
use toric::pluecker;
use toric::polygon;
use toric::tree;

fn err<E: std::fmt::Display>(e: E) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// A triangulation of the model convex n-gon.
#[pyclass(name = "Triangulation", from_py_object)]
#[derive(Clone)]
struct PyTriangulation {
    inner: tree::Triangulation,
}

#[pymethods]
impl PyTriangulation {
    #[new]
    fn new(n: usize, diagonals: Vec<(usize, usize)>) -> PyResult<Self> {
        Ok(PyTriangulation {
            inner: tree::Triangulation::new(n, diagonals).map_err(err)?,
        })
    }

    /// All diagonals drawn from vertex 1.
    #[staticmethod]
    fn fan(n: usize) -> PyResult<Self> {
        Ok(PyTriangulation {
            inner: tree::Triangulation::fan(n).map_err(err)?,
        })
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    #[getter]
    fn diagonals(&self) -> Vec<(usize, usize)> {
        self.inner.diagonals().iter().copied().collect()
    }

    /// The dual trivalent tree.
    fn dual_tree(&self) -> PyTree {
        PyTree {
            inner: tree::dual_tree(&self.inner),
        }
    }

    fn to_json(&self) -> PyResult<String> {
        serde_json::to_string(&self.inner).map_err(err)
    }

    fn __repr__(&self) -> String {
        format!(
            "Triangulation(n={}, diagonals={:?})",
            self.inner.n(),
            self.diagonals()
        )
    }
}

/// The trivalent tree dual to a triangulation; leaves are 1..=n.
#[pyclass(name = "TrivalentTree", from_py_object)]
#[derive(Clone)]
struct PyTree {
    inner: tree::TrivalentTree,
}

#[pymethods]
impl PyTree {
    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    #[getter]
    fn edges(&self) -> Vec<(usize, usize)> {
        self.inner.edges().to_vec()
    }

    /// Length of the unique leaf-to-leaf path.
    fn path_weight(&self, i: usize, j: usize) -> PyResult<usize> {
        self.inner.path_weight(i, j).map_err(err)
    }

    /// Ids of internal edges, each dual to a diagonal.
    fn internal_edges(&self) -> Vec<usize> {
        self.inner.internal_edges().collect()
    }

    /// The diagonal (a, b) dual to an internal edge.
    fn edge_arc(&self, e: usize) -> Option<(usize, usize)> {
        self.inner.edge_arc(e)
    }

    fn to_json(&self) -> PyResult<String> {
        serde_json::to_string(&self.inner).map_err(err)
    }

    fn __repr__(&self) -> String {
        format!("TrivalentTree(n={})", self.inner.n())
    }
}

/// A noncrossing chord multigraph on 1..=n.
#[pyclass(name = "KempeGraph", from_py_object)]
#[derive(Clone)]
struct PyKempe {
    inner: kempe::KempeGraph,
}

#[pymethods]
impl PyKempe {
    #[new]
    fn new(n: usize, edges: Vec<(usize, usize, u64)>) -> PyResult<Self> {
        Ok(PyKempe {
            inner: kempe::KempeGraph::new(n, edges.into_iter().map(|(i, j, m)| ((i, j), m)))
                .map_err(err)?,
        })
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    #[getter]
    fn edges(&self) -> Vec<(usize, usize, u64)> {
        self.inner
            .chords()
            .iter()
            .map(|(&(i, j), &m)| (i, j, m))
            .collect()
    }

    fn degree(&self) -> u64 {
        self.inner.degree()
    }

    fn multidegree(&self) -> Vec<u64> {
        self.inner.multidegree()
    }

    /// The tree weight w^T of the labeled monomial.
    fn weight(&self, tree: &PyTree) -> PyResult<u64> {
        kempe::graph_weight(&self.inner, &tree.inner).map_err(err)
    }

    /// Degree N with multidegree = N·r, if any.
    fn r_membership(&self, r: Vec<u64>) -> Option<u64> {
        kempe::r_membership(&self.inner, &r)
    }

    fn __richcmp__(&self, other: &PyKempe, op: pyo3::basic::CompareOp) -> PyResult<bool> {
        match op {
            pyo3::basic::CompareOp::Eq => Ok(self.inner == other.inner),
            pyo3::basic::CompareOp::Ne => Ok(self.inner != other.inner),
            _ => Err(PyValueError::new_err("only ==/!= are defined")),
        }
    }

    fn __repr__(&self) -> String {
        format!("KempeGraph(n={}, edges={:?})", self.inner.n(), self.edges())
    }
}

/// `G1 ∗_T G2`: the semigroup product through the weighting bijection.
#[pyfunction]
fn star_product(a: &PyKempe, b: &PyKempe, tree: &PyTree) -> PyResult<PyKempe> {
    Ok(PyKempe {
        inner: kempe::star_product(&a.inner, &b.inner, &tree.inner).map_err(err)?,
    })
}

/// Expansion of the bracket product in the Kempe basis:
/// a list of (graph, coefficient, tree weight).
#[pyfunction]
fn straighten(a: &PyKempe, b: &PyKempe, tree: &PyTree) -> PyResult<Vec<(PyKempe, i64, u64)>> {
    let expansion = pluecker::straighten(&a.inner, &b.inner).map_err(err)?;
    expansion
        .terms()
        .iter()
        .map(|(m, &c)| {
            Ok((
                PyKempe {
                    inner: m.to_kempe().map_err(err)?,
                },
                c,
                m.weight(&tree.inner).map_err(err)?,
            ))
        })
        .collect()
}

/// A monomial as chords with exponents, a coefficient, and a tree weight.
type SignedTerm = (Vec<(usize, usize, u64)>, i64, u64);

/// The two surviving signed terms of a Plücker quadric under w^T.
#[pyfunction]
fn initial_form(
    tree: &PyTree,
    i: usize,
    j: usize,
    k: usize,
    l: usize,
) -> PyResult<Vec<SignedTerm>> {
    let form = pluecker::initial_form((i, j, k, l), &tree.inner).map_err(err)?;
    Ok(form
        .terms()
        .iter()
        .map(|(m, &c)| {
            (
                m.exponents().iter().map(|(&(a, b), &e)| (a, b, e)).collect(),
                c,
                m.weight(&tree.inner).unwrap(),
            )
        })
        .collect())
}

/// The Hopf map F(z, w) ∈ R³ with ‖F‖ = (|z|² + |w|²)/4.
#[pyfunction]
fn hopf(z: Complex64, w: Complex64) -> (f64, f64, f64) {
    let v = polygon::hopf(z, w);
    (v.x, v.y, v.z)
}

/// Membership in the side-length cone 2·r_i ≤ Σ r_j.
#[pyfunction]
fn in_cone_dn(r: Vec<f64>) -> PyResult<bool> {
    polygon::in_cone_dn(&r).map_err(err)
}

/// A closed polygon in R³ given by its edge vectors.
#[pyclass(name = "Polygon", from_py_object)]
#[derive(Clone)]
struct PyPolygon {
    inner: polygon::Polygon,
}

#[pymethods]
impl PyPolygon {
    #[new]
    fn new(edges: Vec<(f64, f64, f64)>) -> Self {
        PyPolygon {
            inner: polygon::Polygon::new(
                edges
                    .into_iter()
                    .map(|(x, y, z)| nalgebra_vec(x, y, z))
                    .collect(),
            ),
        }
    }

    /// Random closed polygon with the given side lengths.
    #[staticmethod]
    #[pyo3(signature = (r, seed = 0))]
    fn sample(r: Vec<f64>, seed: u64) -> PyResult<Self> {
        Ok(PyPolygon {
            inner: polygon::sample_linkage(&r, seed).map_err(err)?,
        })
    }

    #[getter]
    fn edges(&self) -> Vec<(f64, f64, f64)> {
        self.inner.edges().iter().map(|e| (e.x, e.y, e.z)).collect()
    }

    fn side_lengths(&self) -> Vec<f64> {
        self.inner.side_lengths()
    }

    fn perimeter(&self) -> f64 {
        self.inner.perimeter()
    }

    fn closure_residual(&self) -> f64 {
        self.inner.closure_residual()
    }

    fn diagonal_length(&self, a: usize, b: usize) -> PyResult<f64> {
        self.inner.diagonal_length(a, b).map_err(err)
    }

    /// Rotate edges a..b-1 about the diagonal (a, b) by theta.
    fn bend(&self, a: usize, b: usize, theta: f64) -> PyResult<Self> {
        Ok(PyPolygon {
            inner: self.inner.bend(a, b, theta).map_err(err)?,
        })
    }

    /// Diagonals of the triangulation collapsing on this polygon.
    #[pyo3(signature = (t, tol = 1e-8))]
    fn stratum(&self, t: &PyTriangulation, tol: f64) -> PyResult<Vec<(usize, usize)>> {
        let sig = polygon::stratum_signature(&self.inner, &t.inner, tol).map_err(err)?;
        Ok(sig.zero_diagonals.into_iter().collect())
    }

    /// Canonical representative of the T-congruence class.
    #[pyo3(signature = (t, tol = 1e-8))]
    fn ky_canonicalize(&self, t: &PyTriangulation, tol: f64) -> PyResult<Self> {
        Ok(PyPolygon {
            inner: polygon::ky_canonicalize(&self.inner, &t.inner, tol).map_err(err)?,
        })
    }

    fn to_json(&self) -> PyResult<String> {
        serde_json::to_string(&self.inner).map_err(err)
    }

    fn __repr__(&self) -> String {
        format!("Polygon(n={})", self.inner.n())
    }
}

fn nalgebra_vec(x: f64, y: f64, z: f64) -> nalgebra::Vector3<f64> {
    nalgebra::Vector3::new(x, y, z)
}

/// Spin frames on every slot of the decomposed forest of a tree.
#[pyclass(name = "ForestFraming", from_py_object)]
#[derive(Clone)]
struct PyFraming {
    inner: frames::ForestFraming,
}

#[pymethods]
impl PyFraming {
    /// Extend a closed edge framing (C² columns) over the forest of the
    /// given triangulation.
    #[staticmethod]
    fn extend(t: &PyTriangulation, cols: Vec<(Complex64, Complex64)>) -> PyResult<Self> {
        let forest = tree::decompose(&tree::dual_tree(&t.inner));
        let edges: Vec<frames::SpinFrame> = cols
            .into_iter()
            .map(|(z, w)| frames::SpinFrame::from_c2(z, w))
            .collect();
        Ok(PyFraming {
            inner: frames::extend_framing(&edges, &forest).map_err(err)?,
        })
    }

    /// The C² columns of the distinguished (leaf) slots.
    fn restrict(&self) -> PyResult<Vec<(Complex64, Complex64)>> {
        let edges = self.inner.restrict_to_leaves().map_err(err)?;
        Ok(edges.iter().map(frames::SpinFrame::c2).collect())
    }

    fn polygon(&self) -> PyPolygon {
        PyPolygon {
            inner: self.inner.leaf_polygon(),
        }
    }

    fn tripod_residuals(&self) -> Vec<f64> {
        self.inner.tripod_residuals()
    }

    fn pair_mismatches(&self) -> Vec<f64> {
        self.inner.pair_mismatches()
    }

    fn is_normalized(&self) -> bool {
        self.inner
            .is_normalized(1e-9 * self.inner.lambda_scale())
    }

    /// Per slot: (tree edge id, λ, 2 × geometric length).
    fn hamiltonians(&self) -> Vec<(usize, f64, f64)> {
        frames::hamiltonians(&self.inner)
            .into_iter()
            .map(|h| (h.edge, h.lambda, h.geometric))
            .collect()
    }

    /// Bend by the spatial angle theta at an internal tree edge; the frame
    /// phase is e^{iθ/2}.
    fn bend(&self, edge: usize, theta: f64) -> PyResult<Self> {
        let phase = Complex64::from_polar(1.0, theta / 2.0);
        Ok(PyFraming {
            inner: frames::bend_lift(&self.inner, edge, phase).map_err(err)?,
        })
    }

    /// Right torus action on the leaf frames (phases on the unit circle).
    fn edge_rotate(&self, phases: Vec<Complex64>) -> PyResult<Self> {
        Ok(PyFraming {
            inner: frames::edge_rotate(&self.inner, &phases).map_err(err)?,
        })
    }

    fn to_json(&self) -> PyResult<String> {
        serde_json::to_string(&self.inner).map_err(err)
    }

    fn __repr__(&self) -> String {
        format!("ForestFraming(n={})", self.inner.n())
    }
}

#[pymodule]
fn toric_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyTriangulation>()?;
    m.add_class::<PyTree>()?;
    m.add_class::<PyKempe>()?;
    m.add_class::<PyPolygon>()?;
    m.add_class::<PyFraming>()?;
    m.add_function(wrap_pyfunction!(star_product, m)?)?;
    m.add_function(wrap_pyfunction!(straighten, m)?)?;
    m.add_function(wrap_pyfunction!(initial_form, m)?)?;
    m.add_function(wrap_pyfunction!(hopf, m)?)?;
    m.add_function(wrap_pyfunction!(in_cone_dn, m)?)?;
    Ok(())
}
