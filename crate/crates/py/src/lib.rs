use basicity::embed::{
    generate_rn_embedding, svg_for_complex, validate_projection_constraints, SvgOptions,
};
use basicity::game::{parse_board, solve};
use basicity::graphs::least_rn;
use basicity::rational::parse_rational;
use basicity::witness::{basic_certificate, PointsCertificate};
use basicity::{
    decompose_exact, e_iterate, embeds_in_book, evaluate, find_closed_lightning, forbidden_check,
    is_basic, max_lightning_length, parse_point_set, ExactOutcome, LightningLength, Multigraph,
    Point, Rational, Valuation,
};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

fn err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn to_rational(obj: &Bound<'_, PyAny>) -> PyResult<Rational> {
    if let Ok(v) = obj.extract::<i64>() {
        return Ok(Rational::from_integer(v.into()));
    }
    parse_rational(obj.str()?.to_str()?).map_err(err)
}

fn to_fraction<'py>(py: Python<'py>, r: &Rational) -> PyResult<Bound<'py, PyAny>> {
    py.import("fractions")?
        .getattr("Fraction")?
        .call1((r.to_string(),))
}

fn to_point(obj: &Bound<'_, PyAny>) -> PyResult<Point> {
    let coords = obj
        .try_iter()?
        .map(|c| to_rational(&c?))
        .collect::<PyResult<Vec<_>>>()?;
    Ok(Point::new(coords))
}

/// Finite subset of Q^d in canonical (lexicographic) order. Coordinates may
/// be ints, strings like "7/3", or `fractions.Fraction`.
#[pyclass(name = "PointSet", frozen)]
struct PyPointSet(basicity::PointSet);

#[pymethods]
impl PyPointSet {
    #[new]
    #[pyo3(signature = (points, dim = None))]
    fn new(points: &Bound<'_, PyAny>, dim: Option<usize>) -> PyResult<Self> {
        let pts = points
            .try_iter()?
            .map(|p| to_point(&p?))
            .collect::<PyResult<Vec<_>>>()?;
        let dim = dim.or(pts.first().map(Point::dim)).unwrap_or(2);
        basicity::PointSet::new(dim, pts)
            .map(PyPointSet)
            .map_err(err)
    }

    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        parse_point_set(text).map(PyPointSet).map_err(err)
    }

    #[getter]
    fn dim(&self) -> usize {
        self.0.dim()
    }

    fn __len__(&self) -> usize {
        self.0.len()
    }

    fn __repr__(&self) -> String {
        format!("PointSet(dim={}, len={})", self.0.dim(), self.0.len())
    }

    fn points<'py>(&self, py: Python<'py>) -> PyResult<Vec<Vec<Bound<'py, PyAny>>>> {
        self.0
            .iter()
            .map(|p| p.coords().iter().map(|c| to_fraction(py, c)).collect())
            .collect()
    }

    fn to_text(&self) -> String {
        self.0.to_text()
    }

    fn is_basic(&self) -> bool {
        is_basic(&self.0).basic
    }

    /// Least n with E^n(K) empty, or None.
    fn lightning_index(&self) -> PyResult<Option<usize>> {
        Ok(e_iterate(&self.0).map_err(err)?.index)
    }

    /// Number of points on a longest lightning, None when unbounded.
    fn max_lightning_length(&self) -> PyResult<Option<usize>> {
        Ok(match max_lightning_length(&self.0).map_err(err)? {
            LightningLength::Finite(n) => Some(n),
            LightningLength::Infinite => None,
        })
    }

    /// Indices of a closed lightning, first index repeated at the end.
    fn closed_lightning(&self) -> PyResult<Option<Vec<usize>>> {
        Ok(find_closed_lightning(&self.0)
            .map_err(err)?
            .map(|c| c.indices))
    }

    /// Certificate text for the basicness verdict.
    fn certificate(&self) -> String {
        let v = is_basic(&self.0);
        match &v.witness {
            Some(w) => PointsCertificate::from_witness(w).to_text(),
            None => basic_certificate(&self.0)
                .map(|c| c.to_text())
                .unwrap_or_default(),
        }
    }

    /// Exact decomposition of `values` (canonical order). Raises ValueError
    /// carrying the infeasibility certificate when none exists.
    fn decompose(&self, values: &Bound<'_, PyAny>) -> PyResult<PyDecomposition> {
        let vals = values
            .try_iter()?
            .map(|v| to_rational(&v?))
            .collect::<PyResult<Vec<_>>>()?;
        match decompose_exact(&self.0, &Valuation::new(vals)).map_err(err)? {
            ExactOutcome::Decomposed(d) => Ok(PyDecomposition(d)),
            ExactOutcome::Infeasible(c) => {
                Err(err(PointsCertificate::from_infeasibility(&c).to_text()))
            }
        }
    }
}

#[pyclass(name = "Decomposition", frozen)]
struct PyDecomposition(basicity::Decomposition);

#[pymethods]
impl PyDecomposition {
    /// One dict per axis, coordinate -> value.
    fn tables<'py>(&self, py: Python<'py>) -> PyResult<Vec<Bound<'py, PyDict>>> {
        self.0
            .per_axis
            .iter()
            .map(|g| {
                let d = PyDict::new(py);
                for (c, v) in &g.table {
                    d.set_item(to_fraction(py, c)?, to_fraction(py, v)?)?;
                }
                Ok(d)
            })
            .collect()
    }

    fn evaluate<'py>(
        &self,
        py: Python<'py>,
        point: &Bound<'py, PyAny>,
    ) -> PyResult<Bound<'py, PyAny>> {
        let v = evaluate(&self.0, &to_point(point)?).map_err(err)?;
        to_fraction(py, &v)
    }

    fn to_text(&self) -> String {
        self.0.to_text()
    }
}

#[pyclass(name = "Graph", frozen)]
struct PyGraph(Multigraph);

#[pymethods]
impl PyGraph {
    #[new]
    #[pyo3(signature = (edges, vertices = Vec::new()))]
    fn new(edges: Vec<(String, String)>, vertices: Vec<String>) -> Self {
        PyGraph(Multigraph::from_edges(&vertices, &edges))
    }

    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        Multigraph::parse(text).map(PyGraph).map_err(err)
    }

    fn __repr__(&self) -> String {
        format!(
            "Graph(vertices={}, edges={})",
            self.0.vertex_count(),
            self.0.edge_count()
        )
    }

    /// Forbidden-subgraph flags, plane verdict and defect.
    fn check<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        let r = forbidden_check(&self.0);
        let d = PyDict::new(py);
        d.set_item("has_cycle", r.has_cycle())?;
        d.set_item("has_t5", r.has_t5())?;
        d.set_item("has_c", r.has_c())?;
        d.set_item("embeddable", !r.any())?;
        d.set_item("defect", basicity::defect(&self.0))?;
        Ok(d)
    }

    fn embeds_in_book(&self, pages: usize) -> bool {
        embeds_in_book(&self.0, pages)
    }

    /// `(n, map_text)` for the least n found with the graph inside R_n.
    #[pyo3(signature = (max_n = None))]
    fn least_rn(&self, max_n: Option<usize>) -> Option<(usize, String)> {
        let bound = max_n.unwrap_or_else(|| self.0.non_leaf_count().max(1));
        least_rn(&self.0, bound).map(|(n, m)| (n, m.to_text()))
    }
}

/// Winner of the weights game on a board file's text.
#[pyfunction]
fn solve_game(text: &str) -> PyResult<String> {
    let board = parse_board(text).map_err(err)?;
    Ok(solve(&board).winner.to_string())
}

/// Segments of the basic plane embedding of R_n as
/// `((x0, y0), (x1, y1), (tag0, tag1))` with Fraction coordinates.
#[pyfunction]
#[allow(clippy::type_complexity)]
fn embed_rn<'py>(
    py: Python<'py>,
    n: usize,
) -> PyResult<
    Vec<(
        (Bound<'py, PyAny>, Bound<'py, PyAny>),
        (Bound<'py, PyAny>, Bound<'py, PyAny>),
        (String, String),
    )>,
> {
    let sc = generate_rn_embedding(n);
    if !validate_projection_constraints(&sc).passed() {
        return Err(err("generated embedding failed validation"));
    }
    sc.segments
        .iter()
        .map(|s| {
            Ok((
                (to_fraction(py, s.a.x())?, to_fraction(py, s.a.y())?),
                (to_fraction(py, s.b.x())?, to_fraction(py, s.b.y())?),
                s.tag.clone(),
            ))
        })
        .collect()
}

#[pyfunction]
fn rn_svg(n: usize) -> String {
    svg_for_complex(&generate_rn_embedding(n), None, SvgOptions::default())
}

#[pymodule]
#[pyo3(name = "basicity")]
pub fn basicity_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyPointSet>()?;
    m.add_class::<PyDecomposition>()?;
    m.add_class::<PyGraph>()?;
    m.add_function(wrap_pyfunction!(solve_game, m)?)?;
    m.add_function(wrap_pyfunction!(embed_rn, m)?)?;
    m.add_function(wrap_pyfunction!(rn_svg, m)?)?;
    Ok(())
}
