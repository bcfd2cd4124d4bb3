//! Python bindings. Exact values cross the boundary as `"p/q"` strings, which
//! `fractions.Fraction` parses directly.

use frieze_core::deformation::{self, DeformationInput};
use frieze_core::frieze::{self as core_frieze, ExactFrieze};
use frieze_core::geometry;
use frieze_core::io::frieze_to_json;
use frieze_core::scalar::{format_rational, parse_rational, Rational, Scalar};
use frieze_core::search;
use frieze_core::sign::{self, CyclicSeq, ProjPoint, SignError};
use frieze_core::triangulation::{self, Triangulation};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

fn value_error(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// Accepts `int`, `str` ("p/q") or `fractions.Fraction` (via `str`).
fn to_rational(obj: &Bound<'_, PyAny>) -> PyResult<Rational> {
    if let Ok(i) = obj.extract::<i64>() {
        return Ok(Rational::from_i64(i));
    }
    let s = obj.str()?.to_string();
    parse_rational(&s).map_err(value_error)
}

fn strings(v: &[Rational]) -> Vec<String> {
    v.iter().map(format_rational).collect()
}

/// Exact frieze pattern.
#[pyclass(module = "frieze", name = "Frieze", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyFrieze {
    inner: ExactFrieze,
}

#[pymethods]
impl PyFrieze {
    /// Builds the frieze with the given first row (ints, "p/q" strings or
    /// Fractions).
    #[new]
    fn new(first_row: Vec<Bound<'_, PyAny>>) -> PyResult<Self> {
        let a = first_row.iter().map(to_rational).collect::<PyResult<Vec<_>>>()?;
        let inner = core_frieze::build_from_first_row(&a).map_err(value_error)?;
        Ok(PyFrieze { inner })
    }

    /// Conway–Coxeter frieze of a triangulation given by its diagonals.
    #[staticmethod]
    fn from_triangulation(n: usize, diagonals: Vec<(usize, usize)>) -> PyResult<Self> {
        let t = Triangulation::new(n, diagonals).map_err(value_error)?;
        let inner = triangulation::triangulation_to_frieze(&t).map_err(value_error)?;
        Ok(PyFrieze { inner })
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    #[getter]
    fn width(&self) -> usize {
        self.inner.width()
    }

    /// `v_{i, i+d}` as "p/q".
    fn entry(&self, i: isize, d: usize) -> PyResult<String> {
        self.inner.entry(i, d).map(format_rational).map_err(value_error)
    }

    fn first_row(&self) -> Vec<String> {
        strings(&self.inner.first_row())
    }

    /// Row `k`: `entry(i, k + 1)` for `i = 0..n`.
    fn row(&self, k: usize) -> PyResult<Vec<String>> {
        self.inner.row(k).map(|r| strings(&r)).map_err(value_error)
    }

    /// `entries()[d][i] == entry(i, d)` for `d = 0..=n`.
    fn entries(&self) -> Vec<Vec<String>> {
        self.inner.rows_by_span().iter().map(|r| strings(r)).collect()
    }

    /// `{"passed": bool, "failure": None | {"kind", "i", "d", "detail"}}`.
    fn validate<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        let report = core_frieze::validate(&self.inner);
        let out = PyDict::new(py);
        out.set_item("passed", report.passed)?;
        match report.failure {
            Some(f) => {
                let d = PyDict::new(py);
                d.set_item("kind", format!("{:?}", f.kind).to_lowercase())?;
                d.set_item("i", f.i)?;
                d.set_item("d", f.d)?;
                d.set_item("detail", f.detail)?;
                out.set_item("failure", d)?;
            }
            None => out.set_item("failure", py.None())?,
        }
        Ok(out)
    }

    /// Frieze JSON with all entries.
    fn to_json(&self) -> String {
        frieze_to_json(&self.inner, true).to_string()
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Frieze([{}])", self.first_row().join(", "))
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.inner == other.inner
    }
}

/// Number of triangulations of an n-gon, as a decimal string.
#[pyfunction]
fn catalan_count(n: usize) -> PyResult<String> {
    if n < 3 {
        return Err(PyValueError::new_err("n must be at least 3"));
    }
    Ok(triangulation::catalan(n - 2).to_string())
}

/// All triangulations of an n-gon, each as a list of diagonals.
#[pyfunction]
fn triangulations(n: usize) -> PyResult<Vec<Vec<(usize, usize)>>> {
    let ts = triangulation::enumerate_triangulations(n).map_err(value_error)?;
    Ok(ts.map(|t| t.diagonals().to_vec()).collect())
}

/// Cyclic sign changes, zeros skipped. Exact when every value is an int,
/// string or Fraction; floats use the relative zero threshold.
#[pyfunction]
fn sign_changes(values: Vec<Bound<'_, PyAny>>) -> PyResult<usize> {
    let any_float = values.iter().any(|v| v.is_instance_of::<pyo3::types::PyFloat>());
    if any_float {
        let xs = values.iter().map(|v| v.extract::<f64>()).collect::<PyResult<Vec<_>>>()?;
        Ok(sign::sign_changes(&CyclicSeq::new(xs)))
    } else {
        let xs = values.iter().map(to_rational).collect::<PyResult<Vec<_>>>()?;
        Ok(sign::sign_changes(&CyclicSeq::new(xs)))
    }
}

/// `{"k", "count", "verdict", "sequence"}` for row `k` of `f - g`.
#[pyfunction]
fn problem1_check<'py>(py: Python<'py>, f: &PyFrieze, g: &PyFrieze, k: usize) -> PyResult<Bound<'py, PyDict>> {
    let out = PyDict::new(py);
    out.set_item("k", k)?;
    match sign::problem1_check(&f.inner, &g.inner, k) {
        Ok(c) => {
            out.set_item("count", c.count)?;
            out.set_item("verdict", c.verdict.as_str())?;
            out.set_item("sequence", strings(c.sequence.values()))?;
        }
        Err(SignError::Degenerate(_)) => {
            out.set_item("count", 0)?;
            out.set_item("verdict", "degenerate")?;
            out.set_item("sequence", vec!["0"; f.inner.n()])?;
        }
        Err(e) => return Err(value_error(e)),
    }
    Ok(out)
}

/// `sum (a_i - b_i) U_i V_i` for Hill solution components `cu`, `cv`.
#[pyfunction]
fn orthogonality_sum(f: &PyFrieze, g: &PyFrieze, cu: usize, cv: usize) -> PyResult<String> {
    if cu > 1 || cv > 1 {
        return Err(PyValueError::new_err("components are 0 or 1"));
    }
    sign::orthogonality_sum(&f.inner, &g.inner, cu, cv)
        .map(|r| format_rational(&r))
        .map_err(value_error)
}

fn proj_point(obj: &Bound<'_, PyAny>) -> PyResult<ProjPoint<Rational>> {
    if obj.is_none() {
        return Ok(ProjPoint::Infinity);
    }
    if let Ok(s) = obj.extract::<String>() {
        if s.trim() == "inf" {
            return Ok(ProjPoint::Infinity);
        }
    }
    to_rational(obj).map(ProjPoint::Finite)
}

/// `([a,b,c,d]_1, [a,b,c,d]_2)` exactly; `None` or "inf" is the point at
/// infinity.
#[pyfunction]
fn cross_ratios(
    a: Bound<'_, PyAny>,
    b: Bound<'_, PyAny>,
    c: Bound<'_, PyAny>,
    d: Bound<'_, PyAny>,
) -> PyResult<(String, String)> {
    let p = [proj_point(&a)?, proj_point(&b)?, proj_point(&c)?, proj_point(&d)?];
    let c1 = sign::cross_ratio_1(&p[0], &p[1], &p[2], &p[3]).map_err(value_error)?;
    let c2 = sign::cross_ratio_2(&p[0], &p[1], &p[2], &p[3]).map_err(value_error)?;
    Ok((format_rational(&c1), format_rational(&c2)))
}

/// The width-5 counterexample: both friezes and the report as JSON.
#[pyfunction]
fn cuntz() -> PyResult<(PyFrieze, PyFrieze, String)> {
    let c = search::cuntz_counterexample().map_err(value_error)?;
    let report = serde_json::to_string(&c.report).map_err(value_error)?;
    Ok((PyFrieze { inner: c.first }, PyFrieze { inner: c.second }, report))
}

/// Exhaustive scan over Conway–Coxeter pairs; returns the report as JSON.
#[pyfunction]
#[pyo3(signature = (width, ks, cap=None))]
fn scan_cc(py: Python<'_>, width: usize, ks: Vec<usize>, cap: Option<usize>) -> PyResult<String> {
    let result = py.detach(|| search::scan_cc(width, &ks, cap));
    match result {
        Ok(r) => serde_json::to_string(&r).map_err(value_error),
        Err(search::SearchError::CapExceeded(r)) => serde_json::to_string(&r).map_err(value_error),
        Err(e) => Err(value_error(e)),
    }
}

/// Random pairs of real friezes of odd period; returns the report as JSON.
#[pyfunction]
fn scan_random(py: Python<'_>, n: usize, ks: Vec<usize>, samples: usize, seed: u64) -> PyResult<String> {
    let r = py.detach(|| search::scan_random(n, &ks, samples, seed)).map_err(value_error)?;
    serde_json::to_string(&r).map_err(value_error)
}

/// Random real frieze of odd period `n`: `rows[d][i] == entry(i, d)`.
#[pyfunction]
fn random_frieze(n: usize, seed: u64) -> PyResult<Vec<Vec<f64>>> {
    geometry::random_frieze(n, seed).map(|f| f.rows_by_span()).map_err(value_error)
}

/// `c_i` of the first-order deformation of the constant frieze.
#[pyfunction]
fn c_sequence(q: Vec<f64>, k: usize) -> PyResult<Vec<f64>> {
    let inp = DeformationInput::new(q, k).map_err(value_error)?;
    deformation::c_sequence(&inp).map(|c| c.c).map_err(value_error)
}

/// `{"count", "degenerate", "verdict", "residuals"}` for a deformation.
#[pyfunction]
fn infinitesimal_check<'py>(py: Python<'py>, q: Vec<f64>, k: usize) -> PyResult<Bound<'py, PyDict>> {
    let inp = DeformationInput::new(q, k).map_err(value_error)?;
    let report = deformation::infinitesimal_check(&inp).map_err(value_error)?;
    let cs = deformation::c_sequence(&inp).map_err(value_error)?;
    let out = PyDict::new(py);
    out.set_item("count", report.count)?;
    out.set_item("degenerate", report.degenerate)?;
    out.set_item("verdict", report.verdict)?;
    out.set_item("residuals", deformation::harmonic_orthogonality_report(&cs).as_array().to_vec())?;
    Ok(out)
}

#[pymodule]
fn frieze(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyFrieze>()?;
    m.add_function(wrap_pyfunction!(catalan_count, m)?)?;
    m.add_function(wrap_pyfunction!(triangulations, m)?)?;
    m.add_function(wrap_pyfunction!(sign_changes, m)?)?;
    m.add_function(wrap_pyfunction!(problem1_check, m)?)?;
    m.add_function(wrap_pyfunction!(orthogonality_sum, m)?)?;
    m.add_function(wrap_pyfunction!(cross_ratios, m)?)?;
    m.add_function(wrap_pyfunction!(cuntz, m)?)?;
    m.add_function(wrap_pyfunction!(scan_cc, m)?)?;
    m.add_function(wrap_pyfunction!(scan_random, m)?)?;
    m.add_function(wrap_pyfunction!(random_frieze, m)?)?;
    m.add_function(wrap_pyfunction!(c_sequence, m)?)?;
    m.add_function(wrap_pyfunction!(infinitesimal_check, m)?)?;
    Ok(())
}
