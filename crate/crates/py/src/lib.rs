//! Python bindings.

use bisum_core::decide::{decide as decide_rf, verify as verify_rf, Decision};
use bisum_core::dispersion::{disp_bi, stabilizer as stab};
use bisum_core::expr::parse_ratfunc;
use bisum_core::factor::factor_bpoly;
use bisum_core::kernel::gosper_rep;
use bisum_core::residues::poly_residues;
use bisum_core::{bpoly::fmt_upoly, reduction, BPoly, Error, Var};
use pyo3::exceptions::{PyRuntimeError, PyValueError, PyZeroDivisionError};
use pyo3::prelude::*;

fn py_err(e: Error) -> PyErr {
    match e {
        Error::Internal(_) => PyRuntimeError::new_err(e.to_string()),
        Error::DivisionByZero => PyZeroDivisionError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

/// A rational function in x and y over Q, in canonical form.
#[pyclass(name = "RatFunc", frozen, eq, from_py_object)]
#[derive(Clone, PartialEq)]
struct PyRatFunc(bisum_core::RatFunc);

#[derive(FromPyObject)]
enum RatFuncLike {
    Obj(PyRatFunc),
    Text(String),
}

impl RatFuncLike {
    fn get(self) -> PyResult<bisum_core::RatFunc> {
        match self {
            RatFuncLike::Obj(f) => Ok(f.0),
            RatFuncLike::Text(s) => parse_ratfunc(&s).map_err(py_err),
        }
    }
}

fn poly_arg(f: RatFuncLike) -> PyResult<BPoly> {
    let f = f.get()?;
    match f.den().as_constant() {
        Some(c) => Ok(f.num().scale(&c.recip())),
        None => Err(PyValueError::new_err(format!("{f} is not a polynomial"))),
    }
}

#[pymethods]
impl PyRatFunc {
    #[new]
    fn new(expr: &str) -> PyResult<Self> {
        parse_ratfunc(expr).map(PyRatFunc).map_err(py_err)
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("RatFunc('{}')", self.0)
    }

    fn __add__(&self, other: RatFuncLike) -> PyResult<Self> {
        Ok(PyRatFunc(&self.0 + &other.get()?))
    }

    fn __radd__(&self, other: RatFuncLike) -> PyResult<Self> {
        self.__add__(other)
    }

    fn __sub__(&self, other: RatFuncLike) -> PyResult<Self> {
        Ok(PyRatFunc(&self.0 - &other.get()?))
    }

    fn __mul__(&self, other: RatFuncLike) -> PyResult<Self> {
        Ok(PyRatFunc(&self.0 * &other.get()?))
    }

    fn __truediv__(&self, other: RatFuncLike) -> PyResult<Self> {
        self.0
            .checked_div(&other.get()?)
            .map(PyRatFunc)
            .map_err(py_err)
    }

    fn __neg__(&self) -> Self {
        PyRatFunc(-self.0.clone())
    }

    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    /// `f(x + m, y + n)`.
    fn shift(&self, m: i64, n: i64) -> Self {
        PyRatFunc(self.0.shift(m, n))
    }

    fn delta_x(&self) -> Self {
        PyRatFunc(self.0.delta_x())
    }

    fn delta_y(&self) -> Self {
        PyRatFunc(self.0.delta_y())
    }

    #[getter]
    fn numerator(&self) -> String {
        self.0.num().to_string()
    }

    #[getter]
    fn denominator(&self) -> String {
        self.0.den().to_string()
    }
}

/// Outcome of [`decide`]: `summable`, the certificate `(g, h)` when
/// summable, otherwise a witness.
#[pyclass(name = "Decision", frozen)]
struct PyDecision(Decision);

#[pymethods]
impl PyDecision {
    #[getter]
    fn summable(&self) -> bool {
        self.0.summable
    }

    #[getter]
    fn g(&self) -> Option<PyRatFunc> {
        self.0.g.clone().map(PyRatFunc)
    }

    #[getter]
    fn h(&self) -> Option<PyRatFunc> {
        self.0.h.clone().map(PyRatFunc)
    }

    /// `(d, j, reason)` for a failed fraction `a / d^j`.
    #[getter]
    fn witness(&self) -> Option<(String, usize, String)> {
        self.0
            .witness
            .as_ref()
            .map(|w| (w.d.to_string(), w.j, w.reason.to_string()))
    }

    fn to_json(&self) -> String {
        serde_json::to_string(&self.0).expect("serializable")
    }

    fn __repr__(&self) -> String {
        match (&self.0.g, &self.0.h) {
            (Some(g), Some(h)) => format!("Decision(summable=True, g='{g}', h='{h}')"),
            _ => format!("Decision(summable=False, witness={:?})", self.witness()),
        }
    }
}

#[pyfunction]
fn decide(f: RatFuncLike) -> PyResult<PyDecision> {
    decide_rf(&f.get()?).map(PyDecision).map_err(py_err)
}

/// Whether `f = Δx g + Δy h`.
#[pyfunction]
fn verify(f: RatFuncLike, g: RatFuncLike, h: RatFuncLike) -> PyResult<bool> {
    Ok(verify_rf(&f.get()?, &g.get()?, &h.get()?))
}

/// The residual form as JSON.
#[pyfunction]
fn reduce(f: RatFuncLike) -> PyResult<String> {
    let r = reduction::reduce(&f.get()?).map_err(py_err)?;
    Ok(serde_json::to_string(&r).expect("serializable"))
}

/// The dispersion set `{(m, n) : f = g(x + m, y + n)}`, printed.
#[pyfunction]
fn disp(f: RatFuncLike, g: RatFuncLike) -> PyResult<String> {
    Ok(disp_bi(&poly_arg(f)?, &poly_arg(g)?)
        .map_err(py_err)?
        .to_string())
}

/// `(t, l)` with `d(x + t, y) = d(x, y + l)` and `t > 0` minimal, or `None`.
#[pyfunction]
fn stabilizer(d: RatFuncLike) -> PyResult<Option<(i64, i64)>> {
    Ok(stab(&poly_arg(d)?).map_err(py_err)?.generator)
}

/// `(unit, [(factor, multiplicity), ...])`.
#[pyfunction]
fn factor(p: RatFuncLike) -> PyResult<(String, Vec<(String, usize)>)> {
    let f = factor_bpoly(&poly_arg(p)?).map_err(py_err)?;
    Ok((
        bisum_core::rat::fmt_rat(&f.unit),
        f.factors.iter().map(|(q, k)| (q.to_string(), *k)).collect(),
    ))
}

/// `(A, B, C)` with `b(x)/b(x+m) = A(x)/B(x) * C(x+m)/C(x)`.
#[pyfunction]
fn gosper(b: RatFuncLike, m: i64) -> PyResult<(String, String, String)> {
    let u = poly_arg(b)?
        .to_upoly(Var::X)
        .ok_or_else(|| PyValueError::new_err("expected a polynomial in x"))?;
    let r = gosper_rep(&u, m).map_err(py_err)?;
    Ok((
        fmt_upoly(&r.a, Var::X),
        fmt_upoly(&r.b, Var::X),
        fmt_upoly(&r.c, Var::X),
    ))
}

/// `[(orbit, multiplicity, residue), ...]` in the shift variable `var`.
#[pyfunction]
#[pyo3(signature = (f, var = "x"))]
fn residues(f: RatFuncLike, var: &str) -> PyResult<Vec<(String, usize, PyRatFunc)>> {
    let v = match var {
        "x" => Var::X,
        "y" => Var::Y,
        _ => return Err(PyValueError::new_err("var must be 'x' or 'y'")),
    };
    let rs = poly_residues(&f.get()?, v).map_err(py_err)?;
    Ok(rs
        .into_iter()
        .map(|r| {
            (
                r.orbit_rep.to_string(),
                r.multiplicity,
                PyRatFunc(r.residue),
            )
        })
        .collect())
}

#[pymodule]
fn bisum(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyRatFunc>()?;
    m.add_class::<PyDecision>()?;
    m.add_function(wrap_pyfunction!(decide, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add_function(wrap_pyfunction!(reduce, m)?)?;
    m.add_function(wrap_pyfunction!(disp, m)?)?;
    m.add_function(wrap_pyfunction!(stabilizer, m)?)?;
    m.add_function(wrap_pyfunction!(factor, m)?)?;
    m.add_function(wrap_pyfunction!(gosper, m)?)?;
    m.add_function(wrap_pyfunction!(residues, m)?)?;
    Ok(())
}
