//! Python bindings: `import pqbbh`.
//!
//! Functions can be passed as a registry name (`"bbh_metric"`), an expression
//! string in `t` (`"t/(1+t)"`) or any Python callable taking a float.

use pyo3::create_exception;
use pyo3::exceptions::{PyArithmeticError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyString};

use pqbbh_core::analysis::{
    self, convergence_report, korovkin_discrepancy, rate_bound_check, GridSpec, HarmonicSchedule, DEFAULT_POINTS,
    DEFAULT_X_MAX,
};
use pqbbh_core::{parse_expression, Error, Expr, FunctionError, OperatorSpec, RealFunction, Registered};

create_exception!(
    pqbbh,
    PqbbhError,
    PyValueError,
    "Invalid parameters or operator configuration."
);
create_exception!(pqbbh, DomainError, PyArithmeticError, "Numerical domain failure.");

fn to_py(e: Error) -> PyErr {
    match e {
        Error::InvalidParams(_) | Error::InvalidOperator(_) | Error::VariantMismatch(_) | Error::Grid(_) => {
            PqbbhError::new_err(e.to_string())
        }
        _ => DomainError::new_err(e.to_string()),
    }
}

/// `q == p` selects the limit case.
fn make_params(p: f64, q: f64) -> Result<pqbbh_core::PqParams, Error> {
    if p == q {
        pqbbh_core::PqParams::limit(p)
    } else {
        pqbbh_core::PqParams::new(p, q)
    }
}

/// A function argument resolved from Python.
enum Function {
    Registry(Registered),
    Expr(Expr),
    Callable(Py<PyAny>),
}

impl RealFunction for Function {
    fn eval(&self, t: f64) -> Result<f64, FunctionError> {
        match self {
            Function::Registry(r) => RealFunction::eval(r, t),
            Function::Expr(e) => RealFunction::eval(e, t),
            Function::Callable(obj) => Python::attach(|py| {
                obj.bind(py)
                    .call1((t,))
                    .and_then(|v| v.extract::<f64>())
                    .map_err(|err| FunctionError {
                        what: format!("python callable ({err})"),
                        t,
                    })
            }),
        }
    }
}

fn resolve(f: &Bound<'_, PyAny>) -> PyResult<Function> {
    if let Ok(s) = f.cast::<PyString>() {
        let text = s.to_str()?;
        if let Ok(r) = text.parse::<Registered>() {
            return Ok(Function::Registry(r));
        }
        return parse_expression(text)
            .map(Function::Expr)
            .map_err(|e| PqbbhError::new_err(e.to_string()));
    }
    if f.is_callable() {
        return Ok(Function::Callable(f.clone().unbind()));
    }
    Err(PqbbhError::new_err(
        "expected a registry name, an expression string or a callable",
    ))
}

fn parse_schedule(text: &str) -> PyResult<HarmonicSchedule> {
    text.parse::<HarmonicSchedule>().map_err(to_py)
}

#[pyclass(name = "PqParams", module = "pqbbh", frozen, from_py_object)]
#[derive(Clone, Copy)]
struct PyPqParams {
    inner: pqbbh_core::PqParams,
}

#[pymethods]
impl PyPqParams {
    #[new]
    fn new(p: f64, q: f64) -> PyResult<Self> {
        Ok(Self {
            inner: make_params(p, q).map_err(to_py)?,
        })
    }

    #[getter]
    fn p(&self) -> f64 {
        self.inner.p()
    }

    #[getter]
    fn q(&self) -> f64 {
        self.inner.q()
    }

    #[getter]
    fn is_limit(&self) -> bool {
        self.inner.is_limit()
    }

    /// `[n]_{p,q}`
    fn integer(&self, n: u32) -> f64 {
        pqbbh_core::pq_integer(n, &self.inner)
    }

    fn factorial(&self, n: u32) -> f64 {
        pqbbh_core::pq_factorial(n, &self.inner)
    }

    fn binomial(&self, n: u32, k: u32) -> PyResult<f64> {
        pqbbh_core::pq_binomial(n, k, &self.inner).map_err(to_py)
    }

    /// `Π_{s<n} (p^s + q^s x)`
    fn pochhammer_ell(&self, n: u32, x: f64) -> f64 {
        pqbbh_core::pochhammer_ell(n, x, &self.inner)
    }

    fn euler_coefficients(&self, n: u32) -> Vec<f64> {
        pqbbh_core::euler_coefficients(n, &self.inner)
    }

    fn __repr__(&self) -> String {
        format!("PqParams(p={}, q={})", self.inner.p(), self.inner.q())
    }
}

/// `L_n` with the base nodes, or the Stancu variant when `gamma` and `beta`
/// are both given.
#[pyclass(name = "Operator", module = "pqbbh", frozen)]
struct PyOperator {
    spec: OperatorSpec,
}

#[pymethods]
impl PyOperator {
    #[new]
    #[pyo3(signature = (n, p, q, gamma=None, beta=None))]
    fn new(n: u32, p: f64, q: f64, gamma: Option<f64>, beta: Option<f64>) -> PyResult<Self> {
        let params = make_params(p, q).map_err(to_py)?;
        let spec = match (gamma, beta) {
            (None, None) => OperatorSpec::base(n, params),
            (Some(g), Some(b)) => OperatorSpec::stancu(n, params, g, b),
            _ => return Err(PqbbhError::new_err("gamma and beta must be given together")),
        }
        .map_err(to_py)?;
        Ok(Self { spec })
    }

    #[getter]
    fn n(&self) -> u32 {
        self.spec.n()
    }

    #[getter]
    fn params(&self) -> PyPqParams {
        PyPqParams {
            inner: self.spec.params(),
        }
    }

    #[getter]
    fn is_stancu(&self) -> bool {
        !matches!(self.spec.variant(), pqbbh_core::Variant::Base)
    }

    fn nodes(&self) -> Vec<f64> {
        self.spec.nodes().values().to_vec()
    }

    fn weights(&self, x: f64) -> PyResult<Vec<f64>> {
        Ok(self.spec.weights(x).map_err(to_py)?.values().to_vec())
    }

    fn evaluate(&self, f: &Bound<'_, PyAny>, x: f64) -> PyResult<f64> {
        let f = resolve(f)?;
        self.spec.evaluate(&f, x).map_err(to_py)
    }

    /// Closed form of `L_n((t/(1+t))^nu; x)`.
    fn moment(&self, nu: u32, x: f64) -> PyResult<f64> {
        analysis::moment_closed(&self.spec, nu, x).map_err(to_py)
    }

    fn delta_n(&self, x: f64) -> PyResult<f64> {
        analysis::delta_n(&self.spec, x).map_err(to_py)
    }

    /// `(lhs, rhs)` of the divided-difference representation at `x`.
    fn representation(&self, f: &Bound<'_, PyAny>, x: f64) -> PyResult<(f64, f64)> {
        let f = resolve(f)?;
        let r = pqbbh_core::representation(&self.spec, &f, x).map_err(to_py)?;
        Ok((r.lhs, r.rhs))
    }

    fn stancu_bound<'py>(&self, py: Python<'py>, m: f64, alpha: f64) -> PyResult<Bound<'py, PyDict>> {
        let b = analysis::stancu_bound(&self.spec, m, alpha).map_err(to_py)?;
        let d = PyDict::new(py);
        d.set_item("terms", b.terms.to_vec())?;
        d.set_item("max_term", b.max_term)?;
        d.set_item("bound", b.bound)?;
        d.set_item("degenerate", b.degenerate())?;
        Ok(d)
    }

    fn __repr__(&self) -> String {
        let params = self.spec.params();
        match self.spec.variant() {
            pqbbh_core::Variant::Base => {
                format!("Operator(n={}, p={}, q={})", self.spec.n(), params.p(), params.q())
            }
            pqbbh_core::Variant::Stancu { gamma, beta } => format!(
                "Operator(n={}, p={}, q={}, gamma={gamma}, beta={beta})",
                self.spec.n(),
                params.p(),
                params.q()
            ),
        }
    }
}

/// Pretty-prints a parsed expression; raises on syntax errors.
#[pyfunction]
fn parse(text: &str) -> PyResult<String> {
    parse_expression(text)
        .map(|e| e.to_string())
        .map_err(|e| PqbbhError::new_err(e.to_string()))
}

#[pyfunction]
fn eval_expression(text: &str, t: f64) -> PyResult<f64> {
    let ast = parse_expression(text).map_err(|e| PqbbhError::new_err(e.to_string()))?;
    ast.eval(t).map_err(|e| DomainError::new_err(e.to_string()))
}

#[pyfunction]
#[pyo3(signature = (n, p, q, nu, x_max=DEFAULT_X_MAX, points=DEFAULT_POINTS))]
fn discrepancy(n: u32, p: f64, q: f64, nu: u32, x_max: f64, points: usize) -> PyResult<f64> {
    let spec = OperatorSpec::base(n, make_params(p, q).map_err(to_py)?).map_err(to_py)?;
    let grid = GridSpec::half_line(x_max, points).map_err(to_py)?;
    korovkin_discrepancy(&spec, nu, &grid).map_err(to_py)
}

/// `(n, p_n, q_n, [d0, d1, d2], sup_delta)`
type ConvergenceRow = (u32, f64, f64, [f64; 3], f64);

/// One row per degree along `schedule`.
#[pyfunction]
#[pyo3(signature = (schedule, degrees, x_max=DEFAULT_X_MAX, points=DEFAULT_POINTS))]
fn convergence(
    py: Python<'_>,
    schedule: &str,
    degrees: Vec<u32>,
    x_max: f64,
    points: usize,
) -> PyResult<Vec<ConvergenceRow>> {
    let schedule = parse_schedule(schedule)?;
    let grid = GridSpec::half_line(x_max, points).map_err(to_py)?;
    let report = py
        .detach(|| convergence_report(&schedule, &degrees, &grid, None))
        .map_err(to_py)?;
    Ok(report
        .rows
        .iter()
        .map(|r| (r.n, r.p, r.q, r.discrepancy, r.sup_delta))
        .collect())
}

/// Rows `(x, lhs, rhs, pass)` of the rate check for `L_n` under `schedule`.
#[pyfunction]
#[pyo3(signature = (schedule, n, f, x_max=DEFAULT_X_MAX, points=DEFAULT_POINTS))]
fn rate_check(
    py: Python<'_>,
    schedule: &str,
    n: u32,
    f: &Bound<'_, PyAny>,
    x_max: f64,
    points: usize,
) -> PyResult<Vec<(f64, f64, f64, bool)>> {
    let schedule = parse_schedule(schedule)?;
    let f = resolve(f)?;
    let grid = GridSpec::half_line(x_max, points).map_err(to_py)?;
    let spec = OperatorSpec::base(n, analysis::param_schedule(&schedule, n).map_err(to_py)?).map_err(to_py)?;
    // Worker threads re-attach to call Python callables, so release the
    // interpreter first.
    let report = py.detach(|| rate_bound_check(&spec, &f, &grid)).map_err(to_py)?;
    Ok(report.points.iter().map(|pt| (pt.x, pt.lhs, pt.rhs, pt.pass)).collect())
}

#[pymodule]
fn pqbbh(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyPqParams>()?;
    m.add_class::<PyOperator>()?;
    m.add_function(wrap_pyfunction!(parse, m)?)?;
    m.add_function(wrap_pyfunction!(eval_expression, m)?)?;
    m.add_function(wrap_pyfunction!(discrepancy, m)?)?;
    m.add_function(wrap_pyfunction!(convergence, m)?)?;
    m.add_function(wrap_pyfunction!(rate_check, m)?)?;
    m.add("PqbbhError", m.py().get_type::<PqbbhError>())?;
    m.add("DomainError", m.py().get_type::<DomainError>())?;
    let names: Vec<&str> = Registered::ALL.iter().map(|r| r.name()).collect();
    m.add("REGISTRY", names)?;
    Ok(())
}
