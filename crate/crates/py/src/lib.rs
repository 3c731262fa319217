//! Python bindings: operators over F_p, signatures, existence polynomials,
//! nonemptiness checks and the command-line driver.
//!
//! Structured results are returned as plain dicts and lists, decoded from
//! the same JSON views the command line prints.

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use serde_json::Value;

use pcurv::accessory::{existence_polynomial_r4, gauss_operator, nonempty_check, DEFAULT_BUDGET};
use pcurv::algebra::{Field, Poly, PrimeField};
use pcurv::cli::{classification_json, exit_code, signature_json};
use pcurv::deformation::{LocalInvariant, Signature};
use pcurv::operators::FuchsianOperator;

fn err(e: pcurv::Error) -> PyErr {
    if exit_code(&e) == 2 {
        PyValueError::new_err(e.to_string())
    } else {
        PyRuntimeError::new_err(e.to_string())
    }
}

fn to_py(py: Python<'_>, v: &Value) -> PyResult<Py<PyAny>> {
    let text = serde_json::to_string(v).map_err(|e| PyRuntimeError::new_err(e.to_string()))?;
    Ok(py.import("json")?.call_method1("loads", (text,))?.unbind())
}

fn field(p: u64) -> PyResult<PrimeField> {
    PrimeField::new(p).map_err(err)
}

/// Normalized second-order Fuchsian operator over F_p.
#[pyclass(name = "Operator", module = "pcurv_py", frozen)]
struct PyOperator {
    inner: FuchsianOperator<PrimeField>,
}

#[pymethods]
impl PyOperator {
    /// `singularities` are the finite singular points; `alpha` has one entry
    /// per singularity plus one for infinity; `beta` holds the r - 3
    /// accessory parameters; `d` is the degree of the sought solution.
    #[new]
    fn new(
        p: u64,
        singularities: Vec<i64>,
        alpha: Vec<u64>,
        beta: Vec<i64>,
        d: u64,
    ) -> PyResult<Self> {
        let f = field(p)?;
        let sing = singularities.iter().map(|&x| f.from_i64(x)).collect();
        let beta = beta.iter().map(|&x| f.from_i64(x)).collect();
        let inner = FuchsianOperator::make_normalized(f, sing, &alpha, beta, d).map_err(err)?;
        Ok(Self { inner })
    }

    /// Hypergeometric operator with exponents 0 at 0, 1 and infinity.
    #[staticmethod]
    fn gauss(p: u64) -> PyResult<Self> {
        Ok(Self {
            inner: gauss_operator(p).map_err(err)?,
        })
    }

    #[getter]
    fn p(&self) -> u64 {
        self.inner.p()
    }

    /// Number of singular points including infinity.
    #[getter]
    fn r(&self) -> usize {
        self.inner.r()
    }

    #[getter]
    fn singularities(&self) -> Vec<u64> {
        self.inner.singularities().to_vec()
    }

    /// Local exponents `(alpha, alpha', t)` per singularity, infinity last.
    fn exponents(&self) -> PyResult<Vec<(u64, u64, u64)>> {
        let e = self.inner.local_exponents().map_err(err)?;
        Ok(e.iter().map(|x| (x.alpha, x.alpha_prime, x.t)).collect())
    }

    fn riemann_check(&self) -> bool {
        self.inner.riemann_check()
    }

    /// Whether the polynomial with ascending coefficients `u` solves the operator.
    fn solves(&self, u: Vec<i64>) -> bool {
        let f = *self.inner.field();
        self.inner.apply(&Poly::from_ints(&f, &u)).is_zero()
    }

    /// Conjugate by `prod (x - x_i)^{mu_i}`, one shift per finite singularity.
    fn gauge(&self, mu: Vec<i64>) -> PyResult<Self> {
        Ok(Self {
            inner: self.inner.gauge_transform(&mu).map_err(err)?,
        })
    }

    /// Class, solutions and (for nilpotent nonzero p-curvature) the deformation datum.
    fn classify(&self, py: Python<'_>) -> PyResult<Py<PyAny>> {
        let (v, _) = classification_json(&self.inner).map_err(err)?;
        to_py(py, &v)
    }

    fn __repr__(&self) -> String {
        format!(
            "Operator(p={}, r={}, singularities={:?})",
            self.p(),
            self.r(),
            self.singularities()
        )
    }
}

fn invariants(pairs: Vec<(u64, u64)>) -> Vec<LocalInvariant> {
    pairs
        .into_iter()
        .map(|(a, nu)| LocalInvariant::new(a, nu))
        .collect()
}

/// Signature of a deformation datum, given as `(a, nu)` pairs with
/// `sigma = a/(p-1) + nu`.
#[pyclass(name = "Signature", module = "pcurv_py", frozen)]
struct PySignature {
    inner: Signature,
}

#[pymethods]
impl PySignature {
    /// When `d` is omitted it is solved from the global relation.
    #[new]
    #[pyo3(signature = (p, singular, spikes=Vec::new(), d=None))]
    fn new(
        p: u64,
        singular: Vec<(u64, u64)>,
        spikes: Vec<(u64, u64)>,
        d: Option<u64>,
    ) -> PyResult<Self> {
        let (singular, spikes) = (invariants(singular), invariants(spikes));
        let inner = match d {
            Some(d) => Signature {
                p,
                singular,
                spikes,
                d,
            },
            None => Signature::with_derived_d(p, singular, spikes).map_err(err)?,
        };
        Ok(Self { inner })
    }

    #[getter]
    fn d(&self) -> u64 {
        self.inner.d
    }

    #[getter]
    fn r(&self) -> usize {
        self.inner.r()
    }

    fn strength(&self) -> PyResult<u64> {
        self.inner.strength().map_err(err)
    }

    /// Violated constraints as `(code, detail)` pairs; empty when valid.
    fn validate(&self) -> Vec<(String, String)> {
        self.inner
            .validate()
            .into_iter()
            .map(|v| (v.constraint.to_string(), v.detail))
            .collect()
    }

    /// `(dim, maximal)` of the deformation space.
    fn dimension(&self) -> PyResult<(i64, bool)> {
        let rep = self.inner.deformation_dimension().map_err(err)?;
        Ok((rep.dim, rep.maximal))
    }

    /// Full invariant report as a dict.
    fn report(&self, py: Python<'_>) -> PyResult<Py<PyAny>> {
        to_py(py, &signature_json(&self.inner).0)
    }

    fn __repr__(&self) -> String {
        let sigma: Vec<String> = self
            .inner
            .all_points()
            .iter()
            .map(|(_, i)| i.sigma_string(self.inner.p))
            .collect();
        format!("Signature(p={}, sigma={sigma:?})", self.inner.p)
    }
}

/// Existence polynomial in the accessory parameter for four singular points
/// `0, 1, L, inf` and solution degree `n`; ascending coefficients in F_p(L).
#[pyfunction]
fn existence_polynomial(p: u64, alpha: Vec<u64>, n: usize) -> PyResult<Vec<String>> {
    let poly = existence_polynomial_r4(p, &alpha, n).map_err(err)?;
    let f = poly.field().clone();
    Ok(poly.coeffs().iter().map(|c| f.format(c)).collect())
}

/// Decide nonemptiness of the stratum `(p, r, n)` by constraints or witness search.
#[pyfunction]
#[pyo3(signature = (p, r, n, budget=DEFAULT_BUDGET))]
fn nonempty(py: Python<'_>, p: u64, r: usize, n: u64, budget: u64) -> PyResult<Py<PyAny>> {
    let rep = nonempty_check(p, r, n, budget).map_err(err)?;
    to_py(
        py,
        &serde_json::to_value(&rep).map_err(|e| PyRuntimeError::new_err(e.to_string()))?,
    )
}

/// Run the command-line driver; returns `(exit_code, stdout, stderr)`.
#[pyfunction]
fn run_cli(args: Vec<String>) -> (i32, String, String) {
    let out = pcurv::cli::run(std::iter::once("pcurv".to_string()).chain(args));
    (out.code, out.stdout, out.stderr)
}

#[pymodule]
fn pcurv_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyOperator>()?;
    m.add_class::<PySignature>()?;
    m.add_function(wrap_pyfunction!(existence_polynomial, m)?)?;
    m.add_function(wrap_pyfunction!(nonempty, m)?)?;
    m.add_function(wrap_pyfunction!(run_cli, m)?)?;
    Ok(())
}
