//! Python bindings for `ringfunc`.
//!
//! Ring elements cross the boundary as integer indices; use `Ring.format` and
//! `Ring.parse` to convert to and from their textual form. Structured results
//! (canonical forms, reports, group elements) come back as plain dicts.

use num_bigint::{BigInt, BigUint};
use pyo3::create_exception;
use pyo3::exceptions::PyException;
use pyo3::prelude::*;

use ringfunc::canonical;
use ringfunc::dual;
use ringfunc::funcspace::{self, DerivativeDomain, FunctionTable};
use ringfunc::groups;
use ringfunc::verify::{self, Suite};
use ringfunc::{Error, Limits, Poly, Ring, RingDescriptor};

create_exception!(ringfunc, RingfuncError, PyException);
create_exception!(ringfunc, SizeCapError, RingfuncError);

fn to_py(err: Error) -> PyErr {
    match err {
        Error::SizeCap { .. } => SizeCapError::new_err(err.to_string()),
        _ => RingfuncError::new_err(err.to_string()),
    }
}

fn limits() -> PyResult<Limits> {
    Limits::from_env().map_err(to_py)
}

fn json_to_py<'py>(py: Python<'py>, value: &serde_json::Value) -> PyResult<Bound<'py, PyAny>> {
    py.import("json")?
        .call_method1("loads", (value.to_string(),))
}

#[pyclass(name = "Ring", module = "ringfunc", frozen, eq, skip_from_py_object)]
#[derive(Clone, PartialEq)]
struct PyRing {
    inner: Ring,
}

#[pymethods]
impl PyRing {
    /// Build a ring from a descriptor such as `zm:4`, `zpn:2,3`, `fq:3,2` or `dual:zm:4`.
    #[new]
    fn new(descriptor: &str) -> PyResult<Self> {
        let desc: RingDescriptor = descriptor.parse().map_err(to_py)?;
        let inner = Ring::new(&desc, &limits()?).map_err(to_py)?;
        Ok(PyRing { inner })
    }

    #[getter]
    fn size(&self) -> u64 {
        self.inner.size()
    }

    #[getter]
    fn descriptor(&self) -> String {
        self.inner.descriptor().to_string()
    }

    #[getter]
    fn is_field(&self) -> bool {
        self.inner.is_field()
    }

    #[getter]
    fn is_dual(&self) -> bool {
        self.inner.is_dual()
    }

    /// The dual-number ring R[a] over this ring.
    fn dual(&self) -> PyResult<PyRing> {
        Ok(PyRing {
            inner: self.inner.dual().map_err(to_py)?,
        })
    }

    fn base(&self) -> Option<PyRing> {
        self.inner.base().map(|b| PyRing { inner: b.clone() })
    }

    fn elements(&self) -> Vec<u64> {
        self.inner.elements().collect()
    }

    fn units(&self) -> PyResult<Vec<u64>> {
        self.inner.units().map_err(to_py)
    }

    fn zero(&self) -> u64 {
        self.inner.zero()
    }

    fn one(&self) -> u64 {
        self.inner.one()
    }

    fn add(&self, x: u64, y: u64) -> PyResult<u64> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.inner.add(x, y))
    }

    fn sub(&self, x: u64, y: u64) -> PyResult<u64> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.inner.sub(x, y))
    }

    fn mul(&self, x: u64, y: u64) -> PyResult<u64> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.inner.mul(x, y))
    }

    fn neg(&self, x: u64) -> PyResult<u64> {
        self.check(x)?;
        Ok(self.inner.neg(x))
    }

    fn inverse(&self, x: u64) -> PyResult<Option<u64>> {
        self.check(x)?;
        Ok(self.inner.inverse(x))
    }

    fn is_unit(&self, x: u64) -> PyResult<bool> {
        self.check(x)?;
        Ok(self.inner.is_unit(x))
    }

    fn format(&self, x: u64) -> PyResult<String> {
        self.check(x)?;
        Ok(self.inner.format_elem(x))
    }

    fn parse(&self, text: &str) -> PyResult<u64> {
        self.inner.parse_elem(text).map_err(to_py)
    }

    fn __len__(&self) -> usize {
        self.inner.size() as usize
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Ring('{}')", self.inner.descriptor())
    }
}

impl PyRing {
    fn check(&self, x: u64) -> PyResult<()> {
        if x >= self.inner.size() {
            return Err(RingfuncError::new_err(format!(
                "element index {x} out of range for {}",
                self.inner.descriptor()
            )));
        }
        Ok(())
    }
}

#[pyclass(
    name = "Polynomial",
    module = "ringfunc",
    frozen,
    eq,
    skip_from_py_object
)]
#[derive(Clone, PartialEq)]
struct PyPoly {
    inner: Poly,
}

#[pymethods]
impl PyPoly {
    /// Parse an integer polynomial in `x`, e.g. `"2*x^3 + x - 1"`.
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        Ok(PyPoly {
            inner: text.parse().map_err(to_py)?,
        })
    }

    #[staticmethod]
    fn from_coeffs(coeffs: Vec<BigInt>) -> Self {
        PyPoly {
            inner: Poly::new(coeffs),
        }
    }

    #[getter]
    fn degree(&self) -> Option<usize> {
        self.inner.degree()
    }

    #[getter]
    fn coeffs(&self) -> Vec<BigInt> {
        self.inner.coeffs().to_vec()
    }

    fn derive(&self) -> PyPoly {
        PyPoly {
            inner: self.inner.derive(),
        }
    }

    /// `self(other(x))`.
    fn compose(&self, other: PolyArg<'_>) -> PyResult<PyPoly> {
        Ok(PyPoly {
            inner: self.inner.compose(&other.poly()?),
        })
    }

    /// Evaluate at the ring element with index `x`.
    fn eval(&self, ring: RingArg<'_>, x: u64) -> PyResult<u64> {
        let ring = ring.ring()?;
        if x >= ring.size() {
            return Err(RingfuncError::new_err(format!(
                "element index {x} out of range"
            )));
        }
        Ok(self.inner.eval(&ring, x))
    }

    fn __add__(&self, other: PolyArg<'_>) -> PyResult<PyPoly> {
        Ok(PyPoly {
            inner: &self.inner + &other.poly()?,
        })
    }

    fn __sub__(&self, other: PolyArg<'_>) -> PyResult<PyPoly> {
        Ok(PyPoly {
            inner: &self.inner - &other.poly()?,
        })
    }

    fn __mul__(&self, other: PolyArg<'_>) -> PyResult<PyPoly> {
        Ok(PyPoly {
            inner: &self.inner * &other.poly()?,
        })
    }

    fn __neg__(&self) -> PyPoly {
        PyPoly {
            inner: -&self.inner,
        }
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Polynomial('{}')", self.inner)
    }
}

#[pyclass(
    name = "FunctionTable",
    module = "ringfunc",
    frozen,
    eq,
    hash,
    skip_from_py_object
)]
#[derive(Clone, PartialEq, Eq, Hash)]
struct PyTable {
    inner: FunctionTable,
}

#[pymethods]
impl PyTable {
    #[new]
    fn new(ring: RingArg<'_>, values: Vec<u64>) -> PyResult<Self> {
        let ring = ring.ring()?;
        Ok(PyTable {
            inner: FunctionTable::new(&ring, values).map_err(to_py)?,
        })
    }

    #[getter]
    fn ring(&self) -> PyRing {
        PyRing {
            inner: self.inner.ring().clone(),
        }
    }

    #[getter]
    fn values(&self) -> Vec<u64> {
        self.inner.values().to_vec()
    }

    fn is_zero(&self) -> bool {
        self.inner.is_zero()
    }

    fn is_unit_valued(&self) -> bool {
        self.inner.is_unit_valued()
    }

    fn is_bijective(&self) -> bool {
        self.inner.is_bijective()
    }

    /// `self(inner(x))`.
    fn compose(&self, inner: &PyTable) -> PyResult<PyTable> {
        Ok(PyTable {
            inner: self.inner.compose(&inner.inner).map_err(to_py)?,
        })
    }

    fn inverse_permutation(&self) -> Option<PyTable> {
        self.inner
            .inverse_permutation()
            .map(|inner| PyTable { inner })
    }

    fn to_dict<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        json_to_py(py, &self.inner.to_json())
    }

    fn __getitem__(&self, x: u64) -> PyResult<u64> {
        if x >= self.inner.ring().size() {
            return Err(pyo3::exceptions::PyIndexError::new_err(x));
        }
        Ok(self.inner.at(x))
    }

    fn __len__(&self) -> usize {
        self.inner.values().len()
    }

    fn __repr__(&self) -> String {
        format!(
            "FunctionTable({}, {:?})",
            self.inner.ring().descriptor(),
            self.inner.values()
        )
    }
}

#[derive(FromPyObject)]
enum PolyArg<'py> {
    Obj(PyRef<'py, PyPoly>),
    Text(String),
}

impl PolyArg<'_> {
    fn poly(&self) -> PyResult<Poly> {
        match self {
            PolyArg::Obj(p) => Ok(p.inner.clone()),
            PolyArg::Text(t) => t.parse().map_err(to_py),
        }
    }
}

#[derive(FromPyObject)]
enum RingArg<'py> {
    Obj(PyRef<'py, PyRing>),
    Text(String),
}

impl RingArg<'_> {
    fn ring(&self) -> PyResult<Ring> {
        match self {
            RingArg::Obj(r) => Ok(r.inner.clone()),
            RingArg::Text(t) => {
                let desc: RingDescriptor = t.parse().map_err(to_py)?;
                Ring::new(&desc, &limits()?).map_err(to_py)
            }
        }
    }
}

/// Function table of `poly` on `ring`.
#[pyfunction]
fn induce(poly: PolyArg<'_>, ring: RingArg<'_>) -> PyResult<PyTable> {
    let inner = funcspace::induce(&poly.poly()?, &ring.ring()?).map_err(to_py)?;
    Ok(PyTable { inner })
}

#[pyfunction]
fn is_null(poly: PolyArg<'_>, ring: RingArg<'_>) -> PyResult<bool> {
    funcspace::is_null(&poly.poly()?, &ring.ring()?).map_err(to_py)
}

#[pyfunction]
fn is_unit_valued(poly: PolyArg<'_>, ring: RingArg<'_>) -> PyResult<bool> {
    funcspace::is_unit_valued(&poly.poly()?, &ring.ring()?).map_err(to_py)
}

/// Permutation test by evaluating every point.
#[pyfunction]
fn is_permutation(poly: PolyArg<'_>, ring: RingArg<'_>) -> PyResult<bool> {
    funcspace::is_perm_bruteforce(&poly.poly()?, &ring.ring()?).map_err(to_py)
}

/// Permutation test on Z/p^n from residues mod p and the derivative.
#[pyfunction]
#[pyo3(signature = (poly, p, n, maximal_ideal_only = false))]
fn perm_criterion_local(
    poly: PolyArg<'_>,
    p: u64,
    n: u32,
    maximal_ideal_only: bool,
) -> PyResult<bool> {
    let domain = if maximal_ideal_only {
        DerivativeDomain::MaximalIdealOnly
    } else {
        DerivativeDomain::AllResidues
    };
    funcspace::perm_criterion_local_with(&poly.poly()?, p, n, domain).map_err(to_py)
}

/// Whether `poly` permutes the dual ring over `ring`.
#[pyfunction]
fn perm_criterion_dual(poly: PolyArg<'_>, ring: RingArg<'_>) -> PyResult<bool> {
    funcspace::perm_criterion_dual(&poly.poly()?, &ring.ring()?).map_err(to_py)
}

/// Evaluate `poly` at `a + b*alpha`; returns the pair of base-ring indices.
#[pyfunction]
fn eval_dual(poly: PolyArg<'_>, ring: RingArg<'_>, a: u64, b: u64) -> PyResult<(u64, u64)> {
    let ring = ring.ring()?;
    if a >= ring.size() || b >= ring.size() {
        return Err(RingfuncError::new_err("element index out of range"));
    }
    let e = dual::eval_dual(&poly.poly()?, &ring, a, b).map_err(to_py)?;
    Ok((e.a, e.b))
}

/// Interpolating polynomial over a finite field, as text.
#[pyfunction]
fn lagrange(table: &PyTable) -> PyResult<String> {
    Ok(funcspace::lagrange(&table.inner)
        .map_err(to_py)?
        .to_string())
}

/// All polynomial functions on `ring`.
#[pyfunction]
fn polynomial_functions(ring: RingArg<'_>) -> PyResult<Vec<PyTable>> {
    let fs = funcspace::polynomial_functions(&ring.ring()?, &limits()?).map_err(to_py)?;
    Ok(fs.into_iter().map(|f| PyTable { inner: f.table }).collect())
}

/// All polynomial permutations of `ring`.
#[pyfunction]
fn polynomial_permutations(ring: RingArg<'_>) -> PyResult<Vec<PyTable>> {
    let fs = funcspace::polynomial_permutations(&ring.ring()?, &limits()?).map_err(to_py)?;
    Ok(fs.into_iter().map(|f| PyTable { inner: f.table }).collect())
}

#[pyfunction]
fn beta(p: u64, n: u32) -> u64 {
    canonical::beta(p, n)
}

#[pyfunction]
fn vp_factorial(p: u64, j: u64) -> u64 {
    canonical::vp_factorial(p, j)
}

/// Number of polynomial functions on Z/p^n.
#[pyfunction]
fn count_polyfun(p: u64, n: u32) -> PyResult<BigUint> {
    check_prime_power(p, n)?;
    Ok(canonical::count_polyfun(p, n))
}

/// Number of unit-valued polynomial functions on Z/p^n.
#[pyfunction]
fn count_uvpf(p: u64, n: u32) -> PyResult<BigUint> {
    check_prime_power(p, n)?;
    Ok(canonical::count_uvpf(p, n))
}

fn check_prime_power(p: u64, n: u32) -> PyResult<()> {
    if !ringfunc::is_prime(p) {
        return Err(to_py(Error::NotPrime(p)));
    }
    if n == 0 {
        return Err(to_py(Error::ExponentTooSmall(n)));
    }
    Ok(())
}

/// Canonical representative of `poly` modulo p^n.
#[pyfunction]
fn canonicalize<'py>(
    py: Python<'py>,
    poly: PolyArg<'_>,
    p: u64,
    n: u32,
) -> PyResult<Bound<'py, PyAny>> {
    let form = canonical::canonicalize(&poly.poly()?, p, n).map_err(to_py)?;
    let dict = json_to_py(py, &form.to_json())?;
    dict.set_item("text", form.to_string())?;
    dict.set_item("poly", form.to_poly().to_string())?;
    Ok(dict)
}

/// Layered canonical form of a unit-valued polynomial modulo p^n.
#[pyfunction]
fn uvpf_canonicalize<'py>(
    py: Python<'py>,
    poly: PolyArg<'_>,
    p: u64,
    n: u32,
) -> PyResult<Bound<'py, PyAny>> {
    let form = canonical::uvpf_canonicalize(&poly.poly()?, p, n).map_err(to_py)?;
    let dict = json_to_py(py, &form.to_json())?;
    dict.set_item("text", form.to_string())?;
    dict.set_item("poly", form.to_poly().to_string())?;
    Ok(dict)
}

/// Polynomial permutations of the dual ring over `ring`, as dicts.
#[pyfunction]
fn dual_permutations<'py>(py: Python<'py>, ring: RingArg<'_>) -> PyResult<Vec<Bound<'py, PyAny>>> {
    let perms = groups::enumerate_dual_perms(&ring.ring()?, &limits()?).map_err(to_py)?;
    perms.iter().map(|g| json_to_py(py, &g.to_json())).collect()
}

/// Stabilizer elements of the dual ring over `ring`, as dicts.
#[pyfunction]
fn stabilizer<'py>(py: Python<'py>, ring: RingArg<'_>) -> PyResult<Vec<Bound<'py, PyAny>>> {
    let st = groups::enumerate_stabilizer(&ring.ring()?, &limits()?).map_err(to_py)?;
    st.iter().map(|e| json_to_py(py, &e.to_json())).collect()
}

#[pyfunction]
fn dual_degree_bound(ring: RingArg<'_>) -> PyResult<usize> {
    groups::dual_degree_bound(&ring.ring()?, &limits()?).map_err(to_py)
}

/// Check the embedding of the dual permutation group into the semidirect product.
#[pyfunction]
fn verify_embedding<'py>(py: Python<'py>, ring: RingArg<'_>) -> PyResult<Bound<'py, PyAny>> {
    let report = groups::verify_embedding(&ring.ring()?, &limits()?).map_err(to_py)?;
    let value = serde_json::to_value(&report).map_err(|e| RingfuncError::new_err(e.to_string()))?;
    let dict = json_to_py(py, &value)?;
    dict.set_item("passed", report.passed())?;
    Ok(dict)
}

/// Run a verification suite; returns the report as a dict.
#[pyfunction]
#[pyo3(signature = (suite = "all", max_size = verify::DEFAULT_MAX_SIZE))]
fn run_verify<'py>(py: Python<'py>, suite: &str, max_size: u64) -> PyResult<Bound<'py, PyAny>> {
    let suite: Suite = suite.parse().map_err(to_py)?;
    let limits = limits()?;
    let report = py.detach(|| verify::run_suite(suite, max_size, &limits));
    json_to_py(py, &report.to_json())
}

#[pymodule]
#[pyo3(name = "ringfunc")]
fn init_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    let py = m.py();
    m.add("RingfuncError", py.get_type::<RingfuncError>())?;
    m.add("SizeCapError", py.get_type::<SizeCapError>())?;
    m.add_class::<PyRing>()?;
    m.add_class::<PyPoly>()?;
    m.add_class::<PyTable>()?;
    m.add_function(wrap_pyfunction!(induce, m)?)?;
    m.add_function(wrap_pyfunction!(is_null, m)?)?;
    m.add_function(wrap_pyfunction!(is_unit_valued, m)?)?;
    m.add_function(wrap_pyfunction!(is_permutation, m)?)?;
    m.add_function(wrap_pyfunction!(perm_criterion_local, m)?)?;
    m.add_function(wrap_pyfunction!(perm_criterion_dual, m)?)?;
    m.add_function(wrap_pyfunction!(eval_dual, m)?)?;
    m.add_function(wrap_pyfunction!(lagrange, m)?)?;
    m.add_function(wrap_pyfunction!(polynomial_functions, m)?)?;
    m.add_function(wrap_pyfunction!(polynomial_permutations, m)?)?;
    m.add_function(wrap_pyfunction!(beta, m)?)?;
    m.add_function(wrap_pyfunction!(vp_factorial, m)?)?;
    m.add_function(wrap_pyfunction!(count_polyfun, m)?)?;
    m.add_function(wrap_pyfunction!(count_uvpf, m)?)?;
    m.add_function(wrap_pyfunction!(canonicalize, m)?)?;
    m.add_function(wrap_pyfunction!(uvpf_canonicalize, m)?)?;
    m.add_function(wrap_pyfunction!(dual_permutations, m)?)?;
    m.add_function(wrap_pyfunction!(stabilizer, m)?)?;
    m.add_function(wrap_pyfunction!(dual_degree_bound, m)?)?;
    m.add_function(wrap_pyfunction!(verify_embedding, m)?)?;
    m.add_function(wrap_pyfunction!(run_verify, m)?)?;
    Ok(())
}
