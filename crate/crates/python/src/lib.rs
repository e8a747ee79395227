//! Python bindings. Rationals cross the boundary as `fractions.Fraction`.

use pyo3::create_exception;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

use quotdeg::acceptance::run_suite;
use quotdeg::exactpoly::{format_rational, parse_rational, Rational, TruncPoly};
use quotdeg::grassmann;
use quotdeg::hilb2;
use quotdeg::jacobi::{self, JacobiParams};
use quotdeg::localise;
use quotdeg::polynomial::DegreePolynomial;
use quotdeg::quot2::{self, Pipeline, Quot2Family};
use quotdeg::symquot;
use quotdeg::varieties::{self, Divisor, SplitBundle};

create_exception!(
    pyquotdeg,
    CrossCheckError,
    PyRuntimeError,
    "Two independent routes disagreed."
);

fn to_py(e: quotdeg::Error) -> PyErr {
    if e.is_cross_check() {
        CrossCheckError::new_err(e.to_string())
    } else {
        PyValueError::new_err(e.to_string())
    }
}

fn fraction<'py>(py: Python<'py>, q: &Rational) -> PyResult<Bound<'py, PyAny>> {
    py.import("fractions")?
        .getattr("Fraction")?
        .call1((format_rational(q),))
}

fn fractions<'py>(py: Python<'py>, qs: &[Rational]) -> PyResult<Vec<Bound<'py, PyAny>>> {
    qs.iter().map(|q| fraction(py, q)).collect()
}

/// Accepts ints, strings such as "3/2", and `Fraction`s.
fn rational(x: &Bound<'_, PyAny>) -> PyResult<Rational> {
    parse_rational(&x.str()?.to_string_lossy()).map_err(to_py)
}

fn class_dict<'py>(py: Python<'py>, a: &TruncPoly) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    for (m, c) in a.terms() {
        d.set_item(a.ring().format_monomial(m), fraction(py, c)?)?;
    }
    Ok(d)
}

fn bundle(roots: &[Vec<i64>]) -> PyResult<SplitBundle> {
    SplitBundle::from_int_roots(roots).map_err(to_py)
}

fn pipeline(name: &str) -> PyResult<Pipeline> {
    name.parse().map_err(to_py)
}

/// A product of projective spaces, optionally with a projectivised split bundle on top.
#[pyclass(frozen, module = "pyquotdeg")]
struct Space {
    inner: varieties::Space,
}

#[pymethods]
impl Space {
    #[new]
    #[pyo3(signature = (dims, roots = None))]
    fn new(dims: Vec<u32>, roots: Option<Vec<Vec<i64>>>) -> PyResult<Self> {
        let inner = match roots {
            Some(r) => varieties::Space::projective_bundle(&dims, &bundle(&r)?),
            None => varieties::Space::projective_product(&dims),
        }
        .map_err(to_py)?;
        Ok(Space { inner })
    }

    #[getter]
    fn dim(&self) -> u32 {
        self.inner.dim()
    }

    fn euler_number<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        fraction(py, &varieties::euler_number(&self.inner))
    }

    fn segre_class<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        class_dict(py, &varieties::segre_scheme(&self.inner))
    }

    /// Degree of `c_1(M^[2])^{2 dim X}` for `M = divisor + zeta * c_1(O(1))`.
    #[pyo3(signature = (divisor, zeta = 0))]
    fn hilb2_degree<'py>(
        &self,
        py: Python<'py>,
        divisor: Vec<i64>,
        zeta: i64,
    ) -> PyResult<Bound<'py, PyAny>> {
        let x = &self.inner;
        let mut m = x.divisor(&Divisor::from_ints(&divisor)).map_err(to_py)?;
        if zeta != 0 {
            m = &m
                + &x.zeta()
                    .map_err(to_py)?
                    .scale(&quotdeg::exactpoly::rat(zeta));
        }
        fraction(py, &hilb2::hilb2_degree(x, &m).map_err(to_py)?)
    }

    fn __repr__(&self) -> String {
        format!("Space({})", self.inner.ring())
    }
}

/// The data `(S, E, L)` of a length-two Quot scheme.
#[pyclass(frozen, module = "pyquotdeg")]
struct Quot2Instance {
    inner: quot2::Quot2Instance,
}

#[pymethods]
impl Quot2Instance {
    #[new]
    fn new(dims: Vec<u32>, roots: Vec<Vec<i64>>, lc1: Vec<i64>) -> PyResult<Self> {
        let inner = quot2::Quot2Instance::new(&dims, bundle(&roots)?, Divisor::from_ints(&lc1))
            .map_err(to_py)?;
        Ok(Quot2Instance { inner })
    }

    #[pyo3(signature = (pipeline = "all"))]
    fn degree<'py>(&self, py: Python<'py>, pipeline: &str) -> PyResult<Bound<'py, PyAny>> {
        let p = self::pipeline(pipeline)?;
        fraction(py, &quot2::degree2(&self.inner, p).map_err(to_py)?)
    }

    /// Values of all three pipelines.
    fn report<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        let rep = quot2::degree2_report(&self.inner, Pipeline::All).map_err(to_py)?;
        let d = PyDict::new(py);
        for (name, v) in [
            ("formula", &rep.formula),
            ("projbundle", &rep.projbundle),
            ("geometric", &rep.geometric),
        ] {
            if let Some(v) = v {
                d.set_item(name, fraction(py, v)?)?;
            }
        }
        d.set_item("agree", rep.agree())?;
        Ok(d)
    }

    fn leading_term<'py>(&self, py: Python<'py>, l: usize) -> PyResult<Bound<'py, PyAny>> {
        let i = &self.inner;
        fraction(
            py,
            &symquot::leading_term(&i.space, &i.bundle, &i.lc1, l).map_err(to_py)?,
        )
    }

    fn __repr__(&self) -> String {
        format!(
            "Quot2Instance(S={}, rank={}, L={:?})",
            self.inner.space.ring(),
            self.inner.r(),
            self.inner
                .lc1
                .0
                .iter()
                .map(format_rational)
                .collect::<Vec<_>>()
        )
    }
}

/// Degree polynomial in `n` for `L = twist + n * polarization`.
#[pyfunction]
#[pyo3(signature = (dims, roots, twist = None, polarization = None, pipeline = "all"))]
fn degree2_polynomial<'py>(
    py: Python<'py>,
    dims: Vec<u32>,
    roots: Vec<Vec<i64>>,
    twist: Option<Vec<i64>>,
    polarization: Option<Vec<i64>>,
    pipeline: &str,
) -> PyResult<Vec<Bound<'py, PyAny>>> {
    let twist = twist
        .map(|t| Divisor::from_ints(&t))
        .unwrap_or_else(|| Divisor::zero(dims.len()));
    let fam = Quot2Family::new(
        &dims,
        bundle(&roots)?,
        twist,
        polarization.map(|p| Divisor::from_ints(&p)),
    );
    let poly = quot2::degree2_polynomial(&fam, self::pipeline(pipeline)?).map_err(to_py)?;
    fractions(py, &poly.coefficients)
}

#[pyfunction]
fn nu_class<'py>(
    py: Python<'py>,
    dims: Vec<u32>,
    roots: Vec<Vec<i64>>,
    l: usize,
    k: u32,
) -> PyResult<Bound<'py, PyDict>> {
    let s = varieties::Space::projective_product(&dims).map_err(to_py)?;
    class_dict(
        py,
        &symquot::nu_class(&s, &bundle(&roots)?, l, k)
            .map_err(to_py)?
            .rep,
    )
}

#[pyfunction]
fn mu2_class<'py>(
    py: Python<'py>,
    dims: Vec<u32>,
    roots: Vec<Vec<i64>>,
    k: u32,
) -> PyResult<Bound<'py, PyDict>> {
    let s = varieties::Space::projective_product(&dims).map_err(to_py)?;
    class_dict(
        py,
        &quot2::mu2_class(&s, &bundle(&roots)?, k)
            .map_err(to_py)?
            .rep,
    )
}

#[pyfunction]
fn delta2_class<'py>(
    py: Python<'py>,
    dims: Vec<u32>,
    roots: Vec<Vec<i64>>,
    k: u32,
) -> PyResult<Bound<'py, PyDict>> {
    let s = varieties::Space::projective_product(&dims).map_err(to_py)?;
    class_dict(
        py,
        &quot2::delta2_class(&s, &bundle(&roots)?, k)
            .map_err(to_py)?
            .rep,
    )
}

#[pyfunction]
fn delta2_constant<'py>(
    py: Python<'py>,
    dims: Vec<u32>,
    roots: Vec<Vec<i64>>,
) -> PyResult<Bound<'py, PyAny>> {
    let s = varieties::Space::projective_product(&dims).map_err(to_py)?;
    fraction(
        py,
        &quot2::delta2_constant(&s, &bundle(&roots)?).map_err(to_py)?,
    )
}

#[pyfunction]
fn beauville_k3<'py>(
    py: Python<'py>,
    l: u64,
    c1sq: &Bound<'py, PyAny>,
) -> PyResult<Bound<'py, PyAny>> {
    fraction(
        py,
        &symquot::beauville_k3(l, &rational(c1sq)?).map_err(to_py)?,
    )
}

#[pyfunction]
fn mu_p1_coeffs<'py>(
    py: Python<'py>,
    r: u64,
    l: u64,
    poly: Vec<Bound<'py, PyAny>>,
) -> PyResult<Vec<Bound<'py, PyAny>>> {
    let coeffs = poly.iter().map(rational).collect::<PyResult<Vec<_>>>()?;
    fractions(
        py,
        &symquot::mu_p1_coeffs(r, l, &DegreePolynomial::new(coeffs)).map_err(to_py)?,
    )
}

#[pyfunction]
fn schubert_degree(l: u64, r: u64) -> PyResult<String> {
    Ok(grassmann::schubert_degree(l, r).map_err(to_py)?.to_string())
}

#[pyfunction]
fn syt_count(rows: usize, cols: usize) -> String {
    grassmann::syt_count(rows, cols).to_string()
}

#[pyfunction]
fn jacobi_value<'py>(
    py: Python<'py>,
    alpha: &Bound<'py, PyAny>,
    beta: &Bound<'py, PyAny>,
    n: u64,
    z: &Bound<'py, PyAny>,
) -> PyResult<Bound<'py, PyAny>> {
    let p = JacobiParams::new(rational(alpha)?, rational(beta)?, n, rational(z)?);
    fraction(py, &jacobi::jacobi_hyp(&p).map_err(to_py)?)
}

#[pyfunction]
fn a_coeff<'py>(py: Python<'py>, r: i64, d: i64, k: i64, j: i64) -> PyResult<Bound<'py, PyAny>> {
    fraction(py, &jacobi::a_coeff(r, d, k, j).map_err(to_py)?)
}

#[pyfunction]
#[pyo3(signature = (roots, l, n, seed = 0))]
fn localised_degree<'py>(
    py: Python<'py>,
    roots: Vec<i64>,
    l: u32,
    n: i64,
    seed: u64,
) -> PyResult<Bound<'py, PyAny>> {
    fraction(
        py,
        &localise::plucker_degree_localised(&roots, l, n, seed).map_err(to_py)?,
    )
}

#[pyfunction]
#[pyo3(signature = (roots, l, seed = 0))]
fn localised_polynomial<'py>(
    py: Python<'py>,
    roots: Vec<i64>,
    l: u32,
    seed: u64,
) -> PyResult<Vec<Bound<'py, PyAny>>> {
    fractions(
        py,
        &localise::degree_polynomial_localised(&roots, l, seed)
            .map_err(to_py)?
            .coefficients,
    )
}

/// Runs the acceptance suite; returns `(id, name, passed, detail)` per criterion.
#[pyfunction]
#[pyo3(signature = (filter = None))]
fn selftest(py: Python<'_>, filter: Option<String>) -> Vec<(u32, String, bool, String)> {
    py.detach(|| run_suite(filter.as_deref()))
        .into_iter()
        .map(|o| (o.id, o.name.to_string(), o.passed, o.detail))
        .collect()
}

#[pymodule]
fn pyquotdeg(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("CrossCheckError", m.py().get_type::<CrossCheckError>())?;
    m.add_class::<Space>()?;
    m.add_class::<Quot2Instance>()?;
    m.add_function(wrap_pyfunction!(degree2_polynomial, m)?)?;
    m.add_function(wrap_pyfunction!(nu_class, m)?)?;
    m.add_function(wrap_pyfunction!(mu2_class, m)?)?;
    m.add_function(wrap_pyfunction!(delta2_class, m)?)?;
    m.add_function(wrap_pyfunction!(delta2_constant, m)?)?;
    m.add_function(wrap_pyfunction!(beauville_k3, m)?)?;
    m.add_function(wrap_pyfunction!(mu_p1_coeffs, m)?)?;
    m.add_function(wrap_pyfunction!(schubert_degree, m)?)?;
    m.add_function(wrap_pyfunction!(syt_count, m)?)?;
    m.add_function(wrap_pyfunction!(jacobi_value, m)?)?;
    m.add_function(wrap_pyfunction!(a_coeff, m)?)?;
    m.add_function(wrap_pyfunction!(localised_degree, m)?)?;
    m.add_function(wrap_pyfunction!(localised_polynomial, m)?)?;
    m.add_function(wrap_pyfunction!(selftest, m)?)?;
    Ok(())
}
