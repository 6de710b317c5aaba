//! Python bindings: `import conductor_py`.
//!
//! Ideals come from a `QuadField` and remember which field made them;
//! passing an ideal to another field raises `ValueError`.

use conductor_core::crossval::{self, CrossvalConfig};
use conductor_core::expr::{self, IdealExpr};
use conductor_core::props;
use conductor_core::{
    Base, Bounds, Criterion, Decision, Element, IdealHandle, Mutation, QuadField, Verdict,
};
use num_bigint::BigInt;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyAny;

fn err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn json_to_py<'py>(py: Python<'py>, v: &impl serde::Serialize) -> PyResult<Bound<'py, PyAny>> {
    let s = serde_json::to_string(v).map_err(err)?;
    py.import("json")?.call_method1("loads", (s,))
}

#[pyclass(name = "Ideal", module = "conductor_py", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyIdeal {
    d: i64,
    inner: IdealHandle,
}

#[pymethods]
impl PyIdeal {
    /// Row-style HNF basis in the basis (1, w).
    #[getter]
    fn basis(&self) -> Vec<Vec<BigInt>> {
        self.inner.lattice().basis().to_vec()
    }

    #[getter]
    fn index(&self) -> BigInt {
        self.inner.index()
    }

    #[getter]
    fn d(&self) -> i64 {
        self.d
    }

    /// Whether `a + b*w` lies in the ideal.
    fn contains(&self, a: BigInt, b: BigInt) -> bool {
        self.inner.contains(&Element(vec![a, b]))
    }

    fn __contains__(&self, ab: (BigInt, BigInt)) -> bool {
        self.contains(ab.0, ab.1)
    }

    fn __eq__(&self, other: &PyIdeal) -> bool {
        self.d == other.d && self.inner == other.inner
    }

    fn __hash__(&self) -> u64 {
        use std::hash::{Hash, Hasher};
        let mut h = std::collections::hash_map::DefaultHasher::new();
        self.d.hash(&mut h);
        self.inner.lattice().basis().hash(&mut h);
        h.finish()
    }

    fn __str__(&self) -> String {
        IdealExpr::from_ideal(&self.inner).to_string()
    }

    fn __repr__(&self) -> String {
        format!("Ideal(d={}, {})", self.d, self.__str__())
    }
}

#[pyclass(name = "Verdict", module = "conductor_py", frozen)]
struct PyVerdict {
    inner: Verdict,
}

#[pymethods]
impl PyVerdict {
    #[getter]
    fn criterion(&self) -> String {
        self.inner.criterion.to_string()
    }

    /// `"conductor"`, `"not_conductor"` or `"hypothesis_failed"`.
    #[getter]
    fn decision(&self) -> String {
        self.inner.decision.to_string()
    }

    /// None when the criterion's hypothesis failed.
    #[getter]
    fn is_conductor(&self) -> Option<bool> {
        match self.inner.decision {
            Decision::Conductor => Some(true),
            Decision::NotConductor => Some(false),
            Decision::HypothesisFailed => None,
        }
    }

    #[getter]
    fn witness(&self) -> Option<String> {
        self.inner.witness.as_ref().map(|w| w.to_string())
    }

    #[getter]
    fn note(&self) -> Option<String> {
        self.inner.note.clone()
    }

    /// Per-prime rows as dicts, as in the CLI's JSON.
    #[getter]
    fn primes<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        json_to_py(py, &self.inner.primes)
    }

    fn to_json(&self) -> PyResult<String> {
        serde_json::to_string(&self.inner).map_err(err)
    }

    fn __repr__(&self) -> String {
        format!(
            "Verdict(criterion={}, decision={})",
            self.inner.criterion, self.inner.decision
        )
    }
}

#[pyclass(name = "QuadField", module = "conductor_py", frozen)]
struct PyField {
    inner: QuadField,
}

impl PyField {
    fn own(&self, i: &PyIdeal) -> PyResult<IdealHandle> {
        if i.d != self.inner.d() {
            return Err(PyValueError::new_err(format!(
                "ideal belongs to d={}, not d={}",
                i.d,
                self.inner.d()
            )));
        }
        Ok(i.inner.clone())
    }

    fn wrap(&self, inner: IdealHandle) -> PyIdeal {
        PyIdeal {
            d: self.inner.d(),
            inner,
        }
    }

    fn base(&self, order_f: Option<u64>) -> PyResult<Base> {
        match order_f {
            Some(f) => self.inner.order_base(f).map_err(err),
            None => Ok(self.inner.integers()),
        }
    }
}

#[pymethods]
impl PyField {
    #[new]
    #[pyo3(signature = (d, factor_bound=None, coset_bound=None))]
    fn new(d: i64, factor_bound: Option<u64>, coset_bound: Option<u64>) -> PyResult<Self> {
        let mut bounds = Bounds::default();
        if let Some(b) = factor_bound {
            bounds.factor_bound = b;
        }
        if let Some(b) = coset_bound {
            bounds.coset_bound = b;
        }
        Ok(PyField {
            inner: QuadField::with_bounds(d, bounds).map_err(err)?,
        })
    }

    #[getter]
    fn d(&self) -> i64 {
        self.inner.d()
    }

    #[getter]
    fn discriminant(&self) -> i64 {
        self.inner.discriminant()
    }

    /// Parse an ideal expression such as `"(5, w - 2)"`, `"[[1,1;0,2]]"` or `"P(2,1)"`.
    fn ideal(&self, src: &str) -> PyResult<PyIdeal> {
        Ok(self.wrap(expr::parse_ideal(src, &self.inner).map_err(err)?))
    }

    /// The ideal generated by `a + b*w` for each pair.
    fn ideal_from(&self, gens: Vec<(i64, i64)>) -> PyResult<PyIdeal> {
        let gens: Vec<Element> = gens
            .into_iter()
            .map(|(a, b)| self.inner.element(a, b))
            .collect();
        Ok(self.wrap(self.inner.ideal(&gens).map_err(err)?))
    }

    /// `"split"`, `"inert"` or `"ramified"`.
    fn splitting(&self, p: u64) -> PyResult<String> {
        Ok(self.inner.splitting(p).map_err(err)?.to_string())
    }

    fn primes_above(&self, p: u64) -> PyResult<Vec<PyIdeal>> {
        let ms = self.inner.primes_above(p).map_err(err)?;
        Ok(ms.into_iter().map(|m| self.wrap(m.ideal)).collect())
    }

    /// The k-th prime over p, counting from 1.
    fn prime(&self, p: u64, k: usize) -> PyResult<PyIdeal> {
        Ok(self.wrap(self.inner.prime(p, k).map_err(err)?.ideal))
    }

    /// Prime factorization as (prime, exponent) pairs.
    fn factor(&self, ideal: &PyIdeal) -> PyResult<Vec<(PyIdeal, u32)>> {
        let fz = self.inner.factor(&self.own(ideal)?).map_err(err)?;
        Ok(fz
            .factors()
            .iter()
            .map(|(m, v)| (self.wrap(m.ideal.clone()), *v))
            .collect())
    }

    /// Decide with one criterion (`"auto"` picks the cheapest complete one).
    #[pyo3(signature = (ideal, criterion="auto", order_f=None))]
    fn check(&self, ideal: &PyIdeal, criterion: &str, order_f: Option<u64>) -> PyResult<PyVerdict> {
        let i = self.own(ideal)?;
        let base = self.base(order_f)?;
        let criterion = match criterion {
            "auto" => self.inner.default_criterion(&base, &i).map_err(err)?,
            name => name.parse::<Criterion>().map_err(err)?,
        };
        Ok(PyVerdict {
            inner: self.inner.verdict(criterion, &base, &i).map_err(err)?,
        })
    }

    /// The brute-force answer, no primes involved.
    #[pyo3(signature = (ideal, order_f=None))]
    fn is_conductor(&self, ideal: &PyIdeal, order_f: Option<u64>) -> PyResult<bool> {
        let base = self.base(order_f)?;
        let check = self
            .inner
            .ring()
            .is_conductor_bruteforce(base.subring(), &self.own(ideal)?)
            .map_err(err)?;
        Ok(check.is_conductor)
    }

    /// All conductor ideals of index at most `max_index`.
    #[pyo3(signature = (max_index, order_f=None))]
    fn conductors(&self, max_index: u64, order_f: Option<u64>) -> PyResult<Vec<PyIdeal>> {
        let base = self.base(order_f)?;
        let ring = self.inner.ring();
        let mut out = Vec::new();
        for i in ring.enumerate_ideals(max_index) {
            if ring
                .is_conductor_bruteforce(base.subring(), &i)
                .map_err(err)?
                .is_conductor
            {
                out.push(self.wrap(i));
            }
        }
        Ok(out)
    }

    fn __repr__(&self) -> String {
        format!("QuadField(d={})", self.inner.d())
    }
}

/// Compare every criterion with the oracle; returns the report as a dict.
#[pyfunction(name = "crossval")]
#[pyo3(signature = (fields=None, max_index=200, orders=Vec::new(), mutation="none"))]
fn run_crossval<'py>(
    py: Python<'py>,
    fields: Option<Vec<i64>>,
    max_index: u64,
    orders: Vec<u64>,
    mutation: &str,
) -> PyResult<Bound<'py, PyAny>> {
    let fields = fields.unwrap_or_else(|| crossval::DEFAULT_FIELDS.to_vec());
    let config = CrossvalConfig {
        order_fields: if orders.is_empty() {
            Vec::new()
        } else {
            fields.clone()
        },
        fields,
        max_index,
        orders,
        mutation: mutation.parse::<Mutation>().map_err(err)?,
        bounds: Bounds::default(),
    };
    let report = py.detach(|| crossval::run(&config)).map_err(err)?;
    json_to_py(py, &report)
}

/// Run the seeded closure-law suites; returns a list of dicts.
#[pyfunction]
#[pyo3(signature = (suite=None, seed=props::DEFAULT_SEED, cases=props::DEFAULT_CASES))]
fn run_props<'py>(
    py: Python<'py>,
    suite: Option<String>,
    seed: u64,
    cases: usize,
) -> PyResult<Bound<'py, PyAny>> {
    let reports = py
        .detach(|| match &suite {
            Some(name) => props::run_suite(name, seed, cases).map(|r| vec![r]),
            None => props::run_all(seed, cases),
        })
        .map_err(err)?;
    json_to_py(py, &reports)
}

#[pymodule]
fn conductor_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyField>()?;
    m.add_class::<PyIdeal>()?;
    m.add_class::<PyVerdict>()?;
    m.add_function(wrap_pyfunction!(run_crossval, m)?)?;
    m.add_function(wrap_pyfunction!(run_props, m)?)?;
    m.add("SUITES", props::SUITES.to_vec())?;
    Ok(())
}
