use std::path::PathBuf;
use std::time::Duration;

use pyo3::exceptions::{PyRuntimeError, PyTimeoutError, PyValueError};
use pyo3::prelude::*;

use sbt_core::cycle_graph::CycleGraph;
use sbt_core::oracle;
use sbt_core::search::audit_cases as core_audit;
use sbt_core::solver;
use sbt_core::{Error, TranspositionDesc};

fn to_py(e: Error) -> PyErr {
    match e {
        Error::Timeout { .. } => PyTimeoutError::new_err(e.to_string()),
        Error::Internal(_) | Error::ResourceLimit(_) | Error::Io(_) => PyRuntimeError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

#[pyclass(frozen, eq, skip_from_py_object)]
#[derive(Clone, PartialEq)]
struct Permutation {
    inner: sbt_core::Permutation,
}

#[pymethods]
impl Permutation {
    #[new]
    fn new(image: Vec<usize>) -> PyResult<Self> {
        Ok(Self { inner: sbt_core::Permutation::new(image).map_err(to_py)? })
    }

    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        Ok(Self { inner: text.parse().map_err(to_py)? })
    }

    #[staticmethod]
    fn identity(n: usize) -> Self {
        Self { inner: sbt_core::Permutation::identity(n) }
    }

    fn to_list(&self) -> Vec<usize> {
        self.inner.as_slice().to_vec()
    }

    fn is_identity(&self) -> bool {
        self.inner.is_identity()
    }

    fn inverse(&self) -> Self {
        Self { inner: self.inner.inverse() }
    }

    /// `self ∘ other`.
    fn compose(&self, other: &Permutation) -> PyResult<Self> {
        Ok(Self { inner: self.inner.compose(&other.inner).map_err(to_py)? })
    }

    /// Block transposition rho(i, j, k), 1-based.
    fn transpose(&self, i: usize, j: usize, k: usize) -> PyResult<Self> {
        let t = TranspositionDesc::new(i, j, k).map_err(to_py)?;
        Ok(Self { inner: self.inner.apply_transposition(t).map_err(to_py)? })
    }

    fn lower_bound(&self) -> usize {
        sbt_core::algebra::lower_bound(&self.inner)
    }

    fn upper_bound(&self) -> usize {
        solver::upper_bound(&self.inner)
    }

    /// Cycles of the breakpoint graph as lists of black-edge labels.
    fn cycle_graph(&self) -> Vec<Vec<usize>> {
        CycleGraph::build(&self.inner).cycles
    }

    /// Cycles of σ̄π̄⁻¹, trivial ones included.
    fn sigma_pi_inv(&self) -> Vec<Vec<usize>> {
        sbt_core::State::new(&self.inner).sigma_pi_inv().value.cycles()
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn __str__(&self) -> String {
        format!("[{}]", self.inner)
    }

    fn __repr__(&self) -> String {
        format!("Permutation({:?})", self.inner.as_slice())
    }
}

#[pyclass(frozen, get_all)]
struct SortResult {
    distance: usize,
    lower: usize,
    upper: usize,
    /// `(i, j, k)` for each rho step.
    steps: Vec<(usize, usize, usize)>,
    phases: Vec<String>,
}

#[pymethods]
impl SortResult {
    /// Replays the steps on `pi`.
    fn verify(&self, pi: &Permutation) -> bool {
        let steps: Vec<TranspositionDesc> = self.steps.iter().map(|&(i, j, k)| TranspositionDesc { i, j, k }).collect();
        pi.inner.apply_all(&steps).map(|p| p.is_identity()).unwrap_or(false)
    }

    fn __repr__(&self) -> String {
        format!("SortResult(distance={}, lower={}, upper={})", self.distance, self.lower, self.upper)
    }
}

impl From<solver::SortResult> for SortResult {
    fn from(r: solver::SortResult) -> Self {
        Self {
            distance: r.distance,
            lower: r.lower,
            upper: r.upper,
            steps: r.sequence.rho_steps.iter().map(|t| (t.i, t.j, t.k)).collect(),
            phases: r.trace.iter().map(|p| p.tag().to_string()).collect(),
        }
    }
}

/// Sorts `pi` with the 1.375-approximation.
#[pyfunction]
fn sort(pi: &Permutation) -> PyResult<SortResult> {
    Ok(solver::sbt1375(&pi.inner).map_err(to_py)?.into())
}

/// Transforms `pi` into `sigma`.
#[pyfunction]
fn distance(pi: &Permutation, sigma: &Permutation) -> PyResult<SortResult> {
    Ok(solver::distance(&pi.inner, &sigma.inner).map_err(to_py)?.into())
}

#[pyfunction]
fn f(x: usize) -> usize {
    solver::f(x)
}

/// Exact distance by iterative deepening; raises TimeoutError.
#[pyfunction]
#[pyo3(signature = (pi, timeout_secs=60.0))]
fn exact_distance(py: Python<'_>, pi: &Permutation, timeout_secs: f64) -> PyResult<usize> {
    let p = pi.inner.clone();
    py.detach(|| oracle::exact_distance(&p, None, Duration::from_secs_f64(timeout_secs))).map_err(to_py)
}

#[pyclass(frozen)]
struct DistanceTable {
    inner: oracle::DistanceTable,
}

#[pymethods]
impl DistanceTable {
    #[staticmethod]
    fn build(py: Python<'_>, n: usize) -> PyResult<Self> {
        Ok(Self { inner: py.detach(|| oracle::build_table(n)).map_err(to_py)? })
    }

    #[staticmethod]
    fn load(path: PathBuf) -> PyResult<Self> {
        Ok(Self { inner: oracle::DistanceTable::load(&path).map_err(to_py)? })
    }

    fn save(&self, path: PathBuf) -> PyResult<()> {
        self.inner.save(&path).map_err(to_py)
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    fn get(&self, pi: &Permutation) -> PyResult<usize> {
        self.inner.get(&pi.inner).map_err(to_py)
    }

    fn diameter(&self) -> usize {
        self.inner.diameter()
    }

    fn histogram(&self) -> Vec<usize> {
        self.inner.histogram()
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }
}

/// `(records, counterexamples, [(norm, kind), ...])`.
#[pyfunction]
fn audit_cases(py: Python<'_>, norm_limit: usize) -> PyResult<(usize, usize, Vec<(usize, String)>)> {
    let report = py.detach(|| core_audit(norm_limit)).map_err(to_py)?;
    let bad = report.bad_small().into_iter().map(|(n, k)| (n, k.name().to_string())).collect();
    Ok((report.records.len(), report.counterexamples(), bad))
}

#[pymodule]
fn pysbt(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Permutation>()?;
    m.add_class::<SortResult>()?;
    m.add_class::<DistanceTable>()?;
    m.add_function(wrap_pyfunction!(sort, m)?)?;
    m.add_function(wrap_pyfunction!(distance, m)?)?;
    m.add_function(wrap_pyfunction!(f, m)?)?;
    m.add_function(wrap_pyfunction!(exact_distance, m)?)?;
    m.add_function(wrap_pyfunction!(audit_cases, m)?)?;
    Ok(())
}
