//! Python module `leaper`: tour constructions, tour files and the exhaustive oracle.

use std::collections::BTreeMap;

use pyo3::create_exception;
use pyo3::exceptions::{PyException, PyValueError};
use pyo3::prelude::*;

use leaper_core::assembly::{self, FileProvider, OracleProvider, ThresholdMode, BlockProvider};
use leaper_core::oracle::{self, Check, MuValue, SearchBudget, Verdict};
use leaper_core::tourfile::{TourFile, Verification};
use leaper_core::{loom, projection, CoprimePair, Error, Interval, LeaperParams};

create_exception!(leaper, LeaperError, PyException);
create_exception!(leaper, BelowThresholdError, LeaperError);
create_exception!(leaper, ProviderUnavailableError, LeaperError);

fn py_err(e: Error) -> PyErr {
    match e {
        Error::Param(_) | Error::ParityViolation { .. } | Error::EmptyInterval { .. } => PyValueError::new_err(e.to_string()),
        Error::BelowThreshold { .. } | Error::Unpartitionable { .. } => BelowThresholdError::new_err(e.to_string()),
        Error::ProviderUnavailable(..) => ProviderUnavailableError::new_err(e.to_string()),
        _ => LeaperError::new_err(e.to_string()),
    }
}

fn pair(a: i64, b: i64) -> PyResult<CoprimePair> {
    CoprimePair::new(a, b).map_err(|e| py_err(e.into()))
}

fn leaper_params(p: i64, q: i64) -> PyResult<LeaperParams> {
    LeaperParams::new(p, q).map_err(|e| py_err(e.into()))
}

/// A verified tour of a projection graph.
#[pyclass(frozen, name = "ProjectionTour")]
struct PyProjectionTour {
    inner: projection::ProjectionTour,
}

#[pymethods]
impl PyProjectionTour {
    #[getter]
    fn pair(&self) -> (i64, i64) {
        (self.inner.pair().a(), self.inner.pair().b())
    }

    #[getter]
    fn interval(&self) -> (i64, i64) {
        let iv = self.inner.interval();
        (iv.lo, iv.hi)
    }

    fn __len__(&self) -> usize {
        self.inner.len() as usize
    }

    fn cycle(&self) -> Vec<i64> {
        self.inner.cycle()
    }

    fn edges(&self) -> Vec<(i64, i64)> {
        self.inner.edges().iter().copied().collect()
    }

    fn to_json(&self) -> String {
        TourFile::from_projection(&self.inner, vec!["python".into()]).to_json()
    }

    fn __repr__(&self) -> String {
        format!("ProjectionTour(pair={:?}, n={})", self.pair(), self.inner.len())
    }
}

/// A verified closed tour of a leaper on a rectangular board; cells are `(x, y)`.
#[pyclass(frozen, name = "BoardTour")]
struct PyBoardTour {
    inner: assembly::BoardTour,
}

#[pymethods]
impl PyBoardTour {
    #[getter]
    fn leaper(&self) -> (i64, i64) {
        (self.inner.leaper().p(), self.inner.leaper().q())
    }

    #[getter]
    fn width(&self) -> i64 {
        self.inner.width()
    }

    #[getter]
    fn height(&self) -> i64 {
        self.inner.height()
    }

    #[getter]
    fn trace(&self) -> Vec<String> {
        self.inner.trace.clone()
    }

    fn __len__(&self) -> usize {
        (self.inner.width() * self.inner.height()) as usize
    }

    fn cycle(&self) -> Vec<(i64, i64)> {
        self.inner.cycle().into_iter().map(|c| (c.x, c.y)).collect()
    }

    fn transpose(&self) -> PyBoardTour {
        PyBoardTour { inner: self.inner.transpose() }
    }

    /// A universal joint edge of the tour, if it has one.
    fn joint(&self) -> Option<((i64, i64), (i64, i64))> {
        self.inner.joint().map(|(a, b)| ((a.x, a.y), (b.x, b.y)))
    }

    fn to_json(&self) -> String {
        TourFile::from_board(&self.inner).to_json()
    }

    fn __repr__(&self) -> String {
        format!("BoardTour(leaper={:?}, height={}, width={})", self.leaper(), self.height(), self.width())
    }
}

/// A tour of `Π(a, b, n)` on `[0; n - 1]`.
#[pyfunction]
fn projection_tour(a: i64, b: i64, n: i64) -> PyResult<PyProjectionTour> {
    let inner = projection::projection_tour(pair(a, b)?, n).map_err(py_err)?;
    Ok(PyProjectionTour { inner })
}

/// Size from which `projection_tour` succeeds for every admissible size.
#[pyfunction]
fn mu_pi_bound(a: i64, b: i64) -> PyResult<i64> {
    Ok(projection::mu_pi_bound(pair(a, b)?))
}

/// A tour of the board of height `m` and width `4pq`.
#[pyfunction]
#[pyo3(signature = (p, q, m, joint = false))]
fn tour_4pq(p: i64, q: i64, m: i64, joint: bool) -> PyResult<PyBoardTour> {
    let l = leaper_params(p, q)?;
    let inner = if joint { assembly::tour_4pq_with_joint(l, m) } else { assembly::tour_4pq(l, m) };
    Ok(PyBoardTour { inner: inner.map_err(py_err)? })
}

/// A tour of the even `m × n` board. Blocks come from `blocks_dir`, or from the
/// built-in knight construction when it is `None`.
#[pyfunction]
#[pyo3(signature = (p, q, m, n, blocks_dir = None))]
fn tour_even_board(p: i64, q: i64, m: i64, n: i64, blocks_dir: Option<String>) -> PyResult<PyBoardTour> {
    let l = leaper_params(p, q)?;
    let provider: Box<dyn BlockProvider> = match blocks_dir {
        Some(dir) => Box::new(FileProvider::new(dir)),
        None => Box::new(OracleProvider::new()),
    };
    let inner = assembly::tour_even_board(l, m, n, provider.as_ref()).map_err(py_err)?;
    Ok(PyBoardTour { inner })
}

/// `{"m_i", "m_ii", "m_iii", "part_min", "ell"}` for `mode` `"computed"` or `"formula"`.
#[pyfunction]
#[pyo3(signature = (p, q, mode = "computed"))]
fn thresholds(p: i64, q: i64, mode: &str) -> PyResult<BTreeMap<&'static str, i64>> {
    let mode = match mode {
        "computed" => ThresholdMode::Computed,
        "formula" => ThresholdMode::Formula,
        _ => return Err(PyValueError::new_err(format!("unknown mode {mode}"))),
    };
    let t = assembly::thresholds(leaper_params(p, q)?, mode).map_err(py_err)?;
    Ok(BTreeMap::from([("m_i", t.m_i), ("m_ii", t.m_ii), ("m_iii", t.m_iii), ("part_min", t.part_min), ("ell", t.ell)]))
}

/// Cycles of the order-`k` loom.
#[pyfunction]
#[pyo3(signature = (p, q, k = 1))]
fn loom_cycles(p: i64, q: i64, k: i64) -> PyResult<Vec<Vec<i64>>> {
    let l = loom::build_loom(leaper_params(p, q)?, k).map_err(py_err)?;
    Ok(l.cycles().cycles.clone())
}

/// Checks tour file text: `("tour", vertices)`, `("pseudotour", cycles)` or `("invalid", 0)`.
#[pyfunction]
fn verify_json(text: &str) -> PyResult<(String, usize)> {
    let f = TourFile::parse(text).map_err(py_err)?;
    Ok(match f.verify() {
        Verification::Tour { vertices } => ("tour".into(), vertices),
        Verification::Pseudotour { cycles } => ("pseudotour".into(), cycles),
        Verification::Invalid(_) => ("invalid".into(), 0),
    })
}

fn budget(max_nodes: Option<u64>) -> SearchBudget {
    max_nodes.map_or_else(SearchBudget::from_env, SearchBudget::nodes)
}

/// Exhaustive search for a tour of `Π(a, b, n)`: a vertex list, or `None` when none
/// exists. Raises `LeaperError` when the budget runs out.
#[pyfunction]
#[pyo3(signature = (a, b, n, max_nodes = None))]
fn find_projection_tour(a: i64, b: i64, n: i64, max_nodes: Option<u64>) -> PyResult<Option<Vec<i64>>> {
    let g = oracle::projection_graph(pair(a, b)?, n);
    match oracle::find_hamiltonian(&g, budget(max_nodes)).verdict {
        Verdict::Found(t) => Ok(Some(t)),
        Verdict::Exhausted => Ok(None),
        Verdict::Indeterminate => Err(LeaperError::new_err("search budget exhausted")),
    }
}

/// Number of tours of `Π(a, b, n)`, counted up to `limit`.
#[pyfunction]
#[pyo3(signature = (a, b, n, limit = 2, max_nodes = None))]
fn count_projection_tours(a: i64, b: i64, n: i64, limit: usize, max_nodes: Option<u64>) -> PyResult<usize> {
    let g = oracle::projection_graph(pair(a, b)?, n);
    oracle::count_hamiltonian(&g, limit, budget(max_nodes)).ok_or_else(|| LeaperError::new_err("search budget exhausted"))
}

/// Number of pseudotours of the leaper on the `height × width` board, up to `limit`.
#[pyfunction]
#[pyo3(signature = (p, q, height, width, limit = 2, max_nodes = None))]
fn count_board_pseudotours(p: i64, q: i64, height: i64, width: i64, limit: usize, max_nodes: Option<u64>) -> PyResult<usize> {
    let (cols, rows) = (Interval::of_size(width).map_err(py_err)?, Interval::of_size(height).map_err(py_err)?);
    let g = leaper_core::graph::build_leaper_graph(leaper_params(p, q)?, cols, rows);
    let e = oracle::enumerate_pseudotours(&g, limit, budget(max_nodes));
    if e.is_decided() {
        Ok(e.count())
    } else {
        Err(LeaperError::new_err("search budget exhausted"))
    }
}

/// Threshold measurement: `quantity` is `"mu-div"`, `"mu-var"` or `"mu-pi"`. Returns
/// `(value, exact)` where `value` is the reported size or `None` when nothing was found.
#[pyfunction]
#[pyo3(signature = (quantity, a, b, n_max, max_nodes = None))]
fn search_mu(quantity: &str, a: i64, b: i64, n_max: i64, max_nodes: Option<u64>) -> PyResult<(Option<i64>, bool)> {
    let (pair, budget) = (pair(a, b)?, budget(max_nodes));
    let r = match quantity {
        "mu-div" => oracle::search_mu_div(pair, n_max, budget),
        "mu-var" => oracle::search_mu_var(pair, n_max, budget),
        "mu-pi" => oracle::search_mu_pi(pair, n_max, budget),
        _ => return Err(PyValueError::new_err(format!("unknown quantity {quantity}"))),
    };
    Ok(match r.value {
        MuValue::Exact(n) => (Some(n), true),
        MuValue::Bounds { lo, .. } => (Some(lo), false),
        MuValue::Unknown { .. } => (None, false),
    })
}

/// Rows `(pair, predicted, observed, status)` of a check over pairs with `a + b <= max_sum`.
#[pyfunction]
#[pyo3(signature = (name, max_sum, max_k = 3))]
fn check(name: &str, max_sum: i64, max_k: i64) -> PyResult<Vec<((i64, i64), String, String, String)>> {
    let c: Check = name.parse().map_err(PyValueError::new_err)?;
    let b = SearchBudget::from_env();
    Ok(oracle::check_pairs(c, max_sum)
        .into_iter()
        .map(|p| {
            let r = oracle::check_pair(c, p, max_k, b);
            let status = format!("{:?}", r.status).to_lowercase();
            (r.pair, r.predicted, r.observed, status)
        })
        .collect())
}

#[pymodule]
pub fn leaper(m: &Bound<'_, PyModule>) -> PyResult<()> {
    let py = m.py();
    m.add("LeaperError", py.get_type::<LeaperError>())?;
    m.add("BelowThresholdError", py.get_type::<BelowThresholdError>())?;
    m.add("ProviderUnavailableError", py.get_type::<ProviderUnavailableError>())?;
    m.add_class::<PyProjectionTour>()?;
    m.add_class::<PyBoardTour>()?;
    m.add_function(wrap_pyfunction!(projection_tour, m)?)?;
    m.add_function(wrap_pyfunction!(mu_pi_bound, m)?)?;
    m.add_function(wrap_pyfunction!(tour_4pq, m)?)?;
    m.add_function(wrap_pyfunction!(tour_even_board, m)?)?;
    m.add_function(wrap_pyfunction!(thresholds, m)?)?;
    m.add_function(wrap_pyfunction!(loom_cycles, m)?)?;
    m.add_function(wrap_pyfunction!(verify_json, m)?)?;
    m.add_function(wrap_pyfunction!(find_projection_tour, m)?)?;
    m.add_function(wrap_pyfunction!(count_projection_tours, m)?)?;
    m.add_function(wrap_pyfunction!(count_board_pseudotours, m)?)?;
    m.add_function(wrap_pyfunction!(search_mu, m)?)?;
    m.add_function(wrap_pyfunction!(check, m)?)?;
    Ok(())
}
