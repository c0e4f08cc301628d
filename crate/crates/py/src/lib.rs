//! Python bindings. Certificates and reports come back as plain dicts.

use nshadow::io::{self, PseudoOrbitDef, ShiftDef, ShiftKind, WindowDef};
use nshadow::repro::{self, ReproOptions};
use nshadow::shadowing::{self, Method, SearchOptions, VerifyOptions};
use nshadow::{interval, mixing, Alphabet, DyadicScale, ShiftPresentation, Window};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn err(e: nshadow::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// Round-trips a serializable value through the `json` module.
fn to_py<T: serde::Serialize>(py: Python<'_>, value: &T) -> PyResult<Py<PyAny>> {
    let text = serde_json::to_string(value).map_err(|e| PyValueError::new_err(e.to_string()))?;
    Ok(py.import("json")?.call_method1("loads", (text,))?.unbind())
}

/// A shift space given by forbidden words or a labeled graph.
#[pyclass(name = "Shift", module = "nshadow_py", frozen)]
struct Shift {
    inner: ShiftPresentation,
}

impl Shift {
    fn word(&self, text: &str) -> PyResult<Vec<u8>> {
        Ok(self.inner.parse(text).map_err(err)?.to_vec())
    }

    fn render(&self, word: &[u8]) -> String {
        self.inner.render(word)
    }

    fn po(&self, json: &str) -> PyResult<nshadow::PseudoOrbit> {
        io::parse_pseudo_orbit(json, &self.inner).map_err(err)
    }
}

#[pymethods]
impl Shift {
    /// Shift of finite type avoiding `forbidden`.
    #[staticmethod]
    fn from_forbidden(alphabet: Vec<String>, forbidden: Vec<String>) -> PyResult<Self> {
        let a = Alphabet::new(&alphabet).map_err(err)?;
        let forbidden = forbidden
            .iter()
            .map(|w| a.parse_word(w).map(|w| a.tokens_of(&w)))
            .collect::<nshadow::Result<Vec<_>>>()
            .map_err(err)?;
        let def = ShiftDef { alphabet, kind: ShiftKind::Sft, forbidden: Some(forbidden), vertices: None, edges: None };
        Ok(Shift { inner: def.compile().map_err(err)? })
    }

    /// Sofic shift presented by edges `(source, target, label)`.
    #[staticmethod]
    fn from_graph(alphabet: Vec<String>, vertices: Vec<String>, edges: Vec<(String, String, String)>) -> PyResult<Self> {
        let def =
            ShiftDef { alphabet, kind: ShiftKind::Sofic, forbidden: None, vertices: Some(vertices), edges: Some(edges) };
        Ok(Shift { inner: def.compile().map_err(err)? })
    }

    /// Bundled shift: `two-loop`, `four-vertex`, `even`, `golden`, `full2`, `full3`.
    #[staticmethod]
    fn builtin(name: &str) -> PyResult<Self> {
        Ok(Shift { inner: io::builtin_shift(name).map_err(err)? })
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(Shift { inner: io::parse_shift(text).map_err(err)? })
    }

    fn to_json(&self) -> String {
        serde_json::to_string(&ShiftDef::of(&self.inner)).expect("shift definitions serialize")
    }

    #[getter]
    fn alphabet(&self) -> Vec<String> {
        self.inner.alphabet().tokens().to_vec()
    }

    #[getter]
    fn vertex_count(&self) -> usize {
        self.inner.vertex_count()
    }

    fn is_allowed(&self, word: &str) -> PyResult<bool> {
        Ok(self.inner.is_allowed(&self.word(word)?))
    }

    fn words(&self, n: usize) -> Vec<String> {
        self.inner.words_of_length(n).iter().map(|w| self.render(w)).collect()
    }

    fn count_words(&self, n: usize) -> u128 {
        self.inner.count_words(n)
    }

    /// Lexicographically least `w` of length `n` with `u w v` allowed.
    fn find_bridge(&self, u: &str, n: usize, v: &str) -> PyResult<Option<String>> {
        let z = self.inner.find_bridge(&self.word(u)?, n, &self.word(v)?).map_err(err)?;
        Ok(z.map(|z| self.render(&z)))
    }

    /// Lexicographically least `z` with `|z| = |w|` and `u z v` allowed.
    fn qft_bridge(&self, u: &str, w: &str, v: &str) -> PyResult<Option<String>> {
        let z = self.inner.qft_bridge(&self.word(u)?, &self.word(w)?, &self.word(v)?).map_err(err)?;
        Ok(z.map(|z| self.render(&z)))
    }

    fn primitivity_exponent(&self) -> Option<usize> {
        mixing::primitivity_exponent(&self.inner)
    }

    #[pyo3(signature = (m, word_bound = 6, bridge_bound = None))]
    fn verify_mixing(&self, py: Python<'_>, m: usize, word_bound: usize, bridge_bound: Option<usize>) -> PyResult<Py<PyAny>> {
        let nmax = bridge_bound.unwrap_or_else(|| mixing::default_bridge_bound(&self.inner, m));
        to_py(py, &mixing::verify_mixing_number(&self.inner, m, word_bound, nmax).map_err(err)?)
    }

    #[pyo3(signature = (m, word_bound = 4, bridge_bound = None))]
    fn verify_qft(&self, py: Python<'_>, m: usize, word_bound: usize, bridge_bound: Option<usize>) -> PyResult<Py<PyAny>> {
        let nmax = bridge_bound.unwrap_or_else(|| mixing::default_bridge_bound(&self.inner, m));
        to_py(py, &mixing::verify_qft_number(&self.inner, m, word_bound, nmax).map_err(err)?)
    }

    #[pyo3(signature = (word_bound = 4))]
    fn nonmixing_witness(&self, py: Python<'_>, word_bound: usize) -> PyResult<Py<PyAny>> {
        to_py(py, &mixing::find_nonmixing_witness(&self.inner, word_bound).map_err(err)?)
    }

    /// Random spliced pseudo-orbit as a pseudo-orbit JSON document.
    #[pyo3(signature = (seed, switches, delta, first, last))]
    fn random_splice(&self, seed: u64, switches: usize, delta: u32, first: i64, last: i64) -> PyResult<String> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let s = shadowing::random_splice(&self.inner, &mut rng, switches, DyadicScale(delta), delta as usize + 1, first, last)
            .map_err(err)?;
        Ok(serde_json::to_string(&PseudoOrbitDef::of(&s.po, self.inner.alphabet())).expect("pseudo-orbits serialize"))
    }

    /// Builds and verifies a shadow pair; `method` is mixing, mixing-forward, qft or schedule.
    #[pyo3(signature = (po, k, method = "mixing", m = 2))]
    fn construct_pair(&self, py: Python<'_>, po: &str, k: u32, method: &str, m: usize) -> PyResult<Py<PyAny>> {
        let po = self.po(po)?;
        let method: Method = method.parse().map_err(err)?;
        let pair = shadowing::construct_pair(&self.inner, method, m, &po, k).map_err(err)?;
        let cert = shadowing::verify_shadow_set(&self.inner, &po, &pair.points, k, VerifyOptions::default()).map_err(err)?;
        let points: Vec<WindowDef> = pair.points.iter().map(|p| WindowDef::of(p, self.inner.alphabet())).collect();
        to_py(py, &serde_json::json!({ "points": points, "params": pair.params, "certificate": cert }))
    }

    /// Verifies a set of `(base, word)` windows against a pseudo-orbit document.
    #[pyo3(signature = (po, members, k, diameter = true))]
    fn verify_shadow_set(&self, py: Python<'_>, po: &str, members: Vec<(i64, String)>, k: u32, diameter: bool) -> PyResult<Py<PyAny>> {
        let po = self.po(po)?;
        let members = members
            .iter()
            .map(|(base, w)| Ok(Window::new(*base, self.word(w)?)))
            .collect::<PyResult<Vec<_>>>()?;
        let opts = VerifyOptions { diameter, max_members: None };
        to_py(py, &shadowing::verify_shadow_set(&self.inner, &po, &members, k, opts).map_err(err)?)
    }

    #[pyo3(signature = (po, max_members, k, halfwidth, diameter = true, budget = 1 << 24))]
    #[allow(clippy::too_many_arguments)]
    fn search_shadow_sets(
        &self,
        py: Python<'_>,
        po: &str,
        max_members: usize,
        k: u32,
        halfwidth: usize,
        diameter: bool,
        budget: u128,
    ) -> PyResult<Py<PyAny>> {
        let po = self.po(po)?;
        let opts = SearchOptions { max_members, k, halfwidth, diameter, budget };
        to_py(py, &shadowing::search_shadow_sets(&self.inner, &po, opts).map_err(err)?)
    }

    fn __repr__(&self) -> String {
        format!("Shift(alphabet={:?}, vertices={})", self.inner.alphabet().tokens(), self.inner.vertex_count())
    }
}

#[pyfunction]
fn ascending_pseudo_orbit(delta: f64) -> PyResult<Vec<f64>> {
    interval::ascending_pseudo_orbit(delta).map_err(err)
}

#[pyfunction]
#[pyo3(signature = (epsilon = 0.25, grid_step = 1e-4))]
fn neighborhood_failure_certificate(py: Python<'_>, epsilon: f64, grid_step: f64) -> PyResult<Py<PyAny>> {
    to_py(py, &interval::neighborhood_failure_certificate(epsilon, grid_step).map_err(err)?)
}

#[pyfunction]
#[pyo3(signature = (po, epsilon, grid_step, max_members, budget = 1 << 32))]
fn numeric_shadow_search(po: Vec<f64>, epsilon: f64, grid_step: f64, max_members: usize, budget: u128) -> PyResult<Option<Vec<f64>>> {
    interval::numeric_shadow_search(&po, epsilon, grid_step, max_members, budget).map_err(err)
}

#[pyfunction]
#[pyo3(signature = (scenario, seed = 0, trials = 100))]
fn run_scenario(py: Python<'_>, scenario: &str, seed: u64, trials: usize) -> PyResult<Py<PyAny>> {
    to_py(py, &repro::run(scenario, ReproOptions { seed, trials }).map_err(err)?)
}

#[pyfunction]
fn scenarios() -> Vec<&'static str> {
    repro::SCENARIOS.to_vec()
}

#[pymodule]
fn nshadow_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Shift>()?;
    m.add_function(wrap_pyfunction!(ascending_pseudo_orbit, m)?)?;
    m.add_function(wrap_pyfunction!(neighborhood_failure_certificate, m)?)?;
    m.add_function(wrap_pyfunction!(numeric_shadow_search, m)?)?;
    m.add_function(wrap_pyfunction!(run_scenario, m)?)?;
    m.add_function(wrap_pyfunction!(scenarios, m)?)?;
    Ok(())
}
