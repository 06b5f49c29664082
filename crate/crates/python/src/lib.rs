//! Python bindings: words, block decompositions, identities, numerics and rank rows.

use blockzeta::derivation::kernel_report;
use blockzeta::identities::{self, GenParams};
use blockzeta::linear::parse_rational;
use blockzeta::numerics::{verify, MzvEvaluator};
use blockzeta::rank;
use blockzeta::word::{mzv_to_word, ZetaComposition};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

fn err(e: blockzeta::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

#[pyclass(name = "Word", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyWord(blockzeta::Word);

#[pymethods]
impl PyWord {
    #[new]
    fn new(letters: &str) -> PyResult<Self> {
        letters.parse().map(PyWord).map_err(err)
    }

    #[getter]
    fn weight(&self) -> usize {
        self.0.weight()
    }

    fn blocks(&self) -> PyBlocks {
        PyBlocks(self.0.blocks())
    }

    fn dual(&self) -> PyWord {
        PyWord(self.0.dual())
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Word('{}')", self.0)
    }

    fn __eq__(&self, other: &PyWord) -> bool {
        self.0 == other.0
    }
}

#[pyclass(name = "BlockDecomposition", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyBlocks(blockzeta::BlockDecomposition);

#[pymethods]
impl PyBlocks {
    #[new]
    #[pyo3(signature = (lengths, eps1 = 0))]
    fn new(lengths: Vec<usize>, eps1: u8) -> PyResult<Self> {
        blockzeta::BlockDecomposition::new(eps1, lengths).map(PyBlocks).map_err(err)
    }

    #[staticmethod]
    fn parse(s: &str) -> PyResult<Self> {
        s.parse().map(PyBlocks).map_err(err)
    }

    #[getter]
    fn lengths(&self) -> Vec<usize> {
        self.0.lengths().to_vec()
    }

    #[getter]
    fn eps1(&self) -> u8 {
        self.0.eps1()
    }

    #[getter]
    fn weight(&self) -> usize {
        self.0.weight()
    }

    fn is_trivial(&self) -> bool {
        self.0.is_trivial()
    }

    fn is_divergent(&self) -> bool {
        self.0.is_divergent()
    }

    fn word(&self) -> PyWord {
        PyWord(self.0.word())
    }

    /// `(dual blocks, sign)`
    fn dual(&self) -> (PyBlocks, i32) {
        let (b, s) = self.0.dual();
        (PyBlocks(b), s)
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("BlockDecomposition('{}')", self.0)
    }

    fn __eq__(&self, other: &PyBlocks) -> bool {
        self.0 == other.0
    }
}

#[pyclass(name = "Identity", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyIdentity(identities::Identity);

#[pymethods]
impl PyIdentity {
    #[staticmethod]
    fn from_json(s: &str) -> PyResult<Self> {
        let v: serde_json::Value = serde_json::from_str(s).map_err(|e| PyValueError::new_err(e.to_string()))?;
        identities::Identity::from_json(&v).map(PyIdentity).map_err(err)
    }

    #[getter]
    fn family(&self) -> String {
        self.0.family.to_string()
    }

    #[getter]
    fn weight(&self) -> usize {
        self.0.weight
    }

    /// Left side as `(word, coefficient)` pairs, coefficients as rational strings.
    fn lhs(&self) -> Vec<(String, String)> {
        self.0.lhs.iter().map(|(w, _, c)| (w.to_string(), c.to_string())).collect()
    }

    fn to_json(&self) -> String {
        self.0.to_json().to_string()
    }

    fn text(&self) -> String {
        self.0.text()
    }

    fn latex(&self) -> String {
        self.0.latex()
    }

    /// True when every derivation `D_r`, `r < N`, kills the left side.
    fn kernel_vanishes(&self) -> PyResult<bool> {
        Ok(kernel_report(&self.0.lhs).map_err(err)?.vanishes)
    }

    #[pyo3(signature = (digits = 50))]
    fn verify<'py>(&self, py: Python<'py>, digits: u32) -> PyResult<Bound<'py, PyDict>> {
        let ev = MzvEvaluator::from_env().map_err(err)?;
        let r = verify(&ev, &self.0, digits).map_err(err)?;
        ev.save().map_err(err)?;
        let d = PyDict::new(py);
        d.set_item("status", r.status.as_str())?;
        d.set_item("residual", r.residual.to_decimal(digits.min(20) + 10))?;
        d.set_item("digits_matched", r.digits_matched)?;
        d.set_item("ratio", r.ratio.map(|q| q.to_string()))?;
        Ok(d)
    }

    fn __str__(&self) -> String {
        self.0.text()
    }
}

/// Generate an identity by family name, e.g. `generate("cyclic-full", lengths=[1,1,2,3])`.
#[pyfunction]
#[pyo3(signature = (family, lengths = None, b = None, m = None, n = None, x = None, zeta = None, symbolic = None, double = false))]
#[allow(clippy::too_many_arguments)]
fn generate(
    family: &str,
    lengths: Option<Vec<usize>>,
    b: Option<Vec<u32>>,
    m: Option<u32>,
    n: Option<usize>,
    x: Option<usize>,
    zeta: Option<String>,
    symbolic: Option<String>,
    double: bool,
) -> PyResult<PyIdentity> {
    let p = GenParams { lengths, b, m, n, x, zeta, symbolic, double };
    identities::generate(family, &p).map(PyIdentity).map_err(err)
}

/// `(word, sign)` with `zeta(args) = sign * I(word)`.
#[pyfunction]
fn zeta_word(args: Vec<u32>) -> PyResult<(PyWord, i32)> {
    let z = ZetaComposition::new(args).map_err(err)?;
    let (w, s) = mzv_to_word(&z).map_err(err)?;
    Ok((PyWord(w), s))
}

/// Decimal value of `zeta(args)`.
#[pyfunction]
#[pyo3(signature = (args, digits = 50))]
fn eval_mzv(args: Vec<u32>, digits: u32) -> PyResult<String> {
    let z = ZetaComposition::new(args).map_err(err)?;
    let ev = MzvEvaluator::from_env().map_err(err)?;
    let v = ev.eval_mzv(&z, digits).map_err(err)?;
    ev.save().map_err(err)?;
    Ok(v.to_decimal(digits))
}

/// Regularise `[(word, coefficient)]` into `[(mzv, pi power, coefficient)]`.
#[pyfunction]
fn regularise(terms: Vec<(String, String)>) -> PyResult<Vec<(String, u32, String)>> {
    let mut c = blockzeta::LinComb::zero();
    for (w, k) in terms {
        c.add_coeff(w.parse().map_err(err)?, parse_rational(&k).map_err(err)?);
    }
    let r = blockzeta::regularise::regularise(&c).map_err(err)?;
    Ok(r.iter().map(|(z, e, k)| (z.to_string(), e, k.to_string())).collect())
}

/// One row of the rank table as a dict.
#[pyfunction]
fn table_row<'py>(py: Python<'py>, weight: usize) -> PyResult<Bound<'py, PyDict>> {
    let row = rank::table_row(weight).map_err(err)?;
    let d = PyDict::new(py);
    d.set_item("weight", row.weight)?;
    for (f, c) in &row.families {
        d.set_item(f.as_str(), (c.init, c.rank))?;
    }
    d.set_item("overall", row.overall)?;
    d.set_item("expected", row.expected)?;
    Ok(d)
}

#[pyfunction]
fn zagier_dim(n: usize) -> u64 {
    rank::zagier_dim(n)
}

#[pymodule]
fn blockzeta_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyWord>()?;
    m.add_class::<PyBlocks>()?;
    m.add_class::<PyIdentity>()?;
    m.add_function(wrap_pyfunction!(generate, m)?)?;
    m.add_function(wrap_pyfunction!(zeta_word, m)?)?;
    m.add_function(wrap_pyfunction!(eval_mzv, m)?)?;
    m.add_function(wrap_pyfunction!(regularise, m)?)?;
    m.add_function(wrap_pyfunction!(table_row, m)?)?;
    m.add_function(wrap_pyfunction!(zagier_dim, m)?)?;
    Ok(())
}
