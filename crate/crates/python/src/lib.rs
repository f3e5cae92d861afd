//! Python bindings for `corex`.
//!
//! Exposes parsing, both extractors, the tree similarity measures, page
//! clustering and corpus evaluation as the `corex_py` module.

use std::path::PathBuf;

use pyo3::create_exception;
use pyo3::exceptions::{PyOSError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

use corex::cluster::{cluster_pages, Algo, DistanceMatrix};
use corex::coreex::CoreexParams;
use corex::econ::EconParams;
use corex::eval::{CorpusOptions, DEFAULT_GOLD_SUFFIX};
use corex::treedist::{self, Mapping, UnitCosts};
use corex::{Extractor, NodeId, Strategy};

create_exception!(
    corex_py,
    NoContentError,
    PyValueError,
    "The page has nothing to extract."
);

fn to_py(e: corex::Error) -> PyErr {
    match e {
        e if e.is_content_free() => NoContentError::new_err(e.to_string()),
        corex::Error::Io { .. } => PyOSError::new_err(e.to_string()),
        e => PyValueError::new_err(e.to_string()),
    }
}

fn parse<T: std::str::FromStr<Err = corex::Error>>(s: &str) -> PyResult<T> {
    s.parse().map_err(to_py)
}

#[pyclass(name = "DomTree", module = "corex_py", frozen)]
struct PyDomTree {
    inner: corex::DomTree,
}

impl PyDomTree {
    fn check(&self, id: usize) -> PyResult<NodeId> {
        if id < self.inner.node_count() {
            Ok(NodeId(id))
        } else {
            Err(PyValueError::new_err(format!(
                "node {id} out of range for a tree of {} nodes",
                self.inner.node_count()
            )))
        }
    }
}

#[pymethods]
impl PyDomTree {
    #[getter]
    fn node_count(&self) -> usize {
        self.inner.node_count()
    }

    #[getter]
    fn source_name(&self) -> &str {
        self.inner.source_name()
    }

    fn __len__(&self) -> usize {
        self.inner.node_count()
    }

    fn __repr__(&self) -> String {
        format!(
            "DomTree(source_name={:?}, node_count={})",
            self.inner.source_name(),
            self.inner.node_count()
        )
    }

    /// Tag of an element node, None for text.
    fn tag(&self, id: usize) -> PyResult<Option<String>> {
        Ok(self.inner.node(self.check(id)?).tag().map(str::to_owned))
    }

    /// Raw character data of a text node, None for elements.
    fn text(&self, id: usize) -> PyResult<Option<String>> {
        Ok(self.inner.node(self.check(id)?).text().map(str::to_owned))
    }

    fn attrs(&self, id: usize) -> PyResult<Vec<(String, String)>> {
        Ok(self.inner.node(self.check(id)?).attrs().to_vec())
    }

    fn parent(&self, id: usize) -> PyResult<Option<usize>> {
        Ok(self.inner.parent(self.check(id)?).map(|p| p.0))
    }

    fn children(&self, id: usize) -> PyResult<Vec<usize>> {
        Ok(self
            .inner
            .node(self.check(id)?)
            .children()
            .iter()
            .map(|c| c.0)
            .collect())
    }

    fn preorder(&self) -> Vec<usize> {
        self.inner.preorder().into_iter().map(|id| id.0).collect()
    }

    /// Whitespace-normalized descendant text.
    fn node_text(&self, id: usize) -> PyResult<String> {
        Ok(self.inner.node_text(self.check(id)?))
    }

    fn outline(&self) -> String {
        self.inner.outline()
    }

    /// Tag-only projection used by the similarity measures.
    fn to_sim(&self) -> PySimTree {
        PySimTree {
            inner: treedist::project_sim(&self.inner),
        }
    }
}

#[pyfunction]
#[pyo3(signature = (html, source_name = "input"))]
fn parse_html(html: &str, source_name: &str) -> PyDomTree {
    PyDomTree {
        inner: corex::parse_html(html, source_name),
    }
}

/// Parses raw bytes, replacing invalid UTF-8.
#[pyfunction]
#[pyo3(signature = (data, source_name = "input"))]
fn parse_html_bytes(data: &[u8], source_name: &str) -> PyDomTree {
    PyDomTree {
        inner: corex::parse_html_bytes(data, source_name),
    }
}

#[pyclass(name = "ExtractionResult", module = "corex_py", frozen)]
struct PyExtractionResult {
    inner: corex::ExtractionResult,
}

#[pymethods]
impl PyExtractionResult {
    #[getter]
    fn source_name(&self) -> &str {
        &self.inner.source_name
    }

    #[getter]
    fn strategy(&self) -> &str {
        self.inner.strategy.as_str()
    }

    #[getter]
    fn node_path(&self) -> Vec<usize> {
        self.inner.node_path.iter().map(|id| id.0).collect()
    }

    #[getter]
    fn text(&self) -> &str {
        &self.inner.text
    }

    #[getter]
    fn word_count(&self) -> u64 {
        self.inner.word_count
    }

    #[getter]
    fn punc_num(&self) -> u64 {
        self.inner.punc_num
    }

    #[getter]
    fn score(&self) -> Option<f64> {
        self.inner.score
    }

    /// Backtracking steps as (child, parent, distance); ECON only.
    #[getter]
    fn trace(&self) -> Option<Vec<(usize, usize, i64)>> {
        self.inner.trace.as_ref().map(|t| {
            t.steps
                .iter()
                .map(|s| (s.child.0, s.parent.0, s.distance))
                .collect()
        })
    }

    fn to_json(&self) -> PyResult<String> {
        serde_json::to_string(&self.inner).map_err(|e| PyValueError::new_err(e.to_string()))
    }

    fn __repr__(&self) -> String {
        format!(
            "ExtractionResult(strategy={:?}, node={}, word_count={})",
            self.inner.strategy.as_str(),
            self.inner.node(),
            self.inner.word_count
        )
    }
}

fn build_extractor(
    strategy: &str,
    alpha: Option<f64>,
    min_words: Option<u64>,
    big_tags: Option<Vec<String>>,
) -> PyResult<Extractor> {
    match parse::<Strategy>(strategy)? {
        Strategy::Coreex => {
            let d = CoreexParams::default();
            let params =
                CoreexParams::new(alpha.unwrap_or(d.alpha), min_words.unwrap_or(d.min_words))
                    .map_err(to_py)?;
            Ok(Extractor::Coreex(params))
        }
        Strategy::Econ => Ok(Extractor::Econ(match big_tags {
            Some(tags) => EconParams::from_csv(&tags.join(",")).map_err(to_py)?,
            None => EconParams::default(),
        })),
    }
}

/// Runs an extractor on a parsed page. Raises NoContentError when the page
/// has nothing to extract.
#[pyfunction]
#[pyo3(signature = (tree, strategy = "econ", alpha = None, min_words = None, big_tags = None))]
fn extract(
    tree: &PyDomTree,
    strategy: &str,
    alpha: Option<f64>,
    min_words: Option<u64>,
    big_tags: Option<Vec<String>>,
) -> PyResult<PyExtractionResult> {
    let extractor = build_extractor(strategy, alpha, min_words, big_tags)?;
    let inner = extractor.extract(&tree.inner).map_err(to_py)?;
    Ok(PyExtractionResult { inner })
}

#[pyclass(name = "SimTree", module = "corex_py", frozen, eq)]
#[derive(PartialEq)]
struct PySimTree {
    inner: treedist::SimTree,
}

#[pymethods]
impl PySimTree {
    /// Builds a tree from `a(b,c(d))` notation.
    #[new]
    fn new(notation: &str) -> PyResult<Self> {
        Ok(PySimTree {
            inner: parse(notation)?,
        })
    }

    /// Random tree of `size` nodes, reproducible for a given seed.
    #[staticmethod]
    #[pyo3(signature = (seed, size, labels = vec!["a".to_owned(), "b".to_owned(), "c".to_owned()]))]
    fn random(seed: u64, size: usize, labels: Vec<String>) -> PyResult<Self> {
        use rand::SeedableRng;
        if size == 0 || labels.is_empty() {
            return Err(PyValueError::new_err("size and labels must be non-empty"));
        }
        let labels: Vec<&str> = labels.iter().map(String::as_str).collect();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        Ok(PySimTree {
            inner: treedist::SimTree::random(&mut rng, size, &labels),
        })
    }

    #[getter]
    fn label(&self) -> &str {
        self.inner.label()
    }

    #[getter]
    fn size(&self) -> usize {
        self.inner.size()
    }

    #[getter]
    fn height(&self) -> usize {
        self.inner.height()
    }

    #[getter]
    fn children(&self) -> Vec<PySimTree> {
        self.inner
            .children()
            .iter()
            .map(|c| PySimTree { inner: c.clone() })
            .collect()
    }

    fn __len__(&self) -> usize {
        self.inner.size()
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("SimTree({:?})", self.inner.to_string())
    }
}

#[pyfunction]
fn simple_tree_matching(a: &PySimTree, b: &PySimTree) -> usize {
    treedist::simple_tree_matching(&a.inner, &b.inner)
}

#[pyfunction]
fn stm_normalized(a: &PySimTree, b: &PySimTree) -> f64 {
    treedist::stm_normalized(&a.inner, &b.inner)
}

/// Matched (i, j) pre-order index pairs of a maximum STM mapping.
#[pyfunction]
fn stm_mapping(a: &PySimTree, b: &PySimTree) -> Vec<(usize, usize)> {
    treedist::stm_mapping(&a.inner, &b.inner).pairs().to_vec()
}

#[pyfunction]
fn validate_mapping(pairs: Vec<(usize, usize)>, a: &PySimTree, b: &PySimTree) -> PyResult<bool> {
    if pairs
        .iter()
        .any(|&(i, j)| i >= a.inner.size() || j >= b.inner.size())
    {
        return Err(PyValueError::new_err("mapping index out of range"));
    }
    Ok(treedist::validate_mapping(
        &Mapping::new(pairs),
        &a.inner,
        &b.inner,
    ))
}

/// Unit-cost restricted top-down distance; `epsilon` prunes substitutions.
#[pyfunction]
#[pyo3(signature = (a, b, epsilon = None))]
fn rtdm(a: &PySimTree, b: &PySimTree, epsilon: Option<f64>) -> PyResult<f64> {
    let costs = match epsilon {
        Some(e) if e.is_nan() || e < 0.0 => {
            return Err(PyValueError::new_err("epsilon must be non-negative"))
        }
        Some(e) => UnitCosts::with_epsilon(e),
        None => UnitCosts::default(),
    };
    Ok(treedist::rtdm(&a.inner, &b.inner, &costs))
}

#[pyfunction]
fn brute_force_stm(a: &PySimTree, b: &PySimTree) -> PyResult<usize> {
    treedist::brute_force_stm(&a.inner, &b.inner).map_err(to_py)
}

#[pyfunction]
fn brute_force_rtdm(a: &PySimTree, b: &PySimTree) -> PyResult<f64> {
    treedist::brute_force_rtdm(&a.inner, &b.inner, &UnitCosts::default()).map_err(to_py)
}

#[pyfunction]
#[pyo3(signature = (a, b, algo = "rtdm"))]
fn normalized_distance(a: &PySimTree, b: &PySimTree, algo: &str) -> PyResult<f64> {
    Ok(corex::cluster::normalized_distance(
        &a.inner,
        &b.inner,
        parse(algo)?,
    ))
}

/// Groups trees into single-linkage clusters; returns lists of indices.
#[pyfunction]
#[pyo3(signature = (trees, threshold, algo = "rtdm"))]
fn cluster(
    py: Python<'_>,
    trees: Vec<PyRef<'_, PySimTree>>,
    threshold: f64,
    algo: &str,
) -> PyResult<Vec<Vec<usize>>> {
    let algo: Algo = parse(algo)?;
    let trees: Vec<treedist::SimTree> = trees.iter().map(|t| t.inner.clone()).collect();
    let groups = py.detach(move || {
        let matrix = DistanceMatrix::from_trees(&trees, algo);
        cluster_pages(&matrix, threshold).map(|c| c.groups)
    });
    groups.map_err(to_py)
}

/// Single-linkage clusters over an explicit distance matrix.
#[pyfunction]
fn cluster_matrix(rows: Vec<Vec<f64>>, threshold: f64) -> PyResult<Vec<Vec<usize>>> {
    let matrix = DistanceMatrix::from_rows(rows).map_err(to_py)?;
    Ok(cluster_pages(&matrix, threshold).map_err(to_py)?.groups)
}

/// Word-bag (precision, recall, f1) of an extraction against gold text.
#[pyfunction]
fn score(extracted: &str, gold: &str) -> (f64, f64, f64) {
    let s = corex::eval::score(extracted, gold);
    (s.precision, s.recall, s.f1)
}

/// Writes a synthetic corpus; returns (html_path, gold_path) pairs.
#[pyfunction]
#[pyo3(signature = (seed, n, out_dir, templates = corex::eval::TEMPLATE_COUNT))]
fn generate_corpus(
    seed: u64,
    n: usize,
    out_dir: PathBuf,
    templates: usize,
) -> PyResult<Vec<(String, String)>> {
    let pairs = corex::eval::generate_corpus_with(seed, n, &out_dir, &CorpusOptions { templates })
        .map_err(to_py)?;
    Ok(pairs
        .into_iter()
        .map(|p| {
            (
                p.html_path.display().to_string(),
                p.gold_path.display().to_string(),
            )
        })
        .collect())
}

/// Scores a strategy over a gold corpus directory; returns a dict shaped
/// like the CLI's JSON report.
#[pyfunction]
#[pyo3(signature = (dir, strategy = "econ", gold_suffix = DEFAULT_GOLD_SUFFIX))]
fn evaluate_corpus<'py>(
    py: Python<'py>,
    dir: PathBuf,
    strategy: &str,
    gold_suffix: &str,
) -> PyResult<Bound<'py, PyDict>> {
    let extractor = Extractor::default_for(parse(strategy)?);
    let suffix = gold_suffix.to_owned();
    let report = py
        .detach(move || corex::eval::evaluate_corpus(&dir, &extractor, &suffix))
        .map_err(to_py)?;
    let scores = |s: &corex::eval::Scores| -> PyResult<Bound<'py, PyDict>> {
        let d = PyDict::new(py);
        d.set_item("precision", s.precision)?;
        d.set_item("recall", s.recall)?;
        d.set_item("f1", s.f1)?;
        Ok(d)
    };
    let documents = report
        .documents
        .iter()
        .map(|doc| {
            let d = scores(&doc.scores)?;
            d.set_item("path", &doc.path)?;
            d.set_item("error", &doc.error)?;
            Ok(d)
        })
        .collect::<PyResult<Vec<_>>>()?;
    let out = PyDict::new(py);
    out.set_item("strategy", report.strategy.as_str())?;
    out.set_item("document_count", report.document_count)?;
    out.set_item("documents", documents)?;
    out.set_item("macro", scores(&report.macro_avg)?)?;
    Ok(out)
}

#[pymodule]
fn corex_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("NoContentError", m.py().get_type::<NoContentError>())?;
    m.add_class::<PyDomTree>()?;
    m.add_class::<PyExtractionResult>()?;
    m.add_class::<PySimTree>()?;
    m.add_function(wrap_pyfunction!(parse_html, m)?)?;
    m.add_function(wrap_pyfunction!(parse_html_bytes, m)?)?;
    m.add_function(wrap_pyfunction!(extract, m)?)?;
    m.add_function(wrap_pyfunction!(simple_tree_matching, m)?)?;
    m.add_function(wrap_pyfunction!(stm_normalized, m)?)?;
    m.add_function(wrap_pyfunction!(stm_mapping, m)?)?;
    m.add_function(wrap_pyfunction!(validate_mapping, m)?)?;
    m.add_function(wrap_pyfunction!(rtdm, m)?)?;
    m.add_function(wrap_pyfunction!(brute_force_stm, m)?)?;
    m.add_function(wrap_pyfunction!(brute_force_rtdm, m)?)?;
    m.add_function(wrap_pyfunction!(normalized_distance, m)?)?;
    m.add_function(wrap_pyfunction!(cluster, m)?)?;
    m.add_function(wrap_pyfunction!(cluster_matrix, m)?)?;
    m.add_function(wrap_pyfunction!(score, m)?)?;
    m.add_function(wrap_pyfunction!(generate_corpus, m)?)?;
    m.add_function(wrap_pyfunction!(evaluate_corpus, m)?)?;
    Ok(())
}
