//! Python bindings. Formulas can be passed as text or as `Formula` objects;
//! structured results (verdicts, search reports) come back as dicts.

use pyo3::create_exception;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use serde_json::Value;

use pal::classify::RuleSet;
use pal::formula::{AgentId, Formula};
use pal::kripke::KripkeModel;
use pal::oracle::{
    check_supermodel_preservation, find_selfref_counterexample, find_success_counterexample, is_self_refuting_on,
    success_failures, SearchBounds, SearchError, Strategy,
};

create_exception!(palkit, ParseError, PyValueError);
create_exception!(palkit, ModelError, PyValueError);
create_exception!(palkit, PreconditionError, PyValueError);

fn parse_text(text: &str) -> PyResult<Formula> {
    pal::parse(text).map_err(|e| ParseError::new_err(format!("syntax error {e}")))
}

fn formula_arg(obj: &Bound<'_, PyAny>) -> PyResult<Formula> {
    if let Ok(f) = obj.extract::<PyRef<'_, PyFormula>>() {
        return Ok(f.inner.clone());
    }
    parse_text(&obj.extract::<String>()?)
}

fn to_py(py: Python<'_>, v: &Value) -> PyResult<Py<PyAny>> {
    let text = serde_json::to_string(v).map_err(|e| PyValueError::new_err(e.to_string()))?;
    Ok(py.import("json")?.call_method1("loads", (text,))?.unbind())
}

fn search_err(e: SearchError) -> PyErr {
    PreconditionError::new_err(e.to_string())
}

#[pyclass(name = "Formula", module = "palkit", frozen, eq, hash, skip_from_py_object)]
#[derive(Clone, PartialEq, Eq, Hash)]
struct PyFormula {
    inner: Formula,
}

#[pymethods]
impl PyFormula {
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        Ok(PyFormula { inner: parse_text(text)? })
    }

    fn nnf(&self) -> PyResult<PyFormula> {
        pal::formula::to_nnf(&self.inner)
            .map(|inner| PyFormula { inner })
            .map_err(|e| PreconditionError::new_err(e.to_string()))
    }

    fn agents(&self) -> Vec<String> {
        self.inner.agents().iter().map(|a| a.as_str().to_string()).collect()
    }

    fn props(&self) -> Vec<String> {
        self.inner.props().iter().map(|p| p.as_str().to_string()).collect()
    }

    fn __str__(&self) -> String {
        pal::render(&self.inner)
    }

    fn __repr__(&self) -> String {
        format!("Formula({:?})", pal::render(&self.inner))
    }
}

#[pyclass(name = "Model", module = "palkit", frozen)]
struct PyModel {
    inner: KripkeModel,
    designated: Option<usize>,
}

impl PyModel {
    fn world(&self, world: Option<&str>) -> PyResult<usize> {
        match world {
            Some(name) => self.inner.world_index(name).map_err(|e| PreconditionError::new_err(e.to_string())),
            None => self
                .designated
                .ok_or_else(|| PreconditionError::new_err("no world given and the model has no designated world")),
        }
    }

    fn names(&self, s: pal::worldset::WorldSet) -> Vec<String> {
        s.iter().map(|w| self.inner.world_name(w).to_string()).collect()
    }
}

#[pymethods]
impl PyModel {
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<PyModel> {
        let (inner, designated) = KripkeModel::from_json(text).map_err(|e| ModelError::new_err(e.to_string()))?;
        Ok(PyModel { inner, designated })
    }

    fn to_json(&self) -> String {
        self.inner.to_json(self.designated)
    }

    #[getter]
    fn worlds(&self) -> Vec<String> {
        self.inner.worlds().to_vec()
    }

    #[getter]
    fn designated(&self) -> Option<String> {
        self.designated.map(|w| self.inner.world_name(w).to_string())
    }

    #[pyo3(signature = (formula, world=None))]
    fn eval(&self, formula: &Bound<'_, PyAny>, world: Option<&str>) -> PyResult<bool> {
        let f = formula_arg(formula)?;
        Ok(self.inner.holds_at(self.world(world)?, &f))
    }

    fn truth_set(&self, formula: &Bound<'_, PyAny>) -> PyResult<Vec<String>> {
        Ok(self.names(self.inner.truth_set(&formula_arg(formula)?)))
    }

    /// The model after announcing `formula`. The designated world is kept
    /// if it survives.
    fn announce(&self, formula: &Bound<'_, PyAny>) -> PyResult<PyModel> {
        let f = formula_arg(formula)?;
        let inner = self.inner.restrict(&f).map_err(|e| PreconditionError::new_err(e.to_string()))?;
        let designated = self
            .designated
            .filter(|&d| self.inner.holds_at(d, &f))
            .and_then(|d| inner.world_index(self.inner.world_name(d)).ok());
        Ok(PyModel { inner, designated })
    }

    /// Worlds where `formula` holds but fails after being announced.
    fn success_failures(&self, formula: &Bound<'_, PyAny>) -> PyResult<Vec<String>> {
        Ok(self.names(success_failures(&self.inner, &formula_arg(formula)?)))
    }

    fn is_successful(&self, formula: &Bound<'_, PyAny>) -> PyResult<bool> {
        Ok(success_failures(&self.inner, &formula_arg(formula)?).is_empty())
    }

    fn is_self_refuting(&self, formula: &Bound<'_, PyAny>) -> PyResult<bool> {
        Ok(is_self_refuting_on(&self.inner, &formula_arg(formula)?))
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }
}

#[pyfunction]
fn parse(text: &str) -> PyResult<PyFormula> {
    PyFormula::new(text)
}

#[pyfunction]
fn render(formula: &Bound<'_, PyAny>) -> PyResult<String> {
    Ok(pal::render(&formula_arg(formula)?))
}

#[pyfunction]
#[pyo3(signature = (formula, rules="validated"))]
fn classify(py: Python<'_>, formula: &Bound<'_, PyAny>, rules: &str) -> PyResult<Py<PyAny>> {
    let f = formula_arg(formula)?;
    let rs = match rules {
        "validated" => RuleSet::Validated,
        "paper" => RuleSet::Paper,
        other => return Err(PyValueError::new_err(format!("unknown rule set {other:?}"))),
    };
    to_py(py, &pal::classify::classify(&f, rs).to_json(&f))
}

#[pyfunction]
#[pyo3(signature = (formula, max_worlds=4, agents=None, strategy="exhaustive", samples=10_000, seed=0, property="success"))]
#[allow(clippy::too_many_arguments)]
fn search(
    py: Python<'_>,
    formula: &Bound<'_, PyAny>,
    max_worlds: usize,
    agents: Option<Vec<String>>,
    strategy: &str,
    samples: u64,
    seed: u64,
    property: &str,
) -> PyResult<Py<PyAny>> {
    let f = formula_arg(formula)?;
    let agents: Vec<AgentId> = match agents {
        Some(names) => names
            .into_iter()
            .map(|a| AgentId::new(a).map_err(|e| PyValueError::new_err(e.to_string())))
            .collect::<PyResult<_>>()?,
        None if f.agents().is_empty() => vec![AgentId::new("a").unwrap()],
        None => f.agents().into_iter().collect(),
    };
    let strategy = match strategy {
        "exhaustive" => Strategy::Exhaustive,
        "chain" => Strategy::Chain,
        "random-tree" => Strategy::RandomTree { samples, seed },
        other => return Err(PyValueError::new_err(format!("unknown strategy {other:?}"))),
    };
    let bounds = SearchBounds::new(max_worlds, agents, strategy).map_err(search_err)?;
    let report = py
        .detach(|| match property {
            "success" => Ok(find_success_counterexample(&f, &bounds)),
            "self-refutation" => Ok(find_selfref_counterexample(&f, &bounds)),
            "supermodel" => Ok(check_supermodel_preservation(&f, &bounds)),
            other => Err(other.to_string()),
        })
        .map_err(|p| PyValueError::new_err(format!("unknown property {p:?}")))?
        .map_err(search_err)?;
    to_py(py, &report.to_json(false))
}

#[pymodule(name = "palkit")]
fn palkit_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyFormula>()?;
    m.add_class::<PyModel>()?;
    m.add_function(wrap_pyfunction!(parse, m)?)?;
    m.add_function(wrap_pyfunction!(render, m)?)?;
    m.add_function(wrap_pyfunction!(classify, m)?)?;
    m.add_function(wrap_pyfunction!(search, m)?)?;
    m.add("ParseError", m.py().get_type::<ParseError>())?;
    m.add("ModelError", m.py().get_type::<ModelError>())?;
    m.add("PreconditionError", m.py().get_type::<PreconditionError>())?;
    Ok(())
}
