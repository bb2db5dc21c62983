//! Python bindings: `import comma_seq`.

use comma_core::base3::predict_comma_number;
use comma_core::classifier::{self, branch_points_up_to, landmines_up_to};
use comma_core::kangaroo;
use comma_core::paths::{self, path_terms, walk_with_choices};
use comma_core::runner::{run_naive, Successor};
use comma_core::stepper::{children_of, parent_of, successor_of};
use comma_core::transform::{self, TermSequence};
use comma_core::{run_fast, term_at, ChoiceString, CommaError, Radix, RunLimits};
use num_bigint::BigUint;
use pyo3::create_exception;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

create_exception!(comma_seq, CommaSeqError, PyValueError, "Invalid input to a comma-sequence operation.");

fn err(e: CommaError) -> PyErr {
    CommaSeqError::new_err(e.to_string())
}

fn radix(base: u64) -> PyResult<Radix> {
    Radix::new(base).map_err(err)
}

fn number(value: BigUint, base: u64) -> PyResult<comma_core::BaseNumber> {
    comma_core::BaseNumber::new(value, base).map_err(err)
}

/// A positive integer with a fixed base.
#[pyclass(frozen, eq, skip_from_py_object, module = "comma_seq")]
#[derive(Clone, PartialEq)]
pub struct BaseNumber(comma_core::BaseNumber);

#[pymethods]
impl BaseNumber {
    #[new]
    #[pyo3(signature = (value, base = 10))]
    fn new(value: BigUint, base: u64) -> PyResult<Self> {
        number(value, base).map(BaseNumber)
    }

    #[getter]
    fn value(&self) -> BigUint {
        self.0.value().clone()
    }

    #[getter]
    fn base(&self) -> u64 {
        self.0.base()
    }

    /// Digits, most significant first.
    fn digits(&self) -> Vec<u64> {
        self.0.digits()
    }

    fn digit_string(&self) -> String {
        self.0.to_digit_string()
    }

    #[getter]
    fn leading_digit(&self) -> u64 {
        self.0.leading_digit()
    }

    #[getter]
    fn trailing_digit(&self) -> u64 {
        self.0.trailing_digit()
    }

    fn __int__(&self) -> BigUint {
        self.value()
    }

    fn __repr__(&self) -> String {
        format!("BaseNumber({}, base={})", self.0.value(), self.0.base())
    }
}

/// Length and last term of a run.
#[pyclass(frozen, get_all, module = "comma_seq")]
pub struct RunOutcome {
    terminated: bool,
    length: BigUint,
    start: BigUint,
    #[pyo3(name = "final")]
    final_term: BigUint,
    comma_sum: BigUint,
}

#[pymethods]
impl RunOutcome {
    fn __repr__(&self) -> String {
        format!(
            "RunOutcome(length={}, final={}, terminated={})",
            self.length,
            self.final_term,
            if self.terminated { "True" } else { "False" }
        )
    }
}

impl From<comma_core::RunOutcome> for RunOutcome {
    fn from(o: comma_core::RunOutcome) -> Self {
        RunOutcome {
            terminated: o.terminated(),
            length: o.length,
            start: o.start.into_value(),
            final_term: o.final_term.into_value(),
            comma_sum: o.comma_sum,
        }
    }
}

/// Where a guided walk through the child graph ended.
#[pyclass(frozen, get_all, module = "comma_seq")]
pub struct PathReport {
    /// `"landmine"`, `"budget"` or `"choices-exhausted"`.
    outcome: &'static str,
    length: BigUint,
    #[pyo3(name = "final")]
    final_term: BigUint,
    /// Bits chosen at each branch-point passed.
    choices: String,
}

#[pymethods]
impl PathReport {
    fn __repr__(&self) -> String {
        format!("PathReport(outcome={:?}, length={}, final={})", self.outcome, self.length, self.final_term)
    }
}

impl From<comma_core::PathReport> for PathReport {
    fn from(r: comma_core::PathReport) -> Self {
        PathReport {
            outcome: r.outcome.as_str(),
            choices: r.choices(),
            length: r.length,
            final_term: r.final_term.into_value(),
        }
    }
}

fn limits(max_terms: Option<BigUint>, max_value: Option<BigUint>) -> RunLimits {
    RunLimits { max_terms, max_value, stop_at_region_exit: false }
}

/// Run the comma sequence from `start` with the jump-ahead engine.
#[pyfunction]
#[pyo3(signature = (start, base = 10, max_terms = None, max_value = None))]
fn run(py: Python<'_>, start: BigUint, base: u64, max_terms: Option<BigUint>, max_value: Option<BigUint>) -> PyResult<RunOutcome> {
    let s = number(start, base)?;
    let lim = limits(max_terms, max_value);
    py.detach(|| run_fast(&s, &lim)).map(RunOutcome::from).map_err(err)
}

/// Run one successor step at a time; slow, for cross-checking.
#[pyfunction]
#[pyo3(signature = (start, max_terms, base = 10))]
fn run_slow(py: Python<'_>, start: BigUint, max_terms: u64, base: u64) -> PyResult<RunOutcome> {
    let s = number(start, base)?;
    Ok(py.detach(|| run_naive(&s, max_terms, None)).into())
}

/// The first `count` terms from `start` (fewer if the sequence ends).
#[pyfunction]
#[pyo3(signature = (start, count, base = 10))]
fn terms(start: BigUint, count: usize, base: u64) -> PyResult<Vec<BigUint>> {
    let s = number(start, base)?;
    Ok(path_terms(&s, Successor).take(count).collect())
}

/// The `n`-th term (1-based) of the sequence from `start`.
#[pyfunction(name = "term_at")]
#[pyo3(signature = (start, n, base = 10))]
fn term_at_py(start: BigUint, n: BigUint, base: u64) -> PyResult<BigUint> {
    term_at(&number(start, base)?, &n).map(|t| t.into_value()).map_err(err)
}

#[pyfunction]
#[pyo3(signature = (n, base = 10))]
fn successor(n: BigUint, base: u64) -> PyResult<Option<BigUint>> {
    Ok(successor_of(&n, radix(base)?))
}

/// All comma-children of `n`, ascending (zero, one or two).
#[pyfunction]
#[pyo3(signature = (n, base = 10))]
fn children(n: BigUint, base: u64) -> PyResult<Vec<BigUint>> {
    Ok(children_of(&n, radix(base)?).into_iter().map(|(c, _)| c).collect())
}

#[pyfunction]
#[pyo3(signature = (n, base = 10))]
fn parent(n: BigUint, base: u64) -> PyResult<Option<BigUint>> {
    Ok(parent_of(&n, radix(base)?))
}

#[pyfunction]
#[pyo3(signature = (n, base = 10))]
fn is_landmine(n: BigUint, base: u64) -> PyResult<bool> {
    Ok(classifier::is_landmine(&number(n, base)?))
}

#[pyfunction]
#[pyo3(signature = (n, base = 10))]
fn is_branch_point(n: BigUint, base: u64) -> PyResult<bool> {
    Ok(classifier::has_two_children(&number(n, base)?))
}

#[pyfunction]
#[pyo3(signature = (limit, base = 10))]
fn landmines(limit: BigUint, base: u64) -> PyResult<Vec<BigUint>> {
    Ok(landmines_up_to(&limit, radix(base)?))
}

#[pyfunction]
#[pyo3(signature = (limit, base = 10))]
fn branch_points(limit: BigUint, base: u64) -> PyResult<Vec<BigUint>> {
    Ok(branch_points_up_to(&limit, radix(base)?))
}

/// Comma-numbers read off the gaps of `seq`.
#[pyfunction]
#[pyo3(signature = (seq, base = 10))]
fn comma_transform(seq: Vec<BigUint>, base: u64) -> PyResult<Vec<u64>> {
    let s = TermSequence::new(seq, radix(base)?).map_err(err)?;
    transform::comma_transform(&s).map_err(err)
}

#[pyfunction]
#[pyo3(signature = (seq, base = 10))]
fn is_comma_sequence(seq: Vec<BigUint>, base: u64) -> PyResult<bool> {
    let s = TermSequence::new(seq, radix(base)?).map_err(err)?;
    Ok(transform::is_comma_sequence(&s))
}

/// Follow the child graph from `start`, taking `choices[i]` (`'0'` lower,
/// `'1'` higher) at the i-th branch-point.
#[pyfunction]
#[pyo3(signature = (start, choices, base = 10, max_terms = None, max_value = None))]
fn walk(
    py: Python<'_>,
    start: BigUint,
    choices: &str,
    base: u64,
    max_terms: Option<BigUint>,
    max_value: Option<BigUint>,
) -> PyResult<PathReport> {
    let s = number(start, base)?;
    let mut nav: ChoiceString = choices.parse().map_err(err)?;
    let lim = limits(max_terms, max_value);
    py.detach(|| walk_with_choices(&s, &mut nav, &lim)).map(PathReport::from).map_err(err)
}

/// The first `count` terms of the infinite path in the base-3 child graph.
#[pyfunction]
fn base3_infinite_path(count: usize) -> Vec<BigUint> {
    paths::base3_infinite_path().take(count).collect()
}

/// Base-3 comma-number after `n` from its digit pattern, `None` at a landmine.
#[pyfunction]
fn predict_base3(n: BigUint) -> PyResult<Option<u64>> {
    predict_comma_number(&number(n, 3)?).map_err(err)
}

/// Starts `(b-1)^m x y` that die before `b^(m+2)`.
#[pyfunction]
#[pyo3(signature = (base, m = 2))]
fn survival_count(py: Python<'_>, base: u64, m: u32) -> PyResult<u64> {
    let r = radix(base)?;
    Ok(py.detach(|| kangaroo::survival_count(r, m)))
}

#[pyfunction]
fn gf_coefficients(n_max: usize) -> Vec<i64> {
    kangaroo::gf_coefficients(n_max)
}

#[pymodule]
pub fn comma_seq(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("CommaSeqError", m.py().get_type::<CommaSeqError>())?;
    m.add_class::<BaseNumber>()?;
    m.add_class::<RunOutcome>()?;
    m.add_class::<PathReport>()?;
    m.add_function(wrap_pyfunction!(run, m)?)?;
    m.add_function(wrap_pyfunction!(run_slow, m)?)?;
    m.add_function(wrap_pyfunction!(terms, m)?)?;
    m.add_function(wrap_pyfunction!(term_at_py, m)?)?;
    m.add_function(wrap_pyfunction!(successor, m)?)?;
    m.add_function(wrap_pyfunction!(children, m)?)?;
    m.add_function(wrap_pyfunction!(parent, m)?)?;
    m.add_function(wrap_pyfunction!(is_landmine, m)?)?;
    m.add_function(wrap_pyfunction!(is_branch_point, m)?)?;
    m.add_function(wrap_pyfunction!(landmines, m)?)?;
    m.add_function(wrap_pyfunction!(branch_points, m)?)?;
    m.add_function(wrap_pyfunction!(comma_transform, m)?)?;
    m.add_function(wrap_pyfunction!(is_comma_sequence, m)?)?;
    m.add_function(wrap_pyfunction!(walk, m)?)?;
    m.add_function(wrap_pyfunction!(base3_infinite_path, m)?)?;
    m.add_function(wrap_pyfunction!(predict_base3, m)?)?;
    m.add_function(wrap_pyfunction!(survival_count, m)?)?;
    m.add_function(wrap_pyfunction!(gf_coefficients, m)?)?;
    Ok(())
}
