//! Python bindings: schedules, validation, the search and the brute-force
//! counter.

use std::collections::BTreeMap;
use std::time::Duration;

use pyo3::exceptions::{PyIndexError, PyValueError};
use pyo3::prelude::*;

use enass_core::format;
use enass_core::oracle::exhaustive_count;
use enass_core::{
    build_initial_schedule, verify_solution, Error, Match, ScheduleGrid, SearchLimits, Solver, TeamCount,
    ValidationReport, Variant,
};

fn to_py(e: Error) -> PyErr {
    match e {
        Error::IndexOutOfRange { .. } => PyIndexError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn team_count(teams: u32) -> PyResult<TeamCount> {
    TeamCount::new(teams).map_err(to_py)
}

type Cell = Option<(u32, u32)>;

/// A (possibly partial) schedule, indexed by 1-based period and week.
#[pyclass(name = "Schedule", module = "enass", frozen, from_py_object)]
#[derive(Clone)]
pub struct PySchedule {
    grid: ScheduleGrid,
}

#[pymethods]
impl PySchedule {
    /// Builds a schedule from rows of `(a, b)` pairs or `None`.
    #[new]
    fn new(rows: Vec<Vec<Cell>>) -> PyResult<Self> {
        let rows = rows
            .into_iter()
            .map(|row| {
                row.into_iter()
                    .map(|c| c.map(|(a, b)| Match::try_new(a, b)).transpose())
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()
            .map_err(to_py)?;
        let weeks = rows.first().map_or(0, Vec::len);
        let teams = TeamCount::from_dims(rows.len(), weeks).ok_or_else(|| {
            PyValueError::new_err(format!("{} x {weeks} is not a schedule shape (P = T/2, W = T-1)", rows.len()))
        })?;
        Ok(PySchedule {
            grid: ScheduleGrid::from_rows(teams, rows).map_err(to_py)?,
        })
    }

    /// Parses the whitespace-separated `a,b` table format.
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        Ok(PySchedule {
            grid: format::parse_table(text).map_err(to_py)?,
        })
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(PySchedule {
            grid: format::from_json(text).map_err(to_py)?,
        })
    }

    #[getter]
    fn teams(&self) -> u32 {
        self.grid.teams().get()
    }

    #[getter]
    fn periods(&self) -> usize {
        self.grid.teams().periods()
    }

    #[getter]
    fn weeks(&self) -> usize {
        self.grid.teams().weeks()
    }

    fn get(&self, period: usize, week: usize) -> PyResult<Cell> {
        let (periods, weeks) = (self.periods(), self.weeks());
        if !(1..=periods).contains(&period) || !(1..=weeks).contains(&week) {
            return Err(to_py(Error::IndexOutOfRange {
                period,
                week,
                periods,
                weeks,
            }));
        }
        Ok(self.grid.get(period, week).map(|m| (m.home(), m.away())))
    }

    fn rows(&self) -> Vec<Vec<Cell>> {
        self.grid
            .rows()
            .map(|row| row.iter().map(|c| c.map(|m| (m.home(), m.away()))).collect())
            .collect()
    }

    fn is_complete(&self) -> bool {
        self.grid.is_complete()
    }

    fn render(&self) -> String {
        format::render_table(&self.grid)
    }

    fn to_json(&self) -> String {
        format::to_json(&self.grid).to_string()
    }

    fn verify(&self) -> PyResult<PyReport> {
        verify(self)
    }

    fn __eq__(&self, other: &PySchedule) -> bool {
        self.grid == other.grid
    }

    fn __str__(&self) -> String {
        self.render()
    }

    fn __repr__(&self) -> String {
        format!("Schedule(teams={}, filled={})", self.teams(), self.grid.filled().count())
    }
}

/// Outcome of checking a complete schedule against every constraint.
#[pyclass(name = "Report", module = "enass", frozen)]
pub struct PyReport {
    report: ValidationReport,
}

#[pymethods]
impl PyReport {
    /// True when pairs, weeks and period caps all hold.
    #[getter]
    fn is_valid(&self) -> bool {
        self.report.is_valid()
    }

    /// `{"c_H": bool, "c_P": bool, "c_W": bool, "c_D": bool}`
    #[getter]
    fn satisfied(&self) -> BTreeMap<String, bool> {
        self.report
            .satisfied
            .iter()
            .map(|(c, &ok)| (c.name().to_string(), ok))
            .collect()
    }

    #[getter]
    fn violations(&self) -> Vec<String> {
        self.report.violations.iter().map(|v| v.to_string()).collect()
    }

    fn __str__(&self) -> String {
        self.report.to_string()
    }
}

#[pyclass(name = "SolveResult", module = "enass", frozen)]
pub struct PySolveResult {
    #[pyo3(get)]
    schedule: Option<PySchedule>,
    /// One of `solution`, `exhausted`, `time_limit`, `backtrack_limit`.
    #[pyo3(get)]
    outcome: &'static str,
    #[pyo3(get)]
    backtracks: u64,
    #[pyo3(get)]
    assignments: u64,
    #[pyo3(get)]
    elapsed: f64,
}

#[pymethods]
impl PySolveResult {
    fn __repr__(&self) -> String {
        format!(
            "SolveResult(outcome={:?}, backtracks={}, elapsed={:.3})",
            self.outcome, self.backtracks, self.elapsed
        )
    }
}

/// The circle-method starting schedule for `teams` teams.
#[pyfunction]
fn initial_schedule(teams: u32) -> PyResult<PySchedule> {
    Ok(PySchedule {
        grid: build_initial_schedule(team_count(teams)?).into_grid(),
    })
}

#[pyfunction]
fn verify(schedule: &PySchedule) -> PyResult<PyReport> {
    Ok(PyReport {
        report: verify_solution(&schedule.grid).map_err(to_py)?,
    })
}

/// Runs the search; the GIL is released while it works.
#[pyfunction]
#[pyo3(signature = (teams, variant = "enass4", time_limit = None, backtrack_limit = None))]
fn solve(
    py: Python<'_>,
    teams: u32,
    variant: &str,
    time_limit: Option<f64>,
    backtrack_limit: Option<u64>,
) -> PyResult<PySolveResult> {
    let teams = team_count(teams)?;
    let variant: Variant = variant.parse().map_err(PyValueError::new_err)?;
    let max_time = match time_limit {
        Some(s) if s.is_finite() && s > 0.0 => Some(Duration::from_secs_f64(s)),
        Some(s) => return Err(PyValueError::new_err(format!("invalid time limit {s}"))),
        None => None,
    };
    let solver = Solver::new(teams, variant.rules(teams).map_err(to_py)?).map_err(to_py)?;
    let limits = SearchLimits {
        max_time,
        max_backtracks: backtrack_limit,
    };
    let result = py.detach(|| solver.solve(limits));
    Ok(PySolveResult {
        schedule: result.schedule.map(|grid| PySchedule { grid }),
        outcome: result.stats.outcome.name(),
        backtracks: result.stats.backtracks,
        assignments: result.stats.assignments,
        elapsed: result.stats.elapsed.as_secs_f64(),
    })
}

/// Number of valid schedules, by brute force (T <= 8).
#[pyfunction]
#[pyo3(signature = (teams, fix_week1 = false, budget = None))]
fn oracle_count(py: Python<'_>, teams: u32, fix_week1: bool, budget: Option<u64>) -> PyResult<u64> {
    let teams = team_count(teams)?;
    let r = py
        .detach(|| exhaustive_count(teams, fix_week1, budget))
        .map_err(to_py)?;
    Ok(r.solution_count)
}

#[pymodule]
fn enass(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PySchedule>()?;
    m.add_class::<PyReport>()?;
    m.add_class::<PySolveResult>()?;
    m.add_function(wrap_pyfunction!(initial_schedule, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add_function(wrap_pyfunction!(solve, m)?)?;
    m.add_function(wrap_pyfunction!(oracle_count, m)?)?;
    Ok(())
}
