//! Exact enumerative search for balanced tournament designs (CSPLib
//! prob026): `T` teams, `T - 1` weeks, `T / 2` periods, every pair meeting
//! once, every team once a week and at most twice per period.
//!
//! The search starts from the circle-method schedule and permutes, period
//! by period, the matches of each week column. Three rule sets are
//! provided, see [`Variant`].

pub mod bench;
pub mod check;
pub mod error;
pub mod format;
pub mod oracle;
pub mod reference;
pub mod schedule;
pub mod solver;

pub use check::{
    check_cd, check_ch, check_cp, check_cw, verify_solution, Constraint, ValidationReport, Violation,
};
pub use error::{Error, Result};
pub use format::{parse_table, render_table};
pub use schedule::{build_initial_schedule, InitialSchedule, Match, ScheduleGrid, Team, TeamCount};
pub use solver::{
    solve, Outcome, RuleSet, SearchLimits, SearchStats, SolveResult, Solver, Variant,
};
