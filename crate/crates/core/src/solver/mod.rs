//! The enumerative backtracking search.
//!
//! Periods are filled top-down and, inside a period, weeks left to right.
//! The value tried for cell `<p, w>` is always a match of the initial
//! schedule's week `w` column, so every complete assignment automatically
//! meets the week and half-competition constraints; only the period cap and
//! the distribution property are checked while searching.

mod kernel;
mod rules;

use std::fmt;
use std::ops::ControlFlow;
use std::time::Duration;

use serde::{Deserialize, Serialize};

use crate::check;
use crate::error::{Error, Result};
use crate::schedule::{InitialSchedule, Match, ScheduleGrid, TeamCount};

pub use kernel::Solver;
pub use rules::{RuleSet, Variant};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SearchLimits {
    pub max_time: Option<Duration>,
    pub max_backtracks: Option<u64>,
}

impl SearchLimits {
    pub fn none() -> Self {
        Self::default()
    }

    pub fn time(max: Duration) -> Self {
        SearchLimits {
            max_time: Some(max),
            ..Self::default()
        }
    }

    pub fn backtracks(max: u64) -> Self {
        SearchLimits {
            max_backtracks: Some(max),
            ..Self::default()
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    Solution,
    /// Every candidate at the root was consumed: no schedule exists in the
    /// space the rule set allows.
    Exhausted,
    TimeLimit,
    BacktrackLimit,
}

impl Outcome {
    pub fn name(self) -> &'static str {
        match self {
            Outcome::Solution => "solution",
            Outcome::Exhausted => "exhausted",
            Outcome::TimeLimit => "time_limit",
            Outcome::BacktrackLimit => "backtrack_limit",
        }
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SearchStats {
    /// Locally accepted assignments undone because no completion below them
    /// succeeded. A mirrored pair counts once; rejected assignments do not
    /// count.
    pub backtracks: u64,
    /// Assignments attempted, including locally rejected ones.
    pub assignments: u64,
    #[serde(serialize_with = "as_seconds")]
    pub elapsed: Duration,
    pub outcome: Outcome,
}

fn as_seconds<S: serde::Serializer>(d: &Duration, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_f64(d.as_secs_f64())
}

impl fmt::Display for SearchStats {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "outcome={} backtracks={} assignments={} time={:.3}s",
            self.outcome,
            self.backtracks,
            self.assignments,
            self.elapsed.as_secs_f64()
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolveResult {
    pub schedule: Option<ScheduleGrid>,
    pub stats: SearchStats,
}

/// A cell written during the search: `(period, week, match)`, 1-based.
pub type PlacedCell = (usize, usize, Match);

/// Receives every assignment the search makes. Used by tests to replay the
/// search trace; the default methods do nothing.
pub trait SearchObserver {
    fn enabled(&self) -> bool {
        false
    }

    /// `cells` were written; `consistent` is the local verdict.
    fn assigned(&mut self, _cells: &[PlacedCell], _consistent: bool) {}

    fn undone(&mut self, _cells: &[PlacedCell]) {}
}

impl SearchObserver for () {}

/// Convenience wrapper: builds a [`Solver`] and searches for one schedule.
pub fn solve(teams: TeamCount, rules: RuleSet, limits: SearchLimits) -> Result<SolveResult> {
    Ok(Solver::new(teams, rules)?.solve(limits))
}

/// Match `<source_period, week>` of the initial schedule.
pub fn candidate(initial: &InitialSchedule, source_period: usize, week: usize) -> Result<Match> {
    let (periods, weeks) = (initial.periods(), initial.weeks());
    if !(1..=periods).contains(&source_period) || !(1..=weeks).contains(&week) {
        return Err(Error::IndexOutOfRange {
            period: source_period,
            week,
            periods,
            weeks,
        });
    }
    Ok(initial.at(source_period, week))
}

/// The grid the search starts from: week 1 copied from the initial
/// schedule, week `W` as its mirror when the mirror rule is on, and weeks 2
/// and `W - 1` reversed when the inversion rule is on.
pub fn seed_partial(initial: &InitialSchedule, rules: &RuleSet) -> ScheduleGrid {
    let teams = initial.teams();
    let (periods, weeks) = (teams.periods(), teams.weeks());
    let mut grid = ScheduleGrid::empty(teams);
    let mut copy = |week: usize, reversed: bool| {
        for p in 1..=periods {
            let src = if reversed { periods - p + 1 } else { p };
            grid.set(p, week, Some(initial.at(src, week)))
                .expect("initial schedule ids are in range");
        }
    };
    copy(1, false);
    if rules.use_mirror {
        copy(weeks, false);
    }
    if rules.use_inversion {
        copy(2, true);
        copy(weeks - 1, true);
    }
    grid
}

/// Places `initial<source_period, week>` at `<period, week>` together with
/// `initial<source_period, W - week + 1>` at `<period, W - week + 1>`. Both
/// cells are written or neither is.
pub fn mirror_force(
    grid: &mut ScheduleGrid,
    initial: &InitialSchedule,
    period: usize,
    week: usize,
    source_period: usize,
) -> Result<[PlacedCell; 2]> {
    let (periods, weeks) = (grid.periods(), grid.weeks());
    if !(1..periods).contains(&week) {
        return Err(Error::NotMirrored {
            week,
            last: periods - 1,
        });
    }
    if !(1..=periods).contains(&period) {
        return Err(Error::IndexOutOfRange {
            period,
            week,
            periods,
            weeks,
        });
    }
    let partner = weeks - week + 1;
    let first = (period, week, candidate(initial, source_period, week)?);
    let second = (period, partner, candidate(initial, source_period, partner)?);
    for (p, w, m) in [first, second] {
        if grid.get(p, w).is_some_and(|old| old != m) {
            return Err(Error::Conflict { period: p, week: w });
        }
    }
    for (p, w, m) in [first, second] {
        grid.set(p, w, Some(m))?;
    }
    Ok([first, second])
}

/// Local verification of the rule set on the periods touched by the last
/// step: the period cap over filled cells and, when enabled, the
/// distribution property (see [`check::check_cd`]) on touched periods that
/// no longer have an empty cell.
pub fn local_consistent(grid: &ScheduleGrid, rules: &RuleSet, touched: &[(usize, usize)]) -> bool {
    let t = grid.teams().get() as usize;
    let mut rows: Vec<usize> = touched.iter().map(|&(p, _)| p).collect();
    rows.sort_unstable();
    rows.dedup();
    rows.into_iter().all(|p| {
        let mut counts = vec![0u32; t + 1];
        for m in grid.row(p).iter().flatten() {
            counts[m.home() as usize] += 1;
            counts[m.away() as usize] += 1;
        }
        let capped = !rules.use_cp || counts.iter().all(|&n| n <= 2);
        capped
            && (!rules.use_cd
                || (check::unrepairable_absences(grid, p).is_empty()
                    && check::repeated_single_appearances(grid, p).is_empty()))
    })
}

/// Enumerates every schedule `variant` can reach, invoking `visit` on each.
/// Returns the stats of the run; the outcome is `Exhausted` when the space
/// was fully explored.
pub fn enumerate(
    teams: TeamCount,
    rules: RuleSet,
    limits: SearchLimits,
    visit: impl FnMut(&ScheduleGrid) -> ControlFlow<()>,
) -> Result<SearchStats> {
    Ok(Solver::new(teams, rules)?.enumerate(limits, visit))
}
