//! Brute-force enumeration of every valid schedule whose week columns are
//! permutations of the circle-method columns. Only meant for `T <= 8`.
//!
//! This module deliberately shares nothing with the solver beyond the
//! initial schedule and the validator: it walks weeks column by column,
//! assigns each week's matches to periods in every order, and checks only
//! the period cap on the fly.

use serde::Serialize;

use crate::check::verify_solution;
use crate::error::{Error, Result};
use crate::schedule::{build_initial_schedule, Match, ScheduleGrid, TeamCount};

/// Solutions are only retained up to this team count.
const RETAIN_UP_TO: u32 = 6;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OracleResult {
    pub solution_count: u64,
    /// Every solution found, in enumeration order (only for `T <= 6`).
    #[serde(skip)]
    pub solutions: Option<Vec<ScheduleGrid>>,
    /// Placement attempts.
    pub nodes: u64,
}

struct Enumeration {
    periods: usize,
    weeks: usize,
    teams: usize,
    columns: Vec<Vec<Match>>,
    /// `grid[w][p]`.
    grid: Vec<Vec<Option<Match>>>,
    taken: Vec<Vec<bool>>,
    load: Vec<Vec<u8>>,
    fix_week1: bool,
    budget: Option<u64>,
    nodes: u64,
    count: u64,
    solutions: Option<Vec<ScheduleGrid>>,
    team_count: TeamCount,
}

impl Enumeration {
    fn fits(&self, p: usize, m: Match) -> bool {
        self.load[p][m.home() as usize] < 2 && self.load[p][m.away() as usize] < 2
    }

    fn walk(&mut self, w: usize, p: usize) -> Result<()> {
        if w == self.weeks {
            self.count += 1;
            if self.solutions.is_some() {
                let g = self.snapshot();
                self.solutions.as_mut().unwrap().push(g);
            }
            return Ok(());
        }
        if p == self.periods {
            return self.walk(w + 1, 0);
        }
        for i in 0..self.periods {
            if self.taken[w][i] || (self.fix_week1 && w == 0 && i != p) {
                continue;
            }
            self.nodes += 1;
            if self.budget.is_some_and(|b| self.nodes > b) {
                return Err(Error::BudgetExceeded {
                    nodes: self.nodes,
                    found: self.count,
                });
            }
            let m = self.columns[w][i];
            if !self.fits(p, m) {
                continue;
            }
            self.taken[w][i] = true;
            self.grid[w][p] = Some(m);
            self.load[p][m.home() as usize] += 1;
            self.load[p][m.away() as usize] += 1;
            let res = self.walk(w, p + 1);
            self.load[p][m.home() as usize] -= 1;
            self.load[p][m.away() as usize] -= 1;
            self.grid[w][p] = None;
            self.taken[w][i] = false;
            res?;
        }
        Ok(())
    }

    fn snapshot(&self) -> ScheduleGrid {
        let rows = (0..self.periods)
            .map(|p| (0..self.weeks).map(|w| self.grid[w][p]).collect())
            .collect();
        ScheduleGrid::from_rows(self.team_count, rows).expect("oracle grid has the right shape")
    }
}

/// Counts complete grids meeting the half-competition, week and period
/// constraints whose week `w` column is a permutation of the circle-method
/// week `w` column. With `fix_week1`, week 1 must equal the circle-method
/// week 1 cell for cell.
///
/// `T = 4` and `T = 6` run unbounded; `T = 8` requires `budget`, and
/// running out of it is reported as [`Error::BudgetExceeded`].
pub fn exhaustive_count(teams: TeamCount, fix_week1: bool, budget: Option<u64>) -> Result<OracleResult> {
    let t = teams.get();
    if t > 8 || (t == 8 && budget.is_none()) {
        return Err(Error::OracleTooLarge(t));
    }
    let initial = build_initial_schedule(teams);
    let (periods, weeks) = (teams.periods(), teams.weeks());
    let mut e = Enumeration {
        periods,
        weeks,
        teams: t as usize,
        columns: (1..=weeks)
            .map(|w| initial.column(w).map(|c| c.expect("complete")).collect())
            .collect(),
        grid: vec![vec![None; periods]; weeks],
        taken: vec![vec![false; periods]; weeks],
        load: vec![vec![0; t as usize + 1]; periods],
        fix_week1,
        budget,
        nodes: 0,
        count: 0,
        solutions: (t <= RETAIN_UP_TO).then(Vec::new),
        team_count: teams,
    };
    debug_assert_eq!(e.teams, t as usize);
    e.walk(0, 0)?;
    if let Some(sols) = &e.solutions {
        for g in sols {
            let report = verify_solution(g)?;
            assert!(report.is_valid(), "oracle emitted an invalid grid:\n{report}");
        }
    }
    Ok(OracleResult {
        solution_count: e.count,
        solutions: e.solutions,
        nodes: e.nodes,
    })
}
