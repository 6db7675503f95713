//! Core domain types: team counts, matches, schedule grids and the
//! patterned one-factorization used as the initial conflicting schedule.

use std::fmt;
use std::ops::Deref;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A team identifier, 1-based.
pub type Team = u32;

/// Number of teams in the league. Always even and at least 4.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "u32", into = "u32")]
pub struct TeamCount(u32);

impl TeamCount {
    pub fn new(teams: u32) -> Result<Self> {
        if teams < 4 || teams % 2 != 0 {
            return Err(Error::InvalidTeamCount(teams));
        }
        Ok(TeamCount(teams))
    }

    #[inline]
    pub fn get(self) -> u32 {
        self.0
    }

    /// Number of weeks in the season, `T - 1`.
    #[inline]
    pub fn weeks(self) -> usize {
        self.0 as usize - 1
    }

    /// Number of periods per week, `T / 2`.
    #[inline]
    pub fn periods(self) -> usize {
        self.0 as usize / 2
    }

    /// Number of matches in a single round robin, `T (T - 1) / 2`.
    #[inline]
    pub fn matches(self) -> usize {
        let t = self.0 as usize;
        t * (t - 1) / 2
    }

    /// Recovers the team count from grid dimensions, if they are coherent.
    pub fn from_dims(periods: usize, weeks: usize) -> Option<Self> {
        if weeks % 2 == 1 && periods == (weeks + 1) / 2 {
            TeamCount::new(weeks as u32 + 1).ok()
        } else {
            None
        }
    }
}

impl TryFrom<u32> for TeamCount {
    type Error = Error;

    fn try_from(value: u32) -> Result<Self> {
        TeamCount::new(value)
    }
}

impl From<TeamCount> for u32 {
    fn from(value: TeamCount) -> u32 {
        value.0
    }
}

impl fmt::Display for TeamCount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// An unordered pairing of two distinct teams, stored with `home < away`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Match {
    home: Team,
    away: Team,
}

impl Match {
    /// Builds a match, normalizing the order of the two teams.
    ///
    /// Panics if both teams are the same; use [`Match::try_new`] for
    /// untrusted input.
    pub fn new(a: Team, b: Team) -> Self {
        Self::try_new(a, b).expect("a team cannot play itself")
    }

    pub fn try_new(a: Team, b: Team) -> Result<Self> {
        if a == b {
            return Err(Error::SelfMatch(a));
        }
        Ok(Match {
            home: a.min(b),
            away: a.max(b),
        })
    }

    #[inline]
    pub fn home(self) -> Team {
        self.home
    }

    #[inline]
    pub fn away(self) -> Team {
        self.away
    }

    #[inline]
    pub fn teams(self) -> [Team; 2] {
        [self.home, self.away]
    }

    #[inline]
    pub fn involves(self, team: Team) -> bool {
        self.home == team || self.away == team
    }
}

impl fmt::Display for Match {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{}", self.home, self.away)
    }
}

impl Serialize for Match {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        [self.home, self.away].serialize(s)
    }
}

impl<'de> Deserialize<'de> for Match {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let [a, b] = <[Team; 2]>::deserialize(d)?;
        Match::try_new(a, b).map_err(serde::de::Error::custom)
    }
}

/// A `P x W` table of optional matches. Periods and weeks are 1-based in
/// the public API.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ScheduleGrid {
    teams: TeamCount,
    cells: Vec<Option<Match>>,
}

impl ScheduleGrid {
    /// An empty grid sized for `teams`.
    pub fn empty(teams: TeamCount) -> Self {
        ScheduleGrid {
            teams,
            cells: vec![None; teams.periods() * teams.weeks()],
        }
    }

    /// Builds a grid from period rows. Every row must hold `W` cells and
    /// there must be `P` rows.
    pub fn from_rows(teams: TeamCount, rows: Vec<Vec<Option<Match>>>) -> Result<Self> {
        let (periods, weeks) = (teams.periods(), teams.weeks());
        if rows.len() != periods || rows.iter().any(|r| r.len() != weeks) {
            return Err(Error::DimensionMismatch {
                expected: (periods, weeks),
                found: (rows.len(), rows.iter().map(Vec::len).max().unwrap_or(0)),
            });
        }
        let mut grid = ScheduleGrid::empty(teams);
        for (p, row) in rows.into_iter().enumerate() {
            for (w, cell) in row.into_iter().enumerate() {
                if let Some(m) = cell {
                    grid.check_teams(m)?;
                }
                grid.cells[p * weeks + w] = cell;
            }
        }
        Ok(grid)
    }

    /// Convenience constructor from complete rows of `(t, t')` pairs.
    pub fn from_pairs(teams: TeamCount, rows: &[&[(Team, Team)]]) -> Result<Self> {
        let rows = rows
            .iter()
            .map(|r| {
                r.iter()
                    .map(|&(a, b)| Match::try_new(a, b).map(Some))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        ScheduleGrid::from_rows(teams, rows)
    }

    fn check_teams(&self, m: Match) -> Result<()> {
        let t = self.teams.get();
        for team in m.teams() {
            if team == 0 || team > t {
                return Err(Error::TeamOutOfRange { team, teams: t });
            }
        }
        Ok(())
    }

    #[inline]
    pub fn teams(&self) -> TeamCount {
        self.teams
    }

    #[inline]
    pub fn periods(&self) -> usize {
        self.teams.periods()
    }

    #[inline]
    pub fn weeks(&self) -> usize {
        self.teams.weeks()
    }

    #[inline]
    fn index(&self, period: usize, week: usize) -> usize {
        assert!(
            (1..=self.periods()).contains(&period) && (1..=self.weeks()).contains(&week),
            "cell <{period},{week}> outside a {}x{} grid",
            self.periods(),
            self.weeks()
        );
        (period - 1) * self.weeks() + (week - 1)
    }

    /// The match at `<period, week>`.
    #[inline]
    pub fn get(&self, period: usize, week: usize) -> Option<Match> {
        self.cells[self.index(period, week)]
    }

    /// Sets `<period, week>`, returning the previous content.
    pub fn set(&mut self, period: usize, week: usize, m: Option<Match>) -> Result<Option<Match>> {
        if let Some(m) = m {
            self.check_teams(m)?;
        }
        let i = self.index(period, week);
        Ok(std::mem::replace(&mut self.cells[i], m))
    }

    pub fn row(&self, period: usize) -> &[Option<Match>] {
        let start = self.index(period, 1);
        &self.cells[start..start + self.weeks()]
    }

    pub fn column(&self, week: usize) -> impl Iterator<Item = Option<Match>> + '_ {
        (1..=self.periods()).map(move |p| self.get(p, week))
    }

    pub fn rows(&self) -> impl Iterator<Item = &[Option<Match>]> {
        self.cells.chunks(self.weeks())
    }

    /// Filled cells as `(period, week, match)`.
    pub fn filled(&self) -> impl Iterator<Item = (usize, usize, Match)> + '_ {
        let weeks = self.weeks();
        self.cells
            .iter()
            .enumerate()
            .filter_map(move |(i, c)| c.map(|m| (i / weeks + 1, i % weeks + 1, m)))
    }

    /// Coordinates of empty cells, row-major.
    pub fn empty_cells(&self) -> Vec<(usize, usize)> {
        let weeks = self.weeks();
        self.cells
            .iter()
            .enumerate()
            .filter(|(_, c)| c.is_none())
            .map(|(i, _)| (i / weeks + 1, i % weeks + 1))
            .collect()
    }

    pub fn is_complete(&self) -> bool {
        self.cells.iter().all(Option::is_some)
    }
}

/// The complete conflicting assignment every search starts from. Built by
/// the circle method, it satisfies the half-competition and week
/// constraints but overloads the last period with team `T`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InitialSchedule {
    grid: ScheduleGrid,
}

impl InitialSchedule {
    #[inline]
    pub fn grid(&self) -> &ScheduleGrid {
        &self.grid
    }

    pub fn into_grid(self) -> ScheduleGrid {
        self.grid
    }

    /// The match scheduled at `<source_period, week>`.
    #[inline]
    pub fn at(&self, source_period: usize, week: usize) -> Match {
        self.grid
            .get(source_period, week)
            .expect("initial schedule is complete")
    }

    /// Source period of `m` within `week`, if the match belongs to that week.
    pub fn source_period(&self, week: usize, m: Match) -> Option<usize> {
        (1..=self.grid.periods()).find(|&p| self.at(p, week) == m)
    }
}

impl Deref for InitialSchedule {
    type Target = ScheduleGrid;

    fn deref(&self) -> &ScheduleGrid {
        &self.grid
    }
}

/// Builds the patterned one-factorization for `teams`.
///
/// With `wrap(x) = ((x - 1) mod W) + 1`, period `p < P` of week `w` pairs
/// `wrap(w - p + 1)` with `wrap(w + p)`, and period `P` pairs team `T` with
/// `wrap(w + P)`.
pub fn build_initial_schedule(teams: TeamCount) -> InitialSchedule {
    let weeks = teams.weeks() as i64;
    let periods = teams.periods() as i64;
    let wrap = |x: i64| (x - 1).rem_euclid(weeks) as Team + 1;
    let mut grid = ScheduleGrid::empty(teams);
    for w in 1..=weeks {
        for p in 1..periods {
            let m = Match::new(wrap(w - p + 1), wrap(w + p));
            grid.set(p as usize, w as usize, Some(m)).expect("ids in range");
        }
        let m = Match::new(teams.get(), wrap(w + periods));
        grid.set(periods as usize, w as usize, Some(m)).expect("ids in range");
    }
    InitialSchedule { grid }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tc(t: u32) -> TeamCount {
        TeamCount::new(t).unwrap()
    }

    #[test]
    fn team_count_rejects_odd_and_small() {
        for bad in [0, 1, 2, 3, 5, 7, 13] {
            assert!(matches!(TeamCount::new(bad), Err(Error::InvalidTeamCount(_))));
        }
        let t = tc(8);
        assert_eq!((t.weeks(), t.periods(), t.matches()), (7, 4, 28));
    }

    #[test]
    fn match_is_normalized() {
        let m = Match::new(7, 3);
        assert_eq!((m.home(), m.away()), (3, 7));
        assert_eq!(m, Match::new(3, 7));
        assert!(Match::try_new(4, 4).is_err());
    }

    #[test]
    fn four_teams() {
        let s = build_initial_schedule(tc(4));
        assert_eq!((s.periods(), s.weeks()), (2, 3));
        let mut last: Vec<Match> = s.row(2).iter().map(|c| c.unwrap()).collect();
        last.sort();
        assert_eq!(last, vec![Match::new(1, 4), Match::new(2, 4), Match::new(3, 4)]);
    }

    #[test]
    fn circle_spot_checks() {
        let s = build_initial_schedule(tc(8));
        assert_eq!(s.at(1, 1), Match::new(1, 2));
        assert_eq!(s.at(4, 3), Match::new(7, 8));
        assert_eq!(s.at(2, 6), Match::new(1, 5));
        assert_eq!(s.at(3, 5), Match::new(1, 3));
        assert_eq!(s.source_period(5, Match::new(2, 8)), Some(4));
        assert_eq!(s.source_period(5, Match::new(1, 2)), None);
    }

    #[test]
    fn set_rejects_out_of_range_team() {
        let mut g = ScheduleGrid::empty(tc(8));
        assert!(matches!(
            g.set(1, 1, Some(Match::new(1, 9))),
            Err(Error::TeamOutOfRange { team: 9, .. })
        ));
    }

    #[test]
    fn from_dims_requires_coherent_shape() {
        assert_eq!(TeamCount::from_dims(4, 7), Some(tc(8)));
        assert_eq!(TeamCount::from_dims(3, 7), None);
        assert_eq!(TeamCount::from_dims(4, 8), None);
        assert_eq!(TeamCount::from_dims(1, 1), None);
    }
}
