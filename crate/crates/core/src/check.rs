//! Constraint checkers and the aggregated validation report.
//!
//! `c_W`, `c_P` and `c_D` work on partial grids and only look at filled
//! cells. `c_H` is only meaningful on a complete grid.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::schedule::{Match, ScheduleGrid, Team};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Constraint {
    /// Every pair of teams meets exactly once.
    #[serde(rename = "c_H")]
    HalfCompetition,
    /// No team plays more than twice in a period.
    #[serde(rename = "c_P")]
    Period,
    /// Every team plays exactly once per week.
    #[serde(rename = "c_W")]
    Week,
    /// Every team plays at least once in every period.
    #[serde(rename = "c_D")]
    Distribution,
}

impl Constraint {
    pub const ALL: [Constraint; 4] = [
        Constraint::HalfCompetition,
        Constraint::Period,
        Constraint::Week,
        Constraint::Distribution,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Constraint::HalfCompetition => "c_H",
            Constraint::Period => "c_P",
            Constraint::Week => "c_W",
            Constraint::Distribution => "c_D",
        }
    }
}

impl fmt::Display for Constraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Location {
    Period(usize),
    Week(usize),
    Pair(Match),
}

impl fmt::Display for Location {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Location::Period(p) => write!(f, "period {p}"),
            Location::Week(w) => write!(f, "week {w}"),
            Location::Pair(m) => write!(f, "match ({m})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub constraint: Constraint,
    pub location: Location,
    pub detail: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: violated ({}, {})", self.constraint, self.location, self.detail)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub satisfied: BTreeMap<Constraint, bool>,
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    fn from_violations(violations: Vec<Violation>) -> Self {
        let satisfied = Constraint::ALL
            .iter()
            .map(|&c| (c, !violations.iter().any(|v| v.constraint == c)))
            .collect();
        ValidationReport {
            satisfied,
            violations,
        }
    }

    pub fn satisfies(&self, c: Constraint) -> bool {
        self.satisfied[&c]
    }

    /// A schedule is valid iff it meets `c_H`, `c_P` and `c_W`.
    pub fn is_valid(&self) -> bool {
        [
            Constraint::HalfCompetition,
            Constraint::Period,
            Constraint::Week,
        ]
        .iter()
        .all(|&c| self.satisfies(c))
    }

    pub fn violations_of(&self, c: Constraint) -> impl Iterator<Item = &Violation> {
        self.violations.iter().filter(move |v| v.constraint == c)
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in Constraint::ALL {
            if self.satisfies(c) {
                writeln!(f, "{c}: ok")?;
            } else {
                for v in self.violations_of(c) {
                    writeln!(f, "{v}")?;
                }
            }
        }
        write!(f, "{}", if self.is_valid() { "valid" } else { "invalid" })
    }
}

/// Occurrence counts of each team (index = team id) over an iterator of cells.
fn occurrences(teams: u32, cells: impl Iterator<Item = Option<Match>>) -> Vec<u32> {
    let mut counts = vec![0u32; teams as usize + 1];
    for m in cells.flatten() {
        counts[m.home() as usize] += 1;
        counts[m.away() as usize] += 1;
    }
    counts
}

/// `c_H`: the cells hold every unordered pair exactly once. Incomplete
/// grids are rejected with [`Error::Incomplete`] instead of a verdict.
pub fn check_ch(g: &ScheduleGrid) -> Result<Vec<Violation>> {
    let empty = g.empty_cells();
    if !empty.is_empty() {
        return Err(Error::Incomplete { cells: empty });
    }
    let t = g.teams().get();
    let mut seen: BTreeMap<Match, u32> = BTreeMap::new();
    for (_, _, m) in g.filled() {
        *seen.entry(m).or_default() += 1;
    }
    let mut out = Vec::new();
    for a in 1..=t {
        for b in a + 1..=t {
            let m = Match::new(a, b);
            match seen.get(&m).copied().unwrap_or(0) {
                1 => {}
                0 => out.push(Violation {
                    constraint: Constraint::HalfCompetition,
                    location: Location::Pair(m),
                    detail: "never scheduled".into(),
                }),
                n => out.push(Violation {
                    constraint: Constraint::HalfCompetition,
                    location: Location::Pair(m),
                    detail: format!("scheduled {n} times"),
                }),
            }
        }
    }
    Ok(out)
}

/// `c_W`: within each week no team appears twice among filled cells.
pub fn check_cw(g: &ScheduleGrid) -> Vec<Violation> {
    let t = g.teams().get();
    let mut out = Vec::new();
    for w in 1..=g.weeks() {
        let counts = occurrences(t, g.column(w));
        for (team, &n) in counts.iter().enumerate().skip(1) {
            if n > 1 {
                out.push(Violation {
                    constraint: Constraint::Week,
                    location: Location::Week(w),
                    detail: format!("team {team} ×{n}"),
                });
            }
        }
    }
    out
}

/// `c_P`: within each period no team appears more than twice among filled
/// cells.
pub fn check_cp(g: &ScheduleGrid) -> Vec<Violation> {
    let t = g.teams().get();
    let mut out = Vec::new();
    for p in 1..=g.periods() {
        let counts = occurrences(t, g.row(p).iter().copied());
        for (team, &n) in counts.iter().enumerate().skip(1) {
            if n > 2 {
                out.push(Violation {
                    constraint: Constraint::Period,
                    location: Location::Period(p),
                    detail: format!("team {team} ×{n}"),
                });
            }
        }
    }
    out
}

/// Teams absent from a period row that has no empty cell left. Rows with
/// empty cells can still be repaired and yield nothing.
pub fn unrepairable_absences(g: &ScheduleGrid, period: usize) -> Vec<Team> {
    let row = g.row(period);
    if row.iter().any(Option::is_none) {
        return Vec::new();
    }
    let counts = occurrences(g.teams().get(), row.iter().copied());
    (1..counts.len())
        .filter(|&team| counts[team] == 0)
        .map(|team| team as Team)
        .collect()
}

/// Teams playing exactly once in completed `period` that already played
/// exactly once in an earlier completed period, paired with that period.
pub fn repeated_single_appearances(g: &ScheduleGrid, period: usize) -> Vec<(Team, usize)> {
    let once = |p: usize| -> Vec<Team> {
        let row = g.row(p);
        if row.iter().any(Option::is_none) {
            return Vec::new();
        }
        let counts = occurrences(g.teams().get(), row.iter().copied());
        (1..counts.len())
            .filter(|&t| counts[t] == 1)
            .map(|t| t as Team)
            .collect()
    };
    let here = once(period);
    let mut out = Vec::new();
    for team in here {
        if let Some(q) = (1..period).find(|&q| once(q).contains(&team)) {
            out.push((team, q));
        }
    }
    out
}

/// `c_D`, judged on completed periods only: every team plays in every
/// period, and no team plays exactly once in two different periods.
///
/// Both parts hold in every valid schedule: a team plays `T - 1 = 2P - 1`
/// games over `P` periods with at most two per period, so it plays twice
/// in all periods but one.
pub fn check_cd(g: &ScheduleGrid) -> Vec<Violation> {
    let mut out = Vec::new();
    for p in 1..=g.periods() {
        for team in unrepairable_absences(g, p) {
            out.push(Violation {
                constraint: Constraint::Distribution,
                location: Location::Period(p),
                detail: format!("team {team} absent"),
            });
        }
        for (team, q) in repeated_single_appearances(g, p) {
            out.push(Violation {
                constraint: Constraint::Distribution,
                location: Location::Period(p),
                detail: format!("team {team} plays once here and once in period {q}"),
            });
        }
    }
    out
}

/// Runs every checker on a complete grid. `c_D` is reported for
/// diagnostics but does not affect [`ValidationReport::is_valid`].
pub fn verify_solution(g: &ScheduleGrid) -> Result<ValidationReport> {
    let mut violations = check_ch(g)?;
    violations.extend(check_cp(g));
    violations.extend(check_cw(g));
    violations.extend(check_cd(g));
    Ok(ValidationReport::from_violations(violations))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::schedule::{build_initial_schedule, TeamCount};
    use crate::reference::{circle_eight as table2, valid_eight as table1};

    #[test]
    fn known_solution_passes_everything() {
        let g = table1();
        assert!(check_ch(&g).unwrap().is_empty());
        assert!(check_cw(&g).is_empty());
        assert!(check_cp(&g).is_empty());
        assert!(check_cd(&g).is_empty());
        let report = verify_solution(&g).unwrap();
        assert!(report.is_valid());
        assert!(report.violations.is_empty());
    }

    #[test]
    fn duplicate_pair_breaks_ch() {
        let mut g = table1();
        g.set(1, 1, Some(Match::new(1, 7))).unwrap();
        let v = check_ch(&g).unwrap();
        assert_eq!(v.len(), 2);
        assert!(v.iter().any(|v| v.location == Location::Pair(Match::new(1, 7))
            && v.detail == "scheduled 2 times"));
        assert!(v.iter().any(|v| v.location == Location::Pair(Match::new(1, 2))
            && v.detail == "never scheduled"));
    }

    #[test]
    fn ch_on_incomplete_grid_is_not_a_verdict() {
        let mut g = table1();
        g.set(2, 3, None).unwrap();
        assert_eq!(check_ch(&g), Err(Error::Incomplete { cells: vec![(2, 3)] }));
        assert!(verify_solution(&g).is_err());
    }

    #[test]
    fn week_repeat_is_caught() {
        let t = TeamCount::new(8).unwrap();
        let mut g = ScheduleGrid::empty(t);
        g.set(1, 1, Some(Match::new(1, 2))).unwrap();
        g.set(2, 1, Some(Match::new(2, 3))).unwrap();
        let v = check_cw(&g);
        assert_eq!(v.len(), 1);
        assert_eq!(v[0].location, Location::Week(1));
        assert_eq!(v[0].detail, "team 2 ×2");
    }

    #[test]
    fn empty_grid_is_vacuously_fine() {
        let g = ScheduleGrid::empty(TeamCount::new(8).unwrap());
        assert!(check_cw(&g).is_empty());
        assert!(check_cp(&g).is_empty());
        assert!(check_cd(&g).is_empty());
    }

    #[test]
    fn circle_schedule_overloads_last_period() {
        let v = check_cp(&table2());
        assert_eq!(v.len(), 1);
        assert_eq!(v[0].to_string(), "c_P: violated (period 4, team 8 ×7)");
    }

    #[test]
    fn circle_schedule_distribution() {
        // Period 4 holds every team; periods 1-3 never see team 8.
        let v = check_cd(&table2());
        assert!(v.iter().all(|v| v.location != Location::Period(4)));
        let absent: Vec<_> = v.iter().map(|v| (v.location.clone(), v.detail.as_str())).collect();
        assert_eq!(
            absent,
            vec![
                (Location::Period(1), "team 8 absent"),
                (Location::Period(2), "team 8 absent"),
                (Location::Period(3), "team 8 absent"),
            ]
        );
    }

    #[test]
    fn forced_absence_in_completed_row() {
        // Row 1 of a T=8 grid filled with matches among teams 1..6 only.
        let t = TeamCount::new(8).unwrap();
        let mut g = ScheduleGrid::empty(t);
        let row = [(1, 2), (3, 4), (5, 6), (1, 3), (2, 4), (1, 5), (2, 6)];
        for (w, &(a, b)) in row.iter().enumerate() {
            g.set(1, w + 1, Some(Match::new(a, b))).unwrap();
        }
        let v = check_cd(&g);
        let details: Vec<_> = v.iter().map(|v| v.detail.as_str()).collect();
        assert_eq!(details, vec!["team 7 absent", "team 8 absent"]);
        // Same row with one cell still open is repairable.
        g.set(1, 7, None).unwrap();
        assert!(check_cd(&g).is_empty());
    }

    #[test]
    fn second_single_appearance_is_caught() {
        // Rows 1 and 2 both leave teams 7 and 8 with a single game.
        let t = TeamCount::new(8).unwrap();
        let mut g = ScheduleGrid::empty(t);
        let r1 = [(1, 8), (2, 3), (4, 5), (6, 7), (1, 2), (3, 4), (5, 6)];
        let r2 = [(7, 8), (1, 3), (2, 4), (5, 6), (1, 6), (2, 5), (3, 4)];
        for (w, (&a, &b)) in r1.iter().zip(r2.iter()).enumerate() {
            g.set(1, w + 1, Some(Match::new(a.0, a.1))).unwrap();
            g.set(2, w + 1, Some(Match::new(b.0, b.1))).unwrap();
        }
        assert!(check_cp(&g).is_empty());
        let v = check_cd(&g);
        let details: Vec<_> = v.iter().map(|v| (v.location.clone(), v.detail.as_str())).collect();
        assert_eq!(
            details,
            vec![
                (Location::Period(2), "team 7 plays once here and once in period 1"),
                (Location::Period(2), "team 8 plays once here and once in period 1"),
            ]
        );
        assert_eq!(repeated_single_appearances(&g, 1), vec![]);
    }

    #[test]
    fn circle_schedule_is_invalid_only_through_cp() {
        let r = verify_solution(&table2()).unwrap();
        assert!(!r.is_valid());
        assert!(r.satisfies(Constraint::HalfCompetition));
        assert!(r.satisfies(Constraint::Week));
        assert!(!r.satisfies(Constraint::Period));
    }

    #[test]
    fn replacing_a_cell_with_1_3_breaks_cw_and_ch() {
        let mut g = table1();
        g.set(1, 1, Some(Match::new(1, 3))).unwrap();
        let r = verify_solution(&g).unwrap();
        assert!(!r.is_valid());
        assert!(!r.satisfies(Constraint::Week));
        assert!(!r.satisfies(Constraint::HalfCompetition));
    }

    #[test]
    fn initial_schedule_for_twelve() {
        let s = build_initial_schedule(TeamCount::new(12).unwrap());
        assert!(check_ch(&s).unwrap().is_empty());
        assert!(check_cw(&s).is_empty());
        let cp = check_cp(&s);
        assert!(!cp.is_empty());
        assert!(cp.iter().all(|v| v.location == Location::Period(6)));
    }

    #[test]
    fn report_display() {
        let text = verify_solution(&table2()).unwrap().to_string();
        assert!(text.contains("c_H: ok"));
        assert!(text.contains("c_P: violated (period 4, team 8 ×7)"));
        assert!(text.ends_with("invalid"));
    }
}
