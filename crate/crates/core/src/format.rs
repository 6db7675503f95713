//! Text table and JSON encodings of schedule grids.
//!
//! The text form has one line per period and `W` whitespace-separated cells
//! per line, each cell written `t,t'` with `t < t'`. Empty cells of partial
//! grids are written `-`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::schedule::{Match, ScheduleGrid, Team, TeamCount};

const EMPTY_CELL: &str = "-";

pub fn render_table(g: &ScheduleGrid) -> String {
    let mut out = String::new();
    for row in g.rows() {
        let line: Vec<String> = row
            .iter()
            .map(|c| c.map_or_else(|| EMPTY_CELL.to_string(), |m| m.to_string()))
            .collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
    out
}

fn parse_error(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

fn parse_cell(token: &str, line: usize, column: usize) -> Result<Option<(Team, Team)>> {
    if token == EMPTY_CELL {
        return Ok(None);
    }
    let (a, b) = token
        .split_once(',')
        .ok_or_else(|| parse_error(line, column, format!("malformed cell {token:?}")))?;
    let team = |s: &str| {
        s.parse::<Team>()
            .map_err(|_| parse_error(line, column, format!("malformed cell {token:?}")))
    };
    Ok(Some((team(a)?, team(b)?)))
}

/// Parses the text table form. Blank lines are ignored. Locations in errors
/// are 1-based (line of the table, cell index within the line).
pub fn parse_table(text: &str) -> Result<ScheduleGrid> {
    let mut rows: Vec<(usize, Vec<Option<(Team, Team)>>)> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        if raw.trim().is_empty() {
            continue;
        }
        let cells = raw
            .split_whitespace()
            .enumerate()
            .map(|(j, tok)| parse_cell(tok, line, j + 1))
            .collect::<Result<Vec<_>>>()?;
        if let Some((_, first)) = rows.first() {
            if cells.len() != first.len() {
                return Err(parse_error(
                    line,
                    cells.len().min(first.len()) + 1,
                    format!(
                        "non-rectangular table: {} cells, expected {}",
                        cells.len(),
                        first.len()
                    ),
                ));
            }
        }
        rows.push((line, cells));
    }
    let periods = rows.len();
    let weeks = rows.first().map_or(0, |(_, r)| r.len());
    let teams = TeamCount::from_dims(periods, weeks).ok_or_else(|| {
        parse_error(
            rows.last().map_or(1, |(l, _)| *l),
            1,
            format!(
                "dimension mismatch: {periods}x{weeks} is not a P x W table with W odd and P = (W+1)/2"
            ),
        )
    })?;
    let t = teams.get();
    let mut grid = ScheduleGrid::empty(teams);
    for (p, (line, cells)) in rows.into_iter().enumerate() {
        for (w, cell) in cells.into_iter().enumerate() {
            let Some((a, b)) = cell else { continue };
            for team in [a, b] {
                if team == 0 || team > t {
                    return Err(parse_error(
                        line,
                        w + 1,
                        format!("team out of range: {team} not in 1..={t}"),
                    ));
                }
            }
            let m = Match::try_new(a, b).map_err(|e| parse_error(line, w + 1, e.to_string()))?;
            grid.set(p + 1, w + 1, Some(m))?;
        }
    }
    Ok(grid)
}

/// Like [`parse_table`], additionally requiring a specific team count.
pub fn parse_table_for(text: &str, teams: TeamCount) -> Result<ScheduleGrid> {
    let g = parse_table(text)?;
    if g.teams() != teams {
        return Err(Error::DimensionMismatch {
            expected: (teams.periods(), teams.weeks()),
            found: (g.periods(), g.weeks()),
        });
    }
    Ok(g)
}

#[derive(Serialize, Deserialize)]
struct JsonSchedule {
    teams: TeamCount,
    grid: Vec<Vec<Option<Match>>>,
}

/// `{"teams": T, "grid": [[[t,t'],...],...]}` with periods outermost.
pub fn to_json(g: &ScheduleGrid) -> serde_json::Value {
    let doc = JsonSchedule {
        teams: g.teams(),
        grid: g.rows().map(<[_]>::to_vec).collect(),
    };
    serde_json::to_value(doc).expect("schedule serializes")
}

pub fn from_json(text: &str) -> Result<ScheduleGrid> {
    let doc: JsonSchedule = serde_json::from_str(text).map_err(|e| Error::Json(e.to_string()))?;
    ScheduleGrid::from_rows(doc.teams, doc.grid)
}
