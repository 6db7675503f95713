use thiserror::Error;

use crate::schedule::Team;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid team count {0}: must be even and at least 4")]
    InvalidTeamCount(u32),

    #[error("team {0} cannot play itself")]
    SelfMatch(Team),

    #[error("team {team} out of range 1..={teams}")]
    TeamOutOfRange { team: Team, teams: u32 },

    #[error("expected a {}x{} grid, found {}x{}", expected.0, expected.1, found.0, found.1)]
    DimensionMismatch {
        expected: (usize, usize),
        found: (usize, usize),
    },

    #[error("incomplete grid: {} empty cell(s), first at <{},{}>", cells.len(), cells[0].0, cells[0].1)]
    Incomplete { cells: Vec<(usize, usize)> },

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("index <{period},{week}> out of range for a {periods}x{weeks} grid")]
    IndexOutOfRange {
        period: usize,
        week: usize,
        periods: usize,
        weeks: usize,
    },

    #[error("incoherent rule set: {0}")]
    InvalidRules(String),

    #[error("cell <{period},{week}> already holds a different match")]
    Conflict { period: usize, week: usize },

    #[error("week {week} has no mirror partner (mirrored weeks are 1..={last})")]
    NotMirrored { week: usize, last: usize },

    #[error("oracle node budget exhausted after {nodes} nodes ({found} solutions so far, count not exact)")]
    BudgetExceeded { nodes: u64, found: u64 },

    #[error("oracle enumeration is limited to T <= 8 (T = 8 needs a node budget), got {0}")]
    OracleTooLarge(u32),

    #[error("invalid JSON schedule: {0}")]
    Json(String),
}
