//! Variant sweeps over a range of team counts, rendered as CSV or as a
//! side-by-side table with one `Time` / `|BT|` column pair per variant.

use std::fmt::Write as _;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::schedule::TeamCount;
use crate::solver::{Outcome, SearchLimits, Solver, Variant};

pub const CSV_HEADER: &str = "T,variant,time_s,backtracks,outcome";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RunOutcome {
    Search(Outcome),
    /// The variant is not defined for this team count.
    Unsupported,
}

impl RunOutcome {
    pub fn name(self) -> &'static str {
        match self {
            RunOutcome::Search(o) => o.name(),
            RunOutcome::Unsupported => "unsupported",
        }
    }

    pub fn is_solution(self) -> bool {
        self == RunOutcome::Search(Outcome::Solution)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BenchRow {
    pub teams: u32,
    pub variant: Variant,
    pub time_s: f64,
    pub backtracks: u64,
    pub outcome: RunOutcome,
}

#[derive(Clone, Copy, Debug, Default)]
pub struct SuiteOptions {
    pub limits: SearchLimits,
    /// Run independent `(T, variant)` pairs on the rayon pool.
    pub parallel: bool,
}

fn run_one(teams: TeamCount, variant: Variant, limits: SearchLimits) -> BenchRow {
    let solver = variant.rules(teams).and_then(|rules| Solver::new(teams, rules));
    match solver {
        Ok(solver) => {
            let stats = solver.solve(limits).stats;
            BenchRow {
                teams: teams.get(),
                variant,
                time_s: stats.elapsed.as_secs_f64(),
                backtracks: stats.backtracks,
                outcome: RunOutcome::Search(stats.outcome),
            }
        }
        Err(_) => BenchRow {
            teams: teams.get(),
            variant,
            time_s: 0.0,
            backtracks: 0,
            outcome: RunOutcome::Unsupported,
        },
    }
}

/// Solves every even `T` in `from..=to` with every variant. Rows come back
/// sorted by `T`, then by the order of `variants`.
pub fn run_suite(
    from: TeamCount,
    to: TeamCount,
    variants: &[Variant],
    options: SuiteOptions,
) -> Result<Vec<BenchRow>> {
    if from > to {
        return Err(Error::InvalidTeamCount(to.get()));
    }
    let jobs: Vec<(TeamCount, usize)> = (from.get()..=to.get())
        .step_by(2)
        .flat_map(|t| {
            let t = TeamCount::new(t).expect("even and >= from");
            (0..variants.len()).map(move |i| (t, i))
        })
        .collect();
    let run = |&(t, i): &(TeamCount, usize)| ((t, i), run_one(t, variants[i], options.limits));
    let mut rows: Vec<_> = if options.parallel {
        jobs.par_iter().map(run).collect()
    } else {
        jobs.iter().map(run).collect()
    };
    rows.sort_by_key(|&(key, _)| key);
    Ok(rows.into_iter().map(|(_, row)| row).collect())
}

pub fn render_csv(rows: &[BenchRow]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in rows {
        let _ = writeln!(
            out,
            "{},{},{:.3},{},{}",
            r.teams,
            r.variant,
            r.time_s,
            r.backtracks,
            r.outcome.name()
        );
    }
    out
}

/// One line per `T`, one `Time` / `|BT|` pair per variant. Runs that did
/// not produce a schedule show `--` in both columns.
pub fn render_table(rows: &[BenchRow]) -> String {
    let mut variants: Vec<Variant> = Vec::new();
    for r in rows {
        if !variants.contains(&r.variant) {
            variants.push(r.variant);
        }
    }
    let mut out = String::new();
    let _ = write!(out, "{:>4}", "T");
    for v in &variants {
        let _ = write!(out, " | {:>10} {:>14}", format!("{v} Time"), "|BT|");
    }
    out.push('\n');
    let mut teams: Vec<u32> = rows.iter().map(|r| r.teams).collect();
    teams.dedup();
    for t in teams {
        let _ = write!(out, "{t:>4}");
        for v in &variants {
            match rows.iter().find(|r| r.teams == t && r.variant == *v) {
                Some(r) if r.outcome.is_solution() => {
                    let _ = write!(out, " | {:>10.3} {:>14}", r.time_s, r.backtracks);
                }
                Some(_) => {
                    let _ = write!(out, " | {:>10} {:>14}", "--", "--");
                }
                None => {
                    let _ = write!(out, " | {:>10} {:>14}", "", "");
                }
            }
        }
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::time::Duration;

    fn tc(t: u32) -> TeamCount {
        TeamCount::new(t).unwrap()
    }

    fn limits() -> SuiteOptions {
        SuiteOptions {
            limits: SearchLimits::time(Duration::from_secs(60)),
            parallel: false,
        }
    }

    #[test]
    fn mirror_sweep_solves_twelve_to_sixteen() {
        let rows = run_suite(tc(12), tc(16), &[Variant::Enass3], limits()).unwrap();
        assert_eq!(rows.iter().map(|r| r.teams).collect::<Vec<_>>(), vec![12, 14, 16]);
        assert!(rows.iter().all(|r| r.outcome.is_solution()));
    }

    #[test]
    fn inversion_excludes_six_and_ten() {
        let rows = run_suite(tc(6), tc(10), &[Variant::Enass4], limits()).unwrap();
        let outcomes: Vec<_> = rows.iter().map(|r| (r.teams, r.outcome)).collect();
        assert_eq!(
            outcomes,
            vec![
                (6, RunOutcome::Search(Outcome::Exhausted)),
                (8, RunOutcome::Search(Outcome::Solution)),
                (10, RunOutcome::Search(Outcome::Exhausted)),
            ]
        );
        let table = render_table(&rows);
        let six = table.lines().nth(1).unwrap();
        assert!(six.trim_start().starts_with('6') && six.matches("--").count() == 2, "{six}");
    }

    #[test]
    fn empty_variant_list() {
        assert!(run_suite(tc(6), tc(10), &[], limits()).unwrap().is_empty());
        assert_eq!(render_csv(&[]), format!("{CSV_HEADER}\n"));
    }

    #[test]
    fn unsupported_runs_become_rows() {
        let rows = run_suite(tc(4), tc(4), &[Variant::Enass4], limits()).unwrap();
        assert_eq!(rows.len(), 1);
        assert_eq!(rows[0].outcome, RunOutcome::Unsupported);
    }

    #[test]
    fn reversed_range_is_rejected() {
        assert!(run_suite(tc(10), tc(8), &[Variant::Base], limits()).is_err());
    }

    #[test]
    fn parallel_matches_sequential_except_time() {
        let variants = [Variant::Enass4, Variant::Enass3];
        let seq = run_suite(tc(6), tc(20), &variants, limits()).unwrap();
        let par = run_suite(
            tc(6),
            tc(20),
            &variants,
            SuiteOptions {
                parallel: true,
                ..limits()
            },
        )
        .unwrap();
        let strip = |rows: &[BenchRow]| -> Vec<_> {
            rows.iter().map(|r| (r.teams, r.variant, r.backtracks, r.outcome)).collect()
        };
        assert_eq!(strip(&seq), strip(&par));
        // Sorted by T, then by the requested variant order.
        assert_eq!(seq[0].variant, Variant::Enass4);
        assert_eq!(seq[1].variant, Variant::Enass3);
    }

    #[test]
    fn csv_and_table_agree_on_solved_rows() {
        let rows = run_suite(tc(8), tc(14), &[Variant::Enass3, Variant::Enass4], limits()).unwrap();
        let csv = render_csv(&rows);
        let table = render_table(&rows);
        for r in rows.iter().filter(|r| r.outcome.is_solution()) {
            let csv_line = format!("{},{},{:.3},{},solution", r.teams, r.variant, r.time_s, r.backtracks);
            assert!(csv.lines().any(|l| l == csv_line), "{csv_line}");
            let line = table
                .lines()
                .find(|l| l.split_whitespace().next() == Some(&r.teams.to_string()))
                .unwrap();
            assert!(line.contains(&format!("{:.3}", r.time_s)));
            assert!(line.contains(&r.backtracks.to_string()));
        }
    }
}
