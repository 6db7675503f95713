use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use enass_core::bench::{self, SuiteOptions};
use enass_core::format::{self, from_json, parse_table, parse_table_for, to_json};
use enass_core::oracle::exhaustive_count;
use enass_core::{
    build_initial_schedule, verify_solution, Error, Outcome, SearchLimits, Solver, TeamCount, Variant,
};

/// Default per-run cutoff: three hours.
const DEFAULT_TIME_LIMIT_S: f64 = 3.0 * 3600.0;

#[derive(Parser, Debug)]
#[command(name = "enass", version, about = "Exact solver for balanced tournament designs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum VariantArg {
    Base,
    Enass3,
    Enass4,
}

impl From<VariantArg> for Variant {
    fn from(v: VariantArg) -> Variant {
        match v {
            VariantArg::Base => Variant::Base,
            VariantArg::Enass3 => Variant::Enass3,
            VariantArg::Enass4 => Variant::Enass4,
        }
    }
}

#[derive(clap::Args, Debug)]
struct LimitArgs {
    /// Wall-clock limit per run, in seconds.
    #[arg(long, default_value_t = DEFAULT_TIME_LIMIT_S)]
    time_limit: f64,
    /// Stop after this many backtracks.
    #[arg(long)]
    backtrack_limit: Option<u64>,
}

impl LimitArgs {
    fn limits(&self) -> Result<SearchLimits, String> {
        if !(self.time_limit.is_finite() && self.time_limit > 0.0) {
            return Err(format!("invalid time limit {}", self.time_limit));
        }
        Ok(SearchLimits {
            max_time: Some(Duration::from_secs_f64(self.time_limit)),
            max_backtracks: self.backtrack_limit,
        })
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Search for a schedule.
    Solve {
        #[arg(long, short)]
        teams: u32,
        #[arg(long, value_enum, default_value_t = VariantArg::Enass4)]
        variant: VariantArg,
        #[command(flatten)]
        limits: LimitArgs,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// Check a schedule file (text table or JSON).
    Verify {
        input: PathBuf,
        /// Expected team count.
        #[arg(long, short)]
        teams: Option<u32>,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// Solve a range of team counts with one or more variants.
    Bench {
        #[arg(long)]
        from: u32,
        #[arg(long)]
        to: u32,
        #[arg(long = "variant", value_enum, default_values_t = [VariantArg::Enass3, VariantArg::Enass4])]
        variants: Vec<VariantArg>,
        #[command(flatten)]
        limits: LimitArgs,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
        /// Run independent instances concurrently.
        #[arg(long)]
        parallel: bool,
    },
    /// Count every valid schedule by brute force (T <= 8).
    Oracle {
        #[arg(long, short)]
        teams: u32,
        #[arg(long)]
        fix_week1: bool,
        /// Node budget, required for T = 8.
        #[arg(long)]
        budget: Option<u64>,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// Print the circle-method starting schedule.
    InitSchedule {
        #[arg(long, short)]
        teams: u32,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
}

/// Errors mapped to exit code 2.
#[derive(Debug)]
struct InputError(String);

impl From<Error> for InputError {
    fn from(e: Error) -> Self {
        InputError(e.to_string())
    }
}

impl From<String> for InputError {
    fn from(e: String) -> Self {
        InputError(e)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(InputError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> Result<u8, InputError> {
    match command {
        Command::Solve {
            teams,
            variant,
            limits,
            format,
        } => {
            let teams = TeamCount::new(teams)?;
            let variant = Variant::from(variant);
            let solver = Solver::new(teams, variant.rules(teams)?)?;
            let result = solver.solve(limits.limits()?);
            let stats = result.stats;
            match format {
                Format::Table => {
                    if let Some(g) = &result.schedule {
                        print!("{}", format::render_table(g));
                    } else {
                        println!("{}", no_solution_message(stats.outcome));
                    }
                    println!("variant={variant} teams={teams} {stats}");
                }
                Format::Json => {
                    let doc = json!({
                        "teams": teams,
                        "variant": variant,
                        "schedule": result.schedule.as_ref().map(to_json),
                        "stats": stats,
                    });
                    println!("{}", serde_json::to_string_pretty(&doc).expect("json"));
                }
                Format::Csv => {
                    let row = bench::BenchRow {
                        teams: teams.get(),
                        variant,
                        time_s: stats.elapsed.as_secs_f64(),
                        backtracks: stats.backtracks,
                        outcome: bench::RunOutcome::Search(stats.outcome),
                    };
                    print!("{}", bench::render_csv(&[row]));
                }
            }
            Ok(if stats.outcome == Outcome::Solution { 0 } else { 1 })
        }
        Command::Verify {
            input,
            teams,
            format,
        } => {
            let text = fs::read_to_string(&input)
                .map_err(|e| format!("cannot read {}: {e}", input.display()))?;
            let grid = if text.trim_start().starts_with('{') {
                from_json(&text)?
            } else {
                match teams {
                    Some(t) => parse_table_for(&text, TeamCount::new(t)?)?,
                    None => parse_table(&text)?,
                }
            };
            if let Some(t) = teams {
                if grid.teams().get() != t {
                    return Err(InputError(format!(
                        "schedule has {} teams, expected {t}",
                        grid.teams()
                    )));
                }
            }
            let report = verify_solution(&grid)?;
            match format {
                Format::Json => {
                    println!("{}", serde_json::to_string_pretty(&report).expect("json"))
                }
                _ => println!("{report}"),
            }
            Ok(if report.is_valid() { 0 } else { 1 })
        }
        Command::Bench {
            from,
            to,
            variants,
            limits,
            format,
            parallel,
        } => {
            let variants: Vec<Variant> = variants.into_iter().map(Variant::from).collect();
            let rows = bench::run_suite(
                TeamCount::new(from)?,
                TeamCount::new(to)?,
                &variants,
                SuiteOptions {
                    limits: limits.limits()?,
                    parallel,
                },
            )
            .map_err(|_| format!("empty range {from}..={to}"))?;
            match format {
                Format::Table => print!("{}", bench::render_table(&rows)),
                Format::Csv => print!("{}", bench::render_csv(&rows)),
                Format::Json => println!("{}", serde_json::to_string_pretty(&rows).expect("json")),
            }
            Ok(0)
        }
        Command::Oracle {
            teams,
            fix_week1,
            budget,
            format,
        } => {
            let teams = TeamCount::new(teams)?;
            match exhaustive_count(teams, fix_week1, budget) {
                Ok(r) => {
                    match format {
                        Format::Json => {
                            println!("{}", serde_json::to_string_pretty(&r).expect("json"))
                        }
                        _ => println!(
                            "teams={teams} fix_week1={fix_week1} solutions={} nodes={}",
                            r.solution_count, r.nodes
                        ),
                    }
                    Ok(0)
                }
                Err(e @ Error::BudgetExceeded { .. }) => {
                    println!("budget: {e}");
                    Ok(1)
                }
                Err(e) => Err(e.into()),
            }
        }
        Command::InitSchedule { teams, format } => {
            let initial = build_initial_schedule(TeamCount::new(teams)?);
            match format {
                Format::Json => println!("{}", to_json(&initial)),
                _ => print!("{}", format::render_table(&initial)),
            }
            Ok(0)
        }
    }
}

fn no_solution_message(outcome: Outcome) -> &'static str {
    match outcome {
        Outcome::Exhausted => "exhausted: no solution in restricted space",
        Outcome::TimeLimit => "time_limit: no solution within the time limit",
        Outcome::BacktrackLimit => "backtrack_limit: no solution within the backtrack limit",
        Outcome::Solution => "solution",
    }
}
