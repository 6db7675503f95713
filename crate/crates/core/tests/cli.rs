use std::fs;
use std::process::{Command, Output};

use enass_core::format::{parse_table, to_json};
use enass_core::reference::{circle_eight, valid_eight};
use enass_core::{render_table, verify_solution};

fn enass(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_enass"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn solve_prints_a_valid_table() {
    let out = enass(&["solve", "--teams", "8", "--variant", "enass3"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let (table, stats) = text.rsplit_once("variant=").unwrap();
    let g = parse_table(table).unwrap();
    assert_eq!((g.teams().periods(), g.teams().weeks()), (4, 7));
    assert!(verify_solution(&g).unwrap().is_valid());
    assert!(stats.contains("outcome=solution"), "{stats}");
}

#[test]
fn solve_json_matches_table() {
    let table = stdout(&enass(&["solve", "-t", "12"]));
    let json: serde_json::Value =
        serde_json::from_str(&stdout(&enass(&["solve", "-t", "12", "--format", "json"]))).unwrap();
    let g = parse_table(table.rsplit_once("variant=").unwrap().0).unwrap();
    assert_eq!(json["schedule"], to_json(&g));
    assert_eq!(json["stats"]["outcome"], "solution");
    assert_eq!(json["variant"], "enass4");
}

#[test]
fn solve_reports_exhaustion() {
    let out = enass(&["solve", "--teams", "6", "--variant", "enass4"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("exhausted: no solution in restricted space"));
}

#[test]
fn solve_reports_limits() {
    let out = enass(&["solve", "-t", "40", "--variant", "enass3", "--backtrack-limit", "10"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("outcome=backtrack_limit"));
}

#[test]
fn verify_text_and_json() {
    let dir = tempfile::tempdir().unwrap();
    let circle = dir.path().join("circle.txt");
    fs::write(&circle, render_table(&circle_eight())).unwrap();
    let out = enass(&["verify", circle.to_str().unwrap(), "--teams", "8"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("c_P: violated (period 4, team 8 ×7)"), "{}", stdout(&out));

    let valid = dir.path().join("valid.json");
    fs::write(&valid, to_json(&valid_eight()).to_string()).unwrap();
    let out = enass(&["verify", valid.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("valid"));
}

#[test]
fn invalid_input_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.txt");
    let mut text = render_table(&valid_eight());
    text.replace_range(0..3, "9,1");
    fs::write(&bad, text).unwrap();
    let out = enass(&["verify", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("team out of range"));

    let out = enass(&["verify", "/nonexistent/schedule.txt"]);
    assert_eq!(out.status.code(), Some(2));

    for args in [&["solve", "-t", "7"][..], &["init-schedule", "-t", "2"], &["bench", "--from", "10", "--to", "6"]] {
        let out = enass(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn init_schedule_prints_circle_grid() {
    let out = enass(&["init-schedule", "--teams", "8"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(parse_table(&stdout(&out)).unwrap(), circle_eight());
}

#[test]
fn oracle_counts() {
    let out = enass(&["oracle", "-t", "6", "--fix-week1"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("solutions=5"), "{}", stdout(&out));
    let out = enass(&["oracle", "-t", "8", "--budget", "1000"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).starts_with("budget"));
    assert_eq!(enass(&["oracle", "-t", "10"]).status.code(), Some(2));
}

#[test]
fn bench_csv() {
    let out = enass(&["bench", "--from", "6", "--to", "10", "--variant", "enass4", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let lines: Vec<_> = text.lines().collect();
    assert_eq!(lines[0], "T,variant,time_s,backtracks,outcome");
    assert_eq!(lines.len(), 4);
    assert!(lines[1].starts_with("6,enass4,") && lines[1].ends_with(",exhausted"));
    assert!(lines[2].ends_with(",5,solution"), "{}", lines[2]);
}
