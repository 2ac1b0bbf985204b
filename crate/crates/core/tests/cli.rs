use std::fs;
use std::process::Command;

use kneighborhood::cli::main_with;

fn run(line: &str) -> (u8, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("kneighborhood").chain(line.split_whitespace());
    let code = main_with(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

#[test]
fn count_prints_the_number() {
    assert_eq!(
        run("count --d 3 --k 2 --r 1"),
        (0, "18\n".into(), String::new())
    );
    assert_eq!(run("count --d 2 --r 2 --diamond").1, "12\n");
    assert_eq!(run("count --d 2 --k 2 --r 2").1, "24\n");
}

#[test]
fn derived_formula_is_flagged() {
    let (code, out, err) = run("count --d 3 --k 2 --r 2 --sharp-k");
    assert_eq!(code, 0);
    assert_eq!(out, "48\n");
    assert!(err.contains("derived"));
}

#[test]
fn enumerate_von_neumann() {
    let (code, out, _) = run("enumerate --d 2 --k 1 --r 1");
    assert_eq!(code, 0);
    assert_eq!(out, "-1,0\n0,-1\n0,1\n1,0\n");
}

#[test]
fn count_equals_enumeration_length() {
    for flags in ["", "--sharp-k", "--sharp-r", "--sharp-k --sharp-r"] {
        for (d, k, r) in [(1, 1, 3), (2, 1, 2), (3, 2, 2), (4, 3, 1)] {
            let line = format!("--d {d} --k {k} --r {r} {flags}");
            let count: usize = run(&format!("count {line}")).1.trim().parse().unwrap();
            assert_eq!(
                run(&format!("enumerate {line}")).1.lines().count(),
                count,
                "{line}"
            );
        }
    }
    for r in 1..=3 {
        let line = format!("--d 3 --r {r} --diamond --sharp-r");
        let count: usize = run(&format!("count {line}")).1.trim().parse().unwrap();
        assert_eq!(run(&format!("enumerate {line}")).1.lines().count(), count);
    }
}

#[test]
fn sequence_output() {
    assert_eq!(
        run("sequence --id A005843 --terms 3 --bfile").1,
        "0 0\n1 2\n2 4\n"
    );
    assert_eq!(run("sequence --id A024023 --terms 4").1, "0\n2\n8\n26\n");
}

#[test]
fn verify_small_box_passes() {
    let (code, out, _) = run("verify --max-d 4 --max-k 4 --max-r 3");
    assert_eq!(code, 0);
    assert!(out.lines().last().unwrap().ends_with("0 failed"));
    assert!(out.lines().filter(|l| l.starts_with("PASS")).count() > 100);
    assert!(!out.contains("FAIL "));
}

#[test]
fn usage_errors_exit_2() {
    for line in [
        "count --d 2 --k 3 --r 1",
        "count --d 2 --k 1",
        "count --d two --k 1 --r 1",
        "bogus",
    ] {
        let (code, out, err) = run(line);
        assert_eq!(code, 2, "{line}");
        assert!(out.is_empty());
        assert!(!err.is_empty());
    }
}

#[test]
fn capacity_error_exits_1() {
    let (code, _, err) = run("enumerate --d 30 --k 30 --r 1");
    assert_eq!(code, 1);
    assert!(err.contains("capacity"));
}

#[test]
fn simulate_glider() {
    let dir = tempfile::tempdir().unwrap();
    let pattern = dir.path().join("glider.txt");
    fs::write(&pattern, "# glider\n1,2\n2,3\n3,1\n3,2\n3,3\n").unwrap();
    let line = format!(
        "simulate --dims 8,8 --k 2 --r 1 --rule B3/S23 --steps 4 --pattern {} --snapshot-every 4",
        pattern.display()
    );
    let (code, out, _) = run(&line);
    assert_eq!(code, 0);
    let snapshots: Vec<&str> = out.split("# generation ").skip(1).collect();
    assert_eq!(snapshots.len(), 2);
    let body = |s: &str| {
        s.lines()
            .skip(1)
            .take(8)
            .map(|l| format!("{l}\n"))
            .collect::<String>()
    };
    let initial = body(snapshots[0]);
    let last = body(snapshots[1]);
    // translate the initial picture by (1, 1) on the torus
    let rows: Vec<Vec<char>> = initial.lines().map(|l| l.chars().collect()).collect();
    let mut shifted = String::new();
    for r in 0..8 {
        for c in 0..8 {
            shifted.push(rows[(r + 7) % 8][(c + 7) % 8]);
        }
        shifted.push('\n');
    }
    assert_eq!(last, shifted);
    for g in 0..=4 {
        assert!(out.contains(&format!("generation {g} population 5\n")));
    }
}

#[test]
fn simulate_missing_pattern_file() {
    let (code, _, err) =
        run("simulate --dims 8,8 --k 2 --r 1 --rule B3/S23 --steps 1 --pattern /nonexistent/p.txt");
    assert_eq!(code, 1);
    assert!(err.starts_with("error:"));
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_kneighborhood");
    let ok = Command::new(bin)
        .args(["count", "--d", "3", "--k", "2", "--r", "1"])
        .output()
        .unwrap();
    assert_eq!(ok.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&ok.stdout), "18\n");
    let usage = Command::new(bin)
        .args(["count", "--d", "2", "--k", "3", "--r", "1"])
        .output()
        .unwrap();
    assert_eq!(usage.status.code(), Some(2));
    let help = Command::new(bin).arg("--help").output().unwrap();
    assert_eq!(help.status.code(), Some(0));
}
