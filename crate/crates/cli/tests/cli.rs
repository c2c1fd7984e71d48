use std::process::{Command, Output};

fn spread(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_spread"))
        .args(args)
        .env_remove("SPREAD_THREADS")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("UTF-8 output")
}

#[test]
fn spread_of_closed_path() {
    let out = spread(&["spread", "--construct", "p4*", "--i", "1", "--j", "0"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("λ2 − λ4: 2.82842712475"), "{text}");
    assert!(text.contains("ratio: 0.707106781187"), "{text}");
}

#[test]
fn spread_index_out_of_range_fails() {
    let out = spread(&["spread", "--construct", "p4*", "--i", "9", "--j", "0"]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("out of range"));
}

#[test]
fn spectrum_of_registry_graph() {
    let out = spread(&["spectrum", "--sparse6", ":FehIA_t_S"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert_eq!(text.lines().filter(|l| l.trim_start().starts_with('λ')).count(), 7);
    assert!(text.contains("λ1 = 3\n"));
}

#[test]
fn exactly_one_graph_source() {
    assert!(!spread(&["spectrum"]).status.success());
    assert!(!spread(&["spectrum", "--construct", "p4*", "--sparse6", ":@"])
        .status
        .success());
}

#[test]
fn tolerance_floor() {
    assert!(!spread(&["spectrum", "--construct", "p4*", "--tol", "1e-15"])
        .status
        .success());
    assert!(spread(&["spectrum", "--construct", "p4*", "--tol", "1e-14"])
        .status
        .success());
}

#[test]
fn blowup_flag() {
    let out = spread(&["spread", "--construct", "p4*", "--blowup", "3", "--i", "1", "--j", "0"]);
    let text = stdout(&out);
    assert!(text.contains("n: 12"));
    assert!(text.contains("ratio: 0.707106781187"));
}

#[test]
fn file_source_with_several_graphs() {
    let dir = std::env::temp_dir().join(format!("spread-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("graphs.s6");
    std::fs::write(&path, ":Fa@x^\nDQc\n").unwrap();
    let out = spread(&["spread", "--file", path.to_str().unwrap(), "--i", "0", "--j", "0"]);
    std::fs::remove_dir_all(&dir).unwrap();
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("# graph 1") && text.contains("# graph 2"));
}

#[test]
fn bounds_table_default() {
    let out = spread(&["bounds-table"]);
    assert!(out.status.success());
    let text = stdout(&out);
    for s in ["2/√3", "1/√2", "1/2", "√2/4", "0.441/0.456", "n/a (G₅ unavailable)"] {
        assert!(text.contains(s), "missing {s}\n{text}");
    }
}

#[test]
fn bounds_table_formulas_only_csv() {
    let out = spread(&[
        "bounds-table",
        "--formulas-only",
        "--imax",
        "10",
        "--jmax",
        "10",
        "--format",
        "csv",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert_eq!(text.lines().count(), 1 + 11 * 11);
    assert!(text.starts_with("i,j,lower,upper"));
    assert!(!spread(&["bounds-table", "--imax", "5"]).status.success());
}

#[test]
fn bounds_table_markdown() {
    let out = spread(&["bounds-table", "--format", "markdown"]);
    let text = stdout(&out);
    assert!(text.lines().all(|l| l.starts_with('|') && l.ends_with('|')));
    assert_eq!(text.lines().count(), 7);
}

#[test]
fn search_closed_path() {
    let out = spread(&["search", "--n", "4", "--i", "1", "--j", "0", "--threads", "2"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("value: 2.82842712475"));
    assert!(text.contains("witnesses: 1\n  :CdS^\n"), "{text}");
}

#[test]
fn search_threads_from_environment() {
    let run = |threads: &str| {
        Command::new(env!("CARGO_BIN_EXE_spread"))
            .args(["search", "--n", "5", "--i", "1", "--j", "1"])
            .env("SPREAD_THREADS", threads)
            .output()
            .unwrap()
    };
    let (a, b) = (run("1"), run("8"));
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn search_hill_climb_is_seeded() {
    let args = [
        "search",
        "--n",
        "8",
        "--i",
        "1",
        "--j",
        "0",
        "--method",
        "hill-climb",
        "--seed",
        "3",
        "--restarts",
        "8",
        "--iters",
        "150",
    ];
    let (a, b) = (spread(&args), spread(&args));
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert!(stdout(&a).contains("method: hill-climb"));
}

#[test]
fn search_too_large() {
    let out = spread(&["search", "--n", "9", "--i", "0", "--j", "0", "--method", "exhaustive"]);
    assert!(!out.status.success());
}

#[test]
fn verify_hadamard_k8() {
    let out = spread(&["verify", "--suite", "hadamard", "--k", "8"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("PASS hadamard k=8"));
    assert!(text.contains("n=32"));
}

#[test]
fn verify_reports_failures_with_exit_status() {
    // the printed (1,4) upper bound does not match its formula
    let out = spread(&["verify", "--suite", "tables"]);
    assert!(!out.status.success());
    let text = stdout(&out);
    assert_eq!(text.matches("SKIP").count(), 2);
    assert!(text.contains("FAIL table cell (1,4)"));
    assert!(!spread(&["verify", "--suite", "bogus"]).status.success());
}

#[test]
fn verify_codec_suite_passes() {
    assert!(spread(&["verify", "--suite", "codec"]).status.success());
}

#[test]
fn encode_and_decode() {
    let out = spread(&["encode", "--construct", "p4*"]);
    assert_eq!(stdout(&out), ":CCm^\n");
    let out = spread(&["encode", "--construct", "p4*", "--format", "graph6"]);
    assert!(!out.status.success());
    let out = spread(&["encode", "--sparse6", ":Fa@x^", "--format", "graph6"]);
    assert!(out.status.success());

    let out = spread(&["decode", ":Fa@x^"]);
    let text = stdout(&out);
    assert!(text.contains("n: 7"));
    assert!(text.contains("edges (4): 0-1 0-2 1-2 5-6"));
    assert!(!spread(&["decode", ":"]).status.success());
}

#[test]
fn construct_prints_sparse6() {
    let out = spread(&["construct", "hadamard-equality:k=2"]);
    let text = stdout(&out);
    assert!(text.contains("n: 8"));
    assert!(text.contains("loops: 4"));
    assert!(!spread(&["construct", "hadamard-equality:k=3"]).status.success());
    assert!(!spread(&["construct", "nope"]).status.success());
}
