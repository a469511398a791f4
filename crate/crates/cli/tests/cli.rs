use std::process::Command;

use lqnash_cli::report::SolveJson;
use lqnash_cli::{main_with, EXIT_DISAGREE, EXIT_INVALID, EXIT_OK};

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv: Vec<&str> = std::iter::once("lqnash").chain(args.iter().copied()).collect();
    let code = main_with(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

const ONES: [&str; 10] = ["--a", "1", "--q1", "1", "--q2", "1", "--r1", "1", "--r2", "1"];

fn with(cmd: &str, game: &[&str]) -> Vec<String> {
    std::iter::once(cmd)
        .chain(game.iter().copied())
        .map(String::from)
        .collect()
}

fn run_owned(args: &[String]) -> (i32, String, String) {
    run(&args.iter().map(String::as_str).collect::<Vec<_>>())
}

#[test]
fn solve_all_ones_json() {
    let (code, out, _) = run_owned(&with("solve", &ONES));
    assert_eq!(code, EXIT_OK);
    let doc: SolveJson = serde_json::from_str(&out).unwrap();
    assert!(!doc.trivial);
    assert_eq!(doc.n_nash, 1);
    assert_eq!(doc.delta.as_deref(), Some("-5056"));
    assert_eq!(doc.delta_sign, Some(-1));
    assert_eq!(doc.g.as_ref().unwrap().coefficients, ["1", "-2", "-2", "0", "-3", "2"]);
    let e = &doc.equilibria[0];
    assert!((e.k1 - 0.355415726776).abs() < 1e-11 && e.k1 == e.k2);
    assert!((e.j1 - 1.22909538794).abs() < 1e-10);
}

#[test]
fn solve_json_round_trips_byte_for_byte() {
    for game in [
        &ONES[..],
        &[
            "--a", "-3", "--q1", "1/2", "--q2", "1", "--r1", "1", "--r2", "10", "--b1", "-2",
        ],
    ] {
        let (code, out, _) = run_owned(&with("solve", game));
        assert_eq!(code, EXIT_OK);
        let doc: SolveJson = serde_json::from_str(&out).unwrap();
        assert_eq!(doc.to_json(), out);
    }
}

#[test]
fn solve_trivial_game() {
    let (code, out, _) = run(&[
        "solve", "--a", "0", "--q1", "1", "--q2", "3", "--r1", "1", "--r2", "1", "--x0", "2",
    ]);
    assert_eq!(code, EXIT_OK);
    let doc: SolveJson = serde_json::from_str(&out).unwrap();
    assert!(doc.trivial);
    assert_eq!(doc.n_nash, 1);
    assert_eq!(
        (doc.equilibria[0].k1, doc.equilibria[0].j1, doc.equilibria[0].j2),
        (0.0, 4.0, 12.0)
    );
    assert!(doc.g.is_none() && doc.delta.is_none());
}

#[test]
fn solve_table_lists_every_equilibrium() {
    let (code, out, _) = run(&[
        "solve", "--a", "3", "--q1", "1/2", "--q2", "1", "--r1", "1", "--r2", "10", "--format", "table",
    ]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("equilibria: 3"), "{out}");
    let rows = out
        .lines()
        .filter(|l| l.split_whitespace().count() == 7 && !l.contains("k1"))
        .count();
    assert_eq!(rows, 3, "{out}");
}

#[test]
fn invalid_input_exits_2() {
    let (code, _, err) = run(&["solve", "--a", "1", "--q1", "-1", "--q2", "1", "--r1", "1", "--r2", "1"]);
    assert_eq!(code, EXIT_INVALID);
    assert!(err.contains("q1 must be > 0"), "{err}");

    let (code, _, err) = run(&["solve", "--a", "pi", "--q1", "1", "--q2", "1", "--r1", "1", "--r2", "1"]);
    assert_eq!(code, EXIT_INVALID);
    assert!(err.contains("--a"), "{err}");

    let (code, _, _) = run(&[
        "solve", "--a", "1", "--q1", "1", "--q2", "1", "--r1", "1", "--r2", "1", "--b2", "0",
    ]);
    assert_eq!(code, EXIT_INVALID);

    let (code, _, _) = run(&["solve", "--a", "1"]);
    assert_eq!(code, EXIT_INVALID);
}

#[test]
fn decimal_literals_are_exact() {
    let (code, out, _) = run(&[
        "solve", "--a", "0.1", "--q1", "1e-2", "--q2", "1", "--r1", "1", "--r2", "1",
    ]);
    assert_eq!(code, EXIT_OK);
    let doc: SolveJson = serde_json::from_str(&out).unwrap();
    assert_eq!(doc.params.a, "1/10");
    assert_eq!(doc.params.q1, "1/100");
}

#[test]
fn groebner_check_passes() {
    for game in [
        &ONES[..],
        &["--a", "7/2", "--q1", "1/2", "--q2", "1", "--r1", "1", "--r2", "2"],
    ] {
        let (code, out, _) = run_owned(&with("groebner-check", game));
        assert_eq!(code, EXIT_OK, "{out}");
        assert!(out.trim_end().ends_with("PASS"), "{out}");
    }
}

#[test]
fn groebner_check_rejects_trivial_game() {
    let (code, _, _) = run(&[
        "groebner-check",
        "--a",
        "0",
        "--q1",
        "1",
        "--q2",
        "1",
        "--r1",
        "1",
        "--r2",
        "1",
    ]);
    assert_eq!(code, EXIT_INVALID);
}

#[test]
fn verify_agrees_on_known_games() {
    for game in [
        &ONES[..],
        &["--a", "3", "--q1", "1/2", "--q2", "1", "--r1", "1", "--r2", "10"],
    ] {
        let (code, out, err) = run_owned(&with("verify", game));
        assert_eq!(code, EXIT_OK, "{out}{err}");
        assert!(out.contains("all oracles agree"));
    }
}

#[test]
fn verify_reports_an_injected_fault() {
    let mut args = with("verify", &ONES);
    args.push("--inject-fault".into());
    let (code, out, err) = run_owned(&args);
    assert_eq!(code, EXIT_DISAGREE, "{out}");
    assert!(out.contains("DISAGREE") && err.contains("grid_scan"), "{out}{err}");
}

#[test]
fn verify_seed_changes_only_random_starts() {
    let base = with(
        "verify",
        &["--a", "2", "--q1", "1", "--q2", "2", "--r1", "1", "--r2", "3"],
    );
    let seeded = |s: &str| {
        let mut a = vec!["--seed".to_string(), s.to_string()];
        a.extend(base.clone());
        run_owned(&a).1
    };
    let (x, y) = (seeded("1"), seeded("2"));
    let even = |s: &str| {
        s.lines()
            .filter(|l| l.contains("even start"))
            .map(|l| l.split_whitespace().collect::<Vec<_>>().join(" "))
            .collect::<Vec<_>>()
    };
    assert_eq!(even(&x), even(&y));
    assert_ne!(x, y);
    assert_eq!(x, seeded("1"));
}

#[test]
fn sweep_writes_csv_svg_and_json() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("out/s.csv");
    let svg = dir.path().join("out/s.svg");
    let json = dir.path().join("out/s.json");
    let cfg = dir.path().join("s.json");
    std::fs::write(
        &cfg,
        format!(
            r#"{{"q1": 0.5, "r1": 1, "q2": 1, "a_grid": {{"min": 0.0001, "max": 4, "count": 25}},
                "r2_values": ["98/27", 1], "outputs": {{"csv": {:?}, "svg": {:?}, "json": {:?}}}}}"#,
            csv.display().to_string(),
            svg.display().to_string(),
            json.display().to_string()
        ),
    )
    .unwrap();
    let (code, out, err) = run(&["sweep", cfg.to_str().unwrap()]);
    assert_eq!(code, EXIT_OK, "{err}");
    assert!(out.contains("50 rows"));
    let text = std::fs::read_to_string(&csv).unwrap();
    assert_eq!(text.lines().count(), 51);
    assert!(text.starts_with(lqnash_cli::sweep::CSV_HEADER));
    assert!(!text.contains('\r'));
    // r2 ascending: 1 before 98/27
    assert!(text.lines().nth(1).unwrap().starts_with("0.0001,1,"));
    let picture = std::fs::read_to_string(&svg).unwrap();
    assert!(picture.starts_with("<svg") && !picture.contains("href"));
    let doc: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&json).unwrap()).unwrap();
    assert_eq!(doc["rows"].as_array().unwrap().len(), 50);
}

#[test]
fn sweep_rejects_bad_configs() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("bad.json");
    std::fs::write(&cfg, r#"{"q1": 0.5, "r1": 1, "q2": 1, "a_grid": {"min": 1, "max": 4, "count": 1}, "r2_values": [1], "outputs": {"csv": "x.csv"}}"#).unwrap();
    assert_eq!(run(&["sweep", cfg.to_str().unwrap()]).0, EXIT_INVALID);
    assert_eq!(
        run(&["sweep", dir.path().join("missing.json").to_str().unwrap()]).0,
        EXIT_INVALID
    );
}

#[test]
fn shipped_config_parses() {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/../../configs/default_sweep.json");
    let cfg = lqnash_cli::sweep::SweepConfig::from_json(&std::fs::read_to_string(path).unwrap()).unwrap();
    let plan = cfg.plan().unwrap();
    assert_eq!(plan.a_values.len(), 400);
    assert_eq!(plan.r2_values.len(), 4);
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_lqnash");
    let ok = Command::new(bin).arg("solve").args(ONES).output().unwrap();
    assert_eq!(ok.status.code(), Some(EXIT_OK));
    let bad = Command::new(bin)
        .args(["solve", "--a", "1", "--q1", "0", "--q2", "1", "--r1", "1", "--r2", "1"])
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(EXIT_INVALID));
    assert!(String::from_utf8_lossy(&bad.stderr).contains("q1"));
}
