//! End-to-end runs of the `coalform` binary.

use coalition_core::io::{parse_report, Report};
use std::path::PathBuf;
use std::process::Command;

fn run(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_coalform"))
        .args(args)
        .output()
        .unwrap();
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/data")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn json(args: &[&str]) -> Report {
    let mut full = args.to_vec();
    full.extend(["--format", "json"]);
    let (code, out, err) = run(&full);
    assert_eq!(code, 0, "{args:?}: {err}");
    parse_report(&out).unwrap().report
}

#[test]
fn partitions_listing() {
    let (code, out, _) = run(&["partitions", "--fixture", "dinner", "--k", "2"]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().count(), 12);
    assert!(out.ends_with("count: 10\n"));
    let (_, out, _) = run(&["partitions", "--fixture", "bos", "--k", "1"]);
    assert!(out.contains("\n1|2\ncount: 1\n"));
    match json(&["partitions", "--fixture", "lunch", "--k", "4"]) {
        Report::Partitions(v) => assert_eq!(v.count, 15),
        other => panic!("{other:?}"),
    }
}

#[test]
fn usage_and_parse_errors_exit_2() {
    let cases: &[&[&str]] = &[
        &["partitions", "--fixture", "dinner", "--k", "0"],
        &["partitions", "--fixture", "dinner", "--k", "5"],
        &["partitions", "--k", "2"],
        &["partitions", "--fixture", "poker", "--k", "2"],
        &["solve", "--fixture", "bos", "--k", "1", "--epsilon", "one"],
        &["solve", "--fixture", "bos", "--k", "1", "--epsilon", "-1/2"],
        &["cooperate", "--fixture", "dinner", "--coalition", "A,,Z"],
        &["simulate", "--fixture", "lunch", "--steps", "0"],
        &["fixture", "dinner", "--profile", "nonsense"],
        &["frobnicate"],
    ];
    for args in cases {
        let (code, _, err) = run(args);
        assert_eq!(code, 2, "{args:?}: {err}");
        assert!(!err.is_empty());
    }
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{\"format_version\": 1, \"players\": [\"a\"]").unwrap();
    let (code, _, err) = run(&["solve", "--spec", bad.to_str().unwrap(), "--k", "1"]);
    assert_eq!(code, 2);
    assert!(err.contains("line"), "{err}");
    let (code, _, _) = run(&["solve", "--spec", "/nonexistent/spec.json", "--k", "1"]);
    assert_eq!(code, 2);
}

#[test]
fn resource_limits_exit_3() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("seven.json");
    let spec = serde_json::json!({
        "format_version": 1,
        "players": ["a", "b", "c", "d", "e", "f", "g"],
        "payoffs": [],
        "default_payoff": [0, 0, 0, 0, 0, 0, 0]
    });
    std::fs::write(&path, spec.to_string()).unwrap();
    let p = path.to_str().unwrap();
    let (code, _, err) = run(&["coop-theory", "--spec", p]);
    assert_eq!(code, 3, "{err}");
    let (code, _, err) = run(&["solve", "--spec", p, "--k", "7", "--reduce", "false"]);
    assert_eq!(code, 3, "{err}");
}

#[test]
fn precondition_failures_exit_4() {
    let (code, _, err) = run(&["stability", "--fixture", "bos", "--k0", "1"]);
    assert_eq!(code, 4);
    assert!(err.contains("3 equilibria"), "{err}");
    let (code, out, _) = run(&[
        "cooperate",
        "--fixture",
        "bos",
        "--coalition",
        "1,2",
        "--profile",
        "stated-formula-literal",
    ]);
    assert_eq!(code, 4);
    assert!(out.contains("ex post 2"));
    let (code, _, err) = run(&[
        "simulate",
        "--fixture",
        "bos",
        "--profile",
        "stated-formula",
        "--steps",
        "10",
    ]);
    assert_eq!(code, 4, "{err}");
}

#[test]
fn candidate_files_are_verified() {
    let (code, doc, _) = run(&["fixture", "lunch", "--profile", "uniform"]);
    assert_eq!(code, 0);
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("uniform.json");
    std::fs::write(&path, doc).unwrap();
    match json(&[
        "solve",
        "--fixture",
        "lunch",
        "--k",
        "2",
        "--candidate",
        path.to_str().unwrap(),
    ]) {
        Report::Equilibrium(r) => {
            let c = r.candidate.unwrap();
            assert!(c.verified);
            assert_eq!(c.max_regret, coalition_core::rational::int(0));
            assert_eq!(
                c.expected_payoffs[0],
                coalition_core::rational::ratio(137, 27)
            );
            assert!(r.stochastic);
        }
        other => panic!("{other:?}"),
    }
}

#[test]
fn cooperative_theory_on_small_specs() {
    let (code, out, _) = run(&["coop-theory", "--spec", &data("glove.json")]);
    assert_eq!(code, 0);
    assert!(out.contains("shapley value: (1/2,1/2,0)"), "{out}");
    let (_, out, _) = run(&["coop-theory", "--spec", &data("additive.json")]);
    assert!(out.contains("point (1,2,3)"), "{out}");
    assert!(out.contains("shapley value: (1,2,3)"), "{out}");
}

#[test]
fn every_command_emits_parseable_json() {
    let cases: &[&[&str]] = &[
        &["partitions", "--fixture", "dinner", "--k", "3"],
        &["solve", "--fixture", "staghare", "--k", "2", "--strong"],
        &["cooperate", "--fixture", "dinner", "--coalition", "C1,C2"],
        &["stability", "--fixture", "staghare", "--k0", "1"],
        &[
            "simulate",
            "--fixture",
            "lunch",
            "--steps",
            "500",
            "--seed",
            "1",
        ],
        &[
            "coop-theory",
            "--fixture",
            "dinner",
            "--convention",
            "pessimistic",
        ],
    ];
    for args in cases {
        let r = json(args);
        let text = coalition_core::io::report::to_json(&r);
        assert_eq!(parse_report(&text).unwrap().report, r);
    }
}

#[test]
fn identical_invocations_give_identical_output() {
    let cases: &[&[&str]] = &[
        &[
            "simulate",
            "--fixture",
            "lunch",
            "--steps",
            "20000",
            "--seed",
            "9",
        ],
        &[
            "solve",
            "--fixture",
            "dinner",
            "--k",
            "2",
            "--eliminate-dominated",
            "--strong",
        ],
        &[
            "stability",
            "--fixture",
            "staghare",
            "--k0",
            "1",
            "--format",
            "json",
        ],
    ];
    for args in cases {
        assert_eq!(run(args), run(args), "{args:?}");
    }
    let a = run(&[
        "simulate",
        "--fixture",
        "lunch",
        "--steps",
        "2000",
        "--seed",
        "1",
    ]);
    let b = run(&[
        "simulate",
        "--fixture",
        "lunch",
        "--steps",
        "2000",
        "--seed",
        "2",
    ]);
    assert_ne!(a.1, b.1);
}

#[test]
fn fixture_listing_and_dump() {
    let (code, out, _) = run(&["fixture", "--list"]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().count(), 4);
    let (_, out, _) = run(&[
        "fixture",
        "bos",
        "--epsilon",
        "1/4",
        "--miscoordination",
        "zero",
    ]);
    let doc = coalition_core::io::parse_gamespec(&out).unwrap();
    assert_eq!(
        doc.payoffs[4].payoff[0],
        coalition_core::rational::ratio(9, 4)
    );
}
