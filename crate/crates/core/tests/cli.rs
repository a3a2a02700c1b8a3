use std::path::PathBuf;
use std::process::{Command, Output};

use bounded_paths::MPoly;

const BASKETBALL: &str = "0:0,1:t1,-1:t1,2:t2,-2:t2";

fn bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bounded-paths"))
        .args(args)
        .env_remove("BOUNDED_PATHS_MAX_DEGREE")
        .output()
        .unwrap()
}

fn golden(name: &str) -> String {
    let path: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "golden", name]
        .iter()
        .collect();
    std::fs::read_to_string(path).unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).unwrap()
}

#[test]
fn golden_outputs() {
    let cases: [(&[&str], &str); 4] = [
        (&["fk", "--steps", "1:t,-1:t", "--kmax", "4"], "dyck_fk.txt"),
        (
            &["recurrence", "--steps", BASKETBALL],
            "basketball_recurrence.txt",
        ),
        (
            &[
                "meander", "--steps", BASKETBALL, "--kmax", "2", "--output", "json",
            ],
            "basketball_meander.json",
        ),
        (&["graph", "--steps", BASKETBALL], "basketball_transfer.dot"),
    ];
    for (args, file) in cases {
        let out = bin(args);
        assert_eq!(out.status.code(), Some(0), "{args:?}");
        assert_eq!(stdout(&out), golden(file), "{file}");
    }
}

#[test]
fn json_schema_and_round_trip() {
    let out = bin(&[
        "meander", "--steps", "1:x,-2:y", "--kmax", "3", "--output", "json", "--reduce",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let keys = [
        "\"steps\"",
        "\"command\"",
        "\"polynomials\"",
        "\"verdicts\"",
    ];
    let positions: Vec<usize> = keys.iter().map(|k| text.find(k).unwrap()).collect();
    assert!(positions.windows(2).all(|w| w[0] < w[1]));
    let v = json(&out);
    assert_eq!(v["command"], "meander");
    assert_eq!(v["verdicts"], serde_json::json!([]));
    for (name, value) in v["polynomials"].as_object().unwrap() {
        let s = value.as_str().unwrap();
        let p: MPoly = s.parse().unwrap_or_else(|e| panic!("{name}: {e}"));
        assert_eq!(p.to_string(), s, "{name}");
    }
}

#[test]
fn fk_json_names() {
    let v = json(&bin(&[
        "fk", "--steps", "1:t,-1:t", "--kmax", "3", "--output", "json",
    ]));
    assert_eq!(v["polynomials"]["F_2"], "1 - t^2");
    assert_eq!(v["steps"], "1:t,-1:t");
}

#[test]
fn verify_flags() {
    for args in [
        &["fk", "--steps", BASKETBALL, "--kmax", "6", "--verify"][..],
        &["recurrence", "--steps", "1:x,-2:y", "--verify"],
        &["meander", "--steps", "3:r,-1:s", "--kmax", "4", "--verify"],
        &[
            "symmetric",
            "--steps",
            "2:p,1:q,-1:q,-2:p",
            "--kmax",
            "6",
            "--verify",
        ],
        &[
            "series", "--steps", BASKETBALL, "--k", "2", "--l", "1", "--nmax", "6",
        ],
        &[
            "series",
            "--steps",
            "0:w0,1:t,-1:t",
            "--k",
            "3",
            "--meanders",
        ],
        &[
            "graph", "--steps", BASKETBALL, "--kind", "meander", "--verify",
        ],
    ] {
        let out = bin(args);
        assert_eq!(
            out.status.code(),
            Some(0),
            "{args:?}: {}",
            String::from_utf8_lossy(&out.stderr)
        );
        assert!(!stdout(&out).contains("FAILS"), "{args:?}");
    }
}

#[test]
fn height_zero_series() {
    let out = bin(&[
        "series", "--steps", "1:t,-1:t", "--k", "0", "--nmax", "5", "--verify", "--output", "json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["polynomials"]["degree_0"], "1");
    for d in 1..=5 {
        assert_eq!(v["polynomials"][format!("degree_{d}")], "0");
    }
    assert_eq!(v["verdicts"][0]["holds"], true);
}

#[test]
fn symmetric_product_verdict() {
    let v = json(&bin(&[
        "symmetric",
        "--steps",
        "1:t,-1:t",
        "--kmax",
        "4",
        "--output",
        "json",
    ]));
    let verdicts = v["verdicts"].as_array().unwrap();
    assert!(verdicts
        .iter()
        .any(|x| x["identity"] == "F_plus_times_F_minus_equals_F" && x["holds"] == true));
}

#[test]
fn invalid_input_exits_with_two() {
    for args in [
        &["fk", "--steps", "1:t,-1:"][..],
        &["fk", "--steps", "2:t,1:u"],
        &["symmetric", "--steps", "1:x,-2:y"],
        &["series", "--steps", "1:t,-1:t", "--k", "2", "--l", "3"],
        &["fk", "--steps", "1:t,-1:t", "--output", "dot"],
        &["fk"],
    ] {
        let out = bin(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(out.stdout.is_empty(), "{args:?}");
        assert!(!out.stderr.is_empty(), "{args:?}");
    }
}

#[test]
fn degree_cap_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_bounded-paths"))
        .args([
            "series", "--steps", "1:t,-1:t", "--k", "3", "--nmax", "9", "--output", "json",
        ])
        .env("BOUNDED_PATHS_MAX_DEGREE", "4")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let polys = v["polynomials"].as_object().unwrap();
    assert_eq!(polys.len(), 5);
    assert_eq!(polys["degree_4"], "2*t^4");
}
