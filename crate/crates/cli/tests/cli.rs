use std::process::{Command, Output};

use serde_json::Value;

fn idealforge(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_idealforge"))
        .args(args)
        .arg("--quiet")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("json report")
}

fn status<'a>(report: &'a Value, id: &str) -> &'a str {
    report["claims"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["id"] == id)
        .unwrap_or_else(|| panic!("no claim {id}"))["status"]
        .as_str()
        .unwrap()
}

fn without_timings(mut v: Value) -> String {
    v.as_object_mut().unwrap().remove("timings");
    v.to_string()
}

#[test]
fn gamma_of_hexagon() {
    let out = idealforge(&["gamma", "ngon", "--n", "6"]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!(r["gamma"]["ngon6"]["gamma1"], 3);
    for key in [
        "config", "mode", "claims", "gamma", "design", "counts", "timings",
    ] {
        assert!(r.get(key).is_some(), "missing {key}");
    }
}

#[test]
fn verify_e8_full() {
    let out = idealforge(&["verify", "e8", "--full"]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!(r["mode"], "full");
    for id in ["thmE8.i", "thmE8.ii", "thmE8.iii", "thmE8.iv"] {
        assert_eq!(status(&r, id), "pass", "{id}");
    }
    assert_eq!(r["certificate"], "PAPER_CERTIFICATE");
}

#[test]
fn leech_sampled_is_labelled_and_reproducible() {
    let args = [
        "verify",
        "leech",
        "--sampled",
        "--seed",
        "7",
        "--threads",
        "8",
    ];
    let a = idealforge(&args);
    assert_eq!(
        a.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&a.stderr)
    );
    let b = idealforge(&args);
    let (ra, rb) = (json(&a), json(&b));
    assert_eq!(ra["mode"], "sampled");
    assert_eq!(status(&ra, "thmLeech.i.vanishing"), "pass");
    let vanishing = ra["claims"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["id"] == "thmLeech.i.vanishing")
        .unwrap();
    assert_eq!(vanishing["mode"], "sampled");
    assert_eq!(ra["gamma"]["leech"]["gamma1"], 6);
    assert_eq!(without_timings(ra), without_timings(rb));
}

#[test]
fn corrupted_point_file_fails_checks() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("e8.txt");
    let built = idealforge(&["build", "e8", "--points-out", path.to_str().unwrap()]);
    assert_eq!(built.status.code(), Some(0));
    let text = std::fs::read_to_string(&path).unwrap();
    let clean = idealforge(&["verify", "e8", "--points", path.to_str().unwrap()]);
    assert_eq!(clean.status.code(), Some(0));

    let mut lines: Vec<String> = text.lines().map(String::from).collect();
    let mut row: Vec<i64> = lines[5]
        .split_whitespace()
        .map(|t| t.parse().unwrap())
        .collect();
    row[0] += 1;
    lines[5] = row.iter().map(i64::to_string).collect::<Vec<_>>().join(" ");
    std::fs::write(&path, lines.join("\n")).unwrap();
    let out = idealforge(&["verify", "e8", "--points", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let r = json(&out);
    assert_eq!(status(&r, "thmE8.i.vanishing"), "fail");
    let claim = r["claims"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["id"] == "thmE8.i.vanishing")
        .unwrap();
    assert!(claim["witness"].as_str().unwrap().contains(" at ("));
}

#[test]
fn usage_and_resource_codes() {
    assert_eq!(idealforge(&["verify", "d4"]).status.code(), Some(64));
    assert_eq!(
        idealforge(&["verify", "e8", "--format", "yaml"])
            .status
            .code(),
        Some(64)
    );
    assert_eq!(
        idealforge(&["enumerate", "icosahedron"]).status.code(),
        Some(64)
    );
    assert_eq!(
        idealforge(&["groebner", "icosahedron", "--budget", "3"])
            .status
            .code(),
        Some(3)
    );
}

#[test]
fn groebner_and_text_output() {
    let dir = tempfile::tempdir().unwrap();
    let basis = dir.path().join("basis.txt");
    let out = idealforge(&[
        "groebner",
        "knn",
        "--n",
        "3",
        "--basis-out",
        basis.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!(
        r["groebner"]["knn3"]["by_degree"],
        serde_json::json!([1, 4, 1])
    );
    assert!(!std::fs::read_to_string(&basis).unwrap().is_empty());
    let text = idealforge(&["verify", "icosahedron", "--format", "text"]);
    let s = String::from_utf8(text.stdout).unwrap();
    assert!(s.contains("groebner icosahedron: FULL_GROEBNER"));
}
