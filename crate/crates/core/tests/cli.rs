use std::path::Path;
use std::process::Command;

use mcb_core::cli;
use mcb_core::descriptor::Descriptor;
use serde_json::Value;

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = cli::run(std::iter::once("mcbw").chain(args.iter().copied()), &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn json(args: &[&str]) -> Value {
    let (code, out, err) = run(args);
    assert_eq!(code, 0, "{args:?}: {err}");
    serde_json::from_str(&out).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn profile_of_u23() {
    let dir = tempfile::tempdir().unwrap();
    let u23 = write(dir.path(), "u23.json", r#"{"type":"uniform","r":2,"n":3}"#);
    let v = json(&["mcb", "profile", "--input", &u23]);
    assert_eq!(v["min_failure_degree"], 2);
    let check = json(&["mcb", "check", "--degree", "1", "--input", &u23]);
    assert_eq!(check["holds"], true);
}

#[test]
fn chow_hilbert_of_b3() {
    let dir = tempfile::tempdir().unwrap();
    let b3 = write(dir.path(), "b3.json", r#"{"type":"flats","n":3,"flats":[[],[1],[2],[3],[1,2],[1,3],[2,3],[1,2,3]]}"#);
    let v = json(&["chow", "hilbert", "--input", &b3, "--oracle"]);
    assert_eq!(v["coefficients"], serde_json::json!([1, 4, 1]));
    assert_eq!(v["oracle"]["agrees"], true);
    let basis = json(&["chow", "basis", "--input", &b3, "--degree", "1"]);
    assert_eq!(basis["count"], 4);
}

#[test]
fn emitted_descriptors_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    for args in [
        vec!["catalog", "show", "--name", "fano"],
        vec!["paving", "random", "--n", "8", "--m", "2", "--seed", "5"],
        vec!["bset", "closure", "--input", "PLACEHOLDER"],
    ] {
        let args: Vec<String> = args
            .into_iter()
            .map(|a| {
                if a == "PLACEHOLDER" {
                    write(dir.path(), "raw.json", r#"{"type":"building_set","n":4,"members":[[1,2],[2,3],[3,4]]}"#)
                } else {
                    a.to_string()
                }
            })
            .collect();
        let refs: Vec<&str> = args.iter().map(String::as_str).collect();
        let (code, out, err) = run(&refs);
        assert_eq!(code, 0, "{err}");
        let d = Descriptor::from_json(&out).unwrap();
        assert_eq!(serde_json::from_str::<Value>(&d.to_json()).unwrap(), serde_json::from_str::<Value>(&out).unwrap());
        let path = write(dir.path(), "emitted.json", &out);
        let (code, _, err) = run(&["mcb", "profile", "--input", &path]);
        assert_eq!(code, 0, "{err}");
    }
}

#[test]
fn every_json_report_parses() {
    let dir = tempfile::tempdir().unwrap();
    let (_, fano, _) = run(&["catalog", "show", "--name", "fano"]);
    let fano = write(dir.path(), "fano.json", &fano);
    let (_, six, _) = run(&["catalog", "show", "--name", "paving6_two_triples"]);
    let six = write(dir.path(), "six.json", &six);
    let (_, lines, _) = run(&["catalog", "show", "--name", "three_modular(4)"]);
    let lines = write(dir.path(), "lines.json", &lines);
    let (_, bs, _) = run(&["catalog", "show", "--name", "bs_all_3"]);
    let bs = write(dir.path(), "bs.json", &bs);
    let (_, planes, _) = run(&["catalog", "show", "--name", "coordinate_planes"]);
    let planes = write(dir.path(), "planes.json", &planes);
    let cases: Vec<Vec<&str>> = vec![
        vec!["mcb", "cover", "--input", &fano],
        vec!["paving", "validate", "--input", &fano],
        vec!["paving", "cover", "--input", &fano],
        vec!["paving", "bounds", "--input", &fano, "--k", "7", "--c", "2"],
        vec!["chow", "annihilator", "--input", &six, "--flat", "1,2,3"],
        vec!["arr", "matroid", "--input", &lines],
        vec!["arr", "tvector", "--input", &lines],
        vec!["arr", "supersolvable", "--input", &lines],
        vec!["arr", "regions", "--input", &planes],
        vec!["arr", "hh", "--kind", "two-modular", "--a", "2", "--b", "3"],
        vec!["arr", "hh", "--kind", "four-modular"],
        vec!["bset", "mcb", "--input", &bs],
        vec!["bset", "mcb", "--input", &bs, "--degree", "1"],
        vec!["bset", "predicate", "--input", &bs],
        vec!["bset", "components", "--input", &bs],
        vec!["catalog", "list"],
        vec!["claims", "list"],
    ];
    for args in cases {
        let v = json(&args);
        assert!(!v.is_null(), "{args:?}");
        let (code, tsv, _) = run(&[args.as_slice(), &["--format", "tsv"]].concat());
        assert_eq!(code, 0);
        assert!(!tsv.is_empty());
    }
    assert_eq!(json(&["arr", "regions", "--input", &planes])["geometric"], 8);
    assert_eq!(json(&["arr", "supersolvable", "--input", &lines])["supersolvable"], true);
    assert_eq!(json(&["bset", "predicate", "--input", &bs])["holds"], true);
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(run(&[]).0, 2);
    assert_eq!(run(&["mcb", "check", "--input", "x.json"]).0, 2);
    assert_eq!(run(&["mcb", "profile", "--input", "/nonexistent/file.json"]).0, 1);
    let bad = write(dir.path(), "bad.json", r#"{"type":"flats","n":3,"flats":[[],[1],[2]]}"#);
    let (code, _, err) = run(&["mcb", "profile", "--input", &bad]);
    assert_eq!(code, 1);
    assert!(err.starts_with("error:"));
    let not_paving = write(dir.path(), "u.json", r#"{"type":"uniform","r":2,"n":4}"#);
    assert_eq!(run(&["paving", "validate", "--input", &not_paving]).0, 1);
    let overlap = write(dir.path(), "o.json", r#"{"type":"paving","n":4,"m":2,"blocks":[[1,2,3],[1,2,4],[3,4]]}"#);
    assert_eq!(run(&["paving", "validate", "--input", &overlap]).0, 1);
    assert_eq!(run(&["claims", "run", "--only", "C42"]).0, 1);
    assert_eq!(run(&["catalog", "show", "--name", "nope"]).0, 1);
}

#[test]
fn output_file_and_binary_determinism() {
    let dir = tempfile::tempdir().unwrap();
    let exe = env!("CARGO_BIN_EXE_mcbw");
    let mut bodies = Vec::new();
    for i in 0..2 {
        let path = dir.path().join(format!("claims{i}.json"));
        let status = Command::new(exe)
            .args(["claims", "run", "--only", "C6,C8,C12", "--seed", "0", "--output"])
            .arg(&path)
            .status()
            .unwrap();
        assert!(status.success());
        bodies.push(std::fs::read(&path).unwrap());
    }
    assert_eq!(bodies[0], bodies[1]);
    let report: Value = serde_json::from_slice(&bodies[0]).unwrap();
    let ids: Vec<&str> = report["claims"].as_array().unwrap().iter().map(|c| c["id"].as_str().unwrap()).collect();
    assert_eq!(ids, ["C6", "C8", "C12"]);

    let out = Command::new(exe).args(["claims", "run", "--only", "C12", "--format", "tsv"]).output().unwrap();
    let text = String::from_utf8(out.stdout).unwrap();
    let rows = text.lines().count() - 1;
    assert_eq!(rows as u64, report["claims"][2]["instances"].as_u64().unwrap());
    assert!(text.lines().skip(1).all(|l| l.split('\t').count() == 5));
}
