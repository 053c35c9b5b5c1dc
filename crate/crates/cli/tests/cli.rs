use std::path::PathBuf;
use std::process::Command;

use serde_json::Value;

fn fixtures() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/fixtures")
}

fn fixture(name: &str) -> String {
    fixtures().join(name).to_string_lossy().into_owned()
}

fn text_lines(name: &str) -> Vec<String> {
    std::fs::read_to_string(fixtures().join(name))
        .unwrap()
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(String::from)
        .collect()
}

struct Run {
    code: i32,
    stdout: String,
}

fn run_env(args: &[&str], budget: Option<&str>) -> Run {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_periodic-motif"));
    cmd.args(args).env_remove("PERIODIC_MOTIF_BUDGET");
    if let Some(b) = budget {
        cmd.env("PERIODIC_MOTIF_BUDGET", b);
    }
    let out = cmd.output().unwrap();
    Run { code: out.status.code().unwrap(), stdout: String::from_utf8(out.stdout).unwrap() }
}

fn run(args: &[&str]) -> Run {
    run_env(args, None)
}

fn run_json(args: &[&str]) -> (i32, Value) {
    let mut full = vec!["--format", "json"];
    full.extend_from_slice(args);
    let r = run(&full);
    let v = serde_json::from_str(&r.stdout).unwrap_or_else(|e| panic!("{args:?}: {e}\n{}", r.stdout));
    (r.code, v)
}

#[test]
fn canon_of_t0_3_3() {
    let r = run(&["canon", "T0(3,3)"]);
    assert_eq!((r.code, r.stdout.trim()), (0, "T1(2,2)"));
}

#[test]
fn equiv_finds_the_triple_and_double_cover() {
    let (code, v) = run_json(&["equiv", "T0(3,1)", "T1(2,1)"]);
    assert_eq!(code, 0);
    assert_eq!(v["verdict"], "yes");
    assert_eq!(v["witness"]["degrees"], serde_json::json!([3, 2]));
    assert_eq!(v["witness"]["replayed"], true);
    assert!(run(&["equiv", "T0(3,1)", "T1(2,1)"]).stdout.starts_with("Yes(3,2)"));
}

#[test]
fn two_sublattices_of_index_two_plus_one() {
    let r = run(&["lattices", "2", "2"]);
    assert_eq!(r.code, 0);
    assert_eq!(r.stdout.lines().count(), 3);
    for l in r.stdout.lines() {
        assert_eq!(run(&["lattices", "2", "2"]).stdout.matches(l).count(), 1);
    }
}

#[test]
fn exit_codes_separate_no_from_unknown() {
    // differing twist signs: provably no
    assert_eq!(run(&["equiv", "T0(3,1)", "T0(3,-1)"]).code, 1);
    // one R3 apart, with no moves allowed: gave up
    let (b, c) = (fixture("motif_b.json"), fixture("motif_c.json"));
    assert_eq!(run(&["equiv", &b, &c, "--twists"]).code, 0);
    assert_eq!(run(&["equiv", &b, &c, "--twists", "--bound", "0"]).code, 2);
    assert_eq!(run_env(&["equiv", &b, &c, "--twists"], Some("depth=0")).code, 2);
    // solid-torus twists are not admissible
    assert_eq!(run(&["twist", "T0(2,1)", "--matrix", "[[1,1],[0,1]]"]).code, 1);
    assert_eq!(run(&["admissible", "M(0,0; 1/2, 1/3)", "--ambient", "T2xI"]).code, 1);
    // input errors
    assert_eq!(run(&["canon", "T9(1)"]).code, 3);
    assert_eq!(run(&["lattices", "4", "2"]).code, 3);
    assert_eq!(run(&["lift", "T2(1,0)", "--lattice", "[[1,0],[0,0]]"]).code, 3);
    assert_eq!(run(&["nosuch"]).code, 3);
    assert_eq!(run_env(&["equiv", &b, &c], Some("depth=many")).code, 3);
    assert_eq!(run(&["--help"]).code, 0);
}

#[test]
fn invalid_diagrams_are_input_errors() {
    let dir = std::env::temp_dir().join(format!("periodic-motif-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.json");
    std::fs::write(&bad, r#"{"crossings":[{"over":[0,2]}],"edges":[{"from":[0,0],"to":[0,1],"disp":[0,0]}],"loops":[]}"#).unwrap();
    let (code, v) = run_json(&["invariants", bad.to_str().unwrap()]);
    assert_eq!(code, 3);
    assert!(v["error"]["kind"] == "invalid_diagram" || v["error"]["kind"] == "parse", "{v}");
}

#[test]
fn printed_values_parse_back() {
    for link in text_lines("links.txt") {
        let once = run(&["canon", &link]).stdout.trim().to_string();
        assert_eq!(run(&["canon", &once]).stdout.trim(), once);
        let up = run(&["lift", &link, "--lattice", "[[3]]"]).stdout.trim().to_string();
        assert_eq!(run(&["canon", &up]).stdout.trim(), up);
    }
    for d in text_lines("descriptors.txt") {
        let once = run(&["canon", &d]).stdout.trim().to_string();
        assert_eq!(run(&["canon", &once]).stdout.trim(), once, "{d}");
    }
    for dim in ["1", "2", "3"] {
        for l in run(&["lattices", dim, "4"]).stdout.lines() {
            let r = run(&["lattices", dim, "4"]);
            assert!(r.stdout.lines().any(|x| x == l));
            // a printed lattice is accepted as a cover
            let input = ["[[1]]", "T2(1,0)", "T3(1,0,0)"][dim.parse::<usize>().unwrap() - 1];
            let input = if dim == "1" { "T0(2,1)" } else { input };
            assert_eq!(run(&["lift", input, "--lattice", l]).code, 0, "{l}");
        }
    }
}

#[test]
fn json_output_matches_the_schema() {
    let schema_path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../schema/cli-output.schema.json");
    let schema: Value = serde_json::from_str(&std::fs::read_to_string(schema_path).unwrap()).unwrap();
    let validator = jsonschema::validator_for(&schema).unwrap();
    let mut calls: Vec<Vec<String>> = Vec::new();
    let mut add = |args: &[&str]| calls.push(args.iter().map(|s| s.to_string()).collect());

    let diagrams = [
        "motif_a.json",
        "motif_b.json",
        "motif_c.json",
        "motif_d.json",
        "motif_e.json",
        "strand_3_4.json",
        "parallel_a.json",
        "parallel_b.json",
        "weave_a.json",
        "weave_b.json",
    ];
    for d in diagrams.map(fixture) {
        add(&["canon", &d]);
        add(&["invariants", &d]);
        add(&["dot", &d]);
        add(&["lift", &d, "--lattice", "[[2,0],[0,1]]"]);
        add(&["twist", &d, "--matrix", "[[1,1],[0,1]]"]);
        add(&["minimal", &d]);
    }
    let pairs: Value = serde_json::from_str(&std::fs::read_to_string(fixtures().join("pairs.json")).unwrap()).unwrap();
    for p in pairs.as_array().unwrap() {
        let (l, r) = (fixture(p["left"].as_str().unwrap()), fixture(p["right"].as_str().unwrap()));
        if p["twists"] == true {
            add(&["equiv", &l, &r, "--twists"]);
        } else {
            add(&["equiv", &l, &r]);
        }
    }
    add(&["equiv", &fixture("motif_b.json"), &fixture("motif_c.json"), "--twists", "--bound", "0"]);
    let links = text_lines("links.txt");
    for a in &links {
        add(&["canon", a]);
        add(&["minimal", a]);
        add(&["bound", a]);
        add(&["lift", a, "--lattice", "[[2]]"]);
        add(&["twist", a, "--matrix", "[[1]]"]);
        for b in &links {
            add(&["equiv", a, b]);
        }
    }
    add(&["equiv", "T2(2,4)", "T2(0,3)"]);
    add(&["equiv", "T3(1,2,0)", "T3(0,0,4)"]);
    add(&["twist", "T2(2,1)", "--matrix", "[[1,1],[0,1]]"]);
    let descriptors = text_lines("descriptors.txt");
    for a in &descriptors {
        add(&["canon", a]);
        add(&["minimal", a]);
        add(&["bound", a]);
        add(&["lift", a, "--lattice", "[[1,0],[0,2]]"]);
        for b in &descriptors {
            add(&["equiv", a, b]);
        }
    }
    for dim in ["1", "2", "3"] {
        for n in ["1", "2", "3", "4"] {
            add(&["lattices", dim, n]);
        }
    }
    add(&["admissible", "M(0,1; 1/2, 1/3)", "--ambient", "S1xD2"]);
    add(&["admissible", "M(0,0; 1/2, 1/3)", "--ambient", "T3"]);
    // errors share one shape
    add(&["canon", "T9(1)"]);
    add(&["lift", "T2(1,0)", "--lattice", "[[1,0],[0,0]]"]);
    add(&["equiv", "T0(2,1)", &fixture("motif_a.json")]);

    let mut seen = std::collections::BTreeSet::new();
    for args in &calls {
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let (code, v) = run_json(&args);
        assert!(code <= 3);
        let errors: Vec<String> = validator.iter_errors(&v).map(|e| format!("{e} at {}", e.instance_path)).collect();
        assert!(errors.is_empty(), "{args:?}:\n{}\n{v:#}", errors.join("\n"));
        assert_eq!(v["command"], args[0]);
        seen.insert(args[0].to_string());
    }
    assert_eq!(seen.len(), 10, "{seen:?}");
}
