use std::path::PathBuf;
use std::process::{Command, Output};

fn data(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "data", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gautomata")).args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).expect("json on stdout")
}

#[test]
fn accepts_exit_codes() {
    let a1 = data("a1.json");
    let yes = run(&["accepts", &a1, "aA"]);
    assert_eq!(code(&yes), 0);
    assert_eq!(json(&yes)["result"]["witness"], "e_a·e_A");
    assert_eq!(code(&run(&["accepts", &a1, "a"])), 1);
    let unknown = run(&["accepts", &a1, "aaA", "--mode", "bounded", "--max-len", "2"]);
    assert_eq!(code(&unknown), 2);
    assert_eq!(json(&unknown)["result"]["verdict"], "unknown");
    assert_eq!(code(&run(&["accepts", &a1, "ab"])), 10);
}

#[test]
fn text_output() {
    let out = run(&["accepts", &data("a2.json"), "stst", "--format", "text"]);
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "yes e_s01·e_t1·e_s10·e_t0\n");
}

#[test]
fn minimal_paths_report() {
    let v = json(&run(&["minimal-paths", &data("a1.json")]));
    assert_eq!(v["result"]["paths"], serde_json::json!(["ε"]));
    let v = json(&run(&["minimal-paths", &data("a4.json")]));
    assert_eq!(v["result"]["paths"], serde_json::json!(["f1"]));
    assert_eq!(v["result"]["completeness"]["kind"], "certified");
    assert_eq!(v["result"]["pump_constant"]["n"], 2);
}

#[test]
fn bounded_minimal_paths_are_flagged() {
    // The only minimal accepting path is x·d·d·d.
    let dir = std::env::temp_dir().join(format!("gautomata-min-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let file = dir.join("long.json");
    std::fs::write(
        &file,
        r#"{"spec": {"rank": 1}, "alphabet": ["a"], "vertices": ["p", "r"],
            "edges": [{"id": "x", "src": "p", "dst": "r", "g": [3], "sigma": "a"},
                      {"id": "d", "src": "r", "dst": "r", "g": [-1], "sigma": ""}],
            "init": "p", "ter": "r"}"#,
    )
    .unwrap();
    let file = file.to_str().unwrap();
    let v = json(&run(&["minimal-paths", file, "--mode", "bounded", "--max-len", "3"]));
    assert_eq!(v["result"]["paths"], serde_json::json!([]));
    assert_eq!(v["result"]["completeness"]["kind"], "up_to");
    assert_eq!(v["result"]["completeness"]["bound"], 3);
    assert_eq!(v["result"]["pump_constant"]["lower_bound_only"], true);
    let v = json(&run(&["minimal-paths", file]));
    assert_eq!(v["result"]["paths"], serde_json::json!(["x·d·d·d"]));
}

#[test]
fn pumpable_and_monoid() {
    let a2 = data("a2.json");
    let out = run(&["pumpable", &a2, "e_s01 e_t1 e_s10"]);
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["result"]["witness"]["alpha"], "e_t0·e_s01·e_t1·e_s10");
    assert_eq!(code(&run(&["pumpable", &data("a5.json"), "e_a"])), 1);
    let v = json(&run(&["enumerate-m", &a2, "q0", "--explore-len", "2"]));
    let members = v["result"]["members"].as_array().unwrap();
    assert!(members.iter().any(|m| m["sigma"] == "e_s01·e_s10"));
}

#[test]
fn hom_and_cosets() {
    let a2 = data("a2.json");
    let v = json(&run(&["extract-hom", &a2, "q0"]));
    assert_eq!(v["result"]["index"], 2);
    assert!(v["result"]["audit"]["pairs_checked"].as_u64().unwrap() > 0);
    let v = json(&run(&["locate-coset", &a2, "s"]));
    assert_eq!(v["result"]["h2"], "(0; s)");
    let v = json(&run(&["cover-ball", &a2, "--radius", "3"]));
    assert_eq!(v["result"]["selected"]["index"], 2);
}

#[test]
fn pipeline_reports() {
    let out = run(&["pipeline", &data("a2.json"), "--seed", "5"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["result"]["selected"]["index"], 2);
    assert_eq!(v["result"]["selected"]["p"], "q0");
    assert_eq!(v["config"]["seed"], 5);
    assert_eq!(v["version"], env!("CARGO_PKG_VERSION"));
    let again = run(&["pipeline", &data("a2.json"), "--seed", "5"]);
    assert_eq!(out.stdout, again.stdout);
    let v = json(&run(&["pipeline", &data("a1.json")]));
    assert_eq!(v["result"]["selected"]["index"], 1);
    let v = json(&run(&["pipeline", &data("a3.json"), "--radius", "0"]));
    assert_eq!(v["result"]["selected"]["index"], 1);
    let planted = run(&["pipeline", &data("planted.json")]);
    assert_eq!(code(&planted), 13);
    assert!(String::from_utf8(planted.stderr).unwrap().contains("well-definedness"));
}

#[test]
fn dot_export() {
    let out = run(&["export-dot", &data("a3.json")]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout.clone()).unwrap();
    assert_eq!(text.lines().filter(|l| l.trim_start().starts_with('"')).count(), 1);
    assert!(text.contains("doublecircle"));
    assert_eq!(run(&["export-dot", &data("a3.json")]).stdout, out.stdout);
}

#[test]
fn bad_input() {
    let dir = std::env::temp_dir().join(format!("gautomata-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.json");
    std::fs::write(&bad, "{\"spec\": {\"rank\": 1}}").unwrap();
    assert!(code(&run(&["empty", bad.to_str().unwrap()])) >= 10);
    let dangling = dir.join("dangling.json");
    std::fs::write(
        &dangling,
        r#"{"spec": {"rank": 1}, "alphabet": [], "vertices": ["q"],
            "edges": [{"id": "e", "src": "q", "dst": "r", "g": [1], "sigma": ""}],
            "init": "q", "ter": "q"}"#,
    )
    .unwrap();
    let out = run(&["empty", dangling.to_str().unwrap()]);
    assert_eq!(code(&out), 11);
    assert!(String::from_utf8(out.stderr).unwrap().contains("unknown vertex"));
    assert!(code(&run(&["empty", "/nonexistent/file.json"])) >= 10);
}
