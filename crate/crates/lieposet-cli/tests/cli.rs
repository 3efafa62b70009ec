use serde_json::Value;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

const P112: &str = r#"{"n":4,"covers":[[1,2],[2,3],[2,4]]}"#;
const P211: &str = r#"{"n":4,"covers":[[1,3],[2,3],[3,4]]}"#;
const HEXAGON: &str =
    r#"{"n":3,"covers":[[-1,2],[-1,3],[-2,1],[-2,3],[-3,1],[-3,2]],"variant":"C"}"#;
const EMPTY5: &str = r#"{"n":5,"covers":[]}"#;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lieposet")).args(args).output().expect("binary runs")
}

fn json_of(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| {
        panic!("stdout is not JSON ({e}): {}", String::from_utf8_lossy(&o.stdout))
    })
}

fn schema_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("schemas")
}

fn assert_valid(schema: &str, v: &Value) {
    let path = schema_dir().join(format!("{schema}.schema.json"));
    let s: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let compiled = jsonschema::JSONSchema::compile(&s).expect("schema compiles");
    if let Err(errors) = compiled.validate(v) {
        let msgs: Vec<String> = errors.map(|e| format!("{e} at {}", e.instance_path)).collect();
        panic!("{schema} output invalid: {msgs:?}\n{v}");
    };
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_string_lossy().into_owned()
}

#[test]
fn index_of_frobenius_block() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(dir.path(), "p112.json", P112);
    let o = run(&["index", "--poset", &p, "--seed", "7"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json_of(&o);
    assert_eq!(v["status"], "exact");
    assert_eq!(v["index"], 0);
    assert_valid("index", &v);
}

#[test]
fn index_of_antichain() {
    let o = run(&["index", "--poset", EMPTY5, "--seed", "1"]);
    assert_eq!(json_of(&o)["index"], 4);
}

#[test]
fn homology_of_hexagon() {
    let o = run(&["homology", "--poset", HEXAGON]);
    let v = json_of(&o);
    assert_eq!(v["betti"], serde_json::json!([1, 1, 0]));
    assert_valid("homology", &v);
}

#[test]
fn hexagon_variants() {
    for (variant, frob) in [("A", false), ("B", true), ("C", true), ("D", true)] {
        let o = run(&["frobenius", "--poset", HEXAGON, "--variant", variant, "--seed", "4"]);
        assert_eq!(o.status.code(), Some(0));
        let v = json_of(&o);
        assert_valid("frobenius", &v);
        let want = if frob { "frobenius" } else { "not_frobenius" };
        assert_eq!(v["verdict"], want, "variant {variant}");
    }
}

#[test]
fn validation_errors_exit_two() {
    let cyc = r#"{"n":2,"covers":[[1,2],[2,1]]}"#;
    let o = run(&["index", "--poset", cyc, "--seed", "1"]);
    assert_eq!(o.status.code(), Some(2));
    let err: Value = serde_json::from_slice(&o.stderr).unwrap();
    assert!(err["error"].as_str().unwrap().contains("cycle"));
    assert_valid("error", &err);

    let o = run(&["index", "--poset", "{not json", "--seed", "1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("malformed JSON"));

    let o = run(&["index", "--poset", r#"{"n":2,"covers":[[1,3]]}"#, "--seed", "1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("out of range"));

    let o = run(&["index", "--poset", P112, "--variant", "C", "--seed", "1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("signed poset"));

    let o = run(&["classify", "--poset", r#"{"n":4,"covers":[[1,2],[2,3],[3,4]]}"#]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("height"));
}

#[test]
fn seed_is_required_for_sampling() {
    let o = run(&["index", "--poset", P112]);
    assert_ne!(o.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&o.stderr).contains("--seed"));
}

#[test]
fn classify_reports_conditions() {
    let o = run(&["classify", "--poset", P112]);
    let v = json_of(&o);
    assert_eq!(v["frobenius"], true);
    assert_eq!(v["method"], "four_conditions");
    assert_valid("classify", &v);
    let o = run(&["classify", "--poset", r#"{"n":4,"covers":[[1,3],[1,4],[2,3],[2,4]]}"#]);
    let v = json_of(&o);
    assert_eq!(v["frobenius"], false);
    assert_valid("classify", &v);
}

#[test]
fn spectrum_of_p211() {
    let o = run(&["spectrum", "--poset", P211, "--seed", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json_of(&o);
    assert_valid("spectrum", &v);
    assert_eq!(v["spectrum"], serde_json::json!([[0, 1, 4], [1, 1, 4]]));
    assert_eq!(v["residual_zero"], true);
    let diag: Vec<&str> =
        (0..4).map(|i| v["principal_element"]["matrix"][i][i].as_str().unwrap()).collect();
    assert_eq!(diag, ["1/2", "1/2", "-1/2", "-1/2"]);
    let o = run(&["spectrum", "--poset", EMPTY5, "--seed", "3"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn morse_example_and_traces() {
    let v = json_of(&run(&["morse", "--example"]));
    assert_valid("morse", &v);
    assert_eq!(v["critical"], serde_json::json!([[1]]));

    let g = json_of(&run(&["generate", "--blocks", "2"]));
    assert_valid("generate", &g);
    for item in g["posets"].as_array().unwrap() {
        assert_valid("trace", &item["trace"]);
        let t = item["trace"].to_string();
        let v = json_of(&run(&["morse", "--trace", &t]));
        assert_valid("morse", &v);
        assert_eq!(v["is_morse"], true);
        assert_eq!(v["critical"].as_array().unwrap().len(), 1);
    }

    // hand-supplied constant values on an edge
    let vals = r#"[[[1],0],[[2],0],[[1,2],0]]"#;
    let v = json_of(&run(&["morse", "--poset", r#"{"n":2,"covers":[[1,2]]}"#, "--values", vals]));
    assert_eq!(v["is_morse"], false);
    assert_valid("morse", &v);
}

#[test]
fn generate_rejects_raising_rules_without_exploratory() {
    let o = run(&["generate", "--blocks", "2", "--rules", "B"]);
    assert_eq!(o.status.code(), Some(2));
    let o = run(&["generate", "--blocks", "2", "--rules", "B,H", "--exploratory"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json_of(&o);
    for item in v["posets"].as_array().unwrap() {
        assert_eq!(item["predicted_index"], item["formula_index"]);
    }
}

#[test]
fn sweep_writes_valid_atlas_and_is_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.jsonl");
    let b = dir.path().join("b.jsonl");
    for path in [&a, &b] {
        let o = run(&["sweep", "--n-max", "4", "--seed", "5", "--out", path.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0));
        let v = json_of(&o);
        assert_valid("sweep", &v);
        assert_eq!(v["passed"], true);
    }
    let (ta, tb) = (std::fs::read_to_string(&a).unwrap(), std::fs::read_to_string(&b).unwrap());
    assert_eq!(ta, tb);
    assert_eq!(ta.lines().count(), 24);
    for line in ta.lines() {
        assert_valid("atlas-record", &serde_json::from_str(line).unwrap());
    }
}

#[test]
fn identical_invocations_give_identical_bytes() {
    let args = ["index", "--poset", HEXAGON, "--seed", "9", "--trials", "3"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
    let args = ["spectrum", "--poset", P112, "--seed", "9"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
}

#[test]
fn thread_cap_does_not_change_output() {
    let args = ["sweep", "--n-max", "4", "--seed", "2", "--checks", "formulas"];
    let one = Command::new(env!("CARGO_BIN_EXE_lieposet"))
        .args(args)
        .env("LIEPOSET_THREADS", "1")
        .output()
        .unwrap();
    assert_eq!(one.stdout, run(&args).stdout);
}

#[test]
fn out_and_pretty() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.json");
    let o = run(&["index", "--poset", P112, "--seed", "1", "--pretty", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let text = std::fs::read_to_string(&out).unwrap();
    assert!(text.contains("\n  \"certificate\""));
    assert_valid("index", &serde_json::from_str(&text).unwrap());
}

#[test]
fn poset_inputs_match_schema() {
    let s: Value = serde_json::from_str(
        &std::fs::read_to_string(schema_dir().join("poset.schema.json")).unwrap(),
    )
    .unwrap();
    let compiled = jsonschema::JSONSchema::compile(&s).unwrap();
    for p in [P112, P211, HEXAGON, EMPTY5] {
        assert!(compiled.is_valid(&serde_json::from_str(p).unwrap()), "{p}");
    }
}
