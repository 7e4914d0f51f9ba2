use jsonschema::JSONSchema;
use serde_json::{json, Value};
use std::path::Path;
use std::process::{Command, Output};

fn powseq(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_powseq"))
        .args(args)
        .env_remove("POWSEQ_MAX_PRECISION")
        .output()
        .expect("binary runs")
}

fn stdout_json(out: &Output) -> Value {
    assert_eq!(out.status.code(), Some(0), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn rat(num: &str, den: &str) -> Value {
    json!({"num": num, "den": den})
}

fn schema() -> JSONSchema {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("schema/output.schema.json");
    let text = std::fs::read_to_string(path).expect("schema file");
    let doc: Value = serde_json::from_str(&text).expect("schema is JSON");
    JSONSchema::compile(&doc).expect("schema compiles")
}

#[test]
fn waring_five() {
    let doc = stdout_json(&powseq(&["waring", "--k", "5"]));
    assert_eq!(doc["command"], "waring");
    let r = &doc["result"];
    assert_eq!(r["g"], 37);
    assert_eq!(r["condition_holds"], true);
    assert_eq!(r["distance"], rat("13", "32"));
    assert_eq!(r["threshold"], rat("243", "1024"));
    assert_eq!(doc["manifest"]["params"]["k"], "5");
}

#[test]
fn waring_six_and_failed_condition() {
    let doc = stdout_json(&powseq(&["waring", "--k", "6"]));
    assert_eq!(doc["result"]["g"], 73);
    let doc = stdout_json(&powseq(&["waring", "--k", "7"]));
    assert_eq!(doc["result"]["condition_holds"], false);
    assert_eq!(doc["result"]["g"], Value::Null);
}

#[test]
fn waring_small_k_is_domain_error() {
    let out = powseq(&["waring", "--k", "4"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("KTooSmall"));
    assert!(out.stdout.is_empty());
}

#[test]
fn classify_golden_ratio_is_pv() {
    // constant term first: -1 - X + X^2
    let doc = stdout_json(&powseq(&["classify", "--poly=-1,-1,1"]));
    assert_eq!(doc["result"]["kind"], "PV");
    let doc = stdout_json(&powseq(&["classify", "--poly=1,-1,-1,-1,1"]));
    assert_eq!(doc["result"]["kind"], "Salem");
    let out = powseq(&["classify", "--poly", "1,-1,-1"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("NotMonic"));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(powseq(&["no-such-command"]).status.code(), Some(2));
    assert_eq!(powseq(&["waring"]).status.code(), Some(2));
    assert_eq!(powseq(&["classify", "--poly", "1,x"]).status.code(), Some(2));
    assert_eq!(powseq(&["--format", "csv", "waring", "--k", "5"]).status.code(), Some(2));
    assert_eq!(powseq(&["--precision", "256", "--max-precision", "64", "waring", "--k", "5"]).status.code(), Some(2));
}

#[test]
fn undecidable_floor_exits_three() {
    let args = ["--precision", "2", "--max-precision", "4", "targets", "--multiples=sqrt(2)", "--n", "1000"];
    let out = powseq(&args);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("could not be decided"));
    // the same request succeeds once escalation may go further
    let out = powseq(&["--precision", "2", "targets", "--multiples=sqrt(2)", "--n", "1000"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn env_var_caps_precision() {
    let args = ["--precision", "2", "targets", "--multiples=sqrt(2)", "--n", "1000"];
    let bin = env!("CARGO_BIN_EXE_powseq");
    let out = Command::new(bin).args(args).env("POWSEQ_MAX_PRECISION", "4").output().unwrap();
    assert_eq!(out.status.code(), Some(3));
    let out = Command::new(bin).env("POWSEQ_MAX_PRECISION", "4096").args(["waring", "--k", "5"]).output().unwrap();
    let doc: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["manifest"]["precision"]["max_bits"], 4096);
    let out = Command::new(bin).env("POWSEQ_MAX_PRECISION", "lots").args(["waring", "--k", "5"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    // an explicit flag wins over the environment
    let out = Command::new(bin)
        .env("POWSEQ_MAX_PRECISION", "4")
        .args(["--max-precision", "4096"])
        .args(args)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn csv_sequence_output() {
    let out = powseq(&["--format", "csv", "recur", "--values", "2,1,3,4,7,11", "--max-order", "2", "--back", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let mut rd = csv::Reader::from_reader(out.stdout.as_slice());
    assert_eq!(rd.headers().unwrap(), vec!["n", "value"]);
    let rows: Vec<(i64, String)> = rd
        .records()
        .map(|r| {
            let r = r.unwrap();
            (r[0].parse().unwrap(), r[1].to_string())
        })
        .collect();
    let want = [(-2, "3/1"), (-1, "-1/1"), (0, "2/1"), (1, "1/1"), (5, "11/1")];
    for (n, v) in want {
        assert!(rows.contains(&(n, v.to_string())), "missing row {n},{v}");
    }
    assert_eq!(rows.len(), 8);
}

#[test]
fn emit_table_attaches_residues() {
    let doc = stdout_json(&powseq(&["--emit-table", "pv-residues", "--poly=-1,-1,1", "--n-max", "12"]));
    let t = &doc["table"];
    assert_eq!(t["columns"][0], "n");
    assert_eq!(t["rows"].as_array().unwrap().len(), 13);
    let doc = stdout_json(&powseq(&["pv-residues", "--poly=-1,-1,1", "--n-max", "12"]));
    assert!(doc.get("table").is_none());
}

#[test]
fn outputs_match_schema() {
    let schema = schema();
    let runs: &[&[&str]] = &[
        &["waring", "--k", "5"],
        &["waring", "--k", "7"],
        &["--emit-table", "classify", "--poly=1,-1,-1,-1,1"],
        &["--emit-table", "synth-alpha", "--a", "3", "--multiples=sqrt(2)", "--n", "30"],
        &["synth-lambda", "--alpha", "3", "--l", "1", "--targets", "1/2", "--n", "5", "--variant", "one-sided"],
        &["targets", "--multiples=sqrt(2)", "--n", "5"],
        &["boyd", "--a", "4", "--b", "5", "--a0", "2", "--a1", "9", "--n", "10"],
        &["--emit-table", "pv-residues", "--poly=-1,-1,1", "--n-max", "20"],
        &["--emit-table", "ud-stats", "--values", "1/3,1/5,2/7"],
        &["ud-stats", "--multiples=1/2+1/2sqrt(5)", "--count", "200", "--h", "1,2"],
        &["recur", "--values", "2,1,3,4,7,11", "--max-order", "2", "--back", "2"],
        &["fatou", "--p", "2,2", "--q", "2,-4"],
        &["padic", "--values", "1,3/2,9/4,27/8,81/16", "--p", "2", "--max-order", "2"],
        &["newton", "--poly", "1/4,1,2", "--p", "2"],
        &["--emit-table", "growth", "--values", "1,3/2,9/4,27/8,81/16,243/32,729/64,2187/128", "--p", "2"],
        &["recover", "--values", "2,1,3,4,7,11", "--roots", "1/2+1/2sqrt(5):1;1/2-1/2sqrt(5):1"],
        &["detect-pv", "--alpha=1/2+1/2sqrt(5)"],
    ];
    for args in runs {
        let doc = stdout_json(&powseq(args));
        let msgs: Vec<String> = match schema.validate(&doc) {
            Ok(()) => continue,
            Err(errs) => errs.map(|e| format!("{} at {}", e, e.instance_path)).collect(),
        };
        panic!("{args:?} fails the schema: {msgs:?}");
    }
}

#[test]
fn schema_rejects_malformed_values() {
    let schema = schema();
    let mut doc = stdout_json(&powseq(&["waring", "--k", "5"]));
    assert!(schema.is_valid(&doc));
    doc["result"]["distance"] = json!({"num": "13", "den": "0"});
    assert!(!schema.is_valid(&doc));
    doc["result"]["distance"] = json!({"num": 13, "den": "32"});
    assert!(!schema.is_valid(&doc));
    let mut doc = stdout_json(&powseq(&["classify", "--poly=-1,-1,1"]));
    doc["result"]["max_other_modulus"]["radius"] = json!(0.5);
    assert!(!schema.is_valid(&doc));
}

#[test]
fn manifest_replays() {
    let dir = tempfile::tempdir().unwrap();
    let runs: &[&[&str]] = &[
        &["--precision", "96", "synth-alpha", "--a", "4", "--index-set", "1,3", "--n", "10"],
        &["synth-alpha", "--a", "3", "--multiples=sqrt(2)", "--n", "20"],
        &["classify", "--poly=1,-1,-1,-1,1"],
        &["boyd", "--a", "4", "--b", "5", "--a0", "2", "--a1", "9", "--f", "1,0,1", "--n", "12"],
        &["ud-stats", "--multiples=1/2+1/2sqrt(5)", "--count", "300"],
        &["recover", "--values", "2,1,3,4,7,11", "--roots", "1/2+1/2sqrt(5):1;1/2-1/2sqrt(5):1"],
    ];
    for (i, args) in runs.iter().enumerate() {
        let out = powseq(args);
        let doc = stdout_json(&out);
        let path = dir.path().join(format!("run{i}.json"));
        std::fs::write(&path, &out.stdout).unwrap();
        let replay = stdout_json(&powseq(&["replay", "--manifest", path.to_str().unwrap()]));
        assert_eq!(replay["result"]["matches"], true, "{args:?}: {}", replay["result"]["mismatches"]);
        assert_eq!(replay["result"]["replayed_command"], doc["command"]);
    }
}

#[test]
fn tampered_result_fails_replay() {
    let dir = tempfile::tempdir().unwrap();
    let out = powseq(&["boyd", "--a", "4", "--b", "5", "--a0", "2", "--a1", "9", "--n", "8"]);
    let mut doc = stdout_json(&out);
    let seq = doc["result"]["sequence"].as_array_mut().expect("sequence array");
    seq[4] = json!(784);
    let path = dir.path().join("bad.json");
    std::fs::write(&path, serde_json::to_vec(&doc).unwrap()).unwrap();
    let out = powseq(&["replay", "--manifest", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let rep: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(rep["result"]["mismatches"], json!(["/sequence/4"]));
}

#[test]
fn replay_of_replay_is_refused() {
    let dir = tempfile::tempdir().unwrap();
    let first = powseq(&["waring", "--k", "5"]);
    let p1 = dir.path().join("w.json");
    std::fs::write(&p1, &first.stdout).unwrap();
    let second = powseq(&["replay", "--manifest", p1.to_str().unwrap()]);
    let p2 = dir.path().join("r.json");
    std::fs::write(&p2, &second.stdout).unwrap();
    assert_eq!(powseq(&["replay", "--manifest", p2.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn in_process_run_matches_binary() {
    let inv = powseq_cli::run(["powseq", "fatou", "--p", "2,2", "--q", "2,-4"]);
    assert_eq!(inv.code, 0);
    let doc: Value = serde_json::from_str(&inv.stdout).unwrap();
    assert_eq!(doc["result"]["p"], json!([1, 1]));
    assert_eq!(doc["result"]["q"], json!([1, -2]));
}
