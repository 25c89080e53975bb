use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pairpart"))
        .args(args)
        .env_remove("PAIRPART_THREADS")
        .output()
        .expect("binary runs")
}

fn run_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_pairpart"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child
        .stdin
        .take()
        .unwrap()
        .write_all(input.as_bytes())
        .unwrap();
    child.wait_with_output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

#[test]
fn partition_exit_codes() {
    let ok = run(&["partition", "--n", "5", "--d", "1,2"]);
    assert_eq!(code(&ok), 0);
    assert_eq!(
        json(&ok)["solution"]["pairs"],
        serde_json::json!([[2, 3], [4, 1]])
    );

    let no = run(&["partition", "--n", "9", "--d", "3,3,3,3"]);
    assert_eq!(code(&no), 2);
    assert_eq!(json(&no)["result"], "infeasible");

    let bad = run(&["partition", "--n", "4", "--d", "0,1"]);
    assert_eq!(code(&bad), 1);
    assert!(String::from_utf8_lossy(&bad.stderr).contains("zero"));
    assert!(bad.stdout.is_empty());
}

#[test]
fn malformed_input_is_an_error() {
    assert_eq!(code(&run(&["partition", "--json", "{not json"])), 1);
    assert_eq!(code(&run(&["partition", "--frobnicate"])), 1);
    assert_eq!(
        code(&run(&["conjecture-scan", "--n", "9", "--sample", "10"])),
        1
    );
    assert_eq!(code(&run(&["--format", "tsv", "dyson", "--a", "1,1"])), 1);
    assert_eq!(code(&run(&["--help"])), 0);
}

#[test]
fn pack_reports_hypotheses() {
    let out = run(&[
        "pack",
        "--json",
        r#"{"n":5,"X":[[0],[0]],"T":[[0,1],[0,1]],"d":1}"#,
    ]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["solution"], serde_json::json!([0, 1]));
    assert_eq!(v["hypotheses"]["guarantee"], "difference_bound");

    // Shrunken translate sets break the size hypothesis but a packing exists.
    let out = run(&[
        "pack",
        "--json",
        r#"{"n":7,"X":[[0,1],[0,1],[0,1]],"T":[[0],[2],[4]],"d":1}"#,
    ]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["hypotheses"]["translate_sizes"], false);
    assert_eq!(v["hypotheses"]["guarantee"], "none");

    assert_eq!(
        code(&run(&["pack", "--json", r#"{"n":7,"X":[],"T":[],"d":1}"#])),
        1
    );
}

#[test]
fn solutions_round_trip_through_verify() {
    let dir = tempfile::tempdir().unwrap();
    let cases: Vec<Vec<&str>> = vec![
        vec!["partition", "--n", "7", "--d", "1,1,3"],
        vec!["partition", "--n", "8", "--d", "1,3,5,7"],
        vec!["partition", "--n", "9", "--d", "3,3,3,3"],
        vec![
            "partition",
            "--json",
            r#"{"p":3,"k":2,"bases":[[[1,0],[0,1]],[[1,0],[0,1]],[[1,1],[1,2]],[[1,0],[1,1]]]}"#,
        ],
        vec![
            "pack",
            "--json",
            r#"{"n":7,"X":[[0],[0,1]],"T":[[0,1],[0,1]],"d":1}"#,
        ],
        vec![
            "pack",
            "--json",
            r#"{"X":[[0,1],[0,1]],"T":[[0],[1]],"d":1}"#,
        ],
    ];
    for (i, args) in cases.iter().enumerate() {
        let out = run(args);
        let path = dir.path().join(format!("doc{i}.json"));
        std::fs::write(&path, &out.stdout).unwrap();
        let check = run(&["verify", "--input", path.to_str().unwrap()]);
        assert_eq!(code(&check), 0, "{args:?}");
        assert_eq!(json(&check)["valid"], true);
    }
}

#[test]
fn verify_rejects_tampering() {
    let out = run(&["partition", "--n", "7", "--d", "1,2,3"]);
    let mut doc = json(&out);
    doc["solution"]["pairs"][0] = serde_json::json!([1, 3]);
    let check = run_stdin(&["verify", "-i", "-"], &doc.to_string());
    assert_eq!(code(&check), 2);
    assert_eq!(json(&check)["valid"], false);

    // A false infeasibility claim is caught by re-running the search.
    let fake = r#"{"kind":"pairs","instance":{"n":5,"d":[1,2]},"result":"infeasible","nodes":1}"#;
    assert_eq!(code(&run_stdin(&["verify", "-i", "-"], fake)), 2);
}

#[test]
fn dyson_routes_agree() {
    let out = run(&["dyson", "--a", "2,2"]);
    assert_eq!(code(&out), 0);
    assert_eq!(
        String::from_utf8(out.stdout).unwrap().trim(),
        r#"{"a":[2,2],"formula":6,"bruteforce":6,"evaluation":6,"agree":true}"#
    );
    let big = json(&run(&["dyson", "--a", "10,10,10"]));
    assert_eq!(big["bruteforce"], Value::Null);
    assert_eq!(big["agree"], true);
}

#[test]
fn cn_coefficient_commands() {
    let out = run(&["cn-coeff", "--p", "5", "--d", "1,2", "--witness"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["nonzero"], true);
    assert_eq!(v["witness"], serde_json::json!(["2", "4"]));

    let doc = r#"{"poly":{"arity":2,"terms":[{"e":[1,1],"c":"-4"},{"e":[0,0],"c":"9"}]},"grid":[[0,5],[1,2]]}"#;
    let v = json(&run(&["cn-coeff", "--json", doc]));
    assert_eq!(v["coefficient"], "-4");

    let zero = r#"{"modulus":5,"poly":{"arity":1,"terms":[{"e":[0],"c":"3"}]},"grid":[[0,1]]}"#;
    assert_eq!(code(&run(&["cn-coeff", "--json", zero])), 2);
}

#[test]
fn conjecture_scan_outputs() {
    let out = run(&["conjecture-scan", "--n", "9"]);
    assert_eq!(code(&out), 0);
    assert_eq!(
        String::from_utf8(out.stdout).unwrap().trim(),
        r#"{"n":9,"universe":"nonzero","mode":"exhaustive","total":1296,"feasible":1296,"failures":[]}"#
    );
    let tsv = run(&["--format", "tsv", "conjecture-scan", "--n", "4"]);
    assert_eq!(
        String::from_utf8(tsv.stdout).unwrap(),
        "n\tuniverse\tmode\tseed\ttotal\tfeasible\tfailures\n4\tfull\texhaustive\t-\t4\t4\t-\n"
    );
    let timed = json(&run(&["conjecture-scan", "--n", "5", "--timing"]));
    assert!(timed["seconds"].is_number());
}

#[test]
fn identical_config_gives_identical_bytes() {
    let args = [
        "conjecture-scan",
        "--n",
        "16",
        "--sample",
        "300",
        "--seed",
        "42",
    ];
    let a = run(&args);
    let b = Command::new(env!("CARGO_BIN_EXE_pairpart"))
        .args(args)
        .env("PAIRPART_THREADS", "3")
        .output()
        .unwrap();
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    let s1 = run(&[
        "sumset", "--p", "5", "--alpha", "2", "--sample", "500", "--seed", "9",
    ]);
    let s2 = run(&[
        "sumset", "--p", "5", "--alpha", "2", "--sample", "500", "--seed", "9",
    ]);
    assert_eq!(s1.stdout, s2.stdout);
}

#[test]
fn checkpointed_scan_resumes() {
    let dir = tempfile::tempdir().unwrap();
    let ckpt = dir.path().join("scan.ndjson");
    let ckpt = ckpt.to_str().unwrap();
    let first = run(&["conjecture-scan", "--n", "11", "--checkpoint", ckpt]);
    assert_eq!(code(&first), 0);
    let shards = std::fs::read_to_string(ckpt).unwrap();
    std::fs::write(ckpt, shards.lines().take(3).collect::<Vec<_>>().join("\n")).unwrap();
    let resumed = run(&["conjecture-scan", "--n", "11", "--checkpoint", ckpt]);
    assert_eq!(first.stdout, resumed.stdout);
    assert_eq!(
        std::fs::read_to_string(ckpt).unwrap().lines().count(),
        shards.lines().count()
    );
}

#[test]
fn sumset_commands() {
    let out = run(&["sumset", "--p", "3", "--alpha", "2", "--exhaustive"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["pairs"], 261121);
    assert_eq!(v["violations"], serde_json::json!([]));
    assert_eq!(v["tight"].as_array().unwrap().len(), 100);

    let v = json(&run(&[
        "sumset", "--p", "2", "--alpha", "2", "--a", "0,2", "--b", "0,2",
    ]));
    assert_eq!(
        (v["size"].clone(), v["beta"].clone(), v["tight"].clone()),
        (2.into(), 2.into(), true.into())
    );
    assert_eq!(
        code(&run(&["sumset", "--p", "4", "--a", "0", "--b", "0"])),
        1
    );
}
