use std::process::Command;

use serde_json::Value;

fn qdeg(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_qdeg")).args(args).output().unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn run_json(args: &[&str]) -> (i32, Value) {
    let mut all = vec!["run"];
    all.extend_from_slice(args);
    all.extend_from_slice(&["--format", "json"]);
    let (code, out, err) = qdeg(&all);
    assert!(!out.is_empty(), "no report: {err}");
    (code, serde_json::from_str(&out).unwrap())
}

#[test]
fn s4_all_checks() {
    let (code, v) = run_json(&["--group", "corpus:S4", "--p", "3", "--q", "2", "--checks", "all"]);
    assert_eq!(code, 0);
    assert_eq!(v["order"], 24);
    let a = &v["checks"]["theoremA"];
    assert_eq!(a["hypothesis"], true);
    assert_eq!(a["conclusion"], true);
    let c = &v["checks"]["characterization"];
    assert_eq!(c["left"], true);
    assert_eq!(c["right"], true);
    assert_eq!(c["verdict"], "consistent");
    for key in ["group", "order", "p", "q", "checks", "timings", "seed"] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
}

#[test]
fn w96_characterization_has_kernel_witness() {
    let (code, v) = run_json(&["--group", "corpus:W96", "--p", "3", "--q", "2", "--checks", "characterization,ibr"]);
    assert_eq!(code, 0);
    let c = &v["checks"]["characterization"];
    assert_eq!(c["left"], false);
    assert_eq!(c["right"], false);
    let ws = c["witnesses"].as_array().unwrap();
    assert!(ws.iter().any(|w| w["kind"] == "kernel" && w["kernel"]["order"].as_u64().is_some()));
    assert_eq!(v["checks"]["ibr"]["verdict"], "consistent");
}

#[test]
fn psl2_17_theorem_a_not_applicable() {
    let (code, v) = run_json(&["--group", "corpus:PSL2_17", "--p", "17", "--q", "2", "--checks", "theoremA"]);
    assert_eq!(code, 0);
    let a = &v["checks"]["theoremA"];
    assert_eq!(a["applicable"], false);
    assert_eq!(a["conclusion"], false);
    assert_eq!(a["provenance"], "cited");
    assert_eq!(a["status"], "conditional on cited degrees");
}

#[test]
fn json_stable_apart_from_timings() {
    let args = ["--group", "corpus:A4", "--p", "2", "--q", "3", "--seed", "5"];
    let (_, mut a) = run_json(&args);
    let (_, mut b) = run_json(&args);
    a["timings"] = Value::Null;
    b["timings"] = Value::Null;
    assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
}

#[test]
fn group_files_and_multiple_groups() {
    let dir = std::env::temp_dir().join(format!("qdeg-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("s3.grp");
    std::fs::write(&path, "# S3\ndegree 3\n(1,2)\n(1,2,3)\n").unwrap();
    let (code, v) =
        run_json(&["--group", path.to_str().unwrap(), "--group", "corpus:S4", "--p", "3", "--q", "2"]);
    assert_eq!(code, 0);
    let reports = v.as_array().unwrap();
    assert_eq!(reports.len(), 2);
    assert_eq!(reports[0]["order"], 6);
    assert_eq!(reports[1]["group"], "S4");
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn text_format() {
    let (code, out, _) = qdeg(&["run", "--group", "corpus:S4", "--p", "3", "--q", "2", "--checks", "theoremA"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("group S4 (order 24)"));
    assert!(out.contains("theoremA: consistent"));
}

#[test]
fn usage_and_compute_errors_exit_1() {
    assert_eq!(qdeg(&["run", "--group", "corpus:S4", "--p", "4", "--q", "2"]).0, 1);
    assert_eq!(qdeg(&["run", "--group", "corpus:S4", "--p", "3", "--q", "3"]).0, 1);
    assert_eq!(qdeg(&["run", "--group", "corpus:nope", "--p", "3", "--q", "2"]).0, 1);
    assert_eq!(qdeg(&["run", "--group", "/no/such/file.grp", "--p", "3", "--q", "2"]).0, 1);
    assert_eq!(qdeg(&["run", "--group", "corpus:S4", "--p", "3", "--q", "2", "--checks", "bogus"]).0, 1);
    assert_eq!(qdeg(&["run", "--p", "3", "--q", "2"]).0, 1);
    assert_eq!(qdeg(&["frobnicate"]).0, 1);
    let (code, _, err) = qdeg(&["run", "--group", "corpus:SL2_16", "--p", "3", "--q", "2", "--checks", "ibr"]);
    assert_eq!(code, 1, "{err}");
}

#[test]
fn ibr_cap_is_honoured() {
    let (code, _, err) =
        qdeg(&["run", "--group", "corpus:W96", "--p", "3", "--q", "2", "--checks", "ibr", "--ibr-cap", "50"]);
    assert_eq!(code, 1);
    assert!(err.contains("cap"), "{err}");
}

#[test]
fn corpus_listing_and_export() {
    let (code, out, _) = qdeg(&["corpus"]);
    assert_eq!(code, 0);
    assert!(out.lines().any(|l| l.starts_with("G1053") && l.contains("1053")));
    let dir = std::env::temp_dir().join(format!("qdeg-export-{}", std::process::id()));
    let (code, out, _) = qdeg(&["corpus", "--export", dir.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().count(), qdeg_cli::corpus().len());
    let w96 = std::fs::read_to_string(dir.join("W96.grp")).unwrap();
    assert_eq!(w96, qdeg_cli::lookup("W96").unwrap().text);
    std::fs::remove_dir_all(&dir).unwrap();
}
