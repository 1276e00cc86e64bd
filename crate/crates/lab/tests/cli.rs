use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_nonarch-lab"));
    c.env_remove("NONARCH_LAB_THREADS");
    c
}

fn corpus_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

fn run(args: &[&str]) -> Output {
    bin().args(args).current_dir(corpus_dir()).output().expect("binary runs")
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn bounds_record() {
    let out = run(&["bounds", "--m", "1", "--n", "2", "--d", "1", "--T", "10", "--p", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let r = &json_of(&out)["result"];
    assert_eq!(r["mu"], 3);
    assert_eq!(r["r"], 3);
    assert_eq!(r["e"], 3);
    assert_eq!(r["V"], 2);
    assert_eq!(r["epsilon"], "2/3");
    assert_eq!(r["alpha"], 2);
}

#[test]
fn count_ff_csv() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("counts.csv");
    let out = run(&["count-ff", "varieties/yx3.json", "--q", "2,3", "--r", "1..4", "--csv", csv.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let mut rdr = csv::Reader::from_path(&csv).unwrap();
    let mut seen = 0;
    for rec in rdr.records() {
        let rec = rec.unwrap();
        let q: u64 = rec[0].parse().unwrap();
        let r: u32 = rec[1].parse().unwrap();
        let count: u64 = rec[2].parse().unwrap();
        assert_eq!(count, q.pow(r.div_ceil(3)), "q={q} r={r}");
        seen += 1;
    }
    assert_eq!(seen, 8);
}

#[test]
fn malformed_json_is_a_config_error() {
    let out = run(&["hilbert", "ideals/truncated.json"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line 2 column"), "{err}");
}

#[test]
fn bad_parameters_are_config_errors() {
    for args in [
        &["bounds", "--m", "1", "--n", "2", "--d", "1", "--T", "10", "--p", "4"][..],
        &["count-ff", "varieties/yx3.json", "--q", "2,3", "--r", "4..1"],
        &["count-ff", "varieties/missing.json", "--q", "2", "--r", "1"],
        &["bounds", "--m", "1"],
    ] {
        assert_eq!(run(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn cap_exhaustion_exit_code() {
    let out = run(&["count-ff", "varieties/yx3.json", "--q", "5", "--r", "3", "--cap", "100"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn failed_check_exit_code() {
    let out = run(&["taylor-check", "maps/binomial2.json", "--r", "1", "--expect", "holds"]);
    assert_eq!(out.status.code(), Some(1));
    let report = json_of(&out);
    assert_eq!(report["passed"], false);
    assert_eq!(report["result"]["witness"]["x"][0], "2");
    assert_eq!(report["result"]["witness"]["y"][0], "0");
}

#[test]
fn reports_are_byte_identical_across_runs_and_thread_counts() {
    let args = ["taylor-check", "maps/square.json", "--r", "2", "--strategy", "exhaustive", "--digits", "4"];
    let a = run(&args);
    let b = bin().args(args).arg("--threads").arg("1").current_dir(corpus_dir()).output().unwrap();
    let c = bin().args(args).env("NONARCH_LAB_THREADS", "3").current_dir(corpus_dir()).output().unwrap();
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.stdout, c.stdout);

    let args = ["taylor-check", "maps/square.json", "--r", "3", "--strategy", "sampled", "--seed", "11"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
}

#[test]
fn env_threads_must_parse() {
    let out = bin()
        .args(["bounds", "--m", "1", "--n", "1", "--d", "1", "--T", "5", "--p", "3"])
        .env("NONARCH_LAB_THREADS", "many")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn report_written_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.json");
    let out = run(&["heights", "curves/circle.json", "--T", "5", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let report: Value = serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(report["result"]["count"], 12);
}

fn copy_dir(from: &Path, to: &Path) {
    fs::create_dir_all(to).unwrap();
    for entry in fs::read_dir(from).unwrap() {
        let entry = entry.unwrap();
        let target = to.join(entry.file_name());
        if entry.file_type().unwrap().is_dir() {
            copy_dir(&entry.path(), &target);
        } else {
            fs::copy(entry.path(), target).unwrap();
        }
    }
}

#[test]
fn pristine_corpus_passes() {
    let out = bin().args(["corpus", corpus_dir().to_str().unwrap()]).output().unwrap();
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let summary = json_of(&out);
    assert!(summary["cases"].as_u64().unwrap() >= 10);
    assert_eq!(summary["failed"].as_array().unwrap().len(), 0);
}

#[test]
fn perturbed_expected_report_fails() {
    let dir = tempfile::tempdir().unwrap();
    copy_dir(&corpus_dir(), dir.path());
    let victim = dir.path().join("bounds_m1n2d1.expected.json");
    let text = fs::read_to_string(&victim).unwrap().replace("\"alpha\": 2", "\"alpha\": 3");
    fs::write(&victim, text).unwrap();
    let out = bin().args(["corpus", dir.path().to_str().unwrap()]).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    let summary = json_of(&out);
    assert_eq!(summary["failed"], serde_json::json!(["bounds_m1n2d1"]));
}

#[test]
fn empty_corpus_passes_with_warning() {
    let dir = tempfile::tempdir().unwrap();
    let out = bin().args(["corpus", dir.path().to_str().unwrap()]).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json_of(&out)["cases"], 0);
    assert!(String::from_utf8_lossy(&out.stderr).contains("warning"));
}
