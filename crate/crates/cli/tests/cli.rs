use std::process::{Command, Output};

use thetacert::report::{CertificateRecord, DimRecord, Report, SnRecord, Status};

fn thetacert(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_thetacert"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn table_dim_matches() {
    let o = thetacert(&["table-dim", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let r: Report<DimRecord> = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(r.rows.len(), 8);
    assert!(r.rows.iter().all(|row| row.verdict == "MATCH"));
    assert_eq!(r.status, Status::Ok);
}

#[test]
fn pure_query_exits_zero_on_negative_answer() {
    let o = thetacert(&["certify", "--n", "2", "--s", "0", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let r: Report<CertificateRecord> = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(r.rows[0].verdict, "NOT_CERTIFIED");
}

#[test]
fn certificate_json_round_trips() {
    let o = thetacert(&["certify", "--n", "7", "--s", "1", "--format", "json"]);
    let text = stdout(&o);
    let r: Report<CertificateRecord> = serde_json::from_str(&text).unwrap();
    assert_eq!(r.rows[0].verdict, "CERTIFIED");
    assert_eq!(r.rows[0].strategy, "RESIDUE_ENUMERATION");
    let again = serde_json::to_string_pretty(&r).unwrap() + "\n";
    assert_eq!(again, text);
    let back: Report<CertificateRecord> = serde_json::from_str(&again).unwrap();
    assert_eq!(back, r);
}

#[test]
fn table_sn_has_no_weaker_rows() {
    let o = thetacert(&["table-sn", "--range", "7..30", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let r: Report<SnRecord> = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(r.rows.len(), 24);
    assert_eq!(
        r.rows.iter().map(|x| x.n).collect::<Vec<_>>(),
        (7..=30).collect::<Vec<_>>()
    );
    assert!(!r.rows.iter().any(SnRecord::is_weaker));
}

#[test]
fn output_is_deterministic() {
    let a = thetacert(&["table-sn", "--range", "7..14", "--format", "csv"]);
    let b = thetacert(&["table-sn", "--range", "7..14", "--format", "csv"]);
    assert_eq!(a.stdout, b.stdout);
    assert!(stdout(&a).starts_with("n,computed_sn,single_level_sn,reference_sn,verdict\n"));
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["certify", "--n", "3", "--s", "5"][..],
        &["certify", "--n", "3", "--s", "1", "--unknown"],
        &["table-sn", "--range", "5..9"],
        &["table-sn", "--range", "9..7"],
        &["theorem5", "--n", "3"],
        &["schneider", "--e", "0", "--n", "5", "--a", "1"],
        &["certify", "--n", "3", "--s", "1", "--format", "yaml"],
    ] {
        assert_eq!(thetacert(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn failed_expectation_exits_one() {
    // The normalized coefficients are units at n - h = 1.
    let o = thetacert(&["verify-formula1", "--n", "4"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).starts_with("verify-formula1: FAILED"));
}

#[test]
fn expectation_commands_pass() {
    for args in [
        &["theorem5"][..],
        &["theorem6-params"],
        &["lemma7", "--m", "3"],
        &["no-strict-gap", "--e", "8"],
    ] {
        assert_eq!(thetacert(args).status.code(), Some(0), "{args:?}");
    }
}

#[test]
fn out_flag_writes_file() {
    let dir = std::env::temp_dir().join(format!("thetacert-out-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("dim.md");
    let o = thetacert(&[
        "table-dim",
        "--format",
        "markdown",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.contains("| 7 | 11 | 11 | 11 | MATCH |"));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn schneider_and_lemma9_queries() {
    let o = thetacert(&[
        "schneider",
        "--e",
        "3",
        "--n",
        "7",
        "--a",
        "3",
        "--format",
        "csv",
    ]);
    assert!(stdout(&o).contains("3,7,3,3/4,6,EQUAL,0"));
    let o = thetacert(&["lemma9", "--a", "5", "--e", "6", "--format", "csv"]);
    assert!(stdout(&o).contains("5,6,3,6,true,true"));
}
