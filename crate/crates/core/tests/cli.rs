use std::io::Write as _;

use interval_rank::io::module_to_json;
use interval_rank::{cli, fixtures, Rationals};
use serde_json::Value;
use tempfile::NamedTempFile;

struct Run {
    code: i32,
    out: String,
    err: String,
}

fn run(args: &[&str]) -> Run {
    let mut argv = vec!["interval-rank"];
    argv.extend_from_slice(args);
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = cli::run(argv, &mut out, &mut err);
    Run {
        code,
        out: String::from_utf8(out).unwrap(),
        err: String::from_utf8(err).unwrap(),
    }
}

fn json(r: &Run) -> Value {
    serde_json::from_str(&r.out).unwrap_or_else(|e| panic!("{e}: {}", r.out))
}

fn temp(text: &str) -> NamedTempFile {
    let mut f = NamedTempFile::new().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    f
}

fn path(f: &NamedTempFile) -> &str {
    f.path().to_str().unwrap()
}

fn row<'a>(doc: &'a Value, members: &[&str]) -> &'a Value {
    doc["rows"]
        .as_array()
        .unwrap()
        .iter()
        .find(|r| r["interval"] == serde_json::json!(members))
        .unwrap()
}

#[test]
fn validate_accepts_m_lambda() {
    let m = fixtures::m_lambda(Rationals, 2).unwrap();
    let f = temp(&module_to_json(&m).to_string());
    let r = run(&["validate", path(&f), "--system", "tot,ss,zz"]);
    assert_eq!(r.code, 0, "{}", r.err);
    let doc = json(&r);
    assert_eq!(doc["field"], "Q");
    assert!(doc["systems"]
        .as_array()
        .unwrap()
        .iter()
        .all(|s| s["passed"] == true));
}

#[test]
fn validate_rejects_a_broken_square() {
    let f = temp(
        r#"{"poset": {"grid": [2, 2]},
            "dims": {"(1,1)": 1, "(2,1)": 1, "(1,2)": 1, "(2,2)": 1},
            "maps": {"(1,1)->(2,1)": [[2]], "(1,1)->(1,2)": [[1]],
                     "(2,1)->(2,2)": [[1]], "(1,2)->(2,2)": [[1]]}}"#,
    );
    let r = run(&["validate", path(&f)]);
    assert_eq!(r.code, 1);
    assert!(
        r.err.contains("(1,1)") && r.err.contains("(2,2)"),
        "{}",
        r.err
    );
    assert!(
        r.err.contains("(2,1)") && r.err.contains("(1,2)"),
        "{}",
        r.err
    );
}

#[test]
fn validate_names_the_interval_a_custom_system_misses() {
    let system = temp(
        r#"{"name": "broken", "intervals": [
            {"members": ["1", "2", "3", "4"],
             "poset": {"elements": ["u"]}, "map": {"u": "1"}}]}"#,
    );
    let spec = format!("custom:{}", path(&system));
    let r = run(&["validate", "--fixtures", "p1:2", "--system", &spec]);
    assert_eq!(r.code, 1);
    let doc = json(&r);
    let failures = doc["systems"][0]["failures"].as_array().unwrap();
    assert_eq!(failures.len(), 1);
    assert_eq!(
        failures[0]["interval"],
        serde_json::json!(["1", "2", "3", "4"])
    );
    assert_eq!(failures[0]["covers_sources_and_sinks"], false);

    let r = run(&["rank", "--fixtures", "p1:2", "--system", &spec]);
    assert_eq!(r.code, 1);
    assert!(r.err.contains("{1,2,3,4}"), "{}", r.err);
}

#[test]
fn rank_reproduces_the_p1_table() {
    let r = run(&["rank", "--fixtures", "p1:2"]);
    assert_eq!(r.code, 0, "{}", r.err);
    let doc = json(&r);
    assert_eq!(doc["intervals"], 13);
    assert_eq!(row(&doc, &["1", "2", "3", "4"])["mult"], 0);
    assert_eq!(row(&doc, &["1", "3"])["mult"], 1);
}

#[test]
fn rank_single_interval_and_oracle() {
    let r = run(&[
        "rank",
        "--fixtures",
        "p1:3",
        "--interval",
        "1,2,3",
        "--oracle-check",
    ]);
    assert_eq!(r.code, 0, "{}", r.err);
    let doc = json(&r);
    let rows = doc["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 1);
    assert_eq!(rows[0]["mult"], 1);
    assert_eq!(rows[0]["generalized_rank"], 1);
    assert_eq!(doc["oracle_mismatches"], 0);
}

#[test]
fn m_lambda_tables_agree_under_tot_and_ss() {
    for system in ["tot", "ss"] {
        let a = run(&["rank", "--fixtures", "m-lambda:2", "--system", system]);
        let b = run(&["rank", "--fixtures", "m-lambda:3", "--system", system]);
        assert_eq!((a.code, b.code), (0, 0));
        assert_eq!(json(&a)["rows"], json(&b)["rows"]);
    }
}

#[test]
fn replace_splits_table_one() {
    let r = run(&["replace", "--fixtures", "p1:2", "--verify"]);
    assert_eq!(r.code, 0, "{}", r.err);
    let doc = json(&r);
    assert_eq!(doc["system"], "tot");
    assert_eq!(doc["verified"], true);
    assert_eq!(doc["positive"].as_array().unwrap().len(), 4);
    assert_eq!(doc["negative"].as_array().unwrap().len(), 4);
    assert!(doc["positive"]
        .as_array()
        .unwrap()
        .iter()
        .all(|p| p["interval"].as_array().unwrap().len() == 3));
}

#[test]
fn replace_of_an_interval_module_is_that_interval() {
    let f = temp(
        r#"{"poset": {"elements": ["a", "b", "c"], "relations": [["a", "b"], ["b", "c"]]},
            "dims": {"a": 0, "b": 1, "c": 1}, "maps": {"b->c": [[1]]}}"#,
    );
    let r = run(&["replace", path(&f), "--verify"]);
    assert_eq!(r.code, 0, "{}", r.err);
    let doc = json(&r);
    assert_eq!(
        doc["positive"],
        serde_json::json!([{"interval": ["b", "c"], "multiplicity": 1}])
    );
    assert_eq!(doc["negative"], serde_json::json!([]));
}

#[test]
fn compare_tot_and_zz_on_a_grid() {
    let r = run(&["compare", "--fixtures", "tau-m", "--systems", "tot,zz,ss"]);
    assert_eq!(r.code, 0, "{}", r.err);
    let doc = json(&r);
    assert_eq!(doc["below_tot"], serde_json::json!([]));
    for row in doc["rows"].as_array().unwrap() {
        assert_eq!(row["values"]["tot"], row["values"]["zz"]);
    }
}

#[test]
fn compare_needs_two_systems() {
    let r = run(&["compare", "--fixtures", "p1", "--systems", "tot"]);
    assert_eq!(r.code, 2);
    assert!(r.err.contains("two systems"));
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(run(&["rank"]).code, 2);
    assert_eq!(
        run(&["rank", "--fixtures", "p1", "--field", "fp:4"]).code,
        2
    );
    assert_eq!(
        run(&["rank", "--fixtures", "p1", "--system", "nope"]).code,
        2
    );
    assert_eq!(run(&["frobnicate"]).code, 2);
    assert_eq!(run(&["rank", "--fixtures", "p1", "--jobs", "0"]).code, 2);
    assert_eq!(run(&["--help"]).code, 0);
}

#[test]
fn interval_budget_exits_with_three() {
    let r = run(&["rank", "--fixtures", "m-lambda", "--max-intervals", "5"]);
    assert_eq!(r.code, 3);
    assert!(r.err.contains('5'));
}

#[test]
fn intervals_lists_covers() {
    let f = temp(r#"{"elements": ["a", "b", "c"], "relations": [["a", "b"], ["a", "c"]]}"#);
    let r = run(&["intervals", path(&f)]);
    assert_eq!(r.code, 0, "{}", r.err);
    let doc = json(&r);
    assert_eq!(doc["count"], 6);
    let top = &doc["intervals"][5];
    assert_eq!(top["members"], serde_json::json!(["a", "b", "c"]));
    assert_eq!(top["sinks"], serde_json::json!(["b", "c"]));
}

#[test]
fn output_does_not_depend_on_worker_count() {
    for fmt in ["json", "csv"] {
        let one = run(&[
            "rank",
            "--fixtures",
            "tau-m",
            "--system",
            "zz",
            "--format",
            fmt,
            "--jobs",
            "1",
        ]);
        let many = run(&[
            "rank",
            "--fixtures",
            "tau-m",
            "--system",
            "zz",
            "--format",
            fmt,
            "--jobs",
            "4",
        ]);
        assert_eq!(one.code, 0);
        assert_eq!(one.out, many.out);
    }
}

#[test]
fn prime_field_header_and_csv() {
    let r = run(&[
        "rank",
        "--fixtures",
        "d4-m1",
        "--field",
        "fp:2",
        "--format",
        "csv",
    ]);
    assert_eq!(r.code, 0, "{}", r.err);
    let mut lines = r.out.lines();
    assert_eq!(lines.next(), Some("# field=F_2 modulus=2 system=tot"));
    assert_eq!(lines.next(), Some("interval,mult"));
    assert_eq!(lines.last(), Some("1 2 3 4,1"));

    let j = json(&run(&["rank", "--fixtures", "d4-m1", "--field", "fp:2"]));
    assert_eq!(j["field"], "F_2");
    assert_eq!(j["modulus"], 2);
}
