use std::path::PathBuf;

use cantorext::cli::run;
use cantorext::formats::{parse_cohomology_report, parse_group_literal};
use serde_json::Value;

fn args(line: &str) -> Vec<String> {
    std::iter::once("cantorext").chain(line.split_whitespace()).map(String::from).collect()
}

fn temp_file(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("cantorext-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

#[test]
fn documented_examples() {
    let o = run(args("hn-group --group S3 --n 2"));
    assert_eq!((o.code, o.stdout.as_str()), (0, "Z/2\n"));
    let o = run(args("toeplitz --group Z2 --depth 3"));
    assert_eq!(o.code, 0);
    assert_eq!(o.stdout.lines().next(), Some("0 1 0 1 0 1 0 1"));
    let report: Value = serde_json::from_str(o.stdout.lines().nth(1).unwrap()).unwrap();
    assert_eq!(report["construction_identity"], true);
    let o = run(args("morse"));
    assert_eq!(o.code, 0);
    assert!(o.stdout.lines().count() >= 9);
    assert!(o.stdout.lines().all(|l| l.starts_with("PASS ")), "{}", o.stdout);
}

#[test]
fn other_subcommands() {
    assert_eq!(run(args("hn-group --group Z4 --n 0")).stdout, "Z\n");
    assert_eq!(run(args("hn-ext --group Z3 --n 0")).stdout, "Z/3\n");
    assert_eq!(run(args("hn-ext --group S3 --subgroup 1,0,2 --n 2")).stdout, "Z/3\n");
    assert_eq!(run(vec!["cantorext", "tor", "--m", "Z/4 + Z", "--g", "Z/6"]).stdout, "Z/2\n");
    assert_eq!(run(vec!["cantorext", "ext", "--g", "Z/2 + Z/4"]).stdout, "Z/2 + Z/4\n");
    assert_eq!(run(args("dimquot --intertwiner morse-r")).stdout, "Z/2\n");
    assert_eq!(run(args("dimquot --intertwiner morse-q")).stdout, "Z\n");
}

#[test]
fn exit_codes() {
    assert_eq!(run(args("frobnicate")).code, 2);
    assert_eq!(run(args("hn-group --group S3 --n 2 --bogus")).code, 2);
    assert_eq!(run(args("hn-group --n 2")).code, 2);
    let o = run(args("hn-group --group S9 --n 2"));
    assert_eq!(o.code, 2);
    assert!(o.stderr.contains("group"), "{}", o.stderr);
    let o = run(args("hn-group --group A5 --n 4"));
    assert_eq!(o.code, 1);
    assert!(o.stderr.starts_with("refused: tuple_cap_exceeded"), "{}", o.stderr);
    let o = run(args("hn-group --group Z2 --n 3 --max-tuples 4"));
    assert_eq!(o.code, 1);
    let o = run(args("toeplitz --group Z2 --depth 40"));
    assert_eq!(o.code, 1);
    assert!(o.stderr.contains("toeplitz_depth_exceeded"));
    assert_eq!(run(vec!["cantorext", "ext", "--g", "Z"]).code, 2);
    assert_eq!(run(args("--help")).code, 0);
}

#[test]
fn runs_are_byte_identical() {
    for line in [
        "hn-group --group D4 --n 2 --json",
        "hn-ext --group S3 --subgroup 1,0,2 --n 1 --json",
        "morse --json",
        "toeplitz --group S3 --depth 9 --json",
        "dimquot --intertwiner morse-p --json",
    ] {
        let a = run(args(line));
        let b = run(args(line));
        assert_eq!(a.code, 0, "{line}: {}", a.stderr);
        assert_eq!(a, b, "{line}");
    }
}

#[test]
fn cohomology_json_round_trips() {
    for (line, expected) in [
        ("hn-group --group Q8 --n 2 --json", "Z/2 + Z/2"),
        ("hn-group --group Z3 --n 0 --json", "Z"),
        ("hn-ext --group S3 --n 0 --json", "Z/2"),
    ] {
        let o = run(args(line));
        assert_eq!(o.code, 0, "{}", o.stderr);
        let v: Value = serde_json::from_str(&o.stdout).unwrap();
        assert_eq!(parse_cohomology_report(&v).unwrap().to_string(), expected);
        assert_eq!(parse_group_literal(&v["result"], "result").unwrap().to_string(), expected);
        let keys: Vec<&str> = v.as_object().unwrap().keys().map(String::as_str).collect();
        assert_eq!(keys, ["group", "subgroup", "n", "result", "orbit_counts"]);
    }
    let v: Value = serde_json::from_str(&run(args("morse --json")).stdout).unwrap();
    assert_eq!(v["passed"], true);
    assert_eq!(v["quotient_XZ"]["kind"], "finitely_generated");
    assert_eq!(parse_group_literal(&v["quotient_XZ"]["group"], "group").unwrap().to_string(), "Z/2");
}

#[test]
fn file_inputs() {
    let table = temp_file("z3.json", r#"{"order": 3, "table": [[0,1,2],[1,2,0],[2,0,1]]}"#);
    let o = run(vec!["cantorext".into(), "hn-group".into(), "--group".into(), format!("@{}", table.display()), "--n".into(), "2".into()]);
    assert_eq!((o.code, o.stdout.as_str()), (0, "Z/3\n"));

    let perms = temp_file("s3.json", r#"{"degree": 3, "generators": [[1,0,2],[1,2,0]]}"#);
    let o = run(vec!["cantorext".into(), "hn-group".into(), "--group".into(), format!("@{}", perms.display()), "--n".into(), "2".into()]);
    assert_eq!((o.code, o.stdout.as_str()), (0, "Z/2\n"));

    let sub = temp_file("h.json", r#"{"generators": [[1,0,2]]}"#);
    let o = run(vec!["cantorext".into(), "hn-ext".into(), "--group".into(), "S3".into(), "--subgroup".into(), format!("@{}", sub.display()), "--n".into(), "2".into()]);
    assert_eq!((o.code, o.stdout.as_str()), (0, "Z/3\n"));

    let g = temp_file("g.json", r#"{"factors": [2, "4"], "rank": 0}"#);
    let o = run(vec!["cantorext".into(), "ext".into(), "--g".into(), format!("@{}", g.display())]);
    assert_eq!((o.code, o.stdout.as_str()), (0, "Z/2 + Z/4\n"));

    let json = cantorext::formats::intertwiner_json(&cantorext_core::dimlim::Intertwiner::morse_r());
    let tw = temp_file("r.json", &serde_json::to_string(&json).unwrap());
    let o = run(vec!["cantorext".into(), "dimquot".into(), "--intertwiner".into(), format!("@{}", tw.display())]);
    assert_eq!((o.code, o.stdout.as_str()), (0, "Z/2\n"));
}

#[test]
fn malformed_files_name_the_field() {
    let cases = [
        ("bad_table.json", r#"{"order": 2, "table": [[0,1],[1]]}"#, "table"),
        ("bad_degree.json", r#"{"degree": "three", "generators": []}"#, "degree"),
        ("no_kind.json", r#"{"ordr": 2}"#, "group"),
    ];
    for (name, body, field) in cases {
        let path = temp_file(name, body);
        let o = run(vec!["cantorext".into(), "hn-group".into(), "--group".into(), format!("@{}", path.display()), "--n".into(), "1".into()]);
        assert_eq!(o.code, 2, "{name}");
        assert!(o.stderr.contains(field), "{name}: {}", o.stderr);
    }
    let g = temp_file("bad_factors.json", r#"{"factors": [2, "x"], "rank": 0}"#);
    let o = run(vec!["cantorext".into(), "ext".into(), "--g".into(), format!("@{}", g.display())]);
    assert_eq!(o.code, 2);
    assert!(o.stderr.contains("factors"), "{}", o.stderr);
    let tw = temp_file("bad_r.json", r#"{"source": {"matrix": {"rows": 1, "cols": 1, "entries": [["2"]]}, "unit": [1]}, "target": {"matrix": {"rows": 1, "cols": 1, "entries": [["2"]]}, "unit": [1]}}"#);
    let o = run(vec!["cantorext".into(), "dimquot".into(), "--intertwiner".into(), format!("@{}", tw.display())]);
    assert_eq!(o.code, 2);
    assert!(o.stderr.contains('r'), "{}", o.stderr);
    let garbage = temp_file("garbage.json", "{not json");
    let o = run(vec!["cantorext".into(), "hn-group".into(), "--group".into(), format!("@{}", garbage.display()), "--n".into(), "1".into()]);
    assert_eq!(o.code, 2);
    let o = run(vec!["cantorext", "hn-group", "--group", "@/nonexistent/file.json", "--n", "1"]);
    assert_eq!(o.code, 2);
}
