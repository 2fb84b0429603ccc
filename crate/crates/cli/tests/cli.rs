use std::path::PathBuf;
use std::process::Command;

use proptest::prelude::*;
use serde_json::{json, Value};

use qonsager::freealg::NcPoly;
use qonsager::qcoeff::RationalFunction;
use qonsager::report::{Report, Status, VerificationReport};
use qonsager_cli::{report_exit_code, run, Outcome, EXIT_FAIL, EXIT_INCONCLUSIVE, EXIT_IO, EXIT_PASS, EXIT_USAGE};

fn go(args: &[&str]) -> Outcome {
    run(std::iter::once("qonsager").chain(args.iter().copied()))
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("qonsager-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn json_out(o: &Outcome) -> Value {
    serde_json::from_str(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", o.stdout))
}

#[test]
fn identities_small_grid() {
    let o = go(&["verify", "identities", "--max-index", "1", "--mode", "symbolic"]);
    assert_eq!(o.code, EXIT_PASS, "{}", o.stdout);
    assert!(o.stdout.contains("prop:TTp"));
}

#[test]
fn lusztig_of_b_from_file() {
    let f = scratch("b.json");
    std::fs::write(&f, r#"{"alphabet":["A","B"],"terms":[{"word":["B"],"coeff":1}]}"#).unwrap();
    let o = go(&[
        "onsager",
        "lusztig",
        "--expr",
        f.to_str().unwrap(),
        "--direction",
        "fwd",
        "--json",
    ]);
    assert_eq!(o.code, EXIT_PASS, "{}", o.stderr);
    let v = json_out(&o);
    let img: NcPoly<RationalFunction> = NcPoly::from_json(&v["image"]).unwrap();
    let words: Vec<String> = img.terms().map(|(w, _)| w.render(img.alphabet())).collect();
    assert_eq!(words.len(), 4);
    for w in ["B", "AAB", "ABA", "BAA"] {
        assert!(words.iter().any(|x| x == w), "{words:?}");
    }
    // emitting what was parsed reproduces it
    assert_eq!(img.to_json(), v["image"]);
    let inline = go(&["onsager", "lusztig", "--expr", "B", "--json"]);
    assert_eq!(json_out(&inline)["image"], v["image"]);
}

#[test]
fn expression_edge_cases() {
    let f = scratch("zero.json");
    std::fs::write(&f, r#"{"alphabet":["A","B"],"terms":[]}"#).unwrap();
    let o = go(&["onsager", "lusztig", "--expr", f.to_str().unwrap(), "--json"]);
    assert_eq!(o.code, EXIT_PASS);
    assert_eq!(json_out(&o)["image"]["terms"], json!([]));

    let f = scratch("bad.json");
    std::fs::write(&f, r#"{"alphabet":["A","B"],"terms":[{"word":["C"],"coeff":1}]}"#).unwrap();
    let o = go(&["onsager", "lusztig", "--expr", f.to_str().unwrap()]);
    assert_eq!(o.code, EXIT_USAGE);
    assert!(o.stderr.contains("$.terms[0].word[0]"), "{}", o.stderr);

    let o = go(&[
        "onsager",
        "lusztig",
        "--expr",
        scratch("missing.json").to_str().unwrap(),
    ]);
    assert_eq!(o.code, EXIT_IO);
}

#[test]
fn ssum_sweep() {
    let o = go(&["repn", "ssum", "--d", "6", "--a", "3/2", "--q", "5/3"]);
    assert_eq!(o.code, EXIT_PASS, "{}", o.stdout);
    assert!(o.stdout.contains("49 pass, 0 fail"));
}

#[test]
fn onsager_checks() {
    assert_eq!(go(&["onsager", "homcheck"]).code, EXIT_PASS);
    assert_eq!(go(&["onsager", "higher-dg", "--r", "2"]).code, EXIT_PASS);
    assert_eq!(
        go(&["onsager", "higher-dg", "--r", "1", "--method", "rewrite"]).code,
        EXIT_PASS
    );
    assert_eq!(go(&["onsager", "homcheck", "A"]).code, EXIT_USAGE);
}

#[test]
fn current_and_repn_checks() {
    assert_eq!(go(&["current", "verify", "--kmax", "2"]).code, EXIT_PASS);
    assert_eq!(
        go(&["repn", "conjugation", "--d", "3", "--q", "2", "--trials", "4"]).code,
        EXIT_PASS
    );
    assert_eq!(
        go(&["repn", "higher-dg", "--d", "4", "--r", "2", "--q", "3/2"]).code,
        EXIT_PASS
    );
    assert_eq!(go(&["repn", "d1", "--a", "3", "--b", "2", "--q", "2"]).code, EXIT_PASS);
    assert_eq!(
        go(&["repn", "twist", "--d", "2", "--b", "5", "--q", "2"]).code,
        EXIT_PASS
    );
}

#[test]
fn reports_are_deterministic() {
    let args = [
        "repn",
        "conjugation",
        "--d",
        "2",
        "--q",
        "3/2",
        "--seed",
        "9",
        "--trials",
        "3",
        "--json",
    ];
    assert_eq!(go(&args).stdout, go(&args).stdout);
}

#[test]
fn out_file_and_import() {
    let pair = scratch("pair.json");
    let o = go(&["repn", "d1", "--q", "2", "--out", pair.to_str().unwrap()]);
    assert_eq!(o.code, EXIT_PASS);
    let written: Value = serde_json::from_str(&std::fs::read_to_string(&pair).unwrap()).unwrap();
    assert_eq!(written["suite"], "repn d1");

    let bad_dir = scratch("no-such-dir").join("x.json");
    let o = go(&["repn", "d1", "--q", "2", "--out", bad_dir.to_str().unwrap()]);
    assert_eq!(o.code, EXIT_IO);

    // a block-diagonal B is rejected as reducible
    let f = scratch("reducible.json");
    let v = json!({
        "d": 1, "a": "3", "b": "5", "q": "2",
        "A": {"dimension": 2, "entries": [["37/6", "0"], ["0", "13/6"]]},
        "B": {"dimension": 2, "entries": [["101/10", "0"], ["0", "29/10"]]},
    });
    std::fs::write(&f, v.to_string()).unwrap();
    let o = go(&["repn", "import", f.to_str().unwrap()]);
    assert_eq!(o.code, EXIT_FAIL, "{}{}", o.stdout, o.stderr);
}

#[test]
fn usage_errors() {
    for args in [
        vec!["bogus"],
        vec!["repn", "ssum", "--q", "1"],
        vec!["repn", "ssum", "--q", "0"],
        vec!["repn", "ssum", "--q", "-1"],
        vec!["--mode", "numeric", "repn", "ssum"],
        vec!["repn", "ssum", "--d", "1", "--a", "1", "--q", "2"],
        vec!["current", "verify", "--kmax", "0"],
        vec!["verify", "identities", "--id", "nope"],
    ] {
        assert_eq!(go(&args).code, EXIT_USAGE, "{args:?}");
    }
    assert_eq!(go(&["--help"]).code, EXIT_PASS);
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_qonsager");
    let st = Command::new(bin).args(["repn", "d1", "--q", "2"]).output().unwrap();
    assert_eq!(st.status.code(), Some(EXIT_PASS));
    let st = Command::new(bin).args(["repn", "d1", "--q", "1"]).output().unwrap();
    assert_eq!(st.status.code(), Some(EXIT_USAGE));
    assert!(String::from_utf8_lossy(&st.stderr).contains("invalid value for q"));
}

fn status() -> impl Strategy<Value = Status> {
    prop_oneof![Just(Status::Pass), Just(Status::Fail), Just(Status::Inconclusive)]
}

proptest! {
    #[test]
    fn exit_code_follows_records(sts in proptest::collection::vec(status(), 0..12)) {
        let mut r = Report::new("synthetic", json!({}));
        for (i, s) in sts.iter().enumerate() {
            r.push(VerificationReport::new(format!("c{i}"), "none", *s));
        }
        let want = if sts.contains(&Status::Fail) {
            EXIT_FAIL
        } else if sts.contains(&Status::Inconclusive) {
            EXIT_INCONCLUSIVE
        } else {
            EXIT_PASS
        };
        prop_assert_eq!(report_exit_code(&r), want);
    }
}
