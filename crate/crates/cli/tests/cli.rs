mod common;

use std::sync::atomic::Ordering;

use common::{powerexp, powerexp_env, schema_errors, stub};

#[test]
fn triangle_u_rows_four() {
    let out = powerexp(&["triangle", "u", "--rows", "4"]);
    assert_eq!(out.code, 0);
    let lines: Vec<&str> = out.stdout.lines().collect();
    assert_eq!(lines.len(), 5);
    assert_eq!(lines[4], "1 19 25 19 1");
    assert_eq!(lines[2].trim(), "1 7 1");
}

#[test]
fn triangle_csv() {
    let out = powerexp(&["triangle", "pascal", "--rows", "3", "--format", "csv"]);
    assert_eq!(out.stdout, "0,1\n1,1,1\n2,1,2,1\n3,1,3,3,1\n");
}

#[test]
fn expand_v_row_terms() {
    let out = powerexp(&["expand", "--x", "4", "--n", "3", "--strategy", "v-row", "--terms"]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.contains("value: 64\n"));
    assert!(out.stdout.contains("terms: 1,21,21,21\n"));
    let plain = powerexp(&["expand", "--x", "4", "--n", "3", "--strategy", "v-row"]);
    assert!(!plain.stdout.contains("terms"));
}

#[test]
fn difftable_csv_first_rows() {
    let out = powerexp(&["difftable", "--n", "3", "--xmax", "10", "--depth", "3", "--format", "csv"]);
    let lines: Vec<&str> = out.stdout.lines().collect();
    assert_eq!(lines[0], "x,x^3,D(x^3),D^2(x^3),D^3(x^3)");
    assert_eq!(lines[4], "3,27,37,24,6");
    assert_eq!(lines[11], "10,1000,,,");
}

#[test]
fn audit_e3_14_json() {
    let out = powerexp(&["audit", "--id", "E3_14", "--format", "json"]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    let failures = v["records"][0]["failures"].as_array().unwrap();
    let f = failures
        .iter()
        .find(|f| f["point"]["x"] == "3" && f["point"]["n"] == "4")
        .unwrap();
    assert_eq!(f["residual"], "1");
    assert_eq!(v["records"][0]["validity_summary"], "holds iff n=3 or x=2 (on tested grid)");
}

#[test]
fn audit_range_override() {
    let out = powerexp(&["audit", "--id", "E2_22", "--range", "x=1..3"]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.contains("domain: x in [1, 3] (3 points)"));
    assert!(out.stdout.contains("  x=2: lhs=4 rhs=8 residual=-4\n"));
}

#[test]
fn audit_non_evaluable_is_reported_not_failed() {
    let out = powerexp(&["audit", "--id", "E4_1"]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.contains("[NON_EVALUABLE]"));
    assert!(out.stdout.contains("verdict: skipped"));
}

#[test]
fn exp_digits() {
    let out = powerexp(&["exp", "--x", "1", "--digits", "15"]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.contains("decimal: 2.718281828459045\n"), "{}", out.stdout);
    let with_terms = powerexp(&["exp", "--x", "2", "--terms", "5", "--strategy", "u-row"]);
    assert!(with_terms.stdout.contains("value: 109/15\n"), "{}", with_terms.stdout);
}

#[test]
fn parabola_points() {
    let out = powerexp(&["parabola"]);
    let expected = "k,y\n0,1\n1,55\n2,97\n3,127\n4,145\n5,151\n6,145\n7,127\n8,97\n9,55\n10,1\n";
    assert_eq!(out.stdout, expected);
}

#[test]
fn oeis_gen_and_check() {
    let out = powerexp(&["oeis", "gen", "--id", "A275709", "--count", "4"]);
    assert_eq!(out.stdout, "0 0\n1 5\n2 28\n3 81\n");
    let out = powerexp(&["oeis", "check", "--id", "A287326", "--count", "66"]);
    assert_eq!(out.code, 0);
    assert_eq!(out.stdout, "A287326 ok: 66 terms match (BUNDLED)\n1 of 1 sequences match\n");
}

#[test]
fn oeis_fetch_through_stub_server() {
    let body = "0 0\n1 1\n2 1\n3 2\n".to_string();
    let server = stub(vec![("/A000045/b000045.txt".into(), body.clone())]);
    let cache = tempfile::tempdir().unwrap();
    let env = [("POWEREXP_OEIS_URL", std::path::Path::new(&server.base))];
    let args = |mode: &'static str| {
        vec!["oeis", "fetch", "--id", "A000045", "--mode", mode, "--cache-dir", cache.path().to_str().unwrap()]
    };
    let first = powerexp_env(&args("cached"), &env);
    assert_eq!(first.code, 0, "{}", first.stderr);
    assert!(first.stdout.starts_with("A000045 source=NETWORK offset=0 terms=4\n"));
    assert_eq!(std::fs::read_to_string(cache.path().join("b000045.txt")).unwrap(), body);
    let second = powerexp_env(&args("cached"), &env);
    assert!(second.stdout.starts_with("A000045 source=CACHED"));
    let offline = powerexp_env(&args("offline"), &env);
    assert!(offline.stdout.starts_with("A000045 source=CACHED"));
    assert_eq!(server.hits.load(Ordering::SeqCst), 1);
}

#[test]
fn offline_flag_conflicts_with_network_mode() {
    let out = powerexp(&["--offline", "oeis", "fetch", "--id", "A287326", "--mode", "refresh"]);
    assert_eq!(out.code, 1);
    assert!(out.stderr.starts_with("error:"));
}

#[test]
fn usage_errors_exit_one() {
    for args in [
        vec!["bogus"],
        vec!["triangle", "u"],
        vec!["triangle", "u", "--rows", "3", "--colour"],
        vec!["expand", "--x", "4", "--n", "-1"],
        vec!["exp", "--x", "1", "--digits", "3", "--terms", "4"],
        vec![],
    ] {
        let out = powerexp(&args);
        assert_eq!(out.code, 1, "{args:?}");
        assert!(out.stdout.is_empty());
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn runtime_errors_exit_one() {
    for args in [
        vec!["audit", "--id", "E9_99"],
        vec!["audit", "--range", "x=1..2"],
        vec!["audit", "--id", "E3_14", "--range", "q=1..2"],
        vec!["expand", "--x", "4", "--n", "3", "--strategy", "nope"],
        vec!["expand", "--x", "0", "--n", "3", "--strategy", "u-row"],
        vec!["triangle", "w", "--rows", "2"],
        vec!["difftable", "--n", "3", "--xmax", "2", "--depth", "3"],
        vec!["oeis", "gen", "--id", "A999999"],
        vec!["oeis", "fetch", "--id", "A999999"],
        vec!["audit", "--id", "E3_14", "--format", "csv"],
    ] {
        let out = powerexp(&args);
        assert_eq!(out.code, 1, "{args:?}");
        assert!(out.stderr.starts_with("error: "), "{args:?}: {}", out.stderr);
    }
}

#[test]
fn help_exits_zero() {
    let out = powerexp(&["--help"]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.contains("triangle"));
}

#[test]
fn identical_argv_gives_identical_bytes() {
    for args in [
        vec!["audit", "--id", "E4_2", "--format", "json"],
        vec!["audit", "--id", "T9"],
        vec!["triangle", "v2", "--rows", "12", "--format", "json"],
        vec!["exp", "--x", "3", "--digits", "30", "--format", "json"],
        vec!["oeis", "check", "--format", "json"],
    ] {
        let a = powerexp(&args);
        let b = powerexp(&args);
        assert_eq!(a.stdout, b.stdout, "{args:?}");
        assert_eq!(a.code, b.code);
    }
}

#[test]
fn json_outputs_match_schemas() {
    let cases: [(&str, Vec<&str>); 9] = [
        ("triangle", vec!["triangle", "u", "--rows", "6", "--format", "json"]),
        ("expand", vec!["expand", "--x", "5", "--n", "4", "--strategy", "u-reflect", "--terms", "--format", "json"]),
        ("expand", vec!["expand", "--x", "5", "--n", "4", "--format", "json"]),
        ("difftable", vec!["difftable", "--n", "3", "--xmax", "10", "--depth", "3", "--format", "json"]),
        ("exp", vec!["exp", "--x", "2", "--digits", "10", "--format", "json"]),
        ("parabola", vec!["parabola", "--format", "json"]),
        ("oeis-check", vec!["oeis", "check", "--format", "json"]),
        ("oeis-fetch", vec!["oeis", "fetch", "--id", "A000124", "--format", "json"]),
        ("oeis-gen", vec!["oeis", "gen", "--id", "A007318", "--count", "15", "--format", "json"]),
    ];
    for (name, args) in cases {
        let out = powerexp(&args);
        assert_eq!(out.code, 0, "{args:?}: {}", out.stderr);
        let errors = schema_errors(name, &out.stdout);
        assert!(errors.is_empty(), "{args:?}: {errors:?}");
    }
    for id in ["E3_14", "E4_1", "T9", "F2_20"] {
        let out = powerexp(&["audit", "--id", id, "--format", "json"]);
        let errors = schema_errors("audit", &out.stdout);
        assert!(errors.is_empty(), "{id}: {errors:?}");
    }
}

#[test]
fn schemas_reject_malformed_documents() {
    assert!(!schema_errors("oeis-gen", r#"{"sequence_id":"A1","offset":0,"values":["1"]}"#).is_empty());
    assert!(!schema_errors("expand", r#"{"x":"4","n":3,"strategy":"v-row","value":64}"#).is_empty());
}
