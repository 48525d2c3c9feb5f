use std::process::{Command, Output};

fn bihecke(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bihecke"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_of(args: &[&str]) -> String {
    let output = bihecke(args);
    assert!(
        output.status.success(),
        "`bihecke {}` failed: {}",
        args.join(" "),
        String::from_utf8_lossy(&output.stderr)
    );
    String::from_utf8(output.stdout).expect("utf-8 output")
}

#[test]
fn identical_requests_are_byte_identical() {
    let invocations: &[&[&str]] = &[
        &["group", "--group", "A3", "--format", "json"],
        &["monoid", "--group", "A2"],
        &["monoid", "--group", "A2", "--format", "dot"],
        &["borel", "--group", "A2", "--format", "json"],
        &["blocks", "--group", "A3", "--w", "4312", "--format", "json"],
        &["cutting-poset", "--group", "A3"],
        &["transmod", "--group", "A2", "--w", "312", "--format", "json"],
        &["whecke", "--group", "A3", "--w", "4312"],
        &["decomposition", "--group", "A2", "--format", "json"],
        &["check", "--group", "A2"],
    ];
    for args in invocations {
        let first = bihecke(args);
        let second = bihecke(args);
        assert_eq!(
            first.stdout,
            second.stdout,
            "non-deterministic output from `bihecke {}`",
            args.join(" ")
        );
        assert_eq!(first.status.code(), second.status.code());
    }
}

#[test]
fn threads_do_not_change_output() {
    for threads in ["2", "4"] {
        let serial = stdout_of(&["monoid", "--group", "A2"]);
        let parallel = stdout_of(&["monoid", "--group", "A2", "--threads", threads]);
        assert_eq!(serial, parallel);
    }
}

#[test]
fn blocks_json_lists_reduced_blocks_with_cutting_points() {
    let text = stdout_of(&["blocks", "--group", "A3", "--w", "4312", "--format", "json"]);
    let value: serde_json::Value = serde_json::from_str(&text).expect("valid json");
    let mut reduced: Vec<(Vec<u64>, String)> = value["blocks"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|b| b["reduced"].as_bool().unwrap())
        .map(|b| {
            (
                b["block"]
                    .as_array()
                    .unwrap()
                    .iter()
                    .map(|v| v.as_u64().unwrap())
                    .collect(),
                b["cutting_point"].as_str().unwrap().to_owned(),
            )
        })
        .collect();
    reduced.sort();
    assert_eq!(
        reduced,
        vec![
            (vec![], "4312".to_owned()),
            (vec![1], "3412".to_owned()),
            (vec![1, 2, 3], "1234".to_owned()),
            (vec![2, 3], "4123".to_owned()),
        ]
    );
}

#[test]
fn whecke_reports_agreeing_dimensions_and_top_simple() {
    let text = stdout_of(&["whecke", "--group", "A3", "--w", "4312"]);
    assert!(text.contains("dim_count\t79"));
    assert!(text.contains("dim_closure\t79"));
    assert!(text.contains("agree\ttrue"));
    assert!(text.contains("top_simple_dim\t3"));
}

#[test]
fn check_passes_on_small_groups() {
    for group in ["A1", "A2"] {
        let output = bihecke(&["check", "--group", group]);
        assert_eq!(output.status.code(), Some(0), "check --group {group}");
        let text = String::from_utf8(output.stdout).unwrap();
        assert!(text.contains("0 failed"), "{text}");
    }
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["group", "--group", "Q9"][..],
        &["blocks", "--group", "A2", "--w", "999"],
        &["group", "--group", "A2", "--format", "dot"],
        &["blocks", "--group", "A2"],
        &["no-such-subcommand"],
    ] {
        let output = bihecke(args);
        assert_eq!(
            output.status.code(),
            Some(2),
            "`bihecke {}` should exit 2",
            args.join(" ")
        );
    }
}

#[test]
fn exhausted_budget_exits_three() {
    let output = bihecke(&["monoid", "--group", "A3", "--budget", "50"]);
    assert_eq!(output.status.code(), Some(3));
    let stderr = String::from_utf8(output.stderr).unwrap();
    assert!(stderr.contains("budget"), "{stderr}");
}

#[test]
fn out_flag_writes_the_same_bytes_as_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("blocks.json");
    let args = ["blocks", "--group", "A3", "--w", "4312", "--format", "json"];
    let streamed = stdout_of(&args);
    let output = bihecke(
        &[&args[..], &["--out", path.to_str().unwrap()]].concat(),
    );
    assert_eq!(output.status.code(), Some(0));
    assert!(output.stdout.is_empty());
    assert_eq!(std::fs::read_to_string(&path).unwrap(), streamed);
}
