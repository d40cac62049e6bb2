use std::fs;
use std::process::{Command, Output};

fn tracenum(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tracenum"))
        .args(args)
        .env_remove("TRACE_ENUM_GUARD_OVERRIDE")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn tetrahedron_strong_count() {
    let out = tracenum(&["enumerate", "--named", "tetrahedron", "--kind", "strong", "--count-only"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "3");
}

#[test]
fn published_counts_from_the_command_line() {
    let out = tracenum(&[
        "enumerate", "--named", "prism:7", "--kind", "strong", "--orientation", "antiparallel", "--count-only",
    ]);
    assert_eq!(stdout(&out).trim(), "76");
    let out = tracenum(&[
        "enumerate", "--named", "octahedron", "--kind", "strong", "--orientation", "parallel", "--count-only",
    ]);
    assert_eq!(stdout(&out).trim(), "262");
}

#[test]
fn infeasible_setting_reports_zero_with_note() {
    let out = tracenum(&[
        "enumerate", "--named", "cube", "--kind", "strong", "--orientation", "parallel", "--format", "json",
    ]);
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["report"]["count"], 0);
    assert!(doc["report"]["note"].as_str().unwrap().contains("Eulerian"));
}

#[test]
fn text_and_json_list_the_same_traces() {
    let text = tracenum(&["enumerate", "--named", "prism:3", "--kind", "strong"]);
    let lines: Vec<String> = stdout(&text).lines().map(str::to_string).collect();
    assert_eq!(lines.len(), 25);

    let json = tracenum(&["enumerate", "--named", "prism:3", "--kind", "strong", "--format", "json"]);
    let doc: serde_json::Value = serde_json::from_slice(&json.stdout).unwrap();
    let from_json: Vec<String> = doc["traces"]
        .as_array()
        .unwrap()
        .iter()
        .map(|t| {
            let v: Vec<String> = t.as_array().unwrap().iter().map(|x| x.to_string()).collect();
            v.join(" ")
        })
        .collect();
    assert_eq!(from_json, lines);
    assert_eq!(doc["report"]["count"], 25);
}

#[test]
fn output_file_and_jobs_do_not_change_result() {
    let dir = tempfile::tempdir().unwrap();
    let one = dir.path().join("one.txt");
    let many = dir.path().join("many.txt");
    for (path, jobs) in [(&one, "1"), (&many, "3")] {
        let out = tracenum(&[
            "enumerate", "--named", "prism:5", "--kind", "strong", "--jobs", jobs, "--out", path.to_str().unwrap(),
        ]);
        assert!(out.status.success());
    }
    let a = fs::read_to_string(&one).unwrap();
    assert_eq!(a.lines().count(), 634);
    assert_eq!(a, fs::read_to_string(&many).unwrap());
}

#[test]
fn relabeling_is_reported() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("p4.txt");
    // 0 and 1 are not adjacent here.
    fs::write(&path, "0 2\n2 1\n1 3\n").unwrap();
    let out = tracenum(&["enumerate", "--edges", path.to_str().unwrap(), "--kind", "double", "--format", "json"]);
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["report"]["relabeling"], serde_json::json!([0, 2, 1, 3]));
}

#[test]
fn graph6_source() {
    let out = tracenum(&["enumerate", "--graph6", "C~", "--kind", "strong", "--count-only"]);
    assert_eq!(stdout(&out).trim(), "3");
}

#[test]
fn verify_tetrahedron_all_settings() {
    let out = tracenum(&["verify", "--named", "tetrahedron"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert_eq!(text.matches(": equal").count(), 12);
}

#[test]
fn verify_prism_strong() {
    let out = tracenum(&["verify", "--named", "prism:3", "--kind", "strong"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("strong: equal (oracle 25, enumerator 25"));
}

#[test]
fn verify_refuses_large_graph() {
    let out = tracenum(&["verify", "--named", "dodecahedron"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn orbit_summaries() {
    for (subgroup, want) in [
        ("gamma", "3 orbits: 288 288 96"),
        ("shift", "56 orbits of size 12"),
        ("aut", "28 orbits of size 24"),
        ("reversal", "336 orbits of size 2"),
    ] {
        let out = tracenum(&["orbits", "--named", "tetrahedron", "--kind", "strong", "--subgroup", subgroup]);
        assert!(out.status.success());
        assert!(stdout(&out).contains(want), "{subgroup}: {}", stdout(&out));
    }
}

#[test]
fn orbit_graph_dot() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.dot");
    let out = tracenum(&[
        "orbits", "--named", "tetrahedron", "--kind", "strong", "--subgroup", "reversal", "--dot",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let dot = fs::read_to_string(&path).unwrap();
    assert!(dot.starts_with("graph "));
    assert_eq!(dot.matches("label=").count(), 672);
    assert_eq!(dot.matches(" -- ").count(), 336);
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["enumerate", "--named", "tetrahedron", "--kind", "stable"][..],
        &["enumerate", "--named", "prism:2"][..],
        &["enumerate", "--named", "nonagon"][..],
        &["enumerate", "--graph6", "C~", "--named", "cube"][..],
        &["enumerate"][..],
    ] {
        assert_eq!(tracenum(args).status.code(), Some(2), "{args:?}");
    }
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("two.txt");
    fs::write(&path, "0 1\n2 3\n").unwrap();
    let out = tracenum(&["enumerate", "--edges", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("disconnected"));
}

#[test]
fn tables_default_rows_pass() {
    let out = tracenum(&["tables"]);
    assert!(out.status.success(), "{}", stdout(&out));
    let text = stdout(&out);
    assert!(!text.contains("FAIL"));
    assert!(text.lines().any(|l| l.starts_with("cube") && l.contains(" 40 ") && l.ends_with("pass")));
    assert!(text.lines().any(|l| l.starts_with("prism:6") && l.contains("antiparallel") && l.ends_with("pass")));
}
