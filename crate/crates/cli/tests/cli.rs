use std::process::{Command, Output};

fn polyop(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_polyop")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8 output")
}

#[test]
fn involution_on_simplex_passes() {
    let o = polyop(&["involution", "--builtin", "simplex:3", "--mode", "f2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "PASS");
}

#[test]
fn cyclic_face_fails_validation() {
    let dir = std::env::temp_dir().join(format!("polyop-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("bad.json");
    let bad = r#"{
      "name": "bad triangle",
      "vertices": ["a", "b", "c"],
      "edges": [{"from": "a", "to": "b"}, {"from": "b", "to": "c"}, {"from": "c", "to": "a"}],
      "faces": [{"id": "abc", "vertices": ["a", "b", "c"]}]
    }"#;
    std::fs::write(&path, bad).unwrap();
    let o = polyop(&["validate", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("abc"), "{}", stdout(&o));
}

#[test]
fn cube_is_short() {
    let o = polyop(&["short", "--builtin", "cube:3"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "short: true");
}

#[test]
fn pyramid_witness_is_not_short() {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/../core/data/nonshort_pyramid.json");
    let o = polyop(&["short", path]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).starts_with("short: false"));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(polyop(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(polyop(&["short", "--builtin", "simplex:x"]).status.code(), Some(2));
    assert_eq!(polyop(&["short", "/nonexistent/file.json"]).status.code(), Some(2));
    assert_eq!(polyop(&["dims", "--builtin", "interval", "--arity", "q->s"]).status.code(), Some(2));
}

#[test]
fn dims_reports_excess() {
    let o = polyop(&["dims", "--builtin", "interval", "--arity", "x->s"]);
    assert_eq!(stdout(&o).trim(), "x->s\t1\t1\t1");
}

#[test]
fn builtin_round_trips_through_the_loader() {
    let o = polyop(&["builtin", "product:simplex:1,simplex:2"]);
    assert_eq!(o.status.code(), Some(0));
    let dir = std::env::temp_dir().join(format!("polyop-rt-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("prism.json");
    std::fs::write(&path, &o.stdout).unwrap();
    let v = polyop(&["validate", path.to_str().unwrap()]);
    assert_eq!(stdout(&v).trim(), "valid");
    let again = polyop(&["product", "simplex:1", "simplex:2"]);
    assert_eq!(again.stdout, o.stdout);
}

#[test]
fn output_is_independent_of_worker_count() {
    let args = |jobs: &'static str| {
        ["--jobs", jobs, "--format", "json", "hilbert", "--builtin", "polygon:2,1"]
    };
    let one = polyop(&args("1"));
    let four = polyop(&args("4"));
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(one.stdout, four.stdout);
    let nf1 = polyop(&["--jobs", "1", "normal-forms", "polygon", "1", "1", "--max-inputs", "3"]);
    let nf4 = polyop(&["--jobs", "4", "normal-forms", "polygon", "1", "1", "--max-inputs", "3"]);
    assert_eq!(nf1.stdout, nf4.stdout);
}

#[test]
fn seed_is_ignored() {
    let plain = polyop(&["hilbert", "--builtin", "simplex:2"]);
    let seeded = Command::new(env!("CARGO_BIN_EXE_polyop"))
        .args(["hilbert", "--builtin", "simplex:2"])
        .env("POLYOP_SEED", "1234")
        .output()
        .unwrap();
    assert_eq!(plain.stdout, seeded.stdout);
}

#[test]
fn every_subcommand_has_json_mode() {
    let runs: &[&[&str]] = &[
        &["validate", "--builtin", "cube:2"],
        &["chains", "--builtin", "interval", "--face", "s", "--n", "2"],
        &["short", "--builtin", "cube:2"],
        &["dims", "--builtin", "simplex:2", "--arity", "0,012->012"],
        &["hilbert", "--builtin", "interval"],
        &["invert", "--builtin", "interval"],
        &["involution", "--builtin", "interval"],
        &["diagonal", "--builtin", "simplex:2", "--n", "2", "--k", "1"],
        &["ainfty", "--builtin", "simplex:2"],
        &["normal-forms", "simplex", "1", "--max-inputs", "2"],
    ];
    for run in runs {
        let mut args = vec!["--format", "json"];
        args.extend_from_slice(run);
        let o = polyop(&args);
        assert_eq!(o.status.code(), Some(0), "{run:?}");
        serde_json::from_slice::<serde_json::Value>(&o.stdout).unwrap_or_else(|e| panic!("{run:?}: {e}"));
    }
}

#[test]
fn simplex_normal_form_example() {
    let o = polyop(&["normal-forms", "simplex", "6", "--arity", "13,6,6->12346"]);
    assert!(stdout(&o).contains("B(U_2(13),B(U_3(U_4(6)),6))"), "{}", stdout(&o));
}
