use std::process::{Command, Output};

fn tropsev(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tropsev"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("valid JSON on stdout")
}

#[test]
fn classify_reports_certificates_and_exit_codes() {
    let out = tropsev(&["classify", "--n", "5", "--w", "2,0,1,0,1,0"]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!(v["schema"], "tropsev/1");
    assert_eq!(v["member"], true);
    assert_eq!(v["certificates"][0]["type"], "III");
    assert_eq!(v["certificates"][0]["sigma"], serde_json::json!([1, 3, 5]));
    assert_eq!(v["certificates"][0]["d"], 2);
    assert_eq!(v["certificates"][0]["tie"], serde_json::json!([2, 4]));

    // domain refusal exits 1
    let out = tropsev(&["classify", "--n", "4", "--w", "0,0,0,1,0"]);
    assert_eq!(out.status.code(), Some(1));
    let v = stdout_json(&out);
    assert_eq!(v["member"], false);

    // malformed input exits 2
    let out = tropsev(&["classify", "--n", "5", "--w", "2,0,1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn witness_output_round_trips_through_verify() {
    for w in ["2,1,0,0,0,1", "2,0,0,1,0,0", "2,0,1,0,1,0"] {
        let out = tropsev(&["witness", "--n", "5", "--w", w, "--trunc", "8"]);
        assert!(out.status.success(), "witness failed for {}", w);
        let doc = stdout_json(&out);
        assert_eq!(doc["verification"]["all_passed"], true);
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("witness.json");
        std::fs::write(&path, &out.stdout).unwrap();
        let verify = tropsev(&["verify", "--file", path.to_str().unwrap()]);
        assert!(verify.status.success(), "verify failed for {}", w);
        let vdoc = stdout_json(&verify);
        assert_eq!(vdoc["all_passed"], true);
    }
}

#[test]
fn minors_reports_the_closed_form() {
    let out = tropsev(&["minors", "--J", "0,1,2,3"]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!(v["poly"], "x^5-4x^4+6x^3-4x^2+x");
    assert_eq!(v["degree"], 5);
    assert_eq!(v["order"], 1);
    assert_eq!(v["exceptional"]["scale"], 1);
}

#[test]
fn cones_enumeration_respects_the_budget() {
    let out = tropsev(&["cones", "--n", "4", "--type", "II"]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    let cells: Vec<_> = v["cones"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["data"]["cell"].clone())
        .collect();
    assert!(cells.contains(&serde_json::json!([0, 1, 3, 4])));
    assert!(!cells.contains(&serde_json::json!([0, 1, 2, 3])));
    // out of budget
    let out = tropsev(&["cones", "--n", "13"]);
    assert_eq!(out.status.code(), Some(2));
    // threaded run agrees
    let a = tropsev(&["cones", "--n", "5"]);
    let b = tropsev(&["cones", "--n", "5", "--threads", "4"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn tropkernel_accepts_series_matrix_files() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("matrix.txt");
    std::fs::write(
        &path,
        "# generic 2-plane\n1,1,1,1\n0,1,2,3\n",
    )
    .unwrap();
    let out = tropsev(&[
        "tropkernel",
        "--matrix",
        path.to_str().unwrap(),
        "--w",
        "0,0,0,0",
    ]);
    assert!(out.status.success());
    assert_eq!(stdout_json(&out)["member"], true);
    let out2 = tropsev(&[
        "tropkernel",
        "--matrix",
        path.to_str().unwrap(),
        "--w",
        "0,0,0,0",
        "--circuits",
    ]);
    assert_eq!(stdout_json(&out2)["member"], true);
    // a refused weight exits 1 and reports the refuting subset
    let out3 = tropsev(&[
        "tropkernel",
        "--matrix",
        path.to_str().unwrap(),
        "--w",
        "0,1,2,3",
    ]);
    assert_eq!(out3.status.code(), Some(1));
    let v = stdout_json(&out3);
    assert_eq!(v["member"], false);
    assert!(v["refutation"]["subset"].is_array());
}

#[test]
fn diagram_renders_stars_and_dashed_ties() {
    let out = tropsev(&["diagram", "--n", "5", "--w", "2,0,1,0,1,0"]);
    assert!(out.status.success());
    let svg = String::from_utf8(out.stdout).unwrap();
    assert!(svg.starts_with("<svg"));
    assert!(svg.contains("stroke-dasharray"), "hidden tie not dashed");
    assert!(svg.contains("<path d=\"M"), "no star/hull path");
}

#[test]
fn deterministic_output() {
    let a = tropsev(&["witness", "--n", "5", "--w", "2,0,0,1,0,0", "--trunc", "6"]);
    let b = tropsev(&["witness", "--n", "5", "--w", "2,0,0,1,0,0", "--trunc", "6"]);
    assert_eq!(a.stdout, b.stdout);
}
