use std::process::{Command, Output};

use serde_json::Value;

fn rectadd(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rectadd"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn report(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is a JSON report")
}

#[test]
fn counterexample_is_byte_identical_across_runs() {
    let args = ["counterexample", "--samples", "300", "--seed", "11"];
    let a = rectadd(&args);
    let b = rectadd(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let json = report(&a);
    assert_eq!(json["schema"], 1);
    assert_eq!(json["inputs"]["seed"], "11");
}

#[test]
fn product_counterexample_exits_nonzero() {
    let out = rectadd(&["counterexample", "--function", "product", "--samples", "20"]);
    assert_eq!(out.status.code(), Some(1));
    let json = report(&out);
    assert_eq!(json["exit_status"], 1);
    let statuses: Vec<&str> = json["findings"]
        .as_array()
        .unwrap()
        .iter()
        .map(|f| f["status"].as_str().unwrap())
        .collect();
    assert!(statuses.contains(&"violated"));
}

#[test]
fn decompose_writes_svg_and_json() {
    let dir = tempfile::tempdir().unwrap();
    let svg = dir.path().join("fig.svg");
    let json = dir.path().join("report.json");
    let out = rectadd(&[
        "decompose",
        "--rect",
        "[0,8]x[0,5]",
        "--svg",
        svg.to_str().unwrap(),
        "--json",
        json.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let figure = std::fs::read_to_string(&svg).unwrap();
    assert_eq!(figure.matches(r#"class="square""#).count(), 5);
    assert!(!figure.contains(r#"class="remainder""#));
    let written: Value = serde_json::from_str(&std::fs::read_to_string(&json).unwrap()).unwrap();
    assert_eq!(written, report(&out));
    assert_eq!(written["details"]["square_count"], 5);
}

#[test]
fn silver_figure_has_hatched_remainder() {
    let dir = tempfile::tempdir().unwrap();
    let svg = dir.path().join("silver.svg");
    let out = rectadd(&[
        "decompose",
        "--rect",
        "[0,1+1*sqrt2]x[0,1]",
        "--max-steps",
        "12",
        "--svg",
        svg.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let figure = std::fs::read_to_string(&svg).unwrap();
    assert_eq!(figure.matches(r#"class="square""#).count(), 24);
    assert_eq!(figure.matches(r#"class="remainder""#).count(), 1);
    assert_eq!(report(&out)["details"]["terminated"], false);
}

#[test]
fn dyadic_approx_flags_the_counterexample() {
    let out = rectadd(&["dyadic-approx", "--max-order", "6"]);
    assert_eq!(out.status.code(), Some(1));
    let json = report(&out);
    assert_eq!(json["details"][3]["gap"], "-11/8");

    let out = rectadd(&["dyadic-approx", "--function", "product", "--max-order", "6"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn probe_reports_exact_quotients() {
    let out = rectadd(&[
        "probe",
        "--function",
        "counterexample",
        "--point",
        "1/2,1/2",
        "--alpha",
        "2",
        "--depth",
        "4",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let json = report(&out);
    assert_eq!(json["findings"][0]["status"], "evidence-only");
    assert_eq!(
        json["findings"][0]["exact_values"],
        serde_json::json!(["4", "16", "64", "256"])
    );
}

#[test]
fn probe_records_region_containment() {
    let out = rectadd(&[
        "probe",
        "--point",
        "0,0",
        "--offsets",
        "2",
        "--depth",
        "3",
        "--region",
        "[0,1]x[0,1]",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let json = report(&out);
    let flags: Vec<bool> = json["details"]["scales"]
        .as_array()
        .unwrap()
        .iter()
        .flat_map(|s| s["samples"].as_array().unwrap().iter())
        .map(|s| s["inside_region"].as_bool().unwrap())
        .collect();
    // every square placed around the corner pokes outside the unit square
    assert_eq!(flags, vec![false; 6]);
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["probe", "--alpha", "5/2"][..],
        &["proptest", "--suite", "nope"],
        &["decompose", "--rect", "[1,0]x[0,1]"],
        &["counterexample", "--samples", "0"],
        &["dyadic-approx", "--max-order", "0"],
    ] {
        let out = rectadd(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(out.stdout.is_empty());
    }
}

#[test]
fn proptest_suites_pass_with_fixed_seeds() {
    for (suite, cases) in [
        ("halving", "500"),
        ("oracle", "1"),
        ("field", "10000"),
        ("tiling", "40"),
    ] {
        let out = rectadd(&["proptest", "--suite", suite, "--cases", cases, "--seed", "1"]);
        assert_eq!(out.status.code(), Some(0), "{suite}");
        assert_eq!(report(&out)["findings"][0]["status"], "verified");
    }
}
