//! CLI behaviour: exit codes, domain diagnostics, output determinism,
//! out-of-domain reason codes and the report surface.

use std::collections::HashMap;
use std::path::PathBuf;
use std::process::{Command, Output};

fn qcat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qcat"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn tmp_path(name: &str) -> PathBuf {
    let mut path = std::env::temp_dir();
    path.push(format!("qcat-cli-{}-{name}", std::process::id()));
    path
}

#[test]
fn report_vacuum_coherent() {
    let out = qcat(&["report", "--q", "1", "--alpha-re", "0", "--kind", "coherent"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("var_x           2.500000000000e-1"), "{text}");
    assert!(text.contains("P_0             1.000000000000e0"));
    assert!(text.contains("mandel derived  undefined_at_vacuum"));
}

#[test]
fn report_json_fields() {
    let out = qcat(&[
        "report", "--q", "0.9", "--alpha-re", "2.1", "--kind", "cat-even", "--format", "json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let value: serde_json::Value =
        serde_json::from_slice(&out.stdout).expect("report is valid JSON");
    assert!(value["flags"]["y_squeezed"].is_boolean());
    assert_eq!(value["flags"]["y_squeezed"], serde_json::json!(true));
    let dist = value["photon_distribution"].as_array().unwrap();
    assert_eq!(dist.len(), 32);
    // parity zeros at odd levels
    assert_eq!(dist[1].as_f64().unwrap(), 0.0);
    assert_eq!(dist[3].as_f64().unwrap(), 0.0);
    assert!(dist[2].as_f64().unwrap() > 0.0);
    // both fourth-moment variants are on the surface
    assert!(value["moments"]["mean_adag_a_adag_a"].is_f64());
    assert!(value["moments"]["mean_adag_a_adag_a_paper"].is_f64());
    assert!(value["number"]["mandel_paper"].is_f64());
    assert!(value["number"]["mandel_derived"].is_f64());
}

#[test]
fn report_rejects_nonnormalizable_alpha() {
    // 2.4^2 = 5.76 exceeds the radius 5.263.. at q = 0.9
    let out = qcat(&["report", "--q", "0.9", "--alpha-re", "2.4", "--kind", "coherent"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("radius"), "{err}");
}

#[test]
fn report_rejects_null_cat() {
    let out = qcat(&["report", "--q", "0.9", "--alpha-re", "0", "--kind", "cat-odd"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn unknown_flag_is_usage_error() {
    let out = qcat(&["report", "--q", "0.9", "--frobnicate"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn sweep_row_count_and_determinism() {
    let args = [
        "sweep", "--var", "alpha", "--from", "0.1", "--to", "1.0", "--steps", "2", "--q", "0.9",
        "--kind", "cat-even",
    ];
    let first = qcat(&args);
    assert_eq!(first.status.code(), Some(0));
    let text = String::from_utf8_lossy(&first.stdout);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 3, "header + exactly 2 rows:\n{text}");
    assert!(lines[0].starts_with("alpha,var_x,var_y,"));
    let second = qcat(&args);
    assert_eq!(first.stdout, second.stdout, "sweep output must be byte-identical");
}

#[test]
fn sweep_emits_reason_codes_not_nan() {
    // the sweep crosses the radius sqrt(5.263..) = 2.294 at q = 0.9
    let out = qcat(&[
        "sweep", "--var", "alpha", "--from", "2.0", "--to", "2.4", "--steps", "5", "--q", "0.9",
        "--kind", "coherent",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(!text.to_lowercase().contains("nan"), "{text}");
    assert!(text.contains("non_normalizable"), "{text}");
    // in-domain rows stay numeric
    assert!(text.lines().nth(1).unwrap().contains("e-"), "{text}");
}

#[test]
fn sweep_validates_arguments() {
    let out = qcat(&[
        "sweep", "--var", "alpha", "--from", "1.0", "--to", "0.5", "--steps", "10", "--q", "0.9",
        "--kind", "coherent",
    ]);
    assert_eq!(out.status.code(), Some(2));
    let out = qcat(&[
        "sweep", "--var", "alpha", "--from", "0.1", "--to", "0.5", "--steps", "1", "--q", "0.9",
        "--kind", "coherent",
    ]);
    assert_eq!(out.status.code(), Some(2));
    // sweeping alpha without a fixed q
    let out = qcat(&[
        "sweep", "--var", "alpha", "--from", "0.1", "--to", "0.5", "--steps", "4", "--kind",
        "coherent",
    ]);
    assert_eq!(out.status.code(), Some(2));
    // unknown output column
    let out = qcat(&[
        "sweep", "--var", "alpha", "--from", "0.1", "--to", "0.5", "--steps", "4", "--q", "0.9",
        "--kind", "coherent", "--outputs", "var_x,bogus",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn sweep_q_axis_reproduces_fig1b_data() {
    let out = qcat(&[
        "sweep", "--var", "q", "--from", "0.5", "--to", "1.0", "--steps", "6", "--alpha-re",
        "0.8", "--kind", "cat-even", "--outputs", "gur_lhs_sq,gur_rhs_sq",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8_lossy(&out.stdout);
    for line in text.lines().skip(1) {
        let cells: Vec<f64> = line.split(',').map(|c| c.parse().unwrap()).collect();
        assert!(cells[1] >= cells[2], "uncertainty relation violated: {line}");
    }
}

#[test]
fn sweep_writes_file_atomically() {
    let out_path = tmp_path("sweep.csv");
    let out_str = out_path.to_str().unwrap();
    let result = qcat(&[
        "sweep", "--var", "alpha", "--from", "0.1", "--to", "1.0", "--steps", "10", "--q", "0.9",
        "--kind", "coherent", "--out", out_str,
    ]);
    assert_eq!(result.status.code(), Some(0));
    let text = std::fs::read_to_string(&out_path).unwrap();
    assert_eq!(text.lines().count(), 11);
    assert!(!out_path.with_extension("csv.tmp").exists());
    let _ = std::fs::remove_file(&out_path);
}

#[test]
fn figure_unknown_preset_is_rejected() {
    let out = qcat(&["figure", "--preset", "fig9z"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn figure_fig5_q_list_is_configurable() {
    let out = qcat(&["figure", "--preset", "fig5a", "--q-list", "0.9"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8_lossy(&out.stdout);
    let header = text.lines().next().unwrap();
    assert_eq!(
        header,
        "alpha,mandel_paper_q0.9,mandel_derived_q0.9,mandel_ordinary"
    );
    // even-cat ordinary Mandel is positive, the deformed one goes negative
    // somewhere in the sweep
    let cols: Vec<Vec<f64>> = text
        .lines()
        .skip(1)
        .map(|l| l.split(',').map(|c| c.parse().unwrap()).collect())
        .collect();
    assert!(cols.iter().all(|row| row[3] > 0.0));
    assert!(cols.iter().any(|row| row[2] < 0.0));
}

#[test]
fn figure_determinism() {
    let first = qcat(&["figure", "--preset", "fig2"]);
    let second = qcat(&["figure", "--preset", "fig2"]);
    assert_eq!(first.status.code(), Some(0));
    assert_eq!(first.stdout, second.stdout);
}

#[test]
fn verify_tight_tolerance_fails_with_code_1() {
    // tighter than f64 can deliver on the large-magnitude moments
    let out = qcat(&["verify", "--rel-tol", "1e-15", "--abs-tol", "1e-16"]);
    assert_eq!(out.status.code(), Some(1));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("FAIL"));
    assert!(text.contains("failures:"));
}

#[test]
fn verify_grid_filter_q1() {
    let out = qcat(&["verify", "--grid", "q=1"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8_lossy(&out.stdout);
    // the literal series converges everywhere at q = 1 and matches
    assert!(text.contains("literal series converges at every grid point here"));
    assert!(text.contains("convergent literal evaluations all match the overlap ratio"));
    // the cat fourth-moment family still differs at q = 1 (F != 1)
    assert!(text.contains("fourth-moment"));
}

#[test]
fn verify_rejects_bad_grid_filter() {
    let out = qcat(&["verify", "--grid", "banana=1"]);
    assert_eq!(out.status.code(), Some(2));
    let out = qcat(&["verify", "--grid", "q=0.123"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_json_is_structured() {
    let out = qcat(&["verify", "--grid", "q=0.8", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let value: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(value["passed"], serde_json::json!(true));
    assert!(value["sections"]["grid"]["derived_total"].as_u64().unwrap() > 0);
    assert!(!value["paper_discrepancies"].as_array().unwrap().is_empty());
}

/// Spot-check one CSV cell against an independently computed value:
/// var_x = var_y = (1 + (q^2 - 1)|alpha|^2)/4 for the coherent state.
#[test]
fn sweep_cell_matches_closed_form() {
    let out = qcat(&[
        "sweep", "--var", "alpha", "--from", "1.0", "--to", "2.0", "--steps", "2", "--q", "0.9",
        "--kind", "coherent", "--outputs", "var_x,var_y",
    ]);
    let text = String::from_utf8_lossy(&out.stdout);
    let row: Vec<&str> = text.lines().nth(1).unwrap().split(',').collect();
    let var_x: f64 = row[1].parse().unwrap();
    assert!((var_x - 0.25 * (1.0 - 0.19)).abs() <= 1e-15);
    let _cols: HashMap<String, Vec<String>> = HashMap::new();
}
