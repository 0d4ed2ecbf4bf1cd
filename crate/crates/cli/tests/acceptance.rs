//! Acceptance criteria exercised through the CLI binary: figure-shape
//! checks on the emitted CSV and the verify exit-code contract.

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
    path.push(format!("qcat-acceptance-{}-{name}", std::process::id()));
    path
}

/// Parse a CSV into named columns of raw cell strings.
fn columns(text: &str) -> HashMap<String, Vec<String>> {
    let mut lines = text.lines();
    let header: Vec<String> = lines
        .next()
        .expect("header present")
        .split(',')
        .map(str::to_string)
        .collect();
    let mut cols: HashMap<String, Vec<String>> = header
        .iter()
        .map(|name| (name.clone(), Vec::new()))
        .collect();
    for line in lines {
        for (name, cell) in header.iter().zip(line.split(',')) {
            cols.get_mut(name).unwrap().push(cell.to_string());
        }
    }
    cols
}

fn figure_csv(preset: &str, extra: &[&str]) -> HashMap<String, Vec<String>> {
    let out = tmp_path(&format!("{preset}.csv"));
    let out_str = out.to_str().unwrap().to_string();
    let mut args = vec!["figure", "--preset", preset, "--out", &out_str];
    args.extend_from_slice(extra);
    let result = qcat(&args);
    assert!(result.status.success(), "figure {preset} failed");
    let text = std::fs::read_to_string(&out).expect("figure file written");
    let _ = std::fs::remove_file(&out);
    columns(&text)
}

fn nums(cols: &HashMap<String, Vec<String>>, name: &str) -> Vec<f64> {
    cols[name]
        .iter()
        .map(|cell| cell.parse::<f64>().unwrap_or_else(|_| panic!("non-numeric cell '{cell}' in {name}")))
        .collect()
}

#[test]
fn criterion_10_figure_shapes() {
    // fig4a: odd-n cat probabilities exactly zero, total mass >= 1 - 1e-10
    let fig4a = figure_csv("fig4a", &[]);
    let n: Vec<usize> = fig4a["n"].iter().map(|s| s.parse().unwrap()).collect();
    let p_cat = nums(&fig4a, "p_cat_even");
    let p_coh = nums(&fig4a, "p_coherent");
    for (&level, &p) in n.iter().zip(&p_cat) {
        if level % 2 == 1 {
            assert_eq!(p, 0.0, "P_{level} of the even cat is not exactly zero");
        }
    }
    assert!(p_cat.iter().sum::<f64>() >= 1.0 - 1e-10, "cat mass lost");
    assert!(p_coh.iter().sum::<f64>() >= 1.0 - 1e-10, "coherent mass lost");

    // fig3: at least one q where var_y dips below sqrt(gur_rhs_sq)
    let fig3 = figure_csv("fig3", &[]);
    let var_y = nums(&fig3, "var_y");
    let rhs_sq = nums(&fig3, "gur_rhs_sq");
    assert!(
        var_y
            .iter()
            .zip(&rhs_sq)
            .any(|(v, r)| *v < r.sqrt()),
        "no squeezing found in fig3 output"
    );

    // fig5b: every cat-odd Mandel column entirely negative
    let fig5b = figure_csv("fig5b", &[]);
    for (name, cells) in &fig5b {
        if name.starts_with("mandel") {
            for cell in cells {
                let value: f64 = cell.parse().expect("numeric mandel cell");
                assert!(value < 0.0, "{name} has non-negative entry {value}");
            }
        }
    }

    // fig1a: uncertainty relation holds at every row
    let fig1a = figure_csv("fig1a", &[]);
    let lhs = nums(&fig1a, "gur_lhs_sq");
    let rhs = nums(&fig1a, "gur_rhs_sq");
    for (l, r) in lhs.iter().zip(&rhs) {
        assert!(l >= r, "fig1a row with lhs^2 {l} < rhs^2 {r}");
    }

    println!("criterion 10 (figure-shape checks): pass");
}

#[test]
fn criterion_11_verify_contract() {
    let result = qcat(&["verify"]);
    let stdout = String::from_utf8_lossy(&result.stdout);
    assert!(
        result.status.code() == Some(0),
        "default verify must exit 0; stdout:\n{stdout}"
    );
    assert!(stdout.contains("paper discrepancies"));
    assert!(
        stdout.contains("fourth-moment"),
        "paper section must name the cat fourth-moment family"
    );
    assert!(
        stdout.contains("E_q(-2|alpha|^2)"),
        "paper section must name the substitution"
    );
    // the section is non-empty: it reports actual disagreement counts
    assert!(stdout.contains("disagree with the oracle at"));

    println!("criterion 11 (verify CLI contract): pass");
}
