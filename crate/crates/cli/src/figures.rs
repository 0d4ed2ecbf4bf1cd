//! Figure presets: fixed parameter bindings that emit the CSV data behind
//! each plot. Multi-curve presets (fig2, fig5) take the deformation list
//! from --q-list; the captions do not pin those values.

use num_complex::Complex64;

use qcat_core::observables::ordinary_mandel;
use qcat_core::par;
use qcat_core::qmath::DeformationParameter;
use qcat_core::states::{
    cat_coefficients, choose_truncation, coherent_coefficients, photon_distribution, Parity,
    StateKind, StateSpec,
};

use crate::output::{csv, fmt_f64, write_table};
use crate::rows::{evaluate, linspace, reason_code, Cell, OutputField};
use crate::{usage_error, FigureArgs};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Preset {
    Fig1a,
    Fig1b,
    Fig2,
    Fig3,
    Fig4a,
    Fig4b,
    Fig5a,
    Fig5b,
}

fn parse_preset(id: &str) -> Option<Preset> {
    match id {
        "fig1a" => Some(Preset::Fig1a),
        "fig1b" => Some(Preset::Fig1b),
        "fig2" => Some(Preset::Fig2),
        "fig3" => Some(Preset::Fig3),
        "fig4a" => Some(Preset::Fig4a),
        "fig4b" => Some(Preset::Fig4b),
        "fig5a" => Some(Preset::Fig5a),
        "fig5b" => Some(Preset::Fig5b),
        _ => None,
    }
}

pub fn run(args: FigureArgs) -> i32 {
    let Some(preset) = parse_preset(&args.preset) else {
        return usage_error(format!("unknown preset '{}'", args.preset));
    };
    let q_list: Vec<f64> = match args
        .q_list
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| s.parse::<f64>().map_err(|_| s.to_string()))
        .collect()
    {
        Ok(list) => list,
        Err(bad) => return usage_error(format!("--q-list entry '{bad}' is not a number")),
    };
    if q_list.is_empty() {
        return usage_error("--q-list must name at least one value");
    }
    let table = match preset {
        Preset::Fig1a => gur_sides_vs_alpha(),
        Preset::Fig1b => gur_sides_vs_q(),
        Preset::Fig2 => quadratures_vs_alpha(&q_list),
        Preset::Fig3 => y_variance_vs_q(),
        Preset::Fig4a => distributions(2.1),
        Preset::Fig4b => distributions(1.8),
        Preset::Fig5a => mandel_vs_alpha(&q_list, Parity::Even),
        Preset::Fig5b => mandel_vs_alpha(&q_list, Parity::Odd),
    };
    match table.and_then(|t| write_table(args.out.as_deref(), &t)) {
        Ok(()) => 0,
        Err(err) => usage_error(err),
    }
}

/// Both sides of the uncertainty relation for the even cat at q = 0.8, swept
/// over alpha inside the radius sqrt(1/(1-0.64)) = 1.666..
fn gur_sides_vs_alpha() -> Result<String, String> {
    let outputs = [OutputField::GurLhsSq, OutputField::GurRhsSq];
    let values = linspace(0.02, 1.66, 165);
    let rows: Vec<Vec<String>> = par::map(&values, |a| {
        let mut row = vec![fmt_f64(*a)];
        let cells = evaluate(StateKind::CatEven, 0.8, Complex64::new(*a, 0.0), &outputs);
        row.extend(cells.iter().map(|c| c.render()));
        row
    });
    let header = vec![
        "alpha".to_string(),
        "gur_lhs_sq".to_string(),
        "gur_rhs_sq".to_string(),
    ];
    Ok(csv(&header, &rows))
}

/// Both sides of the uncertainty relation for the even cat at |alpha| = 0.8,
/// swept over q.
fn gur_sides_vs_q() -> Result<String, String> {
    let outputs = [OutputField::GurLhsSq, OutputField::GurRhsSq];
    let values = linspace(0.5, 1.0, 101);
    let rows: Vec<Vec<String>> = par::map(&values, |q| {
        let mut row = vec![fmt_f64(*q)];
        let cells = evaluate(StateKind::CatEven, *q, Complex64::new(0.8, 0.0), &outputs);
        row.extend(cells.iter().map(|c| c.render()));
        row
    });
    let header = vec![
        "q".to_string(),
        "gur_lhs_sq".to_string(),
        "gur_rhs_sq".to_string(),
    ];
    Ok(csv(&header, &rows))
}

/// Even-cat quadrature variances vs alpha, one column group per q.
fn quadratures_vs_alpha(q_list: &[f64]) -> Result<String, String> {
    let outputs = [OutputField::VarY, OutputField::VarX, OutputField::GQ];
    let mut header = vec!["alpha".to_string()];
    for q in q_list {
        header.push(format!("var_y_q{q}"));
        header.push(format!("var_x_q{q}"));
        header.push(format!("g_q_q{q}"));
    }
    let values = linspace(0.02, 1.66, 165);
    let rows: Vec<Vec<String>> = par::map(&values, |a| {
        let mut row = vec![fmt_f64(*a)];
        for q in q_list {
            let cells = evaluate(StateKind::CatEven, *q, Complex64::new(*a, 0.0), &outputs);
            row.extend(cells.iter().map(|c| c.render()));
        }
        row
    });
    Ok(csv(&header, &rows))
}

/// Even-cat Y variance against the uncertainty bound at |alpha| = 0.9,
/// swept over q.
fn y_variance_vs_q() -> Result<String, String> {
    let outputs = [
        OutputField::VarY,
        OutputField::GQ,
        OutputField::GurRhsSq,
        OutputField::YSqueezed,
    ];
    let values = linspace(0.5, 1.0, 101);
    let rows: Vec<Vec<String>> = par::map(&values, |q| {
        let mut row = vec![fmt_f64(*q)];
        let cells = evaluate(StateKind::CatEven, *q, Complex64::new(0.9, 0.0), &outputs);
        row.extend(cells.iter().map(|c| c.render()));
        row
    });
    let header = vec![
        "q".to_string(),
        "var_y".to_string(),
        "g_q".to_string(),
        "gur_rhs_sq".to_string(),
        "y_squeezed".to_string(),
    ];
    Ok(csv(&header, &rows))
}

/// Photon distributions of the coherent state and the even cat at q = 0.9,
/// one row per Fock level up to the verified truncation.
fn distributions(alpha: f64) -> Result<String, String> {
    let q = DeformationParameter::new(0.9).expect("q = 0.9 is valid");
    let alpha = Complex64::new(alpha, 0.0);
    let coherent_spec = StateSpec {
        alpha,
        q,
        kind: StateKind::Coherent,
    };
    let cat_spec = StateSpec {
        alpha,
        q,
        kind: StateKind::CatEven,
    };
    let build = || -> Result<(Vec<f64>, Vec<f64>), qcat_core::Error> {
        let n = choose_truncation(&coherent_spec, 1e-12, 0)?
            .max(choose_truncation(&cat_spec, 1e-12, 0)?);
        let coherent = photon_distribution(&coherent_coefficients(&coherent_spec, n)?);
        let cat = photon_distribution(&cat_coefficients(&cat_spec, n)?);
        Ok((coherent, cat))
    };
    let (coherent, cat) = build().map_err(|err| err.to_string())?;
    let header = vec![
        "n".to_string(),
        "p_coherent".to_string(),
        "p_cat_even".to_string(),
    ];
    let rows: Vec<Vec<String>> = coherent
        .iter()
        .zip(&cat)
        .enumerate()
        .map(|(n, (pc, pe))| vec![n.to_string(), fmt_f64(*pc), fmt_f64(*pe)])
        .collect();
    Ok(csv(&header, &rows))
}

/// Cat Mandel parameters vs alpha: paper and derived columns per q, plus the
/// printed undeformed (q = 1) curve.
fn mandel_vs_alpha(q_list: &[f64], parity: Parity) -> Result<String, String> {
    let kind = match parity {
        Parity::Even => StateKind::CatEven,
        Parity::Odd => StateKind::CatOdd,
    };
    let outputs = [OutputField::MandelPaper, OutputField::MandelDerived];
    let mut header = vec!["alpha".to_string()];
    for q in q_list {
        header.push(format!("mandel_paper_q{q}"));
        header.push(format!("mandel_derived_q{q}"));
    }
    header.push("mandel_ordinary".to_string());
    let values = linspace(0.05, 1.65, 161);
    let rows: Vec<Vec<String>> = par::map(&values, |a| {
        let alpha = Complex64::new(*a, 0.0);
        let mut row = vec![fmt_f64(*a)];
        for q in q_list {
            let cells = evaluate(kind, *q, alpha, &outputs);
            row.extend(cells.iter().map(|c| c.render()));
        }
        let ordinary = match ordinary_mandel(alpha, parity) {
            Ok(v) => Cell::Num(v),
            Err(err) => Cell::Missing(reason_code(&err)),
        };
        row.push(ordinary.render());
        row
    });
    Ok(csv(&header, &rows))
}
