//! The report subcommand: every observable for one state, as aligned text
//! or JSON.

use num_complex::Complex64;
use serde_json::json;

use qcat_core::observables::{
    cat_moments, cat_number_report, cat_quadratures, coherent_moments, coherent_number_report,
    coherent_quadratures, MomentSet, NumberReport, QuadratureReport,
};
use qcat_core::qmath::DeformationParameter;
use qcat_core::states::{build_state, choose_truncation, photon_distribution, StateKind, StateSpec};
use qcat_core::Error;

use crate::{usage_error, ReportArgs, ReportFormat};

/// Levels of the photon distribution included in the report.
const DISTRIBUTION_HEAD: usize = 32;

struct Report {
    kind: StateKind,
    q: f64,
    alpha: Complex64,
    radius: f64,
    truncation: usize,
    tail_residual: f64,
    moments: MomentSet,
    fourth_moment_paper: Option<f64>,
    quad: QuadratureReport,
    number: Option<NumberReport>,
    distribution: Vec<f64>,
}

pub fn run(args: ReportArgs) -> i32 {
    match build(&args) {
        Ok(report) => {
            match args.format {
                ReportFormat::Text => print!("{}", render_text(&report)),
                ReportFormat::Json => println!("{}", render_json(&report)),
            }
            0
        }
        Err(err) => usage_error(err),
    }
}

fn build(args: &ReportArgs) -> Result<Report, Error> {
    let q = DeformationParameter::new(args.q)?;
    let alpha = Complex64::new(args.alpha_re, args.alpha_im);
    let kind: StateKind = args.kind.into();
    let spec = StateSpec { alpha, q, kind };
    spec.validate()?;
    let n = choose_truncation(&spec, 1e-12, 4)?;
    let state = build_state(&spec, n)?;
    let distribution: Vec<f64> = photon_distribution(&state)
        .into_iter()
        .take(DISTRIBUTION_HEAD)
        .collect();
    let (moments, fourth_moment_paper, quad) = match kind {
        StateKind::Coherent => (
            coherent_moments(alpha, q)?,
            None,
            coherent_quadratures(alpha, q)?,
        ),
        StateKind::CatEven | StateKind::CatOdd => {
            let parity = kind.parity().unwrap();
            let cm = cat_moments(alpha, q, parity)?;
            (
                cm.moments,
                Some(cm.fourth_moment_paper),
                cat_quadratures(alpha, q, parity)?,
            )
        }
    };
    let number = match kind {
        StateKind::Coherent => coherent_number_report(alpha, q),
        StateKind::CatEven | StateKind::CatOdd => {
            cat_number_report(alpha, q, kind.parity().unwrap())
        }
    };
    let number = match number {
        Ok(rep) => Some(rep),
        Err(Error::UndefinedAtVacuum) => None,
        Err(err) => return Err(err),
    };
    Ok(Report {
        kind,
        q: args.q,
        alpha,
        radius: q.radius(),
        truncation: state.truncation(),
        tail_residual: state.tail_residual(),
        moments,
        fourth_moment_paper,
        quad,
        number,
        distribution,
    })
}

fn fmt(v: f64) -> String {
    format!("{v:.12e}")
}

fn fmt_c(z: Complex64) -> String {
    format!("{:.12e} {:+.12e}i", z.re, z.im)
}

fn render_text(r: &Report) -> String {
    let mut out = String::new();
    let mut line = |s: &str| {
        out.push_str(s);
        out.push('\n');
    };
    line("state");
    line(&format!("  kind            {}", r.kind));
    line(&format!("  q               {}", r.q));
    line(&format!("  alpha           {}", fmt_c(r.alpha)));
    line(&format!("  radius          {}", r.radius));
    line("truncation");
    line(&format!("  levels          0..={}", r.truncation));
    line(&format!("  tail_residual   {}", fmt(r.tail_residual)));
    line("moments");
    line(&format!("  <A>             {}", fmt_c(r.moments.mean_a)));
    line(&format!("  <A^dag>         {}", fmt_c(r.moments.mean_adag)));
    line(&format!("  <AA>            {}", fmt_c(r.moments.mean_aa)));
    line(&format!("  <A^dagA^dag>    {}", fmt_c(r.moments.mean_adag_adag)));
    line(&format!("  <A^dagA>        {}", fmt(r.moments.mean_adag_a)));
    line(&format!("  <AA^dag>        {}", fmt(r.moments.mean_a_adag)));
    line(&format!("  <A^dagAA^dagA>  {}", fmt(r.moments.mean_adag_a_adag_a)));
    if let Some(paper) = r.fourth_moment_paper {
        line(&format!("  <A^dagAA^dagA>  {}  (paper variant)", fmt(paper)));
    }
    line("quadratures");
    line(&format!("  var_x           {}", fmt(r.quad.var_x)));
    line(&format!("  var_y           {}", fmt(r.quad.var_y)));
    line(&format!("  g_q             {}", fmt(r.quad.g_q)));
    line(&format!("  gur_lhs_sq      {}", fmt(r.quad.gur_lhs_sq)));
    line(&format!("  gur_rhs_sq      {}", fmt(r.quad.gur_rhs_sq)));
    line("number statistics (deformed number operator)");
    match &r.number {
        Some(n) => {
            line(&format!("  mean_n          {}", fmt(n.mean_n)));
            line(&format!("  var_n derived   {}", fmt(n.var_n_derived)));
            line(&format!("  var_n paper     {}", fmt(n.var_n_paper)));
            line(&format!("  mandel derived  {}", fmt(n.mandel_derived)));
            line(&format!("  mandel paper    {}", fmt(n.mandel_paper)));
            line(&format!("  f_factor        {}", fmt(n.f_factor)));
            line(&format!("  overlap         {}", fmt(n.overlap)));
        }
        None => {
            line(&format!("  mean_n          {}", fmt(0.0)));
            line(&format!("  var_n derived   {}", fmt(0.0)));
            line(&format!("  var_n paper     {}", fmt(0.0)));
            line("  mandel derived  undefined_at_vacuum");
            line("  mandel paper    undefined_at_vacuum");
        }
    }
    line("flags");
    line(&format!("  y_squeezed      {}", r.quad.y_squeezed));
    line(&format!("  gur_satisfied   {}", r.quad.gur_satisfied));
    line(&format!(
        "photon distribution (first {} levels)",
        r.distribution.len()
    ));
    for (n, p) in r.distribution.iter().enumerate() {
        line(&format!("  P_{n:<3}           {}", fmt(*p)));
    }
    out
}

fn complex_json(z: Complex64) -> serde_json::Value {
    json!({ "re": z.re, "im": z.im })
}

fn render_json(r: &Report) -> String {
    let number = match &r.number {
        Some(n) => json!({
            "mean_n": n.mean_n,
            "var_n_derived": n.var_n_derived,
            "var_n_paper": n.var_n_paper,
            "mandel_derived": n.mandel_derived,
            "mandel_paper": n.mandel_paper,
            "f_factor": n.f_factor,
            "overlap": n.overlap,
        }),
        None => json!({
            "mean_n": 0.0,
            "var_n_derived": 0.0,
            "var_n_paper": 0.0,
            "mandel_derived": null,
            "mandel_paper": null,
        }),
    };
    let value = json!({
        "state": {
            "kind": r.kind.label(),
            "q": r.q,
            "alpha": complex_json(r.alpha),
            "radius": r.radius,
        },
        "truncation": {
            "levels": r.truncation + 1,
            "tail_residual": r.tail_residual,
        },
        "moments": {
            "mean_a": complex_json(r.moments.mean_a),
            "mean_adag": complex_json(r.moments.mean_adag),
            "mean_aa": complex_json(r.moments.mean_aa),
            "mean_adag_adag": complex_json(r.moments.mean_adag_adag),
            "mean_adag_a": r.moments.mean_adag_a,
            "mean_a_adag": r.moments.mean_a_adag,
            "mean_adag_a_adag_a": r.moments.mean_adag_a_adag_a,
            "mean_adag_a_adag_a_paper": r.fourth_moment_paper,
        },
        "quadratures": {
            "var_x": r.quad.var_x,
            "var_y": r.quad.var_y,
            "g_q": r.quad.g_q,
            "gur_lhs_sq": r.quad.gur_lhs_sq,
            "gur_rhs_sq": r.quad.gur_rhs_sq,
        },
        "number": number,
        "flags": {
            "y_squeezed": r.quad.y_squeezed,
            "gur_satisfied": r.quad.gur_satisfied,
        },
        "photon_distribution": r.distribution,
    });
    serde_json::to_string_pretty(&value).expect("report serializes")
}
