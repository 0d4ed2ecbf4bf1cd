//! Per-row evaluation of the sweepable quantities, with out-of-domain points
//! rendered as reason codes instead of numbers (never NaN).

use num_complex::Complex64;
use qcat_core::observables::{
    cat_number_report, cat_quadratures, coherent_number_report, coherent_quadratures,
    NumberReport, QuadratureReport,
};
use qcat_core::qmath::{overlap_ratio, DeformationParameter, DEFAULT_TOL};
use qcat_core::states::StateKind;
use qcat_core::Error;

use crate::output::fmt_f64;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputField {
    VarX,
    VarY,
    GQ,
    GurLhsSq,
    GurRhsSq,
    MeanN,
    VarNPaper,
    VarNDerived,
    MandelPaper,
    MandelDerived,
    YSqueezed,
    GurSatisfied,
    FFactor,
    Overlap,
}

pub const ALL_FIELDS: [OutputField; 14] = [
    OutputField::VarX,
    OutputField::VarY,
    OutputField::GQ,
    OutputField::GurLhsSq,
    OutputField::GurRhsSq,
    OutputField::MeanN,
    OutputField::VarNPaper,
    OutputField::VarNDerived,
    OutputField::MandelPaper,
    OutputField::MandelDerived,
    OutputField::YSqueezed,
    OutputField::GurSatisfied,
    OutputField::FFactor,
    OutputField::Overlap,
];

impl OutputField {
    pub fn name(self) -> &'static str {
        match self {
            OutputField::VarX => "var_x",
            OutputField::VarY => "var_y",
            OutputField::GQ => "g_q",
            OutputField::GurLhsSq => "gur_lhs_sq",
            OutputField::GurRhsSq => "gur_rhs_sq",
            OutputField::MeanN => "mean_n",
            OutputField::VarNPaper => "var_n_paper",
            OutputField::VarNDerived => "var_n_derived",
            OutputField::MandelPaper => "mandel_paper",
            OutputField::MandelDerived => "mandel_derived",
            OutputField::YSqueezed => "y_squeezed",
            OutputField::GurSatisfied => "gur_satisfied",
            OutputField::FFactor => "f_factor",
            OutputField::Overlap => "overlap",
        }
    }

    pub fn parse_list(spec: &str) -> Result<Vec<OutputField>, String> {
        spec.split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(|name| {
                ALL_FIELDS
                    .iter()
                    .copied()
                    .find(|f| f.name() == name)
                    .ok_or_else(|| format!("unknown output column '{name}'"))
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Flag(bool),
    /// Out-of-domain marker; the reason code is the cell content.
    Missing(&'static str),
}

impl Cell {
    pub fn render(&self) -> String {
        match self {
            Cell::Num(v) => fmt_f64(*v),
            Cell::Flag(b) => b.to_string(),
            Cell::Missing(reason) => (*reason).to_string(),
        }
    }
}

pub fn reason_code(err: &Error) -> &'static str {
    match err {
        Error::NonNormalizable { .. } => "non_normalizable",
        Error::NullState => "null_state",
        Error::UndefinedAtVacuum => "undefined_at_vacuum",
        Error::DivergentSeries { .. } => "divergent_series",
        Error::InvalidDeformation(_) => "invalid_deformation",
        _ => "error",
    }
}

/// Evaluate the requested columns for one (kind, q, alpha) row.
pub fn evaluate(
    kind: StateKind,
    q_value: f64,
    alpha: Complex64,
    outputs: &[OutputField],
) -> Vec<Cell> {
    let q = match DeformationParameter::new(q_value) {
        Ok(q) => q,
        Err(err) => return vec![Cell::Missing(reason_code(&err)); outputs.len()],
    };
    let quad: Result<QuadratureReport, Error> = match kind {
        StateKind::Coherent => coherent_quadratures(alpha, q),
        StateKind::CatEven | StateKind::CatOdd => {
            cat_quadratures(alpha, q, kind.parity().unwrap())
        }
    };
    let number: Result<NumberReport, Error> = match kind {
        StateKind::Coherent => coherent_number_report(alpha, q),
        StateKind::CatEven | StateKind::CatOdd => {
            cat_number_report(alpha, q, kind.parity().unwrap())
        }
    };

    let from_quad = |get: fn(&QuadratureReport) -> Cell| -> Cell {
        match &quad {
            Ok(rep) => get(rep),
            Err(err) => Cell::Missing(reason_code(err)),
        }
    };
    // number statistics at the vacuum: the mean and variance vanish, only
    // the Mandel parameter itself is undefined
    let at_vacuum = alpha.norm_sqr() == 0.0 && quad.is_ok();
    let from_number = |get: fn(&NumberReport) -> Cell, vacuum: Cell| -> Cell {
        match &number {
            Ok(rep) => get(rep),
            Err(Error::UndefinedAtVacuum) if at_vacuum => vacuum,
            Err(err) => Cell::Missing(reason_code(err)),
        }
    };
    let vacuum_f = match kind {
        StateKind::Coherent => 1.0,
        StateKind::CatEven => 0.0,
        StateKind::CatOdd => f64::NAN, // unreachable: vacuum odd cat is NullState
    };

    outputs
        .iter()
        .map(|field| match field {
            OutputField::VarX => from_quad(|r| Cell::Num(r.var_x)),
            OutputField::VarY => from_quad(|r| Cell::Num(r.var_y)),
            OutputField::GQ => from_quad(|r| Cell::Num(r.g_q)),
            OutputField::GurLhsSq => from_quad(|r| Cell::Num(r.gur_lhs_sq)),
            OutputField::GurRhsSq => from_quad(|r| Cell::Num(r.gur_rhs_sq)),
            OutputField::YSqueezed => from_quad(|r| Cell::Flag(r.y_squeezed)),
            OutputField::GurSatisfied => from_quad(|r| Cell::Flag(r.gur_satisfied)),
            OutputField::MeanN => from_number(|r| Cell::Num(r.mean_n), Cell::Num(0.0)),
            OutputField::VarNPaper => from_number(|r| Cell::Num(r.var_n_paper), Cell::Num(0.0)),
            OutputField::VarNDerived => {
                from_number(|r| Cell::Num(r.var_n_derived), Cell::Num(0.0))
            }
            OutputField::MandelPaper => from_number(
                |r| Cell::Num(r.mandel_paper),
                Cell::Missing("undefined_at_vacuum"),
            ),
            OutputField::MandelDerived => from_number(
                |r| Cell::Num(r.mandel_derived),
                Cell::Missing("undefined_at_vacuum"),
            ),
            OutputField::FFactor => from_number(|r| Cell::Num(r.f_factor), Cell::Num(vacuum_f)),
            OutputField::Overlap => match &number {
                Ok(rep) => Cell::Num(rep.overlap),
                Err(Error::UndefinedAtVacuum) if at_vacuum => {
                    match overlap_ratio(0.0, q, DEFAULT_TOL) {
                        Ok(r) => Cell::Num(r),
                        Err(err) => Cell::Missing(reason_code(&err)),
                    }
                }
                Err(err) => Cell::Missing(reason_code(err)),
            },
        })
        .collect()
}

/// Endpoint-exact uniform grid with `steps` points.
pub fn linspace(from: f64, to: f64, steps: usize) -> Vec<f64> {
    assert!(steps >= 2);
    (0..steps)
        .map(|i| {
            if i == steps - 1 {
                to
            } else {
                from + (to - from) * i as f64 / (steps - 1) as f64
            }
        })
        .collect()
}
