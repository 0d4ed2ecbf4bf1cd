//! Brute-force evaluation of every observable by direct sums over truncated
//! Fock coefficients and matrix-vector products.
//!
//! Nothing here calls the closed forms in [`crate::observables`]; agreement
//! between the two paths is evidence, not tautology. Shared struct
//! definitions are the only imports.

use num_complex::Complex64;

use crate::error::Error;
use crate::observables::{MomentSet, QuadratureReport};
use crate::operators::{LadderSet, OperatorMatrix};
use crate::states::TruncatedState;

/// Sesquilinear form <psi|M|psi> over the truncated coefficients.
pub fn expectation(state: &TruncatedState, m: &OperatorMatrix) -> Result<Complex64, Error> {
    if state.dim() != m.dim() {
        return Err(Error::DimensionMismatch {
            vec_dim: state.dim(),
            op_dim: m.dim(),
        });
    }
    let applied = m.apply(state.coeffs());
    Ok(inner(state.coeffs(), &applied))
}

fn inner(bra: &[Complex64], ket: &[Complex64]) -> Complex64 {
    bra.iter().zip(ket).map(|(a, b)| a.conj() * b).sum()
}

fn norm_sqr(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum()
}

fn check_dims(state: &TruncatedState, ladder: &LadderSet) -> Result<(), Error> {
    if state.dim() != ladder.a.dim() {
        return Err(Error::DimensionMismatch {
            vec_dim: state.dim(),
            op_dim: ladder.a.dim(),
        });
    }
    Ok(())
}

/// All seven moments by repeated matrix application.
///
/// The fourth moment goes through the intermediate vector psi2 = A psi
/// (so it is ||A^dag psi2||^2) instead of chaining four applications to the
/// raw state; this keeps truncation-edge contamination below tolerance.
pub fn oracle_moments(state: &TruncatedState, ladder: &LadderSet) -> Result<MomentSet, Error> {
    check_dims(state, ladder)?;
    let c = state.coeffs();
    let a_psi = ladder.a.apply(c);
    let adag_psi = ladder.a_dag.apply(c);
    let aa_psi = ladder.a.apply(&a_psi);
    let adag_adag_psi = ladder.a_dag.apply(&adag_psi);
    let adag_a_psi = ladder.a_dag.apply(&a_psi);
    Ok(MomentSet {
        mean_a: inner(c, &a_psi),
        mean_adag: inner(c, &adag_psi),
        mean_aa: inner(c, &aa_psi),
        mean_adag_adag: inner(c, &adag_adag_psi),
        mean_adag_a: norm_sqr(&a_psi),
        mean_a_adag: norm_sqr(&adag_psi),
        mean_adag_a_adag_a: norm_sqr(&adag_a_psi),
    })
}

/// Quadrature variances and the commutator bound from matrix products only.
pub fn oracle_quadratures(
    state: &TruncatedState,
    ladder: &LadderSet,
) -> Result<QuadratureReport, Error> {
    check_dims(state, ladder)?;
    let c = state.coeffs();
    let x_psi = ladder.x.apply(c);
    let y_psi = ladder.y.apply(c);
    let mean_x = inner(c, &x_psi).re;
    let mean_y = inner(c, &y_psi).re;
    let var_x = norm_sqr(&x_psi) - mean_x * mean_x;
    let var_y = norm_sqr(&y_psi) - mean_y * mean_y;
    let xy = inner(c, &ladder.x.apply(&y_psi));
    let yx = inner(c, &ladder.y.apply(&x_psi));
    let commutator = xy - yx;
    let g = 0.5 * commutator.norm();
    let gur_lhs_sq = var_x * var_y;
    let gur_rhs_sq = g * g;
    Ok(QuadratureReport {
        var_x,
        var_y,
        g_q: g,
        gur_lhs_sq,
        gur_rhs_sq,
        y_squeezed: var_y < g,
        gur_satisfied: gur_lhs_sq >= gur_rhs_sq - crate::observables::GUR_SLACK,
    })
}

/// Mean, variance and Mandel parameter of the deformed number operator
/// A^dag A, again purely via matrix application.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleNumberStats {
    pub mean_n: f64,
    pub var_n: f64,
    /// None at zero mean.
    pub mandel: Option<f64>,
}

pub fn oracle_number_stats(
    state: &TruncatedState,
    ladder: &LadderSet,
) -> Result<OracleNumberStats, Error> {
    check_dims(state, ladder)?;
    let a_psi = ladder.a.apply(state.coeffs());
    let mean_n = norm_sqr(&a_psi);
    let adag_a_psi = ladder.a_dag.apply(&a_psi);
    let second = norm_sqr(&adag_a_psi);
    let var_n = second - mean_n * mean_n;
    let mandel = if mean_n > 0.0 {
        Some(var_n / mean_n - 1.0)
    } else {
        None
    };
    Ok(OracleNumberStats {
        mean_n,
        var_n,
        mandel,
    })
}

/// Whether a compared value is the oracle-backed reading or the paper's
/// printed variant.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Variant {
    Paper,
    Derived,
}

impl Variant {
    pub fn label(self) -> &'static str {
        match self {
            Variant::Paper => "paper",
            Variant::Derived => "derived",
        }
    }
}

/// One scalar comparison between a closed form and its oracle value.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscrepancyRecord {
    pub quantity: String,
    pub closed_form: f64,
    pub oracle: f64,
    pub abs_gap: f64,
    pub rel_gap: f64,
    pub variant: Variant,
    pub pass: bool,
}

/// Build a record; passes when the absolute gap is below `abs_tol` (the
/// near-zero regime) or the relative gap is below `rel_tol`.
pub fn compare_scalar(
    quantity: impl Into<String>,
    variant: Variant,
    closed_form: f64,
    oracle: f64,
    rel_tol: f64,
    abs_tol: f64,
) -> DiscrepancyRecord {
    let abs_gap = (closed_form - oracle).abs();
    let rel_gap = if oracle.abs() > 0.0 {
        abs_gap / oracle.abs()
    } else if abs_gap == 0.0 {
        0.0
    } else {
        f64::INFINITY
    };
    let pass = abs_gap <= abs_tol || rel_gap <= rel_tol;
    DiscrepancyRecord {
        quantity: quantity.into(),
        closed_form,
        oracle,
        abs_gap,
        rel_gap,
        variant,
        pass,
    }
}
