//! Construction of normalized q-deformed coherent and cat states as
//! coefficient vectors over a truncated Fock basis.
//!
//! Truncation levels are chosen from the geometric tail of the photon
//! distribution so the discarded probability mass is provably below a
//! requested tolerance, plus padding so repeated ladder applications stay
//! inside the basis.

use num_complex::Complex64;

use crate::error::Error;
use crate::qmath::{overlap_ratio, q_exponential, DeformationParameter, DEFAULT_TOL};

/// Truncation never drops below this many levels.
pub const MIN_TRUNCATION: usize = 16;

const MAX_SEARCH_TERMS: usize = 500_000;

/// Which member of the state family to build.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StateKind {
    Coherent,
    CatEven,
    CatOdd,
}

/// Parity sector of a cat state.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    /// +1 for even, -1 for odd; the sign in the superposition |alpha> +/- |-alpha>.
    pub fn sign(self) -> f64 {
        match self {
            Parity::Even => 1.0,
            Parity::Odd => -1.0,
        }
    }
}

impl StateKind {
    pub fn parity(self) -> Option<Parity> {
        match self {
            StateKind::Coherent => None,
            StateKind::CatEven => Some(Parity::Even),
            StateKind::CatOdd => Some(Parity::Odd),
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            StateKind::Coherent => "coherent",
            StateKind::CatEven => "cat-even",
            StateKind::CatOdd => "cat-odd",
        }
    }
}

impl std::fmt::Display for StateKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.label())
    }
}

/// Parameters selecting one state: amplitude, deformation and family member.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StateSpec {
    pub alpha: Complex64,
    pub q: DeformationParameter,
    pub kind: StateKind,
}

impl StateSpec {
    /// Normalizability and null-state checks shared by every constructor.
    pub fn validate(&self) -> Result<(), Error> {
        let alpha_sq = self.alpha.norm_sqr();
        if alpha_sq >= self.q.radius() {
            return Err(Error::NonNormalizable {
                alpha_sq,
                radius: self.q.radius(),
            });
        }
        if self.kind == StateKind::CatOdd && alpha_sq == 0.0 {
            return Err(Error::NullState);
        }
        Ok(())
    }
}

/// A normalized state on Fock levels 0..=N with a bound on the probability
/// mass the truncation discarded.
#[derive(Debug, Clone, PartialEq)]
pub struct TruncatedState {
    coeffs: Vec<Complex64>,
    tail_residual: f64,
}

impl TruncatedState {
    /// Normalize a raw coefficient vector to unit norm.
    pub fn normalized(mut coeffs: Vec<Complex64>, tail_residual: f64) -> Result<Self, Error> {
        assert!(!coeffs.is_empty());
        let norm_sqr: f64 = coeffs.iter().map(|c| c.norm_sqr()).sum();
        if norm_sqr == 0.0 {
            return Err(Error::NullState);
        }
        let scale = 1.0 / norm_sqr.sqrt();
        // exact zeros stay bitwise zero under scaling, preserving parity patterns
        for c in &mut coeffs {
            *c *= scale;
        }
        Ok(Self {
            coeffs,
            tail_residual,
        })
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// Number of retained levels, N + 1.
    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }

    /// Highest retained Fock level N.
    pub fn truncation(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn tail_residual(&self) -> f64 {
        self.tail_residual
    }

    pub fn norm_sqr(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm_sqr()).sum()
    }

    /// Inner product <self|other> over coefficients; dimensions must agree.
    pub fn inner(&self, other: &Self) -> Complex64 {
        assert_eq!(self.dim(), other.dim(), "inner product dimension mismatch");
        self.coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    /// The same state embedded in a basis with `extra` more levels.
    pub fn padded(&self, extra: usize) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(coeffs.len() + extra, Complex64::new(0.0, 0.0));
        Self {
            coeffs,
            tail_residual: self.tail_residual,
        }
    }
}

/// Relative weight of the worst-parity normalization against the coherent
/// one; multiplies the raw series tail to bound the state's probability tail.
fn parity_weight(spec: &StateSpec, x: f64) -> Result<f64, Error> {
    match spec.kind {
        StateKind::Coherent => Ok(1.0),
        StateKind::CatEven => {
            let r = overlap_ratio(x, spec.q, DEFAULT_TOL)?;
            Ok(2.0 / (1.0 + r))
        }
        StateKind::CatOdd => {
            let r = overlap_ratio(x, spec.q, DEFAULT_TOL)?;
            Ok(2.0 / (1.0 - r))
        }
    }
}

/// Upper bound on the probability mass of `spec`'s exact state above level
/// `n_max`, from the geometric tail of x^n / [n]_q!.
pub fn tail_bound_above(spec: &StateSpec, n_max: usize) -> Result<f64, Error> {
    spec.validate()?;
    let x = spec.alpha.norm_sqr();
    let e_plus = q_exponential(x, spec.q, DEFAULT_TOL)?.value;
    let weight = parity_weight(spec, x)?;
    let q2 = spec.q.q() * spec.q.q();
    let mut term = 1.0;
    let mut q_int = 0.0;
    for _ in 0..n_max {
        q_int = 1.0 + q2 * q_int;
        term *= x / q_int;
    }
    let next = 1.0 + q2 * q_int;
    let ratio = x / next;
    if ratio < 1.0 {
        Ok(weight * term * ratio / (1.0 - ratio) / e_plus)
    } else {
        Ok(f64::INFINITY)
    }
}

/// Smallest truncation level whose tail bound is at most `tol`, padded by
/// `moment_order + 4` levels so that chained ladder applications stay exact,
/// and never below [`MIN_TRUNCATION`].
pub fn choose_truncation(
    spec: &StateSpec,
    tol: f64,
    moment_order: usize,
) -> Result<usize, Error> {
    assert!(tol > 0.0, "tolerance must be positive");
    spec.validate()?;
    let x = spec.alpha.norm_sqr();
    let e_plus = q_exponential(x, spec.q, DEFAULT_TOL)?.value;
    let weight = parity_weight(spec, x)?;
    let q2 = spec.q.q() * spec.q.q();
    let mut term = 1.0;
    let mut q_int = 0.0;
    let mut n = 0usize;
    let n_tail = loop {
        let next = 1.0 + q2 * q_int; // [n+1]_q
        let ratio = x / next;
        if ratio < 1.0 {
            let tail = weight * term * ratio / (1.0 - ratio) / e_plus;
            if tail <= tol {
                break n;
            }
        }
        if n >= MAX_SEARCH_TERMS {
            return Err(Error::ConvergenceFailure {
                tol,
                max_terms: MAX_SEARCH_TERMS,
            });
        }
        n += 1;
        q_int = next;
        term *= x / q_int;
    };
    Ok((n_tail + moment_order + 4).max(MIN_TRUNCATION))
}

/// Coefficients of the coherent state: c_n = alpha^n / (sqrt([n]_q!) N_q)
/// with N_q^2 = E_q(|alpha|^2), then renormalized numerically over the
/// truncated vector so the norm is exactly one.
pub fn coherent_coefficients(spec: &StateSpec, n_max: usize) -> Result<TruncatedState, Error> {
    debug_assert_eq!(spec.kind, StateKind::Coherent);
    spec.validate()?;
    let x = spec.alpha.norm_sqr();
    let e_plus = q_exponential(x, spec.q, DEFAULT_TOL)?.value;
    let q2 = spec.q.q() * spec.q.q();
    let mut coeffs = vec![Complex64::new(0.0, 0.0); n_max + 1];
    let mut c = Complex64::new(1.0 / e_plus.sqrt(), 0.0);
    coeffs[0] = c;
    let mut q_int = 0.0;
    for entry in coeffs.iter_mut().skip(1) {
        q_int = 1.0 + q2 * q_int;
        c *= spec.alpha / q_int.sqrt();
        *entry = c;
    }
    let tail = tail_bound_above(spec, n_max)?;
    TruncatedState::normalized(coeffs, tail)
}

/// Coefficients of the even/odd cat state (|alpha> +/- |-alpha>)/N_pm:
/// c_n = (1 +/- (-1)^n) alpha^n / (sqrt([n]_q!) N_q N_pm) with
/// N_pm^2 = 2(1 +/- R). Forbidden-parity levels are exactly zero.
pub fn cat_coefficients(spec: &StateSpec, n_max: usize) -> Result<TruncatedState, Error> {
    let parity = spec
        .kind
        .parity()
        .expect("cat_coefficients requires a cat kind");
    spec.validate()?;
    let x = spec.alpha.norm_sqr();
    let e_plus = q_exponential(x, spec.q, DEFAULT_TOL)?.value;
    let r = overlap_ratio(x, spec.q, DEFAULT_TOL)?;
    let cat_norm_sq = 2.0 * (1.0 + parity.sign() * r);
    let prefactor = 2.0 / (e_plus.sqrt() * cat_norm_sq.sqrt());
    let keep_remainder = match parity {
        Parity::Even => 0,
        Parity::Odd => 1,
    };
    let q2 = spec.q.q() * spec.q.q();
    let mut coeffs = vec![Complex64::new(0.0, 0.0); n_max + 1];
    let mut c = Complex64::new(1.0, 0.0); // alpha^n / sqrt([n]_q!)
    let mut q_int = 0.0;
    for (n, entry) in coeffs.iter_mut().enumerate() {
        if n > 0 {
            q_int = 1.0 + q2 * q_int;
            c *= spec.alpha / q_int.sqrt();
        }
        if n % 2 == keep_remainder {
            *entry = prefactor * c;
        }
    }
    let tail = tail_bound_above(spec, n_max)?;
    TruncatedState::normalized(coeffs, tail)
}

/// Dispatch on `spec.kind`.
pub fn build_state(spec: &StateSpec, n_max: usize) -> Result<TruncatedState, Error> {
    match spec.kind {
        StateKind::Coherent => coherent_coefficients(spec, n_max),
        StateKind::CatEven | StateKind::CatOdd => cat_coefficients(spec, n_max),
    }
}

/// Photon number distribution P_n = |c_n|^2.
pub fn photon_distribution(state: &TruncatedState) -> Vec<f64> {
    state.coeffs().iter().map(|c| c.norm_sqr()).collect()
}

/// Statistics of the bare (undeformed) number operator, read off P_n.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BareNumberStats {
    pub mean: f64,
    pub variance: f64,
    /// None at zero mean, where the Mandel parameter is undefined.
    pub mandel: Option<f64>,
}

/// Mean, variance and Mandel parameter of the bare photon number, computed
/// directly from a probability vector.
pub fn bare_number_stats(distribution: &[f64]) -> BareNumberStats {
    let mut mean = 0.0;
    let mut second = 0.0;
    for (n, p) in distribution.iter().enumerate() {
        mean += n as f64 * p;
        second += (n as f64) * (n as f64) * p;
    }
    let variance = second - mean * mean;
    let mandel = if mean > 0.0 {
        Some(variance / mean - 1.0)
    } else {
        None
    };
    BareNumberStats {
        mean,
        variance,
        mandel,
    }
}
