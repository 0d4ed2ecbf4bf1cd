//! Dense matrix representations of the deformed ladder operators on the
//! truncated Fock space, and the displacement-operator route to coherent
//! states.
//!
//! All algebraic identities hold on the interior of the truncated basis
//! only; the last row/column is where truncation necessarily breaks them,
//! so every residual check excludes it.

use ndarray::{Array2, ArrayView1};
use num_complex::Complex64;

use crate::error::Error;
use crate::qmath::DeformationParameter;
use crate::states::{StateKind, StateSpec, TruncatedState};

/// Dimension cap for the matrix exponential.
pub const MAX_EXP_DIM: usize = 512;
/// 1-norm cap for the matrix exponential; displacement generators in scope
/// stay well below it.
pub const MAX_EXP_NORM: f64 = 50.0;

/// Dense square matrix of complex scalars; row = output level, column =
/// input level.
#[derive(Debug, Clone, PartialEq)]
pub struct OperatorMatrix {
    mat: Array2<Complex64>,
}

impl OperatorMatrix {
    pub fn from_array(mat: Array2<Complex64>) -> Self {
        assert_eq!(mat.nrows(), mat.ncols(), "operator matrices are square");
        assert!(mat.nrows() >= 1);
        Self { mat }
    }

    pub fn zeros(dim: usize) -> Self {
        Self::from_array(Array2::from_elem((dim, dim), Complex64::new(0.0, 0.0)))
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.mat[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.mat.nrows()
    }

    pub fn array(&self) -> &Array2<Complex64> {
        &self.mat
    }

    pub fn entry(&self, row: usize, col: usize) -> Complex64 {
        self.mat[(row, col)]
    }

    pub fn adjoint(&self) -> Self {
        Self {
            mat: self.mat.t().map(|z| z.conj()),
        }
    }

    pub fn matmul(&self, rhs: &Self) -> Self {
        assert_eq!(self.dim(), rhs.dim());
        Self {
            mat: self.mat.dot(&rhs.mat),
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        Self {
            mat: &self.mat + &rhs.mat,
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        Self {
            mat: &self.mat - &rhs.mat,
        }
    }

    pub fn scaled(&self, factor: Complex64) -> Self {
        Self {
            mat: self.mat.mapv(|z| z * factor),
        }
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(v.len(), self.dim(), "vector length must match dimension");
        self.mat.dot(&ArrayView1::from(v)).to_vec()
    }

    /// Maximum absolute column sum.
    pub fn one_norm(&self) -> f64 {
        (0..self.dim())
            .map(|j| self.mat.column(j).iter().map(|z| z.norm()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    pub fn max_abs(&self) -> f64 {
        self.mat.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }
}

/// Largest entry of |a - b| over the interior (last row and column excluded).
pub fn interior_deviation(a: &OperatorMatrix, b: &OperatorMatrix) -> f64 {
    assert_eq!(a.dim(), b.dim());
    let n = a.dim() - 1;
    let mut worst = 0.0f64;
    for i in 0..n {
        for j in 0..n {
            worst = worst.max((a.entry(i, j) - b.entry(i, j)).norm());
        }
    }
    worst
}

/// The deformed ladder operators and derived quadratures on levels 0..=N.
///
/// Band structure: `a` has its only nonzeros at (n-1, n) = sqrt([n]_q),
/// `a_dag` at (n+1, n) = sqrt([n+1]_q); the canonically conjugate pair puts
/// n/sqrt([n]_q) and (n+1)/sqrt([n+1]_q) on the same bands, which gives
/// [a, b_dag] = 1 on the interior. `x` and `y` are the Hermitian quadratures
/// (a + a_dag)/2 and (a - a_dag)/(2i).
#[derive(Debug, Clone)]
pub struct LadderSet {
    pub a: OperatorMatrix,
    pub a_dag: OperatorMatrix,
    pub b: OperatorMatrix,
    pub b_dag: OperatorMatrix,
    /// Bare number operator diag(0..=N).
    pub number: OperatorMatrix,
    pub x: OperatorMatrix,
    pub y: OperatorMatrix,
    pub q: DeformationParameter,
}

pub fn build_ladder_set(q: DeformationParameter, n_max: usize) -> LadderSet {
    assert!(n_max >= 1);
    let dim = n_max + 1;
    let q2 = q.q() * q.q();
    let mut a = OperatorMatrix::zeros(dim);
    let mut a_dag = OperatorMatrix::zeros(dim);
    let mut b = OperatorMatrix::zeros(dim);
    let mut b_dag = OperatorMatrix::zeros(dim);
    let mut number = OperatorMatrix::zeros(dim);
    let mut q_int = 0.0; // [n]_q
    for n in 1..dim {
        q_int = 1.0 + q2 * q_int;
        let root = q_int.sqrt();
        a.mat[(n - 1, n)] = Complex64::new(root, 0.0);
        a_dag.mat[(n, n - 1)] = Complex64::new(root, 0.0);
        b.mat[(n - 1, n)] = Complex64::new(n as f64 / root, 0.0);
        b_dag.mat[(n, n - 1)] = Complex64::new(n as f64 / root, 0.0);
        number.mat[(n, n)] = Complex64::new(n as f64, 0.0);
    }
    let x = a.add(&a_dag).scaled(Complex64::new(0.5, 0.0));
    let y = a.sub(&a_dag).scaled(Complex64::new(0.0, -0.5)); // 1/(2i) = -i/2
    LadderSet {
        a,
        a_dag,
        b,
        b_dag,
        number,
        x,
        y,
        q,
    }
}

/// Interior residual of the deformed oscillator algebra
/// A A^dag - q^2 A^dag A = 1.
pub fn deformed_algebra_residual(ladder: &LadderSet) -> f64 {
    let q2 = ladder.q.q() * ladder.q.q();
    let lhs = ladder
        .a
        .matmul(&ladder.a_dag)
        .sub(&ladder.a_dag.matmul(&ladder.a).scaled(Complex64::new(q2, 0.0)));
    interior_deviation(&lhs, &OperatorMatrix::identity(ladder.a.dim()))
}

/// Interior residual of the conjugate-pair relation [A, B^dag] = 1.
pub fn conjugate_pair_residual(ladder: &LadderSet) -> f64 {
    let comm = ladder
        .a
        .matmul(&ladder.b_dag)
        .sub(&ladder.b_dag.matmul(&ladder.a));
    interior_deviation(&comm, &OperatorMatrix::identity(ladder.a.dim()))
}

/// Interior deviation between the commutator [A, A^dag] and its closed-form
/// diagonal (n+1) f^2(n) - n f^2(n-1) = [n+1]_q - [n]_q, where
/// f(n) = sqrt([n+1]_q / (n+1)).
pub fn nonlinear_commutator_residual(q: DeformationParameter, n_max: usize) -> f64 {
    assert!(n_max >= 2);
    let ladder = build_ladder_set(q, n_max);
    let comm = ladder
        .a
        .matmul(&ladder.a_dag)
        .sub(&ladder.a_dag.matmul(&ladder.a));
    let dim = n_max + 1;
    let q2 = q.q() * q.q();
    let mut diag = OperatorMatrix::zeros(dim);
    let mut q_int = 0.0; // [n]_q
    for n in 0..dim {
        let next = 1.0 + q2 * q_int; // [n+1]_q
        diag.mat[(n, n)] = Complex64::new(next - q_int, 0.0);
        q_int = next;
    }
    interior_deviation(&comm, &diag)
}

/// exp(M) by scaling and squaring with a tail-bounded Taylor kernel.
///
/// The argument is scaled by 2^-s until its 1-norm is at most 1/2, the
/// series is summed until its geometric tail bound is below `tol`
/// (tightened by 2^-(s+1) to absorb the error amplification of the s
/// squarings), and the result is squared back up.
pub fn matrix_exponential(m: &OperatorMatrix, tol: f64) -> Result<OperatorMatrix, Error> {
    assert!(tol > 0.0, "tolerance must be positive");
    let dim = m.dim();
    if dim > MAX_EXP_DIM {
        return Err(Error::DimensionTooLarge {
            dim,
            max: MAX_EXP_DIM,
        });
    }
    let norm = m.one_norm();
    if !norm.is_finite() || norm > MAX_EXP_NORM {
        return Err(Error::NormTooLarge {
            norm,
            max: MAX_EXP_NORM,
        });
    }
    let squarings = if norm > 0.5 {
        (norm / 0.5).log2().ceil() as i32
    } else {
        0
    };
    let scale = 0.5f64.powi(squarings);
    let scaled = m.scaled(Complex64::new(scale, 0.0));
    let scaled_norm = norm * scale;
    let target = tol * 0.5f64.powi(squarings + 1);

    const MAX_TERMS: usize = 128;
    let mut sum = OperatorMatrix::identity(dim);
    let mut term = OperatorMatrix::identity(dim);
    let mut converged = false;
    for k in 1..=MAX_TERMS {
        term = term
            .matmul(&scaled)
            .scaled(Complex64::new(1.0 / k as f64, 0.0));
        sum = sum.add(&term);
        let ratio = scaled_norm / (k as f64 + 1.0);
        if ratio < 1.0 {
            let tail = term.one_norm() * ratio / (1.0 - ratio);
            if tail <= target {
                converged = true;
                break;
            }
        }
    }
    if !converged {
        return Err(Error::ConvergenceFailure {
            tol,
            max_terms: MAX_TERMS,
        });
    }
    let mut result = sum;
    for _ in 0..squarings {
        result = result.matmul(&result);
    }
    Ok(result)
}

/// The displacement route to the coherent state:
/// exp(alpha B^dag - alpha* A) |0>, renormalized.
///
/// Since [A, B^dag] = 1 only holds on the interior, agreement with the
/// series construction needs generous padding; size `n_max` with at least
/// `choose_truncation(.., moment_order = 8)`.
pub fn displacement_vacuum(
    alpha: Complex64,
    q: DeformationParameter,
    n_max: usize,
) -> Result<TruncatedState, Error> {
    let alpha_sq = alpha.norm_sqr();
    if alpha_sq >= q.radius() {
        return Err(Error::NonNormalizable {
            alpha_sq,
            radius: q.radius(),
        });
    }
    let ladder = build_ladder_set(q, n_max);
    let generator = ladder
        .b_dag
        .scaled(alpha)
        .sub(&ladder.a.scaled(alpha.conj()));
    let exp = matrix_exponential(&generator, 1e-12)?;
    let coeffs: Vec<Complex64> = exp.array().column(0).to_vec();
    let spec = StateSpec {
        alpha,
        q,
        kind: StateKind::Coherent,
    };
    let tail = crate::states::tail_bound_above(&spec, n_max)?;
    TruncatedState::normalized(coeffs, tail)
}
