//! q-deformed integers, factorials and the q-exponential series.
//!
//! Everything downstream rests on the basic quantities
//!
//! ```text
//! [n]_q  = (1 - q^{2n}) / (1 - q^2) = 1 + q^2 + q^4 + ... + q^{2(n-1)}
//! [n]_q! = [1]_q [2]_q ... [n]_q
//! E_q(x) = sum_{n>=0} x^n / [n]_q!
//! ```
//!
//! For q < 1 the q-integers saturate at 1/(1 - q^2), so `E_q` is a power
//! series with that finite radius of convergence. Every series here is
//! summed with an explicit geometric tail bound and refuses to evaluate
//! outside the radius.

use std::cell::RefCell;
use std::collections::HashMap;

use crate::error::Error;

/// Default absolute tolerance for all series evaluations.
pub const DEFAULT_TOL: f64 = 1e-14;

/// Hard cap on series terms; inside the radius the geometric tail bound
/// triggers long before this.
const MAX_SERIES_TERMS: usize = 200_000;

/// The deformation strength q together with its derived quantities.
///
/// Valid values lie in (0, 1]; q = 1 is the undeformed oscillator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DeformationParameter {
    q: f64,
}

impl DeformationParameter {
    pub fn new(q: f64) -> Result<Self, Error> {
        if !(q > 0.0 && q <= 1.0) {
            return Err(Error::InvalidDeformation(q));
        }
        Ok(Self { q })
    }

    pub fn q(self) -> f64 {
        self.q
    }

    /// tau = ln q, the additive parametrization of the deformation.
    pub fn tau(self) -> f64 {
        self.q.ln()
    }

    /// Radius of convergence of `E_q`: 1/(1 - q^2), infinite at q = 1.
    ///
    /// Equals the n -> infinity limit of `q_integer(n)`.
    pub fn radius(self) -> f64 {
        if self.q == 1.0 {
            f64::INFINITY
        } else {
            1.0 / (1.0 - self.q * self.q)
        }
    }
}

/// The q-integer [n]_q.
///
/// Evaluated by the recurrence [k]_q = 1 + q^2 [k-1]_q (a Horner form of the
/// finite geometric sum) rather than the closed form (1 - q^{2n})/(1 - q^2),
/// which is 0/0 at q = 1 and cancels catastrophically nearby. The recurrence
/// makes `q_integer(n + 1) == 1.0 + q^2 * q_integer(n)` hold bitwise.
pub fn q_integer(n: u32, q: DeformationParameter) -> f64 {
    let q2 = q.q * q.q;
    let mut value = 0.0;
    for _ in 0..n {
        value = 1.0 + q2 * value;
    }
    value
}

thread_local! {
    /// Per-thread memo tables of q-factorials, keyed by the bit pattern of q.
    static Q_FACTORIALS: RefCell<HashMap<u64, Vec<f64>>> = RefCell::new(HashMap::new());
}

/// The q-factorial [n]_q!, memoized per q and reused across calls.
///
/// Errors with [`Error::FactorialOverflow`] at the first n whose product
/// leaves the f64 range (n = 171 at q = 1; larger n stay finite for q < 1
/// until the geometric growth ~ radius^n overflows).
pub fn q_factorial(n: u32, q: DeformationParameter) -> Result<f64, Error> {
    Q_FACTORIALS.with(|cell| {
        let mut cache = cell.borrow_mut();
        let table = cache.entry(q.q.to_bits()).or_insert_with(|| vec![1.0]);
        if table.len() <= n as usize {
            let q2 = q.q * q.q;
            // [len - 1]_q, then advance with the same recurrence q_integer uses
            let mut q_int = q_integer(table.len() as u32 - 1, q);
            while table.len() <= n as usize {
                q_int = 1.0 + q2 * q_int;
                let next = table.last().unwrap() * q_int;
                if !next.is_finite() {
                    return Err(Error::FactorialOverflow {
                        n: table.len() as u32,
                    });
                }
                table.push(next);
            }
        }
        Ok(table[n as usize])
    })
}

/// Result of a tail-bounded series evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QSeriesValue {
    pub value: f64,
    /// Number of terms actually summed (>= 1; the n = 0 term always counts).
    pub terms_used: usize,
    /// Rigorous upper bound on the absolute truncation error.
    pub tail_bound: f64,
    /// True iff `tail_bound <= tol` was reached.
    pub converged: bool,
}

/// The q-exponential E_q(x) = sum x^n / [n]_q!.
///
/// Terms are accumulated incrementally (t_{n+1} = t_n * x / [n+1]_q). After
/// adding term N the remainder is bounded geometrically: with
/// r_N = |x| / [N+1]_q < 1 and [n]_q increasing in n,
///
/// ```text
/// |sum_{n>N} t_n| <= |t_N| * r_N / (1 - r_N),
/// ```
///
/// and summation stops once this bound drops to `tol`. For q < 1 and
/// |x| >= 1/(1 - q^2) the terms never decay and the call fails with
/// [`Error::DivergentSeries`] instead of returning a silent truncation.
pub fn q_exponential(x: f64, q: DeformationParameter, tol: f64) -> Result<QSeriesValue, Error> {
    assert!(tol > 0.0, "tolerance must be positive");
    let radius = q.radius();
    if x.abs() >= radius {
        return Err(Error::DivergentSeries { x, radius });
    }
    let q2 = q.q * q.q;
    let mut sum = 1.0f64;
    let mut term = 1.0f64;
    let mut q_int = 0.0; // [n]_q for the current term index n
    let mut n = 0usize;
    loop {
        let next_q_int = 1.0 + q2 * q_int; // [n+1]_q
        let ratio = x.abs() / next_q_int;
        if ratio < 1.0 {
            let tail = term.abs() * ratio / (1.0 - ratio);
            if tail <= tol {
                return Ok(QSeriesValue {
                    value: sum,
                    terms_used: n + 1,
                    tail_bound: tail,
                    converged: true,
                });
            }
        }
        if n + 1 >= MAX_SERIES_TERMS {
            // Unreachable inside the radius for any sane tolerance.
            let tail = if ratio < 1.0 {
                term.abs() * ratio / (1.0 - ratio)
            } else {
                f64::INFINITY
            };
            return Ok(QSeriesValue {
                value: sum,
                terms_used: n + 1,
                tail_bound: tail,
                converged: false,
            });
        }
        n += 1;
        q_int = next_q_int;
        term *= x / q_int;
        sum += term;
    }
}

/// Overlap of opposite-phase coherent states,
/// R(x) = E_q(-x) / E_q(x) = <alpha,f|-alpha,f> with x = |alpha|^2.
///
/// This is the convergent quantity behind the cat-state normalization
/// 2(1 +/- R). Note that R(x) != E_q(-2x) for q < 1: q-exponentials do not
/// satisfy the addition law, and the literal series at 2x diverges once
/// 2x exceeds the radius even though R itself is perfectly finite.
///
/// R(0) = 1, R is strictly decreasing on [0, radius), and at q = 1 it
/// reduces to exp(-2x).
///
/// Accuracy caveat: the numerator is an alternating series, so its absolute
/// error floor is about machine epsilon times E_q(x). Where the true R sits
/// below that floor (x very close to the radius, or x >> 1 at q near 1) the
/// returned value is noise-limited and can even lose its sign.
pub fn overlap_ratio(x: f64, q: DeformationParameter, tol: f64) -> Result<f64, Error> {
    assert!(x >= 0.0, "overlap ratio takes x = |alpha|^2 >= 0");
    let plus = q_exponential(x, q, tol)?;
    let minus = q_exponential(-x, q, tol)?;
    Ok(minus.value / plus.value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn dp(q: f64) -> DeformationParameter {
        DeformationParameter::new(q).unwrap()
    }

    /// Independent series oracle: plain term-by-term sum with no tail logic.
    fn brute_series(x: f64, q: f64, terms: usize) -> f64 {
        let mut sum = 1.0;
        let mut term = 1.0;
        let mut q_int = 0.0;
        for n in 1..terms {
            q_int = 1.0 + q * q * q_int;
            term *= x / q_int;
            sum += term;
            let _ = n;
        }
        sum
    }

    #[test]
    fn deformation_parameter_domain() {
        assert!(DeformationParameter::new(0.0).is_err());
        assert!(DeformationParameter::new(-0.2).is_err());
        assert!(DeformationParameter::new(1.0 + 1e-12).is_err());
        assert!(DeformationParameter::new(f64::NAN).is_err());
        let q = dp(0.9);
        assert!(q.tau() < 0.0);
        assert_abs_diff_eq!(q.radius(), 1.0 / 0.19, epsilon = 1e-12);
        assert_eq!(dp(1.0).radius(), f64::INFINITY);
    }

    #[test]
    fn radius_is_limit_of_q_integers() {
        // |[100]_q - radius| < q^150 * radius; testable in f64 where q^150
        // stays above the accumulated rounding of the 100-step recurrence
        for &qv in &[0.85, 0.9, 0.95] {
            let q = dp(qv);
            let gap = (q_integer(100, q) - q.radius()).abs();
            assert!(gap < qv.powi(150) * q.radius(), "q = {qv}: gap = {gap}");
        }
        // for smaller q the sequence has saturated to the radius long before
        for &qv in &[0.5, 0.7] {
            let q = dp(qv);
            let gap = (q_integer(400, q) - q.radius()).abs();
            assert!(gap <= 1e-12 * q.radius(), "q = {qv}: gap = {gap}");
        }
    }

    #[test]
    fn q_integer_values() {
        assert_eq!(q_integer(5, dp(1.0)), 5.0);
        assert_eq!(q_integer(0, dp(0.9)), 0.0);
        // [3]_0.9 = 1 + 0.81 + 0.6561
        assert_abs_diff_eq!(q_integer(3, dp(0.9)), 2.4661, epsilon = 1e-12);
    }

    #[test]
    fn q_integer_recurrence_is_exact() {
        for &qv in &[0.3, 0.5, 0.8, 0.9, 0.99, 1.0] {
            let q = dp(qv);
            let q2 = qv * qv;
            for n in 0..200 {
                assert_eq!(
                    q_integer(n + 1, q),
                    1.0 + q2 * q_integer(n, q),
                    "recurrence broke at n = {n}, q = {qv}"
                );
            }
        }
    }

    #[test]
    fn q_integer_strictly_increasing() {
        // strict growth while the increment q^{2n} is still representable
        // against [n]_q; beyond that the sequence saturates in f64
        for &qv in &[0.5, 0.9, 1.0] {
            let q = dp(qv);
            for n in 0..20 {
                assert!(q_integer(n + 1, q) > q_integer(n, q), "q = {qv}, n = {n}");
            }
            for n in 20..300 {
                assert!(q_integer(n + 1, q) >= q_integer(n, q));
            }
        }
        for n in 0..300 {
            assert!(q_integer(n + 1, dp(1.0)) > q_integer(n, dp(1.0)));
        }
    }

    #[test]
    fn q_factorial_values() {
        assert_eq!(q_factorial(0, dp(0.7)).unwrap(), 1.0);
        assert_eq!(q_factorial(4, dp(1.0)).unwrap(), 24.0);
        // 1 * 1.81 * 2.4661, computed independently
        assert_abs_diff_eq!(q_factorial(3, dp(0.9)).unwrap(), 4.4636410, epsilon = 1e-10);
    }

    #[test]
    fn q_factorial_matches_running_product() {
        for &qv in &[0.5, 0.9, 1.0] {
            let q = dp(qv);
            for n in 1..=150 {
                let whole = q_factorial(n, q).unwrap();
                let step = q_factorial(n - 1, q).unwrap() * q_integer(n, q);
                assert_eq!(whole, step, "q = {qv}, n = {n}");
            }
        }
    }

    #[test]
    fn q_factorial_overflow_is_reported() {
        let err = q_factorial(200, dp(1.0)).unwrap_err();
        match err {
            Error::FactorialOverflow { n } => assert_eq!(n, 171),
            other => panic!("expected overflow, got {other:?}"),
        }
    }

    #[test]
    fn q_exponential_at_zero() {
        let v = q_exponential(0.0, dp(0.4), 1e-14).unwrap();
        assert_eq!(v.value, 1.0);
        assert_eq!(v.terms_used, 1);
        assert!(v.converged);
        assert_eq!(v.tail_bound, 0.0);
    }

    #[test]
    fn q_exponential_reduces_to_exp_at_q1() {
        let v = q_exponential(1.5, dp(1.0), 1e-12).unwrap();
        assert!(v.converged);
        assert_abs_diff_eq!(v.value, 1.5f64.exp(), epsilon = 1e-12);
    }

    #[test]
    fn q_exponential_rejects_divergent_argument() {
        // radius at q = 0.9 is 1/0.19 = 5.2631...
        let err = q_exponential(6.0, dp(0.9), 1e-14).unwrap_err();
        assert!(matches!(err, Error::DivergentSeries { .. }));
        let err = q_exponential(-6.0, dp(0.9), 1e-14).unwrap_err();
        assert!(matches!(err, Error::DivergentSeries { .. }));
    }

    #[test]
    fn q_exponential_tail_bound_is_honest() {
        // compare against a brute-force long sum
        for &(x, qv) in &[(1.0, 0.9), (-1.0, 0.9), (4.4, 0.95), (2.5, 1.0), (0.64, 0.5)] {
            let v = q_exponential(x, dp(qv), 1e-13).unwrap();
            let exact = brute_series(x, qv, 5000);
            assert!(
                (v.value - exact).abs() <= v.tail_bound + 1e-13,
                "x = {x}, q = {qv}: {} vs {}",
                v.value,
                exact
            );
        }
    }

    #[test]
    fn q_to_one_continuity() {
        let q = dp(1.0 - 1e-8);
        for &x in &[0.5, 1.0, 2.0, 3.0] {
            let v = q_exponential(x, q, 1e-14).unwrap();
            assert!((v.value - x.exp()).abs() <= 1e-5);
        }
    }

    #[test]
    fn overlap_ratio_at_zero_is_one() {
        assert_eq!(overlap_ratio(0.0, dp(0.5), 1e-14).unwrap(), 1.0);
    }

    #[test]
    fn overlap_ratio_q1_closed_form() {
        let r = overlap_ratio(1.0, dp(1.0), 1e-14).unwrap();
        assert_abs_diff_eq!(r, (-2.0f64).exp(), epsilon = 1e-13);
    }

    #[test]
    fn overlap_ratio_frozen_value() {
        // E_0.9(-1)/E_0.9(1) = 0.3860116237633405 / 2.8806808328765525,
        // both frozen from the brute-force series oracle
        let r = overlap_ratio(1.0, dp(0.9), 1e-14).unwrap();
        assert_abs_diff_eq!(r, 0.13400013613374934, epsilon = 1e-12);
        let e_plus = q_exponential(1.0, dp(0.9), 1e-14).unwrap().value;
        let e_minus = q_exponential(-1.0, dp(0.9), 1e-14).unwrap().value;
        assert_abs_diff_eq!(e_plus, 2.8806808328765525, epsilon = 1e-12);
        assert_abs_diff_eq!(e_minus, 0.3860116237633405, epsilon = 1e-12);
    }

    #[test]
    fn overlap_ratio_matches_series_quotient() {
        for &(x, qv) in &[(0.3, 0.8), (1.0, 0.9), (3.24, 0.9), (0.64, 0.5)] {
            let r = overlap_ratio(x, dp(qv), 1e-14).unwrap();
            let quotient = brute_series(-x, qv, 5000) / brute_series(x, qv, 5000);
            assert!((r - quotient).abs() <= 2e-14, "x = {x}, q = {qv}");
        }
    }

    #[test]
    fn overlap_ratio_monotone_decreasing() {
        // grid capped where R stays far above the f64 noise floor of the
        // alternating numerator series
        for &qv in &[0.5, 0.8, 0.9, 0.99, 1.0] {
            let q = dp(qv);
            let hi = if q.radius().is_finite() {
                (0.9 * q.radius()).min(10.0)
            } else {
                10.0
            };
            let mut prev = overlap_ratio(0.0, q, 1e-14).unwrap();
            for k in 1..=40 {
                let x = hi * k as f64 / 40.0;
                let r = overlap_ratio(x, q, 1e-14).unwrap();
                assert!(r < prev, "q = {qv}, x = {x}: {r} >= {prev}");
                assert!(r > 0.0 && r <= 1.0);
                prev = r;
            }
        }
    }

    #[test]
    fn overlap_ratio_rejects_outside_radius() {
        assert!(matches!(
            overlap_ratio(5.27, dp(0.9), 1e-14),
            Err(Error::DivergentSeries { .. })
        ));
    }

    #[test]
    fn no_addition_law_for_q_exponentials() {
        // E_q(x) * E_q(-x) != 1 for q < 1; the overlap ratio is the honest
        // quantity and must match the series quotient to 2 * tol.
        let q = dp(0.8);
        let tol = 1e-14;
        let x = 1.2;
        let plus = q_exponential(x, q, tol).unwrap().value;
        let minus = q_exponential(-x, q, tol).unwrap().value;
        assert!((plus * minus - 1.0).abs() > 1e-3);
        let r = overlap_ratio(x, q, tol).unwrap();
        assert!((r - minus / plus).abs() <= 2.0 * tol);
    }
}
