//! Incomplete sums and the rational-top-coefficient decomposition.
//!
//! An incomplete sum `Σ_{1≤n≤H} e(2πP(n)/q)` of a degree-`k` integer
//! polynomial stays within `O(√q log q)` of zero; completing the sum costs
//! the log factor. For long sums whose *top* phase coefficient is exactly
//! `2π a₁/q` but whose linear coefficient `y` is merely close to `2π b/q`,
//! the sum splits into `⌊N/q⌋` exact copies of a complete sum plus an error
//! controlled by `V = |y − 2π b/q|`. Both facts are checked here with
//! measured constants rather than asserted asymptotically.

use num_complex::Complex64;
use serde::Serialize;

use crate::audit::{INCOMPLETE_SUM_AUDIT, RATIONAL_TOP_AUDIT};
use crate::dd::{two_prod, Dd, TWO_PI};
use crate::modular::{mod_pow, mul_mod, PrimeModulus};
use crate::{Error, Result};

use super::root_table;

/// Incomplete sum value plus its completion-bound ratio.
#[derive(Debug, Clone, Serialize)]
pub struct IncompleteSum {
    pub q: u64,
    pub h: u64,
    pub value_re: f64,
    pub value_im: f64,
    pub magnitude: f64,
    /// `|S(H)| / (√q log q)`.
    pub bound_ratio: f64,
    /// Frozen audit ceiling the ratio is compared against.
    pub audit_constant: f64,
    pub within_audit: bool,
}

/// Direct evaluation of `Σ_{1≤n≤H} e(2π P(n)/q)` for an integer-coefficient
/// polynomial `poly` (constant term first). Exact phase numerators mod `q`.
pub fn incomplete_sum(poly: &[u64], q: PrimeModulus, h: u64) -> Result<IncompleteSum> {
    let qv = q.get();
    let k = poly.len().saturating_sub(1) as u32;
    if k < 2 {
        return Err(Error::invalid("polynomial degree must be >= 2"));
    }
    if h < 1 || h > qv {
        return Err(Error::invalid("need 1 <= H <= q"));
    }
    let lead = poly[poly.len() - 1] % qv;
    if lead == 0 {
        return Err(Error::invalid("q divides the leading coefficient"));
    }
    if k as u64 % qv == 0 {
        return Err(Error::invalid("q divides the degree"));
    }
    let roots = root_table(qv);
    let mut acc = Complex64::new(0.0, 0.0);
    for n in 1..=h {
        acc += roots[eval_poly_mod(poly, n, qv) as usize];
    }
    let magnitude = acc.norm();
    let scale = (qv as f64).sqrt() * (qv as f64).ln();
    let bound_ratio = magnitude / scale;
    Ok(IncompleteSum {
        q: qv,
        h,
        value_re: acc.re,
        value_im: acc.im,
        magnitude,
        bound_ratio,
        audit_constant: INCOMPLETE_SUM_AUDIT,
        within_audit: bound_ratio <= INCOMPLETE_SUM_AUDIT,
    })
}

/// Horner evaluation of `P(n) mod q` (coefficients constant-first).
pub(crate) fn eval_poly_mod(poly: &[u64], n: u64, q: u64) -> u64 {
    let n = n % q;
    let mut acc = 0u64;
    for &c in poly.iter().rev() {
        acc = (mul_mod(acc, n, q) + c % q) % q;
    }
    acc
}

/// The linear phase of a rational-top sum: exactly `2π b/q`, or a real
/// number at distance `V` from one.
#[derive(Debug, Clone, Copy)]
pub enum LinearPhase {
    Rational { b: u64 },
    Real(f64),
}

/// Decomposition of `Σ_{M<n≤M+N} e(2π a₁ nᵏ/q + y n)` into complete-sum
/// copies plus a measured error, with the budget it must stay inside.
#[derive(Debug, Clone, Serialize)]
pub struct RationalTopSum {
    pub q: u64,
    pub k: u32,
    pub a1: u64,
    pub b: u64,
    pub n_len: u64,
    pub v_offset: f64,
    /// `⌊N/q⌋ · |T(a₁, b; q)|`.
    pub main: f64,
    /// `|direct sum| − main` (signed).
    pub measured_error: f64,
    /// `C · (N·V·(⌊N/q⌋√q + √q log q) + √q log q)` with frozen `C`.
    pub error_budget: f64,
    pub within_budget: bool,
    pub direct_magnitude: f64,
}

/// Evaluate the decomposition. The top phase `2π a₁ nᵏ/q` is reduced in
/// exact integers; the linear phase is handled exactly when `y` is passed
/// as `Rational{b}` and in double-double otherwise. `b` is the reference
/// rational for the error budget; for `Real(y)` the offset is
/// `V = |y − 2πb/q|` computed in double-double (so a rounded `2πb/q`
/// shows up as the tiny V it really is).
pub fn rational_top_sum(
    m_start: u64,
    n_len: u64,
    a1: u64,
    b: u64,
    q: PrimeModulus,
    y: LinearPhase,
    k: u32,
) -> Result<RationalTopSum> {
    let qv = q.get();
    if a1 % qv == 0 {
        return Err(Error::invalid("q divides a1"));
    }
    if n_len < 1 {
        return Err(Error::invalid("need N >= 1"));
    }
    if b < 1 || b > qv {
        return Err(Error::invalid("need 1 <= b <= q"));
    }
    if k < 2 || k as u64 % qv == 0 {
        return Err(Error::invalid("need degree k >= 2 with q ∤ k"));
    }
    let roots = root_table(qv);

    // complete sum T(a1, b; q) from the same code path as the direct sum
    let mut complete = Complex64::new(0.0, 0.0);
    for n in 1..=qv {
        let num = (mul_mod(a1, mod_pow(n, k as u64, qv), qv) + mul_mod(b % qv, n, qv)) % qv;
        complete += roots[num as usize];
    }

    // direct sum over (M, M+N]
    let mut direct = Complex64::new(0.0, 0.0);
    let v_offset;
    match y {
        LinearPhase::Rational { b: br } => {
            v_offset = if br == b {
                0.0
            } else {
                // offset between the two rationals, for budget accounting
                (TWO_PI.mul_f64(br as f64 - b as f64).div_f64(qv as f64))
                    .value()
                    .abs()
            };
            for i in 1..=n_len {
                let n = m_start + i;
                let num =
                    (mul_mod(a1, mod_pow(n % qv, k as u64, qv), qv) + mul_mod(br % qv, n % qv, qv)) % qv;
                direct += roots[num as usize];
            }
        }
        LinearPhase::Real(yv) => {
            let rational = TWO_PI.mul_f64(b as f64).div_f64(qv as f64);
            v_offset = Dd::from_f64(yv).sub(rational).value().abs();
            for i in 1..=n_len {
                let n = m_start + i;
                let num = mul_mod(a1, mod_pow(n % qv, k as u64, qv), qv);
                let phase = two_prod(yv, n as f64)
                    .add(TWO_PI.mul_f64(num as f64).div_f64(qv as f64));
                direct += phase.cis();
            }
        }
    }

    let copies = (n_len / qv) as f64;
    let main = copies * complete.norm();
    let direct_magnitude = direct.norm();
    let measured_error = direct_magnitude - main;
    let sq = (qv as f64).sqrt();
    let lg = (qv as f64).ln();
    let error_budget = RATIONAL_TOP_AUDIT
        * (n_len as f64 * v_offset * (copies * sq + sq * lg) + sq * lg);
    Ok(RationalTopSum {
        q: qv,
        k,
        a1,
        b,
        n_len,
        v_offset,
        main,
        measured_error,
        error_budget,
        within_budget: measured_error.abs() <= error_budget,
        direct_magnitude,
    })
}
