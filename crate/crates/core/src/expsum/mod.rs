//! Complete exponential sums over prime fields and their statistics.
//!
//! The basic object is
//!
//! ```text
//! T(a; q) = Σ_{n mod q} e( 2π (a₁ n^{k₁} + … + a_s n^{k_s}) / q ),
//! ```
//!
//! evaluated with exact integer reduction of the phase numerator modulo `q`
//! followed by a single root-of-unity table lookup per term. Rational phases
//! therefore carry no argument-reduction error at all, which is what the
//! rational-top-coefficient decomposition in [`incomplete`] relies on.
//!
//! For the degree pattern `(k, 1)` the whole `q × q` magnitude grid is built
//! one row at a time: for fixed `a₁` the map `b ↦ T(a₁, b; q)` is the
//! unnormalized inverse DFT of `m ↦ e(2π a₁ m^k / q)`, so a row costs
//! `O(q log q)` instead of `O(q²)`. The naive summation stays in the crate
//! as the independent oracle for that fast path.

pub mod goodset;
pub mod incomplete;
pub mod table;

pub use goodset::{good_set, good_set_count, good_set_sample, GoodSet};
pub use incomplete::{incomplete_sum, rational_top_sum, IncompleteSum, RationalTopSum};
pub use table::{RowEngine, SumTable};

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::audit::MAG_REL_TOL;
use crate::modular::{mod_pow, mul_mod, PrimeModulus};
use crate::{Error, Result};

/// Strictly decreasing exponents `k₁ > k₂ > … > k_s = 1`, `s ≥ 2`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExponentPattern {
    exponents: Vec<u32>,
}

impl ExponentPattern {
    pub fn new(exponents: Vec<u32>) -> Result<Self> {
        if exponents.len() < 2 {
            return Err(Error::invalid("pattern needs at least two exponents"));
        }
        if *exponents.last().unwrap() != 1 {
            return Err(Error::invalid("last exponent must be 1"));
        }
        if !exponents.windows(2).all(|w| w[0] > w[1]) {
            return Err(Error::invalid("exponents must be strictly decreasing"));
        }
        Ok(ExponentPattern { exponents })
    }

    /// The two-term pattern `(k, 1)` used throughout the box construction.
    pub fn monomial_plus_linear(k: u32) -> Result<Self> {
        if k < 2 {
            return Err(Error::invalid("degree must be at least 2"));
        }
        Self::new(vec![k, 1])
    }

    #[inline]
    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.exponents.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        false
    }

    #[inline]
    pub fn top_degree(&self) -> u32 {
        self.exponents[0]
    }
}

/// A coefficient tuple `(a₁, …, a_s)` reduced modulo its prime.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoefficientTuple {
    pub values: Vec<u64>,
    pub q: PrimeModulus,
}

impl CoefficientTuple {
    pub fn new(values: Vec<u64>, q: PrimeModulus) -> Self {
        let m = q.get();
        CoefficientTuple {
            values: values.into_iter().map(|v| v % m).collect(),
            q,
        }
    }
}

/// Table of the `q` complex roots of unity `e(2π m / q)`.
pub(crate) fn root_table(q: u64) -> Vec<Complex64> {
    let step = std::f64::consts::TAU / q as f64;
    (0..q)
        .map(|m| {
            let (s, c) = (m as f64 * step).sin_cos();
            Complex64::new(c, s)
        })
        .collect()
}

/// Naive evaluation of `T(a; q)`: exact phase numerators mod `q`, one table
/// lookup per term. `O(q · s · log k)`; this is the oracle for every faster
/// path in the crate.
pub fn complete_sum(pattern: &ExponentPattern, coeffs: &CoefficientTuple) -> Result<Complex64> {
    let q = coeffs.q.get();
    if coeffs.values.len() != pattern.len() {
        return Err(Error::invalid(format!(
            "pattern length {} != coefficient count {}",
            pattern.len(),
            coeffs.values.len()
        )));
    }
    let roots = root_table(q);
    Ok(complete_sum_with_roots(pattern, &coeffs.values, q, &roots))
}

pub(crate) fn complete_sum_with_roots(
    pattern: &ExponentPattern,
    values: &[u64],
    q: u64,
    roots: &[Complex64],
) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for n in 0..q {
        let mut num = 0u64;
        for (&a, &k) in values.iter().zip(pattern.exponents()) {
            if a != 0 {
                num = (num + mul_mod(a, mod_pow(n, k as u64, q), q)) % q;
            }
        }
        acc += roots[num as usize];
    }
    acc
}

/// Parseval residual `|Σ_{(a₁,b)} |T|² − q³| / q³` for the pattern `(k,1)`.
pub fn parseval_check(k: u32, q: PrimeModulus) -> Result<f64> {
    let engine = RowEngine::new(k, q)?;
    let qv = q.get();
    let total: f64 = (0..qv)
        .into_par_iter()
        .map(|a1| {
            let row = engine.row(a1);
            row.iter().map(|z| z.norm_sqr()).sum::<f64>()
        })
        .sum();
    let cube = (qv as f64).powi(3);
    Ok((total - cube).abs() / cube)
}

/// Result of scanning a full table for the square-root-cancellation bound.
#[derive(Debug, Clone, Serialize)]
pub struct WeilReport {
    pub q: u64,
    pub k: u32,
    /// `max |T(a₁,b;q)| / ((k−1)√q)` over `q ∤ a₁`.
    pub max_ratio: f64,
    pub argmax: (u64, u64),
    /// `false` when `q | k`, where the bound's hypothesis fails.
    pub applicable: bool,
}

/// Scan `max |T|/((k−1)√q)` over all `a₁ ≠ 0`. Fails fast when `q | k`.
pub fn weil_margin(k: u32, q: PrimeModulus) -> Result<WeilReport> {
    let qv = q.get();
    if k as u64 % qv == 0 {
        return Ok(WeilReport {
            q: qv,
            k,
            max_ratio: f64::NAN,
            argmax: (0, 0),
            applicable: false,
        });
    }
    let engine = RowEngine::new(k, q)?;
    let bound = (k - 1) as f64 * (qv as f64).sqrt();
    let (max_ratio, argmax) = (1..qv)
        .into_par_iter()
        .map(|a1| {
            let row = engine.row_magnitudes(a1);
            let (b, m) = row
                .iter()
                .enumerate()
                .max_by(|x, y| x.1.total_cmp(y.1))
                .map(|(b, &m)| (b as u64, m))
                .unwrap();
            (m / bound, (a1, b))
        })
        .max_by(|x, y| x.0.total_cmp(&y.0))
        .unwrap();
    Ok(WeilReport {
        q: qv,
        k,
        max_ratio,
        argmax,
        applicable: true,
    })
}

/// Census of large magnitudes in the `(k,1)` table.
#[derive(Debug, Clone, Serialize)]
pub struct CensusReport {
    pub q: u64,
    pub k: u32,
    pub alpha1: f64,
    /// `k⁻²/4`, the guaranteed density of large sums.
    pub alpha2: f64,
    /// Pairs `(a₁, b) mod q²` with `|T| ≥ α₁ √q` (relative slack 1e−9).
    pub count_large: u64,
    pub fraction: f64,
    /// Histogram of `|T|/√q` with fixed bin width 0.05; the last bin
    /// collects everything past `k + 0.05` (the zero tuple lands there).
    pub bin_width: f64,
    pub histogram: Vec<u64>,
}

/// Count pairs with `|T(a₁,b;q)| ≥ α₁√q` over the full `q²` grid.
pub fn census(k: u32, q: PrimeModulus, alpha1: f64) -> Result<CensusReport> {
    if !(0.0 < alpha1 && alpha1 < 1.0) {
        return Err(Error::invalid("alpha1 must lie in (0,1)"));
    }
    let qv = q.get();
    if k as u64 % qv == 0 {
        return Err(Error::invalid(format!("census requires q ∤ k (q={qv}, k={k})")));
    }
    let engine = RowEngine::new(k, q)?;
    let sqrt_q = (qv as f64).sqrt();
    let threshold = alpha1 * sqrt_q * (1.0 - MAG_REL_TOL);
    let bin_width = 0.05;
    let nbins = (k as f64 / bin_width).ceil() as usize + 2;
    let (count_large, histogram) = (0..qv)
        .into_par_iter()
        .map(|a1| {
            let row = engine.row_magnitudes(a1);
            let mut count = 0u64;
            let mut hist = vec![0u64; nbins];
            for &m in &row {
                if m >= threshold {
                    count += 1;
                }
                let bin = ((m / sqrt_q) / bin_width) as usize;
                hist[bin.min(nbins - 1)] += 1;
            }
            (count, hist)
        })
        .reduce(
            || (0u64, vec![0u64; nbins]),
            |(c1, mut h1), (c2, h2)| {
                for (a, b) in h1.iter_mut().zip(&h2) {
                    *a += b;
                }
                (c1 + c2, h1)
            },
        );
    Ok(CensusReport {
        q: qv,
        k,
        alpha1,
        alpha2: 0.25 / (k as f64 * k as f64),
        count_large,
        fraction: count_large as f64 / (qv as f64 * qv as f64),
        bin_width,
        histogram,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modular::PrimeModulus;

    fn pat(k: u32) -> ExponentPattern {
        ExponentPattern::monomial_plus_linear(k).unwrap()
    }

    fn p(q: u64) -> PrimeModulus {
        PrimeModulus::new(q).unwrap()
    }

    #[test]
    fn zero_tuple_gives_q() {
        let t = complete_sum(&pat(3), &CoefficientTuple::new(vec![0, 0], p(7))).unwrap();
        assert!((t.re - 7.0).abs() < 1e-12 && t.im.abs() < 1e-12);
    }

    #[test]
    fn pure_linear_character_sums_to_zero() {
        let t = complete_sum(&pat(4), &CoefficientTuple::new(vec![0, 3], p(7))).unwrap();
        assert!(t.norm() < 1e-10);
    }

    #[test]
    fn gauss_sum_magnitude() {
        let t = complete_sum(&pat(2), &CoefficientTuple::new(vec![1, 0], p(5))).unwrap();
        assert!((t.norm() - 5f64.sqrt()).abs() < 1e-10);
    }

    #[test]
    fn magnitude_never_exceeds_q() {
        for q in [3u64, 5, 7, 11] {
            for a1 in 0..q {
                for b in 0..q {
                    let t =
                        complete_sum(&pat(3), &CoefficientTuple::new(vec![a1, b], p(q))).unwrap();
                    assert!(t.norm() <= q as f64 + 1e-9);
                }
            }
        }
    }

    #[test]
    fn conjugation_symmetry() {
        let q = 13u64;
        for a1 in 0..q {
            for b in 0..q {
                let t1 = complete_sum(&pat(3), &CoefficientTuple::new(vec![a1, b], p(q))).unwrap();
                let t2 = complete_sum(
                    &pat(3),
                    &CoefficientTuple::new(vec![(q - a1) % q, (q - b) % q], p(q)),
                )
                .unwrap();
                assert!((t1.norm() - t2.norm()).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn dilation_symmetry_exhaustive_small_q() {
        // |T(a₁ uᵏ, b u; q)| = |T(a₁, b; q)| via n ↦ u⁻¹ n.
        for q in [5u64, 7, 11, 13, 17, 19, 23, 29, 31] {
            let k = 3u32;
            for a1 in 0..q {
                for b in 0..q {
                    let t = complete_sum(&pat(k), &CoefficientTuple::new(vec![a1, b], p(q)))
                        .unwrap()
                        .norm();
                    for u in 1..q {
                        let a1u = mul_mod(a1, mod_pow(u, k as u64, q), q);
                        let bu = mul_mod(b, u, q);
                        let tu = complete_sum(&pat(k), &CoefficientTuple::new(vec![a1u, bu], p(q)))
                            .unwrap()
                            .norm();
                        assert!((t - tu).abs() < 1e-8, "q={q} a1={a1} b={b} u={u}");
                    }
                }
            }
        }
    }

    #[test]
    fn parseval_small_cases() {
        assert!(parseval_check(2, p(5)).unwrap() < 1e-10);
        assert!(parseval_check(3, p(7)).unwrap() < 1e-10);
        assert!(parseval_check(4, p(3)).unwrap() < 1e-10);
    }

    #[test]
    fn parseval_naive_route_small_q() {
        // Independent of the DFT: naive rows must satisfy Σ|T|² = q³ too.
        let q = 11u64;
        let mut total = 0.0;
        for a1 in 0..q {
            for b in 0..q {
                total += complete_sum(&pat(3), &CoefficientTuple::new(vec![a1, b], p(q)))
                    .unwrap()
                    .norm_sqr();
            }
        }
        let cube = (q as f64).powi(3);
        assert!((total - cube).abs() / cube < 1e-10);
    }

    #[test]
    fn weil_saturated_by_gauss_sums() {
        let r = weil_margin(2, p(5)).unwrap();
        assert!(r.applicable);
        assert!((r.max_ratio - 1.0).abs() < 1e-9);
    }

    #[test]
    fn weil_inapplicable_when_q_divides_k() {
        let r = weil_margin(3, p(3)).unwrap();
        assert!(!r.applicable);
    }

    #[test]
    fn weil_cubic_q7() {
        let r = weil_margin(3, p(7)).unwrap();
        assert!(r.applicable && r.max_ratio <= 1.0 + 1e-9, "ratio {}", r.max_ratio);
    }

    #[test]
    fn census_gauss_counts_all_nonzero_rows() {
        let r = census(2, p(5), 0.5).unwrap();
        assert_eq!(r.count_large, 20);
    }

    #[test]
    fn census_near_unit_threshold_keeps_saturating_rows() {
        // Gauss magnitudes sit exactly at √q, so a threshold just below √q
        // keeps all 20 nonzero rows plus the zero tuple.
        let r = census(2, p(5), 0.999_999).unwrap();
        assert_eq!(r.count_large, 21);
    }

    #[test]
    fn census_bound_q17_k3() {
        let r = census(3, p(17), 0.5).unwrap();
        assert!(r.count_large >= 9, "count {}", r.count_large); // ⌈289/36⌉
    }
}
