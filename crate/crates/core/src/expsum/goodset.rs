//! Good sets of coefficient tuples with large sum products.
//!
//! `𝒢*(q)` is the set of tuples `(a₁, …, a_n) mod q` with `q ∤ a₁` whose
//! associated product of complete sums is squeezed between square-root
//! cancellation from below and the Weil bound from above:
//!
//! ```text
//! (1/2)^{n−1} q^{(n−1)/2} ≤ ∏_{j=2}^n |T(a₁, a_j; q)| ≤ (k−1)^{n−1} q^{(n−1)/2}.
//! ```
//!
//! Counting is exact: per-row statistics are constant on cosets of the
//! k-th powers, so the full count collapses to `gcd(k, q−1)` representative
//! rows regardless of `q`.

use serde::Serialize;

use crate::audit::MAG_REL_TOL;
use crate::modular::PrimeModulus;
use crate::{Error, Result};

use super::table::RowEngine;
use super::{complete_sum, CoefficientTuple, ExponentPattern};

/// Materialized good set (tuples stored flat with stride `n`).
#[derive(Debug, Clone, Serialize)]
pub struct GoodSet {
    pub q: u64,
    pub k: u32,
    pub n: u32,
    /// Exact cardinality of the full set (also when `tuples` holds a sample).
    pub cardinality: u128,
    /// `q ≥ 16k²`, below which the cardinality floor is not guaranteed.
    pub size_bound_applies: bool,
    /// Flat tuple storage, stride `n`; possibly a deterministic subsample.
    pub tuples: Vec<u32>,
    /// True when `tuples` holds every member.
    pub complete: bool,
}

impl GoodSet {
    pub fn len(&self) -> usize {
        self.tuples.len() / self.n as usize
    }

    pub fn is_empty(&self) -> bool {
        self.tuples.is_empty()
    }

    pub fn tuple(&self, i: usize) -> &[u32] {
        let n = self.n as usize;
        &self.tuples[i * n..(i + 1) * n]
    }

    /// Exact integer check of the cardinality floor
    /// `|𝒢*| ≥ (k⁻²/8)ⁿ (1 − 2⁻ⁿ) qⁿ`.
    pub fn cardinality_floor_holds(&self) -> bool {
        let n = self.n;
        let k2x8 = 8u128 * (self.k as u128) * (self.k as u128);
        let lhs = self
            .cardinality
            .checked_mul(k2x8.pow(n))
            .and_then(|v| v.checked_mul(1u128 << n));
        let rhs = (self.q as u128)
            .checked_pow(n)
            .and_then(|v| v.checked_mul((1u128 << n) - 1));
        match (lhs, rhs) {
            (Some(l), Some(r)) => l >= r,
            _ => false,
        }
    }
}

/// Two-sided product thresholds with the census slack applied.
fn product_range(k: u32, q: u64, n: u32) -> (f64, f64) {
    let half = (n - 1) as i32;
    let scale = (q as f64).powf(half as f64 / 2.0);
    let lo = 0.5f64.powi(half) * scale * (1.0 - MAG_REL_TOL);
    let hi = ((k - 1) as f64).powi(half) * scale * (1.0 + MAG_REL_TOL);
    (lo, hi)
}

fn check_args(k: u32, q: u64, n: u32) -> Result<()> {
    if n < 2 {
        return Err(Error::invalid("good set needs n >= 2"));
    }
    if q <= k as u64 {
        return Err(Error::invalid("good set needs q > k"));
    }
    Ok(())
}

/// Exact `|𝒢*(q)|` for the pattern `(k,1)` in dimension `n ∈ {2, 3}`.
///
/// Cost: `gcd(k, q−1)` DFT rows plus an `O(q log q)` scan per row.
pub fn good_set_count(k: u32, q: PrimeModulus, n: u32) -> Result<u128> {
    check_args(k, q.get(), n)?;
    let qv = q.get();
    let engine = RowEngine::new(k, q)?;
    let d = engine.coset_count();
    let class_size = ((qv - 1) / d) as u128;
    let (lo, hi) = product_range(k, qv, n);
    let mut total = 0u128;
    for rep in engine.coset_reps() {
        let mags = engine.row_magnitudes(rep);
        total += class_size * count_products_in_range(&mags, n, lo, hi)?;
    }
    Ok(total)
}

/// Count `(a₂, …, a_n)` with `∏ mags[a_j] ∈ [lo, hi]` for one row.
fn count_products_in_range(mags: &[f64], n: u32, lo: f64, hi: f64) -> Result<u128> {
    match n {
        2 => Ok(mags.iter().filter(|&&m| m >= lo && m <= hi).count() as u128),
        3 => {
            let mut sorted = mags.to_vec();
            sorted.sort_by(f64::total_cmp);
            let mut total = 0u128;
            for &m in mags {
                if m <= 0.0 {
                    continue;
                }
                let l = partition_point(&sorted, lo / m);
                let r = partition_point_gt(&sorted, hi / m);
                total += (r - l) as u128;
            }
            Ok(total)
        }
        _ => Err(Error::invalid("good_set_count supports n in {2, 3}")),
    }
}

/// First index with `sorted[i] >= x`.
fn partition_point(sorted: &[f64], x: f64) -> usize {
    sorted.partition_point(|&v| v < x)
}

/// First index with `sorted[i] > x`.
fn partition_point_gt(sorted: &[f64], x: f64) -> usize {
    sorted.partition_point(|&v| v <= x)
}

/// Materialize `𝒢*(q)` for `n ∈ {2, 3}`. The enumeration is `O(q^{n-1})`
/// table lookups per `a₁`; `max_tuples` guards the memory.
pub fn good_set(k: u32, q: PrimeModulus, n: u32, max_tuples: usize) -> Result<GoodSet> {
    check_args(k, q.get(), n)?;
    if n > 3 {
        return Err(Error::invalid("materialized good_set supports n in {2, 3}"));
    }
    let qv = q.get();
    let engine = RowEngine::new(k, q)?;
    let (lo, hi) = product_range(k, qv, n);
    let mut tuples: Vec<u32> = Vec::new();
    for a1 in 1..qv {
        let mags = engine.row_magnitudes(a1);
        match n {
            2 => {
                for (b, &m) in mags.iter().enumerate() {
                    if m >= lo && m <= hi {
                        if tuples.len() / 2 >= max_tuples {
                            return Err(Error::invalid(format!(
                                "good_set exceeds max_tuples={max_tuples}; use good_set_count"
                            )));
                        }
                        tuples.push(a1 as u32);
                        tuples.push(b as u32);
                    }
                }
            }
            _ => {
                for a2 in 0..qv as usize {
                    let m2 = mags[a2];
                    if m2 <= 0.0 {
                        continue;
                    }
                    for a3 in 0..qv as usize {
                        let p = m2 * mags[a3];
                        if p >= lo && p <= hi {
                            if tuples.len() / 3 >= max_tuples {
                                return Err(Error::invalid(format!(
                                    "good_set exceeds max_tuples={max_tuples}; use good_set_count"
                                )));
                            }
                            tuples.push(a1 as u32);
                            tuples.push(a2 as u32);
                            tuples.push(a3 as u32);
                        }
                    }
                }
            }
        }
    }
    let cardinality = good_set_count(k, q, n)?;
    Ok(GoodSet {
        q: qv,
        k,
        n,
        cardinality,
        size_bound_applies: qv >= 16 * (k as u64) * (k as u64),
        complete: true,
        tuples,
    })
}

/// Deterministic subsample of `𝒢*(q)` for `n = 2`: visit `a₁` in a strided
/// order derived from `seed`, then take members spread evenly across each
/// visited row. Costs a handful of DFT rows, not the full table.
pub fn good_set_sample(
    k: u32,
    q: PrimeModulus,
    n: u32,
    want: usize,
    seed: u64,
) -> Result<GoodSet> {
    check_args(k, q.get(), n)?;
    if n != 2 && n != 3 {
        return Err(Error::invalid("good_set_sample supports n in {2, 3}"));
    }
    let qv = q.get();
    let engine = RowEngine::new(k, q)?;
    let (lo, hi) = product_range(k, qv, n);
    let mut tuples: Vec<u32> = Vec::new();

    // stride through a1 in [1, q) co-prime to q-1 so every row is reachable
    let mut step = (seed.wrapping_mul(0x9E37_79B9_7F4A_7C15) % (qv - 1)).max(1);
    while gcd(step, qv - 1) != 1 {
        step += 1;
        if step >= qv - 1 {
            step = 1;
        }
    }
    let offset = seed % (qv - 1);

    let mut visited = 0u64;
    while tuples.len() / (n as usize) < want && visited < qv - 1 {
        let a1 = 1 + (offset + visited * step) % (qv - 1);
        visited += 1;
        let mags = engine.row_magnitudes(a1);
        let need = want - tuples.len() / n as usize;
        match n {
            2 => {
                let members: Vec<u32> = mags
                    .iter()
                    .enumerate()
                    .filter(|&(_, &m)| m >= lo && m <= hi)
                    .map(|(b, _)| b as u32)
                    .collect();
                if members.is_empty() {
                    continue;
                }
                // spread the picks across the row
                let take = need.min(members.len()).min(want.div_ceil(4).max(1));
                let stride = members.len() / take;
                for i in 0..take {
                    tuples.push(a1 as u32);
                    tuples.push(members[i * stride]);
                }
            }
            _ => {
                let take = need.min(want.div_ceil(4).max(1));
                let mut got = 0usize;
                'outer: for i2 in 0..qv as usize {
                    let a2 = (i2 * 7 + 3) % qv as usize;
                    let m2 = mags[a2];
                    if m2 <= 0.0 {
                        continue;
                    }
                    for i3 in 0..qv as usize {
                        let a3 = (i3 * 11 + 5) % qv as usize;
                        let prod = m2 * mags[a3];
                        if prod >= lo && prod <= hi {
                            tuples.push(a1 as u32);
                            tuples.push(a2 as u32);
                            tuples.push(a3 as u32);
                            got += 1;
                            if got >= take {
                                break 'outer;
                            }
                            break; // one a3 per a2, keeps picks spread
                        }
                    }
                }
            }
        }
    }
    let cardinality = good_set_count(k, q, n)?;
    Ok(GoodSet {
        q: qv,
        k,
        n,
        cardinality,
        size_bound_applies: qv >= 16 * (k as u64) * (k as u64),
        complete: false,
        tuples,
    })
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Spot oracle: re-verify membership of one tuple by naive complete sums.
pub fn verify_member_naive(k: u32, q: PrimeModulus, tuple: &[u64]) -> Result<bool> {
    let n = tuple.len() as u32;
    check_args(k, q.get(), n)?;
    let pattern = ExponentPattern::monomial_plus_linear(k)?;
    let a1 = tuple[0];
    if a1 % q.get() == 0 {
        return Ok(false);
    }
    let mut product = 1.0f64;
    for &aj in &tuple[1..] {
        let t = complete_sum(&pattern, &CoefficientTuple::new(vec![a1, aj], q))?;
        product *= t.norm();
    }
    let (lo, hi) = product_range(k, q.get(), n);
    Ok(product >= lo && product <= hi)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(q: u64) -> PrimeModulus {
        PrimeModulus::new(q).unwrap()
    }

    #[test]
    fn gauss_case_counts_everything() {
        // k=2: every (a1 != 0, b) has |T| = sqrt(q), inside the window.
        let c = good_set_count(2, p(5), 2).unwrap();
        assert_eq!(c, 20);
        let gs = good_set(2, p(5), 2, 100).unwrap();
        assert_eq!(gs.len(), 20);
        assert_eq!(gs.cardinality, 20);
    }

    #[test]
    fn count_matches_materialized_for_small_q() {
        for q in [7u64, 11, 13, 17, 19, 23] {
            for k in [2u32, 3] {
                let c = good_set_count(k, p(q), 2).unwrap();
                let gs = good_set(k, p(q), 2, 1 << 20).unwrap();
                assert_eq!(c, gs.len() as u128, "q={q} k={k}");
            }
        }
    }

    #[test]
    fn count_matches_materialized_n3() {
        for q in [13u64, 17] {
            let c = good_set_count(3, p(q), 3).unwrap();
            let gs = good_set(3, p(q), 3, 1 << 20).unwrap();
            assert_eq!(c, gs.len() as u128, "q={q}");
        }
    }

    #[test]
    fn cardinality_floor_gauss() {
        let gs = good_set(2, p(67), 2, 1 << 20).unwrap();
        assert!(gs.size_bound_applies); // 67 >= 64
        assert!(gs.cardinality_floor_holds());
    }

    #[test]
    fn members_have_nonzero_a1_and_pass_naive_oracle() {
        let gs = good_set(3, p(149), 2, 1 << 20).unwrap();
        assert!(!gs.is_empty());
        for i in (0..gs.len()).step_by(gs.len() / 17 + 1) {
            let t = gs.tuple(i);
            assert_ne!(t[0], 0);
            let tuple: Vec<u64> = t.iter().map(|&v| v as u64).collect();
            assert!(verify_member_naive(3, p(149), &tuple).unwrap());
        }
    }

    #[test]
    fn sample_is_deterministic_and_valid() {
        let s1 = good_set_sample(3, p(149), 2, 40, 99).unwrap();
        let s2 = good_set_sample(3, p(149), 2, 40, 99).unwrap();
        assert_eq!(s1.tuples, s2.tuples);
        assert_eq!(s1.len(), 40);
        for i in 0..s1.len() {
            let t: Vec<u64> = s1.tuple(i).iter().map(|&v| v as u64).collect();
            assert!(verify_member_naive(3, p(149), &t).unwrap());
        }
    }

    #[test]
    fn rejects_small_n() {
        assert!(good_set_count(3, p(149), 1).is_err());
    }
}
