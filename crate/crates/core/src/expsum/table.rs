//! DFT-built magnitude tables for the degree pattern `(k, 1)`.
//!
//! For fixed `a₁` the row `b ↦ T(a₁, b; q)` equals the unnormalized inverse
//! DFT of the unimodular vector `w_m = e(2π a₁ m^k / q)`, so a full table
//! costs `O(q² log q)`. Rows for `a₁` in the same coset of the k-th powers
//! `(F_q^*)^k` are permutations of one another (`n ↦ u⁻¹ n`), which lets
//! census-style counts over all of `F_q^*` collapse to `gcd(k, q−1) ≤ k`
//! representative rows.

use std::io::Write;
use std::sync::Arc;

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

use crate::modular::{mod_pow, mul_mod, PrimeModulus};
use crate::{Error, Result};

use super::{complete_sum_with_roots, root_table, ExponentPattern};

/// Per-prime machinery for producing rows of the `(k,1)` table.
pub struct RowEngine {
    q: u64,
    k: u32,
    roots: Vec<Complex64>,
    /// `m^k mod q` for `m` in `0..q`.
    powk: Vec<u32>,
    fft: Arc<dyn Fft<f64>>,
}

impl RowEngine {
    pub fn new(k: u32, q: PrimeModulus) -> Result<Self> {
        let qv = q.get();
        if qv < 3 {
            return Err(Error::invalid("row engine needs q >= 3"));
        }
        if qv > (1 << 26) {
            return Err(Error::invalid("row engine capped at q < 2^26"));
        }
        if k < 2 {
            return Err(Error::invalid("degree must be at least 2"));
        }
        let mut planner = FftPlanner::new();
        let fft = planner.plan_fft_inverse(qv as usize);
        Ok(RowEngine {
            q: qv,
            k,
            roots: root_table(qv),
            powk: (0..qv).map(|m| mod_pow(m, k as u64, qv) as u32).collect(),
            fft,
        })
    }

    #[inline]
    pub fn q(&self) -> u64 {
        self.q
    }

    #[inline]
    pub fn k(&self) -> u32 {
        self.k
    }

    /// Complex row `T(a₁, ·; q)` of length `q`.
    pub fn row(&self, a1: u64) -> Vec<Complex64> {
        let q = self.q;
        let a1 = a1 % q;
        let mut buf: Vec<Complex64> = self
            .powk
            .iter()
            .map(|&pk| self.roots[mul_mod(a1, pk as u64, q) as usize])
            .collect();
        let mut scratch = vec![Complex64::default(); self.fft.get_inplace_scratch_len()];
        self.fft.process_with_scratch(&mut buf, &mut scratch);
        buf
    }

    pub fn row_magnitudes(&self, a1: u64) -> Vec<f64> {
        self.row(a1).into_iter().map(|z| z.norm()).collect()
    }

    /// Single entry via the naive sum (the oracle path).
    pub fn naive_entry(&self, a1: u64, b: u64) -> Complex64 {
        let pattern = ExponentPattern::monomial_plus_linear(self.k).unwrap();
        complete_sum_with_roots(&pattern, &[a1 % self.q, b % self.q], self.q, &self.roots)
    }

    /// Representatives of the cosets of `(F_q^*)^k` in `F_q^*`, as powers of
    /// a primitive root. Rows indexed inside one coset are permutations of
    /// each other, so any per-row statistic is constant on cosets.
    pub fn coset_reps(&self) -> Vec<u64> {
        let d = gcd(self.k as u64, self.q - 1);
        let g = primitive_root(self.q);
        (0..d).map(|i| mod_pow(g, i, self.q)).collect()
    }

    /// Number of cosets `gcd(k, q−1)`.
    pub fn coset_count(&self) -> u64 {
        gcd(self.k as u64, self.q - 1)
    }

    /// `coset_id[a1]` for every `a1` in `0..q` (entry 0 is unused/0):
    /// the discrete log modulo `d` of `a1` with respect to the primitive
    /// root used by [`Self::coset_reps`].
    pub fn coset_ids(&self) -> Vec<u8> {
        let q = self.q;
        let d = gcd(self.k as u64, q - 1);
        let g = primitive_root(q);
        let mut ids = vec![0u8; q as usize];
        let mut x = 1u64;
        for j in 0..(q - 1) {
            ids[x as usize] = (j % d) as u8;
            x = mul_mod(x, g, q);
        }
        ids
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Smallest primitive root of `F_q^*` for prime `q`.
pub fn primitive_root(q: u64) -> u64 {
    if q == 2 {
        return 1;
    }
    let phi = q - 1;
    let factors = distinct_prime_factors(phi);
    'g: for g in 2..q {
        for &f in &factors {
            if mod_pow(g, phi / f, q) == 1 {
                continue 'g;
            }
        }
        return g;
    }
    unreachable!("prime fields always have a primitive root")
}

fn distinct_prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Dense `q × q` magnitude grid, entry `(a₁, b) = |T(a₁, b; q)|`.
#[derive(Debug, Clone)]
pub struct SumTable {
    pub q: u64,
    pub k: u32,
    magnitudes: Vec<f64>,
}

impl SumTable {
    /// Build the full table via the DFT row path. Rejects composite or huge
    /// moduli (the grid is dense; q ≤ 4096 keeps it under 256 MiB).
    pub fn build(k: u32, q: PrimeModulus) -> Result<Self> {
        use rayon::prelude::*;
        let qv = q.get();
        if qv > 4096 {
            return Err(Error::invalid("dense SumTable capped at q <= 4096"));
        }
        let engine = RowEngine::new(k, q)?;
        let rows: Vec<Vec<f64>> = (0..qv)
            .into_par_iter()
            .map(|a1| engine.row_magnitudes(a1))
            .collect();
        let mut magnitudes = Vec::with_capacity((qv * qv) as usize);
        for r in rows {
            magnitudes.extend_from_slice(&r);
        }
        Ok(SumTable {
            q: qv,
            k,
            magnitudes,
        })
    }

    #[inline]
    pub fn entry(&self, a1: u64, b: u64) -> f64 {
        self.magnitudes[(a1 * self.q + b) as usize]
    }

    pub fn row(&self, a1: u64) -> &[f64] {
        let q = self.q as usize;
        &self.magnitudes[a1 as usize * q..(a1 as usize + 1) * q]
    }

    /// CSV emission, columns `a1,b,magnitude`.
    pub fn write_csv<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        writeln!(w, "# expmax csv v1 sum-table q={} k={}", self.q, self.k)?;
        writeln!(w, "a1,b,magnitude")?;
        for a1 in 0..self.q {
            for b in 0..self.q {
                writeln!(w, "{},{},{:.12e}", a1, b, self.entry(a1, b))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modular::PrimeModulus;

    fn p(q: u64) -> PrimeModulus {
        PrimeModulus::new(q).unwrap()
    }

    #[test]
    fn table_matches_naive_exhaustively_q61() {
        for q in [3u64, 7, 31, 61] {
            for k in [2u32, 3, 5] {
                let engine = RowEngine::new(k, p(q)).unwrap();
                let table = SumTable::build(k, p(q)).unwrap();
                for a1 in 0..q {
                    for b in 0..q {
                        let naive = engine.naive_entry(a1, b).norm();
                        assert!(
                            (table.entry(a1, b) - naive).abs() <= 1e-9 * q as f64,
                            "q={q} k={k} a1={a1} b={b}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn structural_entries() {
        let t = SumTable::build(3, p(7)).unwrap();
        assert!((t.entry(0, 0) - 7.0).abs() < 1e-9);
        for b in 1..7 {
            assert!(t.entry(0, b) < 1e-9);
        }
    }

    #[test]
    fn gauss_rows_all_sqrt_q() {
        let t = SumTable::build(2, p(13)).unwrap();
        let s = 13f64.sqrt();
        for a1 in 1..13 {
            for b in 0..13 {
                assert!((t.entry(a1, b) - s).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn coset_ids_consistent_with_reps() {
        let engine = RowEngine::new(3, p(13)).unwrap();
        let d = engine.coset_count();
        assert_eq!(d, 3); // gcd(3, 12)
        let ids = engine.coset_ids();
        let reps = engine.coset_reps();
        for (i, &r) in reps.iter().enumerate() {
            assert_eq!(ids[r as usize] as usize, i);
        }
        // every coset has (q-1)/d members
        let mut counts = [0u32; 3];
        for a1 in 1..13u64 {
            counts[ids[a1 as usize] as usize] += 1;
        }
        assert_eq!(counts, [4, 4, 4]);
    }

    #[test]
    fn rows_within_coset_are_permutations() {
        let engine = RowEngine::new(3, p(13)).unwrap();
        let ids = engine.coset_ids();
        let base = {
            let mut r = engine.row_magnitudes(1);
            r.sort_by(f64::total_cmp);
            r
        };
        for a1 in 2..13u64 {
            if ids[a1 as usize] == ids[1] {
                let mut r = engine.row_magnitudes(a1);
                r.sort_by(f64::total_cmp);
                for (x, y) in r.iter().zip(&base) {
                    assert!((x - y).abs() < 1e-9);
                }
            }
        }
    }

    #[test]
    fn csv_has_header_and_rows() {
        let t = SumTable::build(2, p(3)).unwrap();
        let mut buf = Vec::new();
        t.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert!(lines.next().unwrap().starts_with("# expmax csv v1 sum-table"));
        assert_eq!(lines.next().unwrap(), "a1,b,magnitude");
        assert_eq!(text.lines().count(), 2 + 9);
    }
}
