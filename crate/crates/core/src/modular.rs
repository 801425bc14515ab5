//! Exact modular arithmetic, deterministic primality, prime windows.
//!
//! Everything here is pure integer arithmetic with 128-bit intermediates,
//! so the census results downstream are reproducible bit for bit.

use serde::Serialize;

use crate::{Error, Result};

/// A modulus that has passed the deterministic primality check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct PrimeModulus(u64);

impl PrimeModulus {
    /// Certify `q` as prime. Fails on composites and on `q < 2`.
    pub fn new(q: u64) -> Result<Self> {
        if is_prime(q) {
            Ok(PrimeModulus(q))
        } else {
            Err(Error::invalid(format!("{q} is not prime")))
        }
    }

    #[inline]
    pub fn get(self) -> u64 {
        self.0
    }
}

#[inline]
pub fn mul_mod(a: u64, b: u64, q: u64) -> u64 {
    ((a as u128 * b as u128) % q as u128) as u64
}

#[inline]
pub fn add_mod(a: u64, b: u64, q: u64) -> u64 {
    let s = a as u128 + b as u128;
    (if s >= q as u128 { s - q as u128 } else { s }) as u64
}

/// Square-and-multiply powering, `base^exp mod q`.
pub fn mod_pow(mut base: u64, mut exp: u64, q: u64) -> u64 {
    debug_assert!(q >= 1);
    if q == 1 {
        return 0;
    }
    base %= q;
    let mut acc = 1u64;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, q);
        }
        base = mul_mod(base, base, q);
        exp >>= 1;
    }
    acc
}

/// Modular inverse by extended Euclid. Panics if `gcd(a, q) != 1`.
pub fn inv_mod(a: u64, q: u64) -> u64 {
    let (mut old_r, mut r) = (a as i128, q as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let quot = old_r / r;
        (old_r, r) = (r, old_r - quot * r);
        (old_s, s) = (s, old_s - quot * s);
    }
    assert!(old_r == 1, "inv_mod: {a} not invertible mod {q}");
    (old_s.rem_euclid(q as i128)) as u64
}

/// Deterministic Miller–Rabin for the full `u64` range.
///
/// The witness set {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37} is
/// deterministic for all n < 3.3·10²⁴, which covers every 64-bit input.
pub fn is_prime(m: u64) -> bool {
    if m < 2 {
        return false;
    }
    for &p in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if m == p {
            return true;
        }
        if m % p == 0 {
            return false;
        }
    }
    let mut d = m - 1;
    let mut r = 0u32;
    while d & 1 == 0 {
        d >>= 1;
        r += 1;
    }
    'witness: for &a in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = mod_pow(a, d, m);
        if x == 1 || x == m - 1 {
            continue;
        }
        for _ in 1..r {
            x = mul_mod(x, x, m);
            if x == m - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// All primes in `[lo, hi]`, ascending, by a simple sieve.
pub fn primes_in_range(lo: u64, hi: u64) -> Vec<u64> {
    if hi < 2 || hi < lo {
        return Vec::new();
    }
    let lo = lo.max(2);
    let n = (hi - lo) as usize + 1;
    let mut composite = vec![false; n];
    let mut p = 2u64;
    while p * p <= hi {
        // first multiple of p in [lo, hi] that is >= p^2
        let start = (lo.div_ceil(p) * p).max(p * p);
        let mut m = start;
        while m <= hi {
            composite[(m - lo) as usize] = true;
            m += p;
        }
        p += 1;
        while p * p <= hi && !is_prime_small(p) {
            p += 1;
        }
    }
    (0..n)
        .filter(|&i| !composite[i])
        .map(|i| lo + i as u64)
        .collect()
}

fn is_prime_small(p: u64) -> bool {
    if p < 4 {
        return p >= 2;
    }
    if p % 2 == 0 {
        return false;
    }
    let mut d = 3;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// The dyadic prime window `[Q/2, Q]` together with the prime-number-theorem
/// floor `(1/4) Q / log Q` that the construction relies on.
#[derive(Debug, Clone, Serialize)]
pub struct PrimeWindow {
    pub q_scale: u64,
    pub primes: Vec<u64>,
    pub count: usize,
    pub pnt_floor: f64,
    pub meets_pnt_floor: bool,
}

/// Collect all primes in `[Q/2, Q]` and check the count against the PNT
/// floor. An empty window is reported, not an error.
pub fn prime_window(q_scale: u64) -> PrimeWindow {
    let primes = primes_in_range(q_scale / 2, q_scale);
    let count = primes.len();
    let pnt_floor = 0.25 * q_scale as f64 / (q_scale as f64).ln();
    PrimeWindow {
        q_scale,
        count,
        pnt_floor,
        meets_pnt_floor: count as f64 >= pnt_floor,
        primes,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trial_division(m: u64) -> bool {
        if m < 2 {
            return false;
        }
        let mut d = 2;
        while d * d <= m {
            if m % d == 0 {
                return false;
            }
            d += 1;
        }
        true
    }

    #[test]
    fn small_primality_facts() {
        assert!(is_prime(2));
        assert!(!is_prime(1));
        assert!(!is_prime(0));
        // Carmichael number: fools Fermat tests, must not fool us.
        assert!(!is_prime(561));
        assert_eq!(is_prime(2_147_483_647), trial_division(2_147_483_647));
    }

    #[test]
    fn agrees_with_trial_division_to_1e6() {
        for m in 0..1_000_000u64 {
            assert_eq!(is_prime(m), trial_division(m), "mismatch at {m}");
        }
    }

    #[test]
    fn large_known_primes() {
        assert!(is_prime(u64::MAX - 58)); // 2^64 - 59 is prime
        assert!(!is_prime(u64::MAX));
        assert!(is_prime((1 << 61) - 1)); // Mersenne prime M61
    }

    #[test]
    fn mod_pow_examples() {
        assert_eq!(mod_pow(3, 0, 7), 1);
        assert_eq!(mod_pow(2, 10, 11), 1); // Fermat
        assert_eq!(mod_pow(5, 3, 13), 8); // 125 = 9*13 + 8
    }

    #[test]
    fn mod_pow_homomorphism() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let q = 1_000_003u64;
            let b = rng.gen_range(0..q);
            let e1 = rng.gen_range(0..1000u64);
            let e2 = rng.gen_range(0..1000u64);
            assert_eq!(
                mod_pow(b, e1 + e2, q),
                mul_mod(mod_pow(b, e1, q), mod_pow(b, e2, q), q)
            );
        }
    }

    #[test]
    fn inv_mod_roundtrip() {
        for q in [5u64, 97, 65537] {
            for a in 1..50 {
                assert_eq!(mul_mod(a, inv_mod(a, q), q), 1);
            }
        }
    }

    #[test]
    fn primes_in_range_examples() {
        let ps = primes_in_range(64, 128);
        assert_eq!(ps.len(), 12);
        assert_eq!(ps.first(), Some(&67));
        assert_eq!(ps.last(), Some(&127));
        assert_eq!(primes_in_range(2, 2), vec![2]);
        assert!(primes_in_range(24, 28).is_empty());
    }

    #[test]
    fn window_meets_pnt_floor() {
        for q in [1536u64, 2048, 4096, 16384] {
            let w = prime_window(q);
            assert!(w.meets_pnt_floor, "window [Q/2,Q] too thin at Q={q}");
        }
    }
}
