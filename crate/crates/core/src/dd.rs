//! Double-double arithmetic for phase reduction.
//!
//! Phases of the form `m·y + m^k·w` reach 10¹³ radians at desk scale while
//! the sums downstream need them modulo 2π to ~10⁻¹⁰. A plain `f64`
//! reduction of 10¹³ keeps only ~3 fractional bits, so every irrational
//! phase is accumulated as an unevaluated hi+lo pair (~106 bits) and reduced
//! against a two-limb 2π.

/// Unevaluated sum `hi + lo` with `|lo| <= ulp(hi)/2`.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct Dd {
    pub hi: f64,
    pub lo: f64,
}

const SPLITTER: f64 = 134_217_729.0; // 2^27 + 1

/// 2π to double-double precision.
pub const TWO_PI: Dd = Dd {
    hi: 6.283185307179586,
    lo: 2.4492935982947064e-16,
};

#[inline]
fn two_sum(a: f64, b: f64) -> Dd {
    let hi = a + b;
    let v = hi - a;
    let lo = (a - (hi - v)) + (b - v);
    Dd { hi, lo }
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> Dd {
    // requires |a| >= |b|
    let hi = a + b;
    let lo = b - (hi - a);
    Dd { hi, lo }
}

#[inline]
fn split(a: f64) -> (f64, f64) {
    let t = SPLITTER * a;
    let hi = t - (t - a);
    (hi, a - hi)
}

/// Exact product of two doubles as a double-double.
#[inline]
pub fn two_prod(a: f64, b: f64) -> Dd {
    let p = a * b;
    let (ah, al) = split(a);
    let (bh, bl) = split(b);
    let err = ((ah * bh - p) + ah * bl + al * bh) + al * bl;
    Dd { hi: p, lo: err }
}

impl Dd {
    #[inline]
    pub const fn from_f64(x: f64) -> Self {
        Dd { hi: x, lo: 0.0 }
    }

    #[inline]
    pub fn value(self) -> f64 {
        self.hi + self.lo
    }

    #[inline]
    pub fn add(self, o: Dd) -> Dd {
        let s = two_sum(self.hi, o.hi);
        let lo = s.lo + self.lo + o.lo;
        quick_two_sum(s.hi, lo)
    }

    #[inline]
    pub fn add_f64(self, x: f64) -> Dd {
        let s = two_sum(self.hi, x);
        let lo = s.lo + self.lo;
        quick_two_sum(s.hi, lo)
    }

    #[inline]
    pub fn sub(self, o: Dd) -> Dd {
        self.add(Dd { hi: -o.hi, lo: -o.lo })
    }

    #[inline]
    pub fn mul(self, o: Dd) -> Dd {
        let p = two_prod(self.hi, o.hi);
        let lo = p.lo + self.hi * o.lo + self.lo * o.hi;
        quick_two_sum(p.hi, lo)
    }

    #[inline]
    pub fn mul_f64(self, x: f64) -> Dd {
        let p = two_prod(self.hi, x);
        let lo = p.lo + self.lo * x;
        quick_two_sum(p.hi, lo)
    }

    /// Quotient by a double, one Newton correction.
    #[inline]
    pub fn div_f64(self, x: f64) -> Dd {
        let q1 = self.hi / x;
        let r = self.sub(two_prod(q1, x));
        let q2 = (r.hi + r.lo) / x;
        quick_two_sum(q1, q2)
    }

    /// Reduce into `[0, 2π)`. Accurate while `|self| · 2⁻¹⁰⁴ ≪ target error`,
    /// i.e. for arguments up to ~10¹⁵ radians.
    pub fn rem_2pi(self) -> Dd {
        let n = (self.hi / TWO_PI.hi).round();
        let mut r = self.sub(TWO_PI.mul_f64(n));
        // One correction pass handles boundary rounding.
        if r.hi < 0.0 {
            r = r.add(TWO_PI);
        } else if r.hi >= TWO_PI.hi {
            r = r.sub(TWO_PI);
        }
        r
    }

    /// `e^{i·self}`: reduce mod 2π, then `sin_cos` of the compressed value.
    #[inline]
    pub fn cis(self) -> num_complex::Complex64 {
        let r = self.rem_2pi();
        let (s, c) = r.value().sin_cos();
        num_complex::Complex64::new(c, s)
    }
}
