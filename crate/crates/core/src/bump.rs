//! The fixed Schwartz bump `φ` and its tabulated Fourier pair.
//!
//! Construction: start from `ψ(ξ) = c · exp(−1/(1 − 16ξ²))` supported on
//! `|ξ| < 1/4`, with `c` normalizing `(2π)⁻¹ ∫ψ = 1`. Then
//!
//! * `φ = |ψ̌|²` — nonnegative, even, `φ(0) = 1`;
//! * `φ̂ = (2π)⁻¹ ψ * ψ(−·)` — nonnegative, supported in `[−1/2, 1/2]`.
//!
//! Both are tabulated once (`φ` on `[−X, X]`, `φ̂` on `[−1, 1]`) and read
//! through cubic interpolation afterwards; the evolution oracle evaluates
//! them millions of times. The tail beyond `X = 64` is below 1e−8 and is
//! treated as zero.
//!
//! Any smooth compactly supported seed would do; nothing downstream depends
//! on the particular shape, only on the recorded invariants.

use serde::Serialize;

use crate::audit::BUMP_TAIL_BOUND;
use crate::quad::{gauss_legendre, gl_integrate};
use crate::{Error, Result};

pub mod cache;

/// Seed bump `exp(−1/(1−16ξ²))` on `|ξ| < 1/4`, not yet normalized.
fn seed_raw(xi: f64) -> f64 {
    let u = 4.0 * xi;
    let d = 1.0 - u * u;
    if d <= 0.0 {
        0.0
    } else {
        (-1.0 / d).exp()
    }
}

/// Tabulated `φ`, `φ̂` with norms and interpolation.
#[derive(Debug, Clone, PartialEq)]
pub struct BumpProfile {
    /// Samples of `φ` per unit length.
    pub resolution: u32,
    /// `φ` is tabulated on `[−x_range, x_range]`.
    pub x_range: f64,
    /// `φ` samples, uniform grid, length `2·x_range·resolution + 1`.
    pub phi: Vec<f64>,
    /// `φ̂` samples on `[−1, 1]`, uniform grid (16× finer per unit).
    pub phi_hat: Vec<f64>,
    /// `‖φ‖_{L²(ℝ)}`.
    pub phi_l2: f64,
    /// `‖φ̂‖_{L¹}` (φ̂ ≥ 0, so equal to `∫φ̂ = 2π`).
    pub phi_hat_l1: f64,
    pub phi_hat_l2: f64,
}

/// Diagnostics recorded while building the profile.
#[derive(Debug, Clone, Serialize)]
pub struct BumpReport {
    pub resolution: u32,
    pub x_range: f64,
    pub phi_at_zero: f64,
    pub inversion_residual: f64,
    pub plancherel_residual: f64,
    pub tail_max: f64,
    pub phi_l2: f64,
    pub phi_hat_l1: f64,
}

const PHI_HAT_REFINE: u32 = 16;

/// Build the profile at `resolution` samples per unit (≥ 256), range X = 64.
pub fn build_bump(resolution: u32) -> Result<BumpProfile> {
    build_bump_with_range(resolution, 64.0)
}

pub fn build_bump_with_range(resolution: u32, x_range: f64) -> Result<BumpProfile> {
    if resolution < 256 {
        return Err(Error::invalid("bump resolution must be >= 256"));
    }
    if !(4.0..=1024.0).contains(&x_range) {
        return Err(Error::invalid("bump range must lie in [4, 1024]"));
    }
    let (gl_n, gl_w) = gauss_legendre(128);

    // normalize: (2π)⁻¹ ∫ψ = 1
    let raw_mass = gl_integrate(seed_raw, -0.25, 0.25, &gl_n, &gl_w);
    if raw_mass < 1e-3 {
        return Err(Error::invalid("degenerate seed normalization integral"));
    }
    let c = std::f64::consts::TAU / raw_mass;
    let psi = move |xi: f64| c * seed_raw(xi);

    // ψ̌(x) = (2π)⁻¹ ∫ ψ(ξ) cos(xξ) dξ  (ψ even ⇒ ψ̌ real even)
    let psi_check = |x: f64| {
        gl_integrate(|xi| psi(xi) * (x * xi).cos(), -0.25, 0.25, &gl_n, &gl_w)
            / std::f64::consts::TAU
    };

    // φ on [−X, X]: compute x ≥ 0, mirror.
    let half = (x_range * resolution as f64).round() as usize;
    let n_phi = 2 * half + 1;
    let h = x_range / half as f64;
    let mut phi = vec![0.0; n_phi];
    for i in 0..=half {
        let v = psi_check(i as f64 * h);
        let v2 = v * v;
        phi[half + i] = v2;
        phi[half - i] = v2;
    }

    // φ̂ = (2π)⁻¹ (ψ ⋆ ψ)(ξ), autocorrelation over the support overlap.
    let half_hat = (PHI_HAT_REFINE * resolution) as usize;
    let n_hat = 2 * half_hat + 1;
    let h_hat = 1.0 / half_hat as f64;
    let mut phi_hat = vec![0.0; n_hat];
    for i in 0..=half_hat {
        let xi = i as f64 * h_hat;
        let lo = (-0.25f64).max(xi - 0.25);
        let hi = 0.25f64.min(xi + 0.25);
        let v = if lo < hi {
            gl_integrate(|u| psi(u) * psi(u - xi), lo, hi, &gl_n, &gl_w) / std::f64::consts::TAU
        } else {
            0.0
        };
        phi_hat[half_hat + i] = v;
        phi_hat[half_hat - i] = v;
    }

    // norms on the grids (Simpson; tails are ≤ 1e−8 and ignored)
    let phi_l2 = simpson_norm(&phi, h, |v| v * v).sqrt();
    let phi_hat_l1 = simpson_norm(&phi_hat, h_hat, |v| v.abs());
    let phi_hat_l2 = simpson_norm(&phi_hat, h_hat, |v| v * v).sqrt();

    let profile = BumpProfile {
        resolution,
        x_range,
        phi,
        phi_hat,
        phi_l2,
        phi_hat_l1,
        phi_hat_l2,
    };
    let report = profile.report();
    if (report.phi_at_zero - 1.0).abs() > 1e-6 {
        return Err(Error::invalid(format!(
            "bump build lost normalization: phi(0) = {}",
            report.phi_at_zero
        )));
    }
    if report.inversion_residual > 1e-6 {
        return Err(Error::invalid(format!(
            "bump inversion residual {} too large",
            report.inversion_residual
        )));
    }
    if report.tail_max > BUMP_TAIL_BOUND {
        return Err(Error::invalid(format!(
            "bump tail {} exceeds the recorded bound",
            report.tail_max
        )));
    }
    Ok(profile)
}

fn simpson_norm(samples: &[f64], h: f64, f: impl Fn(f64) -> f64) -> f64 {
    let n = samples.len();
    let mut acc = f(samples[0]) + f(samples[n - 1]);
    for (i, &s) in samples.iter().enumerate().take(n - 1).skip(1) {
        acc += f(s) * if i % 2 == 1 { 4.0 } else { 2.0 };
    }
    acc * h / 3.0
}

impl BumpProfile {
    /// `φ(x)` by cubic interpolation; 0 beyond the tabulated range.
    pub fn phi(&self, x: f64) -> f64 {
        let half = (self.phi.len() - 1) / 2;
        let h = self.x_range / half as f64;
        cubic_interp(&self.phi, half as f64 + x / h)
    }

    /// `φ̂(ξ)` by cubic interpolation; exactly 0 outside `[−1, 1]`.
    pub fn phi_hat(&self, xi: f64) -> f64 {
        if xi.abs() >= 1.0 {
            return 0.0;
        }
        let half = (self.phi_hat.len() - 1) / 2;
        cubic_interp(&self.phi_hat, half as f64 + xi * half as f64)
    }

    pub fn report(&self) -> BumpReport {
        let (gl_n, gl_w) = gauss_legendre(96);
        // Fourier-inversion consistency at a few generic points:
        // (2π)⁻¹ ∫ φ̂(ξ) cos(xξ) dξ  must reproduce the φ table.
        let mut inversion_residual = 0.0f64;
        for &x in &[0.0, 0.31, 1.7, 4.11] {
            let inv = gl_integrate(|xi| self.phi_hat(xi) * (x * xi).cos(), -1.0, 1.0, &gl_n, &gl_w)
                / std::f64::consts::TAU;
            inversion_residual = inversion_residual.max((inv - self.phi(x)).abs());
        }
        let plancherel = {
            let lhs = self.phi_l2 * self.phi_l2;
            let rhs = self.phi_hat_l2 * self.phi_hat_l2 / std::f64::consts::TAU;
            (lhs - rhs).abs() / rhs
        };
        let half = (self.phi.len() - 1) / 2;
        let h = self.x_range / half as f64;
        let boundary = ((self.x_range - 1.0) / h) as usize;
        let tail_max = self.phi[half + boundary..]
            .iter()
            .fold(0.0f64, |m, &v| m.max(v.abs()));
        BumpReport {
            resolution: self.resolution,
            x_range: self.x_range,
            phi_at_zero: self.phi(0.0),
            inversion_residual,
            plancherel_residual: plancherel,
            tail_max,
            phi_l2: self.phi_l2,
            phi_hat_l1: self.phi_hat_l1,
        }
    }

    /// Largest grid-resolved `δ₀ < 1/2` with `min_{|y|≤δ₀} φ(y) ≥ 1 − c₀/2`.
    /// Returns 0.0 when even the first grid step fails (broken profile).
    pub fn delta0_for(&self, c0: f64) -> f64 {
        assert!(c0 > 0.0 && c0 < 0.5, "c0 must lie in (0, 1/2)");
        let floor = 1.0 - c0 / 2.0;
        let half = (self.phi.len() - 1) / 2;
        let h = self.x_range / half as f64;
        let mut best = 0.0;
        let mut i = 1usize;
        while (i as f64) * h < 0.5 {
            if self.phi[half + i] < floor || self.phi[half - i] < floor {
                return best;
            }
            best = i as f64 * h;
            i += 1;
        }
        best
    }

    #[cfg(test)]
    pub(crate) fn constant_mock(resolution: u32) -> BumpProfile {
        let half = (resolution as usize) * 4;
        BumpProfile {
            resolution,
            x_range: 4.0,
            phi: vec![1.0; 2 * half + 1],
            phi_hat: vec![1.0; 2 * half + 1],
            phi_l2: 1.0,
            phi_hat_l1: 1.0,
            phi_hat_l2: 1.0,
        }
    }
}

/// Keys cubic-convolution interpolation (a = −1/2) at fractional index `t`
/// into `samples`; zero outside.
fn cubic_interp(samples: &[f64], t: f64) -> f64 {
    if !(0.0..=(samples.len() - 1) as f64).contains(&t) {
        return 0.0;
    }
    let i = (t.floor() as usize).min(samples.len() - 2);
    let f = t - i as f64;
    let p1 = samples[i];
    let p2 = samples[i + 1];
    let p0 = if i > 0 { samples[i - 1] } else { 2.0 * p1 - p2 };
    let p3 = if i + 2 < samples.len() {
        samples[i + 2]
    } else {
        2.0 * p2 - p1
    };
    0.5 * (2.0 * p1
        + (-p0 + p2) * f
        + (2.0 * p0 - 5.0 * p1 + 4.0 * p2 - p3) * f * f
        + (-p0 + 3.0 * p1 - 3.0 * p2 + p3) * f * f * f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::sync::OnceLock;

    pub(crate) fn shared_profile() -> &'static BumpProfile {
        static P: OnceLock<BumpProfile> = OnceLock::new();
        P.get_or_init(|| build_bump(512).unwrap())
    }

    #[test]
    fn phi_at_zero_is_one() {
        let p = shared_profile();
        assert!((p.phi(0.0) - 1.0).abs() < 1e-6);
    }

    #[test]
    fn phi_hat_vanishes_outside_support() {
        let p = shared_profile();
        assert_eq!(p.phi_hat(1.5), 0.0);
        assert_eq!(p.phi_hat(-1.0), 0.0);
        // actual support is [-1/2, 1/2]
        assert!(p.phi_hat(0.73).abs() < 1e-14);
    }

    #[test]
    fn phi_is_even_and_nonnegative() {
        let p = shared_profile();
        for i in 0..200 {
            let x = i as f64 * 0.31;
            assert!((p.phi(x) - p.phi(-x)).abs() < 1e-12);
            assert!(p.phi(x) >= -1e-10);
        }
    }

    #[test]
    fn mass_of_phi_hat_is_2pi() {
        let p = shared_profile();
        assert!(
            (p.phi_hat_l1 - std::f64::consts::TAU).abs() < 1e-6 * std::f64::consts::TAU,
            "‖φ̂‖₁ = {}",
            p.phi_hat_l1
        );
    }

    #[test]
    fn plancherel_on_the_grid() {
        let p = shared_profile();
        assert!(p.report().plancherel_residual < 1e-4);
    }

    #[test]
    fn inversion_consistency() {
        let p = shared_profile();
        assert!(p.report().inversion_residual < 1e-6);
    }

    #[test]
    fn tail_is_negligible() {
        let p = shared_profile();
        assert!(p.report().tail_max < BUMP_TAIL_BOUND);
    }

    #[test]
    fn delta0_monotone_in_c0() {
        let p = shared_profile();
        let mut last = 0.0;
        for c0 in [0.01, 0.05, 0.1, 0.2, 0.4] {
            let d = p.delta0_for(c0);
            assert!(d >= last, "delta0 not monotone at c0={c0}");
            last = d;
        }
        assert!(p.delta0_for(0.1) > 0.0);
    }

    #[test]
    fn delta0_on_constant_mock_reaches_half() {
        let mock = BumpProfile::constant_mock(512);
        let d = mock.delta0_for(0.3);
        assert!(d > 0.5 - 2.0 / 512.0 && d < 0.5);
    }

    #[test]
    fn interpolation_matches_direct_quadrature() {
        let p = shared_profile();
        let (gl_n, gl_w) = gauss_legendre(128);
        let raw_mass = gl_integrate(seed_raw, -0.25, 0.25, &gl_n, &gl_w);
        let c = std::f64::consts::TAU / raw_mass;
        for &x in &[0.123, 1.618, 3.721] {
            let pc = gl_integrate(|xi| c * seed_raw(xi) * (x * xi).cos(), -0.25, 0.25, &gl_n, &gl_w)
                / std::f64::consts::TAU;
            assert!((p.phi(x) - pc * pc).abs() < 1e-8, "x={x}");
        }
    }
}
