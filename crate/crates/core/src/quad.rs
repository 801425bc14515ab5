//! Quadrature: Gauss–Legendre rules and adaptive Simpson for complex
//! integrands, with a hard oscillation gate.
//!
//! The gate exists because a silently under-resolved oscillatory integral
//! looks like a perfectly plausible small number. Callers state how many
//! radians per unit length their integrand can swing; if the initial panel
//! count cannot resolve that, the evaluation refuses with a sizing
//! diagnostic instead of returning garbage.

use num_complex::Complex64;

use crate::audit::OSCILLATION_BUDGET_DIVISOR;
use crate::{Error, Result};

/// Nodes and weights of the `n`-point Gauss–Legendre rule on `[-1, 1]`,
/// by Newton iteration on the Legendre recurrence.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 2);
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let m = n.div_ceil(2);
    for i in 0..m {
        // Chebyshev-flavored initial guess
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

/// `(P_n(x), P_n'(x))` via the three-term recurrence.
fn legendre(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for j in 2..=n {
        let pj = ((2 * j - 1) as f64 * x * p1 - (j - 1) as f64 * p0) / j as f64;
        p0 = p1;
        p1 = pj;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Integrate `f` over `[a, b]` with the `n`-point GL rule.
pub fn gl_integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, nodes: &[f64], weights: &[f64]) -> f64 {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let mut acc = 0.0;
    for (&x, &w) in nodes.iter().zip(weights) {
        acc += w * f(c + h * x);
    }
    acc * h
}

/// Adaptive Simpson for complex integrands.
///
/// `initial_panels` sets the coarse subdivision (the oscillation gate is
/// enforced against it); each panel is then refined until the Richardson
/// error estimate drops below `tol` (distributed per panel) or `max_depth`
/// splits have happened.
pub struct AdaptiveSimpson {
    pub initial_panels: usize,
    pub tol: f64,
    pub max_depth: u32,
}

impl AdaptiveSimpson {
    pub fn integrate<F: Fn(f64) -> Complex64>(&self, f: &F, a: f64, b: f64) -> Complex64 {
        let panels = self.initial_panels.max(1);
        let h = (b - a) / panels as f64;
        let tol_per = self.tol / panels as f64;
        let mut acc = Complex64::new(0.0, 0.0);
        for i in 0..panels {
            let pa = a + i as f64 * h;
            let pb = pa + h;
            let fa = f(pa);
            let fm = f(0.5 * (pa + pb));
            let fb = f(pb);
            let whole = simpson(fa, fm, fb, h);
            acc += self.refine(f, pa, pb, fa, fm, fb, whole, tol_per, self.max_depth);
        }
        acc
    }

    #[allow(clippy::too_many_arguments)]
    fn refine<F: Fn(f64) -> Complex64>(
        &self,
        f: &F,
        a: f64,
        b: f64,
        fa: Complex64,
        fm: Complex64,
        fb: Complex64,
        whole: Complex64,
        tol: f64,
        depth: u32,
    ) -> Complex64 {
        let m = 0.5 * (a + b);
        let lm = f(0.5 * (a + m));
        let rm = f(0.5 * (m + b));
        let h2 = 0.5 * (b - a);
        let left = simpson(fa, lm, fm, h2);
        let right = simpson(fm, rm, fb, h2);
        let err = (left + right - whole).norm();
        if depth == 0 || err < 15.0 * tol {
            return left + right + (left + right - whole) / 15.0;
        }
        self.refine(f, a, m, fa, lm, fm, left, tol * 0.5, depth - 1)
            + self.refine(f, m, b, fm, rm, fb, right, tol * 0.5, depth - 1)
    }
}

#[inline]
fn simpson(fa: Complex64, fm: Complex64, fb: Complex64, h: f64) -> Complex64 {
    (fa + fm * 4.0 + fb) * (h / 6.0)
}

/// Refuse when `oscillation` (radians per unit length) exceeds what
/// `quad_order` initial panels can resolve.
pub fn oscillation_gate(oscillation: f64, quad_order: usize, what: &str) -> Result<()> {
    let cap = quad_order as f64 / OSCILLATION_BUDGET_DIVISOR;
    if !oscillation.is_finite() || oscillation > cap {
        return Err(Error::Resolution(format!(
            "{what}: phase swings {oscillation:.3e} rad/unit but quad_order {quad_order} resolves only {cap:.3e}; raise quad_order or shrink the parameters"
        )));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gl_exact_on_polynomials() {
        let (n, w) = gauss_legendre(8);
        // degree-15 polynomial integrated exactly
        let val = gl_integrate(|x| x.powi(14) + 3.0 * x.powi(7), -1.0, 1.0, &n, &w);
        assert!((val - 2.0 / 15.0).abs() < 1e-13);
    }

    #[test]
    fn gl_oscillatory() {
        let (n, w) = gauss_legendre(64);
        let val = gl_integrate(|x| (20.0 * x).cos(), -1.0, 1.0, &n, &w);
        let exact = 2.0 * (20.0f64).sin() / 20.0;
        assert!((val - exact).abs() < 1e-12);
    }

    #[test]
    fn simpson_converges_on_oscillatory_complex() {
        let rule = AdaptiveSimpson {
            initial_panels: 64,
            tol: 1e-12,
            max_depth: 20,
        };
        let val = rule.integrate(&|x| Complex64::new(0.0, 35.0 * x).exp(), 0.0, 1.0);
        let exact = (Complex64::new(0.0, 35.0).exp() - Complex64::new(1.0, 0.0))
            / Complex64::new(0.0, 35.0);
        assert!((val - exact).norm() < 1e-9, "err {}", (val - exact).norm());
    }

    #[test]
    fn gate_refuses_underresolved() {
        assert!(oscillation_gate(100.0, 256, "test").is_ok());
        assert!(oscillation_gate(100.0, 64, "test").is_err());
    }
}
