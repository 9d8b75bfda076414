//! Adaptive composite Simpson quadrature for real and complex integrands.

use num_complex::Complex64;
use std::ops::{Add, Mul, Sub};

use crate::error::{Error, Result};

const MAX_DEPTH: u32 = 48;

pub trait Integrand: Copy + Add<Output = Self> + Sub<Output = Self> + Mul<f64, Output = Self> {
    fn zero() -> Self;
    fn magnitude(self) -> f64;
}

impl Integrand for f64 {
    fn zero() -> Self {
        0.0
    }
    fn magnitude(self) -> f64 {
        self.abs()
    }
}

impl Integrand for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn magnitude(self) -> f64 {
        self.norm()
    }
}

/// Result of an adaptive integration: value plus the accumulated Richardson
/// error estimate.
#[derive(Debug, Clone, Copy)]
pub struct Quadrature<T> {
    pub value: T,
    pub error: f64,
    pub converged: bool,
}

/// Integrates `f` over `[a, b]` to absolute tolerance `tol`.
///
/// Subintervals that reach the depth limit are accepted with their local
/// estimate and the result is flagged as not converged.
pub fn simpson<T, F>(f: F, a: f64, b: f64, tol: f64) -> Quadrature<T>
where
    T: Integrand,
    F: Fn(f64) -> T,
{
    if a == b {
        return Quadrature { value: T::zero(), error: 0.0, converged: true };
    }
    // Seed with a few panels so that narrow features are not skipped entirely.
    const PANELS: usize = 8;
    let h = (b - a) / PANELS as f64;
    let mut value = T::zero();
    let mut error = 0.0;
    let mut converged = true;
    for i in 0..PANELS {
        let lo = a + h * i as f64;
        let hi = if i + 1 == PANELS { b } else { lo + h };
        let fa = f(lo);
        let fm = f(0.5 * (lo + hi));
        let fb = f(hi);
        let whole = (fa + fm * 4.0 + fb) * ((hi - lo) / 6.0);
        let mut state = State { f: &f, error: 0.0, converged: true };
        value = value + state.recurse(lo, hi, fa, fm, fb, whole, tol / PANELS as f64, 0);
        error += state.error;
        converged &= state.converged;
    }
    Quadrature { value, error, converged }
}

/// Like [`simpson`] but fails with [`Error::Accuracy`] when the depth limit
/// was hit.
pub fn simpson_checked<T, F>(f: F, a: f64, b: f64, tol: f64, what: &str) -> Result<T>
where
    T: Integrand,
    F: Fn(f64) -> T,
{
    let q = simpson(f, a, b, tol);
    if q.converged {
        Ok(q.value)
    } else {
        Err(Error::Accuracy { what: what.to_string(), achieved: q.error })
    }
}

struct State<'a, F> {
    f: &'a F,
    error: f64,
    converged: bool,
}

impl<F> State<'_, F> {
    #[allow(clippy::too_many_arguments)]
    fn recurse<T>(&mut self, a: f64, b: f64, fa: T, fm: T, fb: T, whole: T, tol: f64, depth: u32) -> T
    where
        T: Integrand,
        F: Fn(f64) -> T,
    {
        let m = 0.5 * (a + b);
        let lm = 0.5 * (a + m);
        let rm = 0.5 * (m + b);
        let flm = (self.f)(lm);
        let frm = (self.f)(rm);
        let left = (fa + flm * 4.0 + fm) * ((m - a) / 6.0);
        let right = (fm + frm * 4.0 + fb) * ((b - m) / 6.0);
        let delta = left + right - whole;
        let err = delta.magnitude() / 15.0;
        let roundoff = 64.0 * f64::EPSILON * (left + right).magnitude();
        if err <= tol.max(roundoff) || depth >= MAX_DEPTH || (m - a) <= f64::EPSILON * m.abs().max(1.0) {
            if err > tol.max(roundoff) {
                self.converged = false;
            }
            self.error += err;
            return left + right + delta * (1.0 / 15.0);
        }
        self.recurse(a, m, fa, flm, fm, left, 0.5 * tol, depth + 1)
            + self.recurse(m, b, fm, frm, fb, right, 0.5 * tol, depth + 1)
    }
}

/// Integrates over consecutive intervals `points[i]..points[i+1]`, splitting
/// the tolerance evenly.
pub fn simpson_piecewise<T, F>(f: F, points: &[f64], tol: f64) -> Quadrature<T>
where
    T: Integrand,
    F: Fn(f64) -> T,
{
    let mut value = T::zero();
    let mut error = 0.0;
    let mut converged = true;
    let pieces = points.len().saturating_sub(1).max(1) as f64;
    for w in points.windows(2) {
        let q = simpson(&f, w[0], w[1], tol / pieces);
        value = value + q.value;
        error += q.error;
        converged &= q.converged;
    }
    Quadrature { value, error, converged }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn polynomial_is_exact() {
        let q = simpson(|x: f64| x * x * x - 2.0 * x, 0.0, 2.0, 1e-12);
        assert_abs_diff_eq!(q.value, 0.0, epsilon = 1e-12);
        assert!(q.converged);
    }

    #[test]
    fn gaussian_integral() {
        let q = simpson(|x: f64| (-x * x).exp(), -10.0, 10.0, 1e-12);
        assert_abs_diff_eq!(q.value, std::f64::consts::PI.sqrt(), epsilon = 1e-11);
    }

    #[test]
    fn complex_oscillatory() {
        // int_0^pi e^{ix} dx = 2i
        let q = simpson(|x: f64| Complex64::new(0.0, x).exp(), 0.0, std::f64::consts::PI, 1e-12);
        assert_abs_diff_eq!(q.value.re, 0.0, epsilon = 1e-11);
        assert_abs_diff_eq!(q.value.im, 2.0, epsilon = 1e-11);
    }

    #[test]
    fn kink_split() {
        let q = simpson_piecewise(|x: f64| (-x.abs()).exp(), &[-20.0, 0.0, 20.0], 1e-12);
        assert_abs_diff_eq!(q.value, 2.0 * (1.0 - (-20.0f64).exp()), epsilon = 1e-11);
        assert!(q.converged);
    }
}
