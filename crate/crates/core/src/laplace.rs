//! Laplace-domain propagator of a single ultra-short potential between free
//! asymptotes, and the transformed wavefunction of an initial packet.

use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{domain, Error, Result};
use crate::quad;

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Parameters of the Laplace-domain problem: a junction of half-width
/// `half_width` centred at the origin carrying the signed potential `v0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LaplaceQuery {
    pub mass: f64,
    pub hbar: f64,
    pub v0: f64,
    pub half_width: f64,
}

impl LaplaceQuery {
    pub fn new(mass: f64, hbar: f64, v0: f64, half_width: f64) -> Result<Self> {
        if !(mass > 0.0) || !(hbar > 0.0) {
            return domain(format!("mass and hbar must be positive, got {mass}, {hbar}"));
        }
        if !(half_width >= 0.0) || !half_width.is_finite() || !v0.is_finite() {
            return domain(format!("need finite v0 and half_width >= 0, got {v0}, {half_width}"));
        }
        Ok(Self { mass, hbar, v0, half_width })
    }

    /// Decaying-branch wavenumber `q = sqrt(2 m i s / ħ)`, `Im q > 0`.
    pub fn wavenumber(&self, s: Complex64) -> Result<Complex64> {
        if !(s.re > 0.0) {
            return domain(format!("Re(s) must be positive, got s = {s}"));
        }
        Ok((I * s * (2.0 * self.mass / self.hbar)).sqrt())
    }

    fn prefactor(&self) -> Complex64 {
        // -m / (i ħ²)
        Complex64::new(0.0, self.mass / (self.hbar * self.hbar))
    }

    /// Free-particle Green's function `G0(x, s | x0)`.
    pub fn free_green(&self, x: f64, s: Complex64, x0: f64) -> Result<Complex64> {
        let q = self.wavenumber(s)?;
        Ok(self.prefactor() / q * (I * q * (x - x0).abs()).exp())
    }

    /// Junction denominator `D(s)`.
    pub fn denominator(&self, s: Complex64) -> Result<Complex64> {
        let q = self.wavenumber(s)?;
        let coupling = I * self.hbar * s - self.v0;
        let dx = self.half_width;
        Ok(1.0 - self.prefactor() * coupling * (2.0 * dx) / q * (-I * q * dx).exp())
    }

    /// Dressed Green's function `G1(x, s | x0)`.
    pub fn dressed_green(&self, x: f64, s: Complex64, x0: f64) -> Result<Complex64> {
        let q = self.wavenumber(s)?;
        let d = self.denominator(s)?;
        if d.norm() < 1e-12 {
            return Err(Error::PoleProximity { s, magnitude: d.norm() });
        }
        let coupling = I * self.hbar * s - self.v0;
        let dx = self.half_width;
        let g = self.prefactor() / q;
        let correction = coupling * (2.0 * dx) * g * g * (I * q * (x.abs() + x0.abs() - dx)).exp() / d;
        Ok(g * (I * q * (x - x0).abs()).exp() + correction)
    }
}

pub type PacketSampler = Arc<dyn Fn(f64) -> Complex64 + Send + Sync>;

/// Initial wavefunction `ψ(x, 0)` with a finite support window.
#[derive(Clone)]
pub struct InitialPacket {
    sampler: PacketSampler,
    pub window: (f64, f64),
}

impl fmt::Debug for InitialPacket {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("InitialPacket").field("window", &self.window).finish()
    }
}

impl InitialPacket {
    /// Validates that the packet is normalized to 1e-8 and negligible at the
    /// window edges.
    pub fn new(sampler: PacketSampler, window: (f64, f64)) -> Result<Self> {
        let (a, b) = window;
        if !(a < b) {
            return domain(format!("packet window must satisfy a < b, got ({a}, {b})"));
        }
        let packet = Self { sampler, window };
        let norm = quad::simpson(|x| packet.eval(x).norm_sqr(), a, b, 1e-12).value;
        if (norm - 1.0).abs() > 1e-8 {
            return Err(Error::Domain(format!("packet is not normalized: integral of |psi|^2 = {norm}")));
        }
        if packet.eval(a).norm() > 1e-12 || packet.eval(b).norm() > 1e-12 {
            return domain("packet amplitude at the window edges exceeds 1e-12");
        }
        Ok(packet)
    }

    /// `(2πσ²)^(-1/4) exp(-(x-c)²/(4σ²) + i k0 (x-c))`, windowed to `c ± 12σ`.
    pub fn gaussian(center: f64, sigma: f64, k0: f64) -> Result<Self> {
        if !(sigma > 0.0) {
            return domain(format!("packet width must be positive, got {sigma}"));
        }
        let norm = (2.0 * PI * sigma * sigma).powf(-0.25);
        let sampler = Arc::new(move |x: f64| {
            let u = x - center;
            Complex64::new(-u * u / (4.0 * sigma * sigma), k0 * u).exp() * norm
        });
        Self::new(sampler, (center - 12.0 * sigma, center + 12.0 * sigma))
    }

    pub fn eval(&self, x: f64) -> Complex64 {
        (self.sampler)(x)
    }

    /// `α ψ1 + β ψ2` on the union of the windows, without renormalization.
    pub fn combine(alpha: Complex64, a: &Self, beta: Complex64, b: &Self) -> Self {
        let (fa, fb) = (a.sampler.clone(), b.sampler.clone());
        Self {
            sampler: Arc::new(move |x| alpha * fa(x) + beta * fb(x)),
            window: (a.window.0.min(b.window.0), a.window.1.max(b.window.1)),
        }
    }
}

/// Absolute tolerance of the `x0` quadrature in [`psi_laplace`].
pub const PSI_TOLERANCE: f64 = 1e-10;

/// Transformed wavefunction `ψ(x, s) = -iħ ∫ G1(x, s | x0) ψ(x0, 0) dx0`.
pub fn psi_laplace(x: f64, s: Complex64, packet: &InitialPacket, q: &LaplaceQuery) -> Result<Complex64> {
    q.dressed_green(x, s, 0.0)?;
    let (a, b) = packet.window;
    let mut points = vec![a, b];
    points.extend([x, 0.0].into_iter().filter(|&p| p > a && p < b));
    points.sort_by(f64::total_cmp);
    let integrand = |x0: f64| q.dressed_green(x, s, x0).unwrap_or(Complex64::new(f64::NAN, 0.0)) * packet.eval(x0);
    let result = quad::simpson_piecewise(integrand, &points, PSI_TOLERANCE);
    if !result.converged || !result.value.re.is_finite() || !result.value.im.is_finite() {
        return Err(Error::Accuracy { what: format!("psi(x = {x}, s = {s}) quadrature"), achieved: result.error });
    }
    Ok(-I * q.hbar * result.value)
}

/// Numerical inverse Laplace transform by Euler-accelerated Fourier series
/// (Abate and Whitt), with discretization error about `e^-18.4`.
pub fn invert_laplace<F>(transform: F, t: f64) -> Result<Complex64>
where
    F: Fn(Complex64) -> Result<Complex64>,
{
    const A: f64 = 18.4;
    const TERMS: usize = 15;
    const EULER: usize = 11;
    if !(t > 0.0) {
        return domain(format!("inverse Laplace needs t > 0, got {t}"));
    }
    let a = A / (2.0 * t);
    let h = PI / t;
    let mut partial = Vec::with_capacity(TERMS + EULER + 1);
    let mut sum = 0.5 * transform(Complex64::new(a, 0.0))?;
    for k in 1..=TERMS + EULER {
        let term = transform(Complex64::new(a, k as f64 * h))? + transform(Complex64::new(a, -(k as f64) * h))?;
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        sum += 0.5 * sign * term;
        if k >= TERMS {
            partial.push(sum);
        }
    }
    let mut acc = Complex64::new(0.0, 0.0);
    let mut binom = 1.0;
    for (j, p) in partial.iter().enumerate() {
        if j > 0 {
            binom *= (EULER - j + 1) as f64 / j as f64;
        }
        acc += binom * p;
    }
    acc /= 2f64.powi(EULER as i32);
    Ok(acc * (A / 2.0).exp() / t)
}

/// `ψ(x, t)` by numerical inversion of [`psi_laplace`].
pub fn psi_time(x: f64, t: f64, packet: &InitialPacket, q: &LaplaceQuery) -> Result<Complex64> {
    invert_laplace(|s| psi_laplace(x, s, packet, q), t)
}
