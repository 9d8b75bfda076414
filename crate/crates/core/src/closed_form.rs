//! Exact results for a single ultra-short potential, the Dirac delta
//! potential and the rectangular barrier/well.
//!
//! An ultra-short potential has strength `V0` on `|x| < dx` and zero
//! elsewhere. Inside, the wavefunction is taken to be flat, which turns the
//! region into an energy-dependent derivative jump
//! `psi'(dx) - psi'(-dx) = -(2m/hbar^2)(E - V) 2dx psi(0)`.

use num_complex::Complex64;

use crate::error::{domain, Error, Result};
use crate::wavefunction::{Piece, PieceForm, PiecewiseWavefunction};

/// Mass, hbar, strength `V0 >= 0` and half-width `dx > 0` of one ultra-short
/// potential. Barrier and well operations apply the sign themselves.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UltraShortParams {
    pub mass: f64,
    pub hbar: f64,
    pub strength: f64,
    pub half_width: f64,
}

impl UltraShortParams {
    pub fn new(mass: f64, hbar: f64, strength: f64, half_width: f64) -> Result<Self> {
        let p = Self { mass, hbar, strength, half_width };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.half_width > 0.0) || !self.half_width.is_finite() {
            return domain(format!("half width must be positive, got {}", self.half_width));
        }
        if !(self.mass > 0.0) || !self.mass.is_finite() {
            return domain(format!("mass must be positive, got {}", self.mass));
        }
        if !(self.hbar > 0.0) || !self.hbar.is_finite() {
            return domain(format!("hbar must be positive, got {}", self.hbar));
        }
        if !(self.strength >= 0.0) || !self.strength.is_finite() {
            return domain(format!("strength must be non-negative, got {}", self.strength));
        }
        Ok(())
    }

    /// Area `2 V0 dx`, the matching Dirac delta strength.
    pub fn delta_strength(&self) -> f64 {
        2.0 * self.strength * self.half_width
    }

    /// Bound-state decay constant `sqrt(-2mE)/hbar` for `E < 0`.
    pub fn kappa(&self, energy: f64) -> f64 {
        (-2.0 * self.mass * energy).sqrt() / self.hbar
    }

    /// Incident wavenumber `sqrt(2mE)/hbar`.
    pub fn k_incident(&self, energy: f64) -> f64 {
        (2.0 * self.mass * energy).sqrt() / self.hbar
    }

    /// Wavenumber inside a rectangular barrier of height `V0`; imaginary
    /// below the barrier top.
    pub fn k_barrier_interior(&self, energy: f64) -> Complex64 {
        Complex64::new(2.0 * self.mass * (energy - self.strength), 0.0).sqrt() / self.hbar
    }

    /// Wavenumber inside a well of depth `V0`. Housed for completeness; the
    /// ultra-short well coefficients do not use it.
    pub fn k_well_interior(&self, energy: f64) -> Complex64 {
        Complex64::new(2.0 * self.mass * (self.strength + energy), 0.0).sqrt() / self.hbar
    }

    fn jump_coefficient(&self, energy: f64, signed_potential: f64) -> f64 {
        // m (E - V) 2dx / (hbar^2 k1)
        self.mass * (energy - signed_potential) * 2.0 * self.half_width
            / (self.hbar * self.hbar * self.k_incident(energy))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundEnergy {
    pub energy: f64,
    /// False when the strength is zero and nothing binds; `energy` is then 0.
    pub binds: bool,
}

/// Energy of the single bound state of the ultra-short well of depth `V0`.
///
/// The closed form `(sqrt(8dx^2 m V0 hbar^2 + hbar^4) - 4dx^2 m V0 - hbar^2)/(4dx^2 m)`
/// cancels catastrophically for narrow wells, so it is evaluated as
/// `-hbar^2 u^2 / (8 dx^2 m (1 + sqrt(1+u))^2)` with `u = 8 dx^2 m V0/hbar^2`,
/// which is algebraically identical.
pub fn bound_energy_ultrashort(p: &UltraShortParams) -> Result<BoundEnergy> {
    p.validate()?;
    if p.strength == 0.0 {
        return Ok(BoundEnergy { energy: 0.0, binds: false });
    }
    let dx2 = p.half_width * p.half_width;
    let h2 = p.hbar * p.hbar;
    let u = 8.0 * dx2 * p.mass * p.strength / h2;
    let s = 1.0 + (1.0 + u).sqrt();
    let energy = -h2 * u * u / (8.0 * dx2 * p.mass * s * s);
    Ok(BoundEnergy { energy, binds: true })
}

/// The even bound state: `A e^{kx}` left, flat `psi_c` inside, `B e^{-kx}`
/// right, with `A = B = e^{k dx}/sqrt(1/k + 2dx)`.
pub fn bound_wavefunction_ultrashort(p: &UltraShortParams) -> Result<PiecewiseWavefunction> {
    let bound = bound_energy_ultrashort(p)?;
    if !bound.binds {
        return Err(Error::NoBoundState("zero strength ultra-short well".into()));
    }
    let kappa = p.kappa(bound.energy);
    let dx = p.half_width;
    let amp = (kappa * dx).exp() / (1.0 / kappa + 2.0 * dx).sqrt();
    let center = amp * (-kappa * dx).exp();
    let zero = Complex64::new(0.0, 0.0);
    let c = |v: f64| Complex64::new(v, 0.0);
    PiecewiseWavefunction::new(
        vec![-dx, dx],
        vec![
            Piece::new(PieceForm::GrowingExp { kappa }, 0.0, c(amp), zero),
            Piece::new(PieceForm::Constant, 0.0, c(center), zero),
            Piece::new(PieceForm::DecayingExp { kappa }, 0.0, c(amp), zero),
        ],
        bound.energy,
    )
}

/// Bound state of `-k0 delta(x)`: `E = -m k0^2/(2hbar^2)`, `psi = sqrt(k) e^{-k|x|}`
/// with `k = m k0/hbar^2`.
pub fn dirac_delta_bound(mass: f64, hbar: f64, k0: f64) -> Result<(f64, PiecewiseWavefunction)> {
    if !(k0 > 0.0) || !k0.is_finite() {
        return domain(format!("delta strength must be positive, got {k0}"));
    }
    if !(mass > 0.0) || !(hbar > 0.0) {
        return domain("mass and hbar must be positive");
    }
    let energy = -mass * k0 * k0 / (2.0 * hbar * hbar);
    let kappa = mass * k0 / (hbar * hbar);
    let amp = Complex64::new(kappa.sqrt(), 0.0);
    let zero = Complex64::new(0.0, 0.0);
    let psi = PiecewiseWavefunction::new(
        vec![0.0],
        vec![
            Piece::new(PieceForm::GrowingExp { kappa }, 0.0, amp, zero),
            Piece::new(PieceForm::DecayingExp { kappa }, 0.0, amp, zero),
        ],
        energy,
    )?;
    Ok((energy, psi))
}

/// Transmission and reflection probabilities.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Scattering {
    pub transmission: f64,
    pub reflection: f64,
}

impl Scattering {
    fn from_jump(x: f64) -> Self {
        let x2 = x * x;
        Self { transmission: 1.0 / (1.0 + x2), reflection: x2 / (1.0 + x2) }
    }
}

fn check_scattering_energy(energy: f64) -> Result<()> {
    if !(energy > 0.0) || !energy.is_finite() {
        return domain(format!("scattering energy must be positive, got {energy}"));
    }
    Ok(())
}

/// Ultra-short barrier of height `V0`: `T = 1/(1 + (m(E-V0)2dx/(hbar^2 k1))^2)`.
/// Transmission is exactly one at `E = V0`.
pub fn transmission_barrier_ultrashort(p: &UltraShortParams, energy: f64) -> Result<Scattering> {
    p.validate()?;
    check_scattering_energy(energy)?;
    Ok(Scattering::from_jump(p.jump_coefficient(energy, p.strength)))
}

/// Ultra-short well of depth `V0` (Ramsauer scattering): the barrier result
/// with `V0 -> -V0`.
pub fn transmission_well_ultrashort(p: &UltraShortParams, energy: f64) -> Result<Scattering> {
    p.validate()?;
    check_scattering_energy(energy)?;
    Ok(Scattering::from_jump(p.jump_coefficient(energy, -p.strength)))
}

/// Peak well transmission `hbar^2/(hbar^2 + 8 dx^2 m V0)`, reached at `E = V0`.
pub fn ramsauer_peak(p: &UltraShortParams) -> Result<(f64, f64)> {
    p.validate()?;
    let h2 = p.hbar * p.hbar;
    let peak = h2 / (h2 + 8.0 * p.half_width * p.half_width * p.mass * p.strength);
    Ok((p.strength, peak))
}

/// Transmission through `V0 delta(x)`-like scatterer of signed strength `k0`:
/// `T = 1/(1 + m k0^2/(2 hbar^2 E))`.
pub fn dirac_delta_transmission(mass: f64, hbar: f64, k0: f64, energy: f64) -> Result<f64> {
    check_scattering_energy(energy)?;
    Ok(1.0 / (1.0 + mass * k0 * k0 / (2.0 * hbar * hbar * energy)))
}

/// Transmission through a rectangular step of signed height `v0` on
/// `|x| < half_width`.
///
/// Written as `T = 1/(1 + (m v0/hbar^2)^2 S/k1^2)` with `S = sin^2(2 k2 a)/k2^2`,
/// which is the textbook `[cos^2 + ((k1^2+k2^2)/(k1 k2))^2 sin^2/4]^-1`.
/// Below the top `S` uses `sinh`, and within `1e-8 v0` of the top a series
/// for `sinc^2` replaces the `0/0`.
pub fn transmission_rectangular(mass: f64, hbar: f64, v0: f64, half_width: f64, energy: f64) -> Result<f64> {
    check_scattering_energy(energy)?;
    if !(half_width > 0.0) {
        return domain(format!("half width must be positive, got {half_width}"));
    }
    if !(mass > 0.0) || !(hbar > 0.0) {
        return domain("mass and hbar must be positive");
    }
    let h2 = hbar * hbar;
    let width = 2.0 * half_width;
    // signed k2^2
    let g = 2.0 * mass * (energy - v0) / h2;
    let s = if (energy - v0).abs() < 1e-8 * v0.abs() {
        // sinc^2(x) = 1 - x^2/3 + 2x^4/45, x^2 = g w^2 (negative below the top)
        let x2 = g * width * width;
        width * width * (1.0 - x2 / 3.0 + 2.0 * x2 * x2 / 45.0)
    } else if g > 0.0 {
        let k2 = g.sqrt();
        (k2 * width).sin().powi(2) / g
    } else {
        let q = (-g).sqrt();
        (q * width).sinh().powi(2) / (-g)
    };
    let k1_sq = 2.0 * mass * energy / h2;
    let c = mass * v0 / h2;
    Ok(1.0 / (1.0 + c * c * s / k1_sq))
}
