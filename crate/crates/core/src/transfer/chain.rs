use num_complex::Complex64;
use rayon::prelude::*;

use super::matrix::{ScaledTransfer, TransferMatrix2};
use crate::error::{Error, Result};
use crate::profile::SegmentedProfile;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WaveCase {
    /// `E > V`: `e^{+iku}`, `e^{-iku}`.
    Oscillatory,
    /// `E < V`: `e^{+κu}`, `e^{-κu}`.
    Evanescent,
    /// `E = V` within the case band: `1`, `u`.
    Linear,
}

/// Solution type of one wave region at a given energy.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegionWave {
    pub region: usize,
    pub case: WaveCase,
    /// `k` for oscillatory regions, `κ` for evanescent ones, 0 for linear.
    pub wavenumber: f64,
}

impl RegionWave {
    pub fn classify(seg: &SegmentedProfile, region: usize, energy: f64) -> Result<Self> {
        let v = seg.potentials[region];
        let m = seg.masses[region];
        let hbar = seg.hbar;
        if !energy.is_finite() {
            return Err(Error::CaseSelection { region, energy });
        }
        let length = seg.span().max(2.0 * seg.half_width);
        let band = 1e-9 * energy.abs().max(v.abs()).max(hbar * hbar / (2.0 * m * length * length));
        let diff = energy - v;
        let (case, wavenumber) = if diff.abs() <= band {
            (WaveCase::Linear, 0.0)
        } else if diff > 0.0 {
            (WaveCase::Oscillatory, (2.0 * m * diff).sqrt() / hbar)
        } else {
            (WaveCase::Evanescent, (-2.0 * m * diff).sqrt() / hbar)
        };
        if case != WaveCase::Linear && !(wavenumber > 0.0 && wavenumber.is_finite()) {
            return Err(Error::CaseSelection { region, energy });
        }
        Ok(Self { region, case, wavenumber })
    }

    /// `[[f1, f2], [f1', f2']]` at local coordinate `u = 0`.
    pub(crate) fn basis_at_origin(&self) -> TransferMatrix2 {
        let one = Complex64::new(1.0, 0.0);
        match self.case {
            WaveCase::Oscillatory => {
                let ik = Complex64::new(0.0, self.wavenumber);
                TransferMatrix2::new(one, one, ik, -ik)
            }
            WaveCase::Evanescent => TransferMatrix2::real(1.0, 1.0, self.wavenumber, -self.wavenumber),
            WaveCase::Linear => TransferMatrix2::IDENTITY,
        }
    }

    /// Inverse of the basis matrix at local coordinate `u >= 0`, with any
    /// exponential growth moved into the scale.
    pub(crate) fn inverse_basis(&self, u: f64) -> ScaledTransfer {
        match self.case {
            WaveCase::Oscillatory => {
                let k = self.wavenumber;
                let e = Complex64::new(0.0, k * u).exp();
                let inv_2ik = Complex64::new(0.0, -0.5 / k);
                let m = TransferMatrix2::new(0.5 / e, inv_2ik / e, e * 0.5, -(inv_2ik * e));
                ScaledTransfer::factor(m, 0.0)
            }
            WaveCase::Evanescent => {
                // e^{κu} * [[e^{-2κu}/2, e^{-2κu}/(2κ)], [1/2, -1/(2κ)]]
                let k = self.wavenumber;
                let d = (-2.0 * k * u).exp();
                let m = TransferMatrix2::real(0.5 * d, 0.5 * d / k, 0.5, -0.5 / k);
                ScaledTransfer::factor(m, k * u * std::f64::consts::LOG2_E)
            }
            WaveCase::Linear => ScaledTransfer::factor(TransferMatrix2::real(1.0, -u, 0.0, 1.0), 0.0),
        }
    }
}

/// Local coordinate of the right edge of wave region `region`, measured
/// from the region's origin (`a_1` for the first region, its left breakpoint
/// otherwise).
pub(crate) fn region_extent(seg: &SegmentedProfile, region: usize) -> f64 {
    if region == 0 {
        0.0
    } else {
        seg.breakpoints[region] - seg.breakpoints[region - 1]
    }
}

/// Origin of the local coordinate of region `region`.
pub(crate) fn region_origin(seg: &SegmentedProfile, region: usize) -> f64 {
    if region == 0 {
        seg.breakpoints[0]
    } else {
        seg.breakpoints[region - 1]
    }
}

/// Derivative-jump strength `(2m/ħ²)(E - V)(width)` of the junction region.
pub(crate) fn jump(seg: &SegmentedProfile, junction_region: usize, energy: f64) -> f64 {
    let w = seg.breakpoints[junction_region] - seg.breakpoints[junction_region - 1];
    let m = seg.masses[junction_region];
    2.0 * m / (seg.hbar * seg.hbar) * (energy - seg.potentials[junction_region]) * w
}

/// The two factors contributed by junction `pair` (0-based, junction region
/// `2 pair + 1`): the inverse basis of the wave region on its left, and the
/// junction matching times the basis of the region on its right.
pub(crate) fn pair_factors(seg: &SegmentedProfile, pair: usize, energy: f64) -> Result<(ScaledTransfer, ScaledTransfer)> {
    let left = 2 * pair;
    let right = left + 2;
    let wl = RegionWave::classify(seg, left, energy)?;
    let wr = RegionWave::classify(seg, right, energy)?;
    let f1 = wl.inverse_basis(region_extent(seg, left));
    let c = jump(seg, left + 1, energy);
    let junction = TransferMatrix2::real(1.0, 0.0, c, 1.0);
    let f2 = ScaledTransfer::factor(junction * wr.basis_at_origin(), 0.0);
    Ok((f1, f2))
}

/// Transfer matrix of one junction pair, mapping the amplitudes of wave
/// region `2 pair + 2` to those of region `2 pair` (0-based).
pub fn junction_pair_matrix(seg: &SegmentedProfile, pair: usize, energy: f64) -> Result<ScaledTransfer> {
    if pair >= seg.junction_count() {
        return Err(Error::Domain(format!("junction {pair} out of range (have {})", seg.junction_count())));
    }
    let (f1, f2) = pair_factors(seg, pair, energy)?;
    Ok(f1 * f2)
}

/// Ordered product over all junctions, mapping the amplitudes `(A_N, B_N)`
/// of the last region to `(A_1, B_1)` of the first. Uses `N - 1` factors for
/// `N` regions; see [`ScaledTransfer::factors`].
pub fn total_transfer(seg: &SegmentedProfile, energy: f64) -> Result<ScaledTransfer> {
    let mut acc: Option<ScaledTransfer> = None;
    for pair in 0..seg.junction_count() {
        let (f1, f2) = pair_factors(seg, pair, energy)?;
        acc = Some(match acc {
            None => f1 * f2,
            Some(a) => a * f1 * f2,
        });
    }
    let product = acc.expect("a segmented profile has at least one junction");
    debug_assert_eq!(product.factors, seg.region_count() - 1);
    if !product.mantissa.is_finite() {
        return Err(Error::CaseSelection { region: 0, energy });
    }
    Ok(product)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScatteringPoint {
    pub energy: f64,
    pub transmission: f64,
    pub reflection: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SpectrumEntry {
    Point(ScatteringPoint),
    /// The energy does not exceed both asymptotic potentials.
    BelowAsymptote { energy: f64 },
}

impl SpectrumEntry {
    pub fn energy(&self) -> f64 {
        match self {
            SpectrumEntry::Point(p) => p.energy,
            SpectrumEntry::BelowAsymptote { energy } => *energy,
        }
    }

    pub fn point(&self) -> Option<&ScatteringPoint> {
        match self {
            SpectrumEntry::Point(p) => Some(p),
            SpectrumEntry::BelowAsymptote { .. } => None,
        }
    }
}

/// `T = (k_N/k_1)/|t11|^2` and `R = |t21/t11|^2` at one energy.
pub fn scattering_point(seg: &SegmentedProfile, energy: f64) -> Result<SpectrumEntry> {
    let n = seg.region_count();
    let first = RegionWave::classify(seg, 0, energy)?;
    let last = RegionWave::classify(seg, n - 1, energy)?;
    let v_top = seg.potentials[0].max(seg.potentials[n - 1]);
    if energy <= v_top || first.case != WaveCase::Oscillatory || last.case != WaveCase::Oscillatory {
        return Ok(SpectrumEntry::BelowAsymptote { energy });
    }
    let t = total_transfer(seg, energy)?;
    let ln_t = (last.wavenumber / first.wavenumber).ln() - 2.0 * t.ln_abs(0, 0);
    let transmission = ln_t.exp();
    let reflection = (t.mantissa.t21() / t.mantissa.t11()).norm_sqr();
    if !transmission.is_finite() || !reflection.is_finite() {
        return Err(Error::CaseSelection { region: 0, energy });
    }
    Ok(SpectrumEntry::Point(ScatteringPoint { energy, transmission, reflection }))
}

/// Evaluates [`scattering_point`] over `energies` in parallel, preserving order.
pub fn transmission_spectrum(seg: &SegmentedProfile, energies: &[f64]) -> Result<Vec<SpectrumEntry>> {
    energies.par_iter().map(|&e| scattering_point(seg, e)).collect()
}
