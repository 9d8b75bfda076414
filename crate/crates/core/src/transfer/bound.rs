use num_complex::Complex64;
use rayon::prelude::*;

use super::chain::{pair_factors, region_extent, region_origin, total_transfer, RegionWave, WaveCase};
use super::matrix::pow2;
use crate::error::{domain, Error, Result};
use crate::profile::SegmentedProfile;
use crate::roots::{bisect, sign_change_brackets};
use crate::wavefunction::{Piece, PieceForm, PiecewiseWavefunction};

/// Default number of scan points over the bound window.
pub const DEFAULT_SCAN_POINTS: usize = 2000;

/// Largest `|determinant|` accepted by [`eigenfunction`].
pub const STALE_TOLERANCE: f64 = 1e-6;

/// Real function of `E` whose zeros are the bound-state energies.
///
/// With the last region purely decaying (`A_N = 0, B_N = 1`) the first
/// region's decaying-to-the-left amplitude is `B_1 = t22`; its value is
/// returned divided by the largest entry of the rescaled product.
pub fn bound_determinant(seg: &SegmentedProfile, energy: f64) -> Result<f64> {
    let (lo, hi) = match seg.bound_window() {
        Some(w) => w,
        None => return domain("profile has no bound window (no potential below both asymptotes)"),
    };
    if !(energy > lo && energy < hi) {
        return domain(format!("E = {energy} lies outside the bound window ({lo}, {hi})"));
    }
    let n = seg.region_count();
    for region in [0, n - 1] {
        if RegionWave::classify(seg, region, energy)?.case != WaveCase::Evanescent {
            return domain(format!("E = {energy} is too close to the asymptote {hi}"));
        }
    }
    let t = total_transfer(seg, energy)?;
    Ok(t.mantissa.t22().re / t.mantissa.max_abs())
}

/// One bound-state energy in both conventions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Eigenvalue {
    /// Absolute energy, same reference as the potentials.
    pub energy: f64,
    /// `E - V_min`, measured from the bottom of the deepest region.
    pub above_bottom: f64,
}

/// Bound-state energies in ascending order: scan the determinant over the
/// bound window, bisect every sign change and drop near-duplicates.
pub fn eigenvalues(seg: &SegmentedProfile, scan_points: usize) -> Result<Vec<Eigenvalue>> {
    if scan_points < 100 {
        return domain(format!("scan_points must be at least 100, got {scan_points}"));
    }
    let Some((lo, hi)) = seg.bound_window() else {
        return Ok(Vec::new());
    };
    let width = hi - lo;
    let edge = 1e-7 * width;
    let mut grid = Vec::with_capacity(scan_points + 2);
    grid.push(lo + edge);
    grid.extend((1..scan_points).map(|i| lo + width * i as f64 / scan_points as f64));
    grid.push(hi - edge);
    let values: Vec<f64> = grid.par_iter().map(|&e| bound_determinant(seg, e)).collect::<Result<_>>()?;
    let brackets = sign_change_brackets(&grid, &values);
    let tol = 1e-10 * width;
    let roots: Vec<f64> = brackets
        .par_iter()
        .map(|&(a, b)| {
            if a == b {
                a
            } else {
                bisect(|e| bound_determinant(seg, e).unwrap_or(f64::NAN), a, b, tol)
            }
        })
        .collect();
    let mut out: Vec<f64> = Vec::with_capacity(roots.len());
    for r in roots {
        if out.last().map_or(true, |&prev| r - prev > 1e-8 * width) {
            out.push(r);
        }
    }
    let v_min = seg.v_min();
    Ok(out.into_iter().map(|energy| Eigenvalue { energy, above_bottom: energy - v_min }).collect())
}

#[derive(Debug, Clone, PartialEq)]
pub struct BoundState {
    pub energy: f64,
    pub above_bottom: f64,
    pub nodes: usize,
    /// `(A_j, B_j)` for every wave region (even 0-based index), after normalization.
    pub amplitudes: Vec<(Complex64, Complex64)>,
    /// Normalized real wavefunction on the requested grid.
    pub samples: Vec<(f64, f64)>,
    pub wavefunction: PiecewiseWavefunction,
}

/// Normalized eigenfunction at a validated eigenvalue, built by
/// back-substitution from the decaying right region. The sign is fixed so
/// that the leftmost significant lobe is positive.
pub fn eigenfunction(seg: &SegmentedProfile, energy: f64, grid: &[f64]) -> Result<BoundState> {
    let energy = polish_root(seg, energy)?;
    let n = seg.region_count();
    let pairs = seg.junction_count();
    let mut coeffs = vec![(Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0)); pairs + 1];
    coeffs[pairs] = (Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0));
    for pair in (0..pairs).rev() {
        let (f1, f2) = pair_factors(seg, pair, energy)?;
        let step = f1 * f2;
        let mut v = step.mantissa.apply(coeffs[pair + 1]);
        // true value is v * 2^scale: shrink everything already computed instead
        let mut shift = -step.log2_scale;
        let peak = v.0.norm().max(v.1.norm());
        if peak > 1e100 {
            let e = peak.log2().floor();
            v = (v.0 * pow2(-e as i32), v.1 * pow2(-e as i32));
            shift -= e;
        }
        if shift != 0.0 {
            let f = (shift * std::f64::consts::LN_2).exp();
            for c in coeffs.iter_mut().skip(pair + 1) {
                *c = (c.0 * f, c.1 * f);
            }
        }
        coeffs[pair] = v;
    }
    coeffs[0].1 = Complex64::new(0.0, 0.0);

    let mut pieces = Vec::with_capacity(n);
    for region in 0..n {
        if region % 2 == 1 {
            let right = &coeffs[(region + 1) / 2];
            let w = RegionWave::classify(seg, region + 1, energy)?;
            let value = match w.case {
                WaveCase::Linear => right.0,
                _ => right.0 + right.1,
            };
            pieces.push(Piece::new(PieceForm::Constant, 0.0, value, Complex64::new(0.0, 0.0)));
            continue;
        }
        let w = RegionWave::classify(seg, region, energy)?;
        let (a, b) = coeffs[region / 2];
        let origin = region_origin(seg, region);
        let piece = if region == 0 {
            Piece::new(PieceForm::GrowingExp { kappa: w.wavenumber }, origin, a, b)
        } else if region == n - 1 {
            Piece::new(PieceForm::DecayingExp { kappa: w.wavenumber }, origin, b, a)
        } else {
            let form = match w.case {
                WaveCase::Oscillatory => PieceForm::PlaneWavePair { k: w.wavenumber },
                WaveCase::Evanescent => PieceForm::ExpPair { kappa: w.wavenumber },
                WaveCase::Linear => PieceForm::Linear,
            };
            Piece::new(form, origin, a, b)
        };
        pieces.push(piece);
    }
    let mut wf = PiecewiseWavefunction::new(seg.breakpoints.clone(), pieces, energy)?;
    wf.normalize()?;

    let probe = node_probe_grid(seg, energy)?;
    let values: Vec<f64> = probe.iter().map(|&x| wf.eval(x).re).collect();
    let peak = values.iter().fold(0.0f64, |a, v| a.max(v.abs()));
    if let Some(first) = values.iter().find(|v| v.abs() > 1e-3 * peak) {
        if *first < 0.0 {
            wf.scale(Complex64::new(-1.0, 0.0));
        }
    }
    let nodes = count_nodes(&values, 1e-9 * peak);
    let norm_factor = wf.pieces[0].coeffs.0 / coeffs[0].0;
    let amplitudes = if coeffs[0].0.norm() > 0.0 {
        coeffs.iter().map(|c| (c.0 * norm_factor, c.1 * norm_factor)).collect()
    } else {
        coeffs
    };
    let samples = grid.iter().map(|&x| (x, wf.eval(x).re)).collect();
    Ok(BoundState { energy, above_bottom: energy - seg.v_min(), nodes, amplitudes, samples, wavefunction: wf })
}

// Accepts `energy` if the determinant is below the stale tolerance or changes
// sign within the eigenvalue resolution, and refines it to full precision.
fn polish_root(seg: &SegmentedProfile, energy: f64) -> Result<f64> {
    let det = bound_determinant(seg, energy)?;
    let (lo, hi) = seg.bound_window().expect("determinant succeeded");
    let delta = 1e-8 * (hi - lo);
    let a = (energy - delta).max(lo + 0.5 * delta);
    let b = (energy + delta).min(hi - 0.5 * delta);
    let (da, db) = (bound_determinant(seg, a)?, bound_determinant(seg, b)?);
    let bracketed = da * db <= 0.0;
    if det.abs() > STALE_TOLERANCE && !bracketed {
        return Err(Error::StaleEnergy { energy, residual: det.abs(), tolerance: STALE_TOLERANCE });
    }
    if !bracketed || det == 0.0 {
        return Ok(energy);
    }
    let tol = 4.0 * f64::EPSILON * energy.abs().max(hi - lo);
    Ok(bisect(|e| bound_determinant(seg, e).unwrap_or(f64::NAN), a, b, tol))
}

// Dense grid over the breakpoint span, resolving every oscillation.
fn node_probe_grid(seg: &SegmentedProfile, energy: f64) -> Result<Vec<f64>> {
    let mut xs = Vec::new();
    for region in (2..seg.region_count() - 1).step_by(2) {
        let w = RegionWave::classify(seg, region, energy)?;
        let origin = region_origin(seg, region);
        let len = region_extent(seg, region);
        let cycles = if w.case == WaveCase::Oscillatory { w.wavenumber * len / std::f64::consts::PI } else { 0.0 };
        let count = 16 + (8.0 * cycles).ceil() as usize;
        xs.extend((0..=count).map(|i| origin + len * i as f64 / count as f64));
    }
    if xs.is_empty() {
        xs.push(seg.breakpoints[0]);
    }
    Ok(xs)
}

fn count_nodes(values: &[f64], floor: f64) -> usize {
    let mut last_sign = 0.0;
    let mut nodes = 0;
    for &v in values {
        if v.abs() <= floor {
            continue;
        }
        let s = v.signum();
        if last_sign != 0.0 && s != last_sign {
            nodes += 1;
        }
        last_sign = s;
    }
    nodes
}
