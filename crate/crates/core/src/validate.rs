//! Independent oracles for the transfer engine: the analytic finite square
//! well and a finite-difference eigenvalue solver.

use std::f64::consts::{FRAC_PI_2, PI};

use crate::error::{Error, Result};
use crate::profile::PotentialProfile;
use crate::roots::bisect;

/// Finite square well of depth `depth` (asymptote minus bottom) and full
/// width `width`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RectangularWellSpec {
    pub depth: f64,
    pub width: f64,
    pub mass: f64,
    pub hbar: f64,
}

impl RectangularWellSpec {
    pub fn new(depth: f64, width: f64, mass: f64, hbar: f64) -> Result<Self> {
        for (name, v) in [("depth", depth), ("width", width), ("mass", mass), ("hbar", hbar)] {
            if !(v > 0.0) || !v.is_finite() {
                return Err(Error::Domain(format!("{name} must be positive, got {v}")));
            }
        }
        Ok(Self { depth, width, mass, hbar })
    }

    /// Dimensionless strength `z0 = (L/2) sqrt(2 m V) / ħ`.
    pub fn z0(&self) -> f64 {
        0.5 * self.width * (2.0 * self.mass * self.depth).sqrt() / self.hbar
    }

    /// Number of bound states, `ceil(2 z0 / π)`.
    pub fn state_count(&self) -> usize {
        (self.z0() / FRAC_PI_2).ceil() as usize
    }

    fn energy_of(&self, z: f64) -> f64 {
        2.0 * self.hbar * self.hbar * z * z / (self.mass * self.width * self.width)
    }
}

fn matching(z: f64, z0: f64, even: bool) -> f64 {
    let outside = (z0 * z0 - z * z).max(0.0).sqrt();
    if even {
        z * z.sin() - outside * z.cos()
    } else {
        -z * z.cos() - outside * z.sin()
    }
}

/// Bound-state energies measured from the well bottom, ascending.
pub fn rect_well_eigenvalues(spec: &RectangularWellSpec) -> Vec<f64> {
    let z0 = spec.z0();
    let mut out = Vec::new();
    let mut n = 0usize;
    while (n as f64) * FRAC_PI_2 < z0 {
        let lo = n as f64 * FRAC_PI_2;
        let hi = ((n + 1) as f64 * FRAC_PI_2).min(z0);
        let even = n % 2 == 0;
        let z = bisect(|z| matching(z, z0, even), lo, hi, 1e-14 * z0.max(1.0));
        out.push(spec.energy_of(z));
        n += 1;
    }
    out
}

/// Normalized eigenfunction of level `n` of a square well centred on `center`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RectEigenfunction {
    pub level: usize,
    /// Energy above the well bottom.
    pub energy: f64,
    pub center: f64,
    k: f64,
    kappa: f64,
    half: f64,
    amplitude: f64,
}

impl RectEigenfunction {
    pub fn new(spec: &RectangularWellSpec, level: usize, center: f64) -> Result<Self> {
        let levels = rect_well_eigenvalues(spec);
        let energy = *levels.get(level).ok_or_else(|| {
            Error::Domain(format!("level {level} out of range, the well has {} bound states", levels.len()))
        })?;
        let k = (2.0 * spec.mass * energy).sqrt() / spec.hbar;
        let kappa = (2.0 * spec.mass * (spec.depth - energy)).sqrt() / spec.hbar;
        let half = 0.5 * spec.width;
        let mut f = Self { level, energy, center, k, kappa, half, amplitude: 1.0 };
        let inside = if level % 2 == 0 {
            half + (2.0 * k * half).sin() / (2.0 * k)
        } else {
            half - (2.0 * k * half).sin() / (2.0 * k)
        };
        let edge = f.interior(half);
        let norm2 = inside + edge * edge / kappa;
        f.amplitude = 1.0 / norm2.sqrt();
        Ok(f)
    }

    fn interior(&self, u: f64) -> f64 {
        if self.level % 2 == 0 {
            (self.k * u).cos()
        } else {
            (self.k * u).sin()
        }
    }

    pub fn eval(&self, x: f64) -> f64 {
        let u = x - self.center;
        let value = if u.abs() <= self.half {
            self.interior(u)
        } else {
            let edge = self.interior(self.half.copysign(u));
            edge * (-self.kappa * (u.abs() - self.half)).exp()
        };
        self.amplitude * value
    }
}

/// Grid parameters of the finite-difference oracle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OdeGrid {
    /// Cells across the profile domain; the padding uses the same spacing.
    pub grid_points: usize,
    /// Largest number of padding doublings before giving up.
    pub max_doublings: usize,
    /// Largest eigenvalue shift allowed between a box and its double.
    pub box_tolerance: f64,
}

impl OdeGrid {
    pub fn new(grid_points: usize) -> Self {
        Self { grid_points, max_doublings: 8, box_tolerance: 1e-6 }
    }
}

/// Bound-state energies (absolute) of `-ħ²/2 (ψ'/m)' + V ψ = E ψ` from a
/// three-point finite-difference discretization with hard walls.
pub fn direct_ode_eigenvalues(profile: &PotentialProfile, grid_points: usize) -> Result<Vec<f64>> {
    direct_ode_eigenvalues_with(profile, OdeGrid::new(grid_points))
}

pub fn direct_ode_eigenvalues_with(profile: &PotentialProfile, grid: OdeGrid) -> Result<Vec<f64>> {
    if grid.grid_points < 500 {
        return Err(Error::Domain(format!("grid_points must be at least 500, got {}", grid.grid_points)));
    }
    let top = profile.v_left.min(profile.v_right);
    let h = profile.width() / grid.grid_points as f64;
    let v_min = (0..grid.grid_points)
        .map(|i| profile.potential(profile.x_min + (i as f64 + 0.5) * h))
        .fold(f64::INFINITY, f64::min);
    if !(v_min < top) {
        return Ok(Vec::new());
    }
    let edge_mass = profile.mass(profile.x_min).max(profile.mass(profile.x_max));
    let decay = |binding: f64| profile.hbar / (2.0 * edge_mass * binding).sqrt();
    let mut pad = 5.0 * decay(top - v_min);
    let mut current = solve_box(profile, h, pad, top)?;
    for _ in 0..grid.max_doublings {
        if let Some(&shallow) = current.last() {
            pad = pad.max(5.0 * decay((top - shallow).max(1e-300)));
        }
        let doubled = solve_box(profile, h, 2.0 * pad, top)?;
        let shift = if doubled.len() == current.len() {
            current.iter().zip(&doubled).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max)
        } else {
            f64::INFINITY
        };
        if shift <= grid.box_tolerance {
            return Ok(current);
        }
        pad *= 2.0;
        current = doubled;
    }
    Err(Error::Accuracy { what: "finite-difference box padding did not converge".into(), achieved: pad })
}

fn solve_box(profile: &PotentialProfile, h: f64, pad: f64, top: f64) -> Result<Vec<f64>> {
    let pad_cells = (pad / h).ceil() as usize;
    let cells = 2 * pad_cells + (profile.width() / h).round() as usize;
    if cells > 50_000_000 {
        return Err(Error::Accuracy { what: "finite-difference box too large".into(), achieved: cells as f64 });
    }
    let start = profile.x_min - pad_cells as f64 * h;
    let c = profile.hbar * profile.hbar / (2.0 * h * h);
    // inverse masses on the cell faces, faces 0..=cells
    let inv_mass: Vec<f64> = (0..=cells).map(|f| 1.0 / profile.mass(start + f as f64 * h)).collect();
    let diag: Vec<f64> = (0..cells)
        .map(|i| c * (inv_mass[i] + inv_mass[i + 1]) + profile.potential(start + (i as f64 + 0.5) * h))
        .collect();
    let off: Vec<f64> = (1..cells).map(|f| -c * inv_mass[f]).collect();
    let off2: Vec<f64> = off.iter().map(|e| e * e).collect();
    let count = sturm_count(&diag, &off2, top);
    let lower = diag
        .iter()
        .enumerate()
        .map(|(i, d)| {
            let left = if i > 0 { off[i - 1].abs() } else { 0.0 };
            let right = if i + 1 < cells { off[i].abs() } else { 0.0 };
            d - left - right
        })
        .fold(f64::INFINITY, f64::min);
    let tol = 1e-13 * (top - lower).abs().max(1.0);
    Ok((0..count)
        .map(|k| {
            let (mut lo, mut hi) = (lower, top);
            while hi - lo > tol {
                let mid = 0.5 * (lo + hi);
                if sturm_count(&diag, &off2, mid) > k {
                    hi = mid;
                } else {
                    lo = mid;
                }
            }
            0.5 * (lo + hi)
        })
        .collect())
}

/// Number of eigenvalues below `x` of the symmetric tridiagonal matrix with
/// diagonal `d` and squared off-diagonal `e2`.
fn sturm_count(d: &[f64], e2: &[f64], x: f64) -> usize {
    let mut count = 0;
    let mut q = d[0] - x;
    if q < 0.0 {
        count += 1;
    }
    for i in 1..d.len() {
        let prev = if q == 0.0 { f64::EPSILON * (e2[i - 1].sqrt() + 1.0) } else { q };
        q = d[i] - x - e2[i - 1] / prev;
        if q < 0.0 {
            count += 1;
        }
    }
    count
}

/// Eigenvalues of the infinite square well of width `width`, `n = 1..=count`.
pub fn infinite_well_levels(width: f64, mass: f64, hbar: f64, count: usize) -> Vec<f64> {
    (1..=count).map(|n| (n as f64 * PI * hbar / width).powi(2) / (2.0 * mass)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    const TABLE: [(f64, &[f64]); 5] = [
        (0.05, &[19.5161]),
        (1.05, &[2.61562, 10.0498, 19.5865]),
        (2.05, &[0.87960, 3.49579, 7.76616, 13.4719, 19.622]),
        (3.05, &[0.435195, 1.73706, 3.89332, 6.87898, 10.6445, 15.0739, 19.6437]),
        (4.05, &[0.258774, 1.0341, 2.32281, 4.119, 6.41269, 9.18687, 12.41, 16.0097, 19.6585]),
    ];

    #[test]
    fn rectangle_column() {
        for (width, expected) in TABLE {
            let spec = RectangularWellSpec::new(20.0, width, 1.0, 1.0).unwrap();
            let levels = rect_well_eigenvalues(&spec);
            assert_eq!(levels.len(), expected.len());
            assert_eq!(spec.state_count(), expected.len());
            for (a, b) in levels.iter().zip(expected) {
                assert!((a - b).abs() < 1e-3, "width {width}: {a} vs {b}");
            }
        }
    }

    #[test]
    fn matching_conditions_hold_at_roots() {
        let spec = RectangularWellSpec::new(20.0, 2.05, 1.0, 1.0).unwrap();
        for (n, e) in rect_well_eigenvalues(&spec).iter().enumerate() {
            let k = (2.0 * e).sqrt();
            let kappa = (2.0 * (20.0 - e)).sqrt();
            let a = 2.05 / 2.0;
            let r = if n % 2 == 0 { k * (k * a).tan() - kappa } else { -k / (k * a).tan() - kappa };
            assert!(r.abs() < 1e-8, "level {n}: {r}");
        }
    }

    #[test]
    fn rect_eigenfunction_is_normalized_and_continuous() {
        let spec = RectangularWellSpec::new(20.0, 3.05, 1.0, 1.0).unwrap();
        for level in 0..7 {
            let f = RectEigenfunction::new(&spec, level, 0.3).unwrap();
            let q = crate::quad::simpson(|x| f.eval(x).powi(2), -20.0, 20.0, 1e-12);
            assert!((q.value - 1.0).abs() < 1e-8, "level {level}: {}", q.value);
            let e = 1e-9;
            assert!((f.eval(0.3 + 1.525 - e) - f.eval(0.3 + 1.525 + e)).abs() < 1e-7);
        }
        assert!(RectEigenfunction::new(&spec, 7, 0.0).is_err());
    }

    #[test]
    fn sturm_count_on_diagonal() {
        assert_eq!(sturm_count(&[1.0, 2.0, 3.0], &[0.0, 0.0], 2.5), 2);
        assert_eq!(sturm_count(&[1.0, 2.0, 3.0], &[0.0, 0.0], 0.5), 0);
    }

    #[test]
    fn deep_well_approaches_infinite_well() {
        let width = 4.0;
        let p = PotentialProfile::rectangular(-1e4, 0.0, width, 1.0).unwrap();
        let fd = direct_ode_eigenvalues(&p, 4000).unwrap();
        let inf = infinite_well_levels(width, 1.0, 1.0, 3);
        for (a, b) in fd.iter().zip(&inf) {
            let above = a + 1e4;
            assert!((above - b).abs() / b < 0.01, "{above} vs {b}");
        }
    }

    #[test]
    fn oracles_agree_on_table_rows() {
        for (width, _) in TABLE {
            let spec = RectangularWellSpec::new(20.0, width, 1.0, 1.0).unwrap();
            let p = PotentialProfile::rectangular(-20.0, -width / 2.0, width / 2.0, 1.0).unwrap();
            let cells = (width / 1e-3).round() as usize;
            let fd = direct_ode_eigenvalues(&p, cells.max(500)).unwrap();
            let analytic = rect_well_eigenvalues(&spec);
            assert_eq!(fd.len(), analytic.len());
            for (a, b) in fd.iter().zip(&analytic) {
                assert!((a + 20.0 - b).abs() < 1e-4, "width {width}: {} vs {b}", a + 20.0);
            }
        }
    }

    #[test]
    fn no_well_gives_nothing() {
        let p = PotentialProfile::rectangular(1.0, 0.0, 1.0, 1.0).unwrap();
        assert!(direct_ode_eigenvalues(&p, 500).unwrap().is_empty());
        assert!(direct_ode_eigenvalues(&p, 100).is_err());
    }
}
