//! Potential and effective-mass profiles, and their decomposition into
//! alternating wave regions and ultra-short junctions.

use std::fmt;
use std::path::Path;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Thread-safe scalar field `x -> value`.
pub type Sampler = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

#[derive(Debug, Clone, PartialEq)]
pub enum ProfileSource {
    Builtin(String),
    Tabulated,
    Callback,
}

/// A potential `V(x)` and mass `m(x)` on a finite domain, continued by the
/// asymptotic values `v_left`/`v_right` outside it.
#[derive(Clone)]
pub struct PotentialProfile {
    potential: Sampler,
    mass: Sampler,
    pub x_min: f64,
    pub x_max: f64,
    pub v_left: f64,
    pub v_right: f64,
    pub hbar: f64,
    pub source: ProfileSource,
}

impl fmt::Debug for PotentialProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PotentialProfile")
            .field("domain", &(self.x_min, self.x_max))
            .field("v_left", &self.v_left)
            .field("v_right", &self.v_right)
            .field("hbar", &self.hbar)
            .field("source", &self.source)
            .finish()
    }
}

impl PotentialProfile {
    /// Builds a profile from arbitrary samplers. The asymptotes default to
    /// the potential at the domain ends.
    pub fn from_fn<V, M>(potential: V, mass: M, x_min: f64, x_max: f64) -> Result<Self>
    where
        V: Fn(f64) -> f64 + Send + Sync + 'static,
        M: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        let v_left = potential(x_min);
        let v_right = potential(x_max);
        Self::with_asymptotes(Arc::new(potential), Arc::new(mass), (x_min, x_max), (v_left, v_right), ProfileSource::Callback)
    }

    pub fn with_asymptotes(
        potential: Sampler,
        mass: Sampler,
        (x_min, x_max): (f64, f64),
        (v_left, v_right): (f64, f64),
        source: ProfileSource,
    ) -> Result<Self> {
        if !(x_min < x_max) || !x_min.is_finite() || !x_max.is_finite() {
            return Err(Error::Config(format!("domain must satisfy x_min < x_max, got ({x_min}, {x_max})")));
        }
        if !v_left.is_finite() || !v_right.is_finite() {
            return Err(Error::Config("asymptotic potentials must be finite".into()));
        }
        let profile = Self { potential, mass, x_min, x_max, v_left, v_right, hbar: 1.0, source };
        // spot-check the mass on a coarse grid
        for i in 0..=64 {
            let x = x_min + (x_max - x_min) * i as f64 / 64.0;
            let m = (profile.mass)(x);
            if !(m > 0.0) || !m.is_finite() {
                return Err(Error::Config(format!("mass must be positive, got m({x}) = {m}")));
            }
        }
        Ok(profile)
    }

    pub fn with_hbar(mut self, hbar: f64) -> Result<Self> {
        if !(hbar > 0.0) || !hbar.is_finite() {
            return Err(Error::Config(format!("hbar must be positive, got {hbar}")));
        }
        self.hbar = hbar;
        Ok(self)
    }

    /// Replaces the mass by a constant.
    pub fn with_constant_mass(mut self, mass: f64) -> Result<Self> {
        if !(mass > 0.0) || !mass.is_finite() {
            return Err(Error::Config(format!("mass must be positive, got {mass}")));
        }
        self.mass = Arc::new(move |_| mass);
        Ok(self)
    }

    /// `V(x)`, using the asymptotic values outside the domain.
    pub fn potential(&self, x: f64) -> f64 {
        if x < self.x_min {
            self.v_left
        } else if x > self.x_max {
            self.v_right
        } else {
            (self.potential)(x)
        }
    }

    /// `m(x)`, clamped to the domain ends outside it.
    pub fn mass(&self, x: f64) -> f64 {
        (self.mass)(x.clamp(self.x_min, self.x_max))
    }

    pub fn width(&self) -> f64 {
        self.x_max - self.x_min
    }

    /// Rectangular step of signed height `v0` on `[x_min, x_max]`, zero outside.
    pub fn rectangular(v0: f64, x_min: f64, x_max: f64, mass: f64) -> Result<Self> {
        Self::with_asymptotes(
            Arc::new(move |_| v0),
            constant(mass)?,
            (x_min, x_max),
            (0.0, 0.0),
            ProfileSource::Builtin("rectangular".into()),
        )
    }

    /// `v0 exp(-(x - center)^2 / (2 width^2))` truncated to the domain, zero
    /// outside.
    pub fn gaussian(v0: f64, center: f64, width: f64, x_min: f64, x_max: f64, mass: f64) -> Result<Self> {
        if !(width > 0.0) {
            return Err(Error::Config(format!("gaussian width must be positive, got {width}")));
        }
        Self::with_asymptotes(
            Arc::new(move |x| v0 * (-(x - center).powi(2) / (2.0 * width * width)).exp()),
            constant(mass)?,
            (x_min, x_max),
            (0.0, 0.0),
            ProfileSource::Builtin("gaussian".into()),
        )
    }

    /// Two barriers of height `v0` and width `barrier_width` separated by a
    /// flat gap, centred on `center`. The domain spans the outer edges.
    pub fn double_barrier(v0: f64, barrier_width: f64, gap: f64, center: f64, mass: f64) -> Result<Self> {
        if !(barrier_width > 0.0) || !(gap >= 0.0) {
            return Err(Error::Config(format!(
                "double barrier needs barrier_width > 0 and gap >= 0, got {barrier_width}, {gap}"
            )));
        }
        let half_gap = 0.5 * gap;
        let x_min = center - half_gap - barrier_width;
        let x_max = center + half_gap + barrier_width;
        Self::with_asymptotes(
            Arc::new(move |x| if (x - center).abs() >= half_gap { v0 } else { 0.0 }),
            constant(mass)?,
            (x_min, x_max),
            (0.0, 0.0),
            ProfileSource::Builtin("double-barrier".into()),
        )
    }

    /// Segments the profile into `junctions` ultra-short junctions of
    /// half-width `half_width`; see [`discretize`].
    pub fn discretize(&self, junctions: usize, half_width: f64) -> Result<SegmentedProfile> {
        discretize(self, junctions, half_width)
    }
}

fn constant(mass: f64) -> Result<Sampler> {
    if !(mass > 0.0) || !mass.is_finite() {
        return Err(Error::Config(format!("mass must be positive, got {mass}")));
    }
    Ok(Arc::new(move |_| mass))
}

/// Linearly interpolating profile through `(x, V, m)` rows. The asymptotes
/// are the first and last potentials.
pub fn load_tabulated(rows: &[(f64, f64, f64)]) -> Result<PotentialProfile> {
    if rows.len() < 2 {
        return Err(Error::Tabulated { row: rows.len(), message: format!("need at least 2 rows, got {}", rows.len()) });
    }
    for (i, &(x, v, m)) in rows.iter().enumerate() {
        if !x.is_finite() || !v.is_finite() || !m.is_finite() {
            return Err(Error::Tabulated { row: i + 1, message: "non-finite value".into() });
        }
        if !(m > 0.0) {
            return Err(Error::Tabulated { row: i + 1, message: format!("mass must be positive, got {m}") });
        }
        if i > 0 && !(x > rows[i - 1].0) {
            return Err(Error::Tabulated {
                row: i + 1,
                message: format!("x must be strictly increasing ({} follows {})", x, rows[i - 1].0),
            });
        }
    }
    let xs: Arc<[f64]> = rows.iter().map(|r| r.0).collect();
    let vs: Arc<[f64]> = rows.iter().map(|r| r.1).collect();
    let ms: Arc<[f64]> = rows.iter().map(|r| r.2).collect();
    let (x0, x1) = (xs[0], xs[xs.len() - 1]);
    let (v_left, v_right) = (vs[0], vs[vs.len() - 1]);
    let potential = {
        let xs = xs.clone();
        Arc::new(move |x: f64| interpolate(&xs, &vs, x))
    };
    let mass = Arc::new(move |x: f64| interpolate(&xs, &ms, x));
    PotentialProfile::with_asymptotes(potential, mass, (x0, x1), (v_left, v_right), ProfileSource::Tabulated)
}

fn interpolate(xs: &[f64], ys: &[f64], x: f64) -> f64 {
    let n = xs.len();
    if x <= xs[0] {
        return ys[0];
    }
    if x >= xs[n - 1] {
        return ys[n - 1];
    }
    let i = xs.partition_point(|&t| t <= x);
    let (x0, x1, y0, y1) = (xs[i - 1], xs[i], ys[i - 1], ys[i]);
    y0 + (y1 - y0) * (x - x0) / (x1 - x0)
}

/// Parses whitespace-separated `x V m` lines; `#` starts a comment.
/// Errors carry the 1-based line number.
pub fn parse_tabulated(text: &str) -> Result<Vec<(f64, f64, f64)>> {
    let mut rows = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != 3 {
            return Err(Error::Tabulated { row: i + 1, message: format!("expected 3 columns `x V m`, found {}", fields.len()) });
        }
        let mut vals = [0.0; 3];
        for (slot, field) in vals.iter_mut().zip(&fields) {
            *slot = field
                .parse::<f64>()
                .map_err(|_| Error::Tabulated { row: i + 1, message: format!("`{field}` is not a number") })?;
        }
        rows.push((vals[0], vals[1], vals[2]));
    }
    Ok(rows)
}

/// Reads a tabulated profile file. Row numbers in errors are file line numbers.
pub fn read_tabulated(path: &Path) -> Result<PotentialProfile> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
    let rows = parse_tabulated(&text)?;
    // map row indices back to line numbers for validation errors
    let line_of: Vec<usize> = text
        .lines()
        .enumerate()
        .filter(|(_, l)| !l.split('#').next().unwrap_or("").trim().is_empty())
        .map(|(i, _)| i + 1)
        .collect();
    load_tabulated(&rows).map_err(|e| match e {
        Error::Tabulated { row, message } if row >= 1 && row <= line_of.len() => {
            Error::Tabulated { row: line_of[row - 1], message }
        }
        other => other,
    })
}

/// Alternating wave regions (even 0-based index) and ultra-short junctions
/// (odd 0-based index). Region `i` spans `breakpoints[i-1]..breakpoints[i]`;
/// the first and last regions are semi-infinite.
#[derive(Debug, Clone, PartialEq)]
pub struct SegmentedProfile {
    pub breakpoints: Vec<f64>,
    pub potentials: Vec<f64>,
    pub masses: Vec<f64>,
    pub half_width: f64,
    pub hbar: f64,
}

impl SegmentedProfile {
    pub fn new(breakpoints: Vec<f64>, potentials: Vec<f64>, masses: Vec<f64>, half_width: f64, hbar: f64) -> Result<Self> {
        let n = potentials.len();
        if n < 3 || n % 2 == 0 {
            return Err(Error::Config(format!("region count must be odd and at least 3, got {n}")));
        }
        if breakpoints.len() != n - 1 || masses.len() != n {
            return Err(Error::Config(format!(
                "{n} regions need {} breakpoints and {n} masses, got {} and {}",
                n - 1,
                breakpoints.len(),
                masses.len()
            )));
        }
        if !(half_width > 0.0) {
            return Err(Error::Config(format!("junction half width must be positive, got {half_width}")));
        }
        if !(hbar > 0.0) {
            return Err(Error::Config(format!("hbar must be positive, got {hbar}")));
        }
        if breakpoints.windows(2).any(|w| !(w[1] >= w[0])) || breakpoints.iter().any(|b| !b.is_finite()) {
            return Err(Error::Config("breakpoints must be finite and non-decreasing".into()));
        }
        if masses.iter().any(|&m| !(m > 0.0) || !m.is_finite()) {
            return Err(Error::Config("region masses must be positive".into()));
        }
        if potentials.iter().any(|v| !v.is_finite()) {
            return Err(Error::Config("region potentials must be finite".into()));
        }
        let tol = 1e-9 * (1.0 + breakpoints.iter().fold(0.0f64, |a, b| a.max(b.abs())));
        for pair in breakpoints.chunks(2) {
            let w = pair[1] - pair[0];
            if (w - 2.0 * half_width).abs() > tol {
                return Err(Error::Config(format!("junction width {w} differs from 2 * half_width = {}", 2.0 * half_width)));
            }
        }
        Ok(Self { breakpoints, potentials, masses, half_width, hbar })
    }

    pub fn region_count(&self) -> usize {
        self.potentials.len()
    }

    pub fn junction_count(&self) -> usize {
        (self.potentials.len() - 1) / 2
    }

    pub fn v_min(&self) -> f64 {
        self.potentials.iter().copied().fold(f64::INFINITY, f64::min)
    }

    /// Open energy window `(V_min, min(V_first, V_last))` that can hold bound
    /// states, or `None` when it is empty.
    pub fn bound_window(&self) -> Option<(f64, f64)> {
        let lo = self.v_min();
        let hi = self.potentials[0].min(*self.potentials.last().unwrap());
        (lo < hi).then_some((lo, hi))
    }

    /// Distance between the outermost breakpoints.
    pub fn span(&self) -> f64 {
        self.breakpoints[self.breakpoints.len() - 1] - self.breakpoints[0]
    }

    /// Start of each junction, `breakpoints[0], breakpoints[2], ...`.
    pub fn junction_starts(&self) -> impl Iterator<Item = f64> + '_ {
        self.breakpoints.iter().step_by(2).copied()
    }
}

/// Places `junctions` junctions of width `2 half_width` uniformly across the
/// domain: the first starts at `x_min`, the last ends at `x_max` (a single
/// junction is centred). Every interior region takes `V` and `m` at its
/// midpoint; the outer regions take the asymptotic values.
pub fn discretize(profile: &PotentialProfile, junctions: usize, half_width: f64) -> Result<SegmentedProfile> {
    if junctions == 0 {
        return Err(Error::Config("junction count must be at least 1".into()));
    }
    if !(half_width > 0.0) || !half_width.is_finite() {
        return Err(Error::Config(format!("junction half width must be positive, got {half_width}")));
    }
    let width = profile.width();
    let junction_width = 2.0 * half_width;
    let fits = if junctions == 1 {
        junction_width <= width * (1.0 + 1e-12)
    } else {
        junction_width * (junctions as f64) < width
    };
    if !fits {
        return Err(Error::Config(format!(
            "delta_x = {half_width} is too large for {junctions} junction(s) on a domain of width {width}: \
             junction spacing {} must exceed the junction width {junction_width}",
            width / junctions as f64
        )));
    }
    let starts: Vec<f64> = if junctions == 1 {
        vec![0.5 * (profile.x_min + profile.x_max) - half_width]
    } else {
        let pitch = (width - junction_width) / (junctions - 1) as f64;
        (0..junctions).map(|i| profile.x_min + pitch * i as f64).collect()
    };
    let mut breakpoints = Vec::with_capacity(2 * junctions);
    for (i, &s) in starts.iter().enumerate() {
        let end = if junctions > 1 && i + 1 == junctions { profile.x_max } else { s + junction_width };
        let start = if junctions > 1 && i + 1 == junctions { profile.x_max - junction_width } else { s };
        breakpoints.push(start);
        breakpoints.push(end);
    }
    let n = 2 * junctions + 1;
    let mut potentials = Vec::with_capacity(n);
    let mut masses = Vec::with_capacity(n);
    potentials.push(profile.v_left);
    masses.push(profile.mass(profile.x_min));
    for w in breakpoints.windows(2) {
        let mid = 0.5 * (w[0] + w[1]);
        potentials.push(profile.potential(mid));
        masses.push(profile.mass(mid));
    }
    potentials.push(profile.v_right);
    masses.push(profile.mass(profile.x_max));
    SegmentedProfile::new(breakpoints, potentials, masses, half_width, profile.hbar)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    #[test]
    fn constant_profile() {
        let p = PotentialProfile::from_fn(|_| 0.7, |_| 1.0, -3.0, 3.0).unwrap();
        let seg = discretize(&p, 5, 0.02).unwrap();
        assert_eq!(seg.region_count(), 11);
        assert!(seg.potentials.iter().all(|&v| v == 0.7));
    }

    #[test]
    fn symmetric_profile_gives_palindrome() {
        let p = PotentialProfile::from_fn(|x| -(x * x), |_| 1.0, -2.0, 2.0).unwrap();
        for j in 1..9 {
            let seg = discretize(&p, j, 0.01).unwrap();
            let v = &seg.potentials;
            for i in 0..v.len() {
                assert_abs_diff_eq!(v[i], v[v.len() - 1 - i], epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn rectangular_layout_with_spacing_point_eight() {
        // width 2.42 = 3 * 0.8 + 0.02: four junctions of width 0.02
        let p = PotentialProfile::rectangular(2.0, -1.21, 1.21, 1.0).unwrap();
        let seg = discretize(&p, 4, 0.01).unwrap();
        assert_eq!(seg.potentials[0], 0.0);
        assert_eq!(*seg.potentials.last().unwrap(), 0.0);
        assert!(seg.potentials[1..seg.region_count() - 1].iter().all(|&v| v == 2.0));
        let starts: Vec<f64> = seg.junction_starts().collect();
        for w in starts.windows(2) {
            assert_abs_diff_eq!(w[1] - w[0], 0.8, epsilon = 1e-12);
        }
        assert_abs_diff_eq!(seg.span(), 2.42, epsilon = 1e-12);
    }

    #[test]
    fn three_junctions_on_the_same_rectangle() {
        let p = PotentialProfile::rectangular(2.0, -1.21, 1.21, 1.0).unwrap();
        let seg = discretize(&p, 3, 0.02).unwrap();
        assert!(seg.potentials[1..6].iter().all(|&v| v == 2.0));
        assert_eq!((seg.potentials[0], seg.potentials[6]), (0.0, 0.0));
    }

    #[test]
    fn single_junction_is_centred() {
        let p = PotentialProfile::rectangular(-20.0, -0.025, 0.025, 1.0).unwrap();
        let seg = discretize(&p, 1, 0.025).unwrap();
        assert_eq!(seg.breakpoints, vec![-0.025, 0.025]);
        assert_eq!(seg.potentials, vec![0.0, -20.0, 0.0]);
    }

    #[test]
    fn oversized_junctions_are_rejected() {
        let p = PotentialProfile::rectangular(1.0, 0.0, 1.0, 1.0).unwrap();
        let err = discretize(&p, 5, 0.1).unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("0.1") && msg.contains('5'), "{msg}");
        assert!(discretize(&p, 0, 0.01).is_err());
    }

    #[test]
    fn tabulated_interpolation() {
        let p = load_tabulated(&[(0.0, 0.0, 1.0), (1.0, 1.0, 1.0)]).unwrap();
        assert_abs_diff_eq!(p.potential(0.5), 0.5, epsilon = 1e-15);
        assert_eq!((p.v_left, p.v_right), (0.0, 1.0));
    }

    #[test]
    fn tabulated_errors_name_rows() {
        assert!(matches!(load_tabulated(&[(0.0, 0.0, 1.0)]), Err(Error::Tabulated { .. })));
        match load_tabulated(&[(0.0, 0.0, 1.0), (1.0, 0.0, 0.0)]) {
            Err(Error::Tabulated { row, .. }) => assert_eq!(row, 2),
            other => panic!("{other:?}"),
        }
        match load_tabulated(&[(0.0, 0.0, 1.0), (2.0, 0.0, 1.0), (1.0, 0.0, 1.0)]) {
            Err(Error::Tabulated { row, .. }) => assert_eq!(row, 3),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn parse_with_comments() {
        let text = "# x V m\n0 0 1\n\n0.5 2 1 # mid\n1 0 1\n";
        let rows = parse_tabulated(text).unwrap();
        assert_eq!(rows, vec![(0.0, 0.0, 1.0), (0.5, 2.0, 1.0), (1.0, 0.0, 1.0)]);
        match parse_tabulated("0 0 1\n1 x 1\n") {
            Err(Error::Tabulated { row, .. }) => assert_eq!(row, 2),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn piecewise_constant_plateaus_are_reproduced() {
        // 3 junctions on [0, 2.04]: region midpoints 0.02, 0.52, 1.02, 1.52, 2.02;
        // the step at 0.77 falls between two of them
        let p = PotentialProfile::from_fn(|x| if x < 0.77 { 3.0 } else { -1.5 }, |_| 1.0, 0.0, 2.04).unwrap();
        let seg = discretize(&p, 3, 0.02).unwrap();
        assert_eq!(seg.potentials, vec![3.0, 3.0, 3.0, -1.5, -1.5, -1.5, -1.5]);
    }

    proptest! {
        #[test]
        fn refinement_stays_within_modulus_of_continuity(j in 2usize..20, slope in -5.0f64..5.0, phase in 0.0f64..6.0) {
            // Lipschitz constant |slope| + 1
            let p = PotentialProfile::from_fn(move |x| slope * x + (x + phase).sin(), |_| 1.0, -3.0, 4.0).unwrap();
            let coarse = discretize(&p, j, 0.01).unwrap();
            let fine = discretize(&p, 2 * j, 0.01).unwrap();
            prop_assert_eq!(coarse.potentials[0], fine.potentials[0]);
            prop_assert_eq!(coarse.potentials.last(), fine.potentials.last());
            let lipschitz = slope.abs() + 1.0;
            let pitch = (p.width() - 0.02) / (j - 1) as f64;
            let fine_centres: Vec<(f64, f64)> = fine
                .breakpoints
                .chunks(2)
                .zip(fine.potentials.iter().skip(1).step_by(2))
                .map(|(b, &v)| (0.5 * (b[0] + b[1]), v))
                .collect();
            for (b, &v) in coarse.breakpoints.chunks(2).zip(coarse.potentials.iter().skip(1).step_by(2)) {
                let c = 0.5 * (b[0] + b[1]);
                let nearest = fine_centres
                    .iter()
                    .min_by(|a, b| (a.0 - c).abs().total_cmp(&(b.0 - c).abs()))
                    .unwrap();
                prop_assert!((nearest.1 - v).abs() <= lipschitz * pitch / 2.0 + 1e-12);
            }
        }
    }
}
