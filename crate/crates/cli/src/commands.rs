//! The five subcommands, each turning a [`RunConfig`] into a [`Report`].

use rayon::prelude::*;
use ultrashort::closed_form::{
    bound_energy_ultrashort, dirac_delta_bound, dirac_delta_transmission, ramsauer_peak,
    transmission_barrier_ultrashort, transmission_rectangular, transmission_well_ultrashort,
};
use ultrashort::laplace::psi_laplace;
use ultrashort::profile::read_tabulated;
use ultrashort::validate::RectEigenfunction;
use ultrashort::{
    direct_ode_eigenvalues, eigenfunction, eigenvalues, rect_well_eigenvalues, transmission_spectrum, Complex64,
    InitialPacket, LaplaceQuery, PotentialProfile, RectangularWellSpec, SegmentedProfile, SpectrumEntry,
    UltraShortParams,
};

use crate::config::RunConfig;
use crate::error::CliError;
use crate::output::{Report, Value};

const DEFAULT_DELTA_X: f64 = 0.02;
const DEFAULT_SCAN_POINTS: usize = 2000;

/// A potential profile together with what the CLI needs to know about it.
pub struct Setup {
    pub profile: PotentialProfile,
    pub kind: String,
    /// `(depth, full width, center)` when the profile is a rectangular well.
    pub rect_well: Option<(f64, f64, f64)>,
    pub mass: f64,
    pub hbar: f64,
}

pub fn build_profile(cfg: &RunConfig) -> Result<Setup, CliError> {
    let kind = cfg.str("potential").ok_or_else(|| CliError::Config("missing required key `potential`".into()))?;
    let mass = cfg.positive("mass", Some(1.0))?;
    let hbar = cfg.positive("hbar", Some(1.0))?;
    let center = cfg.f64_or("center", 0.0)?;
    let mut rect_well = None;
    let profile = match kind {
        "rectangular" => {
            let v0 = cfg.require_f64("v0")?;
            let width = cfg.positive("width", None)?;
            let (lo, hi) = domain(cfg, center - 0.5 * width, center + 0.5 * width)?;
            if v0 < 0.0 && !cfg.contains("x_min") && !cfg.contains("x_max") {
                rect_well = Some((-v0, width, center));
            }
            PotentialProfile::rectangular(v0, lo, hi, mass)
        }
        "gaussian" => {
            let v0 = cfg.require_f64("v0")?;
            let width = cfg.positive("width", None)?;
            let (lo, hi) = domain(cfg, center - 2.0 * width, center + 2.0 * width)?;
            PotentialProfile::gaussian(v0, center, width, lo, hi, mass)
        }
        "double-barrier" => {
            let v0 = cfg.require_f64("v0")?;
            let width = cfg.positive("width", None)?;
            let gap = cfg.f64_or("gap", 0.0)?;
            if gap < 0.0 {
                return Err(cfg.invalid("gap", "must not be negative"));
            }
            PotentialProfile::double_barrier(v0, width, gap, center, mass)
        }
        "tabulated" => {
            let path = cfg.path("file").ok_or_else(|| CliError::Config("potential = tabulated needs key `file`".into()))?;
            if cfg.contains("mass") {
                return Err(cfg.invalid("mass", "is not used by tabulated profiles (the mass is a file column)"));
            }
            let profile = read_tabulated(&path)
                .map_err(|e| CliError::Config(format!("key `file` ({}): {e}", path.display())))?;
            Ok(profile)
        }
        other => {
            return Err(cfg.invalid(
                "potential",
                &format!("is not one of rectangular, gaussian, double-barrier, tabulated (got `{other}`)"),
            ))
        }
    }
    .map_err(|e| CliError::Config(format!("key `potential` = {kind}: {e}")))?;
    let profile = profile.with_hbar(hbar).map_err(|e| CliError::Config(format!("key `hbar`: {e}")))?;
    Ok(Setup { profile, kind: kind.to_string(), rect_well, mass, hbar })
}

fn domain(cfg: &RunConfig, lo: f64, hi: f64) -> Result<(f64, f64), CliError> {
    let lo = cfg.f64_or("x_min", lo)?;
    let hi = cfg.f64_or("x_max", hi)?;
    if !(hi > lo) {
        return Err(cfg.invalid("x_max", &format!("must exceed x_min = {lo}")));
    }
    Ok((lo, hi))
}

fn segment(cfg: &RunConfig, setup: &Setup) -> Result<(SegmentedProfile, usize, f64), CliError> {
    let junctions = cfg.require_usize("junctions")?;
    if junctions == 0 {
        return Err(cfg.invalid("junctions", "must be at least 1"));
    }
    let delta_x = cfg.positive("delta_x", Some(DEFAULT_DELTA_X))?;
    let seg = setup
        .profile
        .discretize(junctions, delta_x)
        .map_err(|e| CliError::Config(format!("keys `junctions`/`delta_x`: {e}")))?;
    Ok((seg, junctions, delta_x))
}

fn describe(report: &mut Report, setup: &Setup, seg: &SegmentedProfile, delta_x: f64) {
    report
        .note("potential", setup.kind.as_str())
        .note("x_min", setup.profile.x_min)
        .note("x_max", setup.profile.x_max)
        .note("junctions", seg.junction_count())
        .note("delta_x", delta_x)
        .note("mass", setup.mass)
        .note("hbar", setup.hbar);
}

fn energy_grid(cfg: &RunConfig, default_min: Option<f64>) -> Result<Vec<f64>, CliError> {
    let e_max = cfg.require_f64("e_max")?;
    let points = cfg.usize("points")?.unwrap_or(1000);
    if points == 0 {
        return Err(cfg.invalid("points", "must be at least 1"));
    }
    let e_min = match (cfg.f64("e_min")?, default_min) {
        (Some(v), _) => v,
        (None, Some(f)) => f,
        (None, None) => return Err(CliError::Config("missing required key `e_min`".into())),
    };
    if points > 1 && !(e_max > e_min) {
        return Err(cfg.invalid("e_max", &format!("must exceed e_min = {e_min}")));
    }
    if points == 1 {
        return Ok(vec![e_min]);
    }
    let step = (e_max - e_min) / (points - 1) as f64;
    Ok((0..points).map(|i| if i + 1 == points { e_max } else { e_min + step * i as f64 }).collect())
}

fn cell(x: f64) -> Option<Value> {
    Some(Value::Num(x))
}

pub fn sweep(cfg: &RunConfig, oracle: bool) -> Result<Report, CliError> {
    let setup = build_profile(cfg)?;
    let (seg, _, delta_x) = segment(cfg, &setup)?;
    let energies = energy_grid(cfg, None)?;
    let spectrum = transmission_spectrum(&seg, &energies)?;

    let mut report = Report::new("sweep");
    describe(&mut report, &setup, &seg, delta_x);
    let threshold = seg.potentials[0].max(*seg.potentials.last().expect("at least one region"));
    report.note("asymptote_threshold", threshold);
    report.column("E", "energy").column("T", "1").column("R", "1").column("below_asymptote", "flag");

    let rect = match (oracle, setup.kind.as_str()) {
        (true, "rectangular") if !cfg.contains("x_min") && !cfg.contains("x_max") => {
            Some((cfg.require_f64("v0")?, 0.5 * cfg.require_f64("width")?))
        }
        (true, _) => {
            eprintln!("warning: --oracle for sweep is only available for a rectangular profile; ignored");
            None
        }
        _ => None,
    };
    if rect.is_some() {
        report.column("T_rect", "1");
    }

    for entry in &spectrum {
        let mut row = vec![cell(entry.energy())];
        match entry {
            SpectrumEntry::Point(p) => {
                row.extend([cell(p.transmission), cell(p.reflection), Some(Value::Int(0))]);
                if let Some((v0, a)) = rect {
                    let t = transmission_rectangular(setup.mass, setup.hbar, v0, a, p.energy)?;
                    row.push(cell(t));
                }
            }
            SpectrumEntry::BelowAsymptote { .. } => {
                row.extend([None, None, Some(Value::Int(1))]);
                if rect.is_some() {
                    row.push(None);
                }
            }
        }
        report.rows.push(row);
    }
    Ok(report)
}

pub fn bound(cfg: &RunConfig, oracle: bool) -> Result<Report, CliError> {
    let setup = build_profile(cfg)?;
    let (seg, _, delta_x) = segment(cfg, &setup)?;
    let scan_points = cfg.usize("scan_points")?.unwrap_or(DEFAULT_SCAN_POINTS);
    let levels = eigenvalues(&seg, scan_points).map_err(|e| CliError::from(e))?;

    let mut report = Report::new("bound");
    describe(&mut report, &setup, &seg, delta_x);
    report.note("v_min", seg.v_min()).note("states", levels.len());
    report.column("n", "index").column("E", "energy").column("E_above_bottom", "energy").column("nodes", "count");

    if levels.is_empty() {
        eprintln!("warning: the profile has no well below its asymptotes; no bound states");
        return Ok(report);
    }

    let states = levels
        .par_iter()
        .map(|lv| eigenfunction(&seg, lv.energy, &[]))
        .collect::<Result<Vec<_>, _>>()?;

    let rect = match setup.rect_well {
        Some((depth, width, _)) => {
            let spec = RectangularWellSpec::new(depth, width, setup.mass, setup.hbar)?;
            report.column("E_rect_above_bottom", "energy");
            Some(rect_well_eigenvalues(&spec))
        }
        None => None,
    };
    let ode = if oracle {
        let points = match cfg.usize("ode_points")? {
            Some(p) => p,
            None => ((setup.profile.width() / 1e-3).ceil() as usize).max(2000),
        };
        report.note("ode_points", points).column("E_ode", "energy");
        Some(
            direct_ode_eigenvalues(&setup.profile, points)
                .map_err(|e| CliError::from(e))?,
        )
    } else {
        None
    };

    for (n, state) in states.iter().enumerate() {
        let mut row = vec![Some(Value::Int(n as i64)), cell(state.energy), cell(state.above_bottom), Some(state.nodes.into())];
        if let Some(r) = &rect {
            row.push(r.get(n).copied().and_then(cell));
        }
        if let Some(o) = &ode {
            row.push(o.get(n).copied().and_then(cell));
        }
        report.rows.push(row);
    }
    Ok(report)
}

pub fn eigenstate(cfg: &RunConfig) -> Result<Report, CliError> {
    let setup = build_profile(cfg)?;
    let (seg, _, delta_x) = segment(cfg, &setup)?;
    let level = cfg.usize("level")?.unwrap_or(0);
    let scan_points = cfg.usize("scan_points")?.unwrap_or(DEFAULT_SCAN_POINTS);
    let levels = eigenvalues(&seg, scan_points)?;
    let Some(target) = levels.get(level) else {
        let available = if levels.is_empty() {
            "none (the profile has no bound states)".to_string()
        } else {
            let listed: Vec<String> = levels.iter().enumerate().map(|(i, l)| format!("{i} (E = {})", l.energy)).collect();
            listed.join(", ")
        };
        return Err(CliError::Config(format!("key `level` = {level} is out of range; available levels: {available}")));
    };

    let pad = 0.5 * setup.profile.width();
    let lo = cfg.f64_or("grid_min", setup.profile.x_min - pad)?;
    let hi = cfg.f64_or("grid_max", setup.profile.x_max + pad)?;
    if !(hi > lo) {
        return Err(cfg.invalid("grid_max", &format!("must exceed grid_min = {lo}")));
    }
    let points = cfg.usize("x_points")?.unwrap_or(1001);
    if points < 2 {
        return Err(cfg.invalid("x_points", "must be at least 2"));
    }
    let step = (hi - lo) / (points - 1) as f64;
    let grid: Vec<f64> = (0..points).map(|i| if i + 1 == points { hi } else { lo + step * i as f64 }).collect();
    let state = eigenfunction(&seg, target.energy, &grid)?;

    let mut report = Report::new("eigenfunction");
    describe(&mut report, &setup, &seg, delta_x);
    report
        .note("level", level)
        .note("energy", state.energy)
        .note("energy_above_bottom", state.above_bottom)
        .note("nodes", state.nodes);
    report.column("x", "length").column("psi", "length^-1/2");

    let overlay = match setup.rect_well {
        Some((depth, width, center)) => {
            let spec = RectangularWellSpec::new(depth, width, setup.mass, setup.hbar)?;
            if level < spec.state_count() {
                let exact = RectEigenfunction::new(&spec, level, center)?;
                let values: Vec<f64> = grid.iter().map(|&x| exact.eval(x)).collect();
                let overlap: f64 = state.samples.iter().zip(&values).map(|((_, a), b)| a * b).sum();
                let sign = if overlap < 0.0 { -1.0 } else { 1.0 };
                report.note("rect_energy_above_bottom", exact.energy).column("psi_rect", "length^-1/2");
                Some(values.into_iter().map(|v| sign * v).collect::<Vec<_>>())
            } else {
                None
            }
        }
        None => None,
    };

    for (i, &(x, psi)) in state.samples.iter().enumerate() {
        let mut row = vec![cell(x), cell(psi)];
        if let Some(o) = &overlay {
            row.push(cell(o[i]));
        }
        report.rows.push(row);
    }
    Ok(report)
}

pub fn closed_form(cfg: &RunConfig) -> Result<Report, CliError> {
    let v0 = cfg.require_f64("v0")?;
    if v0 < 0.0 {
        return Err(cfg.invalid("v0", "is a strength here and must not be negative"));
    }
    let mass = cfg.positive("mass", Some(1.0))?;
    let hbar = cfg.positive("hbar", Some(1.0))?;
    let delta_x = cfg.positive("delta_x", Some(DEFAULT_DELTA_X))?;
    let params = UltraShortParams::new(mass, hbar, v0, delta_x)?;
    let e_max = cfg.positive("e_max", None)?;
    let points = cfg.usize("points")?.unwrap_or(1000);
    let energies = energy_grid(cfg, Some(e_max / points.max(1) as f64))?;
    if energies[0] <= 0.0 {
        return Err(cfg.invalid("e_min", "must be positive for scattering"));
    }

    let k0 = params.delta_strength();
    let bound = bound_energy_ultrashort(&params)?;
    let (peak_e, peak_t) = ramsauer_peak(&params)?;

    let mut report = Report::new("closed-form");
    report
        .note("v0", v0)
        .note("delta_x", delta_x)
        .note("mass", mass)
        .note("hbar", hbar)
        .note("delta_strength", k0)
        .note("bound_energy", bound.energy)
        .note("binds", bound.binds);
    if k0 > 0.0 {
        let (e_dirac, _) = dirac_delta_bound(mass, hbar, k0)?;
        report.note("dirac_bound_energy", e_dirac);
    }
    report.note("ramsauer_peak_energy", peak_e).note("ramsauer_peak_transmission", peak_t);
    report
        .column("E", "energy")
        .column("T_barrier", "1")
        .column("R_barrier", "1")
        .column("T_well", "1")
        .column("R_well", "1")
        .column("T_rect_barrier", "1")
        .column("T_dirac", "1");

    for &e in &energies {
        let barrier = transmission_barrier_ultrashort(&params, e)?;
        let well = transmission_well_ultrashort(&params, e)?;
        let rect = if v0 > 0.0 { Some(transmission_rectangular(mass, hbar, v0, delta_x, e)?) } else { None };
        let dirac = if k0 > 0.0 { Some(dirac_delta_transmission(mass, hbar, k0, e)?) } else { None };
        report.rows.push(vec![
            cell(e),
            cell(barrier.transmission),
            cell(barrier.reflection),
            cell(well.transmission),
            cell(well.reflection),
            rect.and_then(cell),
            dirac.and_then(cell),
        ]);
    }
    Ok(report)
}

pub fn laplace(cfg: &RunConfig) -> Result<Report, CliError> {
    let mass = cfg.positive("mass", Some(1.0))?;
    let hbar = cfg.positive("hbar", Some(1.0))?;
    let v0 = cfg.f64_or("v0", 0.0)?;
    let delta_x = cfg.f64_or("delta_x", DEFAULT_DELTA_X)?;
    if delta_x < 0.0 {
        return Err(cfg.invalid("delta_x", "must not be negative"));
    }
    let query = LaplaceQuery::new(mass, hbar, v0, delta_x)?;
    let s = Complex64::new(cfg.f64_or("s", 1.0)?, cfg.f64_or("s_im", 0.0)?);
    if !(s.re > 0.0) {
        return Err(cfg.invalid("s", "must have a positive real part"));
    }
    let center = cfg.f64_or("packet_center", -3.0)?;
    let sigma = cfg.positive("packet_width", Some(1.0))?;
    let k0 = cfg.f64_or("packet_k0", 0.0)?;
    let packet = InitialPacket::gaussian(center, sigma, k0).map_err(|e| CliError::Config(format!("packet keys: {e}")))?;

    let lo = cfg.f64_or("x_min", -10.0)?;
    let hi = cfg.f64_or("x_max", 10.0)?;
    if !(hi > lo) {
        return Err(cfg.invalid("x_max", &format!("must exceed x_min = {lo}")));
    }
    let points = cfg.usize("x_points")?.unwrap_or(201);
    if points < 2 {
        return Err(cfg.invalid("x_points", "must be at least 2"));
    }
    let step = (hi - lo) / (points - 1) as f64;
    let grid: Vec<f64> = (0..points).map(|i| if i + 1 == points { hi } else { lo + step * i as f64 }).collect();

    let denominator = query.denominator(s)?;
    let values = grid
        .par_iter()
        .map(|&x| psi_laplace(x, s, &packet, &query))
        .collect::<Result<Vec<_>, _>>()?;

    let mut report = Report::new("laplace");
    report
        .note("v0", v0)
        .note("delta_x", delta_x)
        .note("mass", mass)
        .note("hbar", hbar)
        .note("s_re", s.re)
        .note("s_im", s.im)
        .note("packet_center", center)
        .note("packet_width", sigma)
        .note("packet_k0", k0)
        .note("denominator_abs", denominator.norm());
    for big in [1e2, 1e3, 1e4] {
        let sb = Complex64::new(big, 0.0);
        let residual = (sb * psi_laplace(center, sb, &packet, &query)? - packet.eval(center)).norm();
        report.note(&format!("initial_value_residual_s{big:e}"), residual);
    }
    report
        .column("x", "length")
        .column("psi_re", "length^-1/2 time")
        .column("psi_im", "length^-1/2 time")
        .column("psi_abs", "length^-1/2 time");
    for (x, v) in grid.iter().zip(values) {
        report.rows.push(vec![cell(*x), cell(v.re), cell(v.im), cell(v.norm())]);
    }
    Ok(report)
}
