//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit status
//! if any criterion fails.

use std::process::ExitCode;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use ultrashort::closed_form::{
    bound_energy_ultrashort, bound_wavefunction_ultrashort, dirac_delta_bound, ramsauer_peak,
    transmission_barrier_ultrashort, transmission_rectangular, transmission_well_ultrashort,
};
use ultrashort::laplace::psi_laplace;
use ultrashort::transfer::{scattering_point, DEFAULT_SCAN_POINTS};
use ultrashort::{
    direct_ode_eigenvalues, eigenvalues, quad, rect_well_eigenvalues, total_transfer, Complex64,
    InitialPacket, LaplaceQuery, PotentialProfile, RectangularWellSpec, SegmentedProfile, UltraShortParams,
};

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

const SCHEME_ROWS: [(usize, f64, &[f64]); 4] = [
    (1, 0.05, &[19.5235]),
    (2, 1.05, &[2.96496, 10.6123, 19.5963]),
    (3, 2.05, &[0.954625, 3.90531, 8.12712, 14.2251, 19.6332]),
    (5, 4.05, &[0.27667, 1.10666, 2.49353, 4.56035, 6.66904, 9.67554, 13.0808, 16.8106, 19.6713]),
];

const RECT_ROWS: [(f64, &[f64]); 6] = [
    (0.05, &[19.5161]),
    (1.05, &[2.61562, 10.0498, 19.5865]),
    (2.05, &[0.87960, 3.49579, 7.76616, 13.4719, 19.622]),
    (3.05, &[0.435195, 1.73706, 3.89332, 6.87898, 10.6445, 15.0739, 19.6437]),
    (3.05, &[0.435195, 1.73706, 3.89332, 6.87898, 10.6445, 15.0739, 19.6437]),
    (4.05, &[0.258774, 1.0341, 2.32281, 4.119, 6.41269, 9.18687, 12.41, 16.0097, 19.6585]),
];

fn well_segments(depth: f64, width: f64, junctions: usize, half_width: f64) -> SegmentedProfile {
    PotentialProfile::rectangular(-depth, -width / 2.0, width / 2.0, 1.0)
        .and_then(|p| p.discretize(junctions, half_width))
        .expect("valid well")
}

fn criterion_1() -> Outcome {
    let mut worst: f64 = 0.0;
    let mut slowest: f64 = 0.0;
    for (junctions, width, expected) in SCHEME_ROWS {
        let start = Instant::now();
        let seg = well_segments(20.0, width, junctions, 0.025);
        let levels = match eigenvalues(&seg, DEFAULT_SCAN_POINTS) {
            Ok(l) => l,
            Err(e) => return outcome(false, format!("a = {width}: {e}")),
        };
        slowest = slowest.max(start.elapsed().as_secs_f64());
        if levels.len() != expected.len() {
            return outcome(false, format!("a = {width}: {} states, expected has {}", levels.len(), expected.len()));
        }
        for (l, p) in levels.iter().zip(expected) {
            worst = worst.max((l.above_bottom - p).abs());
        }
    }
    outcome(worst <= 5e-2 && slowest < 5.0, format!("max |dE| = {worst:.2e} (tol 5e-2), slowest row {slowest:.3} s"))
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let mut worst: f64 = 0.0;
    for (width, expected) in RECT_ROWS {
        let spec = RectangularWellSpec::new(20.0, width, 1.0, 1.0).expect("valid spec");
        let levels = rect_well_eigenvalues(&spec);
        if levels.len() != expected.len() {
            return outcome(false, format!("a = {width}: {} states, expected has {}", levels.len(), expected.len()));
        }
        for (l, p) in levels.iter().zip(expected) {
            worst = worst.max((l - p).abs());
        }
    }
    let elapsed = start.elapsed().as_secs_f64();
    outcome(worst <= 1e-3 && elapsed < 1.0, format!("max |dE| = {worst:.2e} (tol 1e-3), {elapsed:.3} s"))
}

fn criterion_3() -> Outcome {
    let start = Instant::now();
    let mut worst: f64 = 0.0;
    for dx in [0.07, 0.7] {
        let p = UltraShortParams::new(1.0, 1.0, 1.0, dx).expect("valid params");
        for (sign, closed) in [
            (1.0, transmission_barrier_ultrashort as fn(&UltraShortParams, f64) -> _),
            (-1.0, transmission_well_ultrashort),
        ] {
            let seg = SegmentedProfile::new(vec![-dx, dx], vec![0.0, sign, 0.0], vec![1.0; 3], dx, 1.0).expect("valid");
            for i in 1..=1000 {
                let e = 10.0 * i as f64 / 1000.0;
                let chain = scattering_point(&seg, e).ok().and_then(|s| s.point().copied());
                let Some(chain) = chain else {
                    return outcome(false, format!("no scattering point at E = {e}"));
                };
                let exact = closed(&p, e).expect("E > 0").transmission;
                worst = worst.max((chain.transmission - exact).abs());
            }
        }
    }
    let elapsed = start.elapsed().as_secs_f64();
    outcome(worst <= 1e-10 && elapsed < 1.0, format!("max |dT| = {worst:.2e} (tol 1e-10), {elapsed:.3} s"))
}

fn criterion_4() -> Outcome {
    let mut notes = Vec::new();
    let mut pass = true;
    for dx in [0.07, 0.7] {
        let p = UltraShortParams::new(1.0, 1.0, 1.0, dx).expect("valid params");
        let t_res = transmission_barrier_ultrashort(&p, 1.0).expect("E > 0").transmission;
        let grid: Vec<f64> = (1..=10_000).map(|i| i as f64 / 2_000.0).collect();
        let argmax = grid
            .iter()
            .map(|&e| (e, transmission_well_ultrashort(&p, e).expect("E > 0").transmission))
            .fold((0.0, -1.0), |a, b| if b.1 > a.1 { b } else { a })
            .0;
        let t_peak = transmission_well_ultrashort(&p, 1.0).expect("E > 0").transmission;
        let formula = 1.0 / (1.0 + 8.0 * dx * dx);
        let (e_peak, reported) = ramsauer_peak(&p).expect("valid");
        let ok = (t_res - 1.0).abs() <= 1e-12
            && argmax == 1.0
            && (t_peak - formula).abs() <= 1e-12
            && (reported - formula).abs() <= 1e-12
            && e_peak == 1.0;
        pass &= ok;
        notes.push(format!("dx={dx}: |T(V0)-1|={:.1e}, argmax={argmax:.4}, |Tpk-f|={:.1e}", (t_res - 1.0).abs(), (t_peak - formula).abs()));
    }
    outcome(pass, notes.join("; "))
}

fn criterion_5() -> Outcome {
    let rect = PotentialProfile::rectangular(2.0, -1.21, 1.21, 1.0).expect("valid");
    let grid: Vec<f64> = (1..4000).map(|i| 2.2 + 7.8 * i as f64 / 4000.0).collect();
    let sup = |junctions: usize| -> Result<f64, String> {
        let seg = rect.discretize(junctions, 0.02).map_err(|e| e.to_string())?;
        let mut worst: f64 = 0.0;
        for &e in &grid {
            let chain = scattering_point(&seg, e).map_err(|e| e.to_string())?;
            let t = chain.point().ok_or("below asymptote")?.transmission;
            let exact = transmission_rectangular(1.0, 1.0, 2.0, 1.21, e).map_err(|e| e.to_string())?;
            worst = worst.max((t - exact).abs());
        }
        Ok(worst)
    };
    match (sup(3), sup(6)) {
        (Ok(e3), Ok(e6)) => outcome(e6 < e3, format!("sup|dT| over (2.2, 10): 3 junctions {e3:.4e}, 6 junctions {e6:.4e}")),
        (Err(e), _) | (_, Err(e)) => outcome(false, e),
    }
}

fn criterion_6() -> Outcome {
    let dx = 0.07;
    let k0 = 0.14;
    let p = UltraShortParams::new(1.0, 1.0, k0 / (2.0 * dx), dx).expect("valid params");
    let (e_delta, delta) = dirac_delta_bound(1.0, 1.0, k0).expect("k0 > 0");
    let e_us = bound_energy_ultrashort(&p).expect("valid").energy;
    let us = bound_wavefunction_ultrashort(&p).expect("V0 > 0");
    let reach = 40.0 / (-2.0 * e_delta).sqrt();
    let q = quad::simpson_piecewise(
        |x| (us.eval(x) - delta.eval(x)).norm_sqr(),
        &[-reach, -dx, 0.0, dx, reach],
        1e-12,
    );
    let distance = q.value.sqrt();
    let rel = ((e_us - e_delta) / e_delta).abs();
    outcome(
        distance < 0.05 && rel < 0.05 && q.converged,
        format!("L2 distance {distance:.4e} (tol 5e-2), energy {e_us:.6} vs {e_delta:.6} ({:.2}%)", 100.0 * rel),
    )
}

fn criterion_7() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_7);
    let mut worst: f64 = 0.0;
    let samples = 100_000;
    for _ in 0..samples {
        let junctions = rng.gen_range(1..=8);
        let half_width = rng.gen_range(0.005..0.2);
        let mut breakpoints = Vec::with_capacity(2 * junctions);
        let mut x = rng.gen_range(-5.0..0.0);
        for _ in 0..junctions {
            breakpoints.push(x);
            breakpoints.push(x + 2.0 * half_width);
            x += 2.0 * half_width + rng.gen_range(0.05..2.0);
        }
        let n = 2 * junctions + 1;
        let potentials: Vec<f64> = (0..n).map(|_| rng.gen_range(-5.0..5.0)).collect();
        let masses: Vec<f64> = (0..n).map(|_| rng.gen_range(0.3..3.0)).collect();
        let seg = SegmentedProfile::new(breakpoints, potentials, masses, half_width, 1.0).expect("valid random profile");
        let top = seg.potentials[0].max(seg.potentials[n - 1]);
        let e = top + rng.gen_range(1e-3..20.0);
        match scattering_point(&seg, e) {
            Ok(entry) => match entry.point() {
                Some(p) => worst = worst.max((p.transmission + p.reflection - 1.0).abs()),
                None => return outcome(false, format!("E = {e} above both asymptotes was marked below")),
            },
            Err(err) => return outcome(false, err.to_string()),
        }
    }
    outcome(worst <= 1e-10, format!("{samples} samples, max |R+T-1| = {worst:.2e} (tol 1e-10)"))
}

fn criterion_8() -> Outcome {
    let start = Instant::now();
    let gaussian = PotentialProfile::gaussian(-5.0, 0.0, 4.0, -8.0, 8.0, 1.0).expect("valid");
    let reference = match direct_ode_eigenvalues(&gaussian, 16_000) {
        Ok(r) => r,
        Err(e) => return outcome(false, e.to_string()),
    };
    let seg = gaussian.discretize(32, 1e-3).expect("valid layout");
    let levels = match eigenvalues(&seg, DEFAULT_SCAN_POINTS) {
        Ok(l) => l,
        Err(e) => return outcome(false, e.to_string()),
    };
    let elapsed = start.elapsed().as_secs_f64();
    if levels.len() < 3 || reference.len() < 3 {
        return outcome(false, format!("found {} / {} levels", levels.len(), reference.len()));
    }
    let worst = levels.iter().zip(&reference).take(3).map(|(a, b)| (a.energy - b).abs()).fold(0.0, f64::max);
    outcome(
        worst <= 1e-2 && elapsed < 10.0,
        format!("lowest 3 levels max |dE| = {worst:.2e} (tol 1e-2), {elapsed:.3} s"),
    )
}

fn criterion_9() -> Outcome {
    let mut counts = Vec::new();
    for n in [3usize, 5, 9, 101] {
        let junctions = (n - 1) / 2;
        let seg = PotentialProfile::gaussian(-3.0, 0.0, 2.0, -6.0, 6.0, 1.0)
            .and_then(|p| p.discretize(junctions, 0.01))
            .expect("valid layout");
        let factors = total_transfer(&seg, 1.5).map(|t| t.factors).unwrap_or(0);
        counts.push((n, factors));
    }
    let pass = counts.iter().all(|&(n, f)| f == n - 1);
    let detail = counts.iter().map(|(n, f)| format!("N={n}: {f}")).collect::<Vec<_>>().join(", ");
    outcome(pass, detail)
}

fn criterion_10() -> Outcome {
    let q = LaplaceQuery::new(1.0, 1.0, 1.0, 0.07).expect("valid");
    let packet = InitialPacket::gaussian(0.0, 1.0, 0.0).expect("valid packet");
    let mut decreasing = true;
    let mut last_errors = Vec::new();
    for x in [-3.0, -1.5, -0.5, 0.75, 2.0] {
        let mut errs = Vec::new();
        for s in [1e2, 1e3, 1e4] {
            match psi_laplace(x, Complex64::new(s, 0.0), &packet, &q) {
                Ok(psi) => errs.push((s * psi - packet.eval(x)).norm()),
                Err(e) => return outcome(false, e.to_string()),
            }
        }
        decreasing &= errs[0] > errs[1] && errs[1] > errs[2];
        last_errors.push(errs[2]);
    }
    let bare = LaplaceQuery::new(1.0, 1.0, 0.0, 0.0).expect("valid");
    let mut worst: f64 = 0.0;
    for s in [Complex64::new(2.0, 0.0), Complex64::new(0.3, 4.0), Complex64::new(50.0, -7.0)] {
        for (x, x0) in [(1.0, -1.0), (0.1, 0.4), (-3.0, 2.5)] {
            let g0 = bare.free_green(x, s, x0).expect("Re s > 0");
            let g1 = bare.dressed_green(x, s, x0).expect("Re s > 0");
            worst = worst.max((g1 - g0).norm() / g0.norm());
        }
    }
    let max_last = last_errors.iter().cloned().fold(0.0, f64::max);
    outcome(
        decreasing && worst <= 1e-14,
        format!("IVT error decreasing at 5 points (max at s=1e4: {max_last:.2e}); |G1-G0|/|G0| = {worst:.1e}"),
    )
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("square-well scheme energies", criterion_1),
        ("square-well analytic energies", criterion_2),
        ("single-junction oracle equivalence", criterion_3),
        ("resonance and Ramsauer peak", criterion_4),
        ("convergence to the rectangle", criterion_5),
        ("Dirac-delta limit", criterion_6),
        ("flux conservation", criterion_7),
        ("ODE-oracle equivalence", criterion_8),
        ("complexity counter", criterion_9),
        ("Laplace module", criterion_10),
    ];
    let mut failures = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let result = run();
        if !result.pass {
            failures += 1;
        }
        let verdict = if result.pass { "PASS" } else { "FAIL" };
        println!("criterion {:>2} {verdict}: {name}: {}", i + 1, result.detail);
    }
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failures} criterion/criteria failed");
        ExitCode::FAILURE
    }
}
