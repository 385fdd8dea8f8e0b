//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails. Tolerances are fixed here.

// `!(x <= tol)` is deliberate: a NaN must fail.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

use std::f64::consts::FRAC_1_SQRT_2;
use std::process::Command;
use std::time::Instant;

use kratzer2d::cli::verify::{
    kummer_laguerre_error, laguerre_orthogonality_error, laguerre_recurrence_error, residual_ratio,
};
use kratzer2d::oracle::checks::max_deviation_from_identity;
use kratzer2d::oracle::{default_grid, fd_eigenvalues, normalization_integral, orthonormality_matrix};
use kratzer2d::spectrum::modified1_minus_shift_energy;
use kratzer2d::wavefun::default_r_max;
use kratzer2d::{
    bound_state, degeneracy_classes, energy_coulomb_limit, enumerate_levels, PhysicalConstants, PotentialSpec,
    QuantumNumbers, RadialWavefunction,
};

const ORACLE_TOL: f64 = 1e-3;
const ORACLE_CUSP_TOL: f64 = 1e-2;
const MACHINE_TOL: f64 = 4.0 * f64::EPSILON;
const REDUCTION_TOL: f64 = 1e-14;
const SHIFT_CONSTANCY_TOL: f64 = 1e-12;
const SHIFT_ORACLE_TOL: f64 = 1e-3;
const NORMALIZATION_TOL: f64 = 1e-8;
const OVERLAP_TOL: f64 = 1e-7;
const RESIDUAL_TOL: f64 = 1e-6;
const RECURRENCE_TOL: f64 = 1e-10;
const ORTHOGONALITY_TOL: f64 = 1e-8;
const KUMMER_TOL: f64 = 1e-10;
const PERTURBATION: f64 = 1e-2;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn units() -> PhysicalConstants {
    PhysicalConstants::default()
}

/// The four reference potentials: Kratzer and Mod1 with D0 = 1 (gamma^2 = 2),
/// Mod2 with q = 1 (delta^2 = 1) at g = 0 and g = 1/sqrt(2).
fn reference_potentials() -> Vec<(&'static str, PotentialSpec)> {
    vec![
        ("kratzer", PotentialSpec::kratzer(1.0, 1.0).unwrap()),
        ("mod1", PotentialSpec::modified1(1.0, 1.0).unwrap()),
        ("mod2 g=0", PotentialSpec::modified2(1.0, 1.0, 0.0).unwrap()),
        (
            "mod2 g=1/sqrt2",
            PotentialSpec::modified2(1.0, 1.0, FRAC_1_SQRT_2).unwrap(),
        ),
    ]
}

fn closed_form_vs_oracle() -> Outcome {
    let c = units();
    let jobs: Vec<(&str, PotentialSpec, i32)> = reference_potentials()
        .into_iter()
        .flat_map(|(name, spec)| (0..=3).map(move |m| (name, spec, m)))
        .collect();
    let results: Vec<Result<(f64, f64), String>> = std::thread::scope(|s| {
        let handles: Vec<_> = jobs
            .iter()
            .map(|&(name, spec, m)| {
                s.spawn(move || {
                    let grid = default_grid(&spec, &c, m, 4).map_err(|e| e.to_string())?;
                    let fd = fd_eigenvalues(&spec, &c, m, 4, grid).map_err(|e| format!("{name} m={m}: {e}"))?;
                    let mut worst = 0.0f64;
                    for (n, e_fd) in fd.refined_eigenvalues.iter().enumerate() {
                        // the radial problem depends on m only through m^2
                        for sign in [1, -1] {
                            let exact = bound_state(&spec, &c, QuantumNumbers::new(n as u32, sign * m))
                                .unwrap()
                                .energy;
                            worst = worst.max((e_fd / exact - 1.0).abs());
                        }
                    }
                    let cusp = matches!(spec, PotentialSpec::ModifiedKratzer2 { g, .. } if g == 0.0) && m == 0;
                    Ok((worst, if cusp { ORACLE_CUSP_TOL } else { ORACLE_TOL }))
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().unwrap()).collect()
    });
    let mut worst_ratio = 0.0f64;
    let mut worst_err = 0.0f64;
    for ((name, _, m), r) in jobs.iter().zip(results) {
        let (err, tol) = r?;
        if !(err <= tol) {
            return Err(format!("{name} m={m}: relative error {err:.3e} > {tol:.0e}"));
        }
        worst_ratio = worst_ratio.max(err / tol);
        worst_err = worst_err.max(err);
    }
    Ok(format!(
        "{} (potential, |m|) pairs, n<=3: worst relative error {worst_err:.2e} (worst error/tolerance {worst_ratio:.1e})",
        jobs.len()
    ))
}

fn coulomb_factor_of_four() -> Outcome {
    let c = units();
    let spec = PotentialSpec::modified2(1.0, 1.0, 0.0).unwrap();
    let e2d = bound_state(&spec, &c, QuantumNumbers::new(0, 0)).unwrap().energy;
    let e2d_limit = energy_coulomb_limit(&spec, &c, 0).unwrap();
    // 3D hydrogen-like ground level for V = -q r0 / r: -mu (q r0)^2 / (2 hbar^2)
    let (q, r0) = (1.0, 1.0);
    let e3d = -c.mu * (q * r0) * (q * r0) / (2.0 * c.hbar * c.hbar);
    let closed = [
        (e2d + 2.0).abs(),
        (e2d_limit + 2.0).abs(),
        (e2d - 4.0 * e3d).abs() / 2.0,
    ];
    if closed.iter().any(|&d| !(d <= MACHINE_TOL)) {
        return Err(format!("closed form E_2D={e2d:e} vs 4*E_3D={:e}", 4.0 * e3d));
    }
    let grid = default_grid(&spec, &c, 0, 1).map_err(|e| e.to_string())?;
    let fd = fd_eigenvalues(&spec, &c, 0, 1, grid)
        .map_err(|e| e.to_string())?
        .refined_eigenvalues[0];
    let rel = (fd / (4.0 * e3d) - 1.0).abs();
    if !(rel <= ORACLE_CUSP_TOL) {
        return Err(format!("oracle ground level {fd} vs -2: relative error {rel:.3e}"));
    }
    Ok(format!(
        "E_2D={e2d} = 4 x E_3D={e3d} (closed form exact); oracle {fd:.10} (rel.err {rel:.1e})"
    ))
}

fn accidental_degeneracy() -> Outcome {
    let c = units();
    let spec = PotentialSpec::modified2(1.0, 1.0, 0.0).unwrap();
    let levels = enumerate_levels(&spec, &c, 3, 3).map_err(|e| e.to_string())?;
    let classes = degeneracy_classes(&levels, 1e-10);
    let sizes: Vec<usize> = classes.iter().take(4).map(Vec::len).collect();
    if sizes != [1, 3, 5, 7] {
        return Err(format!("lowest class sizes {sizes:?}"));
    }
    for (big_n, class) in classes.iter().take(4).enumerate() {
        if class.iter().any(|s| s.qn.n + s.qn.abs_m() != big_n as u32) {
            return Err(format!("class {big_n} mixes principal numbers"));
        }
    }
    Ok(format!("classes N=0..3 have sizes {sizes:?}"))
}

fn reduction_identities() -> Outcome {
    let c = units();
    let mut worst_mod2 = 0.0f64;
    let mut worst_shift = 0.0f64;
    for (d0, r0) in [(1.0, 1.0), (0.3, 2.0), (5.0, 0.7)] {
        let kr = PotentialSpec::kratzer(d0, r0).unwrap();
        let m1 = PotentialSpec::modified1(d0, r0).unwrap();
        let m2 = PotentialSpec::modified2(2.0 * d0, r0, FRAC_1_SQRT_2).unwrap();
        let ground_shift = bound_state(&m1, &c, QuantumNumbers::new(0, 0)).unwrap().energy
            - bound_state(&kr, &c, QuantumNumbers::new(0, 0)).unwrap().energy;
        for n in 0..=5 {
            for m in -5..=5 {
                let qn = QuantumNumbers::new(n, m);
                let ek = bound_state(&kr, &c, qn).unwrap().energy;
                let e2 = bound_state(&m2, &c, qn).unwrap().energy;
                worst_mod2 = worst_mod2.max((e2 - ek).abs() / ek.abs());
                let e1 = bound_state(&m1, &c, qn).unwrap().energy;
                worst_shift = worst_shift.max(((e1 - ek) - ground_shift).abs() / d0);
            }
        }
    }
    if !(worst_mod2 <= REDUCTION_TOL) {
        return Err(format!("mod2(g^2=1/2) vs kratzer: {worst_mod2:.3e}"));
    }
    if !(worst_shift <= SHIFT_CONSTANCY_TOL) {
        return Err(format!("mod1 - kratzer not constant: spread {worst_shift:.3e}"));
    }

    let d0 = 1.0;
    let kr = PotentialSpec::kratzer(d0, 1.0).unwrap();
    let m1 = PotentialSpec::modified1(d0, 1.0).unwrap();
    let qn = QuantumNumbers::new(0, 0);
    let ek = bound_state(&kr, &c, qn).unwrap().energy;
    let grid = default_grid(&m1, &c, 0, 1).map_err(|e| e.to_string())?;
    let fd = fd_eigenvalues(&m1, &c, 0, 1, grid)
        .map_err(|e| e.to_string())?
        .refined_eigenvalues[0];
    let shift = fd - ek;
    let rel_plus = (shift / d0 - 1.0).abs();
    let rel_minus = (shift / -d0 - 1.0).abs();
    let minus_energy = modified1_minus_shift_energy(&m1, &c, qn).unwrap();
    println!(
        "    mod1 shift adjudication: oracle E0={fd:.10}, E_K+D0={:.10}, E_K-D0={minus_energy:.10}; \
         oracle shift {shift:.10} (rel.err vs +D0 {rel_plus:.1e}, vs -D0 {rel_minus:.1e})",
        ek + d0
    );
    if !(rel_plus <= SHIFT_ORACLE_TOL) {
        return Err(format!("oracle shift {shift} is not +D0"));
    }
    Ok(format!(
        "mod2 vs kratzer worst {worst_mod2:.1e}; mod1-kratzer constant to {worst_shift:.1e}; oracle shift = +D0 (rel.err {rel_plus:.1e})"
    ))
}

fn wavefunction_analytics() -> Outcome {
    let c = units();
    let mut worst_norm = 0.0f64;
    let mut worst_overlap = 0.0f64;
    let mut worst_residual = 0.0f64;
    let mut states = 0;
    for (name, spec) in reference_potentials() {
        for m in -3..=3 {
            for n in 0..=4 {
                let state = bound_state(&spec, &c, QuantumNumbers::new(n, m)).unwrap();
                let norm = normalization_integral(&state, 1e-12).map_err(|e| e.to_string())?;
                worst_norm = worst_norm.max((norm - 1.0).abs());
                worst_residual = worst_residual.max(residual_ratio(&state, &spec, &c));
                let nodes = RadialWavefunction::new(state).sign_changes(default_r_max(&state), 20_000);
                if nodes != n as usize {
                    return Err(format!("{name} n={n} m={m}: {nodes} nodes"));
                }
                states += 1;
            }
            if m >= 0 {
                let g = orthonormality_matrix(&spec, &c, m, 4).map_err(|e| e.to_string())?;
                worst_overlap = worst_overlap.max(max_deviation_from_identity(&g));
            }
        }
    }
    let fig = bound_state(
        &PotentialSpec::kratzer(1.0, 1.0).unwrap(),
        &c,
        QuantumNumbers::new(3, 1),
    )
    .unwrap();
    let fig_nodes = RadialWavefunction::new(fig).sign_changes(default_r_max(&fig), 20_000);
    if fig_nodes != 3 {
        return Err(format!("n=3 m=1 state has {fig_nodes} nodes"));
    }
    if !(worst_norm <= NORMALIZATION_TOL) {
        return Err(format!("normalization off by {worst_norm:.3e}"));
    }
    if !(worst_overlap <= OVERLAP_TOL) {
        return Err(format!("overlap matrix off identity by {worst_overlap:.3e}"));
    }
    if !(worst_residual <= RESIDUAL_TOL) {
        return Err(format!("residual ratio {worst_residual:.3e}"));
    }
    Ok(format!(
        "{states} states: norm {worst_norm:.1e}, overlap {worst_overlap:.1e}, residual {worst_residual:.1e}, nodes = n (n=3 m=1 has 3)"
    ))
}

fn special_function_identities() -> Outcome {
    let recurrence = laguerre_recurrence_error(5000, 20_261_017);
    if !(recurrence <= RECURRENCE_TOL) {
        return Err(format!("recurrence error {recurrence:.3e}"));
    }
    let mut ortho = 0.0f64;
    for a in [-0.85, -0.5, 0.0, 0.5, 2.0 * 2f64.sqrt(), 7.25, 9.9] {
        ortho = ortho.max(laguerre_orthogonality_error(a, 8).map_err(|e| format!("a={a}: {e}"))?);
    }
    if !(ortho <= ORTHOGONALITY_TOL) {
        return Err(format!("orthogonality error {ortho:.3e}"));
    }
    let kummer = kummer_laguerre_error(2000, 7);
    if !(kummer <= KUMMER_TOL) {
        return Err(format!("1F1 proportionality error {kummer:.3e}"));
    }
    Ok(format!(
        "recurrence {recurrence:.1e}, orthogonality {ortho:.1e}, 1F1 {kummer:.1e}"
    ))
}

fn negative_control() -> Outcome {
    let c = units();
    let spec = PotentialSpec::kratzer(1.0, 1.0).unwrap();
    let state = bound_state(&spec, &c, QuantumNumbers::new(0, 0)).unwrap();
    let clean = residual_ratio(&state, &spec, &c);
    let perturbed = residual_ratio(&state.with_energy_offset(PERTURBATION), &spec, &c);
    if !(clean <= RESIDUAL_TOL && perturbed > RESIDUAL_TOL) {
        return Err(format!("residual ratio clean {clean:.3e}, perturbed {perturbed:.3e}"));
    }
    let bin = env!("CARGO_BIN_EXE_kratzer2d");
    let run = |extra: &[&str]| {
        Command::new(bin)
            .arg("verify")
            .args(extra)
            .env_remove("KRATZER2D_CONFIG")
            .output()
            .map_err(|e| e.to_string())
    };
    let good = run(&[])?;
    let bad = run(&["--energy-offset", "0.01"])?;
    let text = String::from_utf8_lossy(&bad.stdout);
    if good.status.code() != Some(0) {
        return Err(format!("unperturbed verify exited {:?}", good.status.code()));
    }
    if bad.status.success() || !text.contains("[FAIL] (c) radial equation residual") {
        return Err(format!("perturbed verify exited {:?}", bad.status.code()));
    }
    Ok(format!(
        "residual ratio {clean:.1e} -> {perturbed:.1e}; verify exits 0 clean, {} perturbed",
        bad.status.code().unwrap_or(-1)
    ))
}

fn main() {
    let criteria: [Criterion; 7] = [
        ("closed form vs finite-difference oracle", closed_form_vs_oracle),
        ("2D coulomb ground level is 4x the 3D one", coulomb_factor_of_four),
        ("accidental degeneracy 1, 3, 5, 7", accidental_degeneracy),
        ("reduction identities and mod1 shift sign", reduction_identities),
        (
            "wavefunction normalization, orthogonality, residual, nodes",
            wavefunction_analytics,
        ),
        ("special-function identities", special_function_identities),
        ("negative control", negative_control),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(check).unwrap_or_else(|_| Err("panicked".to_string()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {}: PASS {name} [{secs:.1}s]: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {}: FAIL {name} [{secs:.1}s]: {detail}", i + 1);
            }
        }
    }
    println!(
        "acceptance: {}/{} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
