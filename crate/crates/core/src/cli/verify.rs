//! Full verification run: special-function identities, quadrature checks of
//! normalization and orthogonality, ODE residuals, finite-difference oracle
//! agreement, and the reduction identities between the three potentials.

use std::f64::consts::FRAC_1_SQRT_2;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::Serialize;

use super::commands::oracle_grid;
use super::config::{OutputFormat, RunConfig};
use super::output::{fmt_f64, to_json};
use crate::error::Result;
use crate::oracle::checks::max_deviation_from_identity;
use crate::oracle::quadrature::{exp_poly_tail, integrate_radial};
use crate::oracle::{fd_eigenvalues, normalization_integral, ode_residual, orthonormality_matrix, residual_samples};
use crate::params::{derive_dimensionless, PhysicalConstants, PotentialKind, PotentialSpec, QuantumNumbers};
use crate::specfun::{kummer_1f1, laguerre, log_factorial, log_gamma};
use crate::spectrum::{bound_state, energy_coulomb_limit, modified1_minus_shift_energy, BoundState};
use crate::wavefun::radial_value;

pub const RECURRENCE_TOL: f64 = 1e-10;
pub const LAGUERRE_ORTHO_TOL: f64 = 1e-8;
pub const KUMMER_TOL: f64 = 1e-10;
pub const NORMALIZATION_TOL: f64 = 1e-8;
pub const OVERLAP_TOL: f64 = 1e-7;
pub const RESIDUAL_TOL: f64 = 1e-6;
pub const COULOMB_CUSP_TOL: f64 = 1e-2;
pub const REDUCTION_TOL: f64 = 1e-14;
pub const SIGN_ADJUDICATION_TOL: f64 = 1e-3;

const SEED: u64 = 0x004b_7261_747a_6572;
const RECURRENCE_SAMPLES: usize = 2000;
const KUMMER_SAMPLES: usize = 500;
const RESIDUAL_POINTS: usize = 200;

#[derive(Debug, Clone, Serialize)]
pub struct CheckOutcome {
    pub section: &'static str,
    pub name: String,
    pub passed: bool,
    pub measured: f64,
    pub threshold: f64,
    pub detail: String,
}

/// The first modified Kratzer ground level under both sign conventions next
/// to the finite-difference value.
#[derive(Debug, Clone, Serialize)]
pub struct SignAdjudication {
    pub d0: f64,
    pub kratzer_energy: f64,
    pub plus_d0_energy: f64,
    pub minus_d0_energy: f64,
    pub oracle_energy: f64,
    pub relative_error_plus: f64,
    pub relative_error_minus: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub config: RunConfig,
    pub checks: Vec<CheckOutcome>,
    pub sign_adjudication: SignAdjudication,
}

impl VerifyReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn render(&self, format: OutputFormat) -> Result<String> {
        match format {
            OutputFormat::Json => to_json(self),
            OutputFormat::Csv => Ok(self.render_text()),
        }
    }

    fn render_text(&self) -> String {
        let cfg = &self.config;
        let mut out = format!(
            "verification: potential={} D0={} q={} g={} r0={} hbar={} mu={} n_max={} m_max={}\n",
            cfg.potential,
            fmt_f64(cfg.d0),
            fmt_f64(cfg.q),
            fmt_f64(cfg.g),
            fmt_f64(cfg.r0),
            fmt_f64(cfg.hbar),
            fmt_f64(cfg.mu),
            cfg.n_max,
            cfg.m_max
        );
        if cfg.energy_offset != 0.0 {
            out.push_str(&format!("energy offset applied: {}\n", fmt_f64(cfg.energy_offset)));
        }
        for c in &self.checks {
            out.push_str(&format!(
                "[{}] ({}) {}: measured={:.3e} threshold={:.1e} {}\n",
                if c.passed { "PASS" } else { "FAIL" },
                c.section,
                c.name,
                c.measured,
                c.threshold,
                c.detail
            ));
        }
        let s = &self.sign_adjudication;
        out.push_str(&format!(
            "mod1 ground level (D0={}): E_kratzer+D0={} E_kratzer-D0={} oracle={} rel.err(+D0)={:.3e} rel.err(-D0)={:.3e}\n",
            fmt_f64(s.d0),
            fmt_f64(s.plus_d0_energy),
            fmt_f64(s.minus_d0_energy),
            fmt_f64(s.oracle_energy),
            s.relative_error_plus,
            s.relative_error_minus
        ));
        let passed = self.checks.iter().filter(|c| c.passed).count();
        out.push_str(&format!("summary: {passed}/{} checks passed\n", self.checks.len()));
        out
    }
}

fn outcome(
    section: &'static str,
    name: impl Into<String>,
    measured: f64,
    threshold: f64,
    detail: String,
) -> CheckOutcome {
    CheckOutcome {
        section,
        name: name.into(),
        passed: measured <= threshold,
        measured,
        threshold,
        detail,
    }
}

/// Worst `|x L_n - ((2n+a+1) L_n - (n+1) L_{n+1} - (n+a) L_{n-1})| / max(1, |L_n| x)`
/// over seeded random `n in [1, 30]`, `a in (-0.9, 10)`, `x in [0, 50]`.
pub fn laguerre_recurrence_error(samples: usize, seed: u64) -> f64 {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut worst = 0.0f64;
    for _ in 0..samples {
        let n: u32 = rng.gen_range(1..=30);
        let a: f64 = rng.gen_range(-0.9..10.0);
        let x: f64 = rng.gen_range(0.0..=50.0);
        let l = laguerre(n, a, x).unwrap_or(f64::NAN);
        let lp = laguerre(n + 1, a, x).unwrap_or(f64::NAN);
        let lm = laguerre(n - 1, a, x).unwrap_or(f64::NAN);
        let nf = f64::from(n);
        let rhs = (2.0 * nf + a + 1.0) * l - (nf + 1.0) * lp - (nf + a) * lm;
        let err = (x * l - rhs).abs() / (l.abs() * x).max(1.0);
        worst = worst.max(if err.is_nan() { f64::INFINITY } else { err });
    }
    worst
}

/// Worst relative deviation of `int x^a e^{-x} L_n^a L_n'^a dx` from
/// `delta_nn' Gamma(n+a+1)/n!`, off-diagonal terms scaled by the geometric
/// mean of the two norms.
pub fn laguerre_orthogonality_error(a: f64, n_max: u32) -> Result<f64> {
    let norm = |n: u32| -> Result<f64> { Ok((log_gamma(f64::from(n) + a + 1.0)? - log_factorial(n)).exp()) };
    let r_max = exp_poly_tail(a + 2.0 * f64::from(n_max), 20.0);
    let mut worst = 0.0f64;
    for i in 0..=n_max {
        for j in i..=n_max {
            let f = |x: f64| (-x).exp() * laguerre(i, a, x).unwrap_or(f64::NAN) * laguerre(j, a, x).unwrap_or(f64::NAN);
            let v = if a < 0.0 {
                // t = x^(a+1) absorbs the singular weight: x^a dx = dt / (a+1)
                let p = 1.0 / (a + 1.0);
                integrate_radial(|t| f(t.powf(p)), r_max.powf(a + 1.0), 1e-12)? * p
            } else {
                integrate_radial(|x| x.powf(a) * f(x), r_max, 1e-12)?
            };
            let err = if i == j {
                (v / norm(i)? - 1.0).abs()
            } else {
                v.abs() / (norm(i)? * norm(j)?).sqrt()
            };
            worst = worst.max(err);
        }
    }
    Ok(worst)
}

/// Worst `|L_n^a(x) n! Gamma(a+1) / Gamma(n+a+1) - 1F1(-n; a+1; x)| / max(|lhs|, |rhs|, 1)`
/// over seeded random `n <= 10`, `a in (-0.9, 10)`, `x in [0, 20]`.
pub fn kummer_laguerre_error(samples: usize, seed: u64) -> f64 {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut worst = 0.0f64;
    for _ in 0..samples {
        let n: u32 = rng.gen_range(0..=10);
        let a: f64 = rng.gen_range(-0.9..10.0);
        let x: f64 = rng.gen_range(0.0..=20.0);
        let nf = f64::from(n);
        let log_ratio =
            log_factorial(n) + log_gamma(a + 1.0).unwrap_or(f64::NAN) - log_gamma(nf + a + 1.0).unwrap_or(f64::NAN);
        let lhs = laguerre(n, a, x).unwrap_or(f64::NAN) * log_ratio.exp();
        let rhs = kummer_1f1(-nf, a + 1.0, x).unwrap_or(f64::NAN);
        let err = (lhs - rhs).abs() / lhs.abs().max(rhs.abs()).max(1.0);
        worst = worst.max(if err.is_nan() { f64::INFINITY } else { err });
    }
    worst
}

/// `max |residual| / (|E| max |phi|)` on 200 points of `(0.05 r0, 30 r0)`.
pub fn residual_ratio(state: &BoundState, spec: &PotentialSpec, c: &PhysicalConstants) -> f64 {
    let r0 = spec.r0();
    let pts = residual_samples(0.05 * r0, 30.0 * r0, RESIDUAL_POINTS);
    let max_phi = pts.iter().map(|&r| radial_value(state, r).abs()).fold(0.0, f64::max);
    let worst = ode_residual(state, spec, c, &pts)
        .iter()
        .fold(0.0f64, |m, v| m.max(v.abs()));
    worst / (state.energy.abs() * max_phi)
}

fn is_pure_coulomb(spec: &PotentialSpec, m: i32) -> bool {
    matches!(*spec, PotentialSpec::ModifiedKratzer2 { g, .. } if g == 0.0) && m == 0
}

/// Runs every check for the configured potential.
pub fn run_verify(cfg: &RunConfig) -> Result<VerifyReport> {
    let spec = cfg.potential_spec()?;
    let c = cfg.constants()?;
    let offset = cfg.energy_offset;
    let m_max = i32::try_from(cfg.m_max).unwrap_or(i32::MAX);
    let mut checks = Vec::new();

    // (a) special functions
    checks.push(outcome(
        "a",
        "laguerre three-term recurrence",
        laguerre_recurrence_error(RECURRENCE_SAMPLES, SEED),
        RECURRENCE_TOL,
        format!("{RECURRENCE_SAMPLES} samples, n<=30, a in (-0.9,10), x in [0,50]"),
    ));
    let mut upper_indices = vec![0.0, 0.5];
    for m in [0, m_max] {
        let p = derive_dimensionless(&spec, &c, QuantumNumbers::new(0, m))?;
        upper_indices.push(2.0 * p.exponent());
    }
    for a in upper_indices {
        checks.push(outcome(
            "a",
            format!("laguerre orthogonality a={a:.6}"),
            laguerre_orthogonality_error(a, 8)?,
            LAGUERRE_ORTHO_TOL,
            "n,n'<=8".to_string(),
        ));
    }
    checks.push(outcome(
        "a",
        "1F1 / laguerre proportionality",
        kummer_laguerre_error(KUMMER_SAMPLES, SEED + 1),
        KUMMER_TOL,
        format!("{KUMMER_SAMPLES} samples, n<=10, x in [0,20]"),
    ));

    // (b) normalization and orthogonality, (c) residuals
    let mut worst_norm = (0.0f64, QuantumNumbers::new(0, 0));
    let mut worst_res = (0.0f64, QuantumNumbers::new(0, 0));
    for n in 0..=cfg.n_max {
        for m in -m_max..=m_max {
            let qn = QuantumNumbers::new(n, m);
            let state = bound_state(&spec, &c, qn)?.with_energy_offset(offset);
            let norm_err = (normalization_integral(&state, 1e-12)? - 1.0).abs();
            if norm_err >= worst_norm.0 {
                worst_norm = (norm_err, qn);
            }
            let ratio = residual_ratio(&state, &spec, &c);
            if ratio.is_nan() || ratio >= worst_res.0 {
                worst_res = (ratio, qn);
            }
        }
    }
    checks.push(outcome(
        "b",
        "radial normalization",
        worst_norm.0,
        NORMALIZATION_TOL,
        format!("worst state n={} m={}", worst_norm.1.n, worst_norm.1.m),
    ));
    let overlap_n = cfg.n_max.min(8);
    for m in 0..=m_max {
        let g = orthonormality_matrix(&spec, &c, m, overlap_n)?;
        checks.push(outcome(
            "b",
            format!("overlap matrix m={m}"),
            max_deviation_from_identity(&g),
            OVERLAP_TOL,
            format!("n,n'<={overlap_n}"),
        ));
    }
    checks.push(outcome(
        "c",
        "radial equation residual",
        worst_res.0,
        RESIDUAL_TOL,
        format!(
            "max|res|/(|E| max|phi|), worst state n={} m={}",
            worst_res.1.n, worst_res.1.m
        ),
    ));

    // (d) finite-difference oracle
    let count = cfg.n_max as usize + 1;
    for m in 0..=m_max {
        let grid = oracle_grid(cfg, &spec, &c, m, count)?;
        let tol = if is_pure_coulomb(&spec, m) {
            cfg.tol.max(COULOMB_CUSP_TOL)
        } else {
            cfg.tol
        };
        match fd_eigenvalues(&spec, &c, m, count, grid) {
            Ok(res) => {
                let mut worst = 0.0f64;
                for (n, fd) in res.refined_eigenvalues.iter().enumerate() {
                    let exact = bound_state(&spec, &c, QuantumNumbers::new(n as u32, m))?.energy + offset;
                    let err = (fd / exact - 1.0).abs();
                    worst = worst.max(if err.is_nan() { f64::INFINITY } else { err });
                }
                checks.push(outcome(
                    "d",
                    format!("oracle vs closed form m={m}"),
                    worst,
                    tol,
                    format!(
                        "levels n<={} observed order {:.2}, {} points, box {}",
                        cfg.n_max,
                        res.convergence_order,
                        grid.n_points,
                        fmt_f64(grid.box_faces().1)
                    ),
                ));
            }
            Err(e) => checks.push(CheckOutcome {
                section: "d",
                name: format!("oracle vs closed form m={m}"),
                passed: false,
                measured: f64::INFINITY,
                threshold: tol,
                detail: e.to_string(),
            }),
        }
    }

    // (e) reductions between potentials
    let r0 = cfg.r0;
    let d0 = match cfg.potential {
        PotentialKind::ModifiedKratzer2 => 0.5 * cfg.q,
        _ => cfg.d0,
    };
    let kratzer = PotentialSpec::kratzer(d0, r0)?;
    let mod1 = PotentialSpec::modified1(d0, r0)?;
    let as_mod2 = PotentialSpec::modified2(2.0 * d0, r0, FRAC_1_SQRT_2)?;
    let coulomb_q = match cfg.potential {
        PotentialKind::ModifiedKratzer2 => cfg.q,
        _ => 2.0 * cfg.d0,
    };
    let coulomb = PotentialSpec::modified2(coulomb_q, r0, 0.0)?;
    let mut kr_vs_mod2 = 0.0f64;
    let mut coulomb_chain = 0.0f64;
    let mut shift_spread = 0.0f64;
    for n in 0..=5u32 {
        for m in -5..=5 {
            let qn = QuantumNumbers::new(n, m);
            let ek = bound_state(&kratzer, &c, qn)?.energy;
            let e2 = bound_state(&as_mod2, &c, qn)?.energy;
            kr_vs_mod2 = kr_vs_mod2.max((ek - e2).abs() / ek.abs());
            let ec = bound_state(&coulomb, &c, qn)?.energy;
            let el = energy_coulomb_limit(&coulomb, &c, n + m.unsigned_abs())?;
            coulomb_chain = coulomb_chain.max((ec - el).abs() / el.abs());
            let e1 = bound_state(&mod1, &c, qn)?.energy;
            shift_spread = shift_spread.max(((e1 - ek) - d0).abs() / d0);
        }
    }
    checks.push(outcome(
        "e",
        "mod2(g^2=1/2, q=2D0) equals kratzer",
        kr_vs_mod2,
        REDUCTION_TOL,
        "n<=5, |m|<=5".to_string(),
    ));
    checks.push(outcome(
        "e",
        "mod2(g=0) equals coulomb N=n+|m| levels",
        coulomb_chain,
        REDUCTION_TOL,
        "n<=5, |m|<=5".to_string(),
    ));
    checks.push(outcome(
        "e",
        "mod1 minus kratzer is the constant D0",
        shift_spread,
        1e-12,
        "n<=5, |m|<=5".to_string(),
    ));
    let ground_2d = energy_coulomb_limit(&coulomb, &c, 0)?;
    let delta2 = derive_dimensionless(&coulomb, &c, QuantumNumbers::new(0, 0))?.delta2;
    let ground_3d = -coulomb.energy_unit(&c) * delta2 * delta2;
    checks.push(outcome(
        "e",
        "2D coulomb ground level is 4x the 3D one",
        (ground_2d / ground_3d - 4.0).abs() / 4.0,
        REDUCTION_TOL,
        format!("E_2D={} E_3D={}", fmt_f64(ground_2d), fmt_f64(ground_3d)),
    ));

    let qn0 = QuantumNumbers::new(0, 0);
    let kratzer_energy = bound_state(&kratzer, &c, qn0)?.energy;
    let plus = bound_state(&mod1, &c, qn0)?.energy + offset;
    let minus = modified1_minus_shift_energy(&mod1, &c, qn0)?;
    let grid = crate::oracle::default_grid(&mod1, &c, 0, 1)?;
    let oracle_energy = fd_eigenvalues(&mod1, &c, 0, 1, grid)?.refined_eigenvalues[0];
    let adjudication = SignAdjudication {
        d0,
        kratzer_energy,
        plus_d0_energy: plus,
        minus_d0_energy: minus,
        oracle_energy,
        relative_error_plus: (oracle_energy / plus - 1.0).abs(),
        relative_error_minus: (oracle_energy / minus - 1.0).abs(),
    };
    checks.push(outcome(
        "e",
        "oracle fixes the mod1 shift to +D0",
        adjudication.relative_error_plus,
        SIGN_ADJUDICATION_TOL,
        format!("oracle={} vs E_K+D0={}", fmt_f64(oracle_energy), fmt_f64(plus)),
    ));

    Ok(VerifyReport {
        config: cfg.clone(),
        checks,
        sign_adjudication: adjudication,
    })
}
