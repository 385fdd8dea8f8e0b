//! Subcommand bodies. Each returns the full output text so callers decide
//! where it goes.

use serde::Serialize;

use super::config::{OutputFormat, RunConfig};
use super::output::{fmt_f64, push_row, to_json};
use crate::error::Result;
use crate::oracle::{default_grid, fd_eigenvalues, FdGrid, OracleResult};
use crate::params::{PhysicalConstants, PotentialSpec, QuantumNumbers};
use crate::spectrum::{bound_state, degeneracy_classes, enumerate_levels, BoundState, DEFAULT_DEGENERACY_TOL};
use crate::wavefun::{default_r_max, density_grid, radial_value};

fn describe(spec: &PotentialSpec, c: &PhysicalConstants) -> String {
    let body = match *spec {
        PotentialSpec::Kratzer { d0, r0 } | PotentialSpec::ModifiedKratzer1 { d0, r0 } => {
            format!("D0={} r0={}", fmt_f64(d0), fmt_f64(r0))
        }
        PotentialSpec::ModifiedKratzer2 { q_over_rho, r0, g } => {
            format!("q={} r0={} g={}", fmt_f64(q_over_rho), fmt_f64(r0), fmt_f64(g))
        }
    };
    format!(
        "potential={} {body} hbar={} mu={}",
        spec.kind(),
        fmt_f64(c.hbar),
        fmt_f64(c.mu)
    )
}

#[derive(Serialize)]
struct LevelRow {
    n: u32,
    m: i32,
    energy: f64,
    k: f64,
    exponent: f64,
    scale: f64,
    log_norm: f64,
    degeneracy_class: usize,
    class_size: usize,
}

#[derive(Serialize)]
struct SpectrumDoc<'a> {
    potential: &'a PotentialSpec,
    constants: &'a PhysicalConstants,
    n_max: u32,
    m_max: u32,
    levels: Vec<LevelRow>,
    classes: Vec<Vec<QuantumNumbers>>,
}

/// Sorted level table with a degeneracy-class column.
pub fn spectrum(cfg: &RunConfig) -> Result<String> {
    let spec = cfg.potential_spec()?;
    let c = cfg.constants()?;
    let levels = enumerate_levels(&spec, &c, cfg.n_max, cfg.m_max)?;
    let classes = degeneracy_classes(&levels, DEFAULT_DEGENERACY_TOL);
    let mut rows = Vec::with_capacity(levels.len());
    for (idx, class) in classes.iter().enumerate() {
        for s in class {
            rows.push(LevelRow {
                n: s.qn.n,
                m: s.qn.m,
                energy: s.energy,
                k: s.k,
                exponent: s.exponent,
                scale: s.scale,
                log_norm: s.log_norm,
                degeneracy_class: idx,
                class_size: class.len(),
            });
        }
    }
    match cfg.format {
        OutputFormat::Json => to_json(&SpectrumDoc {
            potential: &spec,
            constants: &c,
            n_max: cfg.n_max,
            m_max: cfg.m_max,
            levels: rows,
            classes: classes.iter().map(|cl| cl.iter().map(|s| s.qn).collect()).collect(),
        }),
        OutputFormat::Csv => {
            let mut out = format!("# {}\n", describe(&spec, &c));
            out.push_str("n,m,energy,k,exponent,degeneracy_class,class_size\n");
            for r in rows {
                push_row(
                    &mut out,
                    &[
                        r.n.to_string(),
                        r.m.to_string(),
                        fmt_f64(r.energy),
                        fmt_f64(r.k),
                        fmt_f64(r.exponent),
                        r.degeneracy_class.to_string(),
                        r.class_size.to_string(),
                    ],
                );
            }
            Ok(out)
        }
    }
}

fn configured_state(cfg: &RunConfig) -> Result<(PotentialSpec, PhysicalConstants, BoundState)> {
    let spec = cfg.potential_spec()?;
    let c = cfg.constants()?;
    let state = bound_state(&spec, &c, cfg.quantum_numbers())?;
    Ok((spec, c, state))
}

#[derive(Serialize)]
struct WavefunctionDoc<'a> {
    potential: &'a PotentialSpec,
    constants: &'a PhysicalConstants,
    n: u32,
    m: i32,
    energy: f64,
    normalization: f64,
    exponent: f64,
    decay_scale: f64,
    r: Vec<f64>,
    phi: Vec<f64>,
}

/// Radial profile `phi(r)` on `nr` uniform samples of `[0, r_max]`.
pub fn wavefunction(cfg: &RunConfig) -> Result<String> {
    let (spec, c, state) = configured_state(cfg)?;
    let r_max = cfg.r_max.unwrap_or_else(|| default_r_max(&state));
    let r: Vec<f64> = (0..cfg.nr).map(|i| r_max * i as f64 / (cfg.nr - 1) as f64).collect();
    let phi: Vec<f64> = r.iter().map(|&x| radial_value(&state, x)).collect();
    match cfg.format {
        OutputFormat::Json => to_json(&WavefunctionDoc {
            potential: &spec,
            constants: &c,
            n: state.qn.n,
            m: state.qn.m,
            energy: state.energy,
            normalization: state.log_norm.exp(),
            exponent: state.exponent,
            decay_scale: state.scale,
            r,
            phi,
        }),
        OutputFormat::Csv => {
            let mut out = format!("# {} n={} m={}\n", describe(&spec, &c), state.qn.n, state.qn.m);
            out.push_str(&format!(
                "# energy={} normalization_C={} exponent={} decay_scale={}\n",
                fmt_f64(state.energy),
                fmt_f64(state.log_norm.exp()),
                fmt_f64(state.exponent),
                fmt_f64(state.scale)
            ));
            out.push_str("r,phi\n");
            for (x, p) in r.iter().zip(&phi) {
                push_row(&mut out, &[fmt_f64(*x), fmt_f64(*p)]);
            }
            Ok(out)
        }
    }
}

#[derive(Serialize)]
struct DensityDoc<'a> {
    potential: &'a PotentialSpec,
    constants: &'a PhysicalConstants,
    n: u32,
    abs_m: u32,
    r_max: f64,
    mass: f64,
    r: &'a [f64],
    phi: &'a [f64],
    density: &'a [Vec<f64>],
}

/// Polar grid of `|Psi|^2`. The output depends on `m` only through `|m|`.
pub fn density(cfg: &RunConfig) -> Result<String> {
    let (spec, c, state) = configured_state(cfg)?;
    let r_max = cfg.r_max.unwrap_or_else(|| default_r_max(&state));
    let grid = density_grid(&state, r_max, cfg.nr, cfg.nphi)?;
    match cfg.format {
        OutputFormat::Json => to_json(&DensityDoc {
            potential: &spec,
            constants: &c,
            n: state.qn.n,
            abs_m: state.qn.abs_m(),
            r_max,
            mass: grid.mass(),
            r: &grid.r_values,
            phi: &grid.phi_values,
            density: &grid.density,
        }),
        OutputFormat::Csv => {
            let mut out = format!(
                "# {} n={} abs_m={} mass={}\n",
                describe(&spec, &c),
                state.qn.n,
                state.qn.abs_m(),
                fmt_f64(grid.mass())
            );
            out.push_str("r,phi,density\n");
            for (i, r) in grid.r_values.iter().enumerate() {
                for (j, p) in grid.phi_values.iter().enumerate() {
                    push_row(&mut out, &[fmt_f64(*r), fmt_f64(*p), fmt_f64(grid.density[i][j])]);
                }
            }
            Ok(out)
        }
    }
}

/// Grid requested by the config, or the default sized for `count` levels.
pub fn oracle_grid(
    cfg: &RunConfig,
    spec: &PotentialSpec,
    c: &PhysicalConstants,
    m: i32,
    count: usize,
) -> Result<FdGrid> {
    match (cfg.r_max, cfg.grid_points) {
        (None, None) => default_grid(spec, c, m, count),
        (r_max, points) => {
            let auto = default_grid(spec, c, m, count)?;
            let r_max = r_max.unwrap_or_else(|| auto.box_faces().1);
            FdGrid::from_origin(r_max, points.unwrap_or(auto.n_points))
        }
    }
}

#[derive(Serialize)]
struct OracleDoc<'a> {
    potential: &'a PotentialSpec,
    constants: &'a PhysicalConstants,
    result: &'a OracleResult,
}

/// Raw finite-difference solve for `--m`, `n_max + 1` levels.
pub fn oracle(cfg: &RunConfig) -> Result<String> {
    let spec = cfg.potential_spec()?;
    let c = cfg.constants()?;
    let count = cfg.n_max as usize + 1;
    let grid = oracle_grid(cfg, &spec, &c, cfg.m, count)?;
    let result = fd_eigenvalues(&spec, &c, cfg.m, count, grid)?;
    match cfg.format {
        OutputFormat::Json => to_json(&OracleDoc {
            potential: &spec,
            constants: &c,
            result: &result,
        }),
        OutputFormat::Csv => {
            let (inner, outer) = grid.box_faces();
            let mut out = format!(
                "# {} m={} box=[{}, {}] n_points={} spacing={}\n",
                describe(&spec, &c),
                cfg.m,
                fmt_f64(inner),
                fmt_f64(outer),
                grid.n_points,
                fmt_f64(grid.spacing())
            );
            out.push_str("level,coarse,fine,richardson,observed_order\n");
            for k in 0..count {
                push_row(
                    &mut out,
                    &[
                        k.to_string(),
                        fmt_f64(result.eigenvalues[k]),
                        fmt_f64(result.fine_eigenvalues[k]),
                        fmt_f64(result.refined_eigenvalues[k]),
                        fmt_f64(result.level_orders[k]),
                    ],
                );
            }
            Ok(out)
        }
    }
}
