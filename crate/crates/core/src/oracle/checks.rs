//! Residual, normalization and overlap checks of closed-form eigenstates.

use super::quadrature::integrate_radial;
use crate::error::{invalid, Result};
use crate::params::{PhysicalConstants, PotentialSpec, QuantumNumbers};
use crate::spectrum::{bound_state, BoundState};
use crate::wavefun::{default_r_max, radial_value};

/// Stencil step as a fraction of `min(r, r0)`.
pub const RESIDUAL_STEP: f64 = 2e-2;

// centered nine-point stencils, eighth order
const FIRST: [f64; 9] = [
    1.0 / 280.0,
    -4.0 / 105.0,
    1.0 / 5.0,
    -4.0 / 5.0,
    0.0,
    4.0 / 5.0,
    -1.0 / 5.0,
    4.0 / 105.0,
    -1.0 / 280.0,
];
const SECOND: [f64; 9] = [
    -1.0 / 560.0,
    8.0 / 315.0,
    -1.0 / 5.0,
    8.0 / 5.0,
    -205.0 / 72.0,
    8.0 / 5.0,
    -1.0 / 5.0,
    8.0 / 315.0,
    -1.0 / 560.0,
];

/// `phi'' + phi'/r - m^2 phi / r^2 + (2 mu / hbar^2)(E - V) phi` at each
/// sample point, derivatives of the analytic `phi` by centered stencils.
///
/// The step shrinks with `r` near the origin so the stencil stays inside
/// `(0, inf)` and resolves the `r^e` behaviour there.
pub fn ode_residual(
    state: &BoundState,
    spec: &PotentialSpec,
    c: &PhysicalConstants,
    sample_points: &[f64],
) -> Vec<f64> {
    let r0 = spec.r0();
    let m2 = f64::from(state.qn.m) * f64::from(state.qn.m);
    let factor = c.two_mu_over_hbar2();
    sample_points
        .iter()
        .map(|&r| {
            let h = RESIDUAL_STEP * r.min(r0);
            let f: Vec<f64> = (0..9).map(|i| radial_value(state, r + (i as f64 - 4.0) * h)).collect();
            let d1 = FIRST.iter().zip(&f).map(|(w, v)| w * v).sum::<f64>() / h;
            let d2 = SECOND.iter().zip(&f).map(|(w, v)| w * v).sum::<f64>() / (h * h);
            let f0 = f[4];
            d2 + d1 / r - m2 * f0 / (r * r) + factor * (state.energy - spec.value(r)) * f0
        })
        .collect()
}

/// `count` evenly spaced points on `[lo, hi]`.
pub fn residual_samples(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    if count == 1 {
        return vec![0.5 * (lo + hi)];
    }
    (0..count)
        .map(|i| lo + (hi - lo) * i as f64 / (count - 1) as f64)
        .collect()
}

/// `int_0^inf phi(r)^2 r dr`.
pub fn normalization_integral(state: &BoundState, rel_tol: f64) -> Result<f64> {
    let r_max = default_r_max(state);
    integrate_radial(
        |r| {
            let v = radial_value(state, r);
            v * v * r
        },
        r_max,
        rel_tol,
    )
}

/// Overlap matrix `G[n][n'] = int phi_n phi_n' r dr` for `n, n' <= n_max`.
pub fn orthonormality_matrix(spec: &PotentialSpec, c: &PhysicalConstants, m: i32, n_max: u32) -> Result<Vec<Vec<f64>>> {
    if n_max > 8 {
        return Err(invalid(format!("n_max must be at most 8, got {n_max}")));
    }
    let states: Vec<BoundState> = (0..=n_max)
        .map(|n| bound_state(spec, c, QuantumNumbers::new(n, m)))
        .collect::<Result<_>>()?;
    let r_max = states.iter().map(default_r_max).fold(0.0, f64::max);
    let size = states.len();
    let mut g = vec![vec![0.0; size]; size];
    for i in 0..size {
        for j in i..size {
            let v = integrate_radial(
                |r| radial_value(&states[i], r) * radial_value(&states[j], r) * r,
                r_max,
                1e-12,
            )?;
            g[i][j] = v;
            g[j][i] = v;
        }
    }
    Ok(g)
}

/// `max |G - I|` over all entries.
pub fn max_deviation_from_identity(g: &[Vec<f64>]) -> f64 {
    let mut worst = 0.0f64;
    for (i, row) in g.iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            let target = if i == j { 1.0 } else { 0.0 };
            worst = worst.max((v - target).abs());
        }
    }
    worst
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit() -> PhysicalConstants {
        PhysicalConstants::default()
    }

    #[test]
    fn ground_state_normalized() {
        let spec = PotentialSpec::kratzer(1.0, 1.0).unwrap();
        let s = bound_state(&spec, &unit(), QuantumNumbers::new(0, 0)).unwrap();
        let v = normalization_integral(&s, 1e-12).unwrap();
        assert!((v - 1.0).abs() < 1e-8);
    }

    #[test]
    fn overlaps_close_to_identity() {
        let spec = PotentialSpec::kratzer(1.0, 1.0).unwrap();
        for m in [0, 2] {
            let g = orthonormality_matrix(&spec, &unit(), m, 3).unwrap();
            assert!(max_deviation_from_identity(&g) <= 1e-7);
            for (i, row) in g.iter().enumerate() {
                assert!((row[i] - 1.0).abs() <= 1e-8);
            }
        }
        assert!(orthonormality_matrix(&spec, &unit(), 0, 9).is_err());
    }

    #[test]
    fn residual_small_for_exact_state_and_grows_with_offset() {
        let spec = PotentialSpec::kratzer(1.0, 1.0).unwrap();
        let c = unit();
        let s = bound_state(&spec, &c, QuantumNumbers::new(0, 0)).unwrap();
        let pts = residual_samples(0.05, 30.0, 200);
        let max_phi = pts.iter().map(|&r| radial_value(&s, r).abs()).fold(0.0, f64::max);
        let res = ode_residual(&s, &spec, &c, &pts);
        let worst = res.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        assert!(worst <= 1e-6 * s.energy.abs() * max_phi, "{worst}");

        let bad = s.with_energy_offset(0.01);
        let res_bad = ode_residual(&bad, &spec, &c, &pts);
        for ((r, good), badv) in pts.iter().zip(&res).zip(&res_bad) {
            let expected = c.two_mu_over_hbar2() * 0.01 * radial_value(&s, *r);
            assert!((badv - good - expected).abs() < 1e-12 * max_phi.max(1.0));
        }
    }
}
