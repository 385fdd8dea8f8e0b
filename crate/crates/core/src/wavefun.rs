//! Normalized radial wavefunctions, 2D probability densities and polar
//! density grids.
//!
//! All three potentials share one functional form,
//! `phi(r) = C z^e exp(-s z) L_n^{2e}(2 s z)` with `z = r / r0`, where
//! `(e, s)` is `(alpha, k)`, `(alpha, beta)` or `(eta, k)`. The full
//! eigenfunction carries `exp(i m phi) / sqrt(2 pi)` and is normalized as
//! `int int |Psi|^2 r dr dphi = 1`, so the radial factor alone satisfies
//! `int phi(r)^2 r dr = 1`.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::oracle::quadrature;
use crate::params::{PotentialKind, QuantumNumbers};
use crate::specfun::{laguerre_unchecked, log_factorial, log_gamma_unchecked};
use crate::spectrum::BoundState;

/// `ln C` for `C = (2s)^{e+1} / r0 * sqrt(n! / ((2n + 2e + 1) Gamma(n + 2e + 1)))`.
pub fn log_normalization_parts(n: u32, exponent: f64, scale: f64, r0: f64) -> f64 {
    let nf = f64::from(n);
    (exponent + 1.0) * (2.0 * scale).ln() - r0.ln()
        + 0.5
            * (log_factorial(n)
                - (2.0 * nf + 2.0 * exponent + 1.0).ln()
                - log_gamma_unchecked(nf + 2.0 * exponent + 1.0))
}

pub fn log_normalization(state: &BoundState) -> f64 {
    log_normalization_parts(state.qn.n, state.exponent, state.scale, state.potential.r0())
}

/// `phi(r)` for the given state; `r >= 0`.
pub fn radial_value(state: &BoundState, r: f64) -> f64 {
    let r0 = state.potential.r0();
    let z = r / r0;
    let lag = laguerre_unchecked(state.qn.n, 2.0 * state.exponent, 2.0 * state.scale * z);
    if z == 0.0 {
        return if state.exponent > 0.0 {
            0.0
        } else {
            state.log_norm.exp() * lag
        };
    }
    (state.log_norm + state.exponent * z.ln() - state.scale * z).exp() * lag
}

/// Callable radial factor of one eigenstate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadialWavefunction {
    pub state: BoundState,
}

impl RadialWavefunction {
    pub fn new(state: BoundState) -> Self {
        Self { state }
    }

    pub fn value(&self, r: f64) -> f64 {
        radial_value(&self.state, r)
    }

    /// Sign changes of `phi` on a uniform sample of `(0, r_max]`.
    pub fn sign_changes(&self, r_max: f64, samples: usize) -> usize {
        let values: Vec<f64> = (1..=samples)
            .map(|i| self.value(r_max * i as f64 / samples as f64))
            .collect();
        count_sign_changes(&values)
    }
}

/// `|Psi(r, phi)|^2 = phi(r)^2 / (2 pi)`; independent of the angle.
pub fn total_density(state: &BoundState, r: f64, _phi: f64) -> f64 {
    let v = radial_value(state, r);
    v * v / (2.0 * PI)
}

/// Counts strict sign changes, skipping exact zeros.
pub fn count_sign_changes(values: &[f64]) -> usize {
    let mut count = 0;
    let mut prev = 0.0f64;
    for &v in values {
        if v == 0.0 || !v.is_finite() {
            continue;
        }
        if prev != 0.0 && prev.signum() != v.signum() {
            count += 1;
        }
        prev = v;
    }
    count
}

/// Radius beyond which `int phi^2 r dr` is below `1e-10`.
///
/// Starts from the point where `x^{2e+2n+1} e^{-x}` (with `x = 2 s r / r0`)
/// has dropped to `1e-16` of its peak, then doubles until the quadrature
/// tail over `[r, 2r]` passes.
pub fn default_r_max(state: &BoundState) -> f64 {
    let r0 = state.potential.r0();
    let p = 2.0 * state.exponent + 2.0 * f64::from(state.qn.n) + 1.0;
    let x = quadrature::exp_poly_tail(p, 16.0);
    let mut r_max = x * r0 / (2.0 * state.scale);
    for _ in 0..16 {
        let tail = quadrature::gauss_legendre_panels(
            |r| {
                let v = radial_value(state, r);
                v * v * r
            },
            r_max,
            2.0 * r_max,
            8,
        );
        if tail.abs() < 1e-10 {
            break;
        }
        r_max *= 2.0;
    }
    r_max
}

/// Polar samples of `|Psi|^2` for plotting.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DensityGrid {
    pub r_values: Vec<f64>,
    pub phi_values: Vec<f64>,
    /// `density[i][j]` at `(r_values[i], phi_values[j])`.
    pub density: Vec<Vec<f64>>,
    pub qn: QuantumNumbers,
    pub kind: PotentialKind,
}

impl DensityGrid {
    /// Trapezoid in `r` times the rectangle rule in `phi` of `density * r`.
    pub fn mass(&self) -> f64 {
        let nr = self.r_values.len();
        let dphi = 2.0 * PI / self.phi_values.len() as f64;
        let mut total = 0.0;
        for i in 0..nr {
            let w = if i == 0 {
                0.5 * (self.r_values[1] - self.r_values[0])
            } else if i == nr - 1 {
                0.5 * (self.r_values[nr - 1] - self.r_values[nr - 2])
            } else {
                0.5 * (self.r_values[i + 1] - self.r_values[i - 1])
            };
            let row: f64 = self.density[i].iter().sum();
            total += w * self.r_values[i] * row * dphi;
        }
        total
    }

    /// Radial profile of the first angular column.
    pub fn radial_profile(&self) -> Vec<f64> {
        self.density.iter().map(|row| row[0]).collect()
    }
}

/// Uniform polar grid on `[0, r_max] x [0, 2 pi)`.
pub fn density_grid(state: &BoundState, r_max: f64, nr: usize, nphi: usize) -> Result<DensityGrid> {
    if !(r_max.is_finite() && r_max > 0.0) {
        return Err(invalid(format!("r_max must be positive, got {r_max}")));
    }
    if nr < 2 {
        return Err(invalid(format!("need at least 2 radial points, got {nr}")));
    }
    if nphi < 1 {
        return Err(invalid("need at least 1 angular point"));
    }
    let r_values: Vec<f64> = (0..nr).map(|i| r_max * i as f64 / (nr - 1) as f64).collect();
    let phi_values: Vec<f64> = (0..nphi).map(|j| 2.0 * PI * j as f64 / nphi as f64).collect();
    let density = r_values
        .iter()
        .map(|&r| phi_values.iter().map(|&p| total_density(state, r, p)).collect())
        .collect();
    Ok(DensityGrid {
        r_values,
        phi_values,
        density,
        qn: state.qn,
        kind: state.potential.kind(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::{PhysicalConstants, PotentialSpec};
    use crate::spectrum::bound_state;

    fn state(spec: PotentialSpec, n: u32, m: i32) -> BoundState {
        bound_state(&spec, &PhysicalConstants::default(), QuantumNumbers::new(n, m)).unwrap()
    }

    fn kratzer(n: u32, m: i32) -> BoundState {
        state(PotentialSpec::kratzer(1.0, 1.0).unwrap(), n, m)
    }

    #[test]
    fn log_norm_scales_with_decay_rate() {
        let a = log_normalization_parts(2, 1.7, 0.8, 1.0);
        let b = log_normalization_parts(2, 1.7, 1.3, 1.0);
        assert!((b - a - 2.7 * (1.3f64 / 0.8).ln()).abs() < 1e-13);
    }

    #[test]
    fn stored_log_norm_matches_recomputation() {
        let s = kratzer(3, 1);
        assert_eq!(s.log_norm, log_normalization(&s));
    }

    #[test]
    fn vanishes_at_origin_when_exponent_positive() {
        assert_eq!(radial_value(&kratzer(0, 0), 0.0), 0.0);
        let coulomb = state(PotentialSpec::modified2(1.0, 1.0, 0.0).unwrap(), 0, 0);
        // e = 0, k = 2: C = 2k = 4
        assert!((radial_value(&coulomb, 0.0) - 4.0).abs() < 1e-14);
    }

    #[test]
    fn node_counts() {
        for n in 0..6 {
            for m in -3..=3 {
                let s = kratzer(n, m);
                let w = RadialWavefunction::new(s);
                assert_eq!(w.sign_changes(default_r_max(&s), 20_000), n as usize, "n={n} m={m}");
            }
        }
        let ground = RadialWavefunction::new(kratzer(0, 0));
        let vals: Vec<f64> = (1..4000).map(|i| ground.value(i as f64 * 0.01)).collect();
        assert!(vals.iter().all(|&v| v > 0.0));
    }

    #[test]
    fn fig1_state_has_three_nodes_inside_forty_r0() {
        let w = RadialWavefunction::new(kratzer(3, 1));
        assert_eq!(w.sign_changes(40.0, 40_000), 3);
    }

    #[test]
    fn density_is_angle_and_sign_independent() {
        let s = kratzer(2, 2);
        let mirrored = kratzer(2, -2);
        for &r in &[0.3, 1.0, 4.0] {
            let d0 = total_density(&s, r, 0.0);
            for &p in &[0.5, 2.0, 5.9] {
                assert_eq!(total_density(&s, r, p), d0);
                assert_eq!(total_density(&mirrored, r, p), d0);
            }
        }
    }

    #[test]
    fn grid_mass_close_to_one() {
        let s = kratzer(3, 1);
        let g = density_grid(&s, default_r_max(&s), 2000, 8).unwrap();
        assert!((g.mass() - 1.0).abs() < 1e-4, "mass {}", g.mass());
        assert!(g.density.iter().flatten().all(|&d| d >= 0.0));
        let profile = g.radial_profile();
        let nodes = (1..profile.len() - 1)
            .filter(|&i| profile[i] < profile[i - 1] && profile[i] <= profile[i + 1])
            .count();
        // local minima of the density: the three zero rings
        assert_eq!(nodes, 3);
    }

    #[test]
    fn grid_degenerates_to_profile() {
        let s = kratzer(0, 0);
        let g = density_grid(&s, 20.0, 500, 1).unwrap();
        assert_eq!(g.phi_values, vec![0.0]);
        assert_eq!(g.density[10].len(), 1);
        assert!((g.mass() - 1.0).abs() < 1e-3);
    }

    #[test]
    fn grid_rejects_bad_inputs() {
        let s = kratzer(0, 0);
        assert!(density_grid(&s, 0.0, 10, 4).is_err());
        assert!(density_grid(&s, -1.0, 10, 4).is_err());
        assert!(density_grid(&s, 10.0, 1, 4).is_err());
        assert!(density_grid(&s, 10.0, 10, 0).is_err());
    }

    #[test]
    fn sign_change_counter() {
        assert_eq!(count_sign_changes(&[1.0, 0.0, -1.0, -2.0, 3.0]), 2);
        assert_eq!(count_sign_changes(&[0.0, 0.0]), 0);
    }
}
