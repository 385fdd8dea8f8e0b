//! Closed-form bound-state energies from the terminating-series
//! quantization condition `1/2 + e - coupling/scale = -n`.
//!
//! For every potential the decay scale solves `scale = coupling / (n + 1/2 + e)`
//! and the energy is `shift - hbar^2 scale^2 / (2 mu r0^2)`, where the shift is
//! zero for `Kratzer` and `ModifiedKratzer2` and `+D0` for `ModifiedKratzer1`.
//!
//! `ModifiedKratzer1` is the Kratzer potential plus the constant `D0`, so its
//! levels are the Kratzer levels plus `D0`. A printed form of this spectrum with
//! `-D0` in place of `+D0` circulates; [`modified1_minus_shift_energy`] returns
//! that alternative so reports can show both next to the numerical oracle.

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::params::{derive_dimensionless, PhysicalConstants, PotentialKind, PotentialSpec, QuantumNumbers};
use crate::wavefun;

/// Default relative tolerance used to group degenerate levels.
pub const DEFAULT_DEGENERACY_TOL: f64 = 1e-10;

/// One eigenstate with everything the wavefunction code needs.
///
/// `k` and `scale` coincide: for `ModifiedKratzer1` both hold `beta`, the
/// actual decay rate of the wavefunction (`k^2 = beta^2 - gamma^2` is negative
/// there and never used).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundState {
    pub qn: QuantumNumbers,
    pub potential: PotentialSpec,
    pub constants: PhysicalConstants,
    pub energy: f64,
    pub k: f64,
    pub exponent: f64,
    pub scale: f64,
    pub log_norm: f64,
}

impl BoundState {
    /// Dimensionless coupling (`gamma^2` or `delta^2`) for this state's potential.
    pub fn coupling(&self) -> f64 {
        // derive_dimensionless cannot fail on a state that was already built
        derive_dimensionless(&self.potential, &self.constants, self.qn)
            .map(|p| p.coupling())
            .unwrap_or(f64::NAN)
    }

    /// `1/2 + exponent - coupling/scale + n`, zero for an exact eigenstate.
    pub fn quantization_residual(&self) -> f64 {
        0.5 + self.exponent - self.coupling() / self.scale + f64::from(self.qn.n)
    }

    /// Returns a copy with the energy moved by `delta`; the wavefunction is unchanged.
    /// Used as a negative control for residual checks.
    pub fn with_energy_offset(mut self, delta: f64) -> Self {
        self.energy += delta;
        self
    }
}

fn build_state(spec: &PotentialSpec, c: &PhysicalConstants, qn: QuantumNumbers) -> Result<BoundState> {
    let p = derive_dimensionless(spec, c, qn)?;
    let coupling = p.coupling();
    let exponent = p.exponent();
    let scale = coupling / (f64::from(qn.n) + 0.5 + exponent);
    let energy = spec.energy_shift() - spec.energy_unit(c) * scale * scale;
    let log_norm = wavefun::log_normalization_parts(qn.n, exponent, scale, spec.r0());
    Ok(BoundState {
        qn,
        potential: *spec,
        constants: *c,
        energy,
        k: scale,
        exponent,
        scale,
        log_norm,
    })
}

fn require_kind(spec: &PotentialSpec, kind: PotentialKind) -> Result<()> {
    if spec.kind() != kind {
        return Err(invalid(format!("expected a {kind} potential, got {}", spec.kind())));
    }
    Ok(())
}

/// Kratzer levels: `E = -(hbar^2/2 mu r0^2) gamma^4 / (n + 1/2 + sqrt(m^2 + gamma^2))^2`.
pub fn energy_kratzer(spec: &PotentialSpec, c: &PhysicalConstants, qn: QuantumNumbers) -> Result<BoundState> {
    require_kind(spec, PotentialKind::Kratzer)?;
    build_state(spec, c, qn)
}

/// First modified Kratzer levels: Kratzer levels shifted up by `D0`.
pub fn energy_modified1(spec: &PotentialSpec, c: &PhysicalConstants, qn: QuantumNumbers) -> Result<BoundState> {
    require_kind(spec, PotentialKind::ModifiedKratzer1)?;
    let state = build_state(spec, c, qn)?;
    debug_assert!(state.energy < spec.continuum_threshold());
    Ok(state)
}

/// Screened-Coulomb (second modified Kratzer) levels with `eta = sqrt(2 g^2 delta^2 + m^2)`.
pub fn energy_modified2(spec: &PotentialSpec, c: &PhysicalConstants, qn: QuantumNumbers) -> Result<BoundState> {
    require_kind(spec, PotentialKind::ModifiedKratzer2)?;
    build_state(spec, c, qn)
}

/// Dispatches on the potential kind.
pub fn bound_state(spec: &PotentialSpec, c: &PhysicalConstants, qn: QuantumNumbers) -> Result<BoundState> {
    match spec.kind() {
        PotentialKind::Kratzer => energy_kratzer(spec, c, qn),
        PotentialKind::ModifiedKratzer1 => energy_modified1(spec, c, qn),
        PotentialKind::ModifiedKratzer2 => energy_modified2(spec, c, qn),
    }
}

/// `ModifiedKratzer1` energy under the `E_Kratzer - D0` convention.
///
/// Not an eigenvalue of the shifted Hamiltonian; kept for side-by-side reporting.
pub fn modified1_minus_shift_energy(spec: &PotentialSpec, c: &PhysicalConstants, qn: QuantumNumbers) -> Result<f64> {
    require_kind(spec, PotentialKind::ModifiedKratzer1)?;
    let state = build_state(spec, c, qn)?;
    Ok(state.energy - 2.0 * spec.energy_shift())
}

/// 2D Coulomb levels `E_N = -(hbar^2/2 mu r0^2) delta^4 / (N + 1/2)^2`, `N = n + |m|`.
pub fn energy_coulomb_limit(spec: &PotentialSpec, c: &PhysicalConstants, n_principal: u32) -> Result<f64> {
    require_kind(spec, PotentialKind::ModifiedKratzer2)?;
    let PotentialSpec::ModifiedKratzer2 { g, .. } = *spec else {
        unreachable!()
    };
    if g != 0.0 {
        return Err(invalid(format!("Coulomb limit requires g = 0, got {g}")));
    }
    let p = derive_dimensionless(spec, c, QuantumNumbers::new(0, 0))?;
    let d = f64::from(n_principal) + 0.5;
    Ok(-spec.energy_unit(c) * p.delta2 * p.delta2 / (d * d))
}

/// All states with `n <= n_max`, `|m| <= m_max`, ascending in energy with
/// ties broken by `(n, m)`.
pub fn enumerate_levels(
    spec: &PotentialSpec,
    c: &PhysicalConstants,
    n_max: u32,
    m_max: u32,
) -> Result<Vec<BoundState>> {
    let m_max = i32::try_from(m_max).map_err(|_| invalid("m_max too large"))?;
    let mut levels = Vec::with_capacity((n_max as usize + 1) * (2 * m_max as usize + 1));
    for n in 0..=n_max {
        for m in -m_max..=m_max {
            levels.push(bound_state(spec, c, QuantumNumbers::new(n, m))?);
        }
    }
    sort_levels(&mut levels);
    Ok(levels)
}

fn sort_levels(levels: &mut [BoundState]) {
    levels.sort_by(|a, b| a.energy.total_cmp(&b.energy).then(a.qn.cmp(&b.qn)));
}

/// Partitions levels into classes whose energies agree to `rel_tol * |E|`.
///
/// Classes are listed in ascending energy; each class is anchored at its
/// lowest member.
pub fn degeneracy_classes(levels: &[BoundState], rel_tol: f64) -> Vec<Vec<BoundState>> {
    let mut sorted = levels.to_vec();
    sort_levels(&mut sorted);
    let mut classes: Vec<Vec<BoundState>> = Vec::new();
    for state in sorted {
        match classes.last_mut() {
            Some(class) if (state.energy - class[0].energy).abs() <= rel_tol * class[0].energy.abs() => {
                class.push(state)
            }
            _ => classes.push(vec![state]),
        }
    }
    classes
}
