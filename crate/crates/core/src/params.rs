//! Physical inputs and their reduction to the dimensionless quantities
//! consumed by the spectrum and wavefunction formulas.
//!
//! Lengths are measured in units of the equilibrium separation `r0` once
//! reduced (`z = r / r0`), and energies in units of `hbar^2 / (2 mu r0^2)`.

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};

/// Planck constant and reduced mass in user-declared consistent units.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhysicalConstants {
    pub hbar: f64,
    pub mu: f64,
}

impl Default for PhysicalConstants {
    fn default() -> Self {
        Self { hbar: 1.0, mu: 1.0 }
    }
}

impl PhysicalConstants {
    pub fn new(hbar: f64, mu: f64) -> Result<Self> {
        let c = Self { hbar, mu };
        c.validate()?;
        Ok(c)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.hbar.is_finite() && self.hbar > 0.0) {
            return Err(invalid(format!("hbar must be positive, got {}", self.hbar)));
        }
        if !(self.mu.is_finite() && self.mu > 0.0) {
            return Err(invalid(format!("mu must be positive, got {}", self.mu)));
        }
        Ok(())
    }

    /// `2 mu / hbar^2`, the factor multiplying `E - V` in the radial equation.
    pub fn two_mu_over_hbar2(&self) -> f64 {
        2.0 * self.mu / (self.hbar * self.hbar)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PotentialKind {
    Kratzer,
    ModifiedKratzer1,
    ModifiedKratzer2,
}

impl PotentialKind {
    /// Short CLI name: `kratzer`, `mod1`, `mod2`.
    pub fn short_name(self) -> &'static str {
        match self {
            PotentialKind::Kratzer => "kratzer",
            PotentialKind::ModifiedKratzer1 => "mod1",
            PotentialKind::ModifiedKratzer2 => "mod2",
        }
    }
}

impl std::str::FromStr for PotentialKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "kratzer" => Ok(PotentialKind::Kratzer),
            "mod1" | "modified1" | "modified_kratzer1" => Ok(PotentialKind::ModifiedKratzer1),
            "mod2" | "modified2" | "modified_kratzer2" => Ok(PotentialKind::ModifiedKratzer2),
            other => Err(invalid(format!("unknown potential '{other}'"))),
        }
    }
}

impl std::fmt::Display for PotentialKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.short_name())
    }
}

/// One of the three Kratzer-type central potentials.
///
/// * `Kratzer`: `V(r) = -2 D0 (r0/r - r0^2 / (2 r^2))`, minimum `-D0` at `r0`.
/// * `ModifiedKratzer1`: `V(r) = D0 ((r - r0)/r)^2`, the Kratzer potential
///   shifted up by `D0`.
/// * `ModifiedKratzer2`: `V(r) = -q_over_rho (r0/r - g^2 r0^2 / r^2)`, where
///   `q_over_rho` is the screened Coulomb prefactor collapsed into a single
///   energy. `g = 0` is the 2D Coulomb problem; `g^2 = 1/2` with
///   `q_over_rho = 2 D0` is the Kratzer potential.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PotentialSpec {
    Kratzer { d0: f64, r0: f64 },
    ModifiedKratzer1 { d0: f64, r0: f64 },
    ModifiedKratzer2 { q_over_rho: f64, r0: f64, g: f64 },
}

impl PotentialSpec {
    pub fn kratzer(d0: f64, r0: f64) -> Result<Self> {
        let s = PotentialSpec::Kratzer { d0, r0 };
        s.validate()?;
        Ok(s)
    }

    pub fn modified1(d0: f64, r0: f64) -> Result<Self> {
        let s = PotentialSpec::ModifiedKratzer1 { d0, r0 };
        s.validate()?;
        Ok(s)
    }

    pub fn modified2(q_over_rho: f64, r0: f64, g: f64) -> Result<Self> {
        let s = PotentialSpec::ModifiedKratzer2 { q_over_rho, r0, g };
        s.validate()?;
        Ok(s)
    }

    pub fn kind(&self) -> PotentialKind {
        match self {
            PotentialSpec::Kratzer { .. } => PotentialKind::Kratzer,
            PotentialSpec::ModifiedKratzer1 { .. } => PotentialKind::ModifiedKratzer1,
            PotentialSpec::ModifiedKratzer2 { .. } => PotentialKind::ModifiedKratzer2,
        }
    }

    pub fn r0(&self) -> f64 {
        match *self {
            PotentialSpec::Kratzer { r0, .. }
            | PotentialSpec::ModifiedKratzer1 { r0, .. }
            | PotentialSpec::ModifiedKratzer2 { r0, .. } => r0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let r0 = self.r0();
        if !(r0.is_finite() && r0 > 0.0) {
            return Err(invalid(format!("r0 must be positive, got {r0}")));
        }
        match *self {
            PotentialSpec::Kratzer { d0, .. } | PotentialSpec::ModifiedKratzer1 { d0, .. } => {
                if !d0.is_finite() {
                    return Err(invalid(format!("D0 must be finite, got {d0}")));
                }
                if d0 <= 0.0 {
                    return Err(Error::NoBoundStates(format!("D0 = {d0} gives a non-attractive well")));
                }
            }
            PotentialSpec::ModifiedKratzer2 { q_over_rho, g, .. } => {
                if !q_over_rho.is_finite() {
                    return Err(invalid(format!("q must be finite, got {q_over_rho}")));
                }
                if q_over_rho <= 0.0 {
                    return Err(Error::NoBoundStates(format!(
                        "q = {q_over_rho} gives a non-attractive Coulomb tail"
                    )));
                }
                if !(g.is_finite() && g >= 0.0) {
                    return Err(invalid(format!("g must be non-negative, got {g}")));
                }
            }
        }
        Ok(())
    }

    /// Potential energy at radius `r` (user units).
    pub fn value(&self, r: f64) -> f64 {
        match *self {
            PotentialSpec::Kratzer { d0, r0 } => {
                let x = r0 / r;
                -2.0 * d0 * (x - 0.5 * x * x)
            }
            PotentialSpec::ModifiedKratzer1 { d0, r0 } => {
                let t = (r - r0) / r;
                d0 * t * t
            }
            PotentialSpec::ModifiedKratzer2 { q_over_rho, r0, g } => {
                let x = r0 / r;
                -q_over_rho * (x - g * g * x * x)
            }
        }
    }

    /// `V(r -> infinity)`, the bottom of the continuum.
    pub fn continuum_threshold(&self) -> f64 {
        match *self {
            PotentialSpec::ModifiedKratzer1 { d0, .. } => d0,
            _ => 0.0,
        }
    }

    /// Constant added to the Kratzer-form Hamiltonian (`D0` for `ModifiedKratzer1`).
    pub fn energy_shift(&self) -> f64 {
        self.continuum_threshold()
    }

    /// Energy unit `hbar^2 / (2 mu r0^2)` linking `k^2` and `E`.
    pub fn energy_unit(&self, c: &PhysicalConstants) -> f64 {
        let r0 = self.r0();
        c.hbar * c.hbar / (2.0 * c.mu * r0 * r0)
    }
}

/// Radial (`n >= 0`) and azimuthal (signed `m`) quantum numbers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct QuantumNumbers {
    pub n: u32,
    pub m: i32,
}

impl QuantumNumbers {
    pub fn new(n: u32, m: i32) -> Self {
        Self { n, m }
    }

    pub fn abs_m(&self) -> u32 {
        self.m.unsigned_abs()
    }

    pub(crate) fn m_squared(&self) -> f64 {
        let m = f64::from(self.m);
        m * m
    }
}

/// Dimensionless couplings and exponents for one `(potential, m)` pair.
///
/// `gamma2` is zero for `ModifiedKratzer2` and `delta2` is zero otherwise, so
/// `alpha` and `eta` are always defined and collapse to `|m|` when their
/// coupling vanishes. `k` and `beta` are filled by the quantization step.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DimensionlessParams {
    pub gamma2: f64,
    pub delta2: f64,
    pub alpha: f64,
    pub eta: f64,
    pub k: Option<f64>,
    pub beta: Option<f64>,
    kind: PotentialKind,
}

impl DimensionlessParams {
    /// `gamma^2` or `delta^2`, whichever drives the Coulomb-like `1/z` term.
    pub fn coupling(&self) -> f64 {
        match self.kind {
            PotentialKind::ModifiedKratzer2 => self.delta2,
            _ => self.gamma2,
        }
    }

    /// Power of `z` in the small-`r` behaviour: `alpha`, or `eta` for `ModifiedKratzer2`.
    pub fn exponent(&self) -> f64 {
        match self.kind {
            PotentialKind::ModifiedKratzer2 => self.eta,
            _ => self.alpha,
        }
    }

    pub fn kind(&self) -> PotentialKind {
        self.kind
    }
}

pub fn derive_dimensionless(
    spec: &PotentialSpec,
    c: &PhysicalConstants,
    qn: QuantumNumbers,
) -> Result<DimensionlessParams> {
    spec.validate()?;
    c.validate()?;
    let m2 = qn.m_squared();
    let hbar2 = c.hbar * c.hbar;
    let (gamma2, delta2, g) = match *spec {
        PotentialSpec::Kratzer { d0, r0 } | PotentialSpec::ModifiedKratzer1 { d0, r0 } => {
            (2.0 * c.mu * r0 * r0 * d0 / hbar2, 0.0, 0.0)
        }
        PotentialSpec::ModifiedKratzer2 { q_over_rho, r0, g } => (0.0, c.mu * r0 * r0 * q_over_rho / hbar2, g),
    };
    Ok(DimensionlessParams {
        gamma2,
        delta2,
        alpha: (m2 + gamma2).sqrt(),
        eta: (2.0 * g * g * delta2 + m2).sqrt(),
        k: None,
        beta: None,
        kind: spec.kind(),
    })
}
