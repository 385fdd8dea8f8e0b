//! Exact bound states of the two-dimensional radial Schrödinger equation for
//! the Kratzer potential and two modified Kratzer-type potentials, with a
//! finite-difference and quadrature oracle that checks every closed form.
//!
//! ```
//! use kratzer2d::{bound_state, PhysicalConstants, PotentialSpec, QuantumNumbers};
//!
//! let spec = PotentialSpec::kratzer(1.0, 1.0).unwrap();
//! let state = bound_state(&spec, &PhysicalConstants::default(), QuantumNumbers::new(0, 0)).unwrap();
//! assert!((state.energy + 0.5458).abs() < 1e-4);
//! ```

pub mod cli;
pub mod error;
pub mod oracle;
pub mod params;
pub mod specfun;
pub mod spectrum;
pub mod wavefun;

pub use error::{Error, Result};
pub use params::{
    derive_dimensionless, DimensionlessParams, PhysicalConstants, PotentialKind, PotentialSpec, QuantumNumbers,
};
pub use spectrum::{
    bound_state, degeneracy_classes, energy_coulomb_limit, energy_kratzer, energy_modified1, energy_modified2,
    enumerate_levels, BoundState,
};
pub use wavefun::{density_grid, radial_value, total_density, DensityGrid, RadialWavefunction};
