//! Independent numerical checks of the closed-form results: a
//! finite-difference eigensolver, a quadrature engine, and residual and
//! overlap checkers built on them.

pub mod checks;
pub mod fd;
pub mod quadrature;
pub mod tridiag;

pub use checks::{normalization_integral, ode_residual, orthonormality_matrix, residual_samples};
pub use fd::{default_grid, fd_eigenvalues, FdGrid, OracleResult};
pub use quadrature::integrate_radial;
