//! Finite-difference eigenvalues of the 2D radial equation.
//!
//! The operator `-(hbar^2/2mu) (1/r)(r phi')' + (hbar^2/2mu) m^2 phi / r^2 + V phi`
//! is discretized in flux form on cell centres `r_i` with faces half a
//! spacing either side:
//!
//! ```text
//! (1/(r_i h^2)) [ f_{i+1} (phi_{i+1} - phi_i) - f_i (phi_i - phi_{i-1}) ]
//! ```
//!
//! where `f` are the face radii. Dirichlet zeros sit on the outer faces of the
//! box; when the inner face is the origin its flux weight vanishes and the
//! regularity condition comes for free. Scaling by `sqrt(r_i)` (the discrete
//! form of `u = sqrt(r) phi`) makes the matrix symmetric tridiagonal.
//!
//! Solves are repeated on a grid with half the spacing over the same box, and
//! the pair is Richardson extrapolated assuming `O(h^2)` error. A third solve
//! at a quarter of the spacing gives the observed convergence order.

use serde::{Deserialize, Serialize};

use super::tridiag;
use crate::error::{invalid, Error, Result};
use crate::params::{PhysicalConstants, PotentialSpec, QuantumNumbers};
use crate::spectrum::bound_state;
use crate::wavefun::default_r_max;

const MIN_POINTS: usize = 16;
/// Fraction of a level spacing the two-grid change may reach before the
/// grid is declared too coarse.
const COARSE_GAP_FRACTION: f64 = 0.1;
/// Allowed eigenvector mass beyond `0.9 r_max`.
const BOX_TAIL_MASS: f64 = 1e-6;

/// Uniform grid of cell centres `r_min, r_min + h, ..., r_max`; the box runs
/// from `r_min - h/2` to `r_max + h/2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FdGrid {
    pub r_min: f64,
    pub r_max: f64,
    pub n_points: usize,
}

impl FdGrid {
    pub fn new(r_min: f64, r_max: f64, n_points: usize) -> Result<Self> {
        let g = Self { r_min, r_max, n_points };
        g.validate()?;
        Ok(g)
    }

    /// `n_points` cells filling the box `[0, box_radius]`.
    pub fn from_origin(box_radius: f64, n_points: usize) -> Result<Self> {
        let h = box_radius / n_points as f64;
        Self::new(0.5 * h, box_radius - 0.5 * h, n_points)
    }

    /// Inner and outer faces of the box.
    pub fn box_faces(&self) -> (f64, f64) {
        let h = self.spacing();
        let inner = self.r_min - 0.5 * h;
        // snap rounding residue so an origin-anchored box keeps a zero-flux face
        let inner = if inner <= 1e-9 * h { 0.0 } else { inner };
        (inner, self.r_max + 0.5 * h)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.r_min.is_finite() && self.r_min > 0.0) {
            return Err(invalid(format!("grid r_min must be positive, got {}", self.r_min)));
        }
        if !(self.r_max.is_finite() && self.r_max > self.r_min) {
            return Err(invalid(format!(
                "grid r_max must exceed r_min, got {} <= {}",
                self.r_max, self.r_min
            )));
        }
        if self.n_points < MIN_POINTS {
            return Err(invalid(format!(
                "grid needs at least {MIN_POINTS} points, got {}",
                self.n_points
            )));
        }
        Ok(())
    }

    pub fn spacing(&self) -> f64 {
        (self.r_max - self.r_min) / (self.n_points - 1) as f64
    }

    pub fn node(&self, i: usize) -> f64 {
        self.r_min + i as f64 * self.spacing()
    }

    /// Same Dirichlet box with half the spacing.
    pub fn refined(&self) -> Self {
        let quarter = 0.25 * self.spacing();
        Self {
            r_min: self.r_min - quarter,
            r_max: self.r_max + quarter,
            n_points: 2 * self.n_points,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleResult {
    pub m: i32,
    /// Lowest eigenvalues on `grid`.
    pub eigenvalues: Vec<f64>,
    /// Eigenvalues on the grid with half the spacing.
    pub fine_eigenvalues: Vec<f64>,
    pub grid: FdGrid,
    /// Richardson extrapolation of the coarse and fine values.
    pub refined_eigenvalues: Vec<f64>,
    /// Observed order `log2(|l_h - l_h/2| / |l_h/2 - l_h/4|)` per level.
    pub level_orders: Vec<f64>,
    /// Observed order for the lowest level.
    pub convergence_order: f64,
}

fn assemble(spec: &PotentialSpec, c: &PhysicalConstants, m: i32, grid: &FdGrid) -> (Vec<f64>, Vec<f64>) {
    let kinetic = 1.0 / c.two_mu_over_hbar2();
    let n = grid.n_points;
    let h = grid.spacing();
    let inv_h2 = 1.0 / (h * h);
    let (inner, outer) = grid.box_faces();
    let m2 = f64::from(m) * f64::from(m);
    let face = |i: usize| match i {
        0 => inner,
        i if i == n => outer,
        i => grid.node(i) - 0.5 * h,
    };
    let diag = (0..n)
        .map(|i| {
            let r = grid.node(i);
            // outer faces carry a ghost value of -phi, doubling their flux weight
            let left = if i == 0 { 2.0 * face(0) } else { face(i) };
            let right = if i == n - 1 { 2.0 * face(n) } else { face(i + 1) };
            kinetic * inv_h2 * (left + right) / r + kinetic * m2 / (r * r) + spec.value(r)
        })
        .collect();
    let off = (0..n - 1)
        .map(|i| -kinetic * inv_h2 * face(i + 1) / (grid.node(i) * grid.node(i + 1)).sqrt())
        .collect();
    (diag, off)
}

fn solve(
    spec: &PotentialSpec,
    c: &PhysicalConstants,
    m: i32,
    grid: &FdGrid,
    count: usize,
) -> (Vec<f64>, Vec<f64>, Vec<f64>) {
    let (diag, off) = assemble(spec, c, m, grid);
    let values = tridiag::lowest_eigenvalues(&diag, &off, count);
    (values, diag, off)
}

/// Lowest `count` eigenvalues for azimuthal number `m`, with Richardson
/// extrapolation and grid diagnostics.
///
/// Fails with [`Error::GridTooCoarse`] when refinement moves a level by more
/// than a tenth of its spacing to the next level, and with
/// [`Error::BoxTooSmall`] when the top requested eigenvector keeps more than
/// `1e-6` of its mass beyond `0.9 r_max`.
pub fn fd_eigenvalues(
    spec: &PotentialSpec,
    c: &PhysicalConstants,
    m: i32,
    count: usize,
    grid: FdGrid,
) -> Result<OracleResult> {
    spec.validate()?;
    c.validate()?;
    grid.validate()?;
    if count == 0 {
        return Err(invalid("count must be at least 1"));
    }
    if count + 1 > grid.n_points {
        return Err(invalid("count exceeds the number of grid points"));
    }

    let fine_grid = grid.refined();
    let finest_grid = fine_grid.refined();
    let (coarse, _, _) = solve(spec, c, m, &grid, count);
    let (fine, fdiag, foff) = solve(spec, c, m, &fine_grid, count + 1);
    let (finest, _, _) = solve(spec, c, m, &finest_grid, count);

    for k in 0..count {
        let spacing = fine[k + 1] - fine[k];
        let gap = (coarse[k] - fine[k]).abs();
        if gap > COARSE_GAP_FRACTION * spacing {
            return Err(Error::GridTooCoarse(format!(
                "level {k}: refinement moved the eigenvalue by {gap:.3e}, level spacing {spacing:.3e}"
            )));
        }
    }

    let top = eigenvector_tail_mass(&fdiag, &foff, fine[count - 1], &fine_grid);
    if top > BOX_TAIL_MASS {
        return Err(Error::BoxTooSmall(format!(
            "level {} keeps {top:.3e} of its mass beyond 0.9 r_max = {}",
            count - 1,
            0.9 * grid.r_max
        )));
    }

    let refined: Vec<f64> = coarse.iter().zip(&fine).map(|(c, f)| (4.0 * f - c) / 3.0).collect();
    let level_orders: Vec<f64> = (0..count)
        .map(|k| ((coarse[k] - fine[k]) / (fine[k] - finest[k])).abs().log2())
        .collect();

    Ok(OracleResult {
        m,
        eigenvalues: coarse,
        fine_eigenvalues: fine[..count].to_vec(),
        grid,
        refined_eigenvalues: refined,
        convergence_order: level_orders[0],
        level_orders,
    })
}

fn eigenvector_tail_mass(diag: &[f64], off: &[f64], lambda: f64, grid: &FdGrid) -> f64 {
    let v = tridiag::eigenvector(diag, off, lambda);
    let cut = 0.9 * grid.r_max;
    let total: f64 = v.iter().map(|x| x * x).sum();
    let tail: f64 = v
        .iter()
        .enumerate()
        .filter(|(i, _)| grid.node(*i) > cut)
        .map(|(_, x)| x * x)
        .sum();
    tail / total
}

/// Box and resolution for the lowest `count` levels at azimuthal number `m`.
///
/// The box is the larger of `40 r0` and the radius holding all but `1e-10`
/// of the top requested state's probability, using the closed-form decay
/// rate only to size the box. The spacing resolves the shortest decay length
/// among the requested states by at least 50 points and never exceeds
/// `r0 / 100`.
pub fn default_grid(spec: &PotentialSpec, c: &PhysicalConstants, m: i32, count: usize) -> Result<FdGrid> {
    if count == 0 {
        return Err(invalid("count must be at least 1"));
    }
    let r0 = spec.r0();
    let top = bound_state(spec, c, QuantumNumbers::new(count as u32 - 1, m))?;
    let ground = bound_state(spec, c, QuantumNumbers::new(0, m))?;
    let r_max = (40.0 * r0).max(default_r_max(&top));
    let h = (0.01 * r0).min(r0 / (50.0 * ground.scale));
    let n_points = ((r_max / h).ceil() as usize).max(4000);
    FdGrid::from_origin(r_max, n_points)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit() -> PhysicalConstants {
        PhysicalConstants::default()
    }

    #[test]
    fn grid_geometry() {
        let g = FdGrid::from_origin(40.0, 4000).unwrap();
        assert!((g.spacing() - 0.01).abs() < 1e-15);
        assert!((g.r_min - 0.005).abs() < 1e-15);
        assert_eq!(g.box_faces().0, 0.0);
        assert!((g.box_faces().1 - 40.0).abs() < 1e-12);
        let f = g.refined();
        assert_eq!(f.n_points, 8000);
        assert!((f.spacing() - 0.005).abs() < 1e-15);
        assert!((f.r_min - 0.0025).abs() < 1e-15);
        assert_eq!(f.box_faces().0, 0.0);
        assert!((f.box_faces().1 - 40.0).abs() < 1e-12);
        assert!(FdGrid::new(0.0, 1.0, 100).is_err());
        assert!(FdGrid::new(1.0, 0.5, 100).is_err());
        assert!(FdGrid::new(0.1, 1.0, 8).is_err());
    }

    #[test]
    fn kratzer_ground_state() {
        let spec = PotentialSpec::kratzer(1.0, 1.0).unwrap();
        let grid = FdGrid::from_origin(40.0, 4000).unwrap();
        let res = fd_eigenvalues(&spec, &unit(), 0, 1, grid).unwrap();
        let exact = bound_state(&spec, &unit(), QuantumNumbers::new(0, 0)).unwrap().energy;
        assert!((res.refined_eigenvalues[0] / exact - 1.0).abs() < 1e-3);
    }

    #[test]
    fn modified1_ground_state_is_shifted_up() {
        let spec = PotentialSpec::modified1(1.0, 1.0).unwrap();
        let grid = FdGrid::from_origin(40.0, 4000).unwrap();
        let res = fd_eigenvalues(&spec, &unit(), 0, 1, grid).unwrap();
        assert!((res.refined_eigenvalues[0] - 0.454_18).abs() < 1e-3);
    }

    #[test]
    fn coulomb_ground_state() {
        let spec = PotentialSpec::modified2(1.0, 1.0, 0.0).unwrap();
        let grid = FdGrid::from_origin(40.0, 4000).unwrap();
        let res = fd_eigenvalues(&spec, &unit(), 0, 1, grid).unwrap();
        assert!((res.refined_eigenvalues[0] / -2.0 - 1.0).abs() < 1e-2);
    }

    #[test]
    fn second_order_for_kratzer_with_m() {
        let spec = PotentialSpec::kratzer(1.0, 1.0).unwrap();
        for m in 1..=3 {
            let grid = default_grid(&spec, &unit(), m, 2).unwrap();
            let res = fd_eigenvalues(&spec, &unit(), m, 2, grid).unwrap();
            assert!(
                (1.7..=2.3).contains(&res.convergence_order),
                "m={m}: {}",
                res.convergence_order
            );
        }
    }

    #[test]
    fn coarse_grid_and_small_box_are_reported() {
        let spec = PotentialSpec::kratzer(1.0, 1.0).unwrap();
        let coarse = FdGrid::from_origin(40.0, 16).unwrap();
        assert!(matches!(
            fd_eigenvalues(&spec, &unit(), 0, 3, coarse),
            Err(Error::GridTooCoarse(_))
        ));
        let small = FdGrid::from_origin(6.0, 2000).unwrap();
        assert!(matches!(
            fd_eigenvalues(&spec, &unit(), 0, 3, small),
            Err(Error::BoxTooSmall(_))
        ));
    }

    #[test]
    fn rejects_zero_count() {
        let spec = PotentialSpec::kratzer(1.0, 1.0).unwrap();
        let grid = FdGrid::from_origin(40.0, 100).unwrap();
        assert!(fd_eigenvalues(&spec, &unit(), 0, 0, grid).is_err());
    }
}
