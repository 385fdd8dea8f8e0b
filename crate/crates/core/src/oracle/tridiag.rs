//! Symmetric tridiagonal eigenvalues by Sturm-sequence bisection, plus
//! inverse iteration for individual eigenvectors.

/// Number of eigenvalues strictly below `lambda`.
///
/// `off_sq` holds the squared off-diagonal entries. The count equals the
/// number of negative pivots of the `LDL^T` factorization of `T - lambda I`.
pub fn sturm_count(diag: &[f64], off_sq: &[f64], lambda: f64) -> usize {
    let mut count = 0;
    let mut q = 1.0;
    for (i, &d) in diag.iter().enumerate() {
        let coupling = if i == 0 { 0.0 } else { off_sq[i - 1] / q };
        q = d - lambda - coupling;
        if q == 0.0 {
            q = -f64::EPSILON * (d.abs() + lambda.abs()).max(f64::MIN_POSITIVE);
        }
        if q < 0.0 {
            count += 1;
        }
    }
    count
}

/// Gershgorin interval containing every eigenvalue.
pub fn gershgorin_bounds(diag: &[f64], off: &[f64]) -> (f64, f64) {
    let n = diag.len();
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for i in 0..n {
        let left = if i > 0 { off[i - 1].abs() } else { 0.0 };
        let right = if i + 1 < n { off[i].abs() } else { 0.0 };
        lo = lo.min(diag[i] - left - right);
        hi = hi.max(diag[i] + left + right);
    }
    (lo, hi)
}

/// The `count` smallest eigenvalues in ascending order.
pub fn lowest_eigenvalues(diag: &[f64], off: &[f64], count: usize) -> Vec<f64> {
    assert_eq!(off.len() + 1, diag.len().max(1));
    let count = count.min(diag.len());
    let off_sq: Vec<f64> = off.iter().map(|e| e * e).collect();
    let (lo0, hi0) = gershgorin_bounds(diag, off);
    let pad = 1e-12 * (lo0.abs() + hi0.abs()) + f64::MIN_POSITIVE;
    let (lo0, hi0) = (lo0 - pad, hi0 + pad);

    let mut out = Vec::with_capacity(count);
    let mut lower = lo0;
    for k in 0..count {
        // eigenvalue k is the smallest lambda with sturm_count(lambda+) > k
        let mut a = lower;
        let mut b = hi0;
        for _ in 0..200 {
            let mid = 0.5 * (a + b);
            if mid <= a || mid >= b {
                break;
            }
            if sturm_count(diag, &off_sq, mid) > k {
                b = mid;
            } else {
                a = mid;
            }
            if b - a <= 2.0 * f64::EPSILON * a.abs().max(b.abs()) {
                break;
            }
        }
        let value = 0.5 * (a + b);
        out.push(value);
        lower = a;
    }
    out
}

/// Unit eigenvector for an eigenvalue estimate, by shifted inverse iteration.
pub fn eigenvector(diag: &[f64], off: &[f64], lambda: f64) -> Vec<f64> {
    let n = diag.len();
    let scale = diag.iter().fold(0.0f64, |m, d| m.max(d.abs())).max(1.0);
    let shift = lambda + 1e-10 * scale;
    let mut x = vec![1.0; n];
    for _ in 0..4 {
        x = solve_shifted(diag, off, shift, &x);
        let norm = x.iter().map(|v| v * v).sum::<f64>().sqrt();
        if norm == 0.0 || !norm.is_finite() {
            break;
        }
        x.iter_mut().for_each(|v| *v /= norm);
    }
    x
}

/// Solves `(T - shift I) x = rhs` by Gaussian elimination with partial pivoting
/// restricted to the tridiagonal band.
fn solve_shifted(diag: &[f64], off: &[f64], shift: f64, rhs: &[f64]) -> Vec<f64> {
    let n = diag.len();
    if n == 1 {
        let d = diag[0] - shift;
        return vec![rhs[0] / if d == 0.0 { f64::EPSILON } else { d }];
    }
    // rows stored as (main, upper, upper2) after elimination
    let mut a = vec![0.0; n]; // sub-diagonal of current row
    let mut b: Vec<f64> = diag.iter().map(|d| d - shift).collect();
    let mut c = vec![0.0; n];
    let mut c2 = vec![0.0; n];
    let mut y = rhs.to_vec();
    a[1..n].copy_from_slice(&off[..(n - 1)]);
    c[..(n - 1)].copy_from_slice(&off[..(n - 1)]);

    for i in 0..n - 1 {
        if a[i + 1].abs() > b[i].abs() {
            // swap rows i and i+1
            let (bi, ci, c2i, yi) = (b[i], c[i], c2[i], y[i]);
            b[i] = a[i + 1];
            c[i] = b[i + 1];
            c2[i] = c[i + 1];
            y[i] = y[i + 1];
            a[i + 1] = bi;
            b[i + 1] = ci;
            c[i + 1] = c2i;
            y[i + 1] = yi;
        }
        if b[i] == 0.0 {
            b[i] = f64::EPSILON;
        }
        let factor = a[i + 1] / b[i];
        b[i + 1] -= factor * c[i];
        c[i + 1] -= factor * c2[i];
        y[i + 1] -= factor * y[i];
        a[i + 1] = 0.0;
    }
    if b[n - 1] == 0.0 {
        b[n - 1] = f64::EPSILON;
    }
    let mut x = vec![0.0; n];
    x[n - 1] = y[n - 1] / b[n - 1];
    x[n - 2] = (y[n - 2] - c[n - 2] * x[n - 1]) / b[n - 2];
    for i in (0..n.saturating_sub(2)).rev() {
        x[i] = (y[i] - c[i] * x[i + 1] - c2[i] * x[i + 2]) / b[i];
    }
    x
}
