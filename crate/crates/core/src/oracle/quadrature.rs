//! Composite Gauss-Legendre quadrature.

use std::sync::OnceLock;

use crate::error::{invalid, Error, Result};

const ORDER: usize = 20;
const MAX_PANELS: usize = 1 << 16;
/// Geometric sub-panels packed into the panel touching the origin, so that
/// integrands like `r^{2e+1}` with non-integer `e` keep full accuracy.
const ORIGIN_GRADING_LEVELS: usize = 40;

/// Gauss-Legendre nodes and weights on `[-1, 1]` by Newton iteration on `P_n`.
pub fn gauss_legendre_rule(order: usize) -> (Vec<f64>, Vec<f64>) {
    let n = order;
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let kf = k as f64;
                let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

fn rule() -> &'static (Vec<f64>, Vec<f64>) {
    static RULE: OnceLock<(Vec<f64>, Vec<f64>)> = OnceLock::new();
    RULE.get_or_init(|| gauss_legendre_rule(ORDER))
}

fn panel<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let (nodes, weights) = rule();
    let half = 0.5 * (b - a);
    let mid = 0.5 * (a + b);
    let mut sum = 0.0;
    let mut abs_sum = 0.0;
    for (x, w) in nodes.iter().zip(weights) {
        let v = w * f(mid + half * x);
        sum += v;
        abs_sum += v.abs();
    }
    (half * sum, half * abs_sum)
}

/// Smallest `x >= power` with `x^power e^{-x}` below `10^-decades` of its peak.
pub fn exp_poly_tail(power: f64, decades: f64) -> f64 {
    let p = power.max(0.0);
    let log_at = |x: f64| if p > 0.0 { p * x.ln() - x } else { -x };
    let cutoff = log_at(p.max(f64::MIN_POSITIVE)) - decades * std::f64::consts::LN_10;
    let mut x = p.max(1.0);
    while log_at(x) > cutoff {
        x += 0.25;
    }
    x
}

/// Plain composite rule with `panels` equal panels on `[a, b]`.
pub fn gauss_legendre_panels<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, panels: usize) -> f64 {
    let h = (b - a) / panels as f64;
    (0..panels)
        .map(|i| panel(&f, a + i as f64 * h, a + (i + 1) as f64 * h).0)
        .sum()
}

/// Composite rule on `[0, r_max]` whose first panel is graded geometrically
/// toward the origin. Returns the integral and the integral of `|f|`.
fn graded(f: &impl Fn(f64) -> f64, r_max: f64, panels: usize) -> (f64, f64) {
    let h = r_max / panels as f64;
    let mut sum = 0.0;
    let mut abs_sum = 0.0;
    let mut hi = h;
    for _ in 0..ORIGIN_GRADING_LEVELS {
        let lo = 0.5 * hi;
        let (s, a) = panel(f, lo, hi);
        sum += s;
        abs_sum += a;
        hi = lo;
    }
    let (s, a) = panel(f, 0.0, hi);
    sum += s;
    abs_sum += a;
    for i in 1..panels {
        let (s, a) = panel(f, i as f64 * h, (i + 1) as f64 * h);
        sum += s;
        abs_sum += a;
    }
    (sum, abs_sum)
}

/// `int_0^{r_max} f(r) dr`, doubling the panel count until two successive
/// estimates agree to `rel_tol` relative to `int |f|`.
pub fn integrate_radial<F: Fn(f64) -> f64>(f: F, r_max: f64, rel_tol: f64) -> Result<f64> {
    if !(r_max.is_finite() && r_max > 0.0) {
        return Err(invalid(format!("r_max must be positive, got {r_max}")));
    }
    if rel_tol.is_nan() || rel_tol < 1e-12 {
        return Err(invalid(format!("rel_tol must be at least 1e-12, got {rel_tol}")));
    }
    let mut panels = 4;
    let (mut prev, _) = graded(&f, r_max, panels);
    while panels < MAX_PANELS {
        panels *= 2;
        let (cur, scale) = graded(&f, r_max, panels);
        if !cur.is_finite() {
            break;
        }
        if (cur - prev).abs() <= rel_tol * scale.max(f64::MIN_POSITIVE) {
            return Ok(cur);
        }
        prev = cur;
    }
    Err(Error::NonConvergence(format!(
        "quadrature on [0, {r_max}] did not reach rel_tol {rel_tol} with {MAX_PANELS} panels"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::{laguerre, log_factorial, log_gamma};

    #[test]
    fn rule_integrates_polynomials_exactly() {
        let (x, w) = gauss_legendre_rule(ORDER);
        assert!((w.iter().sum::<f64>() - 2.0).abs() < 1e-14);
        for p in 0..(2 * ORDER) {
            let got: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(p as i32)).sum();
            let want = if p % 2 == 0 { 2.0 / (p as f64 + 1.0) } else { 0.0 };
            assert!((got - want).abs() < 1e-14, "p={p}");
        }
    }

    #[test]
    fn exponential_moment() {
        let v = integrate_radial(|r| r * (-2.0 * r).exp(), 60.0, 1e-12).unwrap();
        assert!((v - 0.25).abs() < 1e-12);
    }

    #[test]
    fn laguerre_off_diagonal_vanishes() {
        for a in [0.0, 0.5, 2.0, 2.828_427_124_746_19] {
            let v = integrate_radial(
                |x| x.powf(a) * (-x).exp() * laguerre(2, a, x).unwrap() * laguerre(3, a, x).unwrap(),
                120.0,
                1e-12,
            )
            .unwrap();
            assert!(v.abs() < 1e-10, "a={a}: {v}");
        }
    }

    #[test]
    fn laguerre_norms() {
        for a in [0.0, 0.5, 3.7] {
            for n in 0..=8u32 {
                let v = integrate_radial(
                    |x| x.powf(a) * (-x).exp() * laguerre(n, a, x).unwrap().powi(2),
                    150.0,
                    1e-12,
                )
                .unwrap();
                let want = (log_gamma(f64::from(n) + a + 1.0).unwrap() - log_factorial(n)).exp();
                assert!((v / want - 1.0).abs() < 1e-10, "a={a} n={n}");
            }
        }
    }

    #[test]
    fn sqrt_singularity_at_origin() {
        let v = integrate_radial(|x| x.sqrt(), 1.0, 1e-12).unwrap();
        assert!((v - 2.0 / 3.0).abs() < 1e-13);
    }

    #[test]
    fn rejects_bad_arguments() {
        assert!(integrate_radial(|x| x, 0.0, 1e-8).is_err());
        assert!(integrate_radial(|x| x, 1.0, 1e-14).is_err());
    }
}
