//! Adaptive quadrature on top of tanh-sinh rules.

use quadrature::double_exponential;

use crate::{Error, Result};

const MAX_DEPTH: u32 = 40;

/// `∫_a^b f` to an absolute tolerance. Endpoint singularities are handled by
/// the tanh-sinh rule; interior difficulties by recursive bisection.
pub fn integrate<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64) -> Result<f64> {
    if a == b {
        return Ok(0.0);
    }
    // Errors a few ulps below ∫|f| over the whole range are rounding, not truncation.
    let scale = double_exponential::integrate(|t| f(t).abs(), a, b, tol).integral;
    let floor = if scale.is_finite() { 1e-15 * scale } else { 0.0 };
    adaptive(f, a, b, tol, floor, 0)
}

fn adaptive<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64, floor: f64, depth: u32) -> Result<f64> {
    let out = double_exponential::integrate(f, a, b, tol);
    if out.error_estimate <= tol.max(floor) {
        return Ok(out.integral);
    }
    if depth >= MAX_DEPTH || (b - a).abs() <= 1e-14 * a.abs().max(b.abs()).max(1.0) {
        return Err(Error::Quadrature(format!(
            "interval [{a:e}, {b:e}], error estimate {:e} > {tol:e}",
            out.error_estimate
        )));
    }
    let m = 0.5 * (a + b);
    Ok(adaptive(f, a, m, 0.5 * tol, floor, depth + 1)? + adaptive(f, m, b, 0.5 * tol, floor, depth + 1)?)
}

/// `∫_a^∞ f` through the map `t = a + u / (1 − u)`.
pub fn integrate_to_infinity<F: Fn(f64) -> f64>(f: &F, a: f64, tol: f64) -> Result<f64> {
    let g = |u: f64| {
        let one_minus = 1.0 - u;
        if one_minus <= 0.0 {
            return 0.0;
        }
        let t = a + u / one_minus;
        f(t) / (one_minus * one_minus)
    };
    integrate(&g, 0.0, 1.0, tol)
}

/// `∫_{-∞}^b f`.
pub fn integrate_from_neg_infinity<F: Fn(f64) -> f64>(f: &F, b: f64, tol: f64) -> Result<f64> {
    integrate_to_infinity(&|t: f64| f(-t), -b, tol)
}

/// Gauss–Legendre nodes and weights on `[-1, 1]`.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let nf = n as f64;
    for i in 0..(n + 1) / 2 {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let kf = k as f64;
                let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
                p0 = p1;
                p1 = p2;
            }
            let pn = if n == 0 {
                1.0
            } else if n == 1 {
                x
            } else {
                p1
            };
            let pm = if n == 1 { 1.0 } else { p0 };
            dp = nf * (x * pn - pm) / (x * x - 1.0);
            let dx = pn / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gauss_legendre_integrates_polynomials_exactly() {
        let (x, w) = gauss_legendre(6);
        let s: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(10)).sum();
        assert!((s - 2.0 / 11.0).abs() < 1e-14);
        let total: f64 = w.iter().sum();
        assert!((total - 2.0).abs() < 1e-14);
    }

    #[test]
    fn log_singularity_and_infinite_range() {
        let v = integrate(&|t: f64| t.ln(), 0.0, 1.0, 1e-12).unwrap();
        assert!((v + 1.0).abs() < 1e-10);
        let v = integrate_to_infinity(&|t: f64| 1.0 / (t * t), 1.0, 1e-12).unwrap();
        assert!((v - 1.0).abs() < 1e-10);
        let v = integrate_from_neg_infinity(&|t: f64| (t).exp(), 0.0, 1e-12).unwrap();
        assert!((v - 1.0).abs() < 1e-10);
    }

    #[test]
    fn sharp_interior_peak() {
        let d = 1e-4;
        let f = |t: f64| d / (t * t + d * d);
        let v = integrate(&f, -1.0, 1.0, 1e-10).unwrap();
        let exact = 2.0 * (1.0 / d).atan();
        assert!((v - exact).abs() < 1e-8, "{v} vs {exact}");
    }
}
