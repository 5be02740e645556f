//! Direct evaluation of `T g(x)` for radial polynomial data on the unit disc,
//! `g(y) = p(|y|²) χ_B(y)`.
//!
//! In polar coordinates around `x` the kernel is `Ω(φ)/ρ²`, so
//! `T g(x) = ∫ Ω(φ) ∫ g(x − ρe_φ) dρ/ρ dφ`. Along each ray `g` is a polynomial
//! in `ρ` on the chord `ρ₁ < ρ < ρ₂`, and the inner integral is elementary.
//! Inside the disc the logarithmic part `g(x) log ρ₁` is constant in `φ` and
//! drops out against `∫Ω = 0`.

use std::f64::consts::PI;

use rayon::prelude::*;

use crate::grid::{Grid, GridField};
use crate::kernels::KernelSpec;
use crate::special::quad;
use crate::{Error, Result};

/// Coefficients of `ρ ↦ p(A + Bρ + ρ²)`, lowest degree first.
fn ray_polynomial(p: &[f64], a: f64, b: f64) -> Vec<f64> {
    let s = [a, b, 1.0];
    let mut out = vec![0.0; 2 * p.len().max(1) - 1];
    let mut power = vec![1.0];
    for (j, pj) in p.iter().enumerate() {
        for (k, c) in power.iter().enumerate() {
            out[k] += pj * c;
        }
        if j + 1 < p.len() {
            let mut next = vec![0.0; power.len() + 2];
            for (k, c) in power.iter().enumerate() {
                for (l, sl) in s.iter().enumerate() {
                    next[k + l] += c * sl;
                }
            }
            power = next;
        }
    }
    out
}

/// `∫_{ρ₁}^{ρ₂} q(ρ)/ρ dρ`, with the logarithm measured from 1 when `ρ₁ = 0`.
fn chord_integral(q: &[f64], r1: f64, r2: f64) -> f64 {
    let mut s = if r1 > 0.0 { q[0] * (r2 / r1).ln() } else { q[0] * r2.ln() };
    let (mut p1, mut p2) = (1.0, 1.0);
    for (k, c) in q.iter().enumerate().skip(1) {
        p1 *= r1;
        p2 *= r2;
        s += c * (p2 - p1) / k as f64;
    }
    s
}

/// `T g(x)` for `g(y) = Σ_j p_j |y|^{2j} χ_B(y)` and a planar kernel.
pub fn radial_ball_transform(spec: &KernelSpec, p: &[f64], x: [f64; 2], tol: f64) -> Result<f64> {
    if spec.dim() != 2 {
        return Err(Error::DimensionMismatch { expected: 2, found: spec.dim() });
    }
    let r2 = x[0] * x[0] + x[1] * x[1];
    let r = r2.sqrt();
    let alpha = x[1].atan2(x[0]);
    let on_circle = (r2 - 1.0).abs() <= 1e-12;
    let inside = r2 < 1.0 && !on_circle;
    let integrand = |phi: f64| -> f64 {
        let (s, c) = phi.sin_cos();
        let proj = x[0] * c + x[1] * s;
        let disc = proj * proj - r2 + 1.0;
        if disc < 0.0 {
            return 0.0;
        }
        let root = disc.sqrt();
        let (r1, r2p) = if inside || on_circle { (0.0, proj + root) } else { (proj - root, proj + root) };
        if r2p <= 0.0 || r1 < 0.0 {
            return 0.0;
        }
        let q = ray_polynomial(p, r2, -2.0 * proj);
        spec.omega(&[c, s]) * chord_integral(&q, r1, r2p)
    };
    if inside {
        Ok(quad::integrate(&integrand, alpha, alpha + PI, tol)?
            + quad::integrate(&integrand, alpha + PI, alpha + 2.0 * PI, tol)?)
    } else if on_circle {
        // Directions pointing into the disc; the others see an empty chord.
        Ok(quad::integrate(&integrand, alpha - PI / 2.0, alpha, tol)?
            + quad::integrate(&integrand, alpha, alpha + PI / 2.0, tol)?)
    } else {
        let beta = (1.0 / r).asin();
        Ok(quad::integrate(&integrand, alpha - beta, alpha, tol)?
            + quad::integrate(&integrand, alpha, alpha + beta, tol)?)
    }
}

/// [`radial_ball_transform`] at every node of a planar grid.
pub fn radial_ball_transform_field(spec: &KernelSpec, p: &[f64], grid: &Grid<f64>, tol: f64) -> Result<GridField<f64>> {
    if grid.dim() != 2 {
        return Err(Error::DimensionMismatch { expected: 2, found: grid.dim() });
    }
    let values: Result<Vec<f64>> =
        (0..grid.len()).into_par_iter().map(|i| radial_ball_transform(spec, p, grid.point(i), tol)).collect();
    GridField::new(*grid, values?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernels::kernel_eval;

    #[test]
    fn ray_polynomial_expansion() {
        // p(s) = 1 + 2s, s = 3 + 4ρ + ρ²  →  7 + 8ρ + 2ρ²
        assert_eq!(ray_polynomial(&[1.0, 2.0], 3.0, 4.0), vec![7.0, 8.0, 2.0]);
    }

    #[test]
    fn ball_average_witness_far_field() {
        // T((1/π) χ_B) = K outside the disc and 0 inside.
        let spec = KernelSpec::riesz_xy();
        let p = [1.0 / PI];
        for x in [[1.7, 0.4], [-2.5, 3.0], [0.2, -1.1]] {
            let v = radial_ball_transform(&spec, &p, x, 1e-11).unwrap();
            let k = kernel_eval(&spec, &x).unwrap();
            assert!((v - k).abs() < 1e-9, "{x:?}: {v} vs {k}");
        }
        for x in [[0.1, 0.2], [-0.6, 0.7], [0.0, 0.0], [0.99, 0.1]] {
            let v = radial_ball_transform(&spec, &p, x, 1e-11).unwrap();
            assert!(v.abs() < 1e-9, "{x:?}: {v}");
        }
    }
}
