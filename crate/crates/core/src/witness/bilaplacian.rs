use num_traits::{One, Zero};

use super::function::{sample_ball_polynomial, ClosedForm, Flags, WitnessFunction};
use super::second_order::{outside_kernel, Residual};
use crate::grid::Grid;
use crate::kernels::{HarmonicPolynomial, KernelSpec, Weight};
use crate::operators::{apply_full, radial_ball_transform_field};
use crate::{Error, ExactPoly, Rational, Result};

/// `φ = A₀ + A₁|z|² + A₂|z|⁴ + A₃|z|⁶` glued to `E = |z|² log|z| / 8π` and `b = Δ²φ`.
#[derive(Clone, Debug)]
pub struct BilaplacianWitness {
    pub b: WitnessFunction,
    /// `A₀..A₃`.
    pub a: [Weight; 4],
    /// `b = χ_B (α + β|z|²)`.
    pub alpha: Weight,
    pub beta: Weight,
    /// Constant of the extra term `c_xy · xy · χ_B` in `T(b)`.
    pub c_xy: Weight,
}

fn int(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

/// Exact Gauss–Jordan elimination.
fn solve(mut m: Vec<Vec<Rational>>, mut rhs: Vec<Rational>) -> Option<Vec<Rational>> {
    let n = rhs.len();
    for col in 0..n {
        let pivot = (col..n).find(|r| !m[*r][col].is_zero())?;
        m.swap(col, pivot);
        rhs.swap(col, pivot);
        let inv = Rational::one() / &m[col][col];
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let f = &m[r][col] * &inv;
                for c in col..n {
                    let delta = &f * &m[col][c];
                    m[r][c] -= delta;
                }
                let delta = &f * &rhs[col];
                rhs[r] -= delta;
            }
        }
    }
    Some((0..n).map(|i| &rhs[i] / &m[i][i]).collect())
}

/// `A₀..A₃` in units of `1/8π`.
fn gluing_coefficients() -> Vec<Rational> {
    // Radial derivatives of r^{2k} and of 8πE = r² log r at r = 1.
    let falling = |p: i64, m: i64| (0..m).fold(1, |acc, i| acc * (p - i));
    let m = (0..4).map(|order| (0..4).map(|k| int(falling(2 * k, order))).collect()).collect();
    let rhs = vec![int(0), int(1), int(3), int(2)];
    solve(m, rhs).expect("the gluing system is nonsingular")
}

/// Builds `b` for the kernel `−(1/π)xy/|z|⁴ + (2/π)P₄/|z|⁶`.
pub fn b_bilaplacian(p4: Option<&HarmonicPolynomial>, grid: &Grid<f64>) -> Result<BilaplacianWitness> {
    if let Some(p) = p4 {
        if p.degree() != 4 {
            return Err(Error::InvalidKernel(format!("quartic term has degree {}", p.degree())));
        }
    }
    if grid.dim() != 2 {
        return Err(Error::DimensionMismatch { expected: 2, found: grid.dim() });
    }
    let a = gluing_coefficients();
    let r2 = ExactPoly::radius_squared();
    let phi = (0..4).fold(ExactPoly::zero(), |acc, k| acc.add(&r2.pow(k as u32).scale(&a[k])));

    let bi = phi.laplacian().laplacian();
    let (alpha8, beta8) = (bi.coeff(0, 0), bi.coeff(2, 0));
    assert_eq!(bi, ExactPoly::constant(alpha8.clone()).add(&r2.scale(&beta8)), "Δ²φ is radial quadratic");

    // L = ∂₁∂₂Δ + P₄(∂), the operator with L(E) = T.
    let mixed = |q: &ExactPoly| q.laplacian().dx().dy();
    assert!(mixed(&r2.pow(2)).is_zero(), "∂₁∂₂Δ|z|⁴ = 0");
    let mut l_phi = mixed(&phi);
    if let Some(p) = p4 {
        assert!(p.poly().apply_as_operator(&r2.pow(2)).is_zero(), "P₄(∂)|z|⁴ = 0");
        assert!(p.poly().apply_as_operator(&r2.pow(3)).is_zero(), "P₄(∂)|z|⁶ = 0");
        l_phi = l_phi.add(&p.poly().apply_as_operator(&phi));
    }
    let c8 = l_phi.coeff(1, 1);
    assert_eq!(l_phi, ExactPoly::monomial(c8.clone(), 1, 1), "L(φ) is a multiple of xy");

    let eighth = Rational::new(1.into(), 8.into());
    let w = |r: &Rational| Weight::new(r * &eighth, -1);
    let (alpha, beta) = (w(&alpha8), w(&beta8));
    let coeffs = vec![alpha.value(), beta.value()];
    let b = WitnessFunction::verified(
        Some(ClosedForm::BallPolynomial { coeffs: coeffs.clone() }),
        sample_ball_polynomial(grid, &coeffs),
        Some(1.0),
        None,
        Flags { bounded: true, compactly_supported: true, ..Flags::default() },
    )?;
    Ok(BilaplacianWitness { b, a: [w(&a[0]), w(&a[1]), w(&a[2]), w(&a[3])], alpha, beta, c_xy: w(&c8) })
}

/// `‖T(b) − χ_{ℂ∖B}K − c_xy·xy·χ_B‖₂ / ‖χ_{ℂ∖B}K‖₂`.
pub fn bilaplacian_residual(p4: Option<&HarmonicPolynomial>, grid: &Grid<f64>) -> Result<Residual> {
    let w = b_bilaplacian(p4, grid)?;
    let spec = KernelSpec::with_quartic(p4.cloned())?;
    let c = w.c_xy.value();
    let reference = outside_kernel(&spec, grid, |_| 0.0)?;
    let target = outside_kernel(&spec, grid, |x| c * x[0] * x[1])?;
    let p = [w.alpha.value(), w.beta.value()];
    let ray = radial_ball_transform_field(&spec, &p, grid, 1e-10)?;
    let spectral = apply_full(&spec, &w.b.samples)?;
    let norm = reference.l2_norm();
    Ok(Residual { ray: ray.sub(&target)?.l2_norm() / norm, spectral: spectral.sub(&target)?.l2_norm() / norm })
}

impl BilaplacianWitness {
    pub fn c_xy_value(&self) -> f64 {
        self.c_xy.value()
    }

    /// `A₀ + A₁ + A₂ + A₃`; zero since `E(1) = 0`.
    pub fn gluing_sum(&self) -> Rational {
        self.a.iter().fold(Rational::zero(), |s, w| s + &w.ratio)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernels::quartic;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn exact_constants() {
        let a = gluing_coefficients();
        assert_eq!(a, vec![r(-1, 6), r(-1, 4), r(1, 2), r(-1, 12)]);
        assert!(a.iter().fold(Rational::zero(), |s, v| s + v).is_zero());
        let g = Grid::new(2, 8.0_f64, 32).unwrap();
        let p4 = quartic(&r(1, 1), &r(0, 1));
        for p in [None, Some(&p4)] {
            let w = b_bilaplacian(p, &g).unwrap();
            assert_eq!(w.alpha, Weight::new(r(4, 1), -1));
            assert_eq!(w.beta, Weight::new(r(-6, 1), -1));
            assert_eq!(w.c_xy, Weight::new(r(-3, 1), -1));
            assert!(w.gluing_sum().is_zero());
        }
    }

    #[test]
    fn unit_mass() {
        // ∫ χ_B (α + β|z|²) = π(α + β/2).
        let g = Grid::new(2, 8.0_f64, 32).unwrap();
        let w = b_bilaplacian(None, &g).unwrap();
        let mass = std::f64::consts::PI * (w.alpha.value() + 0.5 * w.beta.value());
        assert!((mass - 1.0).abs() < 1e-14);
    }

    #[test]
    fn rejects_wrong_degree() {
        let g = Grid::new(2, 8.0_f64, 32).unwrap();
        let p2 = HarmonicPolynomial::new(ExactPoly::monomial(r(1, 1), 1, 1)).unwrap();
        assert!(b_bilaplacian(Some(&p2), &g).is_err());
    }

    #[test]
    fn coarse_residual() {
        let g = Grid::new(2, 8.0_f64, 64).unwrap();
        let p4 = quartic(&r(1, 1), &r(0, 1));
        let res = bilaplacian_residual(Some(&p4), &g).unwrap();
        assert!(res.ray < 2e-2, "{res:?}");
    }
}
