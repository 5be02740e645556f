use std::f64::consts::PI;

use super::bilaplacian::b_bilaplacian;
use super::function::{sample_ball_polynomial, ClosedForm, Flags, WitnessFunction};
use super::second_order::Residual;
use crate::algebra::{invert_element, CZElement};
use crate::grid::{dft_forward, Grid, GridField};
use crate::kernels::{KernelSpec, Weight};
use crate::operators::{apply_full, radial_ball_transform_field};
use crate::special::bessel_g;
use crate::{Error, ExactPoly, Rational, Result};

/// `ψ = s(1 − |z|²)² χ_B` and `β₀ = −(1/π)Δψ`, scaled so that `R_P(β₀) = c_xy·xy·χ_B`
/// for `R_P` with symbol `uv/|ξ|²`.
#[derive(Clone, Debug)]
pub struct Sufficiency {
    pub psi: WitnessFunction,
    pub beta0: WitnessFunction,
    pub scale: Weight,
    pub c_xy: Weight,
    /// `β₀ = χ_B (a + b|z|²)`.
    pub beta0_coeffs: [Weight; 2],
}

pub fn psi_beta0(grid: &Grid<f64>) -> Result<Sufficiency> {
    let c_xy = b_bilaplacian(None, grid)?.c_xy;
    if c_xy.is_zero() {
        return Err(Error::Unsupported("c_xy vanishes; the construction reduces to the ball average".into()));
    }
    // FT(xyχ_B) = −2π uv G₃ and FT((1−|z|²)²χ_B) = 16π G₃.
    let scale = Weight::new(Rational::new((-1).into(), 8.into()), 1).mul(&c_xy);

    let r2 = ExactPoly::radius_squared();
    let one = ExactPoly::constant(Rational::from_integer(1.into()));
    let shape = one.sub(&r2).pow(2);
    let lap = shape.laplacian().scale(&(-scale.ratio.clone()));
    let (b0, b1) = (lap.coeff(0, 0), lap.coeff(2, 0));
    assert_eq!(lap, ExactPoly::constant(b0.clone()).add(&r2.scale(&b1)), "Δψ is radial quadratic");
    let pi_power = scale.pi_power - 1;
    let beta0_coeffs = [Weight::new(b0, pi_power), Weight::new(b1, pi_power)];

    let s = scale.value();
    let psi_coeffs = vec![s, -2.0 * s, s];
    let psi = WitnessFunction::verified(
        Some(ClosedForm::BallPolynomial { coeffs: psi_coeffs.clone() }),
        sample_ball_polynomial(grid, &psi_coeffs),
        Some(1.0),
        None,
        Flags { bounded: true, compactly_supported: true, ..Flags::default() },
    )?;
    let coeffs = vec![beta0_coeffs[0].value(), beta0_coeffs[1].value()];
    let beta0 = WitnessFunction::verified(
        Some(ClosedForm::BallPolynomial { coeffs: coeffs.clone() }),
        sample_ball_polynomial(grid, &coeffs),
        Some(1.0),
        None,
        Flags { bounded: true, compactly_supported: true, zero_mean: true, ..Flags::default() },
    )?;
    Ok(Sufficiency { psi, beta0, scale, c_xy, beta0_coeffs })
}

/// `max_{|ξ|≤ξ_max} |ψ̂ − 16πs G₃(|ξ|)| / max |16πs G₃|` with the grid transform of the samples.
pub fn psi_spectral_deviation(suff: &Sufficiency, xi_max: f64) -> Result<f64> {
    let spec = dft_forward(&suff.psi.samples);
    let s = suff.scale.value();
    let (mut err, mut peak) = (0.0_f64, 0.0_f64);
    for (i, c) in spec.coeffs().iter().enumerate() {
        let [u, v] = spec.frequency(i);
        let rho = (u * u + v * v).sqrt();
        if rho > xi_max {
            continue;
        }
        let exact = 16.0 * PI * s * bessel_g(3, rho)?;
        err = err.max((c - exact).norm());
        peak = peak.max(exact.abs());
    }
    Ok(err / peak)
}

/// `‖R_P(β₀) − c_xy·xy·χ_B‖∞ / ‖c_xy·xy·χ_B‖∞`.
pub fn step_one_residual(grid: &Grid<f64>) -> Result<Residual> {
    let suff = psi_beta0(grid)?;
    let spec = KernelSpec::riesz_xy();
    let c = suff.c_xy.value();
    let target = GridField::from_fn(*grid, |x| if x[0] * x[0] + x[1] * x[1] <= 1.0 { c * x[0] * x[1] } else { 0.0 })?;
    let p = [suff.beta0_coeffs[0].value(), suff.beta0_coeffs[1].value()];
    let ray = radial_ball_transform_field(&spec, &p, grid, 1e-10)?;
    let spectral = apply_full(&spec, &suff.beta0.samples)?;
    let norm = target.sup_norm();
    Ok(Residual { ray: ray.sub(&target)?.sup_norm() / norm, spectral: spectral.sub(&target)?.sup_norm() / norm })
}

/// `β = U⁻¹β₀` through the inverse multiplier; the mean of `β₀` is carried by `1/λ`.
pub fn beta_full(u: &CZElement, beta0: &WitnessFunction) -> Result<WitnessFunction> {
    let inv = invert_element(u)?;
    let grid = *beta0.samples.grid();
    let volume = grid.side_length().powi(grid.dim() as i32);
    let mean = beta0.samples.integral() / volume / u.lambda();
    let beta = inv.apply(&beta0.samples)?.map(|v| v + mean)?;
    WitnessFunction::verified(
        Some(ClosedForm::InverseImage { lambda: u.lambda() }),
        beta,
        None,
        Some(3.0),
        Flags { bounded: true, ..Flags::default() },
    )
}
