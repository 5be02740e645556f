use std::f64::consts::PI;

use serde::Serialize;

use super::function::{sample_ball_polynomial, ClosedForm, Flags, WitnessFunction};
use crate::grid::{Grid, GridField};
use crate::kernels::{kernel_eval, KernelSpec};
use crate::operators::{apply_full, radial_ball_transform_field};
use crate::{Error, Result};

/// `b = (1/|B|) χ_B`; only the planar case is realized on a grid.
pub fn b_second_order(n: usize, grid: &Grid<f64>) -> Result<WitnessFunction> {
    if n != 2 {
        return Err(Error::Unsupported(format!("second-order witness for n = {n}")));
    }
    if grid.dim() != 2 {
        return Err(Error::DimensionMismatch { expected: 2, found: grid.dim() });
    }
    let coeffs = vec![1.0 / PI];
    let samples = sample_ball_polynomial(grid, &coeffs);
    WitnessFunction::verified(
        Some(ClosedForm::BallPolynomial { coeffs }),
        samples,
        Some(1.0),
        None,
        Flags { bounded: true, compactly_supported: true, ..Flags::default() },
    )
}

/// Relative residuals of a witness identity.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Residual {
    /// `T(b)` evaluated by ray quadrature at every node.
    pub ray: f64,
    /// `T(b)` through the periodic multiplier; contaminated by Gibbs ringing at the disc edge.
    pub spectral: f64,
}

/// `χ_{ℝ²∖B} K + extra(x)`, with node-center membership.
pub(crate) fn outside_kernel(
    spec: &KernelSpec,
    grid: &Grid<f64>,
    extra: impl Fn([f64; 2]) -> f64,
) -> Result<GridField<f64>> {
    let mut values = Vec::with_capacity(grid.len());
    for i in 0..grid.len() {
        let x = grid.point(i);
        let r2 = x[0] * x[0] + x[1] * x[1];
        values.push(if r2 > 1.0 { kernel_eval(spec, &x)? } else { extra(x) });
    }
    GridField::new(*grid, values)
}

pub(crate) fn relative_l2(a: &GridField<f64>, b: &GridField<f64>, reference: &GridField<f64>) -> Result<f64> {
    Ok(a.sub(b)?.l2_norm() / reference.l2_norm())
}

/// `‖T(b) − χ_{ℝ²∖B}K‖₂ / ‖χ_{ℝ²∖B}K‖₂` for `T` with kernel `x₁x₂/|x|⁴`.
pub fn second_order_residual(grid: &Grid<f64>) -> Result<Residual> {
    let spec = KernelSpec::riesz_second_order(2)?;
    let b = b_second_order(2, grid)?;
    let target = outside_kernel(&spec, grid, |_| 0.0)?;
    let ray = radial_ball_transform_field(&spec, &[1.0 / PI], grid, 1e-10)?;
    let spectral = apply_full(&spec, &b.samples)?;
    Ok(Residual { ray: relative_l2(&ray, &target, &target)?, spectral: relative_l2(&spectral, &target, &target)? })
}
