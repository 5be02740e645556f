use std::f64::consts::PI;

use super::function::{ClosedForm, Flags, WitnessFunction};
use super::second_order::relative_l2;
use crate::grid::{Grid, GridField};
use crate::kernels::KernelSpec;
use crate::operators::apply_full;
use crate::special::quad;
use crate::{Error, Result};

/// `γ₂` in `b = γ₂ Σ_k R_k(∂_k φ)` for the kernels `x_k/|x|³`.
pub const GAMMA_2D: f64 = 1.0 / (2.0 * PI);

/// `(1/πx) log|(1+x)/(1−x)|`, with the limit `2/π` at the origin and `+∞` at `±1`.
pub fn b_first_order_1d(x: f64) -> f64 {
    let a = x.abs();
    if a == 0.0 {
        return 2.0 / PI;
    }
    if a == 1.0 {
        return f64::INFINITY;
    }
    let t = a.min(1.0 / a);
    2.0 * t.atanh() / (PI * a)
}

/// Cell averages of [`b_first_order_1d`]; the logarithmic peaks at `±1` are integrable.
pub fn first_order_1d_field(grid: &Grid<f64>) -> Result<WitnessFunction> {
    if grid.dim() != 1 {
        return Err(Error::DimensionMismatch { expected: 1, found: grid.dim() });
    }
    let h = grid.spacing();
    let mut values = Vec::with_capacity(grid.len());
    for i in 0..grid.len() {
        let x = grid.coord(i);
        let (a, b) = (x - 0.5 * h, x + 0.5 * h);
        let mut cuts = vec![a];
        cuts.extend([-1.0, 1.0].into_iter().filter(|c| *c > a && *c < b));
        cuts.push(b);
        let mut s = 0.0;
        for w in cuts.windows(2) {
            s += quad::integrate(&b_first_order_1d, w[0], w[1], 1e-12)?;
        }
        values.push(s / h);
    }
    WitnessFunction::verified(
        Some(ClosedForm::FirstOrder1d),
        GridField::new(*grid, values)?,
        None,
        Some(2.0),
        Flags { bmo: true, ..Flags::default() },
    )
}

/// `∂_k φ = −(1/2π) χ_{ℝ²∖B} x_k/|x|³`, zero-based axis; cells cut by the
/// unit circle carry their cell average.
fn grad_phi(grid: &Grid<f64>, k: usize) -> GridField<f64> {
    const SUB: usize = 16;
    let h = grid.spacing();
    let point = |x: f64, y: f64| {
        let r2 = x * x + y * y;
        if r2 > 1.0 {
            -[x, y][k] / (2.0 * PI * r2 * r2.sqrt())
        } else {
            0.0
        }
    };
    GridField::from_fn(*grid, |x| {
        let r = (x[0] * x[0] + x[1] * x[1]).sqrt();
        if (r - 1.0).abs() > h {
            return point(x[0], x[1]);
        }
        let mut s = 0.0;
        for a in 0..SUB {
            for b in 0..SUB {
                let dx = ((a as f64 + 0.5) / SUB as f64 - 0.5) * h;
                let dy = ((b as f64 + 0.5) / SUB as f64 - 0.5) * h;
                s += point(x[0] + dx, x[1] + dy);
            }
        }
        s / (SUB * SUB) as f64
    })
    .expect("finite samples")
}

/// `Φ = Σ c (|x|² + a²)^{−1/2}` with the far field of `φ` up to `O(|x|⁻⁵)`;
/// `(−Δ)^{1/2}` maps each term to `c a (|x|² + a²)^{−3/2}`.
const FAR_FIELD: [(f64, f64); 2] = [(2.0 / (3.0 * PI), 1.0), (-1.0 / (6.0 * PI), 2.0)];

/// `Σ c · w(c, a, x) (|x|² + a²)^{−3/2}` over the far-field terms.
fn far_field(grid: &Grid<f64>, w: impl Fn(f64, f64, [f64; 2]) -> f64) -> Result<GridField<f64>> {
    GridField::from_fn(*grid, |x| {
        let r2 = x[0] * x[0] + x[1] * x[1];
        FAR_FIELD.iter().map(|(c, a)| w(*c, *a, x) / (r2 + a * a).powf(1.5)).sum()
    })
}

/// `∂_k(φ − Φ)` for both axes.
fn remainders(grid: &Grid<f64>) -> Result<Vec<GridField<f64>>> {
    (0..2).map(|k| grad_phi(grid, k).sub(&far_field(grid, |c, _, x| -c * x[k])?)).collect()
}

fn check_axis(j: usize) -> Result<usize> {
    match j {
        1 | 2 => Ok(j - 1),
        _ => Err(Error::OutOfRange(format!("axis {j} not in {{1, 2}}"))),
    }
}

/// `b = γ₂ Σ_k R_k(∂_k φ)`. The smooth far field `Φ` of `φ` is handled in closed
/// form and only `∂_k(φ − Φ)` goes through the periodic transforms, which keeps
/// the torus edge from polluting the decay.
pub fn b_first_order_2d(j: usize, grid: &Grid<f64>) -> Result<WitnessFunction> {
    check_axis(j)?;
    if grid.dim() != 2 {
        return Err(Error::DimensionMismatch { expected: 2, found: grid.dim() });
    }
    let mut b = far_field(grid, |c, a, _| c * a)?;
    for (k, rest) in remainders(grid)?.iter().enumerate() {
        let part = apply_full(&KernelSpec::riesz_first_order(2, k)?, rest)?;
        b = b.add(&part.scale(GAMMA_2D))?;
    }
    WitnessFunction::verified(
        Some(ClosedForm::FirstOrder2d { gamma: GAMMA_2D }),
        b,
        None,
        Some(3.0),
        Flags { bmo: true, ..Flags::default() },
    )
}

/// `‖R_j(b) − χ_{ℝ²∖B}x_j/|x|³‖₂ / ‖χ_{ℝ²∖B}x_j/|x|³‖₂`, one-based `j`.
pub fn first_order_2d_residual(j: usize, grid: &Grid<f64>) -> Result<f64> {
    let axis = check_axis(j)?;
    if grid.dim() != 2 {
        return Err(Error::DimensionMismatch { expected: 2, found: grid.dim() });
    }
    // R_j(−Δ)^{1/2} = −2π∂_j, so the far-field part maps to −2π∂_jΦ exactly.
    let rj = KernelSpec::riesz_first_order(2, axis)?;
    let mut rb = far_field(grid, |c, _, x| 2.0 * PI * c * x[axis])?;
    for (k, rest) in remainders(grid)?.iter().enumerate() {
        let part = apply_full(&rj, &apply_full(&KernelSpec::riesz_first_order(2, k)?, rest)?)?;
        rb = rb.add(&part.scale(GAMMA_2D))?;
    }
    let target = grad_phi(grid, axis).scale(-2.0 * PI);
    relative_l2(&rb, &target, &target)
}
