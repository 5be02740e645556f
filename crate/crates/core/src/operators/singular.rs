use num_complex::Complex;
use rayon::prelude::*;

use crate::grid::{dft_forward, dft_inverse, fft_in_place, Direction, Grid, GridField};
use crate::kernels::{kernel_eval, multiplier_of, KernelSpec, Symbol};
use crate::{Error, Real, Result};

/// Truncation levels for `Tᵉ` and `T*`.
#[derive(Clone, Debug, PartialEq)]
pub struct TruncationConfig {
    epsilons: Vec<f64>,
}

impl TruncationConfig {
    /// Levels must be nonempty, strictly increasing and at least two cells.
    pub fn new<T: Real>(grid: &Grid<T>, epsilons: Vec<f64>) -> Result<Self> {
        if epsilons.is_empty() {
            return Err(Error::Config("empty ε list".into()));
        }
        if epsilons.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::Config("ε list must be strictly increasing".into()));
        }
        let floor = 2.0 * grid.spacing().as_f64();
        for &eps in &epsilons {
            check_floor(eps, floor)?;
        }
        Ok(Self { epsilons })
    }

    /// Dyadic levels from two cells up to `L/4`.
    pub fn dyadic<T: Real>(grid: &Grid<T>) -> Self {
        let h = grid.spacing().as_f64();
        let top = grid.side_length().as_f64() / 4.0;
        let mut epsilons = Vec::new();
        let mut e = 2.0 * h;
        while e <= top * (1.0 + 1e-12) {
            epsilons.push(e);
            e *= 2.0;
        }
        Self { epsilons }
    }

    pub fn epsilons(&self) -> &[f64] {
        &self.epsilons
    }
}

fn check_floor(eps: f64, floor: f64) -> Result<()> {
    if !(eps >= floor * (1.0 - 1e-12)) {
        return Err(Error::EpsilonBelowFloor { eps, floor });
    }
    Ok(())
}

fn check_dims<T: Real>(spec: &KernelSpec, f: &GridField<T>) -> Result<()> {
    if spec.dim() != f.grid().dim() {
        return Err(Error::DimensionMismatch { expected: spec.dim(), found: f.grid().dim() });
    }
    Ok(())
}

/// `f ↦ F⁻¹(m f̂)`; the zero frequency is annihilated.
pub fn apply_multiplier<T: Real, M: Fn([f64; 2]) -> Complex<f64> + Sync>(f: &GridField<T>, m: M) -> GridField<T> {
    let mut s = dft_forward(f);
    let spec = s.clone();
    for (i, c) in s.coeffs_mut().iter_mut().enumerate() {
        let [a, b] = spec.frequency(i);
        let v = if i == 0 { Complex::new(0.0, 0.0) } else { m([a.as_f64(), b.as_f64()]) };
        *c = *c * Complex::new(T::lit(v.re), T::lit(v.im));
    }
    s.symmetrize();
    dft_inverse(&s)
}

pub fn apply_symbol<T: Real>(symbol: &Symbol, f: &GridField<T>) -> Result<GridField<T>> {
    if symbol.dim() != f.grid().dim() {
        return Err(Error::DimensionMismatch { expected: symbol.dim(), found: f.grid().dim() });
    }
    let dim = symbol.dim();
    Ok(apply_multiplier(f, |xi| symbol.eval(&xi[..dim])))
}

/// `Tf` through the multiplier of `spec`.
pub fn apply_full<T: Real>(spec: &KernelSpec, f: &GridField<T>) -> Result<GridField<T>> {
    check_dims(spec, f)?;
    apply_symbol(&multiplier_of(spec), f)
}

/// Continuum truncated multiplier applied spectrally.
pub fn apply_truncated_spectral<T: Real>(spec: &KernelSpec, f: &GridField<T>, eps: f64) -> Result<GridField<T>> {
    check_dims(spec, f)?;
    let symbol = multiplier_of(spec);
    let dim = spec.dim();
    // Validate once so the closure can unwrap.
    symbol.truncated(&[1.0, 0.0][..dim], eps)?;
    Ok(apply_multiplier(f, |xi| symbol.truncated(&xi[..dim], eps).expect("validated dimension")))
}

/// Offsets of the centered periodic window `|a_i| < N/2`.
fn window(n: usize) -> std::ops::RangeInclusive<i64> {
    let half = (n / 2) as i64;
    -(half - 1)..=(half - 1)
}

/// Midpoint rule for `Tᵉf(x) = Σ_{|y|>ε} f(x − y) K(y) hⁿ` over the cells of
/// the centered periodic window, at the node with flat index `node`.
pub fn apply_truncated<T: Real>(spec: &KernelSpec, f: &GridField<T>, node: usize, eps: f64) -> Result<T> {
    check_dims(spec, f)?;
    let grid = f.grid();
    let h = grid.spacing().as_f64();
    check_floor(eps, 2.0 * h)?;
    let [i, j] = grid.unflatten(node);
    let vol = h.powi(grid.dim() as i32);
    let (i, j) = (i as i64, j as i64);
    let second: Vec<i64> = if grid.dim() == 2 { window(grid.resolution()).collect() } else { vec![0] };
    let mut sum = 0.0;
    for a in window(grid.resolution()) {
        for &b in &second {
            let y = [a as f64 * h, b as f64 * h];
            let r = (y[0] * y[0] + y[1] * y[1]).sqrt();
            if r <= eps {
                continue;
            }
            let k = kernel_eval(spec, &y[..grid.dim()])?;
            sum += f.at_wrapped(i - a, j - b).as_f64() * k;
        }
    }
    Ok(T::lit(sum * vol))
}

/// `Tᵉf` at every node: circular convolution with the discrete truncated
/// kernel table, identical to [`apply_truncated`] node by node.
pub fn apply_truncated_field<T: Real>(spec: &KernelSpec, f: &GridField<T>, eps: f64) -> Result<GridField<T>> {
    check_dims(spec, f)?;
    let grid = *f.grid();
    let fhat = forward_raw(f);
    truncated_from_raw(spec, &grid, &fhat, eps)
}

fn forward_raw<T: Real>(f: &GridField<T>) -> Vec<Complex<f64>> {
    let grid = f.grid();
    let mut data: Vec<Complex<f64>> = f.values().iter().map(|v| Complex::new(v.as_f64(), 0.0)).collect();
    fft_in_place(&mut data, grid.dim(), grid.resolution(), Direction::Forward);
    data
}

fn truncated_from_raw<T: Real>(
    spec: &KernelSpec,
    grid: &Grid<T>,
    fhat: &[Complex<f64>],
    eps: f64,
) -> Result<GridField<T>> {
    let n = grid.resolution();
    let h = grid.spacing().as_f64();
    check_floor(eps, 2.0 * h)?;
    let vol = h.powi(grid.dim() as i32);
    let half = (n / 2) as i64;
    let dim = grid.dim();
    let table: Vec<Complex<f64>> = (0..grid.len())
        .into_par_iter()
        .map(|idx| {
            let [p, q] = grid.unflatten(idx);
            let a = if p as i64 >= half { p as i64 - n as i64 } else { p as i64 };
            let b = if q as i64 >= half { q as i64 - n as i64 } else { q as i64 };
            if a == -half || (dim == 2 && b == -half) {
                return Complex::new(0.0, 0.0);
            }
            let y = [a as f64 * h, b as f64 * h];
            if (y[0] * y[0] + y[1] * y[1]).sqrt() <= eps {
                return Complex::new(0.0, 0.0);
            }
            Complex::new(kernel_eval(spec, &y[..dim]).unwrap_or(0.0) * vol, 0.0)
        })
        .collect();
    let mut khat = table;
    fft_in_place(&mut khat, dim, n, Direction::Forward);
    let mut prod: Vec<Complex<f64>> = khat.iter().zip(fhat).map(|(a, b)| a * b).collect();
    fft_in_place(&mut prod, dim, n, Direction::Inverse);
    let scale = 1.0 / grid.len() as f64;
    let values = prod.iter().map(|c| T::lit(c.re * scale)).collect();
    GridField::new(*grid, values)
}

/// `max_ε |Tᵉf(x)|` over the configured levels.
pub fn apply_maximal<T: Real>(
    spec: &KernelSpec,
    f: &GridField<T>,
    node: usize,
    config: &TruncationConfig,
) -> Result<T> {
    let mut best = T::zero();
    for &eps in config.epsilons() {
        best = best.max(apply_truncated(spec, f, node, eps)?.abs());
    }
    Ok(best)
}

/// `T*f` at every node.
pub fn apply_maximal_field<T: Real>(
    spec: &KernelSpec,
    f: &GridField<T>,
    config: &TruncationConfig,
) -> Result<GridField<T>> {
    check_dims(spec, f)?;
    let grid = *f.grid();
    let fhat = forward_raw(f);
    let mut best = vec![T::zero(); grid.len()];
    for &eps in config.epsilons() {
        let t = truncated_from_raw(spec, &grid, &fhat, eps)?;
        for (b, v) in best.iter_mut().zip(t.values()) {
            *b = b.max(v.abs());
        }
    }
    GridField::new(grid, best)
}
