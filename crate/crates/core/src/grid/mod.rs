//! Periodic grids, sampled fields and the unitary DFT.
//!
//! Nodes sit at `x_k = −L/2 + kL/N` on every axis. The transform follows
//! `f̂(ξ) = ∫ f(x) e^{−ix·ξ} dx` with the cell volume `(L/N)ⁿ` as quadrature
//! weight, so that Fourier multipliers can be applied with their continuum
//! constants.

mod descriptor;
mod fft;
pub mod io;
mod spectral;

pub use descriptor::FieldDescriptor;
pub use fft::{fft_in_place, Direction};
pub use spectral::{dft_forward, dft_inverse, dft_inverse_complex, SpectralField};

use serde::{Deserialize, Serialize};

use crate::{Error, Real, Result};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Grid<T> {
    dim: usize,
    side_length: T,
    resolution: usize,
}

impl<T: Real> Grid<T> {
    pub fn new(dim: usize, side_length: T, resolution: usize) -> Result<Self> {
        if dim != 1 && dim != 2 {
            return Err(Error::InvalidGrid(format!("dimension {dim} not in {{1, 2}}")));
        }
        if !(side_length > T::zero()) || !side_length.is_finite() {
            return Err(Error::InvalidGrid(format!("side length {side_length} must be positive")));
        }
        if resolution < 8 || !resolution.is_power_of_two() {
            return Err(Error::InvalidGrid(format!("resolution {resolution} must be a power of two ≥ 8")));
        }
        Ok(Self { dim, side_length, resolution })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn side_length(&self) -> T {
        self.side_length
    }

    pub fn resolution(&self) -> usize {
        self.resolution
    }

    /// Number of nodes, `Nⁿ`.
    pub fn len(&self) -> usize {
        self.resolution.pow(self.dim as u32)
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Grid spacing `h = L/N`.
    pub fn spacing(&self) -> T {
        self.side_length / T::of_usize(self.resolution)
    }

    pub fn cell_volume(&self) -> T {
        self.spacing().powi(self.dim as i32)
    }

    /// Coordinate of node `k` along one axis.
    pub fn coord(&self, k: usize) -> T {
        -self.side_length / T::lit(2.0) + T::of_usize(k) * self.spacing()
    }

    /// Axis indices of a flat (row-major) node index.
    pub fn unflatten(&self, idx: usize) -> [usize; 2] {
        if self.dim == 1 {
            [idx, 0]
        } else {
            [idx / self.resolution, idx % self.resolution]
        }
    }

    pub fn flatten(&self, ix: [usize; 2]) -> usize {
        if self.dim == 1 {
            ix[0]
        } else {
            ix[0] * self.resolution + ix[1]
        }
    }

    /// Physical position of a flat node index (unused axes are zero).
    pub fn point(&self, idx: usize) -> [T; 2] {
        let [i, j] = self.unflatten(idx);
        if self.dim == 1 {
            [self.coord(i), T::zero()]
        } else {
            [self.coord(i), self.coord(j)]
        }
    }

    /// Flat index of the node closest to `x` (periodically wrapped).
    pub fn nearest(&self, x: &[T]) -> usize {
        let n = self.resolution as i64;
        let mut ix = [0usize; 2];
        for (a, xa) in x.iter().take(self.dim).enumerate() {
            let k = ((*xa + self.side_length / T::lit(2.0)) / self.spacing()).round();
            let k = k.to_i64().unwrap_or(0).rem_euclid(n);
            ix[a] = k as usize;
        }
        self.flatten(ix)
    }

    /// Signed wavenumber of an FFT-ordered index along one axis, in `[−N/2, N/2)`.
    pub fn wavenumber(&self, k: usize) -> i64 {
        let n = self.resolution as i64;
        let k = k as i64;
        if k >= n / 2 {
            k - n
        } else {
            k
        }
    }

    /// Physical frequency `2πk/L` for a signed wavenumber.
    pub fn frequency(&self, k: i64) -> T {
        T::lit(2.0) * T::PI() * T::lit(k as f64) / self.side_length
    }

    /// Converts the grid to another scalar type.
    pub fn cast<U: Real>(&self) -> Grid<U> {
        Grid { dim: self.dim, side_length: U::lit(self.side_length.as_f64()), resolution: self.resolution }
    }
}

/// Real samples on a [`Grid`], row-major with the first axis slowest.
#[derive(Clone, Debug, PartialEq)]
pub struct GridField<T> {
    grid: Grid<T>,
    values: Vec<T>,
}

impl<T: Real> GridField<T> {
    pub fn new(grid: Grid<T>, values: Vec<T>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::InvalidField(format!("{} values for a grid of {} nodes", values.len(), grid.len())));
        }
        if let Some(i) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::InvalidField(format!("non-finite value at node {i}")));
        }
        Ok(Self { grid, values })
    }

    pub fn zeros(grid: Grid<T>) -> Self {
        Self { grid, values: vec![T::zero(); grid.len()] }
    }

    /// Evaluates `f` at every node. Unused coordinates are zero.
    pub fn from_fn<F: Fn([T; 2]) -> T>(grid: Grid<T>, f: F) -> Result<Self> {
        let values = (0..grid.len()).map(|i| f(grid.point(i))).collect();
        Self::new(grid, values)
    }

    pub(crate) fn from_parts_unchecked(grid: Grid<T>, values: Vec<T>) -> Self {
        debug_assert_eq!(values.len(), grid.len());
        Self { grid, values }
    }

    pub fn grid(&self) -> &Grid<T> {
        &self.grid
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn into_values(self) -> Vec<T> {
        self.values
    }

    pub fn at(&self, ix: [usize; 2]) -> T {
        self.values[self.grid.flatten(ix)]
    }

    /// Value at a periodically wrapped integer index.
    pub fn at_wrapped(&self, i: i64, j: i64) -> T {
        let n = self.grid.resolution as i64;
        let i = i.rem_euclid(n) as usize;
        let j = j.rem_euclid(n) as usize;
        self.at([i, j])
    }

    pub fn map<F: Fn(T) -> T>(&self, f: F) -> Result<Self> {
        Self::new(self.grid, self.values.iter().map(|v| f(*v)).collect())
    }

    pub fn scale(&self, c: T) -> Self {
        Self::from_parts_unchecked(self.grid, self.values.iter().map(|v| *v * c).collect())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip(other, |a, b| a - b)
    }

    fn zip<F: Fn(T, T) -> T>(&self, other: &Self, f: F) -> Result<Self> {
        if self.grid != other.grid {
            return Err(Error::InvalidField("fields live on different grids".into()));
        }
        let values = self.values.iter().zip(&other.values).map(|(a, b)| f(*a, *b)).collect();
        Ok(Self::from_parts_unchecked(self.grid, values))
    }

    /// Cyclic shift by whole cells along each axis.
    pub fn shifted(&self, shift: [i64; 2]) -> Self {
        let n = self.grid.resolution as i64;
        let mut out = vec![T::zero(); self.values.len()];
        for (idx, v) in self.values.iter().enumerate() {
            let [i, j] = self.grid.unflatten(idx);
            let ti = (i as i64 + shift[0]).rem_euclid(n) as usize;
            let tj = if self.grid.dim == 1 { 0 } else { (j as i64 + shift[1]).rem_euclid(n) as usize };
            out[self.grid.flatten([ti, tj])] = *v;
        }
        Self::from_parts_unchecked(self.grid, out)
    }

    pub fn sup_norm(&self) -> T {
        self.values.iter().fold(T::zero(), |m, v| m.max(v.abs()))
    }

    /// `(hⁿ Σ |f|²)^{1/2}`.
    pub fn l2_norm(&self) -> T {
        let s: T = self.values.iter().map(|v| *v * *v).sum();
        (s * self.grid.cell_volume()).sqrt()
    }

    pub fn l1_norm(&self) -> T {
        let s: T = self.values.iter().map(|v| v.abs()).sum();
        s * self.grid.cell_volume()
    }

    /// Midpoint approximation of `∫ f`.
    pub fn integral(&self) -> T {
        let s: T = self.values.iter().copied().sum();
        s * self.grid.cell_volume()
    }

    pub fn cast<U: Real>(&self) -> GridField<U> {
        GridField { grid: self.grid.cast(), values: self.values.iter().map(|v| U::lit(v.as_f64())).collect() }
    }
}
