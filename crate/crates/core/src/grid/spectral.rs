use num_complex::Complex;

use super::fft::{fft_in_place, Direction};
use super::{Grid, GridField};
use crate::{Error, Real, Result};

/// Discrete Fourier coefficients `f̂(ξ_k)`, `ξ = 2πk/L`, stored in FFT order.
#[derive(Clone, Debug, PartialEq)]
pub struct SpectralField<T> {
    grid: Grid<T>,
    coeffs: Vec<Complex<T>>,
}

impl<T: Real> SpectralField<T> {
    pub fn new(grid: Grid<T>, coeffs: Vec<Complex<T>>) -> Result<Self> {
        if coeffs.len() != grid.len() {
            return Err(Error::InvalidField(format!(
                "{} coefficients for a grid of {} nodes",
                coeffs.len(),
                grid.len()
            )));
        }
        Ok(Self { grid, coeffs })
    }

    pub fn grid(&self) -> &Grid<T> {
        &self.grid
    }

    pub fn coeffs(&self) -> &[Complex<T>] {
        &self.coeffs
    }

    pub fn coeffs_mut(&mut self) -> &mut [Complex<T>] {
        &mut self.coeffs
    }

    /// Signed wavenumbers of a flat FFT-ordered index.
    pub fn wavenumbers(&self, idx: usize) -> [i64; 2] {
        let [i, j] = self.grid.unflatten(idx);
        if self.grid.dim() == 1 {
            [self.grid.wavenumber(i), 0]
        } else {
            [self.grid.wavenumber(i), self.grid.wavenumber(j)]
        }
    }

    /// Physical frequency of a flat index.
    pub fn frequency(&self, idx: usize) -> [T; 2] {
        let [a, b] = self.wavenumbers(idx);
        [self.grid.frequency(a), self.grid.frequency(b)]
    }

    /// Flat index of a signed wavenumber (wrapped into `[−N/2, N/2)`).
    pub fn index_of(&self, k: [i64; 2]) -> usize {
        let n = self.grid.resolution() as i64;
        let i = k[0].rem_euclid(n) as usize;
        let j = k[1].rem_euclid(n) as usize;
        self.grid.flatten([i, j])
    }

    /// Multiplies every coefficient by `m(ξ)`.
    pub fn apply_multiplier<F: Fn([T; 2]) -> Complex<T>>(&self, m: F) -> Self {
        let coeffs = self.coeffs.iter().enumerate().map(|(i, c)| *c * m(self.frequency(i))).collect();
        Self { grid: self.grid, coeffs }
    }

    /// `L⁻ⁿ Σ |f̂|²`, equal to `‖f‖₂²` by Parseval.
    pub fn energy(&self) -> T {
        let s: T = self.coeffs.iter().map(|c| c.norm_sqr()).sum();
        s / self.grid.side_length().powi(self.grid.dim() as i32)
    }

    fn partner(&self, idx: usize) -> usize {
        let [a, b] = self.wavenumbers(idx);
        self.index_of([-a, -b])
    }

    /// Enforces `f̂(−k) = conj f̂(k)`; self-paired entries keep their real part.
    pub fn symmetrize(&mut self) {
        let two = T::lit(2.0);
        for idx in 0..self.coeffs.len() {
            let p = self.partner(idx);
            if p == idx {
                self.coeffs[idx].im = T::zero();
            } else if idx < p {
                let a = self.coeffs[idx];
                let b = self.coeffs[p].conj();
                let avg = Complex::new((a.re + b.re) / two, (a.im + b.im) / two);
                self.coeffs[idx] = avg;
                self.coeffs[p] = avg.conj();
            }
        }
    }

    /// Bit-level check of conjugate symmetry.
    pub fn is_hermitian(&self) -> bool {
        (0..self.coeffs.len()).all(|idx| self.coeffs[self.partner(idx)] == self.coeffs[idx].conj())
    }
}

fn parity_sign<T: Real>(k: [i64; 2]) -> T {
    if (k[0] + k[1]).rem_euclid(2) == 0 {
        T::one()
    } else {
        -T::one()
    }
}

/// `f̂(k) = hⁿ (−1)^{Σk} FFT(f)[k]`; the result is symmetrized so that the
/// spectrum of the real field is exactly Hermitian.
pub fn dft_forward<T: Real>(f: &GridField<T>) -> SpectralField<T> {
    let grid = *f.grid();
    let mut data: Vec<Complex<T>> = f.values().iter().map(|v| Complex::new(*v, T::zero())).collect();
    fft_in_place(&mut data, grid.dim(), grid.resolution(), Direction::Forward);
    let vol = grid.cell_volume();
    let mut out = SpectralField { grid, coeffs: data };
    for idx in 0..out.coeffs.len() {
        let s = parity_sign::<T>(out.wavenumbers(idx)) * vol;
        out.coeffs[idx] = out.coeffs[idx] * s;
    }
    out.symmetrize();
    out
}

/// Complex samples `f(x_j) = L⁻ⁿ Σ_k (−1)^{Σk} f̂(k) e^{2πi j·k/N}`.
pub fn dft_inverse_complex<T: Real>(s: &SpectralField<T>) -> Vec<Complex<T>> {
    let grid = s.grid;
    let scale = T::one() / grid.side_length().powi(grid.dim() as i32);
    let mut data: Vec<Complex<T>> =
        s.coeffs.iter().enumerate().map(|(i, c)| *c * (parity_sign::<T>(s.wavenumbers(i)) * scale)).collect();
    fft_in_place(&mut data, grid.dim(), grid.resolution(), Direction::Inverse);
    data
}

/// Inverse transform, keeping the real part.
pub fn dft_inverse<T: Real>(s: &SpectralField<T>) -> GridField<T> {
    let values = dft_inverse_complex(s).into_iter().map(|c| c.re).collect();
    GridField::from_parts_unchecked(s.grid, values)
}
