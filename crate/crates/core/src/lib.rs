//! Truncated and maximal Calderón–Zygmund singular integrals on periodic grids.
//!
//! The crate is organised bottom-up:
//!
//! * [`grid`]: periodic sampling, unitary DFT, binary/CSV field dumps.
//! * [`kernels`]: homogeneous kernels `Ω(x)/|x|ⁿ` built from harmonic
//!   polynomials, their Fourier multipliers and the kernel file format.
//! * [`operators`]: `T`, `Tᵉ`, `T*`, the Hardy–Littlewood maximal function,
//!   its iterate and the `L log L` maximal operator.
//! * [`algebra`]: exact division of harmonic polynomials, the Fourier
//!   coefficient reformulation, invertibility in the Calderón–Zygmund algebra
//!   and the factorization `T = R_P ∘ U`.
//! * [`witness`]: explicit witness functions `b`, `β₀`, `β` and Bessel utilities.
//! * [`experiments`]: scripted experiments that produce deterministic reports.
//!
//! Numeric code is generic over [`Real`] (`f32`/`f64`); exact polynomial
//! identities use arbitrary precision rationals. The aliases below fix the
//! scalar types used by the experiments and the CLI.

pub mod algebra;
pub mod error;
pub mod experiments;
pub mod grid;
pub mod kernels;
pub mod operators;
pub mod scalar;
pub mod special;
pub mod witness;

pub use error::{Error, Result};
pub use scalar::Real;

/// Exact coefficient field for polynomial identities.
pub type Rational = num_rational::BigRational;
/// Gaussian rationals, used by the complex (Fourier) form of planar harmonics.
pub type GaussianRational = num_complex::Complex<Rational>;

/// Bivariate polynomial with exact coefficients.
pub type ExactPoly = kernels::Poly2<Rational>;
/// Bivariate polynomial with floating point coefficients.
pub type FloatPoly = kernels::Poly2<f64>;

pub type Grid64 = grid::Grid<f64>;
pub type Field64 = grid::GridField<f64>;
pub type Spectrum64 = grid::SpectralField<f64>;
pub type Grid32 = grid::Grid<f32>;
pub type Field32 = grid::GridField<f32>;
pub type Spectrum32 = grid::SpectralField<f32>;
