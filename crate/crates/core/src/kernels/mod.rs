//! Homogeneous kernels `Ω(x)/|x|ⁿ`, their multipliers and the kernel file format.

mod file;
mod harmonic;
mod poly;
mod spec;
mod symbol;

pub use file::{parse_kernel_file, write_kernel_file, KernelFile};
pub use harmonic::{circle_coefficients, format_gaussian, HarmonicPolynomial, Weight};
pub use poly::Poly2;
pub use spec::{
    check_cancellation, expansion_from_fourier, kernel_eval, quartic, KernelSpec, KernelTerm, Parity, Shape,
};
pub use symbol::{multiplier_constant, multiplier_of, truncation_factor, Symbol};
