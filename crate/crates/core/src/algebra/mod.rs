//! Exact division of harmonic polynomials, its Fourier-coefficient
//! reformulation, invertibility of `λI + T` and the factorization `T = R_P ∘ U`.

mod division;
mod element;
mod factor;

pub use division::{
    divides, division_condition, division_condition_fourier_2d, division_condition_fourier_2d_f64, DivisionReport,
};
pub use element::{invert_element, invertibility, CZElement, InvertibilityReport, KernelPart, SpectralOperator};
pub use factor::{condition_iii, factorize, ConditionReport, Factorization};
