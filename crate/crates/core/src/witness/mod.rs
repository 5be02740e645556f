//! Witness functions `b` with `T(b)` equal to a truncated kernel, their
//! verification hooks, the grid BMO norm and the constants they depend on.

mod bilaplacian;
mod bmo;
mod constants;
mod first_order;
mod function;
mod second_order;
mod sufficiency;

pub use bilaplacian::{b_bilaplacian, bilaplacian_residual, BilaplacianWitness};
pub use bmo::bmo_norm;
pub use constants::{constants_ledger, ConstantEntry};
pub use first_order::{b_first_order_1d, b_first_order_2d, first_order_1d_field, first_order_2d_residual};
pub use function::{BesselG, ClosedForm, Flags, WitnessFunction};
pub use second_order::{b_second_order, second_order_residual, Residual};
pub use sufficiency::{beta_full, psi_beta0, psi_spectral_deviation, step_one_residual, Sufficiency};
