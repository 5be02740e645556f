//! Singular integrals applied spectrally, by truncated quadrature and as
//! maximal sweeps, plus the Hardy–Littlewood and `L log L` maximal functions.

mod maximal;
mod ray;
mod singular;

pub use maximal::{
    ball_average, hl_maximal, hl_maximal_field, iterated_maximal, iterated_maximal_field, llogl_maximal, llogl_norm,
    luxemburg_average, MaximalConfig,
};
pub use ray::{radial_ball_transform, radial_ball_transform_field};
pub use singular::{
    apply_full, apply_maximal, apply_maximal_field, apply_multiplier, apply_symbol, apply_truncated,
    apply_truncated_field, apply_truncated_spectral, TruncationConfig,
};
