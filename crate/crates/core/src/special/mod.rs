//! Special functions and quadrature used across the crate.

mod bessel;
pub mod quad;
mod sine_integral;

pub use bessel::{bessel_g, bessel_j, bessel_j_all, bessel_j_integral, G_MAX_ORDER, G_MAX_RADIUS};
pub use sine_integral::sine_integral;

use crate::Real;

/// `Γ(k/2)` for a positive integer `k`, by the exact half-integer recursion.
pub fn gamma_half<T: Real>(k: u32) -> T {
    assert!(k > 0, "gamma_half needs a positive argument");
    let (mut acc, mut x) = if k % 2 == 0 { (T::one(), T::one()) } else { (T::PI().sqrt(), T::lit(0.5)) };
    let target = T::lit(f64::from(k) / 2.0);
    while x < target {
        acc = acc * x;
        x = x + T::one();
    }
    acc
}
