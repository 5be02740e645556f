use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::spectral::{dft_inverse, SpectralField};
use super::{Grid, GridField};
use crate::{Error, Real, Result};

/// Analytic fields that can be sampled on a grid.
///
/// Indicators use the node value with no smoothing: balls are closed,
/// intervals are half-open `[a, b)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum FieldDescriptor {
    Zero,
    /// `amplitude · exp(−|x − center|² / (2 width²))`.
    Gaussian {
        center: Vec<f64>,
        width: f64,
        #[serde(default = "one")]
        amplitude: f64,
    },
    BallIndicator {
        center: Vec<f64>,
        radius: f64,
    },
    IntervalIndicator {
        a: f64,
        b: f64,
    },
    /// `(1 − |x − center|²/radius²)^power` on the ball, zero outside.
    PolynomialBump {
        center: Vec<f64>,
        radius: f64,
        power: u32,
    },
    /// Real trigonometric polynomial with wavenumbers `|k_i| ≤ max_mode`,
    /// zero mean, coefficients uniform in `[−amplitude, amplitude]`.
    /// The function does not depend on the resolution.
    BandLimited {
        seed: u64,
        max_mode: u32,
        #[serde(default = "one")]
        amplitude: f64,
    },
}

fn one() -> f64 {
    1.0
}

impl FieldDescriptor {
    /// Parses a single descriptor table such as `kind = "gaussian"`.
    pub fn from_toml(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| {
            let msg = e.to_string();
            if msg.contains("unknown variant") {
                Error::UnknownDescriptor(msg)
            } else {
                Error::Parse(msg)
            }
        })
    }

    fn check_center(center: &[f64], dim: usize) -> Result<()> {
        if center.len() != dim {
            return Err(Error::DimensionMismatch { expected: dim, found: center.len() });
        }
        Ok(())
    }

    /// Pointwise value at a physical point.
    pub fn eval(&self, x: &[f64]) -> f64 {
        let dist2 = |c: &[f64]| x.iter().zip(c).map(|(a, b)| (a - b) * (a - b)).sum::<f64>();
        match self {
            Self::Zero => 0.0,
            Self::Gaussian { center, width, amplitude } => amplitude * (-dist2(center) / (2.0 * width * width)).exp(),
            Self::BallIndicator { center, radius } => {
                if dist2(center) <= radius * radius {
                    1.0
                } else {
                    0.0
                }
            }
            Self::IntervalIndicator { a, b } => {
                if x[0] >= *a && x[0] < *b {
                    1.0
                } else {
                    0.0
                }
            }
            Self::PolynomialBump { center, radius, power } => {
                let s = 1.0 - dist2(center) / (radius * radius);
                if s > 0.0 {
                    s.powi(*power as i32)
                } else {
                    0.0
                }
            }
            Self::BandLimited { .. } => f64::NAN,
        }
    }

    pub fn sample<T: Real>(&self, grid: &Grid<T>) -> Result<GridField<T>> {
        let dim = grid.dim();
        match self {
            Self::Gaussian { center, .. }
            | Self::BallIndicator { center, .. }
            | Self::PolynomialBump { center, .. } => Self::check_center(center, dim)?,
            Self::IntervalIndicator { .. } if dim != 1 => {
                return Err(Error::DimensionMismatch { expected: 1, found: dim })
            }
            Self::BandLimited { seed, max_mode, amplitude } => return band_limited(grid, *seed, *max_mode, *amplitude),
            _ => {}
        }
        GridField::from_fn(*grid, |p| {
            let x = [p[0].as_f64(), p[1].as_f64()];
            T::lit(self.eval(&x[..dim]))
        })
    }
}

fn band_limited<T: Real>(grid: &Grid<T>, seed: u64, max_mode: u32, amplitude: f64) -> Result<GridField<T>> {
    let m = i64::from(max_mode);
    if 2 * m >= grid.resolution() as i64 {
        return Err(Error::InvalidField(format!("max_mode {max_mode} not resolved by N = {}", grid.resolution())));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut spec = SpectralField::new(*grid, vec![Complex::new(T::zero(), T::zero()); grid.len()])?;
    let volume = grid.side_length().powi(grid.dim() as i32);
    let second = if grid.dim() == 2 { -m..=m } else { 0..=0 };
    for k1 in 0..=m {
        for k2 in second.clone() {
            if k1 == 0 && k2 <= 0 {
                continue;
            }
            let re = amplitude * rng.gen_range(-1.0..=1.0);
            let im = amplitude * rng.gen_range(-1.0..=1.0);
            // f(x) = Σ c_k e^{iξ·x} + c.c., and f̂(k) = Lⁿ c_k.
            let c = Complex::new(T::lit(re), T::lit(im)) * volume;
            let i = spec.index_of([k1, k2]);
            let j = spec.index_of([-k1, -k2]);
            spec.coeffs_mut()[i] = c;
            spec.coeffs_mut()[j] = c.conj();
        }
    }
    Ok(dft_inverse(&spec))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn interval_count_matches_spacing() {
        let g = Grid::new(1, 16.0_f64, 1024).unwrap();
        let f = FieldDescriptor::IntervalIndicator { a: 0.0, b: 1.0 }.sample(&g).unwrap();
        let ones = f.values().iter().filter(|v| **v == 1.0).count();
        assert_eq!(ones, 64);
    }

    #[test]
    fn gaussian_peaks_at_origin() {
        let g = Grid::new(1, 16.0_f64, 256).unwrap();
        let f = FieldDescriptor::Gaussian { center: vec![0.0], width: 1.0, amplitude: 1.0 }.sample(&g).unwrap();
        let (imax, _) =
            f.values().iter().enumerate().fold((0, f64::MIN), |acc, (i, v)| if *v > acc.1 { (i, *v) } else { acc });
        assert_eq!(imax, g.nearest(&[0.0]));
    }

    #[test]
    fn zero_descriptor() {
        let g = Grid::new(2, 4.0_f64, 16).unwrap();
        let f = FieldDescriptor::Zero.sample(&g).unwrap();
        assert!(f.values().iter().all(|v| *v == 0.0));
    }

    #[test]
    fn band_limited_is_resolution_independent() {
        let d = FieldDescriptor::BandLimited { seed: 7, max_mode: 5, amplitude: 1.0 };
        let coarse = d.sample(&Grid::new(2, 8.0_f64, 32).unwrap()).unwrap();
        let fine = d.sample(&Grid::new(2, 8.0_f64, 64).unwrap()).unwrap();
        for i in 0..32 {
            for j in 0..32 {
                let a = coarse.at([i, j]);
                let b = fine.at([2 * i, 2 * j]);
                assert!((a - b).abs() < 1e-12);
            }
        }
        assert!(fine.integral().abs() < 1e-10);
    }

    #[test]
    fn toml_round_trip_and_unknown_kind() {
        let d = FieldDescriptor::BallIndicator { center: vec![0.0, 0.5], radius: 1.0 };
        let text = toml::to_string(&d).unwrap();
        assert_eq!(FieldDescriptor::from_toml(&text).unwrap(), d);
        assert!(matches!(FieldDescriptor::from_toml("kind = \"sinc\""), Err(Error::UnknownDescriptor(_))));
    }

    #[test]
    fn center_dimension_checked() {
        let g = Grid::new(2, 4.0_f64, 16).unwrap();
        let d = FieldDescriptor::Gaussian { center: vec![0.0], width: 1.0, amplitude: 1.0 };
        assert!(matches!(d.sample(&g), Err(Error::DimensionMismatch { .. })));
    }
}
