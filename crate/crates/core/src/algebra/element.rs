use std::collections::BTreeMap;
use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::grid::GridField;
use crate::kernels::{multiplier_of, KernelSpec, Symbol};
use crate::operators::apply_multiplier;
use crate::{Error, Real, Result};

/// The non-identity part of an element of the Calderón–Zygmund algebra.
#[derive(Clone, Debug, PartialEq)]
pub enum KernelPart {
    Zero,
    Kernel(KernelSpec),
    /// Planar symbol given by its coefficients `a_k` in `Σ a_k e^{ikθ}`.
    SymbolOnly(BTreeMap<i64, Complex64>),
}

/// `λI + T`, with symbol `λ + m_T(ξ)`.
#[derive(Clone, Debug, PartialEq)]
pub struct CZElement {
    dim: usize,
    lambda: f64,
    part: KernelPart,
    symbol: Option<Symbol>,
}

impl CZElement {
    pub fn identity(dim: usize) -> Self {
        Self::scalar(dim, 1.0)
    }

    pub fn scalar(dim: usize, lambda: f64) -> Self {
        Self { dim, lambda, part: KernelPart::Zero, symbol: None }
    }

    pub fn new(lambda: f64, spec: KernelSpec) -> Self {
        let symbol = Some(multiplier_of(&spec));
        Self { dim: spec.dim(), lambda, part: KernelPart::Kernel(spec), symbol }
    }

    /// Planar element from trigonometric symbol coefficients.
    pub fn from_trig(lambda: f64, coefficients: BTreeMap<i64, Complex64>) -> Self {
        Self { dim: 2, lambda, part: KernelPart::SymbolOnly(coefficients), symbol: None }
    }

    /// `I + B` with `B` the Beurling transform, symbol `ξ̄/ξ = e^{−2iθ}`.
    pub fn identity_plus_beurling() -> Self {
        Self::from_trig(1.0, BTreeMap::from([(-2, Complex64::new(1.0, 0.0))]))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn part(&self) -> &KernelPart {
        &self.part
    }

    /// `λ + m_T(ξ)` for `ξ ≠ 0`.
    pub fn symbol(&self, xi: &[f64]) -> Complex64 {
        let lam = Complex64::new(self.lambda, 0.0);
        match &self.part {
            KernelPart::Zero => lam,
            KernelPart::Kernel(_) => lam + self.symbol.as_ref().expect("symbol cached").eval(xi),
            KernelPart::SymbolOnly(c) => {
                let theta = xi[1].atan2(xi[0]);
                lam + c.iter().map(|(k, a)| a * Complex64::from_polar(1.0, *k as f64 * theta)).sum::<Complex64>()
            }
        }
    }

    pub fn on_circle(&self, theta: f64) -> Complex64 {
        self.symbol(&[theta.cos(), theta.sin()])
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct InvertibilityReport {
    pub invertible: bool,
    pub min_abs_symbol: f64,
    pub argmin_angle: f64,
}

const ANGLES: usize = 1 << 16;
const INVERTIBLE_TOL: f64 = 1e-9;

/// Minimum of `|λ + m_T|` on the unit sphere (n ≤ 2): a scan over 2¹⁶ angles
/// refined by golden-section search around the discrete minimizer.
pub fn invertibility(elem: &CZElement) -> Result<InvertibilityReport> {
    let (min, arg) = match elem.dim {
        1 => {
            let a = elem.symbol(&[1.0]).norm();
            let b = elem.symbol(&[-1.0]).norm();
            if a <= b {
                (a, 0.0)
            } else {
                (b, PI)
            }
        }
        2 => {
            let step = 2.0 * PI / ANGLES as f64;
            let chunk = 1024;
            let best = (0..ANGLES / chunk)
                .into_par_iter()
                .map(|c| {
                    (c * chunk..(c + 1) * chunk)
                        .map(|k| (elem.on_circle(k as f64 * step).norm(), k))
                        .fold((f64::INFINITY, 0), |acc, v| if v.0 < acc.0 { v } else { acc })
                })
                .collect::<Vec<_>>()
                .into_iter()
                .fold((f64::INFINITY, 0), |acc, v| if v.0 < acc.0 { v } else { acc });
            let center = best.1 as f64 * step;
            let f = |t: f64| elem.on_circle(t).norm();
            let (mut a, mut b) = (center - step, center + step);
            let g = (5f64.sqrt() - 1.0) / 2.0;
            let mut c = b - g * (b - a);
            let mut d = a + g * (b - a);
            for _ in 0..80 {
                if f(c) < f(d) {
                    b = d;
                } else {
                    a = c;
                }
                c = b - g * (b - a);
                d = a + g * (b - a);
            }
            let t = 0.5 * (a + b);
            let refined = f(t);
            if refined < best.0 {
                (refined, t.rem_euclid(2.0 * PI))
            } else {
                (best.0, center)
            }
        }
        n => return Err(Error::Unsupported(format!("invertibility scan in dimension {n}"))),
    };
    Ok(InvertibilityReport { invertible: min > INVERTIBLE_TOL, min_abs_symbol: min, argmin_angle: arg })
}

/// Fourier multiplier operator for an element or its inverse.
#[derive(Clone, Debug)]
pub struct SpectralOperator {
    elem: CZElement,
    inverse: bool,
}

impl SpectralOperator {
    /// `f ↦ (λI + T) f`.
    pub fn forward(elem: CZElement) -> Self {
        Self { elem, inverse: false }
    }

    pub fn element(&self) -> &CZElement {
        &self.elem
    }

    /// Applies the multiplier with the zero frequency mapped to 0.
    pub fn apply<T: Real>(&self, f: &GridField<T>) -> Result<GridField<T>> {
        if f.grid().dim() != self.elem.dim {
            return Err(Error::DimensionMismatch { expected: self.elem.dim, found: f.grid().dim() });
        }
        let dim = self.elem.dim;
        Ok(apply_multiplier(f, |xi| {
            let m = self.elem.symbol(&xi[..dim]);
            if self.inverse {
                1.0 / m
            } else {
                m
            }
        }))
    }
}

/// `(λI + T)⁻¹` as a multiplier `1/(λ + m_T)`.
pub fn invert_element(elem: &CZElement) -> Result<SpectralOperator> {
    let report = invertibility(elem)?;
    if !report.invertible {
        return Err(Error::NotInvertible(report.min_abs_symbol));
    }
    Ok(SpectralOperator { elem: elem.clone(), inverse: true })
}
