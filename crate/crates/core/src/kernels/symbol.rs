use std::collections::BTreeMap;
use std::f64::consts::PI;

use num_complex::Complex64;

use super::{KernelSpec, Shape};
use crate::special::{bessel_j_all, bessel_j_integral, gamma_half, sine_integral};
use crate::{Error, Result};

/// `γ_d = (−i)^d π^{n/2} Γ(d/2) / Γ((n+d)/2)`: the kernel `P(x)/|x|^{n+d}`
/// has multiplier `γ_d P(ξ)/|ξ|^d` for `P` harmonic homogeneous of degree `d`.
pub fn multiplier_constant(n: usize, d: u32) -> Complex64 {
    let mag = PI.powf(n as f64 / 2.0) * gamma_half::<f64>(d) / gamma_half::<f64>(n as u32 + d);
    let phase = match d % 4 {
        0 => Complex64::new(1.0, 0.0),
        1 => Complex64::new(0.0, -1.0),
        2 => Complex64::new(-1.0, 0.0),
        _ => Complex64::new(0.0, 1.0),
    };
    phase * mag
}

#[derive(Clone, Debug, PartialEq)]
struct SymbolTerm {
    degree: u32,
    factor: Complex64,
    shape: Shape,
}

/// Fourier multiplier `m(ξ) = Σ_d γ_d w_d P_d(ξ)/|ξ|^d` of a kernel.
#[derive(Clone, Debug, PartialEq)]
pub struct Symbol {
    dim: usize,
    terms: Vec<SymbolTerm>,
}

pub fn multiplier_of(spec: &KernelSpec) -> Symbol {
    let n = spec.dim();
    let terms = spec
        .terms()
        .iter()
        .map(|t| SymbolTerm {
            degree: t.degree(),
            factor: multiplier_constant(n, t.degree()) * t.weight.value(),
            shape: t.shape.clone(),
        })
        .collect();
    Symbol { dim: n, terms }
}

impl Symbol {
    /// The identically zero symbol in dimension `dim`.
    pub fn zero(dim: usize) -> Self {
        Self { dim, terms: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `m(ξ)`; the origin maps to 0.
    pub fn eval(&self, xi: &[f64]) -> Complex64 {
        let r2: f64 = xi.iter().take(self.dim).map(|v| v * v).sum();
        if r2 == 0.0 {
            return Complex64::new(0.0, 0.0);
        }
        let r = r2.sqrt();
        let unit: Vec<f64> = xi.iter().take(self.dim).map(|v| v / r).collect();
        self.terms.iter().map(|t| t.factor * t.shape.eval(&unit)).sum()
    }

    /// `m(cos θ, sin θ)` (n = 2).
    pub fn on_circle(&self, theta: f64) -> Complex64 {
        self.eval(&[theta.cos(), theta.sin()])
    }

    /// Coefficients `a_k` with `m(e^{iθ}) = Σ a_k e^{ikθ}` (n = 2).
    pub fn trig_coefficients(&self) -> Result<BTreeMap<i64, Complex64>> {
        if self.dim != 2 {
            return Err(Error::Unsupported("trigonometric form needs n = 2".into()));
        }
        let mut out: BTreeMap<i64, Complex64> = BTreeMap::new();
        for t in &self.terms {
            let p = t.shape.to_planar()?;
            let c = p.to_complex();
            let c = Complex64::new(
                num_traits::ToPrimitive::to_f64(&c.re).unwrap_or(f64::NAN),
                num_traits::ToPrimitive::to_f64(&c.im).unwrap_or(f64::NAN),
            );
            // Re(c e^{idθ}) = (c e^{idθ} + c̄ e^{−idθ}) / 2
            let d = i64::from(t.degree);
            *out.entry(d).or_default() += t.factor * c * 0.5;
            *out.entry(-d).or_default() += t.factor * c.conj() * 0.5;
        }
        out.retain(|_, v| v.norm() > 0.0);
        Ok(out)
    }

    /// Multiplier of the truncated kernel `K χ_{|x|>ε}` (n = 1, 2).
    ///
    /// In the plane each degree-`d` term is scaled by
    /// `h_d(ε|ξ|) = 1 − ∫₀^{ε|ξ|} J_{d−1} + J_d(ε|ξ|)`; on the line by
    /// `1 − (2/π) Si(ε|ξ|)`.
    pub fn truncated(&self, xi: &[f64], eps: f64) -> Result<Complex64> {
        let r2: f64 = xi.iter().take(self.dim).map(|v| v * v).sum();
        if r2 == 0.0 {
            return Ok(Complex64::new(0.0, 0.0));
        }
        let r = r2.sqrt();
        let x = eps * r;
        match self.dim {
            1 => Ok(self.eval(xi) * (1.0 - 2.0 / PI * sine_integral(x))),
            2 => Ok(self
                .terms
                .iter()
                .map(|t| t.factor * (t.shape.eval(xi) / r.powi(t.degree as i32)) * truncation_factor(t.degree, x))
                .sum()),
            n => Err(Error::Unsupported(format!("truncated symbol in dimension {n}"))),
        }
    }
}

/// `h_d(x) = 1 − I_{d−1}(x) + J_d(x)` with `I_m(x) = ∫₀ˣ J_m`.
pub fn truncation_factor(d: u32, x: f64) -> f64 {
    if x == 0.0 {
        return 1.0;
    }
    let d = d as usize;
    let js = bessel_j_all(d.max(1), x);
    // I_{m+1} = I_{m−1} − 2 J_m, seeded by I_1 = 1 − J_0 or a numeric I_0.
    let (mut m, mut i_m) = if (d - 1) % 2 == 1 { (1, 1.0 - js[0]) } else { (0, bessel_j_integral(0, x)) };
    while m < d - 1 {
        i_m -= 2.0 * js[m + 1];
        m += 2;
    }
    1.0 - i_m + js[d]
}
