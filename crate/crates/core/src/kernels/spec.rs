use std::collections::BTreeMap;
use std::f64::consts::PI;

use num_bigint::BigInt;
use num_complex::Complex;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::{HarmonicPolynomial, Weight};
use crate::{Error, ExactPoly, GaussianRational, Rational, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn of_degree(d: u32) -> Self {
        if d % 2 == 0 {
            Self::Even
        } else {
            Self::Odd
        }
    }
}

/// Angular part of one kernel term.
#[derive(Clone, Debug, PartialEq)]
pub enum Shape {
    /// Planar harmonic polynomial (n = 2).
    Planar(HarmonicPolynomial),
    /// `x_j` (one axis) or `x_j x_k` (two distinct axes) in any dimension.
    Monomial(Vec<usize>),
}

impl Shape {
    pub fn degree(&self) -> u32 {
        match self {
            Self::Planar(p) => p.degree(),
            Self::Monomial(axes) => axes.len() as u32,
        }
    }

    pub fn eval(&self, x: &[f64]) -> f64 {
        match self {
            Self::Planar(p) => p.eval(x[0], x[1]),
            Self::Monomial(axes) => axes.iter().map(|a| x[*a]).product(),
        }
    }

    /// Planar form of a shape in two dimensions.
    pub fn to_planar(&self) -> Result<HarmonicPolynomial> {
        match self {
            Self::Planar(p) => Ok(p.clone()),
            Self::Monomial(axes) => {
                let mut p = ExactPoly::constant(Rational::from_integer(BigInt::from(1)));
                for a in axes {
                    p = p.mul(&match a {
                        0 => ExactPoly::x(),
                        1 => ExactPoly::y(),
                        _ => return Err(Error::Unsupported(format!("axis {a} in the plane"))),
                    });
                }
                HarmonicPolynomial::new(p)
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct KernelTerm {
    pub weight: Weight,
    pub shape: Shape,
}

impl KernelTerm {
    pub fn new(weight: Weight, shape: Shape) -> Self {
        Self { weight, shape }
    }

    pub fn planar(weight: Weight, p: HarmonicPolynomial) -> Self {
        Self::new(weight, Shape::Planar(p))
    }

    pub fn degree(&self) -> u32 {
        self.shape.degree()
    }
}

/// Kernel `K(x) = Σ_d w_d P_d(x) / |x|^{n+d}`.
#[derive(Clone, Debug, PartialEq)]
pub struct KernelSpec {
    dim: usize,
    terms: Vec<KernelTerm>,
    parity: Parity,
    constant: f64,
}

impl KernelSpec {
    /// Validates the terms: at least one nonzero term, a single parity,
    /// planar terms only in the plane, monomials harmonic and in range.
    pub fn new(dim: usize, terms: Vec<KernelTerm>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidKernel("dimension 0".into()));
        }
        let terms: Vec<KernelTerm> = terms.into_iter().filter(|t| !t.weight.is_zero()).collect();
        let first = terms.first().ok_or(Error::ZeroKernel)?;
        let parity = Parity::of_degree(first.degree());
        for t in &terms {
            if Parity::of_degree(t.degree()) != parity {
                return Err(Error::MixedParity);
            }
            match &t.shape {
                Shape::Planar(_) if dim != 2 => {
                    return Err(Error::InvalidKernel("planar term in dimension ≠ 2".into()))
                }
                Shape::Monomial(axes) => {
                    let distinct = axes.len() != 2 || axes[0] != axes[1];
                    if axes.is_empty() || axes.len() > 2 || !distinct || axes.iter().any(|a| *a >= dim) {
                        return Err(Error::InvalidKernel(format!("monomial axes {axes:?} in dimension {dim}")));
                    }
                }
                _ => {}
            }
        }
        Ok(Self { dim, terms, parity, constant: 0.0 })
    }

    /// Adds `c/|x|ⁿ` to the kernel. This breaks cancellation and exists only
    /// to exercise [`check_cancellation`].
    pub fn with_injected_constant(mut self, c: f64) -> Self {
        self.constant = c;
        self
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn terms(&self) -> &[KernelTerm] {
        &self.terms
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    pub fn degrees(&self) -> Vec<u32> {
        let mut d: Vec<u32> = self.terms.iter().map(KernelTerm::degree).collect();
        d.sort_unstable();
        d.dedup();
        d
    }

    /// `Ω` on the unit sphere, i.e. the kernel at a unit vector.
    pub fn omega(&self, unit: &[f64]) -> f64 {
        self.terms.iter().map(|t| t.weight.value() * t.shape.eval(unit)).sum::<f64>() + self.constant
    }

    /// Per-degree planar polynomials `P_d` with a common power of π per degree:
    /// the kernel is `Σ_d π^{k_d} P_d(x)/|x|^{2+d}`.
    pub fn planar_by_degree(&self) -> Result<BTreeMap<u32, (i32, ExactPoly)>> {
        if self.dim != 2 {
            return Err(Error::Unsupported(format!("planar expansion in dimension {}", self.dim)));
        }
        let mut out: BTreeMap<u32, (i32, ExactPoly)> = BTreeMap::new();
        for t in &self.terms {
            let p = t.shape.to_planar()?.poly().scale(&t.weight.ratio);
            match out.get_mut(&t.degree()) {
                None => {
                    out.insert(t.degree(), (t.weight.pi_power, p));
                }
                Some((k, acc)) if *k == t.weight.pi_power => *acc = acc.add(&p),
                Some(_) => {
                    return Err(Error::Unsupported(format!("degree {} mixes different powers of π", t.degree())))
                }
            }
        }
        out.retain(|_, (_, p)| !p.is_zero());
        if out.is_empty() {
            return Err(Error::ZeroKernel);
        }
        Ok(out)
    }

    /// Hilbert kernel `(1/π)/x` on the line.
    pub fn hilbert() -> Self {
        Self::new(1, vec![KernelTerm::new(Weight::over_pi(1, 1), Shape::Monomial(vec![0]))]).expect("valid kernel")
    }

    /// `x_j / |x|^{n+1}`.
    pub fn riesz_first_order(dim: usize, j: usize) -> Result<Self> {
        Self::new(dim, vec![KernelTerm::new(Weight::one(), Shape::Monomial(vec![j]))])
    }

    /// `x₁x₂ / |x|^{n+2}`.
    pub fn riesz_second_order(dim: usize) -> Result<Self> {
        let shape = if dim == 2 { Shape::Planar(xy()) } else { Shape::Monomial(vec![0, 1]) };
        Self::new(dim, vec![KernelTerm::new(Weight::one(), shape)])
    }

    /// `−(1/π) xy/|z|⁴`, the kernel with symbol `uv/|ξ|²`.
    pub fn riesz_xy() -> Self {
        Self::new(2, vec![KernelTerm::planar(Weight::over_pi(-1, 1), xy())]).expect("valid kernel")
    }

    /// `−(1/π) xy/|z|⁴ + (2/π) P₄(z)/|z|⁶`, with symbol `uv/|ξ|² + P₄(ξ)/|ξ|⁴`.
    pub fn with_quartic(p4: Option<HarmonicPolynomial>) -> Result<Self> {
        let mut terms = vec![KernelTerm::planar(Weight::over_pi(-1, 1), xy())];
        if let Some(p) = p4 {
            if p.degree() != 4 {
                return Err(Error::InvalidKernel(format!("quartic term has degree {}", p.degree())));
            }
            terms.push(KernelTerm::planar(Weight::over_pi(2, 1), p));
        }
        Self::new(2, terms)
    }

    /// `−(1/π) xy/|z|⁴ + λ (2/π)(x³y − xy³)/|z|⁶`, with symbol
    /// `uv/|ξ|² + λ(u³v − uv³)/|ξ|⁴`.
    pub fn lambda_family(lambda: &Rational) -> Self {
        let p4 = if lambda.is_zero() { None } else { Some(quartic(lambda, &Rational::zero())) };
        Self::with_quartic(p4).expect("valid kernel")
    }

    /// `xy/|z|⁴ + (x⁴ + y⁴ − 6x²y²)/|z|⁶`.
    pub fn failing_quartic() -> Self {
        let one = Rational::from_integer(BigInt::from(1));
        Self::new(
            2,
            vec![
                KernelTerm::planar(Weight::one(), xy()),
                KernelTerm::planar(Weight::one(), quartic(&Rational::zero(), &one)),
            ],
        )
        .expect("valid kernel")
    }
}

fn xy() -> HarmonicPolynomial {
    HarmonicPolynomial::new(ExactPoly::monomial(Rational::from_integer(BigInt::from(1)), 1, 1)).expect("xy is harmonic")
}

/// `α(x³y − xy³) + β(x⁴ + y⁴ − 6x²y²)`.
pub fn quartic(alpha: &Rational, beta: &Rational) -> HarmonicPolynomial {
    let i = |n: i64| Rational::from_integer(BigInt::from(n));
    let p = ExactPoly::from_terms([
        ((3, 1), alpha.clone()),
        ((1, 3), -alpha.clone()),
        ((4, 0), beta.clone()),
        ((0, 4), beta.clone()),
        ((2, 2), beta * i(-6)),
    ]);
    HarmonicPolynomial::new(p).expect("quartic family is harmonic")
}

/// `K(x)`; rejects the origin.
pub fn kernel_eval(spec: &KernelSpec, x: &[f64]) -> Result<f64> {
    if x.len() != spec.dim {
        return Err(Error::DimensionMismatch { expected: spec.dim, found: x.len() });
    }
    let r2: f64 = x.iter().map(|v| v * v).sum();
    if r2 == 0.0 {
        return Err(Error::ZeroPoint);
    }
    let r = r2.sqrt();
    let n = spec.dim as i32;
    let mut s = spec.constant / r.powi(n);
    for t in &spec.terms {
        let d = t.degree() as i32;
        s += t.weight.value() * t.shape.eval(x) / r.powi(n + d);
    }
    Ok(s)
}

/// Kernel with `Ω(e^{iθ}) = Σ_m 2 Re(c_m e^{imθ}) · π^{pi_power}` (n = 2).
/// Indices must be positive and of the declared parity.
pub fn expansion_from_fourier(
    coefficients: &[(u32, GaussianRational)],
    pi_power: i32,
    parity: Parity,
) -> Result<KernelSpec> {
    let two = Rational::from_integer(BigInt::from(2));
    let mut terms = Vec::new();
    for (m, c) in coefficients {
        if *m == 0 {
            return Err(Error::InvalidKernel("index 0 is a constant, not a spherical harmonic".into()));
        }
        if Parity::of_degree(*m) != parity {
            return Err(Error::MixedParity);
        }
        if c.is_zero() {
            continue;
        }
        let c2 = Complex::new(&c.re * &two, &c.im * &two);
        let p = HarmonicPolynomial::from_complex(*m, &c2)?;
        terms.push(KernelTerm::planar(Weight::new(Rational::from_integer(BigInt::from(1)), pi_power), p));
    }
    KernelSpec::new(2, terms)
}

/// Spherical mean of `Ω` by quadrature; true when it is ≤ 1e−10 in size.
///
/// On the circle the trapezoid rule with 4096 nodes is exact for the
/// trigonometric polynomials at hand. For n ≥ 3 the monomial shapes are odd
/// in some coordinate, so only the injected constant survives.
pub fn check_cancellation(spec: &KernelSpec) -> bool {
    let mean = match spec.dim {
        1 => 0.5 * (spec.omega(&[1.0]) + spec.omega(&[-1.0])),
        2 => {
            let n = 4096;
            let s: f64 = (0..n)
                .map(|k| {
                    let t = 2.0 * PI * k as f64 / n as f64;
                    spec.omega(&[t.cos(), t.sin()])
                })
                .sum();
            s / n as f64
        }
        _ => spec.constant,
    };
    mean.abs() <= 1e-10
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn second_order_riesz_at_diagonal() {
        let k = KernelSpec::riesz_second_order(2).unwrap();
        assert!((kernel_eval(&k, &[1.0, 1.0]).unwrap() - 0.25).abs() < 1e-15);
        assert!(matches!(kernel_eval(&k, &[0.0, 0.0]), Err(Error::ZeroPoint)));
        let k3 = KernelSpec::riesz_second_order(3).unwrap();
        assert!((kernel_eval(&k3, &[1.0, 1.0, 0.0]).unwrap() - 1.0 / 2.0f64.powf(2.5)).abs() < 1e-15);
    }

    #[test]
    fn parity_and_homogeneity() {
        let h = KernelSpec::riesz_first_order(2, 0).unwrap();
        let x = [0.3, -1.2];
        let a = kernel_eval(&h, &x).unwrap();
        assert_eq!(kernel_eval(&h, &[-0.3, 1.2]).unwrap(), -a);
        let b = kernel_eval(&h, &[0.6, -2.4]).unwrap();
        assert!((b - a / 4.0).abs() < 1e-15);
    }

    #[test]
    fn fourier_expansion_examples() {
        // c₂ = i/(4π) gives Ω = −(1/π) xy on the circle.
        let spec = expansion_from_fourier(&[(2, Complex::new(q(0, 1), q(1, 4)))], -1, Parity::Even).unwrap();
        let t = &spec.terms()[0];
        assert_eq!(t.weight, Weight::over_pi(1, 1));
        assert_eq!(t.shape.to_planar().unwrap().to_string(), "-x*y");
        // c₁ = 1 gives Ω = 2 cos θ.
        let spec = expansion_from_fourier(&[(1, Complex::new(q(1, 1), q(0, 1)))], 0, Parity::Odd).unwrap();
        assert_eq!(spec.parity(), Parity::Odd);
        assert!((spec.omega(&[1.0, 0.0]) - 2.0).abs() < 1e-15);
        assert!(matches!(expansion_from_fourier(&[], 0, Parity::Even), Err(Error::ZeroKernel)));
        assert!(matches!(
            expansion_from_fourier(
                &[(2, Complex::new(q(1, 1), q(0, 1))), (3, Complex::new(q(1, 1), q(0, 1)))],
                0,
                Parity::Even
            ),
            Err(Error::MixedParity)
        ));
    }

    #[test]
    fn cancellation_checks() {
        assert!(check_cancellation(&KernelSpec::riesz_xy()));
        assert!(check_cancellation(&KernelSpec::failing_quartic()));
        assert!(check_cancellation(&KernelSpec::hilbert()));
        assert!(!check_cancellation(&KernelSpec::riesz_xy().with_injected_constant(0.1)));
        assert!(!check_cancellation(&KernelSpec::riesz_second_order(3).unwrap().with_injected_constant(0.1)));
    }

    #[test]
    fn mixed_parity_rejected() {
        let terms = vec![
            KernelTerm::new(Weight::one(), Shape::Monomial(vec![0])),
            KernelTerm::new(Weight::one(), Shape::Monomial(vec![0, 1])),
        ];
        assert!(matches!(KernelSpec::new(2, terms), Err(Error::MixedParity)));
        assert!(matches!(KernelSpec::new(2, vec![]), Err(Error::ZeroKernel)));
    }

    #[test]
    fn lambda_family_shape() {
        let k = KernelSpec::lambda_family(&q(1, 2));
        let by = k.planar_by_degree().unwrap();
        assert_eq!(by[&2].1.to_string(), "-x*y");
        assert_eq!(by[&4].1.to_string(), "x^3*y - x*y^3");
        assert_eq!(by[&4].0, -1);
        assert_eq!(KernelSpec::lambda_family(&q(0, 1)).terms().len(), 1);
    }
}
