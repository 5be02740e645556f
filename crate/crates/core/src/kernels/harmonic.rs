use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::Poly2;
use crate::{Error, ExactPoly, FloatPoly, GaussianRational, Rational, Result};

/// Homogeneous harmonic bivariate polynomial with exact coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct HarmonicPolynomial {
    poly: ExactPoly,
    float: FloatPoly,
    /// `c` in `P = Re(c z^d)`, used for evaluation.
    complex: Complex<f64>,
    degree: u32,
}

impl HarmonicPolynomial {
    /// Validates homogeneity, degree ≥ 1 and `ΔP = 0` symbolically.
    pub fn new(poly: ExactPoly) -> Result<Self> {
        let degree = poly.degree().ok_or(Error::ZeroKernel)?;
        if !poly.is_homogeneous() {
            return Err(Error::NotHomogeneous);
        }
        if degree == 0 {
            return Err(Error::InvalidKernel("constant polynomial has degree 0".into()));
        }
        let lap = poly.laplacian();
        if !lap.is_zero() {
            return Err(Error::NotHarmonic(format!("Δ({poly}) = {lap}")));
        }
        let float = poly.to_f64();
        let re = float.coeff(degree, 0);
        let im = -float.coeff(degree - 1, 1) / f64::from(degree);
        Ok(Self { poly, float, complex: Complex::new(re, im), degree })
    }

    /// `Re(c z^d)` expanded with exact coefficients.
    pub fn from_complex(degree: u32, c: &GaussianRational) -> Result<Self> {
        if degree == 0 {
            return Err(Error::InvalidKernel("degree must be at least 1".into()));
        }
        // z^d = Σ_k C(d,k) x^{d−k} (iy)^k, so Re(c z^d) = Σ_k C(d,k) Re(c i^k) x^{d−k} y^k.
        let mut poly = ExactPoly::zero();
        let mut binom = BigInt::one();
        for k in 0..=degree {
            let re = match k % 4 {
                0 => c.re.clone(),
                1 => -c.im.clone(),
                2 => -c.re.clone(),
                _ => c.im.clone(),
            };
            poly.add_term(degree - k, k, re * Rational::from_integer(binom.clone()));
            binom = binom * BigInt::from(degree - k) / BigInt::from(k + 1);
        }
        Self::new(poly)
    }

    /// The `c` with `P = Re(c z^d)`.
    pub fn to_complex(&self) -> GaussianRational {
        let d = Rational::from_integer(BigInt::from(self.degree));
        let re = self.poly.coeff(self.degree, 0);
        let im = -self.poly.coeff(self.degree - 1, 1) / d;
        Complex::new(re, im)
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn poly(&self) -> &ExactPoly {
        &self.poly
    }

    pub fn float_poly(&self) -> &FloatPoly {
        &self.float
    }

    pub fn eval(&self, x: f64, y: f64) -> f64 {
        (self.complex * Complex::new(x, y).powu(self.degree)).re
    }

    pub fn scale(&self, c: &Rational) -> Result<Self> {
        Self::new(self.poly.scale(c))
    }
}

impl fmt::Display for HarmonicPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.poly.fmt(f)
    }
}

/// Exact Fourier coefficients on the unit circle: `p(e^{iθ}) = Σ_m a_m e^{imθ}`.
pub fn circle_coefficients(p: &ExactPoly) -> BTreeMap<i64, GaussianRational> {
    let zero = Rational::zero();
    let half = Rational::new(BigInt::one(), BigInt::from(2));
    let gz = |re: Rational, im: Rational| Complex::new(re, im);
    // In the (z, z̄) basis: x = (z + z̄)/2, y = −i (z − z̄)/2.
    let x = Poly2::from_terms([((1, 0), gz(half.clone(), zero.clone())), ((0, 1), gz(half.clone(), zero.clone()))]);
    let y = Poly2::from_terms([((1, 0), gz(zero.clone(), -half.clone())), ((0, 1), gz(zero.clone(), half.clone()))]);
    let mut out: BTreeMap<i64, GaussianRational> = BTreeMap::new();
    for ((i, j), c) in p.terms() {
        let term = x.pow(*i).mul(&y.pow(*j));
        for ((a, b), v) in term.terms() {
            let m = i64::from(*a) - i64::from(*b);
            let e = out.entry(m).or_insert_with(|| gz(zero.clone(), zero.clone()));
            *e = e.clone() + v.clone() * gz(c.clone(), zero.clone());
        }
    }
    out.retain(|_, v| !v.is_zero());
    out
}

/// Scalar weight `r · πᵏ` with `r` rational.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Weight {
    pub ratio: Rational,
    pub pi_power: i32,
}

impl Weight {
    pub fn new(ratio: Rational, pi_power: i32) -> Self {
        Self { ratio, pi_power }
    }

    pub fn one() -> Self {
        Self::new(Rational::one(), 0)
    }

    pub fn rational(n: i64, d: i64) -> Self {
        Self::new(Rational::new(BigInt::from(n), BigInt::from(d)), 0)
    }

    pub fn over_pi(n: i64, d: i64) -> Self {
        Self::new(Rational::new(BigInt::from(n), BigInt::from(d)), -1)
    }

    pub fn value(&self) -> f64 {
        self.ratio.to_f64().unwrap_or(f64::NAN) * std::f64::consts::PI.powi(self.pi_power)
    }

    pub fn is_zero(&self) -> bool {
        self.ratio.is_zero()
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::new(&self.ratio * &other.ratio, self.pi_power + other.pi_power)
    }

    pub fn div(&self, other: &Self) -> Self {
        Self::new(&self.ratio / &other.ratio, self.pi_power - other.pi_power)
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.pi_power {
            0 => write!(f, "{}", self.ratio),
            -1 if self.ratio.is_integer() => write!(f, "{}/pi", self.ratio),
            1 => write!(f, "{}*pi", self.ratio),
            k => write!(f, "{}*pi^{}", self.ratio, k),
        }
    }
}

impl FromStr for Weight {
    type Err = Error;

    /// Accepts `r`, `r/pi`, `r/pi^k`, `r*pi`, `r*pi^k`, `pi`, `1/pi` with `r` an
    /// integer or `p/q`.
    fn from_str(s: &str) -> Result<Self> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = || Error::Parse(format!("weight `{s}`"));
        let parse_ratio = |t: &str| -> Result<Rational> {
            match t {
                "" | "+" => Ok(Rational::one()),
                "-" => Ok(-Rational::one()),
                _ => Rational::from_str(t).map_err(|_| bad()),
            }
        };
        let Some(pos) = s.find("pi") else {
            return Ok(Self::new(parse_ratio(&s)?, 0));
        };
        let (head, tail) = (&s[..pos], &s[pos + 2..]);
        let power: i32 = match tail.strip_prefix('^') {
            Some(p) => p.parse().map_err(|_| bad())?,
            None if tail.is_empty() => 1,
            None => return Err(bad()),
        };
        if let Some(r) = head.strip_suffix('/') {
            Ok(Self::new(parse_ratio(r)?, -power))
        } else if let Some(r) = head.strip_suffix('*') {
            Ok(Self::new(parse_ratio(r)?, power))
        } else if head.is_empty() || head == "-" {
            Ok(Self::new(parse_ratio(head)?, power))
        } else {
            Err(bad())
        }
    }
}

/// Writes a Gaussian rational as `a + bi`.
pub fn format_gaussian(c: &GaussianRational) -> String {
    if c.im.is_zero() {
        return c.re.to_string();
    }
    if c.re.is_zero() {
        return format!("{}i", c.im);
    }
    let sign = if c.im.is_negative() { "-" } else { "+" };
    format!("{} {} {}i", c.re, sign, c.im.abs())
}
