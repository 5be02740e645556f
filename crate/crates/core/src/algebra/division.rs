use std::collections::BTreeMap;

use num_complex::{Complex, Complex64};
use num_traits::{One, Zero};
use serde::Serialize;

use crate::kernels::{HarmonicPolynomial, KernelSpec};
use crate::{Error, ExactPoly, GaussianRational, Rational, Result};

/// Exact quotient `Q / P`, or `None` when `P` does not divide `Q`.
///
/// Long division in `x` over `ℚ[y]`. For homogeneous `P` the leading
/// coefficient in `x` is a monomial, so the remainder vanishes iff the leading
/// term of the running remainder is divisible at every step.
pub fn divides(p: &ExactPoly, q: &ExactPoly) -> Result<Option<ExactPoly>> {
    if p.is_zero() {
        return Err(Error::ZeroDivisor);
    }
    let lead = |f: &ExactPoly| -> ((u32, u32), Rational) {
        let (k, c) = f.terms().max_by_key(|((i, j), _)| (*i, *j)).expect("nonzero polynomial");
        (*k, c.clone())
    };
    let ((a, b), lc) = lead(p);
    let mut rem = q.clone();
    let mut quot = ExactPoly::zero();
    while !rem.is_zero() {
        let ((i, j), c) = lead(&rem);
        if i < a || j < b {
            return Ok(None);
        }
        let t = ExactPoly::monomial(c / &lc, i - a, j - b);
        rem = rem.sub(&p.mul(&t));
        quot = quot.add(&t);
    }
    Ok(Some(quot))
}

#[derive(Clone, Debug, PartialEq)]
pub struct DivisionReport {
    pub holds: bool,
    /// Lowest-degree nonzero term.
    pub base: Option<HarmonicPolynomial>,
    /// `Q_d` with `P · Q_d = P_d`, exact.
    pub quotients: BTreeMap<u32, ExactPoly>,
    /// First degree (or Fourier index) at which division fails.
    pub failure_witness: Option<u32>,
}

#[derive(Serialize)]
struct ReportDoc {
    holds: bool,
    base: Option<String>,
    quotients: BTreeMap<u32, String>,
    failure_witness: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    min_abs_symbol: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    argmin_angle: Option<f64>,
}

impl DivisionReport {
    /// Structured text form; the invertibility fields are included when given.
    pub fn to_json(&self, invertibility: Option<(f64, f64)>) -> String {
        let doc = ReportDoc {
            holds: self.holds,
            base: self.base.as_ref().map(ToString::to_string),
            quotients: self.quotients.iter().map(|(d, q)| (*d, q.to_string())).collect(),
            failure_witness: self.failure_witness,
            min_abs_symbol: invertibility.map(|v| v.0),
            argmin_angle: invertibility.map(|v| v.1),
        };
        serde_json::to_string_pretty(&doc).expect("report serializes")
    }
}

/// Condition (iii), division half: the lowest-degree term divides every term.
pub fn division_condition(spec: &KernelSpec) -> Result<DivisionReport> {
    if spec.dim() != 2 {
        let degrees = spec.degrees();
        if degrees.len() == 1 && spec.terms().len() == 1 {
            return Ok(DivisionReport { holds: true, base: None, quotients: BTreeMap::new(), failure_witness: None });
        }
        return Err(Error::Unsupported(format!("division in dimension {}", spec.dim())));
    }
    let by_degree = spec.planar_by_degree()?;
    let (d0, (_, p)) = by_degree.iter().next().ok_or(Error::ZeroKernel)?;
    let base = HarmonicPolynomial::new(p.clone())?;
    let mut quotients = BTreeMap::new();
    for (d, (_, pd)) in &by_degree {
        match divides(p, pd)? {
            Some(q) => {
                debug_assert!(p.mul(&q) == *pd);
                quotients.insert(*d, q);
            }
            None => return Ok(DivisionReport { holds: false, base: Some(base), quotients, failure_witness: Some(*d) }),
        }
    }
    debug_assert!(quotients[d0] == ExactPoly::constant(Rational::one()));
    Ok(DivisionReport { holds: true, base: Some(base), quotients, failure_witness: None })
}

fn i_power(p: u32) -> GaussianRational {
    let (o, z) = (Rational::one(), Rational::zero());
    match p % 4 {
        0 => Complex::new(o, z),
        1 => Complex::new(z, o),
        2 => Complex::new(-o, z),
        _ => Complex::new(z, -o),
    }
}

fn cpow(c: &GaussianRational, p: u32) -> GaussianRational {
    let mut out = i_power(0);
    for _ in 0..p {
        out = out * c.clone();
    }
    out
}

/// Fourier-coefficient form of the division condition for even `Ω`:
/// with `2N` the least index carrying a nonzero `c_{2N}`, the condition holds iff
/// every nonzero index is a multiple `2Np` and, after the rotation that makes
/// `c_{2N}` purely imaginary, every `c_{2Np}` is purely imaginary too.
///
/// For the rotation `e^{2iNα} = i t conj(c_{2N}) / |c_{2N}|` the test is
/// `Re(c_{2Np} · i^p · conj(c_{2N})^p) = 0`, which is exact over ℚ(i).
pub fn division_condition_fourier_2d(coefficients: &[(u32, GaussianRational)]) -> Result<DivisionReport> {
    let mut coeffs: BTreeMap<u32, GaussianRational> = BTreeMap::new();
    for (m, c) in coefficients {
        if m % 2 != 0 {
            return Err(Error::Unsupported("the Fourier path covers even kernels only".into()));
        }
        if !c.is_zero() {
            let e = coeffs.entry(*m).or_insert_with(GaussianRational::zero);
            *e = e.clone() + c.clone();
        }
    }
    coeffs.retain(|_, c| !c.is_zero());
    let (&two_n, base_c) = coeffs.iter().next().ok_or(Error::ZeroKernel)?;
    if two_n == 0 {
        return Err(Error::InvalidKernel("index 0 is not a spherical harmonic".into()));
    }
    let two = Rational::from_integer(2.into());
    let base = HarmonicPolynomial::from_complex(two_n, &Complex::new(&base_c.re * &two, &base_c.im * &two))?;
    let conj = base_c.conj();
    for (&m, c) in &coeffs {
        let ok = m % two_n == 0 && {
            let p = m / two_n;
            (c.clone() * i_power(p) * cpow(&conj, p)).re.is_zero()
        };
        if !ok {
            return Ok(DivisionReport {
                holds: false,
                base: Some(base),
                quotients: BTreeMap::new(),
                failure_witness: Some(m),
            });
        }
    }
    Ok(DivisionReport { holds: true, base: Some(base), quotients: BTreeMap::new(), failure_witness: None })
}

/// Floating point variant: a rotated coefficient `γ` counts as purely
/// imaginary when `|Re γ| ≤ 1e−12 |γ|`. Returns the verdict and the witness.
pub fn division_condition_fourier_2d_f64(coefficients: &[(u32, Complex64)]) -> Result<(bool, Option<u32>)> {
    let mut coeffs: BTreeMap<u32, Complex64> = BTreeMap::new();
    for (m, c) in coefficients {
        if m % 2 != 0 {
            return Err(Error::Unsupported("the Fourier path covers even kernels only".into()));
        }
        *coeffs.entry(*m).or_default() += c;
    }
    coeffs.retain(|_, c| c.norm() > 0.0);
    let (&two_n, base_c) = coeffs.iter().next().ok_or(Error::ZeroKernel)?;
    let w = Complex64::new(0.0, 1.0) * base_c.conj() / base_c.norm();
    for (&m, c) in &coeffs {
        let ok = m % two_n == 0 && {
            let g = c * w.powu(m / two_n);
            g.re.abs() <= 1e-12 * g.norm()
        };
        if !ok {
            return Ok((false, Some(m)));
        }
    }
    Ok((true, None))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernels::quartic;
    use num_bigint::BigInt;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(BigInt::from(n), BigInt::from(d))
    }

    fn xy() -> ExactPoly {
        ExactPoly::monomial(q(1, 1), 1, 1)
    }

    #[test]
    fn stated_divisions() {
        let p4 = quartic(&q(1, 1), &q(0, 1));
        let quot = divides(&xy(), p4.poly()).unwrap().unwrap();
        assert_eq!(quot.to_string(), "x^2 - y^2");
        assert_eq!(xy().mul(&quot), *p4.poly());
        let bad = quartic(&q(0, 1), &q(1, 1));
        assert!(divides(&xy(), bad.poly()).unwrap().is_none());
        assert_eq!(divides(&xy(), &xy()).unwrap().unwrap(), ExactPoly::constant(q(1, 1)));
        assert!(matches!(divides(&ExactPoly::zero(), &xy()), Err(Error::ZeroDivisor)));
    }

    #[test]
    fn kernel_level_conditions() {
        let r = division_condition(&KernelSpec::riesz_xy()).unwrap();
        assert!(r.holds);
        assert_eq!(r.quotients.len(), 1);
        let r = division_condition(&KernelSpec::lambda_family(&q(3, 5))).unwrap();
        assert!(r.holds);
        assert_eq!(r.quotients[&4].to_string(), "-6/5*x^2 + 6/5*y^2");
        let r = division_condition(&KernelSpec::failing_quartic()).unwrap();
        assert!(!r.holds);
        assert_eq!(r.failure_witness, Some(4));
        assert!(division_condition(&KernelSpec::hilbert()).unwrap().holds);
    }

    #[test]
    fn fourier_path_examples() {
        let c2 = Complex::new(q(0, 1), q(1, 4));
        let r = division_condition_fourier_2d(&[(2, c2.clone())]).unwrap();
        assert!(r.holds);
        // λ-family: Ω = −(1/π)xy + λ(2/π)(x³y − xy³) on the circle, in units of 1/π:
        // −sin2θ/2 + λ sin4θ/2  →  c₂ = i/4, c₄ = −iλ/4.
        let r = division_condition_fourier_2d(&[(2, c2.clone()), (4, Complex::new(q(0, 1), q(-1, 8)))]).unwrap();
        assert!(r.holds);
        // c₆ off the admissible line.
        let r = division_condition_fourier_2d(&[(2, c2.clone()), (6, Complex::new(q(1, 1), q(1, 3)))]).unwrap();
        assert!(!r.holds);
        assert_eq!(r.failure_witness, Some(6));
        // index not a multiple of the base index
        let r = division_condition_fourier_2d(&[(4, c2.clone()), (6, c2)]).unwrap();
        assert_eq!(r.failure_witness, Some(6));
        assert!(matches!(division_condition_fourier_2d(&[]), Err(Error::ZeroKernel)));
        assert!(division_condition_fourier_2d(&[(3, Complex::new(q(1, 1), q(0, 1)))]).is_err());
    }

    #[test]
    fn float_path_matches_exact_on_examples() {
        let c = |re: f64, im: f64| Complex64::new(re, im);
        assert_eq!(division_condition_fourier_2d_f64(&[(2, c(0.0, 0.25)), (4, c(0.0, -0.125))]).unwrap(), (true, None));
        let angle = std::f64::consts::PI / 7.0;
        let c6 = c(0.0, 1.0) * Complex64::from_polar(1.0, angle);
        assert_eq!(division_condition_fourier_2d_f64(&[(2, c(0.0, 1.0)), (6, c6)]).unwrap(), (false, Some(6)));
    }

    #[test]
    fn report_serializes() {
        let r = division_condition(&KernelSpec::lambda_family(&q(1, 2))).unwrap();
        let text = r.to_json(Some((0.5, 1.5)));
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v["holds"], true);
        assert_eq!(v["quotients"]["4"], "-x^2 + y^2");
        assert_eq!(v["min_abs_symbol"], 0.5);
    }
}
