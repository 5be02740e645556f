use std::collections::BTreeMap;
use std::f64::consts::PI;

use num_bigint::BigInt;
use num_complex::{Complex, Complex64};
use num_traits::{One, ToPrimitive, Zero};

use serde::Serialize;

use super::{division_condition, invertibility, CZElement, InvertibilityReport, KernelPart};
use crate::kernels::{circle_coefficients, multiplier_of, HarmonicPolynomial, KernelSpec, KernelTerm, Weight};
use crate::{Error, GaussianRational, Rational, Result};

/// Largest harmonic degree mapped back to a kernel.
const MAX_KERNEL_DEGREE: i64 = 12;

/// `T = R_P ∘ U`.
#[derive(Clone, Debug)]
pub struct Factorization {
    /// `R_P` has kernel `π^{k} P(x)/|x|^{2+d}`.
    pub base: HarmonicPolynomial,
    pub base_pi_power: i32,
    pub u: CZElement,
    /// Exact `λ` of `U` when it is rational.
    pub lambda_exact: Option<Rational>,
    /// Set when `U` could only be kept as a symbol.
    pub symbol_only: bool,
    /// `max |m_{R_P} m_U − m_T|` over the check angles.
    pub check_error: f64,
}

impl Factorization {
    /// Kernel of `R_P`.
    pub fn riesz_part(&self) -> KernelSpec {
        KernelSpec::new(
            2,
            vec![KernelTerm::planar(Weight::new(Rational::one(), self.base_pi_power), self.base.clone())],
        )
        .expect("nonzero base term")
    }
}

fn to_c64(c: &GaussianRational) -> Complex64 {
    Complex64::new(c.re.to_f64().unwrap_or(f64::NAN), c.im.to_f64().unwrap_or(f64::NAN))
}

fn minus_i_power(p: u32) -> GaussianRational {
    let (o, z) = (Rational::one(), Rational::zero());
    match p % 4 {
        0 => Complex::new(o, z),
        1 => Complex::new(z, -o),
        2 => Complex::new(-o, z),
        _ => Complex::new(z, o),
    }
}

/// Factorizes a planar kernel satisfying the division condition.
///
/// With `Q_d = P_d / P` and `γ_d = (−i)^d 2π/d`, the symbol of `U` is
/// `Σ_d (γ_d/γ_{d₀}) π^{k_d−k₀} Q_d(ξ)/|ξ|^{d−d₀}`. Its circle coefficients are
/// exact; the constant one is `λ`, and each `e^{±imθ}` pair becomes a kernel
/// term of degree `m` through `γ_m`.
pub fn factorize(spec: &KernelSpec) -> Result<Factorization> {
    let report = division_condition(spec)?;
    if !report.holds {
        return Err(Error::DivisionFails(report.failure_witness.unwrap_or(0)));
    }
    let by_degree = spec.planar_by_degree()?;
    let (&d0, (k0, _)) = by_degree.iter().next().expect("nonempty");
    let base = report.base.clone().expect("planar report carries its base");

    // (harmonic index m, power of π) → exact coefficient
    let mut b: BTreeMap<(i64, i32), GaussianRational> = BTreeMap::new();
    for (d, (kd, _)) in &by_degree {
        let ratio =
            minus_i_power(d - d0) * Complex::new(Rational::new(BigInt::from(d0), BigInt::from(*d)), Rational::zero());
        for (m, a) in circle_coefficients(&report.quotients[d]) {
            let e = b.entry((m, kd - k0)).or_insert_with(GaussianRational::zero);
            *e = e.clone() + a * ratio.clone();
        }
    }
    b.retain(|_, v| !v.is_zero());

    let mut lambda = 0.0;
    let mut lambda_exact = Some(Rational::zero());
    for ((m, k), v) in &b {
        if *m == 0 {
            lambda += to_c64(v).re * PI.powi(*k);
            lambda_exact = match (lambda_exact, *k) {
                (Some(acc), 0) => Some(acc + v.re.clone()),
                _ => None,
            };
        }
    }

    let symbol_only = b.keys().any(|(m, _)| m.abs() > MAX_KERNEL_DEGREE);
    let part = if symbol_only {
        let mut trig: BTreeMap<i64, Complex64> = BTreeMap::new();
        for ((m, k), v) in &b {
            if *m != 0 {
                *trig.entry(*m).or_default() += to_c64(v) * PI.powi(*k);
            }
        }
        KernelPart::SymbolOnly(trig)
    } else {
        let mut terms = Vec::new();
        for ((m, k), v) in &b {
            if *m <= 0 {
                continue;
            }
            // Re(c z^m) with c = B_m · m · i^m, weight π^{k−1}.
            let mu = *m as u32;
            let i_m = minus_i_power((4 - mu % 4) % 4);
            let c = v.clone() * i_m * Complex::new(Rational::from_integer(BigInt::from(mu)), Rational::zero());
            let p = HarmonicPolynomial::from_complex(mu, &c)?;
            terms.push(KernelTerm::planar(Weight::new(Rational::one(), k - 1), p));
        }
        if terms.is_empty() {
            KernelPart::Zero
        } else {
            KernelPart::Kernel(KernelSpec::new(2, terms)?)
        }
    };

    let lambda_exact = lambda_exact.filter(|_| b.keys().all(|(m, k)| *m != 0 || *k == 0));
    let u = match part {
        KernelPart::Zero => CZElement::scalar(2, lambda),
        KernelPart::Kernel(s) => CZElement::new(lambda, s),
        KernelPart::SymbolOnly(t) => CZElement::from_trig(lambda, t),
    };

    let riesz =
        multiplier_of(&KernelSpec::new(2, vec![KernelTerm::planar(Weight::new(Rational::one(), *k0), base.clone())])?);
    let full = multiplier_of(spec);
    let mut check_error: f64 = 0.0;
    for j in 0..64 {
        let t = 2.0 * PI * (j as f64 + 0.5) / 64.0;
        let lhs = riesz.on_circle(t) * u.on_circle(t);
        let rhs = full.on_circle(t);
        check_error = check_error.max((lhs - rhs).norm());
    }
    if check_error > 1e-10 {
        return Err(Error::InvalidKernel(format!("factorization check failed: max |m_P m_U − m_T| = {check_error:e}")));
    }
    Ok(Factorization { base, base_pi_power: *k0, u, lambda_exact, symbol_only, check_error })
}

/// Division condition together with invertibility of the factor `U`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConditionReport {
    pub division: bool,
    /// Absent when division fails and no factor exists.
    pub invertibility: Option<InvertibilityReport>,
    pub holds: bool,
}

/// Full condition: `P` divides every `P_d` and `U` is invertible.
pub fn condition_iii(spec: &KernelSpec) -> Result<ConditionReport> {
    if !division_condition(spec)?.holds {
        return Ok(ConditionReport { division: false, invertibility: None, holds: false });
    }
    if spec.dim() != 2 {
        // single-term kernel: U = I
        let identity = InvertibilityReport { invertible: true, min_abs_symbol: 1.0, argmin_angle: 0.0 };
        return Ok(ConditionReport { division: true, holds: true, invertibility: Some(identity) });
    }
    let report = invertibility(&factorize(spec)?.u)?;
    Ok(ConditionReport { division: true, holds: report.invertible, invertibility: Some(report) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::invertibility;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn lambda_family_factor() {
        for (n, d) in [(1, 2), (-3, 4), (99, 100), (1, 1), (2, 1)] {
            let lam = n as f64 / d as f64;
            let f = factorize(&KernelSpec::lambda_family(&q(n, d))).unwrap();
            assert_eq!(f.lambda_exact, Some(q(1, 1)));
            assert!(!f.symbol_only);
            for j in 0..32 {
                let t = 0.2 * j as f64;
                let expect = 1.0 + lam * (2.0 * t).cos();
                assert!((f.u.on_circle(t) - Complex64::new(expect, 0.0)).norm() < 1e-12);
            }
            let KernelPart::Kernel(k) = f.u.part() else { panic!("kernel part expected") };
            assert_eq!(k.terms()[0].weight, Weight::over_pi(1, 1));
            let inv = invertibility(&f.u).unwrap().invertible;
            assert_eq!(inv, lam.abs() < 1.0);
        }
    }

    #[test]
    fn single_term_gives_identity() {
        let f = factorize(&KernelSpec::riesz_xy()).unwrap();
        assert_eq!(f.u, CZElement::scalar(2, 1.0));
        let (a, b) = (multiplier_of(&f.riesz_part()), multiplier_of(&KernelSpec::riesz_xy()));
        for t in [0.1, 1.0, 2.5] {
            assert!((a.on_circle(t) - b.on_circle(t)).norm() < 1e-15);
        }
    }

    #[test]
    fn failing_kernel_is_rejected() {
        assert!(matches!(factorize(&KernelSpec::failing_quartic()), Err(Error::DivisionFails(4))));
    }

    #[test]
    fn odd_kernel_with_non_harmonic_quotient() {
        // P = x, P₃ = x³ − 3xy² = x(x² − 3y²): the quotient has a constant part.
        let x = HarmonicPolynomial::from_complex(1, &Complex::new(q(1, 1), q(0, 1))).unwrap();
        let p3 = HarmonicPolynomial::from_complex(3, &Complex::new(q(1, 1), q(0, 1))).unwrap();
        let spec = KernelSpec::new(
            2,
            vec![KernelTerm::planar(Weight::one(), x), KernelTerm::planar(Weight::rational(1, 5), p3)],
        )
        .unwrap();
        let f = factorize(&spec).unwrap();
        assert!(f.check_error < 1e-12);
        assert!(f.lambda_exact.is_some());
    }

    #[test]
    fn lambda_family_condition() {
        for (n, d, expected) in
            [(0, 1, true), (1, 2, true), (-99, 100, true), (1, 1, false), (-1, 1, false), (2, 1, false), (-2, 1, false)]
        {
            let spec = KernelSpec::lambda_family(&Rational::new(n.into(), d.into()));
            assert_eq!(condition_iii(&spec).unwrap().holds, expected, "λ = {n}/{d}");
        }
        assert!(condition_iii(&KernelSpec::hilbert()).unwrap().holds);
        let fail = condition_iii(&KernelSpec::failing_quartic()).unwrap();
        assert!(!fail.division && fail.invertibility.is_none());
    }
}
