//! Shared generators for the integration tests.
#![allow(dead_code)]

use czmax::kernels::{HarmonicPolynomial, KernelSpec, KernelTerm, Weight};
use czmax::{GaussianRational, Rational};
use num_complex::Complex;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn q(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

pub fn random_gaussian(rng: &mut ChaCha8Rng) -> GaussianRational {
    loop {
        let c = Complex::new(
            q(rng.gen_range(-6..=6), rng.gen_range(1..=4)),
            q(rng.gen_range(-6..=6), rng.gen_range(1..=4)),
        );
        if !c.is_zero() {
            return c;
        }
    }
}

pub fn cpow(c: &GaussianRational, p: u32) -> GaussianRational {
    (0..p).fold(Complex::new(q(1, 1), q(0, 1)), |acc, _| acc * c.clone())
}

/// Even planar kernel `Σ Re(c_d z^d)/|z|^{2+d}` and its circle coefficients `(d, c_d/2)`.
/// Half of the extra terms are built on the admissible line `c = i t (−i)^p c₀^p`.
pub fn seeded_even_spec(seed: u64) -> (KernelSpec, Vec<(u32, GaussianRational)>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let d0: u32 = if rng.gen_bool(0.5) { 2 } else { 4 };
    let c0 = random_gaussian(&mut rng);
    let mut terms = vec![(d0, c0.clone())];
    for p in 2..=3u32 {
        if rng.gen_bool(0.6) {
            let c = if rng.gen_bool(0.5) {
                let t = q(rng.gen_range(1..=5), rng.gen_range(1..=3));
                let minus_i_p = cpow(&Complex::new(q(0, 1), q(-1, 1)), p);
                Complex::new(q(0, 1), t) * minus_i_p * cpow(&c0, p)
            } else {
                random_gaussian(&mut rng)
            };
            terms.push((p * d0, c));
        }
    }
    if d0 == 4 && rng.gen_bool(0.2) {
        terms.push((6, random_gaussian(&mut rng)));
    }
    let half = Complex::new(q(1, 2), q(0, 1));
    let spec = KernelSpec::new(
        2,
        terms
            .iter()
            .map(|(d, c)| KernelTerm::planar(Weight::one(), HarmonicPolynomial::from_complex(*d, c).unwrap()))
            .collect(),
    )
    .unwrap();
    let coeffs = terms.into_iter().map(|(d, c)| (d, c * half.clone())).collect();
    (spec, coeffs)
}
