use num_complex::Complex64;

/// `Si(x) = ∫_0^x sin t / t dt`.
///
/// Power series for `|x| ≤ 2`, the continued fraction for `E₁(ix)` beyond.
pub fn sine_integral(x: f64) -> f64 {
    let t = x.abs();
    let v = if t == 0.0 {
        0.0
    } else if t <= 2.0 {
        let mut sum = 0.0;
        let mut term = t; // t^{2k+1}/(2k+1)!
        let mut k = 0u32;
        loop {
            let contrib = term / f64::from(2 * k + 1);
            sum += contrib;
            if contrib.abs() < 1e-18 * sum.abs() {
                break;
            }
            k += 1;
            term *= -t * t / (f64::from(2 * k) * f64::from(2 * k + 1));
        }
        sum
    } else {
        // Modified Lentz on E1(it) = e^{-it} / (it + 1/(1 + 1/(it + 2/(1 + ...)))).
        let tiny = 1e-300;
        let mut b = Complex64::new(1.0, t);
        let mut c = Complex64::new(1.0 / tiny, 0.0);
        let mut d = Complex64::new(1.0, 0.0) / b;
        let mut h = d;
        for i in 2..10_000u32 {
            let a = -f64::from((i - 1) * (i - 1));
            b += 2.0;
            d = Complex64::new(1.0, 0.0) / (d * a + b);
            c = b + Complex64::new(a, 0.0) / c;
            let del = c * d;
            h *= del;
            if (del.re - 1.0).abs() + del.im.abs() < 1e-16 {
                break;
            }
        }
        h *= Complex64::new(t.cos(), -t.sin());
        // E1(it) = -Ci(t) + i (Si(t) - π/2)
        std::f64::consts::FRAC_PI_2 + h.im
    };
    v.copysign(x)
}
