//! The `χ_(0,1)` counterexample on the line, evaluated off-grid by quadrature.
//!
//! With `H` normalized by `1/π`, `Hf(y) = (1/π) log|y/(y − 1)|` and `H² = −I`,
//! so the truncations of `H(Hf)` vanish as `ε → 0` outside `[0, 1]` and their
//! supremum sits at a zero of `Hf(x − ε) − Hf(x + ε)`.

use std::f64::consts::PI;

use super::config::HilbertConfig;
use super::report::{Report, Series, Verdict};
use crate::special::quad;
use crate::{Error, Result};

/// `Hχ_(0,1)(y)`.
pub fn hilbert_of_indicator(y: f64) -> f64 {
    (y / (y - 1.0)).abs().ln() / PI
}

/// Centered maximal function of `χ_(0,1)`.
pub fn maximal_of_indicator(x: f64) -> f64 {
    if x > 0.0 && x < 1.0 {
        1.0
    } else if x >= 1.0 {
        0.5 / x
    } else {
        0.5 / (1.0 - x)
    }
}

/// `∫_lo^hi f` with breakpoints; infinite ends are mapped.
fn piecewise<F: Fn(f64) -> f64>(f: &F, lo: f64, hi: f64, breaks: &[f64], tol: f64) -> Result<f64> {
    let mut cuts: Vec<f64> = breaks.iter().copied().filter(|b| *b > lo && *b < hi).collect();
    cuts.sort_by(f64::total_cmp);
    cuts.dedup();
    let mut nodes = vec![lo];
    nodes.extend(cuts);
    nodes.push(hi);
    let tol = tol / nodes.len() as f64;
    let mut sum = 0.0;
    for w in nodes.windows(2) {
        sum += match (w[0].is_finite(), w[1].is_finite()) {
            (true, true) => quad::integrate(f, w[0], w[1], tol)?,
            (false, true) => quad::integrate_from_neg_infinity(f, w[1], tol)?,
            (true, false) => quad::integrate_to_infinity(f, w[0], tol)?,
            (false, false) => return Err(Error::Quadrature("doubly infinite piece".into())),
        };
    }
    Ok(sum)
}

/// `H_ε(Hχ_(0,1))(x) = (1/π) ∫_{|x−y|>ε} Hf(y)/(x − y) dy`.
pub fn truncated_hh(x: f64, eps: f64, tol: f64) -> Result<f64> {
    let f = |y: f64| hilbert_of_indicator(y) / (x - y);
    let scale = x.abs().max(1.0);
    let breaks = [0.0, 1.0, -scale, -4.0 * scale, 4.0 * scale, x - 2.0 * eps, x + 2.0 * eps];
    let left = piecewise(&f, f64::NEG_INFINITY, x - eps, &breaks, tol)?;
    let right = piecewise(&f, x + eps, f64::INFINITY, &breaks, tol)?;
    Ok((left + right) / PI)
}

/// `H*(Hχ_(0,1))(x)` for `x > 1` and the maximizing `ε`.
pub fn maximal_hh(x: f64, tol: f64) -> Result<(f64, f64)> {
    if !(x > 1.0) {
        return Err(Error::OutOfRange(format!("x = {x} must exceed 1")));
    }
    let phi = |e: f64| hilbert_of_indicator(x - e) - hilbert_of_indicator(x + e);
    // Geometric scan of ε ∈ [1e−6 x, 1e3 x] for sign changes, refined by bisection.
    let steps = 4000;
    let (lo, hi) = ((1e-6 * x).ln(), (1e3 * x).ln());
    let grid: Vec<f64> = (0..=steps).map(|k| (lo + (hi - lo) * k as f64 / steps as f64).exp()).collect();
    let mut best = (0.0_f64, f64::NAN);
    for w in grid.windows(2) {
        let (mut a, mut b) = (w[0], w[1]);
        let (mut fa, fb) = (phi(a), phi(b));
        if !(fa.is_finite() && fb.is_finite()) || fa * fb > 0.0 {
            continue;
        }
        for _ in 0..200 {
            let m = 0.5 * (a + b);
            if m <= a || m >= b {
                break;
            }
            let fm = phi(m);
            if fm * fa > 0.0 {
                a = m;
                fa = fm;
            } else {
                b = m;
            }
        }
        let eps = 0.5 * (a + b);
        let v = truncated_hh(x, eps, tol)?;
        if v.abs() > best.0 {
            best = (v.abs(), eps);
        }
    }
    if best.1.is_nan() {
        return Err(Error::Quadrature(format!("no critical truncation found at x = {x}")));
    }
    Ok(best)
}

/// `A(x) = ∫_m^∞ log(1 + 1/y)/(x + y) dy`, unnormalized.
pub fn comparison_a(x: f64, m: f64, tol: f64) -> Result<f64> {
    let f = |y: f64| (1.0 / y).ln_1p() / (x + y);
    piecewise(&f, m, f64::INFINITY, &[x, 4.0 * x], tol)
}

/// `B(x) = ∫_{2x+m}^∞ log(y/(y − 1))/(y − x) dy`, unnormalized.
pub fn comparison_b(x: f64, m: f64, tol: f64) -> Result<f64> {
    let f = |y: f64| -(-1.0 / y).ln_1p() / (y - x);
    piecewise(&f, 2.0 * x + m, f64::INFINITY, &[4.0 * x + m], tol)
}

pub fn exp_hilbert_counterexample(config: &HilbertConfig) -> Result<Report> {
    let mut report = Report::new("hilbert-counterexample", config);
    let mut g_points = Vec::new();
    let mut rho_points = Vec::new();
    let mut ok = true;
    for &x in &config.points {
        let tol = config.quadrature_tolerance / x;
        let (hh, eps) = maximal_hh(x, tol)?;
        let g = x * hh / x.ln();
        let rho = hh / maximal_of_indicator(x);
        let a = comparison_a(x, config.m, tol)? / (PI * PI);
        report.metric(format!("x{x}.h_star_hh"), hh);
        report.metric(format!("x{x}.epsilon"), eps);
        report.metric(format!("x{x}.g"), g);
        report.metric(format!("x{x}.rho"), rho);
        report.metric(format!("x{x}.a_bound"), a);
        ok &= g >= config.g_band[0] && g <= config.g_band[1];
        ok &= hh >= (1.0 - config.lower_bound_tolerance) * a;
        g_points.push((x, g));
        rho_points.push((x, rho));
    }
    for w in rho_points.windows(2) {
        let growth = w[1].1 / w[0].1;
        report.metric(format!("rho_growth.x{}", w[1].0), growth);
        ok &= growth >= config.growth_per_decade;
    }
    let find = |x: f64| g_points.iter().find(|p| p.0 == x).map(|p| p.1);
    let (first, last) = (config.g_ratio_points[0], config.g_ratio_points[1]);
    match (find(first), find(last)) {
        (Some(a), Some(b)) => {
            let ratio = b / a;
            report.metric("g_ratio", ratio);
            ok &= ratio >= config.g_ratio_band[0] && ratio <= config.g_ratio_band[1];
        }
        _ => return Err(Error::Config("g-ratio-points must be among the sampled points".into())),
    }
    let b100 = comparison_b(100.0, config.m, 1e-12)?;
    report.metric("b_at_100", b100);
    ok &= b100 <= 1.0 / 100.0;
    report.series.push(Series::new("g", "x", "g", g_points));
    report.series.push(Series::new("rho", "x", "rho", rho_points));
    report.verdict = if ok { Verdict::Pass } else { Verdict::Fail };
    Ok(report)
}
