use std::f64::consts::PI;

use num_complex::Complex64;

use super::config::{KernelChoice, L2FailureConfig};
use super::report::{Report, Series, Verdict};
use crate::algebra::{factorize, invertibility, CZElement};
use crate::grid::{dft_inverse, Grid, GridField, SpectralField};
use crate::kernels::KernelSpec;
use crate::operators::{apply_full, apply_truncated_spectral};
use crate::Result;

/// Direction where the invertible factor is smallest, or where `m_T` is when
/// `T` does not factor.
fn worst_direction(spec: &KernelSpec) -> Result<(f64, bool)> {
    match factorize(spec) {
        Ok(f) => Ok((invertibility(&f.u)?.argmin_angle, true)),
        Err(_) => Ok((invertibility(&CZElement::new(0.0, spec.clone()))?.argmin_angle, false)),
    }
}

/// Real field whose transform is a pair of Gaussian bumps of width `σ` at `±ξ₀`.
pub fn spectral_bump(grid: &Grid<f64>, center: [f64; 2], sigma: f64) -> Result<GridField<f64>> {
    let zero = SpectralField::new(*grid, vec![Complex64::new(0.0, 0.0); grid.len()])?;
    let coeffs = (0..grid.len())
        .map(|i| {
            let [u, v] = zero.frequency(i);
            let bump = |s: f64| {
                let d = (u - s * center[0]).powi(2) + (v - s * center[1]).powi(2);
                (-d / (2.0 * sigma * sigma)).exp()
            };
            Complex64::new(bump(1.0) + bump(-1.0), 0.0)
        })
        .collect();
    Ok(dft_inverse(&SpectralField::new(*grid, coeffs)?))
}

struct Arm {
    series: Vec<(f64, f64)>,
    theta: f64,
    factored: bool,
}

fn run_arm(kernel: &KernelChoice, config: &L2FailureConfig, grid: &Grid<f64>) -> Result<Arm> {
    let spec = kernel.resolve()?;
    let (theta, factored) = worst_direction(&spec)?;
    let step = 2.0 * PI / config.side_length;
    let snap = |v: f64| (v / step).round() * step;
    let center = [snap(config.frequency * theta.cos()), snap(config.frequency * theta.sin())];
    let mut series = Vec::new();
    for &sigma in &config.sigmas {
        let f = spectral_bump(grid, center, sigma)?;
        let truncated = apply_truncated_spectral(&spec, &f, config.epsilon)?;
        let full = apply_full(&spec, &f)?;
        series.push((sigma, truncated.l2_norm() / full.l2_norm()));
    }
    Ok(Arm { series, theta, factored })
}

/// `r(σ) = ‖T^ε f_σ‖₂ / ‖T f_σ‖₂` as the bump concentrates on the bad direction.
pub fn exp_l2_failure(config: &L2FailureConfig) -> Result<Report> {
    let mut report = Report::new("l2-failure", config);
    let grid = Grid::new(2, config.side_length, config.resolution)?;
    let mut ok = true;
    for (k, kernel) in config.treatments.iter().enumerate() {
        let arm = run_arm(kernel, config, &grid)?;
        let increasing = arm.series.windows(2).all(|w| w[1].1 > w[0].1);
        let growth = arm.series.last().map(|p| p.1).unwrap_or(f64::NAN) / arm.series[0].1;
        report.metric(format!("treatment{k}.growth"), growth);
        report.metric(format!("treatment{k}.theta"), arm.theta);
        report.metric(format!("treatment{k}.increasing"), if increasing { 1.0 } else { 0.0 });
        if !arm.factored {
            report.note(format!("{}: no factorization; direction taken from the symbol of T", kernel.0));
        }
        ok &= increasing && growth >= config.min_growth;
        report.series.push(Series::new(&format!("treatment{k}:{}", kernel.0), "sigma", "r", arm.series));
    }
    let control = run_arm(&config.control, config, &grid)?;
    let (lo, hi) = control.series.iter().fold((f64::INFINITY, 0.0_f64), |(lo, hi), p| (lo.min(p.1), hi.max(p.1)));
    report.metric("control.spread", hi / lo);
    report.metric("control.theta", control.theta);
    ok &= hi / lo <= config.control_band;
    report.series.push(Series::new(&format!("control:{}", config.control.0), "sigma", "r", control.series));
    report.verdict = if ok { Verdict::Pass } else { Verdict::Fail };
    Ok(report)
}
