use super::config::{MaximalChoice, PointwiseConfig};
use super::report::{Report, Series, Verdict};
use crate::grid::{FieldDescriptor, Grid, GridField};
use crate::kernels::{KernelSpec, Parity};
use crate::operators::{
    apply_full, apply_maximal_field, hl_maximal_field, iterated_maximal_field, MaximalConfig, TruncationConfig,
};
use crate::{Error, Result};

/// Largest `T*f / 𝓜(Tf)` over nodes where the denominator is resolved.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EmpiricalConstant {
    pub constant: f64,
    pub valid: usize,
    pub total: usize,
}

fn ratio_sup(
    spec: &KernelSpec,
    fields: &[GridField<f64>],
    truncation: &TruncationConfig,
    maximal: &MaximalConfig,
    choice: MaximalChoice,
) -> Result<EmpiricalConstant> {
    let mut out = EmpiricalConstant { constant: 0.0, valid: 0, total: 0 };
    for f in fields {
        let star = apply_maximal_field(spec, f, truncation)?;
        let tf = apply_full(spec, f)?;
        let m = match choice {
            MaximalChoice::M => hl_maximal_field(&tf, maximal),
            MaximalChoice::M2 => iterated_maximal_field(&tf, maximal),
        };
        let floor = 1e-9 * m.sup_norm();
        for (a, b) in star.values().iter().zip(m.values()) {
            out.total += 1;
            if *b > floor && *b > 0.0 {
                out.valid += 1;
                out.constant = out.constant.max(a / b);
            }
        }
    }
    Ok(out)
}

fn maximal_config(grid: &Grid<f64>, radii: &[f64]) -> Result<MaximalConfig> {
    let h = grid.spacing();
    let mut half_widths = vec![0];
    half_widths.extend(radii.iter().map(|r| (r / h).round() as usize));
    MaximalConfig::new(grid, half_widths)
}

/// Empirical constant of the configured suite at one resolution.
pub fn empirical_constant(spec: &KernelSpec, config: &PointwiseConfig, resolution: usize) -> Result<EmpiricalConstant> {
    let grid = Grid::new(spec.dim(), config.side_length, resolution)?;
    let truncation = TruncationConfig::new(&grid, config.epsilons.clone())?;
    let maximal = maximal_config(&grid, &config.radii)?;
    let mut fields = Vec::new();
    for seed in config.base_seed..config.base_seed + config.seeds {
        fields.push(FieldDescriptor::BandLimited { seed, max_mode: config.max_mode, amplitude: 1.0 }.sample(&grid)?);
    }
    for d in &config.extra_fields {
        fields.push(d.sample(&grid)?);
    }
    ratio_sup(spec, &fields, &truncation, &maximal, config.maximal_choice())
}

/// `sup T*g / M(Tg)` for `g = Hχ_(0,1)` on growing domains at fixed spacing.
fn indicator_sweep(spec: &KernelSpec, config: &PointwiseConfig) -> Result<Vec<(f64, f64)>> {
    let h = config.side_length / config.resolutions[0] as f64;
    let mut out = Vec::new();
    for &l in &config.domain_sizes {
        let n = (l / h).round() as usize;
        let grid = Grid::new(spec.dim(), l, n)?;
        let indicator = FieldDescriptor::IntervalIndicator { a: 0.0, b: 1.0 }.sample(&grid)?;
        let g = apply_full(spec, &indicator)?;
        let c =
            ratio_sup(spec, &[g], &TruncationConfig::dyadic(&grid), &MaximalConfig::dyadic(&grid), MaximalChoice::M)?;
        out.push((l, c.constant));
    }
    Ok(out)
}

/// Empirical `sup T*f / M(Tf)` (even) or `/ M²(Tf)` (odd) across resolutions.
pub fn exp_pointwise(config: &PointwiseConfig) -> Result<Report> {
    let id = match config.parity {
        Parity::Even => "pointwise-even",
        Parity::Odd => "pointwise-odd",
    };
    let mut report = Report::new(id, config);
    let spec = config.kernel.resolve()?;
    if spec.parity() != config.parity {
        return Err(Error::Config(format!("kernel `{}` does not have the configured parity", config.kernel.0)));
    }
    let mut constants = Vec::new();
    let (mut valid, mut total) = (0, 0);
    for &n in &config.resolutions {
        let c = empirical_constant(&spec, config, n)?;
        report.metric(format!("constant.n{n}"), c.constant);
        report.metric(format!("excluded.n{n}"), (c.total - c.valid) as f64);
        valid += c.valid;
        total += c.total;
        constants.push((n as f64, c.constant));
    }
    let drift = constants.windows(2).map(|w| (w[1].1 - w[0].1).abs() / w[0].1).fold(0.0_f64, f64::max);
    let fraction = if total > 0 { valid as f64 / total as f64 } else { 0.0 };
    report.metric("drift", drift);
    report.metric("valid_fraction", fraction);
    report.series.push(Series::new("constant", "resolution", "constant", constants.clone()));

    let expected = match config.parity {
        Parity::Even => MaximalChoice::M,
        Parity::Odd => MaximalChoice::M2,
    };
    report.verdict = if fraction < config.min_valid_fraction {
        report.note("too few points with a resolved denominator; no constant is claimed");
        Verdict::Informational
    } else if config.maximal_choice() != expected {
        let sweep = indicator_sweep(&spec, config)?;
        for (l, c) in &sweep {
            report.metric(format!("indicator_constant.l{l}"), *c);
        }
        report.series.push(Series::new("indicator_sweep", "side_length", "constant", sweep));
        report.note("maximal operator weaker than the one the parity requires");
        Verdict::Informational
    } else if constants.iter().all(|(_, c)| c.is_finite()) && drift <= config.drift_tolerance {
        Verdict::Pass
    } else {
        Verdict::Fail
    };
    Ok(report)
}
