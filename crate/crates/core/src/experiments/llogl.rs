use super::config::LlogLConfig;
use super::report::{Report, Verdict};
use crate::grid::{FieldDescriptor, Grid, GridField};
use crate::operators::{iterated_maximal_field, llogl_maximal, llogl_norm, MaximalConfig};
use crate::Result;

/// Exactness on constants and the comparison `M_{L log L} ≈ M²` on a seeded suite.
pub fn exp_llogl(config: &LlogLConfig) -> Result<Report> {
    let mut report = Report::new("llogl", config);
    let grid = Grid::new(2, config.side_length, config.resolution)?;
    let constant = GridField::from_fn(grid, |_| config.constant_value)?;
    let const_err = (llogl_norm(constant.values()) - config.constant_value.abs()).abs();
    report.metric("constant_error", const_err);

    let maximal = MaximalConfig::new(&grid, config.half_widths.clone())?;
    let (mut lo, mut hi) = (f64::INFINITY, 0.0_f64);
    let n = grid.resolution();
    for seed in config.base_seed..config.base_seed + config.seeds {
        let f = FieldDescriptor::BandLimited { seed, max_mode: config.max_mode, amplitude: 1.0 }.sample(&grid)?;
        let m2 = iterated_maximal_field(&f, &maximal);
        for i in (0..n).step_by(config.stride) {
            for j in (0..n).step_by(config.stride) {
                let node = grid.flatten([i, j]);
                let ratio = llogl_maximal(&f, node, &maximal) / m2.values()[node];
                lo = lo.min(ratio);
                hi = hi.max(ratio);
            }
        }
    }
    report.metric("ratio_min", lo);
    report.metric("ratio_max", hi);
    let ok = const_err <= config.constant_tolerance && lo >= config.ratio_band[0] && hi <= config.ratio_band[1];
    report.verdict = if ok { Verdict::Pass } else { Verdict::Fail };
    Ok(report)
}
