use super::config::MeanValueConfig;
use super::report::{Report, Series, Verdict};
use crate::grid::Grid;
use crate::kernels::Parity;
use crate::operators::{apply_full, apply_truncated, ball_average};
use crate::Result;

/// `max |Tᵉf(x) − avg_{B(x,ε)} Tf| / ‖Tf‖∞` over the configured points and radii.
pub fn exp_mean_value(config: &MeanValueConfig) -> Result<Report> {
    let mut report = Report::new("mean-value", config);
    let spec = config.kernel.resolve()?;
    let grid = Grid::new(spec.dim(), config.side_length, config.resolution)?;
    let f = config.field.sample(&grid)?;
    let tf = apply_full(&spec, &f)?;
    let sup = tf.sup_norm();
    let mut worst = 0.0_f64;
    for (k, point) in config.points.iter().enumerate() {
        let node = grid.nearest(point);
        let mut points = Vec::new();
        for &eps in &config.epsilons {
            let truncated = apply_truncated(&spec, &f, node, eps)?;
            let average = ball_average(&tf, node, eps);
            let rel = if sup > 0.0 { (truncated - average).abs() / sup } else { 0.0 };
            worst = worst.max(rel);
            report.metric(format!("point{k}.eps{eps}.truncated"), truncated);
            report.metric(format!("point{k}.eps{eps}.ball_average"), average);
            points.push((eps, rel));
        }
        report.series.push(Series::new(&format!("point{k}"), "epsilon", "relative_gap", points));
    }
    report.metric("tf_sup", sup);
    report.metric("max_relative_gap", worst);
    report.verdict = match spec.parity() {
        Parity::Odd => {
            report.note("odd kernel: the ball-average identity is not expected to hold");
            Verdict::Informational
        }
        Parity::Even if worst <= config.tolerance => Verdict::Pass,
        Parity::Even => Verdict::Fail,
    };
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::experiments::config::KernelChoice;
    use crate::grid::FieldDescriptor;

    fn small() -> MeanValueConfig {
        MeanValueConfig { resolution: 128, ..MeanValueConfig::default() }
    }

    #[test]
    fn gaussian_passes() {
        let r = exp_mean_value(&small()).unwrap();
        assert_eq!(r.verdict, Verdict::Pass, "{:?}", r.metrics);
    }

    #[test]
    fn zero_field_gives_zero() {
        let r = exp_mean_value(&MeanValueConfig { field: FieldDescriptor::Zero, ..small() }).unwrap();
        assert_eq!(r.metrics["max_relative_gap"], 0.0);
    }

    #[test]
    fn hilbert_is_informational_and_far_off() {
        let c = MeanValueConfig {
            kernel: KernelChoice::new("hilbert"),
            field: FieldDescriptor::Gaussian { center: vec![0.5], width: 0.5, amplitude: 1.0 },
            points: vec![vec![0.0]],
            resolution: 1024,
            ..MeanValueConfig::default()
        };
        let r = exp_mean_value(&c).unwrap();
        assert_eq!(r.verdict, Verdict::Informational);
        assert!(r.metrics["max_relative_gap"] > 10.0 * c.tolerance, "{:?}", r.metrics);
    }
}
