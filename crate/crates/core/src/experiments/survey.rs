use super::config::SurveyConfig;
use super::pointwise::empirical_constant;
use super::report::{Report, Series, Verdict};
use crate::algebra::condition_iii;
use crate::Result;

/// Cross-references the algebraic condition with empirical pointwise constants.
pub fn exp_condition_survey(config: &SurveyConfig) -> Result<Report> {
    let mut report = Report::new("condition-survey", config);
    let mut mismatches = 0;
    let mut expectations = 0;
    for (k, entry) in config.entries.iter().enumerate() {
        let spec = entry.kernel.resolve()?;
        let cond = condition_iii(&spec)?;
        let tag = format!("entry{k}");
        report.metric(format!("{tag}.division"), f64::from(u8::from(cond.division)));
        report.metric(format!("{tag}.holds"), f64::from(u8::from(cond.holds)));
        if let Some(inv) = &cond.invertibility {
            report.metric(format!("{tag}.min_abs_symbol"), inv.min_abs_symbol);
        }
        let mut constants = Vec::new();
        for &n in &config.pointwise.resolutions {
            let c = empirical_constant(&spec, &config.pointwise, n)?;
            report.metric(format!("{tag}.constant.n{n}"), c.constant);
            constants.push((n as f64, c.constant));
        }
        if let Some(expected) = entry.expect {
            expectations += 1;
            if expected != cond.holds {
                mismatches += 1;
                report.note(format!("{}: condition {} but expected {}", entry.kernel.0, cond.holds, expected));
            }
        }
        if !cond.division {
            report.note(format!("{}: division fails", entry.kernel.0));
        }
        report.series.push(Series::new(&format!("{tag}:{}", entry.kernel.0), "resolution", "constant", constants));
    }
    report.verdict = if mismatches > 0 {
        Verdict::Fail
    } else if expectations > 0 {
        Verdict::Pass
    } else {
        Verdict::Informational
    };
    Ok(report)
}
