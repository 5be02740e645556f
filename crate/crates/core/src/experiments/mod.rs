//! Scripted experiments with machine-checkable verdicts.

mod config;
mod hilbert;
mod l2_failure;
mod llogl;
mod mean_value;
mod pointwise;
mod report;
mod survey;

use rayon::prelude::*;

pub use config::{
    parse_rational, ExperimentConfig, HilbertConfig, KernelChoice, L2FailureConfig, LlogLConfig, MaximalChoice,
    MeanValueConfig, PointwiseConfig, SurveyConfig, SurveyEntry,
};
pub use hilbert::{
    comparison_a, comparison_b, exp_hilbert_counterexample, hilbert_of_indicator, maximal_hh, maximal_of_indicator,
    truncated_hh,
};
pub use l2_failure::{exp_l2_failure, spectral_bump};
pub use llogl::exp_llogl;
pub use mean_value::exp_mean_value;
pub use pointwise::{empirical_constant, exp_pointwise, EmpiricalConstant};
pub use report::{atomic_write, Report, Series, Verdict};
pub use survey::exp_condition_survey;

use crate::{Error, Result};

/// Experiment ids in suite order.
pub const EXPERIMENT_IDS: [&str; 7] = [
    "mean-value",
    "pointwise-even",
    "pointwise-odd",
    "hilbert-counterexample",
    "l2-failure",
    "condition-survey",
    "llogl",
];

pub fn run(id: &str, config: &ExperimentConfig) -> Result<Report> {
    match id {
        "mean-value" => exp_mean_value(&config.mean_value),
        "pointwise-even" => exp_pointwise(&config.pointwise_even),
        "pointwise-odd" => exp_pointwise(&config.pointwise_odd),
        "hilbert-counterexample" => exp_hilbert_counterexample(&config.hilbert_counterexample),
        "l2-failure" => exp_l2_failure(&config.l2_failure),
        "condition-survey" => exp_condition_survey(&config.condition_survey),
        "llogl" => exp_llogl(&config.llogl),
        _ => Err(Error::Config(format!("unknown experiment `{id}`"))),
    }
}

/// Every experiment, run as independent jobs; results come back in suite order.
pub fn suite(config: &ExperimentConfig) -> Vec<Result<Report>> {
    EXPERIMENT_IDS.par_iter().map(|id| run(id, config)).collect()
}
