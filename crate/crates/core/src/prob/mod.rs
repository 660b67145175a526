//! Distributional estimates behind the solver's average-case analysis:
//! quadrature values, Monte Carlo tail experiments, and log-log expectation
//! brackets, all seeded and reproducible.

pub mod dist;
pub mod experiments;
pub mod quad;

pub use dist::{DistributionSampler, E_SQUARED, LOG_GAUSSIAN_MEAN, LOG_GAUSSIAN_VARIANCE};
pub use experiments::{
    constant_a, logconcave_tail_check, loglog_expectation, loglog_single_gaussian,
    moment_ratio_w, rearranged_norms, tail_linear_combination, variance_tau2, wilson_interval,
    write_rows_csv, ExperimentRow, LogLogEstimate, TailBoundPoint, TailExperimentConfig,
    TailPoint,
};
