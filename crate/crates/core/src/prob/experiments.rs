//! Numerical verification of the distributional estimates: the mean and
//! variance of `ln|Z|`, moment equivalences against the exponential law,
//! Monte Carlo tail experiments with confidence intervals, and the log-log
//! expectation brackets for `max{V, 1/V}` statistics.
//!
//! Every "equivalent up to universal constants" claim is exercised as a
//! bounded-ratio property with generous brackets, because the constants are
//! never named; every Monte Carlo experiment records its sample count and
//! seed so reports are reproducible.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::prob::dist::{
    log_gaussian_sd, rho_exponential, rho_log_gaussian, DistributionSampler, E_SQUARED,
    LOG_GAUSSIAN_MEAN,
};
use crate::prob::quad::{integrate, integrate_rel};

/// Configuration for the weighted-sum tail experiments.
#[derive(Debug, Clone, Serialize)]
pub struct TailExperimentConfig {
    /// Weight vector: unit-sphere for the linear-combination tails,
    /// zero-sum for the log-concavity experiments.
    pub weights: Vec<f64>,
    /// Scale parameter; must be at least `e^2` where it is used.
    pub d: f64,
    pub samples: usize,
    pub seed: u64,
}

fn l2_norm(w: &[f64]) -> f64 {
    w.iter().map(|x| x * x).sum::<f64>().sqrt()
}

fn require_zero_sum(weights: &[f64]) -> Result<()> {
    let sum: f64 = weights.iter().sum();
    if sum.abs() > 1e-9 * (1.0 + l2_norm(weights)) {
        return Err(Error::WeightSumNonzero(sum));
    }
    Ok(())
}

fn require_unit_sphere(weights: &[f64]) -> Result<()> {
    let norm = l2_norm(weights);
    if (norm - 1.0).abs() > 1e-9 {
        return Err(Error::InvalidInput(format!(
            "weights must lie on the unit sphere (norm = {norm})"
        )));
    }
    Ok(())
}

fn require_scale(d: f64) -> Result<()> {
    if !(d >= E_SQUARED) {
        return Err(Error::ScaleTooSmall(d));
    }
    Ok(())
}

/// Mean of `ln|Z|` by adaptive quadrature of `t * rho(t)`.
///
/// The window `[-60, 8]` is generous: the left tail of the integrand is
/// dominated by `|t| e^t` (mass below 5e-24 past -60) and the right tail by
/// the double-exponential decay of the density.
pub fn constant_a() -> f64 {
    integrate(|t| t * rho_log_gaussian(t), -60.0, 8.0, 1e-12).value
}

/// Variance of `ln|Z|` by quadrature around the quadrature mean.
pub fn variance_tau2() -> f64 {
    let a = constant_a();
    integrate(|t| (t - a).powi(2) * rho_log_gaussian(t), -60.0, 10.0, 1e-12).value
}

/// `||W||_p / ||Theta||_p` with both norms by quadrature, for even
/// `2 <= p <= 16`. `W = ln|Z| - E ln|Z|` and `Theta` is a rate-one
/// exponential (its moments are integrated, not taken from a formula).
pub fn moment_ratio_w(p: u32, quad_tol: f64) -> Result<f64> {
    if p < 2 || p > 16 || p % 2 != 0 {
        return Err(Error::InvalidInput(format!(
            "moment order must be even and within [2, 16], got {p}"
        )));
    }
    let a = LOG_GAUSSIAN_MEAN;
    let pf = f64::from(p);
    let left = -(8.0 * pf).max(60.0);
    let w_p = integrate_rel(|t| (t - a).abs().powf(pf) * rho_log_gaussian(t), left, 12.0, quad_tol)
        .value
        .powf(1.0 / pf);
    let right = (12.0 * pf).max(120.0);
    let theta_p = integrate_rel(|t| t.powf(pf) * rho_exponential(t), 0.0, right, quad_tol)
        .value
        .powf(1.0 / pf);
    Ok(w_p / theta_p)
}

/// One entry of an empirical tail table.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct TailPoint {
    pub t: f64,
    pub tail: f64,
    pub ci_lo: f64,
    pub ci_hi: f64,
}

/// Wilson score interval for a binomial proportion at ~95% confidence.
pub fn wilson_interval(successes: u64, trials: u64) -> (f64, f64) {
    if trials == 0 {
        return (0.0, 1.0);
    }
    let z = 1.959963984540054f64;
    let n = trials as f64;
    let p = successes as f64 / n;
    let z2 = z * z;
    let denom = 1.0 + z2 / n;
    let center = (p + z2 / (2.0 * n)) / denom;
    let half = (z / denom) * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt();
    ((center - half).max(0.0), (center + half).min(1.0))
}

/// Monte Carlo tails of `|sum_i theta_i ln|Z_i| - a sum_i theta_i|` on a
/// grid of thresholds, with Wilson confidence intervals.
pub fn tail_linear_combination(
    cfg: &TailExperimentConfig,
    t_grid: &[f64],
) -> Result<Vec<TailPoint>> {
    require_unit_sphere(&cfg.weights)?;
    if cfg.samples < 10_000 {
        return Err(Error::InvalidInput(format!(
            "tail experiments need at least 10^4 samples, got {}",
            cfg.samples
        )));
    }
    let mut sampler = DistributionSampler::new(cfg.seed);
    let mut hits = vec![0u64; t_grid.len()];
    for _ in 0..cfg.samples {
        let w: f64 = cfg
            .weights
            .iter()
            .map(|&th| th * (sampler.log_abs_gaussian() - LOG_GAUSSIAN_MEAN))
            .sum();
        let w = w.abs();
        for (hit, &t) in hits.iter_mut().zip(t_grid) {
            if w >= t {
                *hit += 1;
            }
        }
    }
    Ok(t_grid
        .iter()
        .zip(&hits)
        .map(|(&t, &h)| {
            let (ci_lo, ci_hi) = wilson_interval(h, cfg.samples as u64);
            TailPoint { t, tail: h as f64 / cfg.samples as f64, ci_lo, ci_hi }
        })
        .collect())
}

/// Monte Carlo estimate with a normal-approximation confidence interval and
/// the analytic bracket it is checked against.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct LogLogEstimate {
    pub estimate: f64,
    pub std_error: f64,
    pub ci_lo: f64,
    pub ci_hi: f64,
    pub lower_bound: f64,
    pub upper_bound: f64,
}

fn mean_and_se(values: impl Iterator<Item = f64>, n: usize) -> (f64, f64) {
    let mut sum = 0.0;
    let mut sum_sq = 0.0;
    for v in values {
        sum += v;
        sum_sq += v * v;
    }
    let nf = n as f64;
    let mean = sum / nf;
    let var = (sum_sq / nf - mean * mean).max(0.0);
    (mean, (var / nf).sqrt())
}

/// `E[ln ln(d * X)]` for `X = max{V, 1/V}`, `V = exp(sum_i a_i ln|Z_i|)`,
/// with zero-sum weights. Pointwise `X >= 1`, so `ln ln(d X) = ln(ln d +
/// |W_a|)` never leaves the real line for `d >= e^2`. Returns the analytic
/// bracket `[ln ln d, ln ln(d/e) + 2 + ln 2 + ln(1 + tau * |a|_2)]`.
pub fn loglog_expectation(cfg: &TailExperimentConfig) -> Result<LogLogEstimate> {
    require_zero_sum(&cfg.weights)?;
    require_scale(cfg.d)?;
    let mut sampler = DistributionSampler::new(cfg.seed);
    let log_d = cfg.d.ln();
    let (estimate, std_error) = mean_and_se(
        (0..cfg.samples).map(|_| {
            let w: f64 = cfg
                .weights
                .iter()
                .map(|&a| a * sampler.log_abs_gaussian())
                .sum();
            (log_d + w.abs()).ln()
        }),
        cfg.samples,
    );
    let gamma = log_gaussian_sd() * l2_norm(&cfg.weights);
    Ok(LogLogEstimate {
        estimate,
        std_error,
        ci_lo: estimate - 1.959963984540054 * std_error,
        ci_hi: estimate + 1.959963984540054 * std_error,
        lower_bound: log_d.ln(),
        upper_bound: (log_d - 1.0).ln() + 2.0 + std::f64::consts::LN_2 + (1.0 + gamma).ln(),
    })
}

/// Single-Gaussian version: `E[ln ln(d * max{|Z|, 1/|Z|})]` with bracket
/// `[ln ln d, ln 2 + ln ln(d/e) + sqrt(8/pi)]`.
pub fn loglog_single_gaussian(d: f64, samples: usize, seed: u64) -> Result<LogLogEstimate> {
    require_scale(d)?;
    let mut sampler = DistributionSampler::new(seed);
    let log_d = d.ln();
    let (estimate, std_error) = mean_and_se(
        (0..samples).map(|_| (log_d + sampler.log_abs_gaussian().abs()).ln()),
        samples,
    );
    Ok(LogLogEstimate {
        estimate,
        std_error,
        ci_lo: estimate - 1.959963984540054 * std_error,
        ci_hi: estimate + 1.959963984540054 * std_error,
        lower_bound: log_d.ln(),
        upper_bound: std::f64::consts::LN_2 + (log_d - 1.0).ln() + crate::prob::dist::SQRT_8_OVER_PI,
    })
}

/// One entry of the log-concave tail comparison.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct TailBoundPoint {
    pub s: f64,
    pub tail: f64,
    pub ci_hi: f64,
    /// The subexponential bound `exp(-s / (2 gamma))`, valid for
    /// `s >= gamma`.
    pub bound: f64,
}

/// Empirical `P(|W_a| >= s)` for zero-sum weights against the log-concavity
/// tail bound with `gamma = tau * |a|_2`.
pub fn logconcave_tail_check(
    cfg: &TailExperimentConfig,
    s_grid: &[f64],
) -> Result<Vec<TailBoundPoint>> {
    require_zero_sum(&cfg.weights)?;
    let gamma = log_gaussian_sd() * l2_norm(&cfg.weights);
    let mut sampler = DistributionSampler::new(cfg.seed);
    let mut hits = vec![0u64; s_grid.len()];
    for _ in 0..cfg.samples {
        let w: f64 = cfg
            .weights
            .iter()
            .map(|&a| a * sampler.log_abs_gaussian())
            .sum();
        let w = w.abs();
        for (hit, &s) in hits.iter_mut().zip(s_grid) {
            if w >= s {
                *hit += 1;
            }
        }
    }
    Ok(s_grid
        .iter()
        .zip(&hits)
        .map(|(&s, &h)| {
            let (_, ci_hi) = wilson_interval(h, cfg.samples as u64);
            TailBoundPoint {
                s,
                tail: h as f64 / cfg.samples as f64,
                ci_hi,
                bound: (-s / (2.0 * gamma)).exp(),
            }
        })
        .collect())
}

/// Split a weight vector at rank `p` of its non-increasing rearrangement:
/// the sup norm of the head (largest `min(p, n)` magnitudes) and the l2
/// norm of the remaining tail.
pub fn rearranged_norms(theta: &[f64], p: usize) -> (f64, f64) {
    let mut sorted: Vec<f64> = theta.iter().map(|v| v.abs()).collect();
    sorted.sort_by(|a, b| b.total_cmp(a));
    let head_max = sorted.first().copied().unwrap_or(0.0);
    let tail_l2 = sorted
        .iter()
        .skip(p)
        .map(|v| v * v)
        .sum::<f64>()
        .sqrt();
    (head_max, tail_l2)
}

/// One CSV row of an experiment report.
#[derive(Debug, Clone, Serialize)]
pub struct ExperimentRow {
    pub experiment: String,
    pub param_json: String,
    pub estimate: f64,
    pub ci_lo: f64,
    pub ci_hi: f64,
    pub bound_lo: Option<f64>,
    pub bound_hi: Option<f64>,
    pub samples: u64,
    pub seed: u64,
}

/// Write rows as CSV with the fixed report schema.
pub fn write_rows_csv<W: std::io::Write>(rows: &[ExperimentRow], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record([
        "experiment", "param_json", "estimate", "ci_lo", "ci_hi", "bound_lo", "bound_hi",
        "samples", "seed",
    ])
    .map_err(|e| Error::InvalidInput(e.to_string()))?;
    for r in rows {
        w.write_record([
            r.experiment.clone(),
            r.param_json.clone(),
            r.estimate.to_string(),
            r.ci_lo.to_string(),
            r.ci_hi.to_string(),
            r.bound_lo.map(|v| v.to_string()).unwrap_or_default(),
            r.bound_hi.map(|v| v.to_string()).unwrap_or_default(),
            r.samples.to_string(),
            r.seed.to_string(),
        ])
        .map_err(|e| Error::InvalidInput(e.to_string()))?;
    }
    w.flush().map_err(|e| Error::InvalidInput(e.to_string()))?;
    Ok(())
}
