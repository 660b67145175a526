//! Operation counting and scaling experiments.
//!
//! [`OpCounter`] tallies the solver's work in a BSS-style cost model: one
//! unit per log-sign ring operation, root extraction, or comparison,
//! regardless of the precision carried by the operands. Integer powers and
//! exponent-weighted accumulations are charged at their square-and-multiply
//! cost (one ring operation per bit of the exponent) because that is the
//! operation count a direct evaluation in real arithmetic would incur; the
//! fixed-point representation computes them with a single long
//! multiplication, but the charge follows the abstract algorithm, not the
//! shortcut. Big-integer work inside the Smith factorization is a different
//! resource and is tracked separately as a machine-word proxy.

use num_bigint::BigInt;
use num_traits::Signed;

/// Running cost tallies for one solve.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct OpCounter {
    /// Log-sign ring and root operations (adds, muls, divs, roots), with
    /// integer powers charged per exponent bit.
    pub logsign_ops: u64,
    /// Newton iterations executed during certification.
    pub newton_iters: u64,
    /// Sign tests, magnitude scans, and tolerance comparisons.
    pub comparisons: u64,
    /// Machine-word operations performed by big-integer updates inside the
    /// Smith factorization.
    pub snf_bitop_proxy: u64,
}

impl OpCounter {
    pub fn new() -> Self {
        Self::default()
    }

    /// Everything counted at unit cost in the arithmetic model.
    pub fn arithmetic_total(&self) -> u64 {
        self.logsign_ops + self.comparisons + self.newton_iters
    }

    pub fn merge(&mut self, other: &OpCounter) {
        self.logsign_ops += other.logsign_ops;
        self.newton_iters += other.newton_iters;
        self.comparisons += other.comparisons;
        self.snf_bitop_proxy += other.snf_bitop_proxy;
    }

    pub(crate) fn ring(&mut self, n: u64) {
        self.logsign_ops += n;
    }

    pub(crate) fn compare(&mut self, n: u64) {
        self.comparisons += n;
    }

    pub(crate) fn newton(&mut self, n: u64) {
        self.newton_iters += n;
    }

    /// Square-and-multiply charge for raising to the integer power `k`.
    pub(crate) fn pow(&mut self, k: &BigInt) {
        let b = k.abs().bits();
        self.logsign_ops += b.max(1);
    }

    /// Word-count proxy for one big-integer combination `a - q * b`.
    pub(crate) fn snf_words(&mut self, a: &BigInt, q: &BigInt, b: &BigInt) {
        let words = |x: &BigInt| x.abs().bits() / 64 + 1;
        self.snf_bitop_proxy += words(a) + words(q) + words(b);
    }
}

use std::time::Instant;

use serde::Serialize;

use crate::ensemble::{sample_system, GaussianEnsemble};
use crate::error::{Error, Result};
use crate::solver::{solve_counted, BinomialSystem, SolveOptions, SolveResult};

/// Run the full pipeline with counters attached. Instrumentation never
/// alters results: the counted path is the same code `solve` runs.
pub fn count_solve(f: &BinomialSystem) -> Result<(SolveResult, OpCounter)> {
    let mut counter = OpCounter::new();
    let result = solve_counted(f, &SolveOptions::default(), &mut counter)?;
    Ok((result, counter))
}

/// Aggregates for one `(n, d)` grid cell.
#[derive(Debug, Clone, Serialize)]
pub struct ScalingCell {
    pub n: usize,
    pub d: u64,
    pub trials: u32,
    /// Trials that errored (excluded from the means).
    pub failures: u32,
    pub mean_arith_ops: f64,
    pub stddev: f64,
    pub mean_snf_proxy: f64,
    pub wall_time_s: f64,
}

/// Least-squares fit of mean arithmetic ops to `c1 * n^2 * ln(n d) + c2`.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct ModelFit {
    pub c1: f64,
    pub c2: f64,
    pub r_squared: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct ScalingReport {
    pub cells: Vec<ScalingCell>,
    pub fit: ModelFit,
}

/// Sample `trials` systems per `(n, d)` cell, solve each with counters, and
/// fit the quadratic-times-log cost model. Trial seeds derive from the base
/// seed as `seed + (cell_index << 32) + trial_index`, so cells and trials
/// are independent and the whole report is reproducible.
pub fn run_scaling(
    n_list: &[usize],
    d_list: &[u64],
    trials: u32,
    seed: u64,
    variances: Option<(f64, f64)>,
) -> Result<ScalingReport> {
    if n_list.is_empty() || d_list.is_empty() {
        return Err(Error::InvalidInput("scaling grid must be nonempty".into()));
    }
    if trials < 30 {
        return Err(Error::InvalidInput(format!(
            "at least 30 trials per cell are required, got {trials}"
        )));
    }
    let pair = variances.unwrap_or((1.0, 1.0));
    let mut cells = Vec::new();
    let mut cell_index = 0u64;
    for &n in n_list {
        for &d in d_list {
            let started = Instant::now();
            let base = seed.wrapping_add(cell_index << 32);
            let mut ops = Vec::with_capacity(trials as usize);
            let mut proxy_sum = 0.0f64;
            let mut failures = 0u32;
            for trial in 0..trials {
                let ensemble =
                    GaussianEnsemble::new(n, d, vec![pair; n], base.wrapping_add(u64::from(trial)))?;
                let system = sample_system(&ensemble);
                match count_solve(&system) {
                    Ok((_, counter)) => {
                        ops.push(counter.arithmetic_total() as f64);
                        proxy_sum += counter.snf_bitop_proxy as f64;
                    }
                    Err(_) => failures += 1,
                }
            }
            let done = ops.len().max(1) as f64;
            let mean = ops.iter().sum::<f64>() / done;
            let var = ops.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / done;
            cells.push(ScalingCell {
                n,
                d,
                trials,
                failures,
                mean_arith_ops: mean,
                stddev: var.sqrt(),
                mean_snf_proxy: proxy_sum / done,
                wall_time_s: started.elapsed().as_secs_f64(),
            });
            cell_index += 1;
        }
    }
    let fit = fit_quadratic_log(&cells);
    Ok(ScalingReport { cells, fit })
}

/// Regress `y = c1 x + c2` with `x = n^2 ln(n d)` and report `R^2`. With
/// fewer than two distinct cells the fit degenerates to the mean.
pub fn fit_quadratic_log(cells: &[ScalingCell]) -> ModelFit {
    let points: Vec<(f64, f64)> = cells
        .iter()
        .map(|c| {
            let x = (c.n * c.n) as f64 * ((c.n as f64) * (c.d as f64)).ln();
            (x, c.mean_arith_ops)
        })
        .collect();
    let n = points.len() as f64;
    let mean_x = points.iter().map(|p| p.0).sum::<f64>() / n;
    let mean_y = points.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = points.iter().map(|p| (p.0 - mean_x).powi(2)).sum();
    let sxy: f64 = points.iter().map(|p| (p.0 - mean_x) * (p.1 - mean_y)).sum();
    let syy: f64 = points.iter().map(|p| (p.1 - mean_y).powi(2)).sum();
    if sxx == 0.0 {
        return ModelFit { c1: 0.0, c2: mean_y, r_squared: 1.0 };
    }
    let c1 = sxy / sxx;
    let c2 = mean_y - c1 * mean_x;
    let ss_res: f64 = points.iter().map(|p| (p.1 - (c1 * p.0 + c2)).powi(2)).sum();
    let r_squared = if syy == 0.0 { 1.0 } else { 1.0 - ss_res / syy };
    ModelFit { c1, c2, r_squared }
}

/// CSV rendering of a scaling report, one row per cell.
pub fn write_report_csv<W: std::io::Write>(report: &ScalingReport, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record([
        "n", "d", "trials", "failures", "mean_arith_ops", "stddev", "mean_snf_proxy",
        "wall_time_s",
    ])
    .map_err(|e| Error::InvalidInput(e.to_string()))?;
    for c in &report.cells {
        w.write_record([
            c.n.to_string(),
            c.d.to_string(),
            c.trials.to_string(),
            c.failures.to_string(),
            c.mean_arith_ops.to_string(),
            c.stddev.to_string(),
            c.mean_snf_proxy.to_string(),
            c.wall_time_s.to_string(),
        ])
        .map_err(|e| Error::InvalidInput(e.to_string()))?;
    }
    w.flush().map_err(|e| Error::InvalidInput(e.to_string()))?;
    Ok(())
}

/// JSON fit summary written alongside the CSV.
pub fn fit_summary_json(report: &ScalingReport) -> serde_json::Value {
    serde_json::json!({
        "schema_version": 1,
        "model": "c1 * n^2 * ln(n * d) + c2",
        "c1": report.fit.c1,
        "c2": report.fit.c2,
        "r_squared": report.fit.r_squared,
        "cells": report.cells.len(),
    })
}
