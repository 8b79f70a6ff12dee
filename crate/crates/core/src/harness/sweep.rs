use std::panic::{self, AssertUnwindSafe};

use serde::Serialize;

use crate::cga::{self, RunResult};
use crate::error::{Error, Result};
use crate::rng::derive_seed;
use crate::stats::order_quantile;

use super::spec::SweepSpec;

/// One line of the per-run CSV.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunRow {
    pub benchmark: &'static str,
    pub mode: &'static str,
    pub n: usize,
    #[serde(rename = "K")]
    pub k: f64,
    pub pbar: f64,
    pub run_id: u32,
    pub seed: u64,
    pub iterations_used: u64,
    pub optimum_found: bool,
    pub hit_cap: bool,
    pub lower_boundary_bits: usize,
    pub bits_below_beta: usize,
    pub final_variance: f64,
}

/// Per-K aggregate. Capped runs enter the quantiles at the cap.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CellSummary {
    #[serde(rename = "K")]
    pub k: f64,
    pub runs: u32,
    pub median_iterations: u64,
    pub q25: u64,
    pub q75: u64,
    pub frac_hit_cap: f64,
    pub median_lower_boundary_bits: usize,
    pub median_bits_below_beta: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepOutput {
    /// Sorted by `(K, run_id)`.
    pub rows: Vec<RunRow>,
    /// One per K, in K order.
    pub cells: Vec<CellSummary>,
}

#[derive(Debug, Clone, Copy)]
struct Job {
    k: f64,
    run_id: u32,
}

/// Runs every `(K, run_id)` cell of the sweep.
///
/// Each run seeds its own stream from `(master_seed, K, run_id)`, so the
/// result does not depend on `parallelism`.
pub fn run_sweep(spec: &SweepSpec) -> Result<SweepOutput> {
    spec.validate()?;
    let mut ks = spec.ks()?;
    ks.sort_by(f64::total_cmp);
    ks.dedup();

    let jobs: Vec<Job> = ks
        .iter()
        .flat_map(|&k| (0..spec.runs_per_cell).map(move |run_id| Job { k, run_id }))
        .collect();

    let results = execute(&jobs, spec.parallelism, |job| run_job(spec, job));
    let rows = results.into_iter().collect::<Result<Vec<_>>>()?;

    let cells = rows
        .chunk_by(|a, b| a.k == b.k)
        .map(summarize)
        .collect();
    Ok(SweepOutput { rows, cells })
}

fn run_job(spec: &SweepSpec, job: &Job) -> Result<RunRow> {
    let seed = derive_seed(spec.master_seed, job.k, job.run_id);
    let config = spec.cell_config(job.k).with_seed(seed);
    let outcome = panic::catch_unwind(AssertUnwindSafe(|| {
        cga::run(&config, spec.benchmark, spec.beta)
    }));
    let result: RunResult = match outcome {
        Ok(r) => r?,
        Err(payload) => {
            let message = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            return Err(Error::RunPanicked {
                k: job.k,
                run_id: job.run_id,
                message,
            });
        }
    };
    Ok(RunRow {
        benchmark: spec.benchmark.benchmark_name(),
        mode: spec.benchmark.mode_name(),
        n: spec.n,
        k: job.k,
        pbar: config.pbar,
        run_id: job.run_id,
        seed,
        iterations_used: result.iterations_used,
        optimum_found: result.optimum_found,
        hit_cap: result.hit_cap,
        lower_boundary_bits: result.lower_boundary_bits,
        bits_below_beta: result.bits_below_beta,
        final_variance: result.final_variance,
    })
}

#[cfg(feature = "parallel")]
fn execute<T, F>(jobs: &[Job], parallelism: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(&Job) -> T + Sync,
{
    use rayon::prelude::*;

    if parallelism <= 1 {
        return jobs.iter().map(f).collect();
    }
    match rayon::ThreadPoolBuilder::new().num_threads(parallelism).build() {
        Ok(pool) => pool.install(|| jobs.par_iter().map(&f).collect()),
        // Thread spawning can fail in constrained sandboxes; same output either way.
        Err(_) => jobs.iter().map(f).collect(),
    }
}

#[cfg(not(feature = "parallel"))]
fn execute<T, F>(jobs: &[Job], _parallelism: usize, f: F) -> Vec<T>
where
    F: Fn(&Job) -> T,
{
    jobs.iter().map(f).collect()
}

/// Summary of the rows of one cell (all sharing a K).
pub fn summarize(rows: &[RunRow]) -> CellSummary {
    assert!(!rows.is_empty(), "a cell has at least one run");
    let mut iterations: Vec<u64> = rows.iter().map(|r| r.iterations_used).collect();
    let mut lower: Vec<usize> = rows.iter().map(|r| r.lower_boundary_bits).collect();
    let mut below: Vec<usize> = rows.iter().map(|r| r.bits_below_beta).collect();
    iterations.sort_unstable();
    lower.sort_unstable();
    below.sort_unstable();
    let capped = rows.iter().filter(|r| r.hit_cap).count();
    CellSummary {
        k: rows[0].k,
        runs: rows.len() as u32,
        median_iterations: order_quantile(&iterations, 0.5).unwrap(),
        q25: order_quantile(&iterations, 0.25).unwrap(),
        q75: order_quantile(&iterations, 0.75).unwrap(),
        frac_hit_cap: capped as f64 / rows.len() as f64,
        median_lower_boundary_bits: order_quantile(&lower, 0.5).unwrap(),
        median_bits_below_beta: order_quantile(&below, 0.5).unwrap(),
    }
}
