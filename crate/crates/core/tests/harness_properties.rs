use std::collections::HashSet;

use eda_lab::harness::{replicate, run_sweep, summarize, KValues, Preset, SweepSpec};
use eda_lab::rng::derive_seed;

#[test]
fn fig1_grid_seeds_never_collide() {
    let spec = replicate(Preset::Fig1);
    let ks = spec.ks().unwrap();
    let mut seen = HashSet::new();
    for &k in &ks {
        for run_id in 0..spec.runs_per_cell {
            assert!(seen.insert(derive_seed(spec.master_seed, k, run_id)), "K={k} run={run_id}");
        }
    }
    assert_eq!(seen.len(), ks.len() * spec.runs_per_cell as usize);
}

/// Order statistic of rank r = ceil(q m): the smallest value v with at
/// least r sample points <= v.
fn rank_quantile(values: &[u64], q: f64) -> u64 {
    let r = ((q * values.len() as f64).ceil() as usize).max(1);
    *values
        .iter()
        .filter(|&&v| values.iter().filter(|&&w| w <= v).count() >= r)
        .min()
        .unwrap()
}

#[test]
fn cell_summaries_agree_with_recomputation() {
    let mut spec = SweepSpec::new(40, KValues::Explicit(vec![6.0, 12.0, 24.0]), 7);
    spec.iteration_cap = 20_000;
    let out = run_sweep(&spec).unwrap();
    for cell in &out.cells {
        let rows: Vec<_> = out.rows.iter().filter(|r| r.k == cell.k).cloned().collect();
        let its: Vec<u64> = rows.iter().map(|r| r.iterations_used).collect();
        let lower: Vec<u64> = rows.iter().map(|r| r.lower_boundary_bits as u64).collect();
        let below: Vec<u64> = rows.iter().map(|r| r.bits_below_beta as u64).collect();
        assert_eq!(cell.runs, 7);
        assert_eq!(cell.median_iterations, rank_quantile(&its, 0.5));
        assert_eq!(cell.q25, rank_quantile(&its, 0.25));
        assert_eq!(cell.q75, rank_quantile(&its, 0.75));
        assert_eq!(cell.median_lower_boundary_bits as u64, rank_quantile(&lower, 0.5));
        assert_eq!(cell.median_bits_below_beta as u64, rank_quantile(&below, 0.5));
        let capped = rows.iter().filter(|r| r.hit_cap).count() as f64 / 7.0;
        assert_eq!(cell.frac_hit_cap, capped);
        assert_eq!(&summarize(&rows), cell);
    }
}

#[test]
fn master_seed_changes_the_runs() {
    let mut spec = SweepSpec::new(30, KValues::Explicit(vec![10.0]), 4);
    spec.iteration_cap = 5_000;
    let a = run_sweep(&spec).unwrap();
    spec.master_seed += 1;
    let b = run_sweep(&spec).unwrap();
    assert_ne!(a.rows, b.rows);
}
