//! Step classification and per-run genetic-drift metrics.
//!
//! A bit takes a *signal* step when its value decided the comparison and a
//! *random* step when it differed between the offspring without deciding.
//! Metric updates touch only the bits that moved, so a run pays O(changed
//! bits) per iteration on top of the engine's O(n) sampling.

use crate::benchmarks::ComparatorKind;
use crate::cga::{FrequencyVector, StepRecord};
use crate::error::{Error, Result};

pub const DEFAULT_BETA: f64 = 1.0 / 3.0;

/// Tolerance for "frequency sits on a margin".
const BOUNDARY_EPS: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum StepKind {
    #[default]
    None,
    RandomUp,
    RandomDown,
    Signal,
}

/// Sum of the per-bit Bernoulli variances.
pub fn sampling_variance(p: &FrequencyVector) -> f64 {
    p.iter().map(|q| q * (1.0 - q)).sum()
}

/// Per-bit tags for a finished comparison.
///
/// Ties move nothing and are tagged all-`None`, even when the offspring
/// differ (OneMax). For OneMax a step counts as a signal only when exactly
/// one bit differs; with more differing bits no single bit is decisive.
pub fn classify_steps(record: &StepRecord, kind: ComparatorKind) -> Vec<StepKind> {
    let mut tags = vec![StepKind::None; record.x.len()];
    fill_tags(record, kind, &mut tags);
    tags
}

pub(crate) fn classify_into(record: &mut StepRecord, kind: ComparatorKind) {
    let mut tags = std::mem::take(&mut record.step_kind);
    tags.clear();
    tags.resize(record.x.len(), StepKind::None);
    fill_tags(record, kind, &mut tags);
    record.step_kind = tags;
}

fn fill_tags(record: &StepRecord, kind: ComparatorKind, tags: &mut [StepKind]) {
    let Some(winner) = record.winner() else {
        return;
    };
    let decisive = if kind.is_positional() {
        record.outcome.decisive_index
    } else if record.x.hamming_distance(&record.y) == 1 {
        record.x.differing_positions(&record.y).next()
    } else {
        None
    };
    for i in record.x.differing_positions(&record.y) {
        tags[i] = if Some(i) == decisive {
            StepKind::Signal
        } else if winner[i] {
            StepKind::RandomUp
        } else {
            StepKind::RandomDown
        };
    }
}

/// Running metrics for one run.
#[derive(Debug, Clone, PartialEq)]
pub struct MetricsState {
    variance: f64,
    min_freq: Vec<f64>,
    lower_boundary_hit: Vec<bool>,
    upper_boundary_hit: Vec<bool>,
    signal_steps: Vec<u64>,
    random_steps: Vec<u64>,
    pbar: f64,
    beta: f64,
}

impl MetricsState {
    /// `beta` must lie strictly between `pbar` and 1/2.
    pub fn new(p: &FrequencyVector, pbar: f64, beta: f64) -> Result<Self> {
        if !(beta > pbar && beta < 0.5) {
            return Err(Error::Config(format!(
                "beta must lie in (pbar, 1/2) = ({pbar}, 0.5), got {beta}"
            )));
        }
        let n = p.len();
        let upper = 1.0 - pbar;
        Ok(MetricsState {
            variance: sampling_variance(p),
            min_freq: p.as_slice().to_vec(),
            lower_boundary_hit: p.iter().map(|q| q <= pbar + BOUNDARY_EPS).collect(),
            upper_boundary_hit: p.iter().map(|q| q >= upper - BOUNDARY_EPS).collect(),
            signal_steps: vec![0; n],
            random_steps: vec![0; n],
            pbar,
            beta,
        })
    }

    /// Folds one committed step into the metrics.
    pub fn update(&mut self, record: &StepRecord) {
        let upper = 1.0 - self.pbar;
        for c in &record.changes {
            let i = c.index;
            match record.step_kind[i] {
                StepKind::Signal => self.signal_steps[i] += 1,
                StepKind::RandomUp | StepKind::RandomDown => self.random_steps[i] += 1,
                StepKind::None => {}
            }
            if c.after == c.before {
                continue;
            }
            self.variance += c.after * (1.0 - c.after) - c.before * (1.0 - c.before);
            if c.after < self.min_freq[i] {
                self.min_freq[i] = c.after;
            }
            if c.after <= self.pbar + BOUNDARY_EPS {
                self.lower_boundary_hit[i] = true;
            }
            if c.after >= upper - BOUNDARY_EPS {
                self.upper_boundary_hit[i] = true;
            }
        }
    }

    /// Incrementally maintained sampling variance.
    pub fn variance(&self) -> f64 {
        self.variance
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn min_freq(&self) -> &[f64] {
        &self.min_freq
    }

    pub fn lower_boundary_hit(&self) -> &[bool] {
        &self.lower_boundary_hit
    }

    pub fn upper_boundary_hit(&self) -> &[bool] {
        &self.upper_boundary_hit
    }

    pub fn signal_steps(&self) -> &[u64] {
        &self.signal_steps
    }

    pub fn random_steps(&self) -> &[u64] {
        &self.random_steps
    }

    /// `(bits that ever sat on the lower margin, bits that ever fell below beta)`.
    pub fn drift_summary(&self) -> (usize, usize) {
        let lower = self.lower_boundary_hit.iter().filter(|&&h| h).count();
        let below = self.min_freq.iter().filter(|&&m| m < self.beta).count();
        (lower, below)
    }
}
