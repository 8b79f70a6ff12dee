//! The cGA state machine: sample two offspring, compare, move every
//! differing frequency by 1/K toward the winner, clamp to the margins.

use std::fmt;
use std::ops::Index;
use std::str::FromStr;

use rand::Rng;

use crate::benchmarks::{Comparator, ComparatorKind, ComparisonOutcome, Relation};
use crate::error::{Error, Result};
use crate::instrumentation::{self, MetricsState, StepKind};
use crate::rng::{self, RunRng};

pub const DEFAULT_ITERATION_CAP: u64 = 200_000;

#[derive(Debug, Clone, PartialEq)]
pub struct CgaConfig {
    pub n: usize,
    /// Hypothetical population size; every update moves a frequency by `1/k`.
    pub k: f64,
    /// Margin: frequencies live in `[pbar, 1 - pbar]`.
    pub pbar: f64,
    pub iteration_cap: u64,
    pub seed: u64,
}

impl CgaConfig {
    /// Config with margin `1/n`, the default iteration cap and seed 0.
    pub fn new(n: usize, k: f64) -> Self {
        CgaConfig {
            n,
            k,
            pbar: 1.0 / n as f64,
            iteration_cap: DEFAULT_ITERATION_CAP,
            seed: 0,
        }
    }

    pub fn with_pbar(mut self, pbar: f64) -> Self {
        self.pbar = pbar;
        self
    }

    pub fn with_cap(mut self, iteration_cap: u64) -> Self {
        self.iteration_cap = iteration_cap;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::Config("n must be at least 1".into()));
        }
        if !(self.k >= 1.0 && self.k.is_finite()) {
            return Err(Error::Config(format!("K must be a finite value >= 1, got {}", self.k)));
        }
        if !(self.pbar > 0.0 && self.pbar < 0.5) {
            return Err(Error::Config(format!(
                "margin must lie in (0, 1/2), got {}",
                self.pbar
            )));
        }
        if self.iteration_cap == 0 {
            return Err(Error::Config("iteration cap must be at least 1".into()));
        }
        Ok(())
    }

    pub fn upper(&self) -> f64 {
        1.0 - self.pbar
    }
}

/// A sampled offspring.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct BitString(Vec<bool>);

impl BitString {
    pub fn zeros(n: usize) -> Self {
        BitString(vec![false; n])
    }

    pub fn ones(n: usize) -> Self {
        BitString(vec![true; n])
    }

    pub fn from_bits(bits: Vec<bool>) -> Self {
        BitString(bits)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[bool] {
        &self.0
    }

    pub fn count_ones(&self) -> usize {
        self.0.iter().filter(|&&b| b).count()
    }

    pub fn is_all_ones(&self) -> bool {
        self.0.iter().all(|&b| b)
    }

    pub fn hamming_distance(&self, other: &BitString) -> usize {
        self.0.iter().zip(&other.0).filter(|(a, b)| a != b).count()
    }

    pub fn differing_positions<'a>(&'a self, other: &'a BitString) -> impl Iterator<Item = usize> + 'a {
        self.0
            .iter()
            .zip(&other.0)
            .enumerate()
            .filter(|(_, (a, b))| a != b)
            .map(|(i, _)| i)
    }
}

impl Index<usize> for BitString {
    type Output = bool;

    fn index(&self, i: usize) -> &bool {
        &self.0[i]
    }
}

impl FromStr for BitString {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(Error::Usage(format!("invalid bit {other:?} in {s:?}"))),
            })
            .collect::<Result<Vec<_>>>()
            .map(BitString)
    }
}

impl fmt::Display for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.0 {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

/// Marginal frequencies, one per bit.
#[derive(Debug, Clone, PartialEq)]
pub struct FrequencyVector(Vec<f64>);

impl FrequencyVector {
    pub fn uniform(n: usize) -> Self {
        FrequencyVector(vec![0.5; n])
    }

    /// Takes arbitrary values; they must lie in `[pbar, 1 - pbar]` to be
    /// used by an engine.
    pub fn from_values(values: Vec<f64>) -> Self {
        FrequencyVector(values)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn iter(&self) -> impl Iterator<Item = f64> + '_ {
        self.0.iter().copied()
    }
}

impl Index<usize> for FrequencyVector {
    type Output = f64;

    fn index(&self, i: usize) -> &f64 {
        &self.0[i]
    }
}

/// One frequency update. `before == after` when the move was clamped away.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FreqChange {
    pub index: usize,
    pub before: f64,
    pub after: f64,
}

/// Everything that happened in one iteration.
#[derive(Debug, Clone, PartialEq)]
pub struct StepRecord {
    /// Value of the iteration counter when the step was taken.
    pub iteration: u64,
    pub x: BitString,
    pub y: BitString,
    pub outcome: ComparisonOutcome,
    pub step_kind: Vec<StepKind>,
    pub optimum_sampled: bool,
    /// One entry per bit that moved (or tried to move) this iteration.
    pub changes: Vec<FreqChange>,
}

impl StepRecord {
    pub fn empty(n: usize) -> Self {
        StepRecord {
            iteration: 0,
            x: BitString::zeros(n),
            y: BitString::zeros(n),
            outcome: ComparisonOutcome::TIE,
            step_kind: vec![StepKind::None; n],
            optimum_sampled: false,
            changes: Vec::new(),
        }
    }

    pub fn winner(&self) -> Option<&BitString> {
        match self.outcome.relation {
            Relation::XWins => Some(&self.x),
            Relation::YWins => Some(&self.y),
            Relation::Tie => None,
        }
    }

    /// Pre-clamp direction of bit `i`: +1, -1 or 0.
    pub fn direction(&self, i: usize) -> i8 {
        match self.winner() {
            Some(w) if self.x[i] != self.y[i] => {
                if w[i] {
                    1
                } else {
                    -1
                }
            }
            _ => 0,
        }
    }
}

/// A cGA instance with its own random stream.
#[derive(Debug, Clone)]
pub struct Cga {
    config: CgaConfig,
    freqs: FrequencyVector,
    rng: RunRng,
    t: u64,
}

impl Cga {
    pub fn new(config: CgaConfig) -> Result<Self> {
        let n = config.n;
        Self::with_frequencies(config, FrequencyVector::uniform(n))
    }

    /// Starts from an arbitrary frequency vector inside the margins.
    pub fn with_frequencies(config: CgaConfig, freqs: FrequencyVector) -> Result<Self> {
        config.validate()?;
        if freqs.len() != config.n {
            return Err(Error::DimensionMismatch {
                expected: config.n,
                actual: freqs.len(),
            });
        }
        let (lo, hi) = (config.pbar, config.upper());
        if let Some((i, &p)) = freqs.0.iter().enumerate().find(|(_, &p)| !(lo..=hi).contains(&p)) {
            return Err(Error::Config(format!(
                "frequency {p} at bit {i} lies outside [{lo}, {hi}]"
            )));
        }
        let rng = rng::stream(config.seed);
        Ok(Cga {
            config,
            freqs,
            rng,
            t: 0,
        })
    }

    pub fn config(&self) -> &CgaConfig {
        &self.config
    }

    pub fn frequencies(&self) -> &FrequencyVector {
        &self.freqs
    }

    pub fn iteration(&self) -> u64 {
        self.t
    }

    pub fn rng_mut(&mut self) -> &mut RunRng {
        &mut self.rng
    }

    pub fn sample_offspring(&mut self) -> BitString {
        let mut out = BitString::zeros(self.config.n);
        self.sample_into(&mut out);
        out
    }

    fn sample_into(&mut self, out: &mut BitString) {
        out.0.clear();
        let rng = &mut self.rng;
        out.0.extend(self.freqs.0.iter().map(|&p| rng.random::<f64>() < p));
    }

    pub fn step(&mut self, comparator: &Comparator) -> Result<StepRecord> {
        let mut record = StepRecord::empty(self.config.n);
        self.step_into(comparator, &mut record)?;
        Ok(record)
    }

    /// Like [`Cga::step`], reusing `record`'s buffers.
    pub fn step_into(&mut self, comparator: &Comparator, record: &mut StepRecord) -> Result<()> {
        self.advance(comparator, record, true)
    }

    /// Samples and compares against the current state without writing the
    /// update back or advancing the counter. `changes` holds what the
    /// update would have been.
    pub fn trial_step(&mut self, comparator: &Comparator) -> Result<StepRecord> {
        let mut record = StepRecord::empty(self.config.n);
        self.advance(comparator, &mut record, false)?;
        Ok(record)
    }

    fn advance(&mut self, comparator: &Comparator, record: &mut StepRecord, commit: bool) -> Result<()> {
        if comparator.n != self.config.n {
            return Err(Error::DimensionMismatch {
                expected: self.config.n,
                actual: comparator.n,
            });
        }
        self.sample_into(&mut record.x);
        self.sample_into(&mut record.y);
        record.iteration = self.t;
        record.optimum_sampled = record.x.is_all_ones() || record.y.is_all_ones();
        record.outcome = comparator.compare(&record.x, &record.y, &mut self.rng)?;
        instrumentation::classify_into(record, comparator.kind);

        record.changes.clear();
        let (winner, loser) = match record.outcome.relation {
            Relation::XWins => (&record.x, &record.y),
            Relation::YWins => (&record.y, &record.x),
            Relation::Tie => (&record.x, &record.x),
        };
        let step = 1.0 / self.config.k;
        let (lo, hi) = (self.config.pbar, self.config.upper());
        for i in winner.differing_positions(loser) {
            let before = self.freqs.0[i];
            let moved = if winner[i] { before + step } else { before - step };
            let after = moved.clamp(lo, hi);
            record.changes.push(FreqChange { index: i, before, after });
        }
        if commit {
            for c in &record.changes {
                self.freqs.0[c.index] = c.after;
            }
            self.t += 1;
        }
        Ok(())
    }
}

/// Terminal statistics of one run.
#[derive(Debug, Clone, PartialEq)]
pub struct RunResult {
    pub iterations_used: u64,
    pub optimum_found: bool,
    pub hit_cap: bool,
    pub lower_boundary_bits: usize,
    pub bits_below_beta: usize,
    pub final_variance: f64,
}

/// Runs the cGA until the optimum is sampled or the cap is reached.
///
/// `beta` is the drift threshold tracked by [`MetricsState`].
pub fn run(config: &CgaConfig, kind: ComparatorKind, beta: f64) -> Result<RunResult> {
    let mut cga = Cga::new(config.clone())?;
    let comparator = Comparator::new(kind, config.n);
    let mut metrics = MetricsState::new(cga.frequencies(), config.pbar, beta)?;
    let mut record = StepRecord::empty(config.n);

    let mut optimum_found = false;
    while cga.iteration() < config.iteration_cap {
        cga.step_into(&comparator, &mut record)?;
        metrics.update(&record);
        if record.optimum_sampled {
            optimum_found = true;
            break;
        }
    }
    debug_assert!(cga
        .frequencies()
        .iter()
        .all(|p| (config.pbar..=config.upper()).contains(&p)));

    let (lower_boundary_bits, bits_below_beta) = metrics.drift_summary();
    Ok(RunResult {
        iterations_used: cga.iteration(),
        optimum_found,
        hit_cap: !optimum_found,
        lower_boundary_bits,
        bits_below_beta,
        final_variance: metrics.variance(),
    })
}
