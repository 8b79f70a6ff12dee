//! Compact genetic algorithm (cGA) on the Dynamic BinVal benchmark.
//!
//! The crate is split the same way an experiment is: [`cga`] holds the
//! state machine, [`benchmarks`] the fitness comparators, [`instrumentation`]
//! the per-run drift counters, [`oracle`] the exact one-step quantities used
//! as ground truth, and [`harness`] the seeded sweep driver that writes CSV.
//!
//! With the default `parallel` feature, sweeps fan out over a rayon pool.
//! Without it every sweep runs sequentially; output is identical either way.

pub mod benchmarks;
pub mod cga;
pub mod error;
pub mod harness;
pub mod instrumentation;
pub mod oracle;
pub mod rng;
pub mod stats;

pub use benchmarks::{Comparator, ComparatorKind, ComparisonOutcome, Relation};
pub use cga::{run, BitString, Cga, CgaConfig, FreqChange, FrequencyVector, RunResult, StepRecord};
pub use error::{Error, Result};
pub use instrumentation::{MetricsState, StepKind};
