use std::path::Path;
use std::str::FromStr;

use crate::benchmarks::ComparatorKind;
use crate::cga::{CgaConfig, DEFAULT_ITERATION_CAP};
use crate::error::{Error, Result};
use crate::instrumentation::DEFAULT_BETA;

use super::grid::paper_k_grid;

pub const DEFAULT_MASTER_SEED: u64 = 42;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PbarSpec {
    OneOverN,
    Explicit(f64),
}

impl PbarSpec {
    pub fn value(self, n: usize) -> f64 {
        match self {
            PbarSpec::OneOverN => 1.0 / n as f64,
            PbarSpec::Explicit(v) => v,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum KValues {
    Explicit(Vec<f64>),
    PaperGrid { min: u32, max: u32 },
}

/// A full description of a sweep. Output depends on everything here except
/// `parallelism`.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub n: usize,
    pub k_values: KValues,
    pub runs_per_cell: u32,
    pub benchmark: ComparatorKind,
    pub pbar: PbarSpec,
    pub beta: f64,
    pub iteration_cap: u64,
    pub master_seed: u64,
    pub parallelism: usize,
}

impl SweepSpec {
    /// DynBV sweep at margin 1/n with the default cap, beta and seed.
    pub fn new(n: usize, k_values: KValues, runs_per_cell: u32) -> Self {
        SweepSpec {
            n,
            k_values,
            runs_per_cell,
            benchmark: ComparatorKind::DynBvFast,
            pbar: PbarSpec::OneOverN,
            beta: DEFAULT_BETA,
            iteration_cap: DEFAULT_ITERATION_CAP,
            master_seed: DEFAULT_MASTER_SEED,
            parallelism: 1,
        }
    }

    pub fn ks(&self) -> Result<Vec<f64>> {
        let ks = match &self.k_values {
            KValues::Explicit(ks) => ks.clone(),
            KValues::PaperGrid { min, max } => {
                paper_k_grid(*min, *max)?.into_iter().map(f64::from).collect()
            }
        };
        if ks.is_empty() {
            return Err(Error::Usage("K list is empty".into()));
        }
        if let Some(bad) = ks.iter().find(|k| !(**k >= 1.0 && k.is_finite())) {
            return Err(Error::Usage(format!("every K must be >= 1, got {bad}")));
        }
        Ok(ks)
    }

    pub fn pbar_value(&self) -> f64 {
        self.pbar.value(self.n)
    }

    /// Engine config for one run; the seed is filled in per run.
    pub fn cell_config(&self, k: f64) -> CgaConfig {
        CgaConfig::new(self.n, k)
            .with_pbar(self.pbar_value())
            .with_cap(self.iteration_cap)
    }

    pub fn validate(&self) -> Result<()> {
        if self.runs_per_cell == 0 {
            return Err(Error::Usage("runs per cell must be at least 1".into()));
        }
        if self.parallelism == 0 {
            return Err(Error::Usage("parallelism must be at least 1".into()));
        }
        let ks = self.ks()?;
        self.cell_config(ks[0]).validate()?;
        let pbar = self.pbar_value();
        if !(self.beta > pbar && self.beta < 0.5) {
            return Err(Error::Config(format!(
                "beta must lie in (pbar, 1/2) = ({pbar}, 0.5), got {}",
                self.beta
            )));
        }
        Ok(())
    }

    /// Reads a `key = value` file. Unknown keys are rejected; missing keys
    /// keep the defaults of [`SweepSpec::new`] (n defaults to 300).
    ///
    /// ```text
    /// n = 300
    /// k = 10, 30, 90        # or: k_grid = 6..10000
    /// runs = 20
    /// benchmark = dynbv
    /// pbar = 1/n            # or a number
    /// beta = 0.3333
    /// cap = 200000
    /// seed = 42
    /// parallelism = 4
    /// ```
    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        text.parse()
    }
}

fn parse_num<T: FromStr>(key: &str, value: &str) -> Result<T> {
    value
        .parse()
        .map_err(|_| Error::Usage(format!("cannot parse {key} = {value:?}")))
}

impl FromStr for SweepSpec {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let mut spec = SweepSpec::new(300, KValues::Explicit(Vec::new()), 20);
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .map(|(k, v)| (k.trim(), v.trim()))
                .ok_or_else(|| Error::Usage(format!("line {}: expected key = value", lineno + 1)))?;
            match key {
                "n" => spec.n = parse_num(key, value)?,
                "k" => {
                    spec.k_values = KValues::Explicit(
                        value
                            .split(',')
                            .map(|v| parse_num(key, v.trim()))
                            .collect::<Result<_>>()?,
                    )
                }
                "k_grid" => {
                    let (lo, hi) = value
                        .split_once("..")
                        .ok_or_else(|| Error::Usage(format!("k_grid must look like 6..10000, got {value:?}")))?;
                    spec.k_values = KValues::PaperGrid {
                        min: parse_num(key, lo.trim())?,
                        max: parse_num(key, hi.trim())?,
                    };
                }
                "runs" => spec.runs_per_cell = parse_num(key, value)?,
                "benchmark" => spec.benchmark = value.parse()?,
                "pbar" => {
                    spec.pbar = if value == "1/n" {
                        PbarSpec::OneOverN
                    } else {
                        PbarSpec::Explicit(parse_num(key, value)?)
                    }
                }
                "beta" => spec.beta = parse_num(key, value)?,
                "cap" => spec.iteration_cap = parse_num(key, value)?,
                "seed" => spec.master_seed = parse_num(key, value)?,
                "parallelism" => spec.parallelism = parse_num(key, value)?,
                other => return Err(Error::Usage(format!("unknown key {other:?} in sweep spec"))),
            }
        }
        spec.validate()?;
        Ok(spec)
    }
}
