//! Fitness comparators.
//!
//! The engine only ever asks which of two offspring is fitter, so every
//! benchmark is expressed as a comparison. Dynamic BinVal is never evaluated
//! as a number: the weight 2^(n-i) overflows any machine integer at n = 300,
//! and the comparison it induces is positional anyway.
//!
//! Permutations use the rank-to-bit convention: `order[r]` is the bit that
//! receives the r-th largest weight. The bit-to-rank reading gives the same
//! law for the decisive position.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::cga::BitString;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ComparatorKind {
    /// Dynamic BinVal, decisive position drawn uniformly from the differing bits.
    DynBvFast,
    /// Dynamic BinVal with a full uniform permutation drawn every comparison.
    DynBvExact,
    OneMax,
    /// BinVal with the identity permutation: bit 0 is most significant.
    StaticBinVal,
}

impl ComparatorKind {
    pub const ALL: [ComparatorKind; 4] = [
        ComparatorKind::DynBvFast,
        ComparatorKind::DynBvExact,
        ComparatorKind::OneMax,
        ComparatorKind::StaticBinVal,
    ];

    /// CLI token.
    pub fn token(self) -> &'static str {
        match self {
            ComparatorKind::DynBvFast => "dynbv",
            ComparatorKind::DynBvExact => "dynbv-exact",
            ComparatorKind::OneMax => "onemax",
            ComparatorKind::StaticBinVal => "binval",
        }
    }

    /// `benchmark` column of the run CSV.
    pub fn benchmark_name(self) -> &'static str {
        match self {
            ComparatorKind::DynBvFast | ComparatorKind::DynBvExact => "dynbv",
            ComparatorKind::OneMax => "onemax",
            ComparatorKind::StaticBinVal => "binval",
        }
    }

    /// `mode` column of the run CSV.
    pub fn mode_name(self) -> &'static str {
        match self {
            ComparatorKind::DynBvFast => "fast",
            ComparatorKind::DynBvExact => "exact",
            ComparatorKind::OneMax | ComparatorKind::StaticBinVal => "deterministic",
        }
    }

    /// Positional comparators decide on a single bit and report it.
    pub fn is_positional(self) -> bool {
        !matches!(self, ComparatorKind::OneMax)
    }
}

impl fmt::Display for ComparatorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.token())
    }
}

impl FromStr for ComparatorKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ComparatorKind::ALL
            .into_iter()
            .find(|k| k.token() == s)
            .ok_or_else(|| {
                Error::Usage(format!(
                    "unknown benchmark {s:?} (expected dynbv, dynbv-exact, onemax or binval)"
                ))
            })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Relation {
    XWins,
    YWins,
    Tie,
}

impl Relation {
    pub fn flipped(self) -> Relation {
        match self {
            Relation::XWins => Relation::YWins,
            Relation::YWins => Relation::XWins,
            Relation::Tie => Relation::Tie,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ComparisonOutcome {
    pub relation: Relation,
    /// Zero-based position that decided the comparison. Only positional
    /// benchmarks report it, and never on a tie.
    pub decisive_index: Option<usize>,
}

impl ComparisonOutcome {
    pub const TIE: ComparisonOutcome = ComparisonOutcome {
        relation: Relation::Tie,
        decisive_index: None,
    };

    /// Outcome where the string holding a one at `index` wins.
    fn decided_at(x: &BitString, index: usize) -> ComparisonOutcome {
        let relation = if x[index] {
            Relation::XWins
        } else {
            Relation::YWins
        };
        ComparisonOutcome {
            relation,
            decisive_index: Some(index),
        }
    }

    pub fn is_tie(&self) -> bool {
        self.relation == Relation::Tie
    }
}

/// A benchmark bound to a dimension.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Comparator {
    pub kind: ComparatorKind,
    pub n: usize,
}

impl Comparator {
    pub fn new(kind: ComparatorKind, n: usize) -> Self {
        Comparator { kind, n }
    }

    pub fn compare<R: Rng + ?Sized>(
        &self,
        x: &BitString,
        y: &BitString,
        rng: &mut R,
    ) -> Result<ComparisonOutcome> {
        check_len(self.n, x)?;
        match self.kind {
            ComparatorKind::DynBvFast => compare_dynbv_fast(x, y, rng),
            ComparatorKind::DynBvExact => compare_dynbv_exact(x, y, rng),
            ComparatorKind::OneMax => compare_onemax(x, y),
            ComparatorKind::StaticBinVal => compare_static_binval(x, y),
        }
    }
}

fn check_len(expected: usize, s: &BitString) -> Result<()> {
    if s.len() == expected {
        Ok(())
    } else {
        Err(Error::DimensionMismatch {
            expected,
            actual: s.len(),
        })
    }
}

fn check_pair(x: &BitString, y: &BitString) -> Result<()> {
    check_len(x.len(), y)
}

/// Dynamic BinVal with an explicit Fisher-Yates permutation.
///
/// Always consumes a full shuffle of `n` positions, tie or not.
pub fn compare_dynbv_exact<R: Rng + ?Sized>(
    x: &BitString,
    y: &BitString,
    rng: &mut R,
) -> Result<ComparisonOutcome> {
    check_pair(x, y)?;
    let mut order: Vec<usize> = (0..x.len()).collect();
    order.shuffle(rng);
    Ok(order
        .into_iter()
        .find(|&i| x[i] != y[i])
        .map_or(ComparisonOutcome::TIE, |i| ComparisonOutcome::decided_at(x, i)))
}

/// Dynamic BinVal without materializing the permutation.
///
/// The first differing bit under a uniform permutation is uniform over the
/// differing bits, so one uniform draw over that set is enough. Consumes
/// exactly one draw when the strings differ and none when they are equal.
pub fn compare_dynbv_fast<R: Rng + ?Sized>(
    x: &BitString,
    y: &BitString,
    rng: &mut R,
) -> Result<ComparisonOutcome> {
    check_pair(x, y)?;
    let differing = x.hamming_distance(y);
    if differing == 0 {
        return Ok(ComparisonOutcome::TIE);
    }
    let pick = rng.random_range(0..differing);
    let index = x
        .differing_positions(y)
        .nth(pick)
        .expect("pick is below the number of differing positions");
    Ok(ComparisonOutcome::decided_at(x, index))
}

pub fn compare_onemax(x: &BitString, y: &BitString) -> Result<ComparisonOutcome> {
    check_pair(x, y)?;
    let relation = match x.count_ones().cmp(&y.count_ones()) {
        std::cmp::Ordering::Greater => Relation::XWins,
        std::cmp::Ordering::Less => Relation::YWins,
        std::cmp::Ordering::Equal => Relation::Tie,
    };
    Ok(ComparisonOutcome {
        relation,
        decisive_index: None,
    })
}

pub fn compare_static_binval(x: &BitString, y: &BitString) -> Result<ComparisonOutcome> {
    check_pair(x, y)?;
    Ok(x.differing_positions(y)
        .next()
        .map_or(ComparisonOutcome::TIE, |i| ComparisonOutcome::decided_at(x, i)))
}
