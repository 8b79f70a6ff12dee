//! Exact one-step quantities of the cGA on Dynamic BinVal.
//!
//! Let `D` be the number of bits other than `i` at which the two offspring
//! differ. `D` is Poisson-binomial with success probabilities
//! `2 p_j (1 - p_j)`, and given `D = k` bit `i` outranks all `k` differing
//! bits under a uniform permutation with probability `1/(k+1)`. Summing over
//! the exact pmf of `D` gives the probability that bit `i` is in position to
//! receive the signal, from which the transition kernel follows.

use crate::error::{Error, Result};

/// Tolerance when checking that a pmf sums to one.
pub const PMF_SUM_TOL: f64 = 1e-12;

/// Distribution of a sum of independent Bernoulli variables.
#[derive(Debug, Clone, PartialEq)]
pub struct PoissonBinomial {
    params: Vec<f64>,
    pmf: Vec<f64>,
}

impl PoissonBinomial {
    /// Exact pmf by the O(m^2) convolution recurrence.
    pub fn new(params: &[f64]) -> Result<Self> {
        if let Some((index, &value)) = params
            .iter()
            .enumerate()
            .find(|(_, q)| !(0.0..=1.0).contains(*q))
        {
            return Err(Error::InvalidProbability { index, value });
        }
        let mut pmf = Vec::with_capacity(params.len() + 1);
        pmf.push(1.0);
        for &q in params {
            pmf.push(0.0);
            for k in (1..pmf.len()).rev() {
                pmf[k] = pmf[k] * (1.0 - q) + pmf[k - 1] * q;
            }
            pmf[0] *= 1.0 - q;
        }
        for v in &mut pmf {
            if *v < 0.0 {
                *v = 0.0;
            }
        }
        Ok(PoissonBinomial {
            params: params.to_vec(),
            pmf,
        })
    }

    pub fn params(&self) -> &[f64] {
        &self.params
    }

    pub fn pmf(&self) -> &[f64] {
        &self.pmf
    }

    pub fn mean(&self) -> f64 {
        self.params.iter().sum()
    }
}

/// One-step law of a single frequency before clamping.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransitionKernel {
    /// Size of a move, `1/K`.
    pub step: f64,
    pub p_up: f64,
    pub p_down: f64,
    pub p_stay: f64,
}

impl TransitionKernel {
    pub fn as_array(&self) -> [f64; 3] {
        [self.p_up, self.p_down, self.p_stay]
    }
}

fn check_index(p: &[f64], i: usize) -> Result<()> {
    if i < p.len() {
        Ok(())
    } else {
        Err(Error::IndexOutOfRange { index: i, n: p.len() })
    }
}

/// Sampling variance of every bit except `i`.
pub fn variance_excluding(p: &[f64], i: usize) -> Result<f64> {
    check_index(p, i)?;
    Ok(p.iter()
        .enumerate()
        .filter(|&(j, _)| j != i)
        .map(|(_, &q)| q * (1.0 - q))
        .sum())
}

/// Law of the number of bits other than `i` where the offspring differ.
pub fn disagreement_distribution(p: &[f64], i: usize) -> Result<PoissonBinomial> {
    check_index(p, i)?;
    let params: Vec<f64> = p
        .iter()
        .enumerate()
        .filter(|&(j, _)| j != i)
        .map(|(_, &q)| 2.0 * q * (1.0 - q))
        .collect();
    PoissonBinomial::new(&params)
}

/// Probability that every bit ranked above `i` agrees in both offspring.
///
/// Bit `i` itself need not differ; when it does, this is the probability
/// that it decides the comparison.
pub fn signal_probability(p: &[f64], i: usize) -> Result<f64> {
    let d = disagreement_distribution(p, i)?;
    Ok(d.pmf()
        .iter()
        .enumerate()
        .map(|(k, &mass)| mass / (k as f64 + 1.0))
        .sum())
}

/// Explicit lower and upper bounds on [`signal_probability`] in terms of the
/// variance `v` of the other bits:
/// `(1 - exp(-v/6)) / (3v) <= s <= 1/v + exp(-v/4)`. Meaningful for `v >= 1`.
pub fn signal_probability_bounds(v: f64) -> (f64, f64) {
    let lower = (1.0 - (-v / 6.0).exp()) / (3.0 * v);
    let upper = 1.0 / v + (-v / 4.0).exp();
    (lower, upper)
}

/// Pre-clamp kernel of frequency `i`: moves by `1/k` up, down or not at
/// all. The probabilities do not depend on `k`.
pub fn transition_kernel(p: &[f64], i: usize, k: f64) -> Result<TransitionKernel> {
    let s = signal_probability(p, i)?;
    let q = p[i] * (1.0 - p[i]);
    Ok(TransitionKernel {
        step: 1.0 / k,
        p_up: q * (1.0 + s),
        p_down: q * (1.0 - s),
        p_stay: 1.0 - 2.0 * q,
    })
}

/// Pre-clamp expected one-step change of frequency `i`, `2 p_i (1 - p_i) s / K`.
///
/// Only equals the true drift while `p_i` is at least `1/K` away from both
/// margins.
pub fn expected_drift(p: &[f64], i: usize, k: f64) -> Result<f64> {
    let kernel = transition_kernel(p, i, k)?;
    Ok((kernel.p_up - kernel.p_down) * kernel.step)
}
