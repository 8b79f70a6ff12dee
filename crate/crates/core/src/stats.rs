//! Statistical checks and order statistics used by the harness and the
//! verification suites.

use statrs::distribution::{ChiSquared, ContinuousCDF};

/// Result of a chi-square test.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChiSquare {
    pub statistic: f64,
    pub dof: usize,
    pub p_value: f64,
}

fn survival(statistic: f64, dof: usize) -> f64 {
    if dof == 0 {
        return 1.0;
    }
    ChiSquared::new(dof as f64)
        .expect("positive degrees of freedom")
        .sf(statistic)
}

/// Goodness of fit of `observed` counts against category probabilities.
///
/// Categories with zero expected mass are dropped; observing anything in
/// one of them yields p = 0.
pub fn chi_square_gof(observed: &[u64], probs: &[f64]) -> ChiSquare {
    assert_eq!(observed.len(), probs.len(), "one probability per category");
    let total: u64 = observed.iter().sum();
    let mut statistic = 0.0;
    let mut cells = 0usize;
    for (&o, &p) in observed.iter().zip(probs) {
        let expected = p * total as f64;
        if expected <= 0.0 {
            if o > 0 {
                return ChiSquare {
                    statistic: f64::INFINITY,
                    dof: 0,
                    p_value: 0.0,
                };
            }
            continue;
        }
        statistic += (o as f64 - expected).powi(2) / expected;
        cells += 1;
    }
    let dof = cells.saturating_sub(1);
    ChiSquare {
        statistic,
        dof,
        p_value: survival(statistic, dof),
    }
}

/// Test that two samples of counts over the same categories come from the
/// same distribution (2 x C contingency table).
pub fn chi_square_homogeneity(a: &[u64], b: &[u64]) -> ChiSquare {
    assert_eq!(a.len(), b.len(), "samples must share categories");
    let na: u64 = a.iter().sum();
    let nb: u64 = b.iter().sum();
    let total = (na + nb) as f64;
    let mut statistic = 0.0;
    let mut cells = 0usize;
    for (&oa, &ob) in a.iter().zip(b) {
        let col = (oa + ob) as f64;
        if col == 0.0 {
            continue;
        }
        cells += 1;
        for (o, n) in [(oa, na), (ob, nb)] {
            let expected = col * n as f64 / total;
            statistic += (o as f64 - expected).powi(2) / expected;
        }
    }
    let dof = cells.saturating_sub(1);
    ChiSquare {
        statistic,
        dof,
        p_value: survival(statistic, dof),
    }
}

/// The `q`-quantile as the order statistic of rank `ceil(q * m)` (at least 1)
/// of the sorted sample. For `q = 0.5` and even `m` this is the lower middle
/// value, so integer data stays integer.
pub fn order_quantile<T: Copy + PartialOrd>(sorted: &[T], q: f64) -> Option<T> {
    if sorted.is_empty() {
        return None;
    }
    let m = sorted.len();
    let rank = ((q * m as f64).ceil() as usize).clamp(1, m);
    Some(sorted[rank - 1])
}

pub fn lower_median<T: Copy + PartialOrd>(sorted: &[T]) -> Option<T> {
    order_quantile(sorted, 0.5)
}
