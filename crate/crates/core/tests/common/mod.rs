//! Brute-force references shared by the integration suites. Nothing here
//! touches the Poisson-binomial code path.

#![allow(dead_code)]

use itertools::Itertools;

/// Probability of the offspring `bits` (bit j set in the mask) under `p`.
fn string_probability(p: &[f64], mask: u32) -> f64 {
    p.iter()
        .enumerate()
        .map(|(j, &q)| if mask >> j & 1 == 1 { q } else { 1.0 - q })
        .product()
}

/// Exhaustive one-step statistics of bit `i` for n <= 8: enumerates both
/// offspring and every permutation (rank -> bit).
pub struct BruteForce {
    /// Probability that every bit ranked above `i` agrees.
    pub signal: f64,
    pub p_up: f64,
    pub p_down: f64,
    pub p_stay: f64,
}

pub fn brute_force(p: &[f64], i: usize) -> BruteForce {
    let n = p.len();
    assert!(n <= 8);
    let perms: Vec<Vec<usize>> = (0..n).permutations(n).collect();
    let per_perm = 1.0 / perms.len() as f64;
    let (mut signal, mut up, mut down) = (0.0, 0.0, 0.0);
    for x in 0..1u32 << n {
        for y in 0..1u32 << n {
            let weight = string_probability(p, x) * string_probability(p, y) * per_perm;
            let diff = x ^ y;
            for order in &perms {
                let rank_i = order.iter().position(|&b| b == i).unwrap();
                if order[..rank_i].iter().all(|&b| diff >> b & 1 == 0) {
                    signal += weight;
                }
                if let Some(&first) = order.iter().find(|&&b| diff >> b & 1 == 1) {
                    let winner = if x >> first & 1 == 1 { x } else { y };
                    if diff >> i & 1 == 1 {
                        if winner >> i & 1 == 1 {
                            up += weight;
                        } else {
                            down += weight;
                        }
                    }
                }
            }
        }
    }
    BruteForce {
        signal,
        p_up: up,
        p_down: down,
        p_stay: 1.0 - up - down,
    }
}

/// All vectors in `values^n`.
pub fn grid(values: &[f64], n: usize) -> Vec<Vec<f64>> {
    (0..n)
        .map(|_| values.iter().copied())
        .multi_cartesian_product()
        .collect()
}
