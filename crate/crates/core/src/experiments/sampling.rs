//! Seeded sampling of G(n, 1/2).

use rayon::prelude::*;

use super::{balance_values, seed_stream, ExperimentError};
use crate::graph::{random_gnp, Graph};
use crate::solver::SolveOptions;

#[derive(Debug, Clone, PartialEq)]
pub struct ExpectationSummary {
    pub n: usize,
    pub samples: usize,
    pub seed: u64,
    pub mean_a: f64,
    pub mean_i: f64,
    pub mean_sum: f64,
    /// Standard error of the mean of `b^A + b^I`.
    pub stderr_sum: f64,
    /// `floor(n/2)`, the value forced by the complement theorem.
    pub expected_sum: f64,
    /// The constant displayed in the source text, `floor(n/2)/2`.
    pub displayed_sum: f64,
    /// Seeds whose graph violates `b^A(G) + b^I(co-G) = floor(n/2)`.
    pub identity_failures: Vec<u64>,
    /// Seeds whose graph violates `b^A(G) <= b^I(G)` (even `n` only).
    pub order_failures: Vec<u64>,
}

impl ExpectationSummary {
    pub fn mean_within(&self, stderrs: f64) -> bool {
        (self.mean_sum - self.expected_sum).abs() <= stderrs * self.stderr_sum
    }

    pub fn pass(&self) -> bool {
        self.identity_failures.is_empty() && self.order_failures.is_empty() && self.mean_within(3.0)
    }
}

struct Sample {
    seed: u64,
    a: i32,
    i: i32,
    identity: bool,
}

/// Draws `samples` graphs from G(n, 1/2) and solves both balance games on
/// each graph and on its complement.
pub fn random_expectation(
    n: usize,
    samples: usize,
    seed: u64,
    options: &SolveOptions,
) -> Result<ExpectationSummary, ExperimentError> {
    let seeds: Vec<u64> = seed_stream(seed, 100 + n as u64).take(samples).collect();
    let half = (n / 2) as i32;
    let drawn: Vec<Result<Sample, ExperimentError>> = seeds
        .par_iter()
        .map(|&s| {
            let g: Graph = random_gnp(n, s)?;
            let (a, i) = balance_values(&g, options)?;
            let (_, co_i) = balance_values(&g.complement(), options)?;
            Ok(Sample { seed: s, a, i, identity: a + co_i == half })
        })
        .collect();
    let drawn = drawn.into_iter().collect::<Result<Vec<_>, _>>()?;

    let count = drawn.len().max(1) as f64;
    let mean = |f: &dyn Fn(&Sample) -> f64| drawn.iter().map(f).sum::<f64>() / count;
    let mean_a = mean(&|s| s.a as f64);
    let mean_i = mean(&|s| s.i as f64);
    let mean_sum = mean(&|s| (s.a + s.i) as f64);
    let var = if drawn.len() > 1 {
        drawn.iter().map(|s| ((s.a + s.i) as f64 - mean_sum).powi(2)).sum::<f64>() / (count - 1.0)
    } else {
        0.0
    };
    Ok(ExpectationSummary {
        n,
        samples: drawn.len(),
        seed,
        mean_a,
        mean_i,
        mean_sum,
        stderr_sum: (var / count).sqrt(),
        expected_sum: half as f64,
        displayed_sum: half as f64 / 2.0,
        identity_failures: drawn.iter().filter(|s| !s.identity).map(|s| s.seed).collect(),
        order_failures: if n % 2 == 0 {
            drawn.iter().filter(|s| s.a > s.i).map(|s| s.seed).collect()
        } else {
            Vec::new()
        },
    })
}
