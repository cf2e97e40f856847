//! Extremal search over graph collections for the open problems: how low
//! `b^A` can go, how far above `ceil(n/2)` it can reach, and how large the
//! gap between cordiality and balance values gets.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use super::{all_values, balance_values, describe, seed_stream, ExperimentError};
use crate::graph::{graph_from_code, labelled_graph_count, random_gnp, Family, Graph};
use crate::solver::SolveOptions;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HuntProblem {
    /// Smallest `b^A`.
    MinBalanceA,
    /// Largest `b^A - ceil(n/2)`.
    MaxExcess,
    /// Largest `c^A - b^A` and `c^I - b^I`.
    CordialityGap,
}

impl HuntProblem {
    pub const ALL: [HuntProblem; 3] = [HuntProblem::MinBalanceA, HuntProblem::MaxExcess, HuntProblem::CordialityGap];
}

impl fmt::Display for HuntProblem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            HuntProblem::MinBalanceA => "min-ba",
            HuntProblem::MaxExcess => "max-excess",
            HuntProblem::CordialityGap => "cordiality-gap",
        })
    }
}

impl FromStr for HuntProblem {
    type Err = ExperimentError;

    fn from_str(s: &str) -> Result<Self, ExperimentError> {
        HuntProblem::ALL
            .into_iter()
            .find(|p| p.to_string() == s)
            .ok_or_else(|| ExperimentError::Invalid(format!("unknown problem {s:?} (min-ba, max-excess, cordiality-gap)")))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HuntSource {
    /// Every labelled graph on exactly `n` vertices.
    Exhaustive(usize),
    Random { n: usize, samples: usize, seed: u64 },
    Family(Family),
}

/// Largest order accepted for [`HuntSource::Exhaustive`].
pub const MAX_EXHAUSTIVE_HUNT_ORDER: usize = 6;

impl fmt::Display for HuntSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HuntSource::Exhaustive(n) => write!(f, "exhaustive n={n}"),
            HuntSource::Random { n, samples, seed } => write!(f, "gnp n={n} samples={samples} seed={seed}"),
            HuntSource::Family(fam) => write!(f, "family {fam}"),
        }
    }
}

impl HuntSource {
    fn graphs(&self) -> Result<Vec<Graph>, ExperimentError> {
        match self {
            HuntSource::Exhaustive(n) => {
                if *n > MAX_EXHAUSTIVE_HUNT_ORDER {
                    return Err(ExperimentError::Invalid(format!(
                        "exhaustive search is limited to n <= {MAX_EXHAUSTIVE_HUNT_ORDER}"
                    )));
                }
                let count = labelled_graph_count(*n).expect("small n");
                Ok((0..count).map(|c| graph_from_code(*n, c)).collect::<Result<_, _>>()?)
            }
            HuntSource::Random { n, samples, seed } => Ok(seed_stream(*seed, 200 + *n as u64)
                .take(*samples)
                .map(|s| random_gnp(*n, s))
                .collect::<Result<_, _>>()?),
            HuntSource::Family(f) => Ok(vec![f.generate()?]),
        }
    }
}

/// One extremal observation with its witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Extreme {
    pub quantity: &'static str,
    pub value: i32,
    pub witness: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HuntReport {
    pub problem: HuntProblem,
    pub source: String,
    /// Graphs whose values were computed.
    pub searched: usize,
    /// Graphs skipped because the search budget ran out.
    pub skipped: usize,
    pub extremes: Vec<Extreme>,
}

impl HuntReport {
    pub fn partial(&self) -> bool {
        self.skipped > 0
    }

    /// Line records, one per extreme. Claims are limited to the searched set.
    pub fn records(&self) -> Vec<String> {
        self.extremes
            .iter()
            .map(|e| {
                format!(
                    "problem={}\tsource={}\tsearched={}\tskipped={}\tquantity={}\tvalue={}\twitness={}",
                    self.problem, self.source, self.searched, self.skipped, e.quantity, e.value, e.witness
                )
            })
            .collect()
    }
}

/// Quantities tracked per problem, each to be maximised (minimisation is
/// expressed by negation).
fn quantities(problem: HuntProblem) -> &'static [&'static str] {
    match problem {
        HuntProblem::MinBalanceA => &["min b^A"],
        HuntProblem::MaxExcess => &["max b^A - ceil(n/2)"],
        HuntProblem::CordialityGap => &["max c^A - b^A", "max c^I - b^I"],
    }
}

fn measure(problem: HuntProblem, g: &Graph, options: &SolveOptions) -> Result<Vec<i32>, ExperimentError> {
    Ok(match problem {
        HuntProblem::MinBalanceA => vec![-balance_values(g, options)?.0],
        HuntProblem::MaxExcess => vec![balance_values(g, options)?.0 - g.n().div_ceil(2) as i32],
        HuntProblem::CordialityGap => {
            let v = all_values(g, options)?;
            vec![v.ca - v.ba, v.ci - v.bi]
        }
    })
}

/// Searches `source` for extremal instances of `problem`. Graphs whose
/// solve exceeds the budget in `options` are counted as skipped; the first
/// graph reaching each extreme is kept as witness.
pub fn counterexample_search(
    problem: HuntProblem,
    source: &HuntSource,
    options: &SolveOptions,
) -> Result<HuntReport, ExperimentError> {
    let graphs = source.graphs()?;
    let measured: Vec<Result<Vec<i32>, ExperimentError>> =
        graphs.par_iter().map(|g| measure(problem, g, options)).collect();

    let names = quantities(problem);
    let mut best: Vec<Option<(i32, usize)>> = vec![None; names.len()];
    let (mut searched, mut skipped) = (0, 0);
    for (idx, m) in measured.into_iter().enumerate() {
        let values = match m {
            Ok(v) => v,
            Err(e) if e.is_budget() => {
                skipped += 1;
                continue;
            }
            Err(e) => return Err(e),
        };
        searched += 1;
        for (slot, v) in best.iter_mut().zip(values) {
            if slot.is_none_or(|(b, _)| v > b) {
                *slot = Some((v, idx));
            }
        }
    }
    let extremes = names
        .iter()
        .zip(best)
        .filter_map(|(&quantity, b)| {
            let (v, idx) = b?;
            let value = if problem == HuntProblem::MinBalanceA { -v } else { v };
            Some(Extreme { quantity, value, witness: describe(&graphs[idx]) })
        })
        .collect();
    Ok(HuntReport { problem, source: source.to_string(), searched, skipped, extremes })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solver::{Budget, SolveError};

    #[test]
    fn exhaustive_small_orders() {
        let o = SolveOptions::new();
        let r = counterexample_search(HuntProblem::MinBalanceA, &HuntSource::Exhaustive(4), &o).unwrap();
        assert_eq!(r.searched, 64);
        assert!(!r.partial());
        assert!(r.extremes[0].value >= -1);
        let r = counterexample_search(HuntProblem::CordialityGap, &HuntSource::Exhaustive(3), &o).unwrap();
        assert_eq!(r.extremes.len(), 2);
        assert!(r.extremes.iter().all(|e| e.value >= 0));
    }

    #[test]
    fn petersen_is_a_negative_witness() {
        let r = counterexample_search(
            HuntProblem::MinBalanceA,
            &HuntSource::Family(Family::Petersen),
            &SolveOptions::new(),
        )
        .unwrap();
        assert_eq!(r.extremes[0].value, -1);
        assert_eq!(r.records().len(), 1);
    }

    #[test]
    fn budget_skips_are_counted() {
        let mut o = SolveOptions::new();
        o.node_budget = Some(5);
        let r = counterexample_search(HuntProblem::MaxExcess, &HuntSource::Family(Family::Path(12)), &o).unwrap();
        assert!(r.partial());
        assert!(r.extremes.is_empty());
        assert!(SolveError::BudgetExceeded(Budget::Nodes(5)).is_budget());
    }

    #[test]
    fn problem_names_round_trip() {
        for p in HuntProblem::ALL {
            assert_eq!(p.to_string().parse::<HuntProblem>().unwrap(), p);
        }
        assert!("nope".parse::<HuntProblem>().is_err());
    }
}
