//! Table reproduction, theorem checks, random sampling and extremal search.
//!
//! Every routine is a pure function of its parameters and seed. Work is
//! fanned out with rayon, and results are collected in instance order, so
//! output does not depend on scheduling.

mod checks;
mod hunt;
mod playouts;
mod sampling;
mod tables;

use std::fmt;
use std::time::Duration;

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::game::{GameSpec, Player, Variant};
use crate::graph::{Graph, GraphError};
use crate::solver::{SolveError, SolveOptions, Solver};
use crate::strategies::StrategyError;

pub use checks::{verify, verify_paths, CHECK_IDS, PATH_CHECK_IDS};
pub use hunt::{counterexample_search, HuntProblem, HuntReport, HuntSource};
pub use playouts::{
    cordiality_window_playouts, danger_playouts, greedy_pair_step_playouts, segment_adversary, segment_bound,
    segment_playouts, PlayoutSummary,
};
pub use sampling::{random_expectation, ExpectationSummary};
pub use tables::{path_table_csv, path_tables, PathRow, PathTable};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExperimentError {
    #[error(transparent)]
    Solve(#[from] SolveError),
    #[error(transparent)]
    Strategy(#[from] StrategyError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("unknown check {0:?}")]
    UnknownCheck(String),
    #[error("{0}")]
    Invalid(String),
}

impl ExperimentError {
    pub fn is_budget(&self) -> bool {
        match self {
            ExperimentError::Solve(e) => e.is_budget(),
            ExperimentError::Strategy(e) => e.is_budget(),
            _ => false,
        }
    }
}

/// Outcome of one check on one instance or instance family.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckReport {
    pub check_id: String,
    pub instance: String,
    pub expected: String,
    pub observed: String,
    pub pass: bool,
    pub elapsed: Duration,
}

impl CheckReport {
    /// Line record without timing, so that it is reproducible byte for byte.
    pub fn record(&self) -> String {
        format!(
            "check_id={}\tinstance={}\texpected={}\tobserved={}\tpass={}",
            self.check_id, self.instance, self.expected, self.observed, self.pass
        )
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.record())
    }
}

/// Sizes and seeds for [`verify`].
#[derive(Debug, Clone)]
pub struct VerifyParams {
    /// Every labelled graph on up to this many vertices is checked.
    pub exhaustive_n: usize,
    /// Orders at which G(n, 1/2) samples are drawn.
    pub random_orders: Vec<usize>,
    /// Samples per random order.
    pub samples: usize,
    pub seed: u64,
    /// Largest path solved for the path checks.
    pub max_path_n: usize,
    pub mnk_max_n: usize,
    /// Random M(n,k) instances per `(n, k, centre side)`.
    pub mnk_instances: usize,
    /// Largest M(n,k) order on which the pairing strategy is evaluated exactly.
    pub mnk_pairing_max_n: usize,
    /// Largest order of the base graph in the pendant-pair check.
    pub pendant_base_max_n: usize,
    pub tree_exhaustive_n: usize,
    pub tree_random_orders: Vec<usize>,
    pub tree_samples: usize,
    /// Play-outs per strategy invariant.
    pub playouts: usize,
    /// Largest random-graph order in the play-outs.
    pub playout_max_n: usize,
    /// Paths on which the segment strategy is played out.
    pub segment_orders: Vec<usize>,
    pub segment_games: usize,
    /// Paths on which the segment strategy meets the exact adversary.
    pub segment_adversary_orders: Vec<usize>,
    pub options: SolveOptions,
}

impl Default for VerifyParams {
    fn default() -> Self {
        VerifyParams {
            exhaustive_n: 5,
            random_orders: vec![7, 8],
            samples: 50,
            seed: DEFAULT_SEED,
            max_path_n: 14,
            mnk_max_n: 10,
            mnk_instances: 5,
            mnk_pairing_max_n: 8,
            pendant_base_max_n: 6,
            tree_exhaustive_n: 6,
            tree_random_orders: vec![8, 9],
            tree_samples: 50,
            playouts: 1000,
            playout_max_n: 14,
            segment_orders: vec![32, 33],
            segment_games: 100,
            segment_adversary_orders: vec![16, 17],
            options: SolveOptions::new(),
        }
    }
}

/// Seed used whenever the caller does not supply one.
pub const DEFAULT_SEED: u64 = 0x5eed_ba1a_9ce0_0001;

/// The four game values of a graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Values {
    pub ba: i32,
    pub bi: i32,
    pub ca: i32,
    pub ci: i32,
}

impl Values {
    pub fn get(&self, spec: GameSpec) -> i32 {
        match (spec.variant, spec.start) {
            (Variant::Balance, Player::Admirable) => self.ba,
            (Variant::Balance, Player::Impish) => self.bi,
            (Variant::Cordiality, Player::Admirable) => self.ca,
            (Variant::Cordiality, Player::Impish) => self.ci,
        }
    }
}

pub fn value(g: &Graph, spec: GameSpec, options: &SolveOptions) -> Result<i32, SolveError> {
    let mut s = Solver::new(g, spec, options.clone())?;
    s.value(&crate::game::GameState::new())
}

pub fn balance_values(g: &Graph, options: &SolveOptions) -> Result<(i32, i32), SolveError> {
    Ok((
        value(g, GameSpec::balance(Player::Admirable), options)?,
        value(g, GameSpec::balance(Player::Impish), options)?,
    ))
}

pub fn all_values(g: &Graph, options: &SolveOptions) -> Result<Values, SolveError> {
    let (ba, bi) = balance_values(g, options)?;
    Ok(Values {
        ba,
        bi,
        ca: value(g, GameSpec::cordiality(Player::Admirable), options)?,
        ci: value(g, GameSpec::cordiality(Player::Impish), options)?,
    })
}

/// Independent per-instance seeds derived from a master seed and a stream
/// label.
pub fn seed_stream(seed: u64, stream: u64) -> impl Iterator<Item = u64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    std::iter::repeat_with(move || rng.next_u64())
}

/// Text form of an edge list, used to identify witness graphs.
pub fn describe(g: &Graph) -> String {
    let edges: Vec<String> = g.edges().map(|(u, v)| format!("{u}-{v}")).collect();
    format!("n={} edges=[{}]", g.n(), edges.join(" "))
}
