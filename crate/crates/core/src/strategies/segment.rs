//! Block-wise play on long paths.
//!
//! The path is cut into consecutive blocks of `block` vertices plus a
//! remainder block at the end. The strategy answers every opponent move
//! inside the block where it was made, playing optimally on that block as
//! if it were an isolated path. Only the edges joining neighbouring blocks
//! escape its control, which costs at most one point per joint.

use std::sync::{Arc, Mutex};

use super::{expect_turn, Strategy, StrategyError};
use crate::bitset::VertexSet;
use crate::game::{GameSpec, GameState, Player, Variant};
use crate::graph::{path, Graph};
use crate::solver::{reversal, SolveOptions, Solver};

/// Second-seat segment strategy on `P_n` in the A-start balance game.
///
/// * Impish seat, `n` even: every block is an A-start subgame in which
///   Impish answers; final score at least `2 * floor(n / block) + 1` when
///   `block = 16`.
/// * Admirable seat, `n` odd: Admirable opens in the (odd) remainder block
///   and answers inside the full blocks, which are I-start subgames; final
///   score at most `4 * ceil(n / block)` when `block = 16`.
#[derive(Clone)]
pub struct SegmentPath {
    n: usize,
    block: usize,
    seat: Player,
    // Block solvers by (length, start); shared between clones.
    solvers: Arc<Mutex<Vec<((usize, Player), Solver)>>>,
}

impl SegmentPath {
    pub fn new(n: usize, block: usize, seat: Player, spec: GameSpec) -> Result<Self, StrategyError> {
        if block == 0 || block % 2 == 1 {
            return Err(StrategyError::Unsupported(format!("block length {block} must be positive and even")));
        }
        if spec != GameSpec::balance(Player::Admirable) {
            return Err(StrategyError::Unsupported(format!(
                "segment strategy is defined for the balance/A-start game, not {spec}"
            )));
        }
        let parity_ok = match seat {
            Player::Impish => n % 2 == 0,
            Player::Admirable => n % 2 == 1,
        };
        if !parity_ok {
            return Err(StrategyError::Unsupported(format!(
                "segment strategy for {seat} needs {} n, got {n}",
                if seat == Player::Impish { "even" } else { "odd" }
            )));
        }
        Ok(SegmentPath { n, block, seat, solvers: Arc::new(Mutex::new(Vec::new())) })
    }

    /// Blocks as `(first vertex, length)`.
    pub fn blocks(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<_> = (0..self.n / self.block).map(|i| (i * self.block, self.block)).collect();
        let rest = self.n % self.block;
        if rest > 0 {
            out.push((self.n - rest, rest));
        }
        out
    }

    /// Who starts inside a block of `len` vertices.
    fn block_start(&self, len: usize) -> Player {
        match self.seat {
            Player::Impish => Player::Admirable,
            // Only the odd remainder block is opened by Admirable.
            Player::Admirable if len % 2 == 1 => Player::Admirable,
            Player::Admirable => Player::Impish,
        }
    }

    fn block_move(&self, len: usize, start: Player, sub: &GameState) -> Result<usize, StrategyError> {
        let mut solvers = self.solvers.lock().unwrap();
        let pos = match solvers.iter().position(|(k, _)| *k == (len, start)) {
            Some(p) => p,
            None => {
                let g = path(len).expect("block length is positive");
                let options = SolveOptions::new().with_symmetries(vec![reversal(len)]);
                solvers.push(((len, start), Solver::new(&g, GameSpec::new(Variant::Balance, start), options)?));
                solvers.len() - 1
            }
        };
        Ok(solvers[pos].1.best_move(sub)?)
    }
}

fn restrict(set: VertexSet, first: usize, len: usize) -> VertexSet {
    let mask = if len == 64 { u64::MAX } else { (1u64 << len) - 1 };
    VertexSet((set.bits() >> first) & mask)
}

impl Strategy for SegmentPath {
    fn name(&self) -> String {
        format!("segment{}", self.block)
    }

    fn seat(&self) -> Player {
        self.seat
    }

    fn choose(&mut self, g: &Graph, spec: GameSpec, state: &GameState) -> Result<usize, StrategyError> {
        expect_turn(&self.name(), self.seat, spec, state)?;
        if g.n() != self.n {
            return Err(StrategyError::Unsupported(format!(
                "segment strategy built for P_{}, graph has {} vertices",
                self.n,
                g.n()
            )));
        }
        for (first, len) in self.blocks() {
            let start = self.block_start(len);
            let s0 = restrict(state.s0(), first, len);
            let s1 = restrict(state.s1(), first, len);
            let filled = s0.len() + s1.len();
            if filled == len {
                continue;
            }
            // Our turn in this block's own alternation.
            if (filled % 2 == 0) != (start == self.seat) {
                continue;
            }
            let block_graph = path(len).expect("block length is positive");
            let sub = GameState::from_sets(&block_graph, s0, s1)?;
            return Ok(first + self.block_move(len, start, &sub)?);
        }
        // Unreachable from states this strategy produces itself.
        state.legal_moves(g).first().ok_or(StrategyError::Game(crate::game::GameError::Full))
    }

    fn box_clone(&self) -> Box<dyn Strategy> {
        Box::new(self.clone())
    }
}
