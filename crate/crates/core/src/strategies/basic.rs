use std::sync::{Arc, Mutex};

use rand::seq::IteratorRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{expect_turn, Strategy, StrategyError};
use crate::game::{GameSpec, GameState, Player};
use crate::graph::Graph;
use crate::solver::{SolveOptions, Solver};

/// Exact minimax play, lowest index among optimal moves.
///
/// Clones share one solver, so a strategy copied into many branches of a
/// search reuses the same transposition table.
#[derive(Clone)]
pub struct Optimal {
    seat: Player,
    options: SolveOptions,
    solver: Arc<Mutex<Option<Solver>>>,
}

impl Optimal {
    pub fn new(seat: Player) -> Self {
        Optimal::with_options(seat, SolveOptions::new())
    }

    pub fn with_options(seat: Player, options: SolveOptions) -> Self {
        Optimal { seat, options, solver: Arc::new(Mutex::new(None)) }
    }
}

impl Strategy for Optimal {
    fn name(&self) -> String {
        "optimal".into()
    }

    fn seat(&self) -> Player {
        self.seat
    }

    fn choose(&mut self, g: &Graph, spec: GameSpec, state: &GameState) -> Result<usize, StrategyError> {
        expect_turn("optimal", self.seat, spec, state)?;
        let mut slot = self.solver.lock().unwrap();
        if !slot.as_ref().is_some_and(|s| s.spec() == spec && s.graph() == g) {
            *slot = Some(Solver::new(g, spec, self.options.clone())?);
        }
        Ok(slot.as_mut().unwrap().best_move(state)?)
    }

    fn box_clone(&self) -> Box<dyn Strategy> {
        Box::new(self.clone())
    }
}

/// Uniformly random legal moves.
///
/// The move is a pure function of the seed and the current state, so the
/// strategy has no hidden history and replays identically.
#[derive(Clone)]
pub struct RandomMoves {
    seat: Player,
    seed: u64,
}

impl RandomMoves {
    pub fn new(seat: Player, seed: u64) -> Self {
        RandomMoves { seat, seed }
    }
}

impl Strategy for RandomMoves {
    fn name(&self) -> String {
        "random".into()
    }

    fn seat(&self) -> Player {
        self.seat
    }

    fn choose(&mut self, g: &Graph, spec: GameSpec, state: &GameState) -> Result<usize, StrategyError> {
        expect_turn("random", self.seat, spec, state)?;
        let mut seed = [0u8; 32];
        seed[..8].copy_from_slice(&self.seed.to_le_bytes());
        seed[8..16].copy_from_slice(&state.s0().bits().to_le_bytes());
        seed[16..24].copy_from_slice(&state.s1().bits().to_le_bytes());
        let mut rng = ChaCha8Rng::from_seed(seed);
        state
            .legal_moves(g)
            .iter()
            .choose(&mut rng)
            .ok_or(StrategyError::Game(crate::game::GameError::Full))
    }

    fn box_clone(&self) -> Box<dyn Strategy> {
        Box::new(self.clone())
    }
}
