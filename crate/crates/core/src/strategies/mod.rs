//! Move rules for one seat, strategy transformers, play-outs and the exact
//! worst-case evaluation of a fixed strategy.
//!
//! A strategy is driven through two calls: [`Strategy::choose`] asks for a
//! move when it is the strategy's turn, and [`Strategy::observe`] reports
//! every move actually played, by either side. Stateless rules ignore
//! `observe`; the imagination transformers use it to keep their imagined
//! game in step with the real one.

mod basic;
mod greedy;
mod pairing;
mod segment;
mod transform;

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

use crate::bitset::VertexSet;
use crate::game::{GameError, GameSpec, GameState, Player, Variant};
use crate::graph::Graph;
use crate::solver::SolveError;

pub use basic::{Optimal, RandomMoves};
pub use greedy::{CordialityGreedy, DangerAccount, DangerImpish, GreedyAdmirable};
pub use pairing::Pairing;
pub use segment::SegmentPath;
pub use transform::{ImagineDeleted, ImagineStart, MirrorComplement};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StrategyError {
    #[error("{strategy} plays {seat}, but it is {turn}'s turn")]
    WrongTurn { strategy: String, seat: Player, turn: Player },
    #[error("{strategy} is defined for the {expected} game only")]
    WrongVariant { strategy: String, expected: Variant },
    #[error("{strategy} returned {vertex}, which is not an unlabeled vertex")]
    IllegalMove { strategy: String, vertex: usize },
    #[error("{0}")]
    Unsupported(String),
    #[error("unknown strategy {0:?}")]
    UnknownName(String),
    #[error(transparent)]
    Solve(#[from] SolveError),
    #[error(transparent)]
    Game(#[from] GameError),
}

impl StrategyError {
    pub fn is_budget(&self) -> bool {
        matches!(self, StrategyError::Solve(e) if e.is_budget())
    }
}

pub trait Strategy: Send {
    fn name(&self) -> String;

    /// The seat this strategy plays.
    fn seat(&self) -> Player;

    /// An unlabeled vertex to play from `state`, where it is this
    /// strategy's turn.
    fn choose(&mut self, g: &Graph, spec: GameSpec, state: &GameState) -> Result<usize, StrategyError>;

    /// Called after every move of the game, including this strategy's own.
    fn observe(&mut self, _g: &Graph, _spec: GameSpec, _before: &GameState, _player: Player, _v: usize) {}

    /// Summary of internal bookkeeping. Two instances with equal
    /// fingerprints behave identically from equal states.
    fn fingerprint(&self) -> u64 {
        0
    }

    fn box_clone(&self) -> Box<dyn Strategy>;
}

impl Clone for Box<dyn Strategy> {
    fn clone(&self) -> Self {
        self.box_clone()
    }
}

impl fmt::Debug for dyn Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{}]", self.name(), self.seat())
    }
}

/// Checks that it is `seat`'s turn.
fn expect_turn(name: &str, seat: Player, spec: GameSpec, state: &GameState) -> Result<(), StrategyError> {
    let turn = state.turn(spec)?;
    if turn != seat {
        return Err(StrategyError::WrongTurn { strategy: name.to_string(), seat, turn });
    }
    Ok(())
}

/// Lowest-index element of `set` maximising `key`.
fn argmax_lowest<K: Ord>(set: VertexSet, mut key: impl FnMut(usize) -> K) -> Option<usize> {
    let mut best: Option<(K, usize)> = None;
    for v in set {
        let k = key(v);
        if best.as_ref().is_none_or(|(bk, _)| k > *bk) {
            best = Some((k, v));
        }
    }
    best.map(|(_, v)| v)
}

/// Builds a strategy from its catalogue name for `seat` on the given game.
///
/// Names: `optimal`, `random`, `greedy`, `danger`, `cgreedy`, `pairing`,
/// `segment16`, `mirror(<inner>)`, `imagine(<inner>)`. The transformers
/// change the game the inner strategy is built for: `mirror` builds the
/// inner strategy for the other seat on the flipped-start game on the
/// complement, and `imagine` builds it for the same seat on the
/// flipped-start game. `seed` is used by `random`.
pub fn from_name(name: &str, g: &Graph, spec: GameSpec, seat: Player, seed: u64) -> Result<Box<dyn Strategy>, StrategyError> {
    let name = name.trim();
    if let Some(inner) = strip_call(name, "mirror") {
        let inner = from_name(inner, &g.complement(), spec.flipped(), seat.other(), seed)?;
        return Ok(Box::new(MirrorComplement::new(inner)));
    }
    if let Some(inner) = strip_call(name, "imagine") {
        let inner = from_name(inner, g, spec.flipped(), seat, seed)?;
        return Ok(Box::new(ImagineStart::new(inner)));
    }
    let only = |want: Player| {
        if seat == want {
            Ok(())
        } else {
            Err(StrategyError::Unsupported(format!("{name} plays {want} only")))
        }
    };
    Ok(match name {
        "optimal" => Box::new(Optimal::new(seat)),
        "random" => Box::new(RandomMoves::new(seat, seed)),
        "greedy" => {
            only(Player::Admirable)?;
            Box::new(GreedyAdmirable)
        }
        "danger" => {
            only(Player::Impish)?;
            Box::new(DangerImpish)
        }
        "cgreedy" => {
            only(Player::Admirable)?;
            Box::new(CordialityGreedy)
        }
        "pairing" => Box::new(Pairing::new(seat, g.n())),
        "segment16" => Box::new(SegmentPath::new(g.n(), 16, seat, spec)?),
        _ => return Err(StrategyError::UnknownName(name.to_string())),
    })
}

fn strip_call<'a>(s: &'a str, f: &str) -> Option<&'a str> {
    s.strip_prefix(f)?.trim_start().strip_prefix('(')?.strip_suffix(')')
}

/// Outcome of one play-out.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlayRecord {
    pub state: GameState,
    pub payoff: i32,
    pub moves: Vec<(Player, usize)>,
}

/// Plays a full game from the empty state.
pub fn play_game(
    g: &Graph,
    spec: GameSpec,
    admirable: &mut dyn Strategy,
    impish: &mut dyn Strategy,
) -> Result<PlayRecord, StrategyError> {
    play_game_with(g, spec, admirable, impish, |_, _, _, _| {})
}

/// [`play_game`] with a hook called after every move as
/// `(state before, mover, vertex, state after)`.
pub fn play_game_with(
    g: &Graph,
    spec: GameSpec,
    admirable: &mut dyn Strategy,
    impish: &mut dyn Strategy,
    mut hook: impl FnMut(&GameState, Player, usize, &GameState),
) -> Result<PlayRecord, StrategyError> {
    for (s, want) in [(&*admirable, Player::Admirable), (&*impish, Player::Impish)] {
        if s.seat() != want {
            return Err(StrategyError::Unsupported(format!(
                "{} plays {}, but was seated as {want}",
                s.name(),
                s.seat()
            )));
        }
    }
    let mut state = GameState::new();
    let mut moves = Vec::with_capacity(g.n());
    while !state.is_full(g) {
        let mover = state.turn(spec)?;
        let strat: &mut dyn Strategy = match mover {
            Player::Admirable => &mut *admirable,
            Player::Impish => &mut *impish,
        };
        let v = strat.choose(g, spec, &state)?;
        if v >= g.n() || state.labeled().contains(v) {
            return Err(StrategyError::IllegalMove { strategy: strat.name(), vertex: v });
        }
        let next = state.play_unchecked(g, mover, v);
        admirable.observe(g, spec, &state, mover, v);
        impish.observe(g, spec, &state, mover, v);
        hook(&state, mover, v, &next);
        moves.push((mover, v));
        state = next;
    }
    Ok(PlayRecord { payoff: state.leaf_payoff(spec, g)?, state, moves })
}

/// Exact worst-case payoff of `fixed` against an opponent who searches every
/// reply: the largest payoff Impish can force against an Admirable-seat
/// strategy, or the smallest Admirable can force against an Impish-seat one.
pub fn evaluate_guarantee(g: &Graph, spec: GameSpec, fixed: &dyn Strategy) -> Result<i32, StrategyError> {
    evaluate_guarantee_budgeted(g, spec, fixed, None)
}

/// [`evaluate_guarantee`] with a cap on the number of expanded positions.
pub fn evaluate_guarantee_budgeted(
    g: &Graph,
    spec: GameSpec,
    fixed: &dyn Strategy,
    node_budget: Option<u64>,
) -> Result<i32, StrategyError> {
    let mut ev = Evaluator {
        g,
        spec,
        seat: fixed.seat(),
        memo: HashMap::new(),
        nodes: 0,
        node_budget,
    };
    ev.eval(GameState::new(), fixed.box_clone())
}

struct Evaluator<'a> {
    g: &'a Graph,
    spec: GameSpec,
    seat: Player,
    memo: HashMap<(VertexSet, VertexSet, u64), i32>,
    nodes: u64,
    node_budget: Option<u64>,
}

impl Evaluator<'_> {
    fn eval(&mut self, state: GameState, mut strat: Box<dyn Strategy>) -> Result<i32, StrategyError> {
        if state.is_full(self.g) {
            return Ok(state.leaf_payoff(self.spec, self.g)?);
        }
        let key = (state.s0(), state.s1(), strat.fingerprint());
        if let Some(&v) = self.memo.get(&key) {
            return Ok(v);
        }
        self.nodes += 1;
        if let Some(limit) = self.node_budget {
            if self.nodes > limit {
                return Err(SolveError::BudgetExceeded(crate::solver::Budget::Nodes(limit)).into());
            }
        }
        let mover = state.turn(self.spec)?;
        let value = if mover == self.seat {
            let v = strat.choose(self.g, self.spec, &state)?;
            if v >= self.g.n() || state.labeled().contains(v) {
                return Err(StrategyError::IllegalMove { strategy: strat.name(), vertex: v });
            }
            strat.observe(self.g, self.spec, &state, mover, v);
            self.eval(state.play_unchecked(self.g, mover, v), strat)?
        } else {
            let mut best: Option<i32> = None;
            for v in state.legal_moves(self.g) {
                let mut s = strat.box_clone();
                s.observe(self.g, self.spec, &state, mover, v);
                let r = self.eval(state.play_unchecked(self.g, mover, v), s)?;
                best = Some(match (best, mover) {
                    (None, _) => r,
                    (Some(b), Player::Admirable) => b.min(r),
                    (Some(b), Player::Impish) => b.max(r),
                });
            }
            best.expect("a non-full state has a legal move")
        };
        self.memo.insert(key, value);
        Ok(value)
    }
}
