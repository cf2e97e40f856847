//! Game mechanics shared by both variants.
//!
//! Admirable labels her vertices 0 and Impish labels his 1. An edge whose
//! endpoints carry different labels is unbalanced and counts +1, an edge with
//! equal labels counts -1, and edges touching an unlabeled vertex count 0.
//! The balance game pays the final score; the cordiality game pays its
//! absolute value. Admirable minimises, Impish maximises.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::bitset::VertexSet;
use crate::graph::Graph;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Player {
    /// Labels 0, minimises.
    Admirable,
    /// Labels 1, maximises.
    Impish,
}

impl Player {
    #[inline]
    pub fn other(self) -> Player {
        match self {
            Player::Admirable => Player::Impish,
            Player::Impish => Player::Admirable,
        }
    }

    pub fn letter(self) -> char {
        match self {
            Player::Admirable => 'A',
            Player::Impish => 'I',
        }
    }
}

impl fmt::Display for Player {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

impl FromStr for Player {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "A" | "a" | "admirable" => Ok(Player::Admirable),
            "I" | "i" | "impish" => Ok(Player::Impish),
            _ => Err(format!("unknown player {s:?} (expected A or I)")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Variant {
    Balance,
    Cordiality,
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Variant::Balance => "balance",
            Variant::Cordiality => "cordiality",
        })
    }
}

impl FromStr for Variant {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "balance" => Ok(Variant::Balance),
            "cordiality" => Ok(Variant::Cordiality),
            _ => Err(format!("unknown variant {s:?} (expected balance or cordiality)")),
        }
    }
}

/// Which payoff is played and who moves first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GameSpec {
    pub variant: Variant,
    pub start: Player,
}

impl GameSpec {
    pub const fn new(variant: Variant, start: Player) -> Self {
        GameSpec { variant, start }
    }

    pub const fn balance(start: Player) -> Self {
        GameSpec::new(Variant::Balance, start)
    }

    pub const fn cordiality(start: Player) -> Self {
        GameSpec::new(Variant::Cordiality, start)
    }

    /// Same variant, other player first.
    pub fn flipped(self) -> Self {
        GameSpec {
            variant: self.variant,
            start: self.start.other(),
        }
    }

    /// The four combinations, in a fixed order.
    pub const ALL: [GameSpec; 4] = [
        GameSpec::balance(Player::Admirable),
        GameSpec::balance(Player::Impish),
        GameSpec::cordiality(Player::Admirable),
        GameSpec::cordiality(Player::Impish),
    ];
}

impl fmt::Display for GameSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}-start", self.variant, self.start)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GameError {
    #[error("vertex {0} is already labeled")]
    AlreadyLabeled(usize),
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    OutOfRange { vertex: usize, n: usize },
    #[error("label sets overlap")]
    Overlap,
    #[error("state with |S0|={s0} and |S1|={s1} cannot arise in a {start}-start game")]
    InconsistentTurn { s0: usize, s1: usize, start: Player },
    #[error("game is not over")]
    NotFull,
    #[error("game is already over")]
    Full,
    #[error("it is {expected}'s turn, not {actual}'s")]
    WrongTurn { expected: Player, actual: Player },
}

/// Score from scratch: edges between the two label classes minus edges
/// inside either class.
pub fn score(g: &Graph, s0: VertexSet, s1: VertexSet) -> i32 {
    let between = g.edges_between(s0, s1) as i32;
    let within = (g.edges_within(s0) + g.edges_within(s1)) as i32;
    between - within
}

/// Labeled-neighbour imbalance `|N(v) ∩ S0| - |N(v) ∩ S1|`; the score drops
/// by this amount if Admirable takes `v` and rises by it if Impish does.
#[inline]
pub fn vertex_score_raw(g: &Graph, v: usize, s0: VertexSet, s1: VertexSet) -> i32 {
    let nb = g.neighbors(v);
    (nb & s0).len() as i32 - (nb & s1).len() as i32
}

/// A pair of disjoint label sets with the score cached.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct GameState {
    s0: VertexSet,
    s1: VertexSet,
    score: i32,
}

impl GameState {
    pub fn new() -> Self {
        GameState::default()
    }

    pub fn from_sets(g: &Graph, s0: VertexSet, s1: VertexSet) -> Result<Self, GameError> {
        if !(s0 & s1).is_empty() {
            return Err(GameError::Overlap);
        }
        if let Some(v) = ((s0 | s1) - g.vertices()).first() {
            return Err(GameError::OutOfRange { vertex: v, n: g.n() });
        }
        Ok(GameState {
            s0,
            s1,
            score: score(g, s0, s1),
        })
    }

    #[inline]
    pub fn s0(&self) -> VertexSet {
        self.s0
    }

    #[inline]
    pub fn s1(&self) -> VertexSet {
        self.s1
    }

    #[inline]
    pub fn labeled(&self) -> VertexSet {
        self.s0 | self.s1
    }

    /// Cached score.
    #[inline]
    pub fn score(&self) -> i32 {
        self.score
    }

    #[inline]
    pub fn moves_played(&self) -> usize {
        self.labeled().len()
    }

    /// The set a player's vertices live in.
    #[inline]
    pub fn set_of(&self, p: Player) -> VertexSet {
        match p {
            Player::Admirable => self.s0,
            Player::Impish => self.s1,
        }
    }

    #[inline]
    pub fn is_full(&self, g: &Graph) -> bool {
        self.labeled() == g.vertices()
    }

    /// `(S1, S0)`; the score is symmetric so the cache carries over.
    #[inline]
    pub fn swapped(&self) -> GameState {
        GameState {
            s0: self.s1,
            s1: self.s0,
            score: self.score,
        }
    }

    pub fn vertex_score(&self, g: &Graph, v: usize) -> Result<i32, GameError> {
        self.check_unlabeled(g, v)?;
        Ok(vertex_score_raw(g, v, self.s0, self.s1))
    }

    fn check_unlabeled(&self, g: &Graph, v: usize) -> Result<(), GameError> {
        if v >= g.n() {
            return Err(GameError::OutOfRange { vertex: v, n: g.n() });
        }
        if self.labeled().contains(v) {
            return Err(GameError::AlreadyLabeled(v));
        }
        Ok(())
    }

    /// The state after `player` labels `v`, with the score updated incrementally.
    pub fn apply_move(&self, g: &Graph, player: Player, v: usize) -> Result<GameState, GameError> {
        self.check_unlabeled(g, v)?;
        Ok(self.play_unchecked(g, player, v))
    }

    /// [`GameState::apply_move`] without the legality check.
    #[inline]
    pub fn play_unchecked(&self, g: &Graph, player: Player, v: usize) -> GameState {
        let delta = vertex_score_raw(g, v, self.s0, self.s1);
        match player {
            Player::Admirable => GameState {
                s0: self.s0.with(v),
                s1: self.s1,
                score: self.score - delta,
            },
            Player::Impish => GameState {
                s0: self.s0,
                s1: self.s1.with(v),
                score: self.score + delta,
            },
        }
    }

    /// Whose turn it is, derived from the set sizes alone.
    pub fn turn(&self, spec: GameSpec) -> Result<Player, GameError> {
        let (a, i) = (self.s0.len(), self.s1.len());
        let (first, second) = match spec.start {
            Player::Admirable => (a, i),
            Player::Impish => (i, a),
        };
        if first == second {
            Ok(spec.start)
        } else if first == second + 1 {
            Ok(spec.start.other())
        } else {
            Err(GameError::InconsistentTurn {
                s0: a,
                s1: i,
                start: spec.start,
            })
        }
    }

    pub fn legal_moves(&self, g: &Graph) -> VertexSet {
        g.vertices() - self.labeled()
    }

    pub fn leaf_payoff(&self, spec: GameSpec, g: &Graph) -> Result<i32, GameError> {
        if !self.is_full(g) {
            return Err(GameError::NotFull);
        }
        Ok(payoff(spec.variant, self.score))
    }
}

/// Payoff of a final score under `variant`.
#[inline]
pub fn payoff(variant: Variant, score: i32) -> i32 {
    match variant {
        Variant::Balance => score,
        Variant::Cordiality => score.abs(),
    }
}
