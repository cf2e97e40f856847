//! Strategy transformers: playing on the complement with the label sets
//! swapped, and playing a strategy for a slightly different game by keeping
//! an imagined game alongside the real one.

use std::collections::hash_map::DefaultHasher;
use std::hash::{Hash, Hasher};

use super::{Strategy, StrategyError};
use crate::game::{GameSpec, GameState, Player};
use crate::graph::Graph;

fn lowest_free(g: &Graph, state: &GameState) -> Result<usize, StrategyError> {
    state.legal_moves(g).first().ok_or(StrategyError::Game(crate::game::GameError::Full))
}

/// Plays `inner` with the two label sets swapped on the complement graph.
///
/// If `inner` plays seat `p` in a game with spec `s` on `G`, the mirror
/// plays seat `p.other()` in `s.flipped()` on the complement of `G`. Final
/// states of the two games are then related by
/// `score_H(S0, S1) = floor(n/2) - score_G(S1, S0)`.
#[derive(Clone)]
pub struct MirrorComplement {
    inner: Box<dyn Strategy>,
    // (graph we are handed, its complement)
    cache: Option<(Graph, Graph)>,
}

impl MirrorComplement {
    pub fn new(inner: Box<dyn Strategy>) -> Self {
        MirrorComplement { inner, cache: None }
    }

    fn complement_of(&mut self, g: &Graph) -> Graph {
        if !self.cache.as_ref().is_some_and(|(h, _)| h == g) {
            self.cache = Some((g.clone(), g.complement()));
        }
        self.cache.as_ref().unwrap().1.clone()
    }
}

fn mirrored(h: &Graph, state: &GameState) -> GameState {
    GameState::from_sets(h, state.s1(), state.s0()).expect("label sets of a real state are disjoint")
}

impl Strategy for MirrorComplement {
    fn name(&self) -> String {
        format!("mirror({})", self.inner.name())
    }

    fn seat(&self) -> Player {
        self.inner.seat().other()
    }

    fn choose(&mut self, g: &Graph, spec: GameSpec, state: &GameState) -> Result<usize, StrategyError> {
        let h = self.complement_of(g);
        self.inner.choose(&h, spec.flipped(), &mirrored(&h, state))
    }

    fn observe(&mut self, g: &Graph, spec: GameSpec, before: &GameState, player: Player, v: usize) {
        let h = self.complement_of(g);
        self.inner.observe(&h, spec.flipped(), &mirrored(&h, before), player.other(), v);
    }

    fn fingerprint(&self) -> u64 {
        self.inner.fingerprint()
    }

    fn box_clone(&self) -> Box<dyn Strategy> {
        Box::new(self.clone())
    }
}

/// Plays `inner`, a strategy for the same seat in the game with the other
/// starting player, by imagining one extra move.
///
/// If `inner`'s seat moves first in `inner`'s game, the imagined game starts
/// with `inner`'s own opening move `u`; otherwise it starts with the
/// opponent taking vertex 0. Whenever the opponent really takes a vertex that
/// is already labeled in the imagined game, the imagined game records the
/// lowest vertex it still has free instead. Once the imagined game is full,
/// the real game is finished with the lowest free vertex.
#[derive(Clone)]
pub struct ImagineStart {
    inner: Box<dyn Strategy>,
    imagined: Option<GameState>,
    last: Option<(usize, usize)>,
}

impl ImagineStart {
    pub fn new(inner: Box<dyn Strategy>) -> Self {
        ImagineStart { inner, imagined: None, last: None }
    }

    fn ensure_started(&mut self, g: &Graph, spec: GameSpec) -> Result<GameState, StrategyError> {
        if let Some(st) = self.imagined {
            return Ok(st);
        }
        let inner_spec = spec.flipped();
        let seat = self.inner.seat();
        let empty = GameState::new();
        let (mover, u) = if inner_spec.start == seat {
            (seat, self.inner.choose(g, inner_spec, &empty)?)
        } else {
            if g.n() == 0 {
                return Ok(empty);
            }
            (seat.other(), 0)
        };
        self.inner.observe(g, inner_spec, &empty, mover, u);
        let st = empty.play_unchecked(g, mover, u);
        self.imagined = Some(st);
        Ok(st)
    }

    /// The imagined game as it currently stands.
    pub fn imagined(&self) -> Option<GameState> {
        self.imagined
    }
}

impl Strategy for ImagineStart {
    fn name(&self) -> String {
        format!("imagine({})", self.inner.name())
    }

    fn seat(&self) -> Player {
        self.inner.seat()
    }

    fn choose(&mut self, g: &Graph, spec: GameSpec, state: &GameState) -> Result<usize, StrategyError> {
        super::expect_turn(&self.name(), self.seat(), spec, state)?;
        let imagined = self.ensure_started(g, spec)?;
        self.last = None;
        if imagined.is_full(g) {
            return lowest_free(g, state);
        }
        let y = self.inner.choose(g, spec.flipped(), &imagined)?;
        let real = if state.labeled().contains(y) { lowest_free(g, state)? } else { y };
        self.last = Some((real, y));
        Ok(real)
    }

    fn observe(&mut self, g: &Graph, spec: GameSpec, _before: &GameState, player: Player, v: usize) {
        let Ok(imagined) = self.ensure_started(g, spec) else {
            return;
        };
        let last = self.last.take();
        let y = match last {
            Some((real, y)) if player == self.seat() && real == v => Some(y),
            _ if !imagined.labeled().contains(v) => Some(v),
            _ => imagined.legal_moves(g).first(),
        };
        if let Some(y) = y {
            self.inner.observe(g, spec.flipped(), &imagined, player, y);
            self.imagined = Some(imagined.play_unchecked(g, player, y));
        }
    }

    fn fingerprint(&self) -> u64 {
        let mut h = DefaultHasher::new();
        self.imagined.map(|s| (s.s0(), s.s1())).hash(&mut h);
        self.inner.fingerprint().hash(&mut h);
        h.finish()
    }

    fn box_clone(&self) -> Box<dyn Strategy> {
        Box::new(self.clone())
    }
}

/// Plays `inner`, a strategy for the starting seat on `G - v`, as the second
/// player on `G`.
///
/// The opponent's opening move `u` is ignored. If the opponent later takes
/// `v`, the imagined game records `u` for them instead. If `inner` asks for
/// `u` while that substitution is still pending, `v` is played for real.
#[derive(Clone)]
pub struct ImagineDeleted {
    inner: Box<dyn Strategy>,
    v: usize,
    // (graph we are handed, G - v, original index of each vertex of G - v)
    cache: Option<(Graph, Graph, Vec<usize>)>,
    opened: bool,
    pending: Option<usize>,
    imagined: GameState,
    last: Option<(usize, usize)>,
}

impl ImagineDeleted {
    pub fn new(inner: Box<dyn Strategy>, v: usize) -> Self {
        ImagineDeleted {
            inner,
            v,
            cache: None,
            opened: false,
            pending: None,
            imagined: GameState::new(),
            last: None,
        }
    }

    fn deleted(&mut self, g: &Graph) -> (Graph, Vec<usize>) {
        if !self.cache.as_ref().is_some_and(|(h, _, _)| h == g) {
            let (sub, kept) = g.without_vertices(crate::VertexSet::singleton(self.v));
            self.cache = Some((g.clone(), sub, kept));
        }
        let (_, sub, kept) = self.cache.as_ref().unwrap();
        (sub.clone(), kept.clone())
    }

    fn inner_spec(&self, spec: GameSpec) -> GameSpec {
        GameSpec::new(spec.variant, self.inner.seat())
    }

    /// Index of `x` in `G - v`.
    fn sub_index(&self, x: usize) -> usize {
        debug_assert_ne!(x, self.v);
        if x > self.v {
            x - 1
        } else {
            x
        }
    }
}

impl Strategy for ImagineDeleted {
    fn name(&self) -> String {
        format!("imagine-deleted({}, {})", self.inner.name(), self.v)
    }

    fn seat(&self) -> Player {
        self.inner.seat()
    }

    fn choose(&mut self, g: &Graph, spec: GameSpec, state: &GameState) -> Result<usize, StrategyError> {
        super::expect_turn(&self.name(), self.seat(), spec, state)?;
        if spec.start == self.seat() {
            return Err(StrategyError::Unsupported(format!("{} plays second only", self.name())));
        }
        if self.v >= g.n() {
            return Err(StrategyError::Game(crate::game::GameError::OutOfRange { vertex: self.v, n: g.n() }));
        }
        let (sub, kept) = self.deleted(g);
        self.last = None;
        if self.imagined.is_full(&sub) {
            return lowest_free(g, state);
        }
        let y = self.inner.choose(&sub, self.inner_spec(spec), &self.imagined)?;
        let mut real = kept[y];
        if state.labeled().contains(real) {
            real = if Some(real) == self.pending && !state.labeled().contains(self.v) {
                self.v
            } else {
                lowest_free(g, state)?
            };
        }
        self.last = Some((real, y));
        Ok(real)
    }

    fn observe(&mut self, g: &Graph, spec: GameSpec, _before: &GameState, player: Player, x: usize) {
        let (sub, _) = self.deleted(g);
        let last = self.last.take();
        if !self.opened {
            self.opened = true;
            if player != self.seat() {
                self.pending = (x != self.v).then_some(x);
                return;
            }
        }
        let y = if player == self.seat() {
            match last {
                Some((real, y)) if real == x => {
                    if x == self.v {
                        self.pending = None;
                    }
                    Some(y)
                }
                _ if x != self.v && !self.imagined.labeled().contains(self.sub_index(x)) => Some(self.sub_index(x)),
                _ => None,
            }
        } else if x == self.v {
            self.pending.take().map(|u| self.sub_index(u))
        } else {
            Some(self.sub_index(x))
        };
        if let Some(y) = y {
            if !self.imagined.labeled().contains(y) {
                let spec_inner = self.inner_spec(spec);
                self.inner.observe(&sub, spec_inner, &self.imagined, player, y);
                self.imagined = self.imagined.play_unchecked(&sub, player, y);
            }
        }
    }

    fn fingerprint(&self) -> u64 {
        let mut h = DefaultHasher::new();
        (self.opened, self.pending, self.imagined.s0(), self.imagined.s1()).hash(&mut h);
        self.inner.fingerprint().hash(&mut h);
        h.finish()
    }

    fn box_clone(&self) -> Box<dyn Strategy> {
        Box::new(self.clone())
    }
}
