//! Exact game values by memoised minimax.
//!
//! Positions are keyed by the packed `(S0, S1)` pair; the side to move is a
//! function of the set sizes and the starting player, so it is not part of
//! the key. The balance game is searched with fail-soft alpha-beta and the
//! table stores value intervals. The cordiality game is searched without a
//! window and the table stores exact values only.

mod brute;
pub mod symmetry;
pub mod table;

use std::time::{Duration, Instant};

use thiserror::Error;

use crate::bitset::VertexSet;
use crate::bounds;
use crate::game::{payoff, vertex_score_raw, GameError, GameSpec, GameState, Player, Variant};
use crate::graph::Graph;

pub use brute::{brute_force, BRUTE_FORCE_MAX_ORDER};
pub use symmetry::{reversal, rotations, Automorphism};
use table::{Bounds, Key, Table, TableFull, NO_LOWER, NO_UPPER};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SolveError {
    #[error("search budget exceeded: {0}")]
    BudgetExceeded(Budget),
    #[error(transparent)]
    Game(#[from] GameError),
    #[error("not an automorphism: {0}")]
    NotAnAutomorphism(String),
    #[error("graph too large for this solver: n = {n}, limit {max}")]
    TooLarge { n: usize, max: usize },
}

impl SolveError {
    pub fn is_budget(&self) -> bool {
        matches!(self, SolveError::BudgetExceeded(_))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Budget {
    Nodes(u64),
    Time(Duration),
    TableEntries(usize),
}

impl std::fmt::Display for Budget {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Budget::Nodes(n) => write!(f, "node limit {n}"),
            Budget::Time(d) => write!(f, "time limit {:.3}s", d.as_secs_f64()),
            Budget::TableEntries(n) => write!(f, "table entry limit {n}"),
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct SolveOptions {
    pub node_budget: Option<u64>,
    pub time_budget: Option<Duration>,
    /// Maximum number of transposition-table entries.
    pub max_table_entries: Option<usize>,
    /// Alpha-beta pruning for the balance game. Ignored for cordiality.
    pub alpha_beta: bool,
    /// Try moves by decreasing `|vertex score|` instead of by index.
    pub move_ordering: bool,
    /// Automorphisms whose orbits share one table entry.
    pub symmetries: Vec<Vec<usize>>,
}

impl SolveOptions {
    pub fn new() -> Self {
        SolveOptions {
            alpha_beta: true,
            move_ordering: true,
            ..Default::default()
        }
    }

    pub fn with_symmetries(mut self, perms: Vec<Vec<usize>>) -> Self {
        self.symmetries = perms;
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveResult {
    pub value: i32,
    /// Lowest-index optimal first move; `None` for the empty graph.
    pub best_first_move: Option<usize>,
    pub nodes: u64,
    pub table_entries: usize,
    pub table_hits: u64,
    pub elapsed: Duration,
}

// Positions with fewer unlabeled vertices than this are searched without
// touching the table.
const TABLE_MIN_REMAINING: usize = 4;
const INF: i32 = i16::MAX as i32;

/// A reusable search context for one graph and one game specification.
/// The table persists across queries, so repeated [`Solver::value`] and
/// [`Solver::best_move`] calls on positions of the same game are cheap.
pub struct Solver {
    graph: Graph,
    spec: GameSpec,
    options: SolveOptions,
    symmetries: Vec<Automorphism>,
    table: Table,
    nodes: u64,
    hits: u64,
    deadline: Option<Instant>,
    aborted: Option<Budget>,
}

impl Solver {
    pub fn new(graph: &Graph, spec: GameSpec, options: SolveOptions) -> Result<Self, SolveError> {
        let symmetries = options
            .symmetries
            .iter()
            .map(|p| Automorphism::new(graph, p.clone()))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Solver {
            table: Table::new(graph.n() > 32, options.max_table_entries),
            graph: graph.clone(),
            spec,
            options,
            symmetries,
            nodes: 0,
            hits: 0,
            deadline: None,
            aborted: None,
        })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn spec(&self) -> GameSpec {
        self.spec
    }

    pub fn nodes(&self) -> u64 {
        self.nodes
    }

    pub fn table_entries(&self) -> usize {
        self.table.len()
    }

    /// Solves the game from the empty position.
    pub fn solve(&mut self) -> Result<SolveResult, SolveError> {
        let start = Instant::now();
        let root = GameState::new();
        let value = self.value(&root)?;
        let best_first_move = if self.graph.n() == 0 {
            None
        } else {
            Some(self.best_move(&root)?)
        };
        debug_assert!(self.value_is_plausible(value), "implausible value {value} for {:?} {}", self.graph, self.spec);
        Ok(SolveResult {
            value,
            best_first_move,
            nodes: self.nodes,
            table_entries: self.table.len(),
            table_hits: self.hits,
            elapsed: start.elapsed(),
        })
    }

    fn value_is_plausible(&self, value: i32) -> bool {
        let n = self.graph.n();
        let m = self.graph.m() as i32;
        if value.abs() > m {
            return false;
        }
        match self.spec.variant {
            Variant::Balance => bounds::balance_global_bounds_hold(n, self.spec.start, value),
            Variant::Cordiality => value >= 0,
        }
    }

    /// Exact minimax value of a position that can arise in this game.
    pub fn value(&mut self, state: &GameState) -> Result<i32, SolveError> {
        state.turn(self.spec)?;
        self.begin();
        let v = match self.spec.variant {
            Variant::Balance if self.options.alpha_beta => {
                self.alpha_beta(state.s0(), state.s1(), state.score(), -INF, INF)
            }
            _ => self.minimax(state.s0(), state.s1(), state.score()),
        };
        self.finish(v)
    }

    /// Lowest-index move achieving the minimax value of `state`.
    pub fn best_move(&mut self, state: &GameState) -> Result<usize, SolveError> {
        let mover = state.turn(self.spec)?;
        let moves = state.legal_moves(&self.graph);
        if moves.is_empty() {
            return Err(GameError::Full.into());
        }
        let target = self.value(state)?;
        for v in moves {
            let child = state.play_unchecked(&self.graph, mover, v);
            if self.child_attains(&child, mover, target)? {
                return Ok(v);
            }
        }
        unreachable!("some move attains the minimax value")
    }

    /// Whether the child position has exactly value `target`, given that
    /// `target` is the parent's value and `mover` chose the move.
    fn child_attains(&mut self, child: &GameState, mover: Player, target: i32) -> Result<bool, SolveError> {
        if !(self.spec.variant == Variant::Balance && self.options.alpha_beta) {
            return Ok(self.value(child)? == target);
        }
        // The child is at least the target for a minimising mover and at
        // most the target for a maximising one, so a null window decides it.
        self.begin();
        let (s0, s1, sc) = (child.s0(), child.s1(), child.score());
        let r = match mover {
            Player::Admirable => self.alpha_beta(s0, s1, sc, target, target + 1),
            Player::Impish => self.alpha_beta(s0, s1, sc, target - 1, target),
        };
        let r = self.finish(r)?;
        Ok(match mover {
            Player::Admirable => r <= target,
            Player::Impish => r >= target,
        })
    }

    fn begin(&mut self) {
        self.aborted = None;
        self.deadline = self.options.time_budget.map(|d| Instant::now() + d);
    }

    fn finish(&mut self, v: i32) -> Result<i32, SolveError> {
        match self.aborted.take() {
            Some(b) => Err(SolveError::BudgetExceeded(b)),
            None => Ok(v),
        }
    }

    #[inline]
    fn key(&self, s0: VertexSet, s1: VertexSet) -> Key {
        let pack = |a: VertexSet, b: VertexSet| {
            if self.table.is_wide() {
                Key { lo: a.bits(), hi: b.bits() }
            } else {
                Key { lo: a.bits() | b.bits() << 32, hi: 0 }
            }
        };
        let mut best = pack(s0, s1);
        for auto in &self.symmetries {
            let k = pack(auto.map(s0), auto.map(s1));
            if k < best {
                best = k;
            }
        }
        best
    }

    #[inline]
    fn mover(&self, s0: VertexSet, s1: VertexSet) -> Player {
        let (first, second) = match self.spec.start {
            Player::Admirable => (s0.len(), s1.len()),
            Player::Impish => (s1.len(), s0.len()),
        };
        if first == second {
            self.spec.start
        } else {
            self.spec.start.other()
        }
    }

    /// Counts an expanded node and enforces the node and time budgets.
    #[inline]
    fn tick(&mut self) -> bool {
        self.nodes += 1;
        if let Some(limit) = self.options.node_budget {
            if self.nodes > limit {
                self.aborted = Some(Budget::Nodes(limit));
                return false;
            }
        }
        if self.nodes & 0x3ff == 0 {
            if let (Some(deadline), Some(d)) = (self.deadline, self.options.time_budget) {
                if Instant::now() > deadline {
                    self.aborted = Some(Budget::Time(d));
                    return false;
                }
            }
        }
        true
    }

    fn store(&mut self, key: Key, b: Bounds) {
        if self.aborted.is_some() {
            return;
        }
        if self.table.put(key, b) == Err(TableFull) {
            self.aborted = Some(Budget::TableEntries(self.table.len()));
        }
    }

    /// Children of a position in search order.
    #[inline]
    fn ordered_moves(&self, s0: VertexSet, s1: VertexSet, free: VertexSet, buf: &mut [(i32, u8); 64]) -> usize {
        let mut k = 0;
        for v in free {
            let key = if self.options.move_ordering {
                -vertex_score_raw(&self.graph, v, s0, s1).abs()
            } else {
                0
            };
            buf[k] = (key, v as u8);
            k += 1;
        }
        // Stable, so equal keys keep index order.
        buf[..k].sort_by_key(|&(key, _)| key);
        k
    }

    /// Fail-soft alpha-beta for the balance game.
    fn alpha_beta(&mut self, s0: VertexSet, s1: VertexSet, score: i32, mut alpha: i32, mut beta: i32) -> i32 {
        let free = self.graph.vertices() - s0 - s1;
        let remaining = free.len();
        if remaining == 0 {
            return score;
        }
        let mover = self.mover(s0, s1);
        if remaining == 1 {
            let v = free.first().unwrap();
            let d = vertex_score_raw(&self.graph, v, s0, s1);
            return match mover {
                Player::Admirable => score - d,
                Player::Impish => score + d,
            };
        }

        let use_table = remaining >= TABLE_MIN_REMAINING;
        let key = if use_table { Some(self.key(s0, s1)) } else { None };
        let mut known = Bounds { lo: NO_LOWER, hi: NO_UPPER };
        if let Some(k) = key {
            if let Some(b) = self.table.get(k) {
                self.hits += 1;
                if b.is_exact() {
                    return b.lo as i32;
                }
                if b.lo as i32 >= beta {
                    return b.lo as i32;
                }
                if b.hi as i32 <= alpha {
                    return b.hi as i32;
                }
                alpha = alpha.max(b.lo as i32);
                beta = beta.min(b.hi as i32);
                known = b;
            }
        }
        if !self.tick() {
            return 0;
        }

        let (a0, b0) = (alpha, beta);
        let mut buf = [(0i32, 0u8); 64];
        let k = self.ordered_moves(s0, s1, free, &mut buf);
        let mut best;
        match mover {
            Player::Admirable => {
                best = INF;
                for &(_, v) in &buf[..k] {
                    let v = v as usize;
                    let d = vertex_score_raw(&self.graph, v, s0, s1);
                    let r = self.alpha_beta(s0.with(v), s1, score - d, alpha, beta);
                    if self.aborted.is_some() {
                        return 0;
                    }
                    best = best.min(r);
                    beta = beta.min(best);
                    if best <= alpha {
                        break;
                    }
                }
            }
            Player::Impish => {
                best = -INF;
                for &(_, v) in &buf[..k] {
                    let v = v as usize;
                    let d = vertex_score_raw(&self.graph, v, s0, s1);
                    let r = self.alpha_beta(s0, s1.with(v), score + d, alpha, beta);
                    if self.aborted.is_some() {
                        return 0;
                    }
                    best = best.max(r);
                    alpha = alpha.max(best);
                    if best >= beta {
                        break;
                    }
                }
            }
        }

        if let Some(key) = key {
            let b = if best <= a0 {
                Bounds { lo: known.lo, hi: best as i16 }
            } else if best >= b0 {
                Bounds { lo: best as i16, hi: known.hi }
            } else {
                Bounds::exact(best as i16)
            };
            self.store(key, b);
        }
        best
    }

    /// Windowless memoised minimax; used for cordiality.
    fn minimax(&mut self, s0: VertexSet, s1: VertexSet, score: i32) -> i32 {
        let variant = self.spec.variant;
        let free = self.graph.vertices() - s0 - s1;
        let remaining = free.len();
        if remaining == 0 {
            return payoff(variant, score);
        }
        let mover = self.mover(s0, s1);
        if remaining == 1 {
            let v = free.first().unwrap();
            let d = vertex_score_raw(&self.graph, v, s0, s1);
            return payoff(
                variant,
                match mover {
                    Player::Admirable => score - d,
                    Player::Impish => score + d,
                },
            );
        }

        let key = (remaining >= TABLE_MIN_REMAINING).then(|| self.key(s0, s1));
        if let Some(k) = key {
            if let Some(b) = self.table.get(k) {
                self.hits += 1;
                debug_assert!(b.is_exact());
                return b.lo as i32;
            }
        }
        if !self.tick() {
            return 0;
        }

        let mut buf = [(0i32, 0u8); 64];
        let k = self.ordered_moves(s0, s1, free, &mut buf);
        // Cordiality payoffs are never negative, so Admirable can stop at 0.
        let floor = if variant == Variant::Cordiality { 0 } else { -INF };
        let best = match mover {
            Player::Admirable => {
                let mut best = INF;
                for &(_, v) in &buf[..k] {
                    let v = v as usize;
                    let d = vertex_score_raw(&self.graph, v, s0, s1);
                    let r = self.minimax(s0.with(v), s1, score - d);
                    if self.aborted.is_some() {
                        return 0;
                    }
                    best = best.min(r);
                    if best <= floor {
                        break;
                    }
                }
                best
            }
            Player::Impish => {
                let mut best = -INF;
                for &(_, v) in &buf[..k] {
                    let v = v as usize;
                    let d = vertex_score_raw(&self.graph, v, s0, s1);
                    let r = self.minimax(s0, s1.with(v), score + d);
                    if self.aborted.is_some() {
                        return 0;
                    }
                    best = best.max(r);
                }
                best
            }
        };
        if let Some(key) = key {
            self.store(key, Bounds::exact(best as i16));
        }
        best
    }
}

/// Exact value of `spec` on `g` with default options.
pub fn solve(g: &Graph, spec: GameSpec, options: SolveOptions) -> Result<SolveResult, SolveError> {
    Solver::new(g, spec, options)?.solve()
}

/// [`solve`] with positions identified up to the given automorphisms.
pub fn solve_with_symmetry(
    g: &Graph,
    spec: GameSpec,
    perms: Vec<Vec<usize>>,
    options: SolveOptions,
) -> Result<SolveResult, SolveError> {
    solve(g, spec, options.with_symmetries(perms))
}

/// Convenience: value only, default options.
pub fn game_value(g: &Graph, spec: GameSpec) -> i32 {
    solve(g, spec, SolveOptions::new())
        .expect("unbudgeted solve cannot fail")
        .value
}

/// Lowest-index optimal move from `state`.
pub fn best_move(g: &Graph, spec: GameSpec, state: &GameState) -> Result<usize, SolveError> {
    Solver::new(g, spec, SolveOptions::new())?.best_move(state)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete, complete_bipartite, cycle, path, petersen};

    const A: Player = Player::Admirable;
    const I: Player = Player::Impish;

    fn all_option_sets() -> Vec<SolveOptions> {
        let mut out = Vec::new();
        for alpha_beta in [true, false] {
            for move_ordering in [true, false] {
                out.push(SolveOptions {
                    alpha_beta,
                    move_ordering,
                    ..SolveOptions::new()
                });
            }
        }
        out
    }

    #[test]
    fn table_one_examples() {
        assert_eq!(game_value(&path(5).unwrap(), GameSpec::balance(A)), 2);
        assert_eq!(game_value(&path(8).unwrap(), GameSpec::balance(I)), 3);
        let c5 = cycle(5).unwrap();
        assert_eq!(game_value(&c5, GameSpec::balance(A)), 3);
        assert_eq!(game_value(&c5, GameSpec::balance(I)), -1);
    }

    #[test]
    fn best_move_examples() {
        let k2 = complete(2).unwrap();
        assert_eq!(best_move(&k2, GameSpec::balance(A), &GameState::new()), Ok(0));

        let p = petersen();
        let spec = GameSpec::balance(A);
        let v = best_move(&p, spec, &GameState::new()).unwrap();
        let after = GameState::new().apply_move(&p, A, v).unwrap();
        let mut s = Solver::new(&p, spec, SolveOptions::new()).unwrap();
        assert_eq!(s.value(&after).unwrap(), -1);

        let p3 = path(3).unwrap();
        let v = best_move(&p3, spec, &GameState::new()).unwrap();
        let after = GameState::new().apply_move(&p3, A, v).unwrap();
        let mut s = Solver::new(&p3, spec, SolveOptions::new()).unwrap();
        assert_eq!(s.value(&after).unwrap(), 0);
    }

    #[test]
    fn best_move_rejects_full_state() {
        let g = path(2).unwrap();
        let st = GameState::new().apply_move(&g, A, 0).unwrap().apply_move(&g, I, 1).unwrap();
        assert_eq!(
            best_move(&g, GameSpec::balance(A), &st),
            Err(SolveError::Game(GameError::Full))
        );
    }

    #[test]
    fn value_rejects_inconsistent_state() {
        let g = path(4).unwrap();
        let st = GameState::from_sets(&g, VertexSet::EMPTY, VertexSet::singleton(1)).unwrap();
        assert!(Solver::new(&g, GameSpec::balance(A), SolveOptions::new())
            .unwrap()
            .value(&st)
            .is_err());
    }

    #[test]
    fn named_values_with_brute_force() {
        assert_eq!(brute_force(&complete(4).unwrap(), GameSpec::balance(A)), Ok(2));
        assert_eq!(brute_force(&complete_bipartite(3, 3).unwrap(), GameSpec::balance(A)), Ok(1));
        assert_eq!(brute_force(&complete_bipartite(2, 3).unwrap(), GameSpec::balance(I)), Ok(0));
        assert!(brute_force(&path(11).unwrap(), GameSpec::balance(A)).is_err());
    }

    #[test]
    fn options_do_not_change_results() {
        for g in [path(9).unwrap(), cycle(8).unwrap(), petersen(), complete_bipartite(3, 4).unwrap()] {
            for spec in GameSpec::ALL {
                let results: Vec<_> = all_option_sets()
                    .into_iter()
                    .map(|o| {
                        let r = solve(&g, spec, o).unwrap();
                        (r.value, r.best_first_move)
                    })
                    .collect();
                assert!(results.windows(2).all(|w| w[0] == w[1]), "{g:?} {spec}: {results:?}");
            }
        }
    }

    #[test]
    fn symmetry_reduction() {
        let p12 = path(12).unwrap();
        let spec = GameSpec::balance(A);
        let plain = solve(&p12, spec, SolveOptions::new()).unwrap();
        let folded = solve_with_symmetry(&p12, spec, vec![reversal(12)], SolveOptions::new()).unwrap();
        assert_eq!(plain.value, 1);
        assert_eq!(folded.value, 1);
        assert_eq!(plain.best_first_move, folded.best_first_move);

        let p10 = path(10).unwrap();
        let ident = solve_with_symmetry(&p10, spec, vec![(0..10).collect()], SolveOptions::new()).unwrap();
        let rev = solve_with_symmetry(&p10, spec, vec![reversal(10)], SolveOptions::new()).unwrap();
        assert_eq!((ident.value, rev.value), (1, 1));
        assert!(ident.table_entries >= rev.table_entries);

        let c6 = cycle(6).unwrap();
        for spec in GameSpec::ALL {
            let a = solve(&c6, spec, SolveOptions::new()).unwrap();
            let b = solve_with_symmetry(&c6, spec, rotations(6), SolveOptions::new()).unwrap();
            assert_eq!(a.value, b.value);
        }

        assert!(matches!(
            solve_with_symmetry(&p10, spec, vec![rotations(10)[0].clone()], SolveOptions::new()),
            Err(SolveError::NotAnAutomorphism(_))
        ));
    }

    #[test]
    fn budgets_are_reported_distinctly() {
        let g = path(14).unwrap();
        let spec = GameSpec::cordiality(A);
        let tight = SolveOptions { node_budget: Some(100), ..SolveOptions::new() };
        assert_eq!(
            solve(&g, spec, tight).unwrap_err(),
            SolveError::BudgetExceeded(Budget::Nodes(100))
        );
        let small_table = SolveOptions { max_table_entries: Some(50), ..SolveOptions::new() };
        assert!(matches!(
            solve(&g, spec, small_table).unwrap_err(),
            SolveError::BudgetExceeded(Budget::TableEntries(_))
        ));
        let no_time = SolveOptions { time_budget: Some(Duration::ZERO), ..SolveOptions::new() };
        assert!(matches!(
            solve(&g, spec, no_time).unwrap_err(),
            SolveError::BudgetExceeded(Budget::Time(_))
        ));
        // A failed search leaves the solver usable.
        let mut s = Solver::new(&g, spec, SolveOptions { node_budget: Some(10), ..SolveOptions::new() }).unwrap();
        assert!(s.solve().is_err());
    }

    #[test]
    fn trivial_graphs() {
        let g = Graph::empty(0).unwrap();
        let r = solve(&g, GameSpec::balance(A), SolveOptions::new()).unwrap();
        assert_eq!((r.value, r.best_first_move), (0, None));
        let g = Graph::empty(1).unwrap();
        assert_eq!(game_value(&g, GameSpec::cordiality(I)), 0);
    }

    #[test]
    fn wide_graphs_use_two_word_keys() {
        // 40 isolated vertices plus a K_2: value 1 regardless of the padding.
        let g = Graph::from_edges(40, [(0, 1)]).unwrap();
        let mut s = Solver::new(&g, GameSpec::balance(A), SolveOptions::new()).unwrap();
        // Solve from a position where only six vertices remain.
        let mut st = GameState::new();
        for v in 6..40 {
            let p = st.turn(GameSpec::balance(A)).unwrap();
            st = st.apply_move(&g, p, v).unwrap();
        }
        let expected = brute_force(&Graph::from_edges(6, [(0, 1)]).unwrap(), GameSpec::balance(A)).unwrap();
        assert_eq!(s.value(&st).unwrap(), expected);
        assert!(s.table.is_wide());
    }
}
