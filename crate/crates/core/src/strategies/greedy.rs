//! The potential-function strategies behind the global bounds.

use super::{argmax_lowest, expect_turn, Strategy, StrategyError};
use crate::bitset::VertexSet;
use crate::dyadic::Dyadic;
use crate::game::{vertex_score_raw, GameSpec, GameState, Player, Variant};
use crate::graph::Graph;

/// Admirable takes a vertex of maximum vertex score, lowest index first.
/// In the A-start game on an even number of vertices this keeps the score
/// at most `k/2` after `k` moves for even `k`.
#[derive(Debug, Clone, Copy)]
pub struct GreedyAdmirable;

impl Strategy for GreedyAdmirable {
    fn name(&self) -> String {
        "greedy".into()
    }

    fn seat(&self) -> Player {
        Player::Admirable
    }

    fn choose(&mut self, g: &Graph, spec: GameSpec, state: &GameState) -> Result<usize, StrategyError> {
        expect_turn("greedy", Player::Admirable, spec, state)?;
        let (s0, s1) = (state.s0(), state.s1());
        Ok(argmax_lowest(state.legal_moves(g), |v| vertex_score_raw(g, v, s0, s1)).expect("turn implies a free vertex"))
    }

    fn box_clone(&self) -> Box<dyn Strategy> {
        Box::new(*self)
    }
}

/// Cordiality version of the greedy rule: push the score towards zero by
/// taking a vertex of maximum vertex score while the score is non-negative
/// and of minimum vertex score while it is negative.
#[derive(Debug, Clone, Copy)]
pub struct CordialityGreedy;

impl Strategy for CordialityGreedy {
    fn name(&self) -> String {
        "cgreedy".into()
    }

    fn seat(&self) -> Player {
        Player::Admirable
    }

    fn choose(&mut self, g: &Graph, spec: GameSpec, state: &GameState) -> Result<usize, StrategyError> {
        if spec.variant != Variant::Cordiality {
            return Err(StrategyError::WrongVariant { strategy: self.name(), expected: Variant::Cordiality });
        }
        expect_turn("cgreedy", Player::Admirable, spec, state)?;
        let (s0, s1) = (state.s0(), state.s1());
        let sign = if state.score() >= 0 { 1 } else { -1 };
        Ok(argmax_lowest(state.legal_moves(g), |v| sign * vertex_score_raw(g, v, s0, s1)).expect("turn implies a free vertex"))
    }

    fn box_clone(&self) -> Box<dyn Strategy> {
        Box::new(*self)
    }
}

/// Impish's danger-potential strategy: among the vertices of maximum vertex
/// score, take one minimising `r(u)`, the sum of `2^-s(w)` over the
/// unlabeled neighbours `w` of `u`; remaining ties go to the lowest index.
#[derive(Debug, Clone, Copy)]
pub struct DangerImpish;

/// `r(u)` in the current state.
pub fn neighbour_danger(g: &Graph, u: usize, state: &GameState) -> Dyadic {
    let mut r = Dyadic::zero();
    for w in g.neighbors(u) - state.labeled() {
        r += &Dyadic::pow2(-vertex_score_raw(g, w, state.s0(), state.s1()));
    }
    r
}

impl Strategy for DangerImpish {
    fn name(&self) -> String {
        "danger".into()
    }

    fn seat(&self) -> Player {
        Player::Impish
    }

    fn choose(&mut self, g: &Graph, spec: GameSpec, state: &GameState) -> Result<usize, StrategyError> {
        expect_turn("danger", Player::Impish, spec, state)?;
        let (s0, s1) = (state.s0(), state.s1());
        let free = state.legal_moves(g);
        let top = free.iter().map(|v| vertex_score_raw(g, v, s0, s1)).max().expect("turn implies a free vertex");
        let candidates: VertexSet = free.iter().filter(|&v| vertex_score_raw(g, v, s0, s1) == top).collect();
        if candidates.len() == 1 {
            return Ok(candidates.first().unwrap());
        }
        let mut best: Option<(Dyadic, usize)> = None;
        for u in candidates {
            let r = neighbour_danger(g, u, state);
            if best.as_ref().is_none_or(|(b, _)| r < *b) {
                best = Some((r, u));
            }
        }
        Ok(best.unwrap().1)
    }

    fn box_clone(&self) -> Box<dyn Strategy> {
        Box::new(*self)
    }
}

/// Incrementally maintained danger potential
/// `Dang(S0, S1) = 2^-score * sum over unlabeled v of 2^-s(v)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DangerAccount {
    score: i32,
    unlabeled: VertexSet,
    vertex_scores: Vec<i32>,
    sum: Dyadic,
}

impl DangerAccount {
    /// The account of the empty state: `Dang = n`.
    pub fn new(g: &Graph) -> Self {
        DangerAccount::from_state(g, &GameState::new())
    }

    /// Recomputes everything from `state`.
    pub fn from_state(g: &Graph, state: &GameState) -> Self {
        let unlabeled = state.legal_moves(g);
        let mut vertex_scores = vec![0; g.n()];
        let mut sum = Dyadic::zero();
        for v in unlabeled {
            let s = vertex_score_raw(g, v, state.s0(), state.s1());
            vertex_scores[v] = s;
            sum += &Dyadic::pow2(-s);
        }
        DangerAccount { score: state.score(), unlabeled, vertex_scores, sum }
    }

    /// Updates the account for `player` labelling the unlabeled vertex `v`.
    pub fn apply(&mut self, g: &Graph, player: Player, v: usize) {
        assert!(self.unlabeled.contains(v), "vertex {v} is not unlabeled");
        let sv = self.vertex_scores[v];
        self.sum -= &Dyadic::pow2(-sv);
        self.unlabeled.remove(v);
        self.vertex_scores[v] = 0;
        let (step, delta) = match player {
            Player::Admirable => (1, -sv),
            Player::Impish => (-1, sv),
        };
        self.score += delta;
        for w in g.neighbors(v) & self.unlabeled {
            let old = self.vertex_scores[w];
            self.sum -= &Dyadic::pow2(-old);
            self.sum += &Dyadic::pow2(-(old + step));
            self.vertex_scores[w] = old + step;
        }
    }

    pub fn value(&self) -> Dyadic {
        self.sum.shl(-self.score)
    }

    pub fn score(&self) -> i32 {
        self.score
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{path, petersen, random_gnp};
    use crate::strategies::{play_game_with, RandomMoves};

    const A: Player = Player::Admirable;
    const I: Player = Player::Impish;

    fn state(g: &Graph, s0: &[usize], s1: &[usize]) -> GameState {
        GameState::from_sets(g, s0.iter().copied().collect(), s1.iter().copied().collect()).unwrap()
    }

    #[test]
    fn greedy_examples() {
        let p4 = path(4).unwrap();
        let spec = GameSpec::balance(I);
        // Vertex scores: 0 -> -1, 2 -> -1, 3 -> 0.
        assert_eq!(GreedyAdmirable.choose(&p4, spec, &state(&p4, &[], &[1])), Ok(3));
        assert_eq!(GreedyAdmirable.choose(&petersen(), GameSpec::balance(A), &GameState::new()), Ok(0));
        assert!(GreedyAdmirable.choose(&p4, spec, &GameState::new()).is_err());
    }

    #[test]
    fn danger_examples() {
        let p4 = path(4).unwrap();
        let spec = GameSpec::balance(A);
        assert_eq!(DangerImpish.choose(&p4, spec, &state(&p4, &[0], &[])), Ok(1));
        assert_eq!(DangerImpish.choose(&petersen(), GameSpec::balance(I), &GameState::new()), Ok(0));
        assert!(DangerImpish.choose(&p4, spec, &GameState::new()).is_err());
    }

    #[test]
    fn danger_uses_neighbour_sum_to_break_ties() {
        // Star with centre 0 and leaves 1..3, plus an isolated edge 4-5.
        // After A takes 1: s(0) = 1 is the unique maximum.
        let g = Graph::from_edges(6, [(0, 1), (0, 2), (0, 3), (4, 5)]).unwrap();
        assert_eq!(DangerImpish.choose(&g, GameSpec::balance(A), &state(&g, &[1], &[])), Ok(0));
        // After A takes 4 the unique maximum is 5.
        assert_eq!(DangerImpish.choose(&g, GameSpec::balance(A), &state(&g, &[4], &[])), Ok(5));
        // Two candidates of score 0 with different neighbourhoods: P_3 0-1-2
        // plus isolated 3, empty state but I to move in the I-start game.
        // r(3) = 0 < r(0) = 1 < r(1) = 2, so 3 is chosen over the lower indices.
        let g = Graph::from_edges(4, [(0, 1), (1, 2)]).unwrap();
        assert_eq!(DangerImpish.choose(&g, GameSpec::balance(I), &GameState::new()), Ok(3));
    }

    #[test]
    fn cordiality_greedy_examples() {
        let p4 = path(4).unwrap();
        let cspec = GameSpec::cordiality(I);
        let st = state(&p4, &[], &[1]);
        assert_eq!(CordialityGreedy.choose(&p4, cspec, &st), GreedyAdmirable.choose(&p4, GameSpec::balance(I), &st));

        let p6 = path(6).unwrap();
        let st = state(&p6, &[0, 1], &[3, 4]);
        assert_eq!(st.score(), -2);
        // s(2) = 0, s(5) = -1.
        assert_eq!(CordialityGreedy.choose(&p6, GameSpec::cordiality(A), &st), Ok(5));
        assert!(matches!(
            CordialityGreedy.choose(&p6, GameSpec::balance(A), &st),
            Err(StrategyError::WrongVariant { .. })
        ));
    }

    #[test]
    fn danger_account_tracks_from_scratch_value() {
        for seed in 0..200 {
            let g = random_gnp(3 + (seed as usize % 10), seed).unwrap();
            let spec = GameSpec::balance(if seed % 2 == 0 { A } else { I });
            let mut acc = DangerAccount::new(&g);
            assert_eq!(acc.value(), Dyadic::from_int(g.n() as u64));
            play_game_with(&g, spec, &mut RandomMoves::new(A, seed), &mut RandomMoves::new(I, !seed), |_, p, v, after| {
                acc.apply(&g, p, v);
                assert_eq!(acc, DangerAccount::from_state(&g, after));
                assert_eq!(acc.score(), after.score());
            })
            .unwrap();
            // Full state: no unlabeled vertices left.
            assert!(acc.value().is_zero());
        }
    }
}
