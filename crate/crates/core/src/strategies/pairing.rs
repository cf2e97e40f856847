use super::{expect_turn, Strategy, StrategyError};
use crate::game::{GameSpec, GameState, Player};
use crate::graph::Graph;

/// The pairing strategy for graphs of the `M(n,k)` construction: pairs are
/// `{2i, 2i+1}` and vertex `n-1` is the unpaired vertex when `n` is odd.
///
/// Rule, in order:
/// 1. complete the lowest pair that the opponent opened;
/// 2. for odd `n`, take the unpaired vertex while it is free;
/// 3. open the lowest untouched pair;
/// 4. complete a pair we opened ourselves, else take the lowest free vertex.
///
/// Played from either seat this bi-colours every pair, which is what the
/// value-`k` argument needs. Step 4 only fires in states the rule itself
/// never produces.
#[derive(Debug, Clone, Copy)]
pub struct Pairing {
    seat: Player,
    n: usize,
}

impl Pairing {
    pub fn new(seat: Player, n: usize) -> Self {
        Pairing { seat, n }
    }

    fn pairs(&self) -> impl Iterator<Item = (usize, usize)> {
        (0..self.n / 2).map(|i| (2 * i, 2 * i + 1))
    }
}

impl Strategy for Pairing {
    fn name(&self) -> String {
        "pairing".into()
    }

    fn seat(&self) -> Player {
        self.seat
    }

    fn choose(&mut self, g: &Graph, spec: GameSpec, state: &GameState) -> Result<usize, StrategyError> {
        expect_turn("pairing", self.seat, spec, state)?;
        if g.n() != self.n {
            return Err(StrategyError::Unsupported(format!(
                "pairing built for {} vertices, graph has {}",
                self.n,
                g.n()
            )));
        }
        let ours = state.set_of(self.seat);
        let theirs = state.set_of(self.seat.other());
        let free = state.legal_moves(g);
        let half_open = |owner: crate::VertexSet| {
            self.pairs().find_map(|(x, y)| match (free.contains(x), free.contains(y)) {
                (true, false) if owner.contains(y) => Some(x),
                (false, true) if owner.contains(x) => Some(y),
                _ => None,
            })
        };
        if let Some(v) = half_open(theirs) {
            return Ok(v);
        }
        if self.n % 2 == 1 && free.contains(self.n - 1) {
            return Ok(self.n - 1);
        }
        if let Some((x, _)) = self.pairs().find(|&(x, y)| free.contains(x) && free.contains(y)) {
            return Ok(x);
        }
        Ok(half_open(ours).or(free.first()).expect("turn implies a free vertex"))
    }

    fn box_clone(&self) -> Box<dyn Strategy> {
        Box::new(*self)
    }
}
