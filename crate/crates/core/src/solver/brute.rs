//! Plain recursive minimax: no table, no pruning, leaf scores recounted from
//! scratch. Exists only as an independent oracle for the real solver.

use crate::bitset::VertexSet;
use crate::game::{payoff, score, GameSpec, Player};
use crate::graph::Graph;

use super::SolveError;

pub const BRUTE_FORCE_MAX_ORDER: usize = 10;

pub fn brute_force(g: &Graph, spec: GameSpec) -> Result<i32, SolveError> {
    if g.n() > BRUTE_FORCE_MAX_ORDER {
        return Err(SolveError::TooLarge { n: g.n(), max: BRUTE_FORCE_MAX_ORDER });
    }
    Ok(search(g, spec, VertexSet::EMPTY, VertexSet::EMPTY, spec.start))
}

fn search(g: &Graph, spec: GameSpec, s0: VertexSet, s1: VertexSet, mover: Player) -> i32 {
    let free = g.vertices() - s0 - s1;
    if free.is_empty() {
        return payoff(spec.variant, score(g, s0, s1));
    }
    let children = free.iter().map(|v| match mover {
        Player::Admirable => search(g, spec, s0.with(v), s1, mover.other()),
        Player::Impish => search(g, spec, s0, s1.with(v), mover.other()),
    });
    match mover {
        Player::Admirable => children.min().unwrap(),
        Player::Impish => children.max().unwrap(),
    }
}
