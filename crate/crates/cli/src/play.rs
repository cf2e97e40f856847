//! Text-mode game between a human and an engine strategy.

use std::io::{self, BufRead, Write};

use balance_core::strategies::Strategy;
use balance_core::{GameSpec, GameState, Graph, Player};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    Finished { state: GameState, payoff: i32 },
    /// Input ended before the game did.
    Aborted { state: GameState },
}

/// Plays one game, prompting on `out` and reading the human's moves from
/// `input`. Malformed or illegal input is refused and asked for again.
pub fn session(
    g: &Graph,
    spec: GameSpec,
    human: Player,
    engine: &mut dyn Strategy,
    mut input: impl BufRead,
    out: &mut impl Write,
) -> anyhow::Result<Outcome> {
    writeln!(out, "graph n={} m={}; {spec}; you play {human}, engine {} plays {}", g.n(), g.m(), engine.name(), human.other())?;
    let mut state = GameState::new();
    while !state.is_full(g) {
        let mover = state.turn(spec)?;
        let v = if mover == human {
            match prompt_move(g, &state, &mut input, out)? {
                Some(v) => v,
                None => {
                    writeln!(out, "aborted: end of input after {} moves; s0={} s1={} score {}", state.moves_played(), state.s0(), state.s1(), state.score())?;
                    return Ok(Outcome::Aborted { state });
                }
            }
        } else {
            let v = engine.choose(g, spec, &state)?;
            anyhow::ensure!(v < g.n() && !state.labeled().contains(v), "engine chose illegal vertex {v}");
            v
        };
        let next = state.apply_move(g, mover, v)?;
        engine.observe(g, spec, &state, mover, v);
        state = next;
        writeln!(out, "{mover} plays {v}; score {}", state.score())?;
    }
    let payoff = state.leaf_payoff(spec, g)?;
    writeln!(out, "final score {}; payoff {payoff}", state.score())?;
    Ok(Outcome::Finished { state, payoff })
}

fn prompt_move(g: &Graph, state: &GameState, input: &mut impl BufRead, out: &mut impl Write) -> io::Result<Option<usize>> {
    loop {
        write!(out, "your move (free: {})> ", state.legal_moves(g))?;
        out.flush()?;
        let mut line = String::new();
        if input.read_line(&mut line)? == 0 {
            writeln!(out)?;
            return Ok(None);
        }
        let line = line.trim();
        match line.parse::<usize>() {
            Ok(v) if v < g.n() && !state.labeled().contains(v) => return Ok(Some(v)),
            Ok(v) if v < g.n() => writeln!(out, "vertex {v} is already labelled")?,
            Ok(v) => writeln!(out, "vertex {v} does not exist (n = {})", g.n())?,
            Err(_) => writeln!(out, "expected a vertex index, got {line:?}")?,
        }
    }
}
