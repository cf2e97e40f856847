//! Move-by-move invariants of the explicit strategies, checked over many
//! play-outs against assorted opponents.

use rayon::prelude::*;

use super::{seed_stream, ExperimentError};
use crate::dyadic::Dyadic;
use crate::game::{GameSpec, GameState, Player};
use crate::graph::{path, random_gnp, Graph};
use crate::strategies::{
    evaluate_guarantee, play_game_with, CordialityGreedy, DangerAccount, DangerImpish, GreedyAdmirable, RandomMoves,
    SegmentPath, Strategy,
};

const A: Player = Player::Admirable;
const I: Player = Player::Impish;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlayoutSummary {
    pub check_id: &'static str,
    pub scope: String,
    pub expected: String,
    pub games: usize,
    pub moves_checked: usize,
    /// Descriptions of violating games.
    pub failures: Vec<String>,
}

impl PlayoutSummary {
    pub fn pass(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Even order in `2..=max_n` for game `i`.
fn even_order(seed: u64, max_n: usize) -> usize {
    2 + 2 * (seed % (max_n / 2).max(1) as u64) as usize
}

fn odd_order(seed: u64, max_n: usize) -> usize {
    1 + 2 * (seed % max_n.div_ceil(2).max(1) as u64) as usize
}

struct GameOutcome {
    checked: usize,
    failure: Option<String>,
}

fn collect(
    check_id: &'static str,
    scope: String,
    expected: String,
    outcomes: Vec<Result<GameOutcome, ExperimentError>>,
) -> Result<PlayoutSummary, ExperimentError> {
    let mut s = PlayoutSummary { check_id, scope, expected, games: 0, moves_checked: 0, failures: Vec::new() };
    for o in outcomes {
        let o = o?;
        s.games += 1;
        s.moves_checked += o.checked;
        s.failures.extend(o.failure);
    }
    Ok(s)
}

/// Greedy Admirable in the A-start game on random graphs of even order:
/// after every even number `k` of moves the score is at most `k/2`.
pub fn greedy_pair_step_playouts(games: usize, max_n: usize, seed: u64) -> Result<PlayoutSummary, ExperimentError> {
    let seeds: Vec<u64> = seed_stream(seed, 1).take(games).collect();
    let outcomes = seeds
        .par_iter()
        .enumerate()
        .map(|(i, &s)| {
            let n = even_order(s, max_n);
            let g = random_gnp(n, s)?;
            let mut opponent: Box<dyn Strategy> =
                if i % 2 == 0 { Box::new(RandomMoves::new(I, s)) } else { Box::new(DangerImpish) };
            let mut checked = 0;
            let mut failure = None;
            play_game_with(&g, GameSpec::balance(A), &mut GreedyAdmirable, opponent.as_mut(), |_, _, _, after| {
                let k = after.moves_played() as i32;
                if k % 2 == 0 {
                    checked += 1;
                    if 2 * after.score() > k && failure.is_none() {
                        failure = Some(format!(
                            "gnp(n={n}, seed={s}) vs {}: score {} after {k} moves",
                            opponent_name(i, "random", "danger"),
                            after.score()
                        ));
                    }
                }
            })?;
            Ok(GameOutcome { checked, failure })
        })
        .collect();
    collect(
        "greedy_pair_step",
        format!("{games} games, even n <= {max_n}"),
        "score <= k/2 after every even k".into(),
        outcomes,
    )
}

fn opponent_name(i: usize, even: &'static str, odd: &'static str) -> &'static str {
    if i % 2 == 0 {
        even
    } else {
        odd
    }
}

/// Danger Impish: `Dang <= n - 1` after every odd move count `k < n` in the
/// A-start game on even `n`, and `Dang <= n` after every even `k < n` in the
/// I-start game on odd `n`. The incremental account is compared with a
/// from-scratch recomputation after every move.
pub fn danger_playouts(games: usize, max_n: usize, seed: u64) -> Result<PlayoutSummary, ExperimentError> {
    let seeds: Vec<u64> = seed_stream(seed, 2).take(games).collect();
    let outcomes = seeds
        .par_iter()
        .enumerate()
        .map(|(i, &s)| {
            let a_start = i % 2 == 0;
            let n = if a_start { even_order(s, max_n) } else { odd_order(s, max_n) };
            let g = random_gnp(n, s)?;
            let spec = GameSpec::balance(if a_start { A } else { I });
            let (parity, cap) = if a_start { (1, n - 1) } else { (0, n) };
            let cap = Dyadic::from_int(cap as u64);
            let mut opponent: Box<dyn Strategy> =
                if (i / 2) % 2 == 0 { Box::new(RandomMoves::new(A, s)) } else { Box::new(GreedyAdmirable) };
            let mut account = DangerAccount::new(&g);
            let mut checked = 0;
            let mut failure = None;
            let check = |acc: &DangerAccount, k: usize, st: &GameState, failure: &mut Option<String>| {
                if k < n && k % 2 == parity && acc.value() > cap && failure.is_none() {
                    *failure = Some(format!("gnp(n={n}, seed={s}) {spec}: Dang = {} after {k} moves", acc.value()));
                }
                if *acc != DangerAccount::from_state(&g, st) && failure.is_none() {
                    *failure = Some(format!("gnp(n={n}, seed={s}) {spec}: incremental account drifted after {k} moves"));
                }
            };
            check(&account, 0, &GameState::new(), &mut failure);
            play_game_with(&g, spec, opponent.as_mut(), &mut DangerImpish, |_, p, v, after| {
                account.apply(&g, p, v);
                checked += 1;
                check(&account, after.moves_played(), after, &mut failure);
            })?;
            Ok(GameOutcome { checked, failure })
        })
        .collect();
    collect(
        "danger_potential",
        format!("{games} games, n <= {max_n}"),
        "A-start even n: Dang <= n-1 after odd k < n; I-start odd n: Dang <= n after even k < n".into(),
        outcomes,
    )
}

/// Cordiality-greedy Admirable in the A-start cordiality game on even `n`:
/// after `2k` moves `|score| <= k + 2Δ`.
pub fn cordiality_window_playouts(games: usize, max_n: usize, seed: u64) -> Result<PlayoutSummary, ExperimentError> {
    let seeds: Vec<u64> = seed_stream(seed, 3).take(games).collect();
    let outcomes = seeds
        .par_iter()
        .enumerate()
        .map(|(i, &s)| {
            let n = even_order(s, max_n);
            let g = random_gnp(n, s)?;
            let delta = g.max_degree() as i32;
            let mut opponent: Box<dyn Strategy> =
                if i % 2 == 0 { Box::new(RandomMoves::new(I, s)) } else { Box::new(DangerImpish) };
            let mut checked = 0;
            let mut failure = None;
            play_game_with(&g, GameSpec::cordiality(A), &mut CordialityGreedy, opponent.as_mut(), |_, _, _, after| {
                let moves = after.moves_played() as i32;
                if moves % 2 == 0 {
                    checked += 1;
                    if after.score().abs() > moves / 2 + 2 * delta && failure.is_none() {
                        failure = Some(format!("gnp(n={n}, seed={s}): |score| = {} after {moves} moves", after.score().abs()));
                    }
                }
            })?;
            Ok(GameOutcome { checked, failure })
        })
        .collect();
    collect(
        "cordiality_window",
        format!("{games} games, even n <= {max_n}"),
        "|score| <= k + 2*Delta after 2k moves".into(),
        outcomes,
    )
}

/// The segment bound for `P_n`: `2 floor(n/16) + 1` from below for the
/// Impish seat (even `n`), `4 ceil(n/16)` from above for the Admirable seat
/// (odd `n`).
pub fn segment_bound(n: usize) -> i32 {
    if n % 2 == 0 {
        2 * (n / 16) as i32 + 1
    } else {
        4 * n.div_ceil(16) as i32
    }
}

fn segment_ok(n: usize, payoff: i32) -> bool {
    if n % 2 == 0 {
        payoff >= segment_bound(n)
    } else {
        payoff <= segment_bound(n)
    }
}

fn segment_seat(n: usize) -> Player {
    if n % 2 == 0 {
        I
    } else {
        A
    }
}

/// The 16-block segment strategy on `P_n` against random and greedy
/// opponents (danger opponents for the Admirable seat).
pub fn segment_playouts(n: usize, games: usize, seed: u64) -> Result<PlayoutSummary, ExperimentError> {
    let g = path(n)?;
    let spec = GameSpec::balance(A);
    let seat = segment_seat(n);
    let segment = SegmentPath::new(n, 16, seat, spec)?;
    let seeds: Vec<u64> = seed_stream(seed, 4 + n as u64).take(games).collect();
    // Sequential: the block solvers are shared and mostly hit their tables.
    let outcomes = seeds
        .iter()
        .enumerate()
        .map(|(i, &s)| {
            let mut ours = segment.clone();
            let mut opponent: Box<dyn Strategy> = match (seat, i % 2) {
                (I, 0) => Box::new(RandomMoves::new(A, s)),
                (I, _) => Box::new(GreedyAdmirable),
                (_, 0) => Box::new(RandomMoves::new(I, s)),
                (_, _) => Box::new(DangerImpish),
            };
            let record = match seat {
                I => play_game_with(&g, spec, opponent.as_mut(), &mut ours, |_, _, _, _| {})?,
                _ => play_game_with(&g, spec, &mut ours, opponent.as_mut(), |_, _, _, _| {})?,
            };
            let failure = (!segment_ok(n, record.payoff))
                .then(|| format!("P_{n} game {i} (seed {s}) vs {}: payoff {}", opponent.name(), record.payoff));
            Ok(GameOutcome { checked: 1, failure })
        })
        .collect();
    let relation = if n % 2 == 0 { ">=" } else { "<=" };
    collect(
        "segment16",
        format!("P_{n}, {games} games, segment16 as {seat}"),
        format!("final score {relation} {}", segment_bound(n)),
        outcomes,
    )
}

/// Exact worst case of the segment strategy on `P_n`.
pub fn segment_adversary(n: usize) -> Result<i32, ExperimentError> {
    let g: Graph = path(n)?;
    let spec = GameSpec::balance(A);
    let s = SegmentPath::new(n, 16, segment_seat(n), spec)?;
    Ok(evaluate_guarantee(&g, spec, &s)?)
}

pub(super) fn segment_adversary_ok(n: usize, value: i32) -> bool {
    segment_ok(n, value)
}
