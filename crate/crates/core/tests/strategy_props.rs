use balance_core::game::vertex_score_raw;
use balance_core::graph::{complete, edgeless, path, petersen, random_gnp};
use balance_core::mnk::{MnkSpec, Side};
use balance_core::solver::game_value;
use balance_core::strategies::{
    evaluate_guarantee, from_name, play_game, play_game_with, CordialityGreedy, DangerAccount, DangerImpish,
    GreedyAdmirable, Optimal, Pairing, RandomMoves, SegmentPath,
};
use balance_core::{GameSpec, GameState, Graph, Player};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const A: Player = Player::Admirable;
const I: Player = Player::Impish;

/// `2^-score * sum over unlabeled v of 2^-s(v)` in floating point; exact for
/// the small exponents reached here.
fn danger_f64(g: &Graph, state: &GameState) -> f64 {
    let sum: f64 = state
        .legal_moves(g)
        .iter()
        .map(|v| 2f64.powi(-vertex_score_raw(g, v, state.s0(), state.s1())))
        .sum();
    2f64.powi(-state.score()) * sum
}

fn even_graph(max_half: usize) -> impl Strategy<Value = Graph> {
    (1..=max_half, any::<u64>()).prop_map(|(h, seed)| random_gnp(2 * h, seed).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn greedy_pair_step(g in even_graph(7), seed in any::<u64>()) {
        let spec = GameSpec::balance(A);
        let mut opp: Box<dyn balance_core::strategies::Strategy> =
            if seed % 2 == 0 { Box::new(RandomMoves::new(I, seed)) } else { Box::new(DangerImpish) };
        let mut k = 0usize;
        let mut worst = i32::MIN;
        play_game_with(&g, spec, &mut GreedyAdmirable, opp.as_mut(), |_, _, _, after| {
            k += 1;
            if k % 2 == 0 {
                worst = worst.max(2 * after.score() - k as i32);
            }
        }).unwrap();
        prop_assert!(worst <= 0, "score exceeded k/2 by {}", worst);
    }

    #[test]
    fn danger_potential_stays_bounded(h in 1usize..=7, odd in any::<bool>(), seed in any::<u64>()) {
        // A-start on even n: Dang <= n-1 after odd move counts.
        // I-start on odd n: Dang <= n after even move counts below n.
        let (n, spec, parity, cap) = if odd {
            (2 * h + 1, GameSpec::balance(I), 0, 2 * h + 1)
        } else {
            (2 * h, GameSpec::balance(A), 1, 2 * h - 1)
        };
        let g = random_gnp(n, seed).unwrap();
        let mut opp: Box<dyn balance_core::strategies::Strategy> =
            if seed % 2 == 0 { Box::new(RandomMoves::new(A, seed)) } else { Box::new(GreedyAdmirable) };
        if odd && seed % 2 == 1 {
            // Greedy Admirable is defined for the Admirable-start game only.
            opp = Box::new(RandomMoves::new(A, !seed));
        }
        let mut acc = DangerAccount::new(&g);
        let mut k = 0usize;
        let mut failures = Vec::new();
        play_game_with(&g, spec, opp.as_mut(), &mut DangerImpish, |_, p, v, after| {
            acc.apply(&g, p, v);
            k += 1;
            let d = danger_f64(&g, after);
            if (acc.value().to_f64() - d).abs() > 1e-9 * d.max(1.0) {
                failures.push(format!("k={k}: account {} vs {d}", acc.value()));
            }
            if k < n && k % 2 == parity && d > cap as f64 {
                failures.push(format!("k={k}: Dang {d} > {cap}"));
            }
        }).unwrap();
        prop_assert!(failures.is_empty(), "{:?}", failures);
    }

    #[test]
    fn cordiality_greedy_window(g in even_graph(7), seed in any::<u64>()) {
        let spec = GameSpec::cordiality(A);
        let delta = g.max_degree() as i32;
        let mut k = 0i32;
        let mut bad = None;
        play_game_with(&g, spec, &mut CordialityGreedy, &mut RandomMoves::new(I, seed), |_, _, _, after| {
            k += 1;
            if k % 2 == 0 && after.score().abs() > k / 2 + 2 * delta {
                bad.get_or_insert((k, after.score()));
            }
        }).unwrap();
        prop_assert!(bad.is_none(), "{:?}", bad);
    }

    #[test]
    fn danger_account_matches_recount(n in 1usize..=12, seed in any::<u64>()) {
        let g = random_gnp(n, seed).unwrap();
        let mut acc = DangerAccount::new(&g);
        prop_assert_eq!(acc.value().to_f64(), n as f64);
        play_game_with(&g, GameSpec::balance(A), &mut RandomMoves::new(A, seed), &mut RandomMoves::new(I, !seed), |_, p, v, after| {
            acc.apply(&g, p, v);
            assert_eq!(acc, DangerAccount::from_state(&g, after));
        }).unwrap();
        prop_assert!(acc.value().is_zero());
    }
}

#[test]
fn fixed_strategy_guarantees_bracket_the_value() {
    // Admirable minimises, so a fixed Admirable strategy can only do worse
    // (higher) than the value and a fixed Impish strategy only lower.
    for seed in 0..40u64 {
        let n = 4 + 2 * (seed as usize % 3);
        let g = random_gnp(n, seed).unwrap();
        let ba = game_value(&g, GameSpec::balance(A));
        let greedy = evaluate_guarantee(&g, GameSpec::balance(A), &GreedyAdmirable).unwrap();
        assert!(ba <= greedy && greedy <= (n / 2) as i32, "seed {seed}: b^A={ba} greedy={greedy}");

        let danger = evaluate_guarantee(&g, GameSpec::balance(A), &DangerImpish).unwrap();
        assert!(danger <= ba && (danger as f64) >= -(n as f64).log2(), "seed {seed}: b^A={ba} danger={danger}");

        let ca = game_value(&g, GameSpec::cordiality(A));
        let cg = evaluate_guarantee(&g, GameSpec::cordiality(A), &CordialityGreedy).unwrap();
        assert!(ca <= cg && cg <= (n / 2 + 2 * g.max_degree()) as i32, "seed {seed}: c^A={ca} cgreedy={cg}");
    }
}

#[test]
fn danger_on_petersen() {
    assert_eq!(evaluate_guarantee(&petersen(), GameSpec::balance(A), &DangerImpish), Ok(-1));
}

#[test]
fn mirrored_optimal_play_attains_the_value() {
    for seed in 0..30u64 {
        let g = random_gnp(3 + seed as usize % 5, seed).unwrap();
        for spec in [GameSpec::balance(A), GameSpec::balance(I)] {
            let value = game_value(&g, spec);
            for seat in [A, I] {
                let s = from_name("mirror(optimal)", &g, spec, seat, 0).unwrap();
                assert_eq!(s.seat(), seat);
                assert_eq!(evaluate_guarantee(&g, spec, s.as_ref()), Ok(value), "seed {seed} {spec} {seat}");
            }
        }
    }
}

#[test]
fn imagined_start_transfers_the_other_value() {
    // Admirable in the Impish-start game imagines it opened first.
    for seed in 0..30u64 {
        let n = 3 + seed as usize % 6;
        let g = random_gnp(n, seed).unwrap();
        let delta = g.max_degree() as i32;
        let spec = GameSpec::balance(I);
        let (ba, bi) = (game_value(&g, GameSpec::balance(A)), game_value(&g, spec));
        let s = from_name("imagine(optimal)", &g, spec, A, 0).unwrap();
        let got = evaluate_guarantee(&g, spec, s.as_ref()).unwrap();
        let slack = if n % 2 == 1 { 2 * delta } else { 4 * delta };
        assert!(bi <= got && got <= ba + slack, "seed {seed}: {got} outside [{bi}, {ba} + {slack}]");
    }
}

#[test]
fn pairing_guarantees_k_on_constructions() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for trial in 0..40 {
        let n = 4 + trial % 5;
        let k = trial % (n / 2 + 1);
        let side = if trial % 2 == 0 { Side::Lower } else { Side::Upper };
        let spec = MnkSpec::random(n, k, side, &mut rng);
        let g = spec.build().unwrap();
        for game in [GameSpec::balance(A), GameSpec::balance(I)] {
            assert_eq!(game_value(&g, game), k as i32, "{spec:?}");
            for seat in [A, I] {
                assert_eq!(evaluate_guarantee(&g, game, &Pairing::new(seat, n)), Ok(k as i32), "{spec:?} {seat}");
            }
        }
    }
}

#[test]
fn play_game_examples() {
    let p9 = path(9).unwrap();
    let r = play_game(&p9, GameSpec::balance(A), &mut Optimal::new(A), &mut Optimal::new(I)).unwrap();
    assert_eq!(r.payoff, 2);
    let k6 = complete(6).unwrap();
    for seed in 0..50 {
        let r = play_game(&k6, GameSpec::balance(A), &mut GreedyAdmirable, &mut RandomMoves::new(I, seed)).unwrap();
        assert_eq!(r.payoff, 3);
    }
    let e7 = edgeless(7).unwrap();
    for seed in 0..10 {
        let r = play_game(&e7, GameSpec::balance(I), &mut RandomMoves::new(A, seed), &mut RandomMoves::new(I, seed + 1)).unwrap();
        assert_eq!(r.payoff, 0);
    }
}

#[test]
fn segment_strategy_on_p16_is_exact() {
    let g = path(16).unwrap();
    let spec = GameSpec::balance(A);
    let s = SegmentPath::new(16, 16, I, spec).unwrap();
    assert_eq!(evaluate_guarantee(&g, spec, &s), Ok(game_value(&g, spec)));
    assert_eq!(game_value(&g, spec), 3);
}
