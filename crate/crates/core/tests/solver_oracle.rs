use std::collections::HashMap;

use balance_core::graph::{complete, complete_bipartite, cycle, graph_from_code, labelled_graph_count, path, petersen, random_gnp};
use balance_core::solver::{brute_force, game_value, reversal, rotations, solve, solve_with_symmetry, SolveOptions};
use balance_core::{GameSpec, Graph, Player, Variant, VertexSet};
use proptest::prelude::*;

/// Memoised minimax written against the definitions only: the mover is
/// fixed by parity of the move count, Admirable minimises and Impish
/// maximises the edge score (or its absolute value).
struct Oracle<'a> {
    g: &'a Graph,
    spec: GameSpec,
    memo: HashMap<(u64, u64), i32>,
}

impl Oracle<'_> {
    fn value(g: &Graph, spec: GameSpec) -> i32 {
        Oracle { g, spec, memo: HashMap::new() }.eval(0, 0)
    }

    fn eval(&mut self, s0: u64, s1: u64) -> i32 {
        let n = self.g.n();
        let played = (s0 | s1).count_ones() as usize;
        if played == n {
            let mut score = 0i32;
            for (u, v) in self.g.edges() {
                let side = |x: usize| s1 >> x & 1;
                score += if side(u) != side(v) { 1 } else { -1 };
            }
            return match self.spec.variant {
                Variant::Balance => score,
                Variant::Cordiality => score.abs(),
            };
        }
        if let Some(&v) = self.memo.get(&(s0, s1)) {
            return v;
        }
        let mover = if played % 2 == 0 { self.spec.start } else { self.spec.start.other() };
        let children = (0..n).filter(|&v| (s0 | s1) >> v & 1 == 0).map(|v| match mover {
            Player::Admirable => self.eval(s0 | 1 << v, s1),
            Player::Impish => self.eval(s0, s1 | 1 << v),
        });
        let best = match mover {
            Player::Admirable => children.collect::<Vec<_>>().into_iter().min(),
            Player::Impish => children.collect::<Vec<_>>().into_iter().max(),
        }
        .unwrap();
        self.memo.insert((s0, s1), best);
        best
    }
}

fn all_option_sets() -> Vec<SolveOptions> {
    let mut out = Vec::new();
    for alpha_beta in [true, false] {
        for move_ordering in [true, false] {
            out.push(SolveOptions { alpha_beta, move_ordering, ..SolveOptions::new() });
        }
    }
    out
}

#[test]
fn exhaustive_small_graphs_match_oracle() {
    for n in 1..=5 {
        for code in 0..labelled_graph_count(n).unwrap() {
            let g = graph_from_code(n, code).unwrap();
            for spec in GameSpec::ALL {
                let want = Oracle::value(&g, spec);
                assert_eq!(game_value(&g, spec), want, "n={n} code={code} {spec}");
                assert_eq!(brute_force(&g, spec), Ok(want), "n={n} code={code} {spec}");
            }
        }
    }
}

#[test]
fn random_graphs_match_oracle() {
    for n in 6..=8 {
        for seed in 0..500u64 {
            let g = random_gnp(n, 1000 * n as u64 + seed).unwrap();
            for spec in GameSpec::ALL {
                assert_eq!(game_value(&g, spec), Oracle::value(&g, spec), "n={n} seed={seed} {spec}");
            }
        }
    }
}

#[test]
fn named_values() {
    let a = GameSpec::balance(Player::Admirable);
    let i = GameSpec::balance(Player::Impish);
    assert_eq!(game_value(&path(5).unwrap(), a), 2);
    assert_eq!(game_value(&path(8).unwrap(), i), 3);
    let c5 = cycle(5).unwrap();
    assert_eq!((game_value(&c5, a), game_value(&c5, i)), (3, -1));
    assert_eq!(game_value(&petersen(), a), Oracle::value(&petersen(), a));
    for n in 1..=9 {
        // Every full play on K_n splits it as evenly as possible.
        let k = complete(n).unwrap();
        assert_eq!(game_value(&k, a), Oracle::value(&k, a));
        assert_eq!(game_value(&k, a), (n / 2) as i32);
    }
    for (p, q) in [(2, 3), (3, 3), (3, 4), (4, 4)] {
        let g = complete_bipartite(p, q).unwrap();
        for spec in GameSpec::ALL {
            assert_eq!(game_value(&g, spec), Oracle::value(&g, spec), "K_{p},{q} {spec}");
        }
    }
}

#[test]
fn repeated_solves_are_identical() {
    let g = random_gnp(10, 77).unwrap();
    for spec in GameSpec::ALL {
        let first = solve(&g, spec, SolveOptions::new()).unwrap();
        for _ in 0..3 {
            let again = solve(&g, spec, SolveOptions::new()).unwrap();
            assert_eq!((again.value, again.best_first_move, again.nodes), (first.value, first.best_first_move, first.nodes));
        }
    }
}

#[test]
fn symmetry_does_not_change_values() {
    for n in 2..=13 {
        let p = path(n).unwrap();
        let c = cycle(n.max(3)).unwrap();
        for spec in GameSpec::ALL {
            let plain = solve(&p, spec, SolveOptions::new()).unwrap().value;
            assert_eq!(solve_with_symmetry(&p, spec, vec![reversal(n)], SolveOptions::new()).unwrap().value, plain);
            let plain = solve(&c, spec, SolveOptions::new()).unwrap().value;
            assert_eq!(solve_with_symmetry(&c, spec, rotations(n.max(3)), SolveOptions::new()).unwrap().value, plain);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn options_do_not_change_value_or_move(n in 1usize..=10, seed in any::<u64>()) {
        let g = random_gnp(n, seed).unwrap();
        for spec in GameSpec::ALL {
            let results: Vec<_> = all_option_sets()
                .into_iter()
                .map(|o| {
                    let r = solve(&g, spec, o).unwrap();
                    (r.value, r.best_first_move)
                })
                .collect();
            prop_assert!(results.windows(2).all(|w| w[0] == w[1]), "{}: {:?}", spec, results);
        }
    }

    #[test]
    fn relabelling_preserves_value(n in 2usize..=9, seed in any::<u64>(), shift in 1usize..8) {
        let g = random_gnp(n, seed).unwrap();
        let perm: Vec<usize> = (0..n).map(|v| (v * (2 * shift + 1) + shift) % n).collect();
        prop_assume!(perm.iter().copied().collect::<VertexSet>().len() == n);
        let h = Graph::from_edges(n, g.edges().map(|(u, v)| (perm[u], perm[v]))).unwrap();
        for spec in GameSpec::ALL {
            prop_assert_eq!(game_value(&g, spec), game_value(&h, spec));
        }
    }

    #[test]
    fn cordiality_dominates_balance(n in 1usize..=10, seed in any::<u64>()) {
        let g = random_gnp(n, seed).unwrap();
        for start in [Player::Admirable, Player::Impish] {
            prop_assert!(game_value(&g, GameSpec::cordiality(start)) >= game_value(&g, GameSpec::balance(start)));
        }
    }
}

