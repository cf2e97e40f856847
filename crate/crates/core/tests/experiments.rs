use balance_core::experiments::{
    counterexample_search, path_table_csv, path_tables, random_expectation, segment_bound, verify, verify_paths,
    HuntProblem, HuntSource, VerifyParams, PATH_CHECK_IDS,
};
use balance_core::graph::{graph_from_code, labelled_graph_count, Graph};
use balance_core::solver::{game_value, SolveOptions};
use balance_core::{GameSpec, Player, Variant};

// Published path values, n = 1..18: balance (TABLE1) and cordiality (TABLE2).
const TABLE1_A: [i32; 18] = [0, 1, 0, 1, 2, 1, 2, 1, 2, 1, 4, 1, 4, 1, 4, 3, 4, 3];
const TABLE1_I: [i32; 18] = [0, 1, 0, 1, 0, 1, 0, 3, 0, 3, 0, 3, 2, 3, 2, 3, 2, 5];
const TABLE2_A: [i32; 18] = [0, 1, 0, 1, 2, 1, 2, 3, 2, 1, 4, 1, 4, 1, 4, 3, 4, 3];
const TABLE2_I: [i32; 18] = [0, 1, 0, 1, 2, 1, 2, 3, 2, 3, 2, 3, 2, 3, 2, 3, 2, 5];

#[test]
fn path_tables_match_published_values_to_14() {
    for (variant, a, i) in [(Variant::Balance, TABLE1_A, TABLE1_I), (Variant::Cordiality, TABLE2_A, TABLE2_I)] {
        let t = path_tables(14, variant, &SolveOptions::new());
        assert_eq!(t.error, None);
        for n in 1..=14 {
            assert_eq!(t.get(n, Player::Admirable), Some(a[n - 1]), "{variant} n={n} A");
            assert_eq!(t.get(n, Player::Impish), Some(i[n - 1]), "{variant} n={n} I");
        }
        let csv = path_table_csv(&t);
        assert_eq!(csv.lines().count(), 15);
        assert_eq!(csv.lines().nth(5), Some(format!("5,{},{}", a[4], i[4]).as_str()));
    }
}

#[test]
fn path_checks_pass_on_published_tables_except_the_n8_corollary() {
    let b = path_tables(14, Variant::Balance, &SolveOptions::new());
    let c = path_tables(14, Variant::Cordiality, &SolveOptions::new());
    for id in PATH_CHECK_IDS {
        let reports = verify_paths(id, &b, &c).unwrap();
        assert!(!reports.is_empty(), "{id}");
        let ok = reports.iter().all(|r| r.pass);
        if id == "path_n8_corollary" {
            assert!(!ok, "the corollary fails on the table itself at n = 8");
        } else {
            assert!(ok, "{id}: {:?}", reports.iter().find(|r| !r.pass));
        }
    }
}

#[test]
fn expectation_identity_holds_exactly_over_all_graphs_on_four_vertices() {
    // Complementation is a bijection of G(n, 1/2), so E[b^A + b^I] = floor(n/2).
    let n = 4;
    let count = labelled_graph_count(n).unwrap();
    let total: i32 = (0..count)
        .map(|c| {
            let g = graph_from_code(n, c).unwrap();
            game_value(&g, GameSpec::balance(Player::Admirable)) + game_value(&g, GameSpec::balance(Player::Impish))
        })
        .sum();
    assert_eq!(total as u64, count * (n as u64 / 2));
}

#[test]
fn random_expectation_is_near_half_n_and_reproducible() {
    let o = SolveOptions::new();
    let s = random_expectation(7, 200, 99, &o).unwrap();
    assert_eq!(s.expected_sum, 3.0);
    assert!(s.identity_failures.is_empty());
    assert!(s.order_failures.is_empty());
    assert!(s.mean_within(4.0), "{s:?}");
    assert_eq!(random_expectation(7, 200, 99, &o).unwrap(), s);
}

fn parse_witness(w: &str) -> Graph {
    let (n, edges) = w.strip_prefix("n=").unwrap().split_once(" edges=[").unwrap();
    let edges = edges.strip_suffix(']').unwrap();
    let pairs = edges.split_whitespace().map(|e| {
        let (u, v) = e.split_once('-').unwrap();
        (u.parse().unwrap(), v.parse().unwrap())
    });
    Graph::from_edges(n.parse().unwrap(), pairs).unwrap()
}

#[test]
fn hunt_witnesses_reproduce_their_values() {
    let o = SolveOptions::new();
    let r = counterexample_search(HuntProblem::MinBalanceA, &HuntSource::Exhaustive(5), &o).unwrap();
    assert_eq!(r.searched, 1024);
    let e = &r.extremes[0];
    let g = parse_witness(&e.witness);
    assert_eq!(game_value(&g, GameSpec::balance(Player::Admirable)), e.value);
    // No graph on five vertices goes below the minimum found.
    let min = (0..1024)
        .map(|c| game_value(&graph_from_code(5, c).unwrap(), GameSpec::balance(Player::Admirable)))
        .min()
        .unwrap();
    assert_eq!(e.value, min);

    let r = counterexample_search(HuntProblem::CordialityGap, &HuntSource::Random { n: 7, samples: 30, seed: 3 }, &o).unwrap();
    assert_eq!(r.extremes.len(), 2);
    for (e, start) in r.extremes.iter().zip([Player::Admirable, Player::Impish]) {
        let g = parse_witness(&e.witness);
        assert_eq!(game_value(&g, GameSpec::cordiality(start)) - game_value(&g, GameSpec::balance(start)), e.value);
    }
    assert!(counterexample_search(HuntProblem::MaxExcess, &HuntSource::Exhaustive(7), &o).is_err());
}

#[test]
fn verify_output_is_reproducible() {
    let p = VerifyParams {
        exhaustive_n: 4,
        random_orders: vec![6],
        samples: 5,
        max_path_n: 8,
        playouts: 30,
        playout_max_n: 8,
        segment_orders: vec![],
        segment_adversary_orders: vec![],
        ..VerifyParams::default()
    };
    for id in ["complements", "edge_continuity", "greedy_pair_step", "danger_potential", "mnk"] {
        let a: Vec<String> = verify(id, &p).unwrap().iter().map(|r| r.record()).collect();
        let b: Vec<String> = verify(id, &p).unwrap().iter().map(|r| r.record()).collect();
        assert_eq!(a, b, "{id}");
        assert!(a.iter().all(|l| l.contains("pass=true")), "{id}: {a:?}");
    }
}

#[test]
fn segment_bounds() {
    assert_eq!(segment_bound(16), 3);
    assert_eq!(segment_bound(32), 5);
    assert_eq!(segment_bound(17), 8);
    assert_eq!(segment_bound(33), 12);
}
