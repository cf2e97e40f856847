//! One check per proven statement, run over exhaustive and sampled graph
//! collections, paths and the named families.

use std::cell::OnceCell;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::playouts::{segment_adversary_ok, segment_bound};
use super::{
    all_values, balance_values, describe, path_tables, seed_stream, value, CheckReport, ExperimentError,
    PathTable, PlayoutSummary, Values, VerifyParams,
};
use crate::bounds::{balance_global_bounds_hold, cordiality_global_bound_holds};
use crate::bitset::VertexSet;
use crate::game::{GameSpec, Player, Variant};
use crate::graph::{complete, complete_bipartite, cycle, graph_from_code, labelled_graph_count, petersen, random_gnp, Graph};
use crate::mnk::{MnkSpec, Side};
use crate::solver::{brute_force, BRUTE_FORCE_MAX_ORDER};
use crate::strategies::{evaluate_guarantee, Pairing};
use crate::trees::{exhaustive_trees, random_trees};

use super::playouts::{
    cordiality_window_playouts, danger_playouts, greedy_pair_step_playouts, segment_adversary, segment_playouts,
};

const A: Player = Player::Admirable;
const I: Player = Player::Impish;

/// Every check identifier accepted by [`verify`], in the order `all` runs them.
pub const CHECK_IDS: [&str; 27] = [
    "oracle",
    "complements",
    "start_continuity",
    "edge_continuity",
    "global_bounds",
    "cordiality_ge_balance",
    "cordiality_global",
    "mnk",
    "petersen",
    "c5",
    "pendant_pair",
    "trees",
    "complete",
    "bipartite",
    "path_rec1",
    "path_rec4",
    "path_rec6",
    "path_rec16",
    "path_window16",
    "path_n8_corollary",
    "path_bounds",
    "sandwich",
    "cordiality_paths",
    "greedy_pair_step",
    "danger_potential",
    "cordiality_window",
    "segment16",
];

/// Checks that only read the two path tables.
pub const PATH_CHECK_IDS: [&str; 9] = [
    "path_rec1",
    "path_rec4",
    "path_rec6",
    "path_rec16",
    "path_window16",
    "path_n8_corollary",
    "path_bounds",
    "sandwich",
    "cordiality_paths",
];

/// Individual failure reports kept per check; the summary counts all.
const MAX_FAILURE_REPORTS: usize = 20;

/// Runs one check, or every check for `"all"`.
pub fn verify(check_id: &str, params: &VerifyParams) -> Result<Vec<CheckReport>, ExperimentError> {
    let ctx = Ctx::new(params);
    if check_id == "all" {
        let mut out = Vec::new();
        for id in CHECK_IDS {
            out.extend(ctx.run(id)?);
        }
        return Ok(out);
    }
    if !CHECK_IDS.contains(&check_id) {
        return Err(ExperimentError::UnknownCheck(check_id.to_string()));
    }
    ctx.run(check_id)
}

/// Runs a path check against tables the caller already holds.
pub fn verify_paths(check_id: &str, balance: &PathTable, cordiality: &PathTable) -> Result<Vec<CheckReport>, ExperimentError> {
    if !PATH_CHECK_IDS.contains(&check_id) {
        return Err(ExperimentError::UnknownCheck(check_id.to_string()));
    }
    Ok(path_check(check_id, balance, cordiality))
}

/// Accumulates per-instance outcomes into a summary report plus the first
/// few failures.
struct Tally {
    check_id: &'static str,
    scope: String,
    expected: String,
    instances: usize,
    failed: usize,
    failures: Vec<CheckReport>,
    started: Instant,
}

impl Tally {
    fn new(check_id: &'static str, scope: impl Into<String>, expected: impl Into<String>) -> Self {
        Tally {
            check_id,
            scope: scope.into(),
            expected: expected.into(),
            instances: 0,
            failed: 0,
            failures: Vec::new(),
            started: Instant::now(),
        }
    }

    fn add(&mut self, pass: bool, instance: impl FnOnce() -> String, observed: impl FnOnce() -> String) {
        self.instances += 1;
        if pass {
            return;
        }
        self.failed += 1;
        if self.failures.len() < MAX_FAILURE_REPORTS {
            self.failures.push(CheckReport {
                check_id: self.check_id.to_string(),
                instance: instance(),
                expected: self.expected.clone(),
                observed: observed(),
                pass: false,
                elapsed: self.started.elapsed(),
            });
        }
    }

    fn finish(self) -> Vec<CheckReport> {
        let mut out = vec![CheckReport {
            check_id: self.check_id.to_string(),
            instance: self.scope,
            expected: self.expected,
            observed: format!("{} instances, {} failed", self.instances, self.failed),
            pass: self.failed == 0,
            elapsed: self.started.elapsed(),
        }];
        out.extend(self.failures);
        out
    }
}

/// A graph of the shared corpus with its four values.
struct Entry {
    label: String,
    graph: Graph,
    values: Values,
}

impl Entry {
    fn instance(&self) -> String {
        format!("{} {}", self.label, describe(&self.graph))
    }
}

/// Shared inputs, computed on first use so that `all` solves them once.
struct Ctx<'a> {
    p: &'a VerifyParams,
    /// Exhaustive corpus, indexed by order and then by edge code.
    exhaustive: OnceCell<Vec<Vec<Entry>>>,
    random: OnceCell<Vec<Entry>>,
    paths: OnceCell<(PathTable, PathTable)>,
}

fn lazy<T>(cell: &OnceCell<T>, init: impl FnOnce() -> Result<T, ExperimentError>) -> Result<&T, ExperimentError> {
    if let Some(v) = cell.get() {
        return Ok(v);
    }
    let v = init()?;
    Ok(cell.get_or_init(|| v))
}

fn collect_ordered<T: Send>(items: Vec<Result<T, ExperimentError>>) -> Result<Vec<T>, ExperimentError> {
    items.into_iter().collect()
}

impl<'a> Ctx<'a> {
    fn new(p: &'a VerifyParams) -> Self {
        Ctx { p, exhaustive: OnceCell::new(), random: OnceCell::new(), paths: OnceCell::new() }
    }

    fn exhaustive(&self) -> Result<&Vec<Vec<Entry>>, ExperimentError> {
        lazy(&self.exhaustive, || {
            (0..=self.p.exhaustive_n)
                .map(|n| {
                    let count = labelled_graph_count(n)
                        .filter(|_| n <= 7)
                        .ok_or_else(|| ExperimentError::Invalid(format!("exhaustive order {n} is too large")))?;
                    let entries = (0..count)
                        .into_par_iter()
                        .map(|code| {
                            let graph = graph_from_code(n, code)?;
                            let values = all_values(&graph, &self.p.options)?;
                            Ok(Entry { label: format!("n={n} code={code}"), graph, values })
                        })
                        .collect();
                    collect_ordered(entries)
                })
                .collect()
        })
    }

    fn random(&self) -> Result<&Vec<Entry>, ExperimentError> {
        lazy(&self.random, || {
            let jobs: Vec<(usize, u64)> = self
                .p
                .random_orders
                .iter()
                .flat_map(|&n| seed_stream(self.p.seed, 10 + n as u64).take(self.p.samples).map(move |s| (n, s)))
                .collect();
            let entries = jobs
                .par_iter()
                .map(|&(n, s)| {
                    let graph = random_gnp(n, s)?;
                    let values = all_values(&graph, &self.p.options)?;
                    Ok(Entry { label: format!("gnp(n={n}, seed={s})"), graph, values })
                })
                .collect();
            collect_ordered(entries)
        })
    }

    /// Exhaustive entries (orders 1 and up) followed by random ones.
    fn corpus(&self) -> Result<Vec<&Entry>, ExperimentError> {
        let mut out: Vec<&Entry> = self.exhaustive()?.iter().skip(1).flatten().collect();
        out.extend(self.random()?);
        Ok(out)
    }

    fn corpus_scope(&self) -> String {
        format!(
            "exhaustive n<={}, {} x G(n,1/2) for n in {:?}, seed {}",
            self.p.exhaustive_n, self.p.samples, self.p.random_orders, self.p.seed
        )
    }

    fn paths(&self) -> Result<&(PathTable, PathTable), ExperimentError> {
        lazy(&self.paths, || {
            let mut pair = [Variant::Balance, Variant::Cordiality]
                .map(|v| path_tables(self.p.max_path_n, v, &self.p.options));
            for t in &mut pair {
                if let Some(e) = t.error.take() {
                    return Err(e);
                }
            }
            let [b, c] = pair;
            Ok((b, c))
        })
    }

    fn run(&self, id: &str) -> Result<Vec<CheckReport>, ExperimentError> {
        match id {
            "oracle" => self.oracle(),
            "complements" => self.complements(),
            "start_continuity" => self.corpus_check(
                "start_continuity",
                "n even: b^A <= b^I <= b^A + 4D; n odd: b^A - 2D <= b^I <= b^A + 2D",
                |e| {
                    let (a, i, d) = (e.values.ba, e.values.bi, e.graph.max_degree() as i32);
                    if e.graph.n() % 2 == 0 {
                        a <= i && i <= a + 4 * d
                    } else {
                        a - 2 * d <= i && i <= a + 2 * d
                    }
                },
            ),
            "edge_continuity" => self.edge_continuity(),
            "global_bounds" => self.corpus_check(
                "global_bounds",
                "A-start: n even -log2 n <= b <= n/2, n odd 0 <= b <= n/2 + log2 n; I-start mirrored",
                |e| {
                    let n = e.graph.n();
                    balance_global_bounds_hold(n, A, e.values.ba) && balance_global_bounds_hold(n, I, e.values.bi)
                },
            ),
            "cordiality_ge_balance" => self.corpus_check("cordiality_ge_balance", "c^A >= b^A and c^I >= b^I", |e| {
                e.values.ca >= e.values.ba && e.values.ci >= e.values.bi
            }),
            "cordiality_global" => self.corpus_check(
                "cordiality_global",
                "c^A <= n/2 + 2D (n even) or + 3D (n odd); c^I <= n/2 + 3D (n even) or + 2D (n odd)",
                |e| {
                    let (n, d) = (e.graph.n(), e.graph.max_degree());
                    cordiality_global_bound_holds(n, A, d, e.values.ca) && cordiality_global_bound_holds(n, I, d, e.values.ci)
                },
            ),
            "mnk" => self.mnk(),
            "petersen" => named("petersen", "petersen", &petersen(), &self.p.options, &[(A, -1)]),
            "c5" => named("c5", "cycle:5", &cycle(5)?, &self.p.options, &[(A, 3), (I, -1)]),
            "pendant_pair" => self.pendant_pair(),
            "trees" => self.trees(),
            "complete" => self.complete(),
            "bipartite" => self.bipartite(),
            "greedy_pair_step" => Ok(playout_reports(greedy_pair_step_playouts(
                self.p.playouts,
                self.p.playout_max_n,
                self.p.seed,
            )?)),
            "danger_potential" => {
                Ok(playout_reports(danger_playouts(self.p.playouts, self.p.playout_max_n, self.p.seed)?))
            }
            "cordiality_window" => Ok(playout_reports(cordiality_window_playouts(
                self.p.playouts,
                self.p.playout_max_n,
                self.p.seed,
            )?)),
            "segment16" => self.segment16(),
            path_id => {
                let (b, c) = self.paths()?;
                Ok(path_check(path_id, b, c))
            }
        }
    }

    fn corpus_check(
        &self,
        id: &'static str,
        expected: &str,
        holds: impl Fn(&Entry) -> bool,
    ) -> Result<Vec<CheckReport>, ExperimentError> {
        let mut t = Tally::new(id, self.corpus_scope(), expected);
        for e in self.corpus()? {
            t.add(holds(e), || e.instance(), || format!("{:?} D={}", e.values, e.graph.max_degree()));
        }
        Ok(t.finish())
    }

    fn oracle(&self) -> Result<Vec<CheckReport>, ExperimentError> {
        let entries: Vec<&Entry> =
            self.corpus()?.into_iter().filter(|e| e.graph.n() <= BRUTE_FORCE_MAX_ORDER.min(8)).collect();
        let brute: Vec<Result<Values, ExperimentError>> = entries
            .par_iter()
            .map(|e| {
                let [ba, bi, ca, ci] = GameSpec::ALL.map(|spec| brute_force(&e.graph, spec));
                Ok(Values { ba: ba?, bi: bi?, ca: ca?, ci: ci? })
            })
            .collect();
        let mut t = Tally::new(
            "oracle",
            format!("{} (orders <= 8)", self.corpus_scope()),
            "solve = brute_force for all four games",
        );
        for (e, b) in entries.iter().zip(brute) {
            let b = b?;
            t.add(b == e.values, || e.instance(), || format!("solve {:?} brute {:?}", e.values, b));
        }
        Ok(t.finish())
    }

    fn complements(&self) -> Result<Vec<CheckReport>, ExperimentError> {
        let mut t = Tally::new("complements", self.corpus_scope(), "b^A(G) + b^I(co-G) = floor(n/2)");
        for (n, entries) in self.exhaustive()?.iter().enumerate().skip(1) {
            let full = labelled_graph_count(n).expect("small n") - 1;
            for (code, e) in entries.iter().enumerate() {
                let co = &entries[(full ^ code as u64) as usize];
                let sum = e.values.ba + co.values.bi;
                t.add(sum == (n / 2) as i32, || e.instance(), || format!("b^A={} b^I(co)={}", e.values.ba, co.values.bi));
            }
        }
        let random = self.random()?;
        let co_bi: Vec<Result<i32, ExperimentError>> = random
            .par_iter()
            .map(|e| Ok(value(&e.graph.complement(), GameSpec::balance(I), &self.p.options)?))
            .collect();
        for (e, bi) in random.iter().zip(co_bi) {
            let bi = bi?;
            let n = e.graph.n();
            t.add(e.values.ba + bi == (n / 2) as i32, || e.instance(), || format!("b^A={} b^I(co)={bi}", e.values.ba));
        }
        Ok(t.finish())
    }

    fn edge_continuity(&self) -> Result<Vec<CheckReport>, ExperimentError> {
        let expected = "toggling k edges moves each of b^A, b^I, c^A, c^I by at most k";
        let mut t = Tally::new(
            "edge_continuity",
            format!("{}; every single toggle on the exhaustive part, 1-3 random toggles on the sampled part", self.corpus_scope()),
            expected,
        );
        let within = |x: &Values, y: &Values, k: i32| {
            (x.ba - y.ba).abs() <= k && (x.bi - y.bi).abs() <= k && (x.ca - y.ca).abs() <= k && (x.ci - y.ci).abs() <= k
        };
        for (n, entries) in self.exhaustive()?.iter().enumerate() {
            for (code, e) in entries.iter().enumerate() {
                for bit in 0..n * n.saturating_sub(1) / 2 {
                    let other = &entries[code ^ (1 << bit)];
                    t.add(within(&e.values, &other.values, 1), || e.instance(), || {
                        format!("{:?} vs toggled {} {:?}", e.values, other.label, other.values)
                    });
                }
            }
        }
        let random = self.random()?;
        let toggled: Vec<Result<(Graph, Values, i32), ExperimentError>> = random
            .par_iter()
            .enumerate()
            .map(|(idx, e)| {
                let n = e.graph.n();
                let mut rng = ChaCha8Rng::seed_from_u64(self.p.seed ^ idx as u64);
                rng.set_stream(20);
                let k = 1 + idx % 3;
                let mut h = e.graph.clone();
                let mut used = Vec::new();
                while used.len() < k.min(n * (n - 1) / 2) {
                    let (u, v) = (rng.gen_range(0..n), rng.gen_range(0..n));
                    let pair = (u.min(v), u.max(v));
                    if u != v && !used.contains(&pair) {
                        used.push(pair);
                        h = h.toggle_edge(u, v)?;
                    }
                }
                let values = all_values(&h, &self.p.options)?;
                Ok((h, values, used.len() as i32))
            })
            .collect();
        for (e, r) in random.iter().zip(toggled) {
            let (h, values, k) = r?;
            t.add(within(&e.values, &values, k), || e.instance(), || {
                format!("{:?} vs {k} toggles {} {:?}", e.values, describe(&h), values)
            });
        }
        Ok(t.finish())
    }

    fn mnk(&self) -> Result<Vec<CheckReport>, ExperimentError> {
        let mut jobs = Vec::new();
        let mut rng = ChaCha8Rng::seed_from_u64(self.p.seed);
        rng.set_stream(30);
        for n in 2..=self.p.mnk_max_n {
            for k in 0..=n / 2 {
                for side in [Side::Lower, Side::Upper] {
                    for _ in 0..self.p.mnk_instances {
                        jobs.push((k, MnkSpec::random(n, k, side, &mut rng)));
                    }
                }
            }
        }
        let outcomes: Vec<Result<Option<String>, ExperimentError>> = jobs
            .par_iter()
            .map(|(k, spec)| {
                let g = spec.build()?;
                let k = *k as i32;
                let (ba, bi) = balance_values(&g, &self.p.options)?;
                let mut observed = Vec::new();
                if (ba, bi) != (k, k) {
                    observed.push(format!("b^A={ba} b^I={bi}"));
                }
                // The pairing strategy realises k from either seat.
                if g.n() <= self.p.mnk_pairing_max_n {
                    for start in [A, I] {
                        for seat in [A, I] {
                            let got = evaluate_guarantee(&g, GameSpec::balance(start), &Pairing::new(seat, g.n()))?;
                            if got != k {
                                observed.push(format!("pairing as {seat} in {start}-start guarantees {got}"));
                            }
                        }
                    }
                }
                Ok((!observed.is_empty()).then(|| observed.join("; ")))
            })
            .collect();
        let mut t = Tally::new(
            "mnk",
            format!(
                "{} random M(n,k) per (n,k,centre side), n<={}; pairing guarantees for n<={}, seed {}",
                self.p.mnk_instances, self.p.mnk_max_n, self.p.mnk_pairing_max_n, self.p.seed
            ),
            "b^A = b^I = k; pairing guarantee = k from both seats",
        );
        for ((_, spec), o) in jobs.iter().zip(outcomes) {
            let o = o?;
            t.add(o.is_none(), || format!("mnk:{spec}"), || o.unwrap_or_default());
        }
        Ok(t.finish())
    }

    fn pendant_pair(&self) -> Result<Vec<CheckReport>, ExperimentError> {
        let mut jobs = Vec::new();
        let mut rng = ChaCha8Rng::seed_from_u64(self.p.seed);
        rng.set_stream(40);
        for base in 1..=self.p.pendant_base_max_n {
            for i in 0..self.p.samples {
                let g0 = crate::graph::random_gnp_with(base, &mut rng)?;
                let (u, w) = (base, base + 1);
                let v = rng.gen_range(0..base);
                // Alternate the two cases: u' hangs on u, or u' hangs on v.
                let w_on = if i % 2 == 0 { u } else { v };
                let mut edges: Vec<(usize, usize)> = g0.edges().collect();
                edges.extend([(v, u), (w_on, w)]);
                jobs.push(Graph::from_edges(base + 2, edges)?);
            }
        }
        let outcomes: Vec<Result<(Values, (i32, i32)), ExperimentError>> = jobs
            .par_iter()
            .map(|g| {
                let n = g.n();
                let (ba, bi) = balance_values(g, &self.p.options)?;
                let (sub, _) = g.without_vertices(VertexSet::from_iter([n - 2, n - 1]));
                let sub_values = balance_values(&sub, &self.p.options)?;
                Ok((Values { ba, bi, ca: 0, ci: 0 }, sub_values))
            })
            .collect();
        let mut t = Tally::new(
            "pendant_pair",
            format!(
                "G' ~ G(n,1/2) for n in 1..={}, {} each; u joined to one v of G', u' joined to u or v; seed {}",
                self.p.pendant_base_max_n, self.p.samples, self.p.seed
            ),
            "b^A(G) >= b^A(G - {u,u'}) and b^I(G) >= b^I(G - {u,u'})",
        );
        for (g, o) in jobs.iter().zip(outcomes) {
            let (v, (sa, si)) = o?;
            t.add(v.ba >= sa && v.bi >= si, || describe(g), || {
                format!("b^A={} b^I={} minus pair: b^A={sa} b^I={si}", v.ba, v.bi)
            });
        }
        Ok(t.finish())
    }

    fn trees(&self) -> Result<Vec<CheckReport>, ExperimentError> {
        let mut graphs: Vec<(String, Graph)> = Vec::new();
        for n in 1..=self.p.tree_exhaustive_n {
            graphs.extend(exhaustive_trees(n)?.enumerate().map(|(i, g)| (format!("tree n={n} #{i}"), g)));
        }
        for &n in &self.p.tree_random_orders {
            let seed = seed_stream(self.p.seed, 50 + n as u64).next().expect("infinite stream");
            graphs.extend(
                random_trees(n, seed).take(self.p.tree_samples).enumerate().map(|(i, g)| (format!("random tree n={n} #{i}"), g)),
            );
        }
        let values: Vec<Result<(i32, i32), ExperimentError>> =
            graphs.par_iter().map(|(_, g)| Ok(balance_values(g, &self.p.options)?)).collect();
        let mut t = Tally::new(
            "trees",
            format!(
                "all labelled trees n<={}, {} random trees for n in {:?}, seed {}",
                self.p.tree_exhaustive_n, self.p.tree_samples, self.p.tree_random_orders, self.p.seed
            ),
            "b^A >= 0 and b^I >= 0",
        );
        for ((label, g), v) in graphs.iter().zip(values) {
            let (a, i) = v?;
            t.add(a >= 0 && i >= 0, || format!("{label} {}", describe(g)), || format!("b^A={a} b^I={i}"));
        }
        Ok(t.finish())
    }

    fn complete(&self) -> Result<Vec<CheckReport>, ExperimentError> {
        let mut t = Tally::new("complete", "K_n for n in 1..=8", "b^A = b^I = floor(n/2)");
        for n in 1..=8 {
            let (a, i) = balance_values(&complete(n)?, &self.p.options)?;
            let want = (n / 2) as i32;
            t.add(a == want && i == want, || format!("complete:{n}"), || format!("b^A={a} b^I={i}"));
        }
        Ok(t.finish())
    }

    fn bipartite(&self) -> Result<Vec<CheckReport>, ExperimentError> {
        let mut t = Tally::new("bipartite", "K_{p,q} for 1 <= p,q <= 4", "b^A = b^I = 1 if pq odd, else 0");
        for p in 1..=4 {
            for q in 1..=4 {
                let (a, i) = balance_values(&complete_bipartite(p, q)?, &self.p.options)?;
                let want = ((p * q) % 2) as i32;
                t.add(a == want && i == want, || format!("kbip:{p},{q}"), || format!("b^A={a} b^I={i}"));
            }
        }
        Ok(t.finish())
    }

    fn segment16(&self) -> Result<Vec<CheckReport>, ExperimentError> {
        let mut out = Vec::new();
        for &n in &self.p.segment_orders {
            out.extend(playout_reports(segment_playouts(n, self.p.segment_games, self.p.seed)?));
        }
        for &n in &self.p.segment_adversary_orders {
            let started = Instant::now();
            let got = segment_adversary(n)?;
            let relation = if n % 2 == 0 { ">=" } else { "<=" };
            out.push(CheckReport {
                check_id: "segment16".into(),
                instance: format!("P_{n}, exact adversary"),
                expected: format!("guarantee {relation} {}", segment_bound(n)),
                observed: format!("guarantee {got}"),
                pass: segment_adversary_ok(n, got),
                elapsed: started.elapsed(),
            });
        }
        Ok(out)
    }
}

fn named(
    id: &'static str,
    family: &str,
    g: &Graph,
    options: &crate::solver::SolveOptions,
    expected: &[(Player, i32)],
) -> Result<Vec<CheckReport>, ExperimentError> {
    let want: Vec<String> = expected.iter().map(|(s, v)| format!("b^{s}={v}")).collect();
    let mut t = Tally::new(id, family, want.join(" "));
    let mut got = Vec::new();
    let mut pass = true;
    for &(start, v) in expected {
        let x = value(g, GameSpec::balance(start), options)?;
        pass &= x == v;
        got.push(format!("b^{start}={x}"));
    }
    t.add(pass, || family.to_string(), || got.join(" "));
    let mut out = t.finish();
    out[0].observed = got.join(" ");
    Ok(out)
}

fn playout_reports(s: PlayoutSummary) -> Vec<CheckReport> {
    let started = Instant::now();
    let mut out = vec![CheckReport {
        check_id: s.check_id.to_string(),
        instance: s.scope.clone(),
        expected: s.expected.clone(),
        observed: format!("{} games, {} checkpoints, {} violating games", s.games, s.moves_checked, s.failures.len()),
        pass: s.pass(),
        elapsed: started.elapsed(),
    }];
    out.extend(s.failures.iter().take(MAX_FAILURE_REPORTS).map(|f| CheckReport {
        check_id: s.check_id.to_string(),
        instance: f.clone(),
        expected: s.expected.clone(),
        observed: "violated".into(),
        pass: false,
        elapsed: started.elapsed(),
    }));
    out
}

fn floor16(n: usize) -> i32 {
    (n / 16) as i32
}

fn ceil16(n: usize) -> i32 {
    n.div_ceil(16) as i32
}

/// Bounds of the linear path theorems as `(lower, upper)` for `P_n` with the
/// given start.
fn path_theorem_bounds(n: usize, start: Player) -> (i32, i32) {
    let (f, c) = (floor16(n), ceil16(n));
    match (start, n % 2 == 0) {
        (A, true) => (2 * f + 1, 4 * c + 5),
        (A, false) => (2 * f - 4, 4 * c),
        (I, true) => (2 * f - 5, 4 * c - 1),
        (I, false) => (2 * f, 4 * c + 4),
    }
}

fn path_check(id: &str, balance: &PathTable, cordiality: &PathTable) -> Vec<CheckReport> {
    let max = balance.max_n();
    let b = |n: usize, s: Player| balance.get(n, s).expect("row in range");
    let scope = format!("P_n for n <= {max}");
    match id {
        "path_rec1" => {
            let mut t = Tally::new(
                "path_rec1",
                scope,
                "b^I(P_{n+1}) >= b^A(P_n) - 1 and b^A(P_{n+1}) <= b^I(P_n) + 1",
            );
            for n in 1..max {
                let ok = b(n + 1, I) >= b(n, A) - 1 && b(n + 1, A) <= b(n, I) + 1;
                t.add(ok, || format!("n={n}"), || {
                    format!("P_n: A={} I={}; P_n+1: A={} I={}", b(n, A), b(n, I), b(n + 1, A), b(n + 1, I))
                });
            }
            t.finish()
        }
        "path_rec4" | "path_rec6" => {
            let (id, step) = if id == "path_rec4" { ("path_rec4", 4) } else { ("path_rec6", 6) };
            let mut t = Tally::new(id, scope, format!("b(P_{{n+{step}}}) <= b(P_n) + 2 for both starts"));
            for n in 1..=max.saturating_sub(step) {
                for s in [A, I] {
                    t.add(b(n + step, s) <= b(n, s) + 2, || format!("n={n} {s}-start"), || {
                        format!("b(P_n)={} b(P_n+{step})={}", b(n, s), b(n + step, s))
                    });
                }
            }
            t.finish()
        }
        "path_rec16" => {
            let mut t = Tally::new(
                "path_rec16",
                scope,
                "A-start: n even b >= 2floor(n/16)+1, n odd b <= 4ceil(n/16); I-start: n odd b >= 2floor(n/16), n even b <= 4ceil(n/16)-1",
            );
            for n in 1..=max {
                let (f, c) = (floor16(n), ceil16(n));
                let (a, i) = (b(n, A), b(n, I));
                let ok = if n % 2 == 0 { a > 2 * f && i < 4 * c } else { a <= 4 * c && i >= 2 * f };
                t.add(ok, || format!("n={n}"), || format!("b^A={a} b^I={i}"));
            }
            t.finish()
        }
        "path_window16" => {
            let mut t = Tally::new("path_window16", scope, "2 <= b(P_{n+16}) - b(P_n) <= 4 for both starts");
            for n in 1..=max.saturating_sub(16) {
                for s in [A, I] {
                    let d = b(n + 16, s) - b(n, s);
                    t.add((2..=4).contains(&d), || format!("n={n} {s}-start"), || format!("difference {d}"));
                }
            }
            t.finish()
        }
        "path_n8_corollary" => {
            let mut t = Tally::new(
                "path_n8_corollary",
                scope,
                "n even: floor(n/8)+1 <= b <= 2ceil(n/8)-1; n odd: floor(n/8) <= b <= 2ceil(n/8), both starts",
            );
            for n in 1..=max {
                let (f, c) = ((n / 8) as i32, n.div_ceil(8) as i32);
                let (lo, hi) = if n % 2 == 0 { (f + 1, 2 * c - 1) } else { (f, 2 * c) };
                for s in [A, I] {
                    let v = b(n, s);
                    t.add(lo <= v && v <= hi, || format!("n={n} {s}-start"), || format!("b={v}, bounds [{lo}, {hi}]"));
                }
            }
            t.finish()
        }
        "path_bounds" | "cordiality_paths" => {
            let (id, table, sym) = if id == "path_bounds" {
                ("path_bounds", balance, "b")
            } else {
                ("cordiality_paths", cordiality, "c")
            };
            let mut t = Tally::new(
                id,
                format!("P_n for n <= {}", table.max_n()),
                format!(
                    "A-start: n even 2floor(n/16)+1 <= {sym} <= 4ceil(n/16)+5, n odd 2floor(n/16)-4 <= {sym} <= 4ceil(n/16); \
                     I-start: n even 2floor(n/16)-5 <= {sym} <= 4ceil(n/16)-1, n odd 2floor(n/16) <= {sym} <= 4ceil(n/16)+4"
                ),
            );
            for n in 1..=table.max_n() {
                for s in [A, I] {
                    let v = table.get(n, s).expect("row in range");
                    let (lo, hi) = path_theorem_bounds(n, s);
                    t.add(lo <= v && v <= hi, || format!("n={n} {s}-start"), || format!("{sym}={v}, bounds [{lo}, {hi}]"));
                }
            }
            t.finish()
        }
        "sandwich" => {
            let mut t = Tally::new(
                "sandwich",
                scope,
                "even m <= n: n*bA(m) - n - m^2 <= m*bA(n) <= m*bI(n) <= n*bA(m) + 9n + m^2, \
                 m*bA(n) >= n*(bA(m)-1) - m^2, m*bI(n) <= n*(bI(m)+1) + m^2",
            );
            for n in (2..=max).step_by(2) {
                for m in (2..=n).step_by(2) {
                    let (ni, mi) = (n as i32, m as i32);
                    let (an, in_, am, im) = (b(n, A), b(n, I), b(m, A), b(m, I));
                    let ok = ni * am - ni - mi * mi <= mi * an
                        && an <= in_
                        && mi * in_ <= ni * am + 9 * ni + mi * mi
                        && mi * an >= ni * (am - 1) - mi * mi
                        && mi * in_ <= ni * (im + 1) + mi * mi;
                    t.add(ok, || format!("m={m} n={n}"), || {
                        format!("bA(m)={am} bI(m)={im} bA(n)={an} bI(n)={in_}")
                    });
                }
            }
            t.finish()
        }
        other => unreachable!("not a path check: {other}"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> VerifyParams {
        VerifyParams {
            exhaustive_n: 4,
            random_orders: vec![6],
            samples: 6,
            max_path_n: 10,
            mnk_max_n: 6,
            mnk_instances: 2,
            mnk_pairing_max_n: 6,
            pendant_base_max_n: 4,
            tree_exhaustive_n: 5,
            tree_random_orders: vec![7],
            tree_samples: 5,
            playouts: 20,
            playout_max_n: 8,
            segment_orders: vec![32],
            segment_games: 4,
            segment_adversary_orders: vec![],
            ..VerifyParams::default()
        }
    }

    #[test]
    fn every_check_runs_and_passes_on_small_parameters() {
        let reports = verify("all", &small()).unwrap();
        for id in CHECK_IDS {
            let summary = reports.iter().find(|r| r.check_id == id);
            assert!(summary.is_some(), "{id} produced no report");
        }
        let failing: Vec<_> =
            reports.iter().filter(|r| !r.pass && r.check_id != "path_n8_corollary").map(|r| r.record()).collect();
        assert!(failing.is_empty(), "{failing:#?}");
    }

    #[test]
    fn unknown_check_is_rejected() {
        assert_eq!(verify("nope", &small()), Err(ExperimentError::UnknownCheck("nope".into())));
    }

    #[test]
    fn reports_are_reproducible() {
        let p = small();
        let a: Vec<String> = verify("complements", &p).unwrap().iter().map(|r| r.record()).collect();
        let b: Vec<String> = verify("complements", &p).unwrap().iter().map(|r| r.record()).collect();
        assert_eq!(a, b);
        let want = format!(
            "check_id=complements\tinstance=exhaustive n<=4, 6 x G(n,1/2) for n in [6], seed {}\t\
             expected=b^A(G) + b^I(co-G) = floor(n/2)\tobserved=81 instances, 0 failed\tpass=true",
            super::super::DEFAULT_SEED
        );
        assert_eq!(a[0], want);
    }

    #[test]
    fn tally_caps_failure_reports() {
        let mut t = Tally::new("x", "scope", "never");
        for i in 0..50 {
            t.add(false, || format!("#{i}"), || "bad".into());
        }
        let out = t.finish();
        assert_eq!(out.len(), 1 + MAX_FAILURE_REPORTS);
        assert!(!out[0].pass);
        assert_eq!(out[0].observed, "50 instances, 50 failed");
    }

    #[test]
    fn path_theorem_bounds_cover_the_table() {
        assert_eq!(path_theorem_bounds(16, A), (3, 9));
        assert_eq!(path_theorem_bounds(17, I), (2, 12));
    }

    #[test]
    fn n8_corollary_is_violated_by_the_small_table() {
        let p = VerifyParams { max_path_n: 10, ..small() };
        let r = verify("path_n8_corollary", &p).unwrap();
        assert!(!r[0].pass);
        assert!(r.iter().any(|x| x.instance == "n=8 A-start"));
    }
}
