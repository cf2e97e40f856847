mod play;

use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use anyhow::Context;
use clap::{Args, Parser, Subcommand, ValueEnum};

use balance_core::experiments::{
    self, counterexample_search, path_table_csv, path_tables, random_expectation, verify, CheckReport, HuntProblem,
    HuntSource, VerifyParams, DEFAULT_SEED,
};
use balance_core::graph::{read_graph, Family};
use balance_core::solver::{reversal, rotations, solve_with_symmetry, SolveOptions};
use balance_core::strategies::{evaluate_guarantee_budgeted, from_name};
use balance_core::{GameSpec, Graph, Player, Variant};

/// Exit statuses.
const EXIT_CHECK_FAILED: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_BUDGET: u8 = 3;

#[derive(Parser)]
#[command(name = "balance", version, about = "Exact solver and experiment harness for the balance and cordiality games")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve one game exactly
    Solve {
        #[command(flatten)]
        graph: GraphSource,
        #[command(flatten)]
        game: GameArgs,
        #[command(flatten)]
        budget: BudgetArgs,
        /// Automorphisms to fold positions under
        #[arg(long, value_enum, default_value_t = Symmetry::None)]
        symmetry: Symmetry,
        #[arg(long, value_enum, default_value_t = Format::Records)]
        format: Format,
    },
    /// Values on P_1..P_max-n for both starts, as CSV
    Table {
        #[arg(long, default_value_t = 14)]
        max_n: usize,
        #[arg(long, default_value = "balance")]
        variant: Variant,
        #[command(flatten)]
        budget: BudgetArgs,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Run theorem checks
    Verify(VerifyArgs),
    /// Worst-case payoff of a named strategy against a searching opponent
    Eval {
        #[command(flatten)]
        graph: GraphSource,
        #[command(flatten)]
        game: GameArgs,
        /// Strategy name, e.g. greedy, danger, pairing, mirror(optimal)
        #[arg(long)]
        strategy: String,
        /// Seat the strategy plays
        #[arg(long)]
        seat: Player,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Cap on positions expanded by the opponent search
        #[arg(long)]
        node_budget: Option<u64>,
        #[arg(long, value_enum, default_value_t = Format::Records)]
        format: Format,
    },
    /// Sample G(n, 1/2) and summarise b^A and b^I
    Random {
        #[arg(long, default_value_t = 8)]
        n: usize,
        #[arg(long, default_value_t = 500)]
        samples: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[command(flatten)]
        budget: BudgetArgs,
        #[arg(long, value_enum, default_value_t = Format::Records)]
        format: Format,
    },
    /// Search graph collections for extremal values
    Hunt {
        /// min-ba, max-excess or cordiality-gap
        #[arg(long)]
        problem: HuntProblem,
        /// exhaustive:N, random:N:SAMPLES or a family spec such as petersen
        #[arg(long)]
        source: String,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[command(flatten)]
        budget: BudgetArgs,
        #[arg(long, value_enum, default_value_t = Format::Records)]
        format: Format,
    },
    /// Play against an engine strategy on the terminal
    Play {
        #[command(flatten)]
        graph: GraphSource,
        #[command(flatten)]
        game: GameArgs,
        /// Seat of the human player
        #[arg(long, default_value = "A")]
        human: Player,
        /// Engine strategy name
        #[arg(long, default_value = "optimal")]
        engine: String,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct GraphSource {
    /// Graph file: first line n, then one edge "u v" per line
    #[arg(long)]
    graph: Option<PathBuf>,
    /// Family spec: path:N, cycle:N, complete:N, kbip:P,Q, empty:N, petersen, mnk:SPEC
    #[arg(long)]
    family: Option<Family>,
}

impl GraphSource {
    fn load(&self) -> anyhow::Result<Graph> {
        match (&self.graph, &self.family) {
            (Some(path), None) => {
                let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
                Ok(read_graph(&text).with_context(|| format!("parsing {}", path.display()))?)
            }
            (None, Some(f)) => Ok(f.generate()?),
            _ => unreachable!("clap enforces exactly one graph source"),
        }
    }
}

#[derive(Args)]
struct GameArgs {
    #[arg(long, default_value = "balance")]
    variant: Variant,
    #[arg(long, default_value = "A")]
    start: Player,
}

impl GameArgs {
    fn spec(&self) -> GameSpec {
        GameSpec::new(self.variant, self.start)
    }
}

#[derive(Args)]
struct BudgetArgs {
    /// Give up after expanding this many positions
    #[arg(long)]
    node_budget: Option<u64>,
    /// Give up after this many seconds
    #[arg(long)]
    time_budget: Option<f64>,
}

impl BudgetArgs {
    fn options(&self) -> anyhow::Result<SolveOptions> {
        let mut o = SolveOptions::new();
        o.node_budget = self.node_budget;
        if let Some(s) = self.time_budget {
            o.time_budget = Some(Duration::try_from_secs_f64(s).context("--time-budget must be a non-negative number")?);
        }
        Ok(o)
    }
}

#[derive(Args)]
struct VerifyArgs {
    /// Check id, or "all"
    #[arg(long, default_value = "all")]
    check: String,
    #[arg(long)]
    exhaustive_n: Option<usize>,
    /// Orders of the sampled corpus, comma separated
    #[arg(long, value_delimiter = ',')]
    random_orders: Option<Vec<usize>>,
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long)]
    max_path_n: Option<usize>,
    #[arg(long)]
    mnk_max_n: Option<usize>,
    #[arg(long)]
    mnk_instances: Option<usize>,
    #[arg(long)]
    tree_exhaustive_n: Option<usize>,
    #[arg(long, value_delimiter = ',')]
    tree_random_orders: Option<Vec<usize>>,
    #[arg(long)]
    tree_samples: Option<usize>,
    #[arg(long)]
    playouts: Option<usize>,
    #[arg(long)]
    playout_max_n: Option<usize>,
    #[arg(long, value_delimiter = ',')]
    segment_orders: Option<Vec<usize>>,
    #[arg(long)]
    segment_games: Option<usize>,
    #[arg(long, value_delimiter = ',')]
    segment_adversary_orders: Option<Vec<usize>>,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[command(flatten)]
    budget: BudgetArgs,
    #[arg(long, value_enum, default_value_t = Format::Records)]
    format: Format,
}

impl VerifyArgs {
    fn params(&self) -> anyhow::Result<VerifyParams> {
        let mut p = VerifyParams { seed: self.seed, options: self.budget.options()?, ..VerifyParams::default() };
        macro_rules! set {
            ($($field:ident),*) => { $(if let Some(v) = &self.$field { p.$field = v.clone(); })* };
        }
        set!(
            exhaustive_n,
            random_orders,
            samples,
            max_path_n,
            mnk_max_n,
            mnk_instances,
            tree_exhaustive_n,
            tree_random_orders,
            tree_samples,
            playouts,
            playout_max_n,
            segment_orders,
            segment_games,
            segment_adversary_orders
        );
        Ok(p)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Records,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Symmetry {
    None,
    /// i -> n-1-i, for paths
    Reversal,
    /// i -> i+r mod n, for cycles
    Rotations,
}

/// A run-time failure with its exit status.
struct Failure {
    code: u8,
    error: anyhow::Error,
}

impl<E: Into<anyhow::Error>> From<E> for Failure {
    fn from(e: E) -> Self {
        let error = e.into();
        let budget = error
            .downcast_ref::<experiments::ExperimentError>()
            .map(|e| e.is_budget())
            .or_else(|| error.downcast_ref::<balance_core::solver::SolveError>().map(|e| e.is_budget()))
            .or_else(|| error.downcast_ref::<balance_core::strategies::StrategyError>().map(|e| e.is_budget()))
            .unwrap_or(false);
        Failure { code: if budget { EXIT_BUDGET } else { EXIT_USAGE }, error }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match run(cli.command, &mut out) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            let _ = out.flush();
            eprintln!("error: {:#}", f.error);
            ExitCode::from(f.code)
        }
    }
}

fn run(command: Command, out: &mut impl Write) -> Result<u8, Failure> {
    match command {
        Command::Solve { graph, game, budget, symmetry, format } => {
            let g = graph.load()?;
            let spec = game.spec();
            let perms = match symmetry {
                Symmetry::None => Vec::new(),
                Symmetry::Reversal => vec![reversal(g.n())],
                Symmetry::Rotations => rotations(g.n()),
            };
            let r = solve_with_symmetry(&g, spec, perms, budget.options()?)?;
            let first = r.best_first_move.map_or("-".to_string(), |v| v.to_string());
            match format {
                Format::Csv => write_csv(
                    out,
                    &["variant", "start", "n", "m", "value", "best_first_move", "nodes", "table_entries"],
                    &[vec![
                        spec.variant.to_string(),
                        spec.start.to_string(),
                        g.n().to_string(),
                        g.m().to_string(),
                        r.value.to_string(),
                        first,
                        r.nodes.to_string(),
                        r.table_entries.to_string(),
                    ]],
                )?,
                Format::Records => writeln!(
                    out,
                    "variant={}\tstart={}\tn={}\tm={}\tvalue={}\tbest_first_move={first}\tnodes={}\ttable_entries={}",
                    spec.variant,
                    spec.start,
                    g.n(),
                    g.m(),
                    r.value,
                    r.nodes,
                    r.table_entries
                )?,
            }
            eprintln!("elapsed {:.3}s", r.elapsed.as_secs_f64());
            Ok(0)
        }
        Command::Table { max_n, variant, budget, format } => {
            let table = path_tables(max_n, variant, &budget.options()?);
            match format {
                Format::Csv => write!(out, "{}", path_table_csv(&table))?,
                Format::Records => {
                    for r in &table.rows {
                        writeln!(out, "variant={variant}\tn={}\ta_start={}\ti_start={}", r.n, r.a_start, r.i_start)?;
                    }
                }
            }
            let solved = table.max_n();
            match table.error {
                None => Ok(0),
                Some(e) => {
                    out.flush()?;
                    Err(anyhow::Error::new(e).context(format!("table stopped after n={solved}")).into())
                }
            }
        }
        Command::Verify(args) => {
            let reports = verify(&args.check, &args.params()?)?;
            write_reports(out, &reports, args.format)?;
            Ok(if reports.iter().all(|r| r.pass) { 0 } else { EXIT_CHECK_FAILED })
        }
        Command::Eval { graph, game, strategy, seat, seed, node_budget, format } => {
            let g = graph.load()?;
            let spec = game.spec();
            let s = from_name(&strategy, &g, spec, seat, seed)?;
            let got = evaluate_guarantee_budgeted(&g, spec, s.as_ref(), node_budget)?;
            match format {
                Format::Csv => write_csv(
                    out,
                    &["strategy", "seat", "variant", "start", "guarantee"],
                    &[vec![s.name(), seat.to_string(), spec.variant.to_string(), spec.start.to_string(), got.to_string()]],
                )?,
                Format::Records => writeln!(
                    out,
                    "strategy={}\tseat={seat}\tvariant={}\tstart={}\tguarantee={got}",
                    s.name(),
                    spec.variant,
                    spec.start
                )?,
            }
            Ok(0)
        }
        Command::Random { n, samples, seed, budget, format } => {
            let s = random_expectation(n, samples, seed, &budget.options()?)?;
            let fields = [
                ("n", n.to_string()),
                ("samples", s.samples.to_string()),
                ("seed", seed.to_string()),
                ("mean_ba", format!("{:.6}", s.mean_a)),
                ("mean_bi", format!("{:.6}", s.mean_i)),
                ("mean_sum", format!("{:.6}", s.mean_sum)),
                ("stderr_sum", format!("{:.6}", s.stderr_sum)),
                ("expected_sum", format!("{}", s.expected_sum)),
                ("displayed_sum", format!("{}", s.displayed_sum)),
                ("identity_failures", s.identity_failures.len().to_string()),
                ("order_failures", s.order_failures.len().to_string()),
                ("mean_within_3se", s.mean_within(3.0).to_string()),
            ];
            write_fields(out, &fields, format)?;
            writeln!(
                io::stderr(),
                "note: the complement theorem forces E[b^A + b^I] = floor(n/2) = {}; \
                 the displayed constant floor(n/2)/2 = {} does not match",
                s.expected_sum,
                s.displayed_sum
            )?;
            Ok(if s.pass() { 0 } else { EXIT_CHECK_FAILED })
        }
        Command::Hunt { problem, source, seed, budget, format } => {
            let source = parse_hunt_source(&source, seed)?;
            let r = counterexample_search(problem, &source, &budget.options()?)?;
            match format {
                Format::Records => {
                    for line in r.records() {
                        writeln!(out, "{line}")?;
                    }
                }
                Format::Csv => {
                    let rows: Vec<Vec<String>> = r
                        .extremes
                        .iter()
                        .map(|e| {
                            vec![
                                r.problem.to_string(),
                                r.source.clone(),
                                r.searched.to_string(),
                                r.skipped.to_string(),
                                e.quantity.to_string(),
                                e.value.to_string(),
                                e.witness.clone(),
                            ]
                        })
                        .collect();
                    write_csv(out, &["problem", "source", "searched", "skipped", "quantity", "value", "witness"], &rows)?;
                }
            }
            if r.partial() {
                eprintln!("warning: {} graphs skipped after exceeding the budget", r.skipped);
                return Ok(EXIT_BUDGET);
            }
            Ok(0)
        }
        Command::Play { graph, game, human, engine, seed } => {
            let g = graph.load()?;
            let spec = game.spec();
            let mut engine = from_name(&engine, &g, spec, human.other(), seed)?;
            let stdin = io::stdin();
            let outcome = play::session(&g, spec, human, engine.as_mut(), stdin.lock(), out)?;
            Ok(match outcome {
                play::Outcome::Finished { .. } => 0,
                play::Outcome::Aborted { .. } => EXIT_USAGE,
            })
        }
    }
}

fn parse_hunt_source(s: &str, seed: u64) -> anyhow::Result<HuntSource> {
    let parts: Vec<&str> = s.split(':').collect();
    let count = |x: &str| x.parse::<usize>().with_context(|| format!("expected a count in --source, got {x:?}"));
    match parts.as_slice() {
        ["exhaustive", n] => Ok(HuntSource::Exhaustive(count(n)?)),
        ["random", n, samples] => Ok(HuntSource::Random { n: count(n)?, samples: count(samples)?, seed }),
        _ => Ok(HuntSource::Family(s.parse().with_context(|| format!("unknown source {s:?}"))?)),
    }
}

fn write_csv(out: &mut impl Write, header: &[&str], rows: &[Vec<String>]) -> anyhow::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(header)?;
    for r in rows {
        w.write_record(r)?;
    }
    w.flush()?;
    Ok(())
}

fn write_fields(out: &mut impl Write, fields: &[(&str, String)], format: Format) -> anyhow::Result<()> {
    match format {
        Format::Csv => {
            let names: Vec<&str> = fields.iter().map(|(k, _)| *k).collect();
            write_csv(out, &names, &[fields.iter().map(|(_, v)| v.clone()).collect()])
        }
        Format::Records => {
            let line: Vec<String> = fields.iter().map(|(k, v)| format!("{k}={v}")).collect();
            writeln!(out, "{}", line.join("\t"))?;
            Ok(())
        }
    }
}

fn write_reports(out: &mut impl Write, reports: &[CheckReport], format: Format) -> anyhow::Result<()> {
    match format {
        Format::Records => {
            for r in reports {
                writeln!(out, "{}", r.record())?;
            }
            Ok(())
        }
        Format::Csv => {
            let rows: Vec<Vec<String>> = reports
                .iter()
                .map(|r| vec![r.check_id.clone(), r.instance.clone(), r.expected.clone(), r.observed.clone(), r.pass.to_string()])
                .collect();
            write_csv(out, &["check_id", "instance", "expected", "observed", "pass"], &rows)
        }
    }
}
