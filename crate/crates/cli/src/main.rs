//! `rainbow`: generate instances, classify them, search for rainbow Hamilton
//! cycles and check the results.
//!
//! Exit codes: 0 on success or a true check, 1 when nothing was found or a
//! check is false, 2 on invalid usage or input.

use std::fs;
use std::io::{ErrorKind, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use rainbow_core::berge::berge_hamilton;
use rainbow_core::classification::{classify, ClassifyConfig, ClassifyMode, Params};
use rainbow_core::experiment::{run_experiment, ExperimentPlan};
use rainbow_core::generators::{gen_counterexample, generate, ColourScheme, Family, GenSpec};
use rainbow_core::hamilton::{find_ham_cycle, HamOutcome, SearchBudget};
use rainbow_core::io::{format_cycle, format_graph, load_graph, parse_cycle, parse_hypergraph, parse_protected};
use rainbow_core::rainbow::{check, find_rainbow_hc, PipelineConfig, SearchConfig};
use rainbow_core::switching::enumerate_admissible;
use rainbow_core::{Edge, Fraction, ProtectedSet};

#[derive(Parser)]
#[command(name = "rainbow", version, about = "Rainbow Hamilton cycles in edge-coloured Dirac graphs")]
struct Cli {
    /// Worker threads for parallel restarts and experiment rows.
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Copy)]
struct SeedArg {
    /// Master seed; every random choice derives from it.
    #[arg(long, env = "RAINBOW_SEED", default_value_t = 0)]
    seed: u64,
}

#[derive(Subcommand)]
enum Command {
    /// Write a generated instance as a graph file.
    Generate(GenerateArgs),
    /// Tag a graph as close to two cliques, close to bipartite, a robust expander, or unclassified.
    Classify(ClassifyArgs),
    /// Search for a rainbow Hamilton cycle.
    Find(FindArgs),
    /// Check that a cycle file is a rainbow Hamilton cycle containing the protected edges.
    Verify(VerifyArgs),
    /// Count admissible switchings for one cycle edge.
    Switchings(SwitchingsArgs),
    /// Search for a Hamilton cycle, optionally through required edges.
    Hamilton(HamiltonArgs),
    /// Search for a Berge Hamilton cycle in a uniform hypergraph.
    Berge(BergeArgs),
    /// Run a JSON experiment plan and write CSV tables.
    Experiment(ExperimentArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyName {
    /// G(n, p) patched to minimum degree n/2 (`--p`).
    RandomDirac,
    /// Two cliques with few cross edges (`--gamma`).
    TwoCliqueLike,
    /// Balanced complete bipartite graph with few internal edges (`--gamma`).
    BipartiteLike,
    /// Dirac graph with a bounded colouring and no rainbow Hamilton cycle (`--k`, even).
    Counterexample,
    /// K_{n,n} coloured by a Latin square; `--n` is the order of the square.
    LatinSquare,
    /// Complete A–B graph with |B| − |A| = m and a sparse graph inside B (`--m`).
    Biclique,
    Complete,
}

#[derive(Clone, Copy, ValueEnum)]
enum SchemeName {
    /// Classes of ⌊μn⌋ edges (`--mu`).
    Bounded,
    Proper,
    Rainbow,
}

#[derive(Args)]
struct GenerateArgs {
    #[arg(long, value_enum)]
    family: FamilyName,
    #[arg(long)]
    n: usize,
    #[arg(long, default_value = "3/5")]
    p: Fraction,
    #[arg(long, default_value = "0")]
    gamma: Fraction,
    #[arg(long, default_value_t = 2)]
    k: usize,
    #[arg(long, default_value_t = 2)]
    m: usize,
    /// Colouring for families without their own.
    #[arg(long, value_enum, default_value = "rainbow")]
    colouring: SchemeName,
    #[arg(long, default_value = "1/8")]
    mu: Fraction,
    #[command(flatten)]
    seed: SeedArg,
    /// Output file; standard output when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeName {
    Auto,
    Exact,
    Local,
}

#[derive(Args)]
struct ParamArgs {
    #[arg(long, default_value = "1/20")]
    nu: Fraction,
    #[arg(long, default_value = "1/5")]
    tau: Fraction,
    #[arg(long, default_value = "1/20")]
    gamma: Fraction,
    #[arg(long, default_value = "1/10")]
    eta: Fraction,
}

impl ParamArgs {
    fn params(&self) -> Params {
        Params { nu: self.nu, tau: self.tau, gamma: self.gamma, eta: self.eta, ..Params::default() }
    }
}

#[derive(Args)]
struct ClassifyArgs {
    #[arg(long)]
    input: PathBuf,
    #[command(flatten)]
    params: ParamArgs,
    #[arg(long, value_enum, default_value = "auto")]
    mode: ModeName,
    #[command(flatten)]
    seed: SeedArg,
}

#[derive(Args)]
struct FindArgs {
    #[arg(long)]
    input: PathBuf,
    /// Expected bound: the report records whether every colour class has at most ⌊μn⌋ edges.
    #[arg(long)]
    mu: Option<Fraction>,
    #[arg(long, default_value_t = 100_000)]
    max_steps: u64,
    #[arg(long, default_value_t = 20)]
    restarts: usize,
    #[command(flatten)]
    seed: SeedArg,
    /// Record per-step admissible and conflict counts.
    #[arg(long)]
    report_beta: bool,
    /// Run on graphs with minimum degree below n/2.
    #[arg(long)]
    allow_non_dirac: bool,
    #[command(flatten)]
    params: ParamArgs,
    /// Cycle file; standard output when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    /// JSON run report; standard error when absent.
    #[arg(long)]
    report: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long)]
    cycle: PathBuf,
    #[arg(long)]
    protect: Option<PathBuf>,
}

#[derive(Args)]
struct SwitchingsArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long)]
    cycle: PathBuf,
    /// Tail x of the cycle edge (x, π(x)).
    #[arg(long)]
    edge: usize,
    #[arg(long)]
    protect: Option<PathBuf>,
    /// Print every switching as `x x' y' kind`.
    #[arg(long)]
    list: bool,
}

#[derive(Args)]
struct HamiltonArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long)]
    require: Option<PathBuf>,
    #[arg(long, default_value_t = 5_000_000)]
    max_nodes: u64,
    #[arg(long, default_value_t = 30)]
    time_limit_secs: u64,
    #[command(flatten)]
    seed: SeedArg,
}

#[derive(Args)]
struct BergeArgs {
    #[arg(long)]
    input: PathBuf,
    #[command(flatten)]
    seed: SeedArg,
    #[arg(long, default_value_t = 100_000)]
    max_steps: u64,
    #[arg(long, default_value_t = 20)]
    restarts: usize,
}

#[derive(Args)]
struct ExperimentArgs {
    #[arg(long)]
    plan: PathBuf,
    /// Overrides the plan's output directory.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn write_or_print(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn protected(path: Option<&PathBuf>) -> Result<ProtectedSet> {
    match path {
        Some(p) => Ok(parse_protected(&read(p)?)?),
        None => Ok(ProtectedSet::empty()),
    }
}

/// `q`-quantile of sorted values by nearest rank.
fn quantile(sorted: &[usize], q: f64) -> Option<usize> {
    if sorted.is_empty() {
        return None;
    }
    let i = ((sorted.len() - 1) as f64 * q).round() as usize;
    Some(sorted[i])
}

fn run(cli: Cli) -> Result<bool> {
    if let Some(t) = cli.threads {
        rayon::ThreadPoolBuilder::new().num_threads(t).build_global().context("configuring the thread pool")?;
    }
    match cli.command {
        Command::Generate(a) => {
            let family = match a.family {
                FamilyName::RandomDirac => Family::RandomDirac { p: a.p },
                FamilyName::TwoCliqueLike => Family::TwoCliqueLike { gamma: a.gamma },
                FamilyName::BipartiteLike => Family::BipartiteLike { gamma: a.gamma },
                FamilyName::Counterexample => Family::Counterexample { k: a.k },
                FamilyName::LatinSquare => Family::LatinSquare,
                FamilyName::Biclique => Family::Biclique { m: a.m },
                FamilyName::Complete => Family::Complete,
            };
            let colouring = match a.colouring {
                SchemeName::Bounded => ColourScheme::Bounded { mu: a.mu },
                SchemeName::Proper => ColourScheme::Proper,
                SchemeName::Rainbow => ColourScheme::Rainbow,
            };
            let spec = GenSpec { family, n: a.n, colouring: Some(colouring), seed: a.seed.seed };
            let (g, c) = generate(&spec)?;
            write_or_print(a.out.as_deref(), &format_graph(&g, &c))?;
            if let Family::Counterexample { k } = family {
                let report = gen_counterexample(a.n, k, a.seed.seed)?.report;
                eprintln!("{}", serde_json::to_string(&report)?);
            }
            Ok(true)
        }
        Command::Classify(a) => {
            let (g, _) = load_graph(&a.input)?;
            let mode = match a.mode {
                ModeName::Auto => ClassifyMode::Auto,
                ModeName::Exact => ClassifyMode::Exact,
                ModeName::Local => ClassifyMode::LocalSearch,
            };
            let cls = classify(&g, &a.params.params(), &ClassifyConfig { mode, seed: a.seed.seed, ..Default::default() })?;
            println!("tag: {:?}", cls.tag);
            if let Some(part) = &cls.partition {
                let ids: Vec<String> = part.iter().map(usize::to_string).collect();
                println!("witness: {}", ids.join(" "));
            }
            if let Some(gb) = cls.gamma_best(g.n()) {
                println!("gamma_best: {gb}");
            }
            Ok(true)
        }
        Command::Find(a) => {
            let (g, c) = load_graph(&a.input)?;
            let search = SearchConfig {
                max_steps: a.max_steps,
                restarts: a.restarts,
                seed: a.seed.seed,
                beta_report: a.report_beta,
                ..Default::default()
            };
            let cfg = PipelineConfig { search, allow_non_dirac: a.allow_non_dirac, ..Default::default() };
            let params = a.params.params();
            let res = find_rainbow_hc(&g, &c, &params, &cfg)?;
            let admissible: Vec<usize> = {
                let mut all: Vec<usize> = res.search_reports().flat_map(|r| r.admissible_counts()).collect();
                all.sort_unstable();
                all
            };
            let quantiles: Vec<(f64, Option<usize>)> = [0.0, 0.25, 0.5, 0.75, 1.0].iter().map(|&q| (q, quantile(&admissible, q))).collect();
            let report = serde_json::json!({
                "seed": a.seed.seed,
                "input": a.input,
                "search": search,
                "params": params,
                "mu": a.mu,
                "bounded": a.mu.map(|mu| c.is_k_bounded(mu.floor_times(g.n()))),
                "max_class": c.max_multiplicity(),
                "found": res.cycle.is_some(),
                "total_steps": res.search_reports().map(|r| r.total_steps()).sum::<u64>(),
                "admissible_quantiles": quantiles,
                "result": res,
            });
            let json = serde_json::to_string_pretty(&report)?;
            match &a.report {
                Some(p) => fs::write(p, json).with_context(|| format!("writing {}", p.display()))?,
                None => eprintln!("{json}"),
            }
            match &res.cycle {
                Some(h) => {
                    write_or_print(a.out.as_deref(), &format_cycle(h))?;
                    Ok(true)
                }
                None => {
                    println!("NONE");
                    Ok(false)
                }
            }
        }
        Command::Verify(a) => {
            let (g, c) = load_graph(&a.input)?;
            let h = parse_cycle(&read(&a.cycle)?)?;
            let z = protected(a.protect.as_ref())?;
            match check(&g, &c, &h, &z) {
                Ok(()) => {
                    println!("OK");
                    Ok(true)
                }
                Err(v) => {
                    println!("FAIL {v}");
                    Ok(false)
                }
            }
        }
        Command::Switchings(a) => {
            let (g, _) = load_graph(&a.input)?;
            let h = parse_cycle(&read(&a.cycle)?)?;
            let z = protected(a.protect.as_ref())?;
            if a.edge >= h.n() {
                bail!("edge tail {} is not a vertex", a.edge);
            }
            let specs = enumerate_admissible(&g, &h, Edge::new(a.edge, h.succ(a.edge)), &z)?;
            let mut out = std::io::stdout().lock();
            writeln!(out, "{}", specs.len())?;
            if a.list {
                for s in &specs {
                    writeln!(out, "{} {} {} {}", s.tail, s.x_prime, s.y_prime, s.kind.index())?;
                }
            }
            Ok(true)
        }
        Command::Hamilton(a) => {
            let (g, _) = load_graph(&a.input)?;
            let z = protected(a.require.as_ref())?;
            let budget = SearchBudget { max_nodes: a.max_nodes, time_limit: Duration::from_secs(a.time_limit_secs) };
            match find_ham_cycle(&g, &z, budget, a.seed.seed)? {
                HamOutcome::Found(h) => {
                    print!("{}", format_cycle(&h));
                    Ok(true)
                }
                HamOutcome::Exhausted => {
                    println!("NONE");
                    Ok(false)
                }
                HamOutcome::Budget => {
                    println!("BUDGET");
                    Ok(false)
                }
            }
        }
        Command::Berge(a) => {
            let h = parse_hypergraph(&read(&a.input)?)?;
            let mut cfg = PipelineConfig::default();
            cfg.search.seed = a.seed.seed;
            cfg.search.max_steps = a.max_steps;
            cfg.search.restarts = a.restarts;
            let res = berge_hamilton(&h, &Params::default(), &cfg)?;
            eprintln!(
                "min degree {} vs threshold {} (above: {}); shadow max class {}",
                res.min_degree, res.threshold, res.above_threshold, res.shadow_max_class
            );
            match &res.cycle {
                Some(b) => {
                    println!("{b}");
                    Ok(true)
                }
                None => {
                    println!("NONE");
                    Ok(false)
                }
            }
        }
        Command::Experiment(a) => {
            let mut plan: ExperimentPlan =
                serde_json::from_str(&read(&a.plan)?).with_context(|| format!("parsing {}", a.plan.display()))?;
            if let Some(out) = a.out {
                plan.output = out;
            }
            let out = run_experiment(&plan)?;
            for s in &out.summary {
                println!("{} n={} mu={} success {}/{} ({:.3}), errors {}", s.family, s.n, s.mu, s.successes, s.runs, s.success_rate, s.errors);
            }
            println!("rows: {}", out.rows_path.display());
            println!("summary: {}", out.summary_path.display());
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) if e.downcast_ref::<std::io::Error>().is_some_and(|io| io.kind() == ErrorKind::BrokenPipe) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
