//! Argument parsing and dispatch. [`run`] never exits the process; it
//! returns the status and the text for both streams.

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use permtrade_core::bounds::{
    basic_upper_bound, improved_upper_bound, limit_at, regular_bipartite_bounds,
    regular_bipartite_efficiency_limit, BoundReport,
};
use permtrade_core::cover::{greedy_cover, greedy_size_bound, randomized_cover, PermutationCover};
use permtrade_core::poset::{default_methods, ExtensionMethod, IdealMethod, Poset};
use permtrade_core::problem::{dfas_as_permutation_problem, tour_from_permutation, tsp_as_permutation_problem};
use permtrade_core::semiring::MinPlus;
use permtrade_core::setsystem::{EfficiencyReport, SetSystem};
use permtrade_core::solver::{
    solve_chain_tradeoff, solve_gurevich_shelah, solve_held_karp, CoverStrategy, SolveResult, SolverConfig,
};
use permtrade_core::{Budget, Error, DEFAULT_MEMORY_BUDGET};

use crate::builtin::{parse_builtin, Builtin};
use crate::cache::CountCache;
use crate::formats::{parse_dfas_graph, parse_poset, parse_set_system, parse_tsp_matrix, write_cover, FormatError};
use crate::verify::{self, Verification};

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_RESOURCE: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "permtrade", version, about = "Chain efficiency, permutation covers and exact permutation-problem solvers")]
pub struct Cli {
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Maximum resident table entries.
    #[arg(long, global = true, default_value_t = DEFAULT_MEMORY_BUDGET)]
    pub memory_budget: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone, Default)]
pub struct Source {
    #[arg(long)]
    pub poset: Option<PathBuf>,
    #[arg(long)]
    pub setsystem: Option<PathBuf>,
    /// circulant:M:D0,D1,.. | matchcomp:M | bucket:T:K | counterexample | tower:T:K
    #[arg(long)]
    pub builtin: Option<String>,
}

#[derive(Args, Debug, Clone)]
pub struct CoverArgs {
    #[arg(long, value_enum, default_value_t = StrategyArg::Greedy)]
    pub strategy: StrategyArg,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Size multiplier for random covers.
    #[arg(long, default_value_t = 2.0)]
    pub factor: f64,
}

impl CoverArgs {
    fn strategy(&self) -> CoverStrategy {
        match self.strategy {
            StrategyArg::Greedy => CoverStrategy::Greedy,
            StrategyArg::Random => CoverStrategy::Randomized {
                seed: self.seed,
                factor: self.factor,
            },
        }
    }
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum StrategyArg {
    Greedy,
    Random,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum CountKind {
    Ideals,
    Extensions,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProblemKind {
    Tsp,
    Dfas,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum AlgoArg {
    HeldKarp,
    Gs,
    Tradeoff,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum VerifyTarget {
    Construction,
    Counterexample,
    KpBaseline,
    PowerIdentity,
}

#[derive(Subcommand, Debug)]
pub enum BoundsCommand {
    Basic { n: u64 },
    Improved,
    Regbip { m: u64, d: u64 },
    Reglimit {
        d: u64,
        /// Evaluate at this q instead of maximising.
        #[arg(long)]
        q: Option<f64>,
    },
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Count ideals or linear extensions of a poset.
    Count {
        #[arg(value_enum)]
        what: CountKind,
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        method: Option<String>,
    },
    /// Exact size, chain count and inverse efficiency.
    Efficiency {
        #[command(flatten)]
        source: Source,
    },
    /// Count maximal chains of a set system.
    Chains {
        #[command(flatten)]
        source: Source,
    },
    /// Build a permutation cover of a set system.
    Cover {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        cover: CoverArgs,
        /// Also write the cover in text form to this file.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Solve TSP or DFAS exactly.
    Solve {
        #[arg(value_enum)]
        problem: ProblemKind,
        #[arg(long)]
        matrix: Option<PathBuf>,
        #[arg(long)]
        graph: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = AlgoArg::HeldKarp)]
        algo: AlgoArg,
        /// Set system for the tradeoff solver (default: tower:2:2).
        #[arg(long)]
        setsystem: Option<PathBuf>,
        #[arg(long)]
        set_builtin: Option<String>,
        #[arg(long, default_value_t = 1)]
        g: usize,
        #[command(flatten)]
        cover: CoverArgs,
    },
    /// Evaluate an efficiency bound.
    Bounds {
        #[command(subcommand)]
        which: BoundsCommand,
    },
    /// Reproduce a reference constant; exit status 1 on mismatch.
    Verify {
        #[arg(value_enum)]
        target: VerifyTarget,
        /// Include the long-running counts.
        #[arg(long)]
        extended: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub status: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Debug, thiserror::Error)]
enum Failure {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Resource(String),
}

impl Failure {
    fn status(&self) -> i32 {
        match self {
            Failure::Input(_) => EXIT_INPUT,
            Failure::Resource(_) => EXIT_RESOURCE,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::ResourceLimit { .. } => Failure::Resource(e.to_string()),
            other => Failure::Input(other.to_string()),
        }
    }
}

type Fallible<T> = std::result::Result<T, Failure>;

/// Parsed output: the JSON document and whether every verification passed.
struct Report {
    doc: Value,
    ok: bool,
    notes: Vec<String>,
}

impl Report {
    fn ok(doc: Value) -> Self {
        Report {
            doc,
            ok: true,
            notes: Vec::new(),
        }
    }
}

struct Ctx {
    budget: Budget,
    cache: CountCache,
}

fn read(path: &Path) -> Fallible<String> {
    std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn parse_file<T>(path: &Path, parse: fn(&str) -> Result<T, FormatError>) -> Fallible<T> {
    parse(&read(path)?).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

enum Loaded {
    Poset(Poset, String),
    SetSystem(SetSystem, String),
}

fn load(source: &Source) -> Fallible<Loaded> {
    let given = [source.poset.is_some(), source.setsystem.is_some(), source.builtin.is_some()];
    if given.iter().filter(|&&b| b).count() != 1 {
        return Err(Failure::Input("give exactly one of --poset, --setsystem, --builtin".into()));
    }
    if let Some(path) = &source.poset {
        return Ok(Loaded::Poset(parse_file(path, parse_poset)?, path.display().to_string()));
    }
    if let Some(path) = &source.setsystem {
        return Ok(Loaded::SetSystem(parse_file(path, parse_set_system)?, path.display().to_string()));
    }
    let name = source.builtin.as_deref().unwrap();
    match parse_builtin(name).map_err(|e| Failure::Input(e.to_string()))? {
        Builtin::Poset(p) => Ok(Loaded::Poset(p, name.into())),
        Builtin::SetSystem(a) => Ok(Loaded::SetSystem(a, name.into())),
    }
}

fn load_poset(source: &Source) -> Fallible<(Poset, String)> {
    match load(source)? {
        Loaded::Poset(p, n) => Ok((p, n)),
        Loaded::SetSystem(..) => Err(Failure::Input("this command needs a poset".into())),
    }
}

fn load_set_system(source: &Source, budget: Budget) -> Fallible<(SetSystem, String)> {
    match load(source)? {
        Loaded::SetSystem(a, n) => Ok((a, n)),
        Loaded::Poset(p, n) => Ok((SetSystem::from_poset_ideals(&p, budget)?, format!("ideals of {n}"))),
    }
}

fn provenance(command: &str, fields: &[(&str, Value)], budget: Budget) -> Value {
    let mut m = Map::new();
    m.insert("tool".into(), json!("permtrade"));
    m.insert("version".into(), json!(env!("CARGO_PKG_VERSION")));
    m.insert("command".into(), json!(command));
    m.insert("memory_budget".into(), json!(budget.max_entries.to_string()));
    for (k, v) in fields {
        m.insert((*k).into(), v.clone());
    }
    Value::Object(m)
}

fn efficiency_json(r: &EfficiencyReport) -> Value {
    json!({
        "n": r.n.to_string(),
        "size": r.size.to_string(),
        "chains": r.chains.to_string(),
        "inv_eta": r.inv_eta.as_ref().map_or("inf".to_string(), |d| d.to_string()),
        "eta": if r.is_zero_efficiency() { "0".to_string() } else { format!("{:.12}", r.eta_f64()) },
    })
}

fn real(x: f64) -> Value {
    json!(format!("{x:.12}"))
}

fn bound_json(r: &BoundReport) -> Value {
    let params: Map<String, Value> = r.parameters.iter().map(|(k, v)| ((*k).into(), json!(v))).collect();
    let aux: Map<String, Value> = r.auxiliaries.iter().map(|(k, v)| ((*k).into(), real(*v))).collect();
    json!({ "name": r.name, "parameters": params, "value": real(r.value), "auxiliaries": aux })
}

fn minplus(v: MinPlus) -> Value {
    json!(v.value().map_or("inf".to_string(), |x| x.to_string()))
}

fn strings(xs: &[usize]) -> Value {
    Value::Array(xs.iter().map(|x| json!(x.to_string())).collect())
}

fn solve_json(r: &SolveResult<MinPlus>, tour: bool) -> Value {
    let witness = r.witness.as_ref().map(|w| {
        if tour {
            strings(&tour_from_permutation(w))
        } else {
            strings(w)
        }
    });
    json!({
        "value": minplus(r.value),
        "witness": witness,
        "stats": {
            "peak_resident_entries": r.stats.peak_resident_entries.to_string(),
            "total_dp_updates": r.stats.total_dp_updates.to_string(),
            "cover_product_size": r.stats.cover_product_size.to_string(),
            "witness_resident_entries": r.stats.witness_resident_entries.to_string(),
        },
    })
}

fn verification_json(name: &str, v: &Verification) -> Value {
    let checks: Vec<Value> = v
        .checks
        .iter()
        .map(|c| {
            json!({
                "name": c.name,
                "expected": c.expected,
                "actual": c.actual,
                "status": if c.pass { "PASS" } else { "FAIL" },
            })
        })
        .collect();
    let values: Map<String, Value> = v.values.iter().map(|(k, x)| (k.clone(), json!(x))).collect();
    json!({
        "verification": name,
        "status": if v.passed() { "PASS" } else { "FAIL" },
        "checks": checks,
        "values": values,
    })
}

fn cover_json(a: &SetSystem, c: &PermutationCover) -> Value {
    let chains = a.count_maximal_chains();
    let bound = chains.to_u64().map(|c| greedy_size_bound(a.universe(), c));
    json!({
        "n": c.n.to_string(),
        "size": c.len().to_string(),
        "certified": c.certified,
        "note": c.note,
        "chains": chains.to_string(),
        "greedy_bound": bound.map(real),
        "permutations": c.perms.iter().map(|p| Value::String(p.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" "))).collect::<Vec<_>>(),
    })
}

fn tradeoff_config(setsystem: &Option<PathBuf>, set_builtin: &Option<String>, g: usize, cover: &CoverArgs, budget: Budget) -> Fallible<(SolverConfig, String)> {
    let source = match (setsystem, set_builtin) {
        (None, None) => Source {
            builtin: Some("tower:2:2".into()),
            ..Source::default()
        },
        (p, b) => Source {
            setsystem: p.clone(),
            builtin: b.clone(),
            poset: None,
        },
    };
    let (a, name) = load_set_system(&source, budget)?;
    let mut config = SolverConfig::new(a);
    config.groups = g;
    config.cover = cover.strategy();
    config.budget = budget;
    Ok((config, name))
}

fn strategy_fields(cover: &CoverArgs) -> Vec<(&'static str, Value)> {
    match cover.strategy {
        StrategyArg::Greedy => vec![("cover", json!("greedy"))],
        StrategyArg::Random => vec![
            ("cover", json!("random")),
            ("seed", json!(cover.seed.to_string())),
            ("factor", json!(cover.factor.to_string())),
        ],
    }
}

fn execute(cmd: &Command, ctx: &Ctx) -> Fallible<Report> {
    let budget = ctx.budget;
    match cmd {
        Command::Count { what, source, method } => {
            let (p, name) = load_poset(source)?;
            let (di, de) = default_methods(&p);
            let (value, method_name) = match what {
                CountKind::Ideals => {
                    let m = match method {
                        Some(s) => IdealMethod::from_name(s).ok_or_else(|| Failure::Input(format!("unknown ideal method {s:?}")))?,
                        None => di,
                    };
                    (ctx.cache.ideals(&p, m, budget)?, m.name())
                }
                CountKind::Extensions => {
                    let m = match method {
                        Some(s) => ExtensionMethod::from_name(s).ok_or_else(|| Failure::Input(format!("unknown extension method {s:?}")))?,
                        None => de,
                    };
                    (ctx.cache.extensions(&p, m, budget)?, m.name())
                }
            };
            let kind = if *what == CountKind::Ideals { "ideals" } else { "extensions" };
            Ok(Report::ok(json!({
                "count": kind,
                "n": p.len().to_string(),
                "value": value.to_string(),
                "provenance": provenance("count", &[("method", json!(method_name)), ("input", json!(name))], budget),
            })))
        }
        Command::Efficiency { source } => {
            let (report, name) = match load(source)? {
                Loaded::Poset(p, name) => {
                    let (im, em) = default_methods(&p);
                    let alpha = ctx.cache.ideals(&p, im, budget)?;
                    let lambda = ctx.cache.extensions(&p, em, budget)?;
                    let method = format!("ideals: {}, extensions: {}", im.name(), em.name());
                    (EfficiencyReport::new(p.len(), alpha, lambda, method), name)
                }
                Loaded::SetSystem(a, name) => (a.chain_efficiency(), name),
            };
            let mut doc = efficiency_json(&report);
            doc["provenance"] = provenance("efficiency", &[("method", json!(report.method)), ("input", json!(name))], budget);
            Ok(Report::ok(doc))
        }
        Command::Chains { source } => {
            let (a, name) = load_set_system(source, budget)?;
            Ok(Report::ok(json!({
                "n": a.universe().to_string(),
                "size": a.len().to_string(),
                "chains": a.count_maximal_chains().to_string(),
                "provenance": provenance("chains", &[("method", json!("member dp")), ("input", json!(name))], budget),
            })))
        }
        Command::Cover { source, cover, output } => {
            let (a, name) = load_set_system(source, budget)?;
            let c = match cover.strategy() {
                CoverStrategy::Greedy => greedy_cover(&a)?,
                CoverStrategy::Randomized { seed, factor } => randomized_cover(&a, seed, factor)?,
            };
            if let Some(path) = output {
                std::fs::write(path, write_cover(&c)).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
            }
            let mut doc = cover_json(&a, &c);
            let mut fields = strategy_fields(cover);
            fields.push(("input", json!(name)));
            doc["provenance"] = provenance("cover", &fields, budget);
            Ok(Report::ok(doc))
        }
        Command::Solve { problem, matrix, graph, algo, setsystem, set_builtin, g, cover } => {
            let mut fields: Vec<(&str, Value)> = Vec::new();
            let (result, tour) = match problem {
                ProblemKind::Tsp => {
                    let path = matrix.as_ref().ok_or_else(|| Failure::Input("solve tsp needs --matrix".into()))?;
                    let inst = parse_file(path, parse_tsp_matrix)?;
                    let r = match algo {
                        AlgoArg::Gs => solve_gurevich_shelah(&inst)?,
                        AlgoArg::HeldKarp => solve_held_karp(&tsp_as_permutation_problem(&inst)?, budget)?,
                        AlgoArg::Tradeoff => {
                            let (config, name) = tradeoff_config(setsystem, set_builtin, *g, cover, budget)?;
                            fields.push(("set_system", json!(name)));
                            fields.push(("g", json!(g.to_string())));
                            fields.extend(strategy_fields(cover));
                            solve_chain_tradeoff(&tsp_as_permutation_problem(&inst)?, &config)?
                        }
                    };
                    (r, true)
                }
                ProblemKind::Dfas => {
                    let path = graph.as_ref().ok_or_else(|| Failure::Input("solve dfas needs --graph".into()))?;
                    let inst = parse_file(path, parse_dfas_graph)?;
                    let p = dfas_as_permutation_problem(&inst)?;
                    let r = match algo {
                        AlgoArg::Gs => return Err(Failure::Input("gs solves TSP only".into())),
                        AlgoArg::HeldKarp => solve_held_karp(&p, budget)?,
                        AlgoArg::Tradeoff => {
                            let (config, name) = tradeoff_config(setsystem, set_builtin, *g, cover, budget)?;
                            fields.push(("set_system", json!(name)));
                            fields.push(("g", json!(g.to_string())));
                            fields.extend(strategy_fields(cover));
                            solve_chain_tradeoff(&p, &config)?
                        }
                    };
                    (r, false)
                }
            };
            let algo_name = match algo {
                AlgoArg::HeldKarp => "held-karp",
                AlgoArg::Gs => "gurevich-shelah",
                AlgoArg::Tradeoff => "chain-tradeoff",
            };
            fields.insert(0, ("algorithm", json!(algo_name)));
            let mut doc = solve_json(&result, tour);
            doc["problem"] = json!(if tour { "tsp" } else { "dfas" });
            doc["provenance"] = provenance("solve", &fields, budget);
            Ok(Report::ok(doc))
        }
        Command::Bounds { which } => {
            let r = match which {
                BoundsCommand::Basic { n } => basic_upper_bound(*n)?,
                BoundsCommand::Improved => improved_upper_bound(),
                BoundsCommand::Regbip { m, d } => regular_bipartite_bounds(*m, *d)?,
                BoundsCommand::Reglimit { d, q: None } => regular_bipartite_efficiency_limit(*d)?,
                BoundsCommand::Reglimit { d, q: Some(q) } => {
                    if !(0.0..=1.0).contains(q) || *d == 0 {
                        return Err(Failure::Input("reglimit needs d >= 1 and q in [0, 1]".into()));
                    }
                    BoundReport {
                        name: "reglimit",
                        parameters: vec![("d", d.to_string()), ("q", q.to_string())],
                        value: limit_at(*d, *q),
                        auxiliaries: vec![("q", *q)],
                    }
                }
            };
            let mut doc = bound_json(&r);
            doc["provenance"] = provenance("bounds", &[("method", json!("f64 bisection / golden section"))], budget);
            Ok(Report::ok(doc))
        }
        Command::Verify { target, extended, seed } => {
            let (name, v) = match target {
                VerifyTarget::Counterexample => ("counterexample", verify::counterexample(&ctx.cache, budget)?),
                VerifyTarget::KpBaseline => ("kp-baseline", verify::kp_baseline(&ctx.cache, budget)?),
                VerifyTarget::Construction => ("construction", verify::construction(&ctx.cache, budget, *extended)?),
                VerifyTarget::PowerIdentity => ("power-identity", verify::power_identity(*seed, 50, 100, budget)?),
            };
            let mut doc = verification_json(name, &v);
            let mut fields = vec![("extended", json!(extended))];
            if *target == VerifyTarget::PowerIdentity {
                fields.push(("seed", json!(seed.to_string())));
            }
            doc["provenance"] = provenance("verify", &fields, budget);
            let notes = v
                .checks
                .iter()
                .map(|c| format!("{} {}: expected {}, got {}", if c.pass { "PASS" } else { "FAIL" }, c.name, c.expected, c.actual))
                .collect();
            Ok(Report {
                doc,
                ok: v.passed(),
                notes,
            })
        }
    }
}

pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome { status: EXIT_INPUT, stdout: String::new(), stderr: text }
            } else {
                Outcome { status: EXIT_OK, stdout: text, stderr: String::new() }
            };
        }
    };
    let ctx = Ctx {
        budget: Budget::new(cli.memory_budget),
        cache: CountCache::new(),
    };
    let go = || execute(&cli.command, &ctx);
    let result = match cli.threads {
        Some(k) => match rayon::ThreadPoolBuilder::new().num_threads(k).build() {
            Ok(pool) => pool.install(go),
            Err(e) => Err(Failure::Input(format!("thread pool: {e}"))),
        },
        None => go(),
    };
    match result {
        Ok(report) => {
            let mut stdout = serde_json::to_string_pretty(&report.doc).expect("json");
            stdout.push('\n');
            let mut stderr = report.notes.join("\n");
            if !stderr.is_empty() {
                stderr.push('\n');
            }
            Outcome {
                status: if report.ok { EXIT_OK } else { EXIT_MISMATCH },
                stdout,
                stderr,
            }
        }
        Err(f) => Outcome {
            status: f.status(),
            stdout: String::new(),
            stderr: format!("error: {f}\n"),
        },
    }
}
