use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use hypermatch::extremal::{self, Context, Parameters};
use hypermatch::hypercore::{self, Hypergraph};
use hypermatch::randcons::{self, MembershipPolicy, RoundOnePlan, Tolerances};
use hypermatch::rational::{self, Rational};
use hypermatch::samuels::{self, SamuelsQuery, TwoPointFamily};
use hypermatch::thresholds::{self, Mode, ThresholdQuery};
use hypermatch::{optmatch, selftest, storage, Error};
use serde_json::{json, Value};

/// Exact matchings, covers and thresholds of small uniform hypergraphs.
#[derive(Parser)]
#[command(name = "hypermatch", version)]
struct Cli {
    /// Worker threads for sharded searches (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Emit CSV instead of JSON where the command supports it.
    #[arg(long, global = true)]
    csv: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Matching number, fractional optimum and cover number of a `.hg` file.
    Solve { file: PathBuf },
    /// Write an extremal construction as `.hg`.
    Construct(ConstructArgs),
    /// Evaluate a conjectured or established threshold formula.
    Conjecture(ConjectureArgs),
    /// Small-sum probabilities of two-point distributions.
    #[command(subcommand)]
    Samuels(SamuelsCommand),
    /// Exhaustive threshold search.
    Threshold(ThresholdArgs),
    /// Shift a fractional cover so its lightest vertices carry zero weight.
    Reduce(ReduceArgs),
    /// Storage allocations and their recovery counts.
    #[command(subcommand)]
    Storage(StorageCommand),
    /// Two-round random construction of a sparse subhypergraph.
    Randcons(RandconsArgs),
    /// Run the acceptance battery.
    Selftest {
        /// Run a single criterion.
        #[arg(long)]
        only: Option<u8>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ConstructKind {
    H0,
    H1,
    Clique,
}

#[derive(Args)]
struct ConstructArgs {
    kind: ConstructKind,
    #[arg(long)]
    k: usize,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    s: Option<usize>,
    /// Output path; the `.hg` text goes to standard output when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ConjectureArgs {
    context: String,
    #[arg(long)]
    k: usize,
    #[arg(long)]
    d: Option<usize>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long, value_parser = parse_rational)]
    s: Option<Rational>,
}

#[derive(Args)]
struct Expectations {
    /// Comma-separated expectations, e.g. `1/10,1/5,3/10`.
    #[arg(long, value_delimiter = ',', value_parser = parse_rational, conflicts_with_all = ["l", "x"])]
    mus: Option<Vec<Rational>>,
    /// Number of equal expectations (with `--x`).
    #[arg(long, requires = "x")]
    l: Option<usize>,
    #[arg(long, value_parser = parse_rational, requires = "l")]
    x: Option<Rational>,
}

impl Expectations {
    fn query(&self) -> hypermatch::Result<SamuelsQuery> {
        match (&self.mus, self.l, &self.x) {
            (Some(mus), _, _) => SamuelsQuery::new(mus.clone()),
            (None, Some(l), Some(x)) => SamuelsQuery::uniform(l, x.clone()),
            _ => Err(Error::InvalidArgument("give --mus or both --l and --x".into())),
        }
    }
}

#[derive(Subcommand)]
enum SamuelsCommand {
    /// Exact `Q_t`.
    Qt {
        #[command(flatten)]
        exp: Expectations,
        #[arg(long)]
        t: usize,
    },
    /// `min_t Q_t` and its smallest minimizer.
    Qmin {
        #[command(flatten)]
        exp: Expectations,
    },
    /// Where `t = 0` stops minimizing `Q_t` for equal expectations.
    Scan {
        #[arg(long)]
        l: usize,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
    /// Monte Carlo estimate of the small-sum probability.
    Mc {
        #[command(flatten)]
        exp: Expectations,
        #[arg(long)]
        t: usize,
        #[arg(long, default_value_t = 100_000)]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Args)]
struct ThresholdArgs {
    #[arg(long, value_parser = parse_mode)]
    mode: Mode,
    #[arg(long)]
    k: usize,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    d: usize,
    #[arg(long, value_parser = parse_rational)]
    s: Rational,
    /// Maximum number of edge sets to enumerate.
    #[arg(long, default_value_t = thresholds::DEFAULT_BUDGET)]
    budget: u128,
    /// Write the witness hypergraph here.
    #[arg(long)]
    witness: Option<PathBuf>,
    /// Also compare against constructions, formulas and the other mode.
    #[arg(long)]
    compare: bool,
}

#[derive(Args)]
struct ReduceArgs {
    /// Vertex weighting (`.wt`).
    #[arg(long)]
    weights: PathBuf,
    #[arg(long)]
    k: usize,
    #[arg(long)]
    d: usize,
    /// Write the shifted weighting here.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum StorageCommand {
    /// Recovery count of an allocation read from `.wt`.
    Phi {
        #[arg(long)]
        r: usize,
        #[arg(long)]
        alloc: PathBuf,
        /// Budget; defaults to the allocation total rounded up.
        #[arg(long = "T")]
        budget: Option<usize>,
    },
    /// The clique and spread allocations.
    Candidates {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: usize,
        #[arg(long = "T")]
        budget: usize,
    },
    /// Best allocation on the grid of multiples of `1/q`.
    Optimize {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: usize,
        #[arg(long = "T")]
        budget: usize,
        /// Grid denominator (default `2r`).
        #[arg(long)]
        q: Option<usize>,
        #[arg(long, default_value_t = storage::DEFAULT_GRID_BUDGET)]
        grid_budget: u128,
        /// Write the best allocation here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Policy {
    Strict,
    PerRoundCopies,
}

#[derive(Args)]
struct RandconsArgs {
    #[arg(long)]
    base: PathBuf,
    #[arg(long, required_unless_present = "asymptotic_exponents")]
    p: Option<f64>,
    #[arg(long, required_unless_present = "asymptotic_exponents")]
    rounds: Option<usize>,
    /// Use `p = n^-0.9` and `rounds = n^1.1`.
    #[arg(long, conflicts_with_all = ["p", "rounds"])]
    asymptotic_exponents: bool,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Degree order for the round degree check.
    #[arg(long, default_value_t = 0)]
    d: usize,
    #[arg(long, value_enum, default_value_t = Policy::Strict)]
    policy: Policy,
    #[arg(long, default_value_t = 2)]
    pair_cap: usize,
    #[arg(long, default_value_t = 0.5)]
    coverage_rel: f64,
    #[arg(long, default_value_t = 1.0 / 3.0)]
    size_rel: f64,
    #[arg(long, default_value_t = 0.5)]
    degree_fraction: f64,
}

fn parse_rational(s: &str) -> Result<Rational, String> {
    rational::parse(s)
}

fn parse_mode(s: &str) -> Result<Mode, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// A command's output: JSON payload or CSV text, and the seed it used.
struct Output {
    payload: Value,
    csv: Option<String>,
    seed: Option<u64>,
}

impl Output {
    fn json(payload: Value) -> Self {
        Output { payload, csv: None, seed: None }
    }
}

enum Failure {
    Usage(String),
    Compute(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidArgument(m) => Failure::Usage(m),
            other => Failure::Compute(other),
        }
    }
}

type Outcome = Result<Output, Failure>;

fn to_json<T: serde::Serialize>(value: &T) -> Value {
    serde_json::to_value(value).expect("serializable")
}

fn histogram(values: impl IntoIterator<Item = usize>) -> BTreeMap<usize, usize> {
    let mut h = BTreeMap::new();
    for v in values {
        *h.entry(v).or_insert(0) += 1;
    }
    h
}

fn solve(file: &PathBuf) -> Outcome {
    let h = hypercore::read_hypergraph(file)?;
    let report = optmatch::fractional_optimum(&h)?;
    let csv = format!(
        "quantity,value\nnu,{}\nnu_star,{}\ntau_star,{}\ntau,{}\n",
        report.nu,
        rational::format(&report.nu_star),
        rational::format(&report.tau_star),
        report.tau
    );
    Ok(Output { payload: to_json(&report), csv: Some(csv), seed: None })
}

fn construct(a: &ConstructArgs) -> Outcome {
    let need_s = || a.s.ok_or_else(|| Failure::Usage("--s is required for this construction".into()));
    let h: Hypergraph = match a.kind {
        ConstructKind::H0 => extremal::construct_h0(a.k, a.n)?,
        ConstructKind::H1 => extremal::construct_h1(a.k, a.n, need_s()?)?,
        ConstructKind::Clique => extremal::construct_clique_plus_isolated(a.k, a.n, need_s()?)?,
    };
    match &a.out {
        Some(path) => {
            hypercore::write_hypergraph(path, &h)?;
            Ok(Output::json(json!({
                "k": h.k(),
                "n": h.n(),
                "edges": h.edge_count(),
                "path": path.display().to_string(),
            })))
        }
        None => Ok(Output { payload: Value::Null, csv: Some(hypercore::render_hypergraph(&h)), seed: None }),
    }
}

fn conjecture(a: &ConjectureArgs) -> Outcome {
    let context: Context = a.context.parse()?;
    let params = Parameters { k: a.k, d: a.d, n: a.n, s: a.s.clone() };
    Ok(Output::json(to_json(&extremal::conjecture_values(context, params)?)))
}

fn samuels_cmd(c: &SamuelsCommand) -> Outcome {
    match c {
        SamuelsCommand::Qt { exp, t } => {
            let q = exp.query()?;
            let value = samuels::q_t(&q, *t)?;
            Ok(Output::json(json!({
                "mus": q.mus().iter().map(rational::format).collect::<Vec<_>>(),
                "t": t,
                "q_t": rational::format(&value),
                "q_t_float": rational::to_f64(&value),
            })))
        }
        SamuelsCommand::Qmin { exp } => {
            let q = exp.query()?;
            let (value, t) = samuels::q_min(&q);
            Ok(Output::json(json!({
                "mus": q.mus().iter().map(rational::format).collect::<Vec<_>>(),
                "argmin": t,
                "q_min": rational::format(&value),
                "q_min_float": rational::to_f64(&value),
            })))
        }
        SamuelsCommand::Scan { l, tol } => {
            let scan = samuels::boundary_scan(*l, *tol)?;
            Ok(Output { payload: to_json(&scan), csv: Some(scan.csv()), seed: None })
        }
        SamuelsCommand::Mc { exp, t, samples, seed } => {
            let family = TwoPointFamily::new(exp.query()?, *t)?;
            let estimate = samuels::monte_carlo_small_sum(&family, *samples, *seed)?;
            let exact = family.small_sum_probability();
            let payload = json!({
                "mus": family.query().mus().iter().map(rational::format).collect::<Vec<_>>(),
                "t": t,
                "samples": samples,
                "estimate": estimate,
                "exact": rational::format(&exact),
                "exact_float": rational::to_f64(&exact),
            });
            Ok(Output { payload, csv: None, seed: Some(*seed) })
        }
    }
}

fn threshold(a: &ThresholdArgs) -> Outcome {
    let q = ThresholdQuery::new(a.mode, a.k, a.n, a.d, a.s.clone())?;
    let result = thresholds::brute_force_threshold(&q, a.budget)?;
    if let Some(path) = &a.witness {
        hypercore::write_hypergraph(path, &result.witness)?;
    }
    let mut payload = to_json(&result);
    if a.compare {
        payload["comparison"] = to_json(&thresholds::compare_with_conjecture(&q, a.budget)?);
    }
    Ok(Output::json(payload))
}

fn reduce(a: &ReduceArgs) -> Outcome {
    let w = hypercore::read_weighting(&a.weights)?;
    let r = thresholds::reduce_fractional_instance(&w, a.k, a.d)?;
    if let Some(path) = &a.out {
        hypercore::write_weighting(path, &r.remapped)?;
    }
    let link = r.link()?;
    let cover = r.link_cover();
    let mut payload = to_json(&r);
    payload["link_edges"] = json!(link.edge_count());
    payload["link_cover_total"] = json!(rational::format(&cover.total()));
    payload["link_cover_valid"] = json!(cover.covers(&link));
    Ok(Output::json(payload))
}

fn storage_cmd(c: &StorageCommand) -> Outcome {
    match c {
        StorageCommand::Phi { r, alloc, budget } => {
            let x = hypercore::read_weighting(alloc)?;
            let budget = match budget {
                Some(t) => *t,
                None => rational::to_f64(&x.total().ceil()) as usize,
            };
            let a = storage::Allocation::new(x, *r, budget)?;
            Ok(Output::json(to_json(&storage::phi(&a))))
        }
        StorageCommand::Candidates { n, r, budget } => {
            Ok(Output::json(to_json(&storage::candidate_allocations(*n, *r, *budget)?)))
        }
        StorageCommand::Optimize { n, r, budget, q, grid_budget, out } => {
            let q = q.unwrap_or_else(|| storage::default_denominator(*r));
            let best = storage::optimize_grid(*n, *r, *budget, q, *grid_budget)?;
            if let Some(path) = out {
                hypercore::write_weighting(path, &best.allocation.x)?;
            }
            let mut payload = to_json(&best);
            payload["q"] = json!(q);
            Ok(Output::json(payload))
        }
    }
}

fn randcons_cmd(a: &RandconsArgs) -> Outcome {
    let base = hypercore::read_hypergraph(&a.base)?;
    let plan = if a.asymptotic_exponents {
        RoundOnePlan::with_asymptotic_exponents(base.clone(), a.d, a.seed)?
    } else {
        let (p, rounds) = (a.p.expect("required by clap"), a.rounds.expect("required by clap"));
        RoundOnePlan::new(base.clone(), rounds, p, a.d, a.seed)?
    };
    let plan = plan.with_tolerances(Tolerances {
        coverage_rel: a.coverage_rel,
        pair_cap: a.pair_cap,
        size_rel: a.size_rel,
        degree_fraction: a.degree_fraction,
    });
    let outcome = randcons::sample_rounds(&plan);
    let policy = match a.policy {
        Policy::Strict => MembershipPolicy::Strict,
        Policy::PerRoundCopies => MembershipPolicy::PerRoundCopies,
    };
    let mut payload = json!({
        "plan": to_json(&plan),
        "round_sizes": outcome.subsets.iter().map(Vec::len).collect::<Vec<_>>(),
        "coverage": outcome.coverage,
        "checks": to_json(&outcome.checks),
        "recount_verified": outcome.verify(&plan),
    });
    let mut csv = String::from("vertex,coverage,degree\n");
    match randcons::prepare_round_two(&base, &outcome, policy) {
        Ok(two) => {
            let sparse = randcons::build_sparse_subgraph(&two, base.k(), a.seed)?;
            let n = base.n();
            let codegrees = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).map(|(u, v)| sparse.codegree(u, v));
            payload["round_two"] = json!({
                "policy": to_json(&policy),
                "skipped_rounds": two.skipped,
                "selected_copies": sparse.copies.len(),
                "distinct_edges": sparse.hypergraph.edge_count(),
                "degree_histogram": histogram(sparse.degrees.iter().copied()),
                "codegree_histogram": histogram(codegrees),
                "max_codegree": sparse.max_codegree(),
                "degree_decomposition": sparse.degree_decomposition_holds(&two),
            });
            for v in 0..n {
                csv.push_str(&format!("{v},{},{}\n", sparse.targets[v], sparse.degrees[v]));
            }
        }
        Err(Error::AmbiguousMembership(m)) => {
            payload["round_two"] = json!({ "error": format!("ambiguous membership: {m}") });
        }
        Err(e) => return Err(e.into()),
    }
    Ok(Output { payload, csv: Some(csv), seed: Some(a.seed) })
}

fn run_selftest(only: Option<u8>, csv: bool) -> ExitCode {
    let outcomes = match only {
        Some(id) => match selftest::run_one(id) {
            Some(o) => vec![o],
            None => {
                eprintln!("error: no criterion {id}");
                return ExitCode::from(2);
            }
        },
        None => selftest::run_all(),
    };
    if csv {
        println!("id,name,passed,elapsed_seconds,detail");
        for o in &outcomes {
            println!("{},{},{},{:.3},\"{}\"", o.id, o.name, o.passed, o.elapsed.as_secs_f64(), o.detail.replace('"', "'"));
        }
    } else {
        for o in &outcomes {
            println!("{}", o.line());
        }
        let passed = outcomes.iter().filter(|o| o.passed).count();
        println!("{passed}/{} criteria passed", outcomes.len());
    }
    if outcomes.iter().all(|o| o.passed) {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    if let Some(jobs) = cli.jobs {
        if jobs == 0 {
            eprintln!("error: --jobs must be at least 1");
            return ExitCode::from(2);
        }
        rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global().expect("global pool set once");
    }
    let start = Instant::now();
    let result = match &cli.command {
        Command::Solve { file } => solve(file),
        Command::Construct(a) => construct(a),
        Command::Conjecture(a) => conjecture(a),
        Command::Samuels(c) => samuels_cmd(c),
        Command::Threshold(a) => threshold(a),
        Command::Reduce(a) => reduce(a),
        Command::Storage(c) => storage_cmd(c),
        Command::Randcons(a) => randcons_cmd(a),
        Command::Selftest { only } => return run_selftest(*only, cli.csv),
    };
    match result {
        Ok(out) => {
            if out.payload.is_null() || cli.csv {
                match out.csv {
                    Some(text) => print!("{text}"),
                    None => {
                        eprintln!("error: this command has no CSV output");
                        return ExitCode::from(2);
                    }
                }
            } else {
                let mut envelope = json!({
                    "command": std::env::args().skip(1).collect::<Vec<_>>().join(" "),
                    "payload": out.payload,
                    "elapsed_seconds": start.elapsed().as_secs_f64(),
                });
                if let Some(seed) = out.seed {
                    envelope["seed"] = json!(seed);
                }
                println!("{}", serde_json::to_string_pretty(&envelope).expect("serializable"));
            }
            ExitCode::SUCCESS
        }
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Compute(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
