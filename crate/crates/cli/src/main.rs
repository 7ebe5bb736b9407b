//! `polymer`: approximate counting and sampling for Potts, hard-core and
//! coloring models through truncated cluster expansions.
//!
//! Every run prints one schema-versioned JSON report on stdout. Exit codes:
//! 0 on success, 2 when `potts certify` declines to certify, 1 on errors
//! (reported on stderr as `error[code]: message`).

use std::collections::HashMap;
use std::hash::Hash;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use polymer_expansion::graph::{
    self, expansion_exact, expansion_spectral, random_regular, DEFAULT_EXACT_CAP,
};
use polymer_expansion::models::{
    coloring_count, hc_count, hc_index, potts_certified_count, potts_count, ApproxResult,
    BranchReport, ColoringParams, ColoringSampler, Draw, HardCoreParams, HardCoreSampler,
    HardCoreVariant, PottsParams, PottsSampler,
};
use polymer_expansion::oracle::{self, OracleLimits};
use polymer_expansion::sampler::XiMethod;
use polymer_expansion::{Error, Graph, Side};

const SCHEMA: &str = "polymer-cli/1";

#[derive(Parser)]
#[command(
    name = "polymer",
    version,
    about = "Cluster-expansion counting and sampling for spin systems"
)]
struct Cli {
    /// Worker threads for the parallel maps; 1 keeps reductions sequential.
    #[arg(long, global = true, default_value_t = 1)]
    threads: usize,
    /// Seed for every random choice.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a random Δ-regular graph.
    Gen(GenArgs),
    /// Measure edge/vertex expansion exactly and spectrally.
    Expansion(ExpansionArgs),
    /// Ferromagnetic Potts model.
    Potts {
        #[command(subcommand)]
        action: PottsAction,
    },
    /// Hard-core model on bipartite graphs.
    Hardcore {
        #[command(subcommand)]
        action: HardcoreAction,
    },
    /// Proper q-colorings of bipartite graphs with equal sides.
    Colorings {
        #[command(subcommand)]
        action: ColoringsAction,
    },
    /// Exhaustive ground truth.
    Oracle {
        #[command(subcommand)]
        action: OracleAction,
    },
    /// Kotecký–Preiss report (analytic and per-branch empirical) of a model run.
    Kp(KpArgs),
    /// Sample repeatedly and compare the empirical law with the oracle.
    SampleSuite(SuiteArgs),
}

#[derive(Args)]
struct GenArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    delta: usize,
    #[arg(long)]
    bipartite: bool,
    /// Output file (`.json` for JSON, text otherwise); omitted: embed in the report.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum ExpansionMethod {
    Exact,
    Spectral,
    Both,
}

#[derive(Args)]
struct ExpansionArgs {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long, value_enum, default_value = "both")]
    method: ExpansionMethod,
    /// Slack in the Friedman test `λ ≤ 2√(Δ−1) + eps`.
    #[arg(long, default_value_t = 0.01)]
    eps: f64,
}

#[derive(Args, Clone)]
struct PottsArgs {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long)]
    q: usize,
    #[arg(long)]
    beta: f64,
    /// Edge expansion to certify with; measured exactly when omitted.
    #[arg(long)]
    alpha: Option<f64>,
    #[arg(long, default_value_t = 0.1)]
    eps: f64,
}

#[derive(Args, Clone)]
struct SampleOpts {
    #[arg(long, default_value_t = 1)]
    samples: u64,
    /// Evaluate every Ξ ratio exactly instead of by truncated expansion.
    #[arg(long)]
    exact_xi: bool,
}

impl SampleOpts {
    fn method(&self) -> XiMethod {
        if self.exact_xi {
            XiMethod::Exact
        } else {
            XiMethod::Truncated
        }
    }
}

#[derive(Subcommand)]
enum PottsAction {
    Count(PottsArgs),
    Sample {
        #[command(flatten)]
        model: PottsArgs,
        #[command(flatten)]
        opts: SampleOpts,
    },
    /// Certify α = Δ/40 spectrally, then count.
    Certify {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        q: usize,
        #[arg(long)]
        beta: f64,
        #[arg(long, default_value_t = 0.1)]
        eps: f64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Variant {
    Expander,
    Random,
}

impl From<Variant> for HardCoreVariant {
    fn from(v: Variant) -> Self {
        match v {
            Variant::Expander => HardCoreVariant::Expander,
            Variant::Random => HardCoreVariant::RandomRegular,
        }
    }
}

#[derive(Args, Clone)]
struct HardcoreArgs {
    #[arg(long)]
    graph: PathBuf,
    /// Fugacity: decimal or rational (`7/2`).
    #[arg(long)]
    lambda: String,
    #[arg(long, value_enum, default_value = "expander")]
    variant: Variant,
    #[arg(long)]
    alpha: Option<f64>,
    #[arg(long, default_value_t = 0.1)]
    eps: f64,
}

#[derive(Subcommand)]
enum HardcoreAction {
    Count(HardcoreArgs),
    Sample {
        #[command(flatten)]
        model: HardcoreArgs,
        #[command(flatten)]
        opts: SampleOpts,
    },
}

#[derive(Args, Clone)]
struct ColoringsArgs {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long)]
    q: usize,
    #[arg(long, default_value_t = 0.1)]
    eps: f64,
    /// Constant C in Δ ≥ C q² ln² q.
    #[arg(long)]
    c: Option<f64>,
    /// Test mode: cap polymers at this size (default n) with g(γ) = |γ|.
    #[arg(long, num_args = 0..=1, default_missing_value = "0")]
    override_caps: Option<usize>,
}

#[derive(Subcommand)]
enum ColoringsAction {
    Count(ColoringsArgs),
    Sample {
        #[command(flatten)]
        model: ColoringsArgs,
        #[command(flatten)]
        opts: SampleOpts,
    },
}

#[derive(Subcommand)]
enum OracleAction {
    Hardcore {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        lambda: String,
    },
    Potts {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        q: usize,
        #[arg(long)]
        beta: f64,
    },
    Colorings {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        q: usize,
    },
    /// Ξ of one hard-core side universe by compatible-subset enumeration.
    Xi {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        lambda: String,
        #[arg(long, value_enum, default_value = "even")]
        side: SideArg,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum SideArg {
    Odd,
    Even,
}

#[derive(Clone, Copy, ValueEnum)]
enum Model {
    Potts,
    Hardcore,
    Colorings,
}

#[derive(Args)]
struct KpArgs {
    #[arg(long, value_enum)]
    model: Model,
    #[arg(long)]
    graph: PathBuf,
    #[arg(long)]
    q: Option<usize>,
    #[arg(long)]
    beta: Option<f64>,
    #[arg(long)]
    lambda: Option<String>,
    #[arg(long, value_enum, default_value = "expander")]
    variant: Variant,
    #[arg(long)]
    alpha: Option<f64>,
    #[arg(long, default_value_t = 0.1)]
    eps: f64,
    #[arg(long)]
    override_caps: Option<usize>,
}

#[derive(Args)]
struct SuiteArgs {
    #[command(flatten)]
    kp: KpArgs,
    #[arg(long, default_value_t = 10_000)]
    samples: u64,
    #[arg(long)]
    exact_xi: bool,
}

/// CLI failure: a library error, bad usage, or a regular "not certified".
enum Failure {
    Lib(Error),
    Usage(String),
    NotCertified(Value),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

type Outcome = std::result::Result<(Option<Graph>, Value), Failure>;

fn read_graph(path: &PathBuf) -> Result<Graph, Failure> {
    Ok(graph::io::read(path)?)
}

fn hardcore_params(
    lambda: &str,
    variant: Variant,
    alpha: Option<f64>,
) -> Result<HardCoreParams, Failure> {
    let bad = || Failure::Usage(format!("cannot parse lambda '{lambda}'"));
    let params = if let Some((n, d)) = lambda.split_once('/') {
        HardCoreParams::rational(
            n.trim().parse().map_err(|_| bad())?,
            d.trim().parse().map_err(|_| bad())?,
        )
    } else if let Ok(k) = lambda.trim().parse::<i64>() {
        HardCoreParams::rational(k, 1)
    } else {
        HardCoreParams::new(lambda.trim().parse().map_err(|_| bad())?)
    };
    let params = params.with_variant(variant.into());
    Ok(match alpha {
        Some(a) => params.with_alpha(a),
        None => params,
    })
}

fn coloring_params(args: &ColoringsArgs, n: usize) -> ColoringParams {
    let mut p = ColoringParams::new(args.q);
    if let Some(c) = args.c {
        p = p.with_c(c);
    }
    if let Some(cap) = args.override_caps {
        p = p.with_override(if cap == 0 { n } else { cap });
    }
    p
}

fn potts_params(args: &PottsArgs) -> PottsParams {
    let p = PottsParams::new(args.q, args.beta);
    match args.alpha {
        Some(a) => p.with_alpha(a),
        None => p,
    }
}

fn graph_summary(g: &Graph) -> Value {
    json!({
        "n": g.n(),
        "edges": g.edge_count(),
        "max_degree": g.max_degree(),
        "regular_degree": g.regular_degree(),
        "sides": g
            .sides()
            .cloned()
            .or_else(|| g.require_bipartition().ok().and_then(|b| b.sides().cloned()))
            .map(|s| json!({"odd": s.odd().len(), "even": s.even().len()})),
    })
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("reports are serialisable")
}

fn draws<T: Serialize>(
    n: u64,
    mut next: impl FnMut(u64) -> polymer_expansion::Result<Draw<T>>,
) -> Result<Value, Failure> {
    let mut out = Vec::new();
    for d in 0..n {
        let mut v = to_value(&next(d)?);
        v["draw"] = json!(d);
        out.push(v);
    }
    Ok(Value::Array(out))
}

fn gen(args: &GenArgs, seed: u64) -> Outcome {
    let g = random_regular(args.n, args.delta, args.bipartite, seed)?;
    let mut body = json!({"seed": seed});
    match &args.output {
        Some(path) => {
            graph::io::write(&g, path)?;
            body["output"] = json!(path.display().to_string());
        }
        None => {
            body["graph_file"] = serde_json::from_str(&graph::io::to_json(&g)).expect("graph JSON")
        }
    }
    Ok((Some(g), body))
}

fn expansion(args: &ExpansionArgs) -> Outcome {
    let g = read_graph(&args.graph)?;
    let mut body = json!({});
    if matches!(args.method, ExpansionMethod::Exact | ExpansionMethod::Both) {
        body["exact"] = to_value(&expansion_exact(&g, DEFAULT_EXACT_CAP)?);
    }
    if matches!(
        args.method,
        ExpansionMethod::Spectral | ExpansionMethod::Both
    ) {
        body["spectral"] = to_value(&expansion_spectral(&g, args.eps)?);
    }
    Ok((Some(g), body))
}

fn count_body(res: &ApproxResult) -> Value {
    to_value(res)
}

fn potts(action: &PottsAction, seed: u64) -> Outcome {
    match action {
        PottsAction::Count(a) => {
            let g = read_graph(&a.graph)?;
            let res = potts_count(&g, &potts_params(a), a.eps)?;
            Ok((Some(g), count_body(&res)))
        }
        PottsAction::Sample { model, opts } => {
            let g = read_graph(&model.graph)?;
            let sampler = PottsSampler::new(&g, &potts_params(model), model.eps, opts.method())?;
            let samples = draws(opts.samples, |d| sampler.draw(seed, d))?;
            Ok((
                Some(g),
                json!({"brute": sampler.is_brute(), "samples": samples}),
            ))
        }
        PottsAction::Certify {
            graph,
            q,
            beta,
            eps,
        } => {
            let g = read_graph(graph)?;
            let cert = potts_certified_count(&g, *q, *beta, *eps)?;
            let body = json!({
                "certification": to_value(&cert),
                "binding_threshold": "lambda(G) <= 2 sqrt(Delta-1) + 1/100 and beta >= 200 ln(q*Delta)/Delta",
            });
            if cert.certified {
                Ok((Some(g), body))
            } else {
                Err(Failure::NotCertified(report_value(Some(&g), body)))
            }
        }
    }
}

fn hardcore(action: &HardcoreAction, seed: u64) -> Outcome {
    match action {
        HardcoreAction::Count(a) => {
            let g = read_graph(&a.graph)?;
            let res = hc_count(&g, &hardcore_params(&a.lambda, a.variant, a.alpha)?, a.eps)?;
            Ok((Some(g), count_body(&res)))
        }
        HardcoreAction::Sample { model, opts } => {
            let g = read_graph(&model.graph)?;
            let params = hardcore_params(&model.lambda, model.variant, model.alpha)?;
            let sampler = HardCoreSampler::new(&g, &params, model.eps, opts.method())?;
            let samples = draws(opts.samples, |d| sampler.draw(seed, d))?;
            Ok((
                Some(g),
                json!({"brute": sampler.is_brute(), "odd_probability": sampler.odd_probability(), "samples": samples}),
            ))
        }
    }
}

fn colorings(action: &ColoringsAction, seed: u64) -> Outcome {
    match action {
        ColoringsAction::Count(a) => {
            let g = read_graph(&a.graph)?;
            let res = coloring_count(&g, &coloring_params(a, g.n()), a.eps)?;
            Ok((Some(g), count_body(&res)))
        }
        ColoringsAction::Sample { model, opts } => {
            let g = read_graph(&model.graph)?;
            let sampler =
                ColoringSampler::new(&g, &coloring_params(model, g.n()), model.eps, opts.method())?;
            let samples = draws(opts.samples, |d| sampler.draw(seed, d))?;
            Ok((
                Some(g),
                json!({"brute": sampler.is_brute(), "samples": samples}),
            ))
        }
    }
}

fn oracle_cmd(action: &OracleAction) -> Outcome {
    let limits = OracleLimits::from_env();
    match action {
        OracleAction::Hardcore { graph, lambda } => {
            let g = read_graph(graph)?;
            let params = hardcore_params(lambda, Variant::Expander, None)?;
            let body = match &params.lambda_exact {
                Some(l) => to_value(&oracle::exact_hardcore(&g, l, &limits)?),
                None => {
                    let coeffs = oracle::hardcore_coefficients(&g, &limits)?;
                    json!({
                        "value": null,
                        "log_value": oracle::hardcore_log(&g, params.lambda, &limits)?,
                        "count": coeffs.iter().sum::<u64>(),
                        "polynomial": coeffs.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
                    })
                }
            };
            Ok((Some(g), body))
        }
        OracleAction::Potts { graph, q, beta } => {
            let g = read_graph(graph)?;
            let body = to_value(&oracle::exact_potts(&g, *q, *beta, &limits)?);
            Ok((Some(g), body))
        }
        OracleAction::Colorings { graph, q } => {
            let g = read_graph(graph)?;
            let body = to_value(&oracle::exact_colorings(&g, *q, &limits)?);
            Ok((Some(g), body))
        }
        OracleAction::Xi {
            graph,
            lambda,
            side,
        } => {
            let g = read_graph(graph)?;
            let g = if g.sides().is_some() {
                g
            } else {
                g.require_bipartition()?
            };
            let params = hardcore_params(lambda, Variant::Expander, None)?;
            if params.lambda_exact.is_none() {
                return Err(Failure::Usage("oracle xi needs a rational lambda".into()));
            }
            let side = match side {
                SideArg::Odd => Side::Odd,
                SideArg::Even => Side::Even,
            };
            let index = hc_index(&g, side, &params)?;
            let sets: Vec<_> = index
                .polymers()
                .iter()
                .map(|p| p.vertices.clone())
                .collect();
            let weights = index
                .exact_weights()
                .ok_or_else(|| Failure::Usage("index lacks exact weights".into()))?;
            let masks = oracle::incompatibility_masks(&g, 2, &sets)?;
            let xi = oracle::exact_xi(&weights, &masks, &limits)?;
            let log_value = num_traits::ToPrimitive::to_f64(&xi).map(f64::ln);
            Ok((
                Some(g),
                json!({"value": xi.to_string(), "log_value": log_value, "count": sets.len()}),
            ))
        }
    }
}

fn kp_run(args: &KpArgs) -> Result<(Graph, ApproxResult), Failure> {
    let g = read_graph(&args.graph)?;
    let need = |name: &str| Failure::Usage(format!("--{name} is required for this model"));
    let res = match args.model {
        Model::Potts => {
            let mut p = PottsParams::new(
                args.q.ok_or_else(|| need("q"))?,
                args.beta.ok_or_else(|| need("beta"))?,
            );
            if let Some(a) = args.alpha {
                p = p.with_alpha(a);
            }
            potts_count(&g, &p, args.eps)?
        }
        Model::Hardcore => {
            let lambda = args.lambda.as_deref().ok_or_else(|| need("lambda"))?;
            hc_count(
                &g,
                &hardcore_params(lambda, args.variant, args.alpha)?,
                args.eps,
            )?
        }
        Model::Colorings => {
            let c = ColoringsArgs {
                graph: args.graph.clone(),
                q: args.q.ok_or_else(|| need("q"))?,
                eps: args.eps,
                c: None,
                override_caps: args.override_caps,
            };
            coloring_count(&g, &coloring_params(&c, g.n()), args.eps)?
        }
    };
    Ok((g, res))
}

fn kp(args: &KpArgs) -> Outcome {
    let (g, res) = kp_run(args)?;
    let branches: Vec<Value> = res
        .branches
        .iter()
        .map(|b: &BranchReport| {
            json!({"label": b.label, "polymer_count": b.polymer_count, "size_cap": b.size_cap, "kp": to_value(&b.kp)})
        })
        .collect();
    Ok((
        Some(g),
        json!({
            "method": res.method,
            "kp_status": res.kp_status,
            "analytic_kp": res.analytic_kp,
            "binding_threshold": res.binding_threshold,
            "branches": branches,
            "warnings": res.warnings,
        }),
    ))
}

fn tally<K: Hash + Eq>(keys: impl Iterator<Item = K>) -> HashMap<K, u64> {
    let mut counts = HashMap::new();
    for k in keys {
        *counts.entry(k).or_default() += 1;
    }
    counts
}

fn sample_suite(args: &SuiteArgs, seed: u64) -> Outcome {
    let k = &args.kp;
    let g = read_graph(&k.graph)?;
    let limits = OracleLimits::from_env();
    let method = if args.exact_xi {
        XiMethod::Exact
    } else {
        XiMethod::Truncated
    };
    let need = |name: &str| Failure::Usage(format!("--{name} is required for this model"));
    let n = args.samples;
    let (tv, support) = match k.model {
        Model::Hardcore => {
            let params = hardcore_params(
                k.lambda.as_deref().ok_or_else(|| need("lambda"))?,
                k.variant,
                k.alpha,
            )?;
            let s = HardCoreSampler::new(&g, &params, k.eps, method)?;
            let draws = (0..n)
                .map(|d| s.sample(seed, d))
                .collect::<polymer_expansion::Result<Vec<_>>>()?;
            let mu = oracle::hardcore_measure(&g, params.lambda, &limits)?;
            (
                oracle::total_variation(&mu, &tally(draws.into_iter()), n),
                mu.len(),
            )
        }
        Model::Potts => {
            let q = k.q.ok_or_else(|| need("q"))?;
            let beta = k.beta.ok_or_else(|| need("beta"))?;
            let s = PottsSampler::new(&g, &PottsParams::new(q, beta), k.eps, method)?;
            let draws = (0..n)
                .map(|d| s.sample(seed, d))
                .collect::<polymer_expansion::Result<Vec<_>>>()?;
            let mu = oracle::potts_measure(&g, q, beta, &limits)?;
            (
                oracle::total_variation(&mu, &tally(draws.into_iter()), n),
                mu.len(),
            )
        }
        Model::Colorings => {
            let q = k.q.ok_or_else(|| need("q"))?;
            let c = ColoringsArgs {
                graph: k.graph.clone(),
                q,
                eps: k.eps,
                c: None,
                override_caps: k.override_caps,
            };
            let s = ColoringSampler::new(&g, &coloring_params(&c, g.n()), k.eps, method)?;
            let draws = (0..n)
                .map(|d| s.sample(seed, d))
                .collect::<polymer_expansion::Result<Vec<_>>>()?;
            let mu = oracle::coloring_measure(&g, q, &limits)?;
            (
                oracle::total_variation(&mu, &tally(draws.into_iter()), n),
                mu.len(),
            )
        }
    };
    let bound = k.eps + 3.0 * (support as f64 / n as f64).sqrt();
    Ok((
        Some(g),
        json!({"samples": n, "support": support, "tv": tv, "bound": bound, "within_bound": tv <= bound}),
    ))
}

fn run(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Gen(a) => gen(a, cli.seed),
        Command::Expansion(a) => expansion(a),
        Command::Potts { action } => potts(action, cli.seed),
        Command::Hardcore { action } => hardcore(action, cli.seed),
        Command::Colorings { action } => colorings(action, cli.seed),
        Command::Oracle { action } => oracle_cmd(action),
        Command::Kp(a) => kp(a),
        Command::SampleSuite(a) => sample_suite(a, cli.seed),
    }
}

fn report_value(g: Option<&Graph>, body: Value) -> Value {
    let threshold = body
        .get("binding_threshold")
        .cloned()
        .unwrap_or(Value::Null);
    json!({"graph": g.map(graph_summary), "binding_threshold": threshold, "result": body})
}

fn configure_threads(threads: usize) -> Result<(), Failure> {
    if threads == 0 {
        return Err(Failure::Usage("--threads must be at least 1".into()));
    }
    #[cfg(feature = "parallel")]
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| Failure::Usage(e.to_string()))?;
    Ok(())
}

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) => {
            if !e.use_stderr() {
                print!("{e}");
                return ExitCode::SUCCESS;
            }
            let msg = e.to_string();
            let first = msg
                .lines()
                .next()
                .unwrap_or("invalid usage")
                .trim_start_matches("error: ");
            eprintln!("error[usage]: {first}");
            return ExitCode::from(1);
        }
    };
    let start = Instant::now();
    let outcome = configure_threads(cli.threads).and_then(|()| run(&cli));
    let wrap = |mut v: Value| {
        v["schema"] = json!(SCHEMA);
        v["command"] = json!(argv[1..]);
        v["seed"] = json!(cli.seed);
        v["threads"] = json!(cli.threads);
        v["timings"] = json!({"total_ms": start.elapsed().as_secs_f64() * 1e3});
        v
    };
    match outcome {
        Ok((g, body)) => {
            println!("{}", wrap(report_value(g.as_ref(), body)));
            ExitCode::SUCCESS
        }
        Err(Failure::NotCertified(v)) => {
            println!("{}", wrap(v));
            eprintln!("not certified");
            ExitCode::from(2)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error[usage]: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Lib(e)) => {
            eprintln!("error[{}]: {e}", e.code());
            ExitCode::from(1)
        }
    }
}
