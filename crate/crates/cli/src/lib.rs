//! The `branched` command: sample polymers, compute `mu(G)`, run the
//! verification suites.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use branched_core::invariants::{
    mu_bipartite, mu_safe_trees, mu_subgraph_sum, tutte_mu, MAX_SUBGRAPH_EDGES,
};
use branched_core::io::{polymer2d_to_csv, polymer2d_to_json, polymer3d_to_csv, polymer3d_to_json};
use branched_core::render::{render_polymer_2d, render_polymer_3d, RenderOptions};
use branched_core::rng::seeded;
use branched_core::sampler2d::sample_gpolymer;
use branched_core::verification::{run_suite, Suite, SuiteOptions};
use branched_core::{sample_polymer_2d, sample_polymer_3d, BetaWeights, EdgeOrder, WeightedGraph};
use clap::{Args, Parser, Subcommand};
use rand::Rng;

/// Environment variable capping the worker threads of parallel runs.
pub const THREADS_ENV: &str = "POLYMER_THREADS";

#[derive(Debug, Parser)]
#[command(
    name = "branched",
    version,
    about = "Exact uniform sampling of branched polymers"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Sample a planar polymer of disks, or a G-polymer from a graph file.
    Sample2d(Sample2dArgs),
    /// Sample a polymer of unit-diameter spheres (or spheroids).
    Sample3d(Sample3dArgs),
    /// Compute mu(G) for a family (`Kn:5`, `Cn:7`, `Kmn:3,4`, `Pn:4`) or an edge-list file.
    Mu(MuArgs),
    /// Run a verification suite; exits nonzero if any check fails.
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    /// Seed; a fresh one is generated and printed when omitted.
    #[arg(long)]
    pub seed: Option<u64>,
    /// JSON output file (default: stdout).
    #[arg(long, short)]
    pub out: Option<PathBuf>,
    /// Also write an SVG figure, next to the JSON unless a path is given.
    #[arg(long, num_args = 0..=1, value_name = "PATH")]
    pub svg: Option<Option<PathBuf>>,
    /// Also write a CSV table, next to the JSON unless a path is given.
    #[arg(long, num_args = 0..=1, value_name = "PATH")]
    pub csv: Option<Option<PathBuf>>,
}

#[derive(Debug, Args)]
pub struct Sample2dArgs {
    /// Number of disks (ignored with --radii or --graph).
    #[arg(long)]
    pub n: Option<usize>,
    /// Comma-separated radii, one per disk.
    #[arg(long, value_delimiter = ',', conflicts_with = "graph")]
    pub radii: Option<Vec<f64>>,
    /// Common radius for --n disks.
    #[arg(long, default_value_t = 1.0)]
    pub radius: f64,
    /// Edge-list file `i j [r_ij] [beta_ij]` (1-indexed) for a G-polymer.
    #[arg(long)]
    pub graph: Option<PathBuf>,
    /// Insertion order for --graph, comma-separated 1-indexed labels.
    #[arg(long, value_delimiter = ',', requires = "graph")]
    pub order: Option<Vec<usize>>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct Sample3dArgs {
    /// Number of spheres.
    #[arg(long)]
    pub n: usize,
    /// Per-sphere yz-axis scales (beta_ij = 1 / (a_i a_j)), comma-separated.
    #[arg(long, value_delimiter = ',', conflicts_with = "beta_matrix")]
    pub axes: Option<Vec<f64>>,
    /// File with a whitespace-separated symmetric n x n matrix of beta_ij.
    #[arg(long)]
    pub beta_matrix: Option<PathBuf>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct MuArgs {
    /// Family spec or path to an edge-list file.
    pub graph: String,
    /// Print the result as JSON.
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// One of walk, accept2d, acceptg, accept3d, exactness, projection,
    /// diameter, limit, types, invariants, all.
    pub suite: String,
    /// Test this single size instead of the suite's default sizes.
    #[arg(long)]
    pub n: Option<usize>,
    /// Trials or samples per check (overrides the suite default).
    #[arg(long)]
    pub trials: Option<u64>,
    /// Seed; a fresh one is generated and printed when omitted.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Reduced trial counts.
    #[arg(long)]
    pub quick: bool,
    /// Write the full reports as JSON to this file.
    #[arg(long)]
    pub json: Option<PathBuf>,
}

pub fn run(cli: Cli) -> Result<ExitCode> {
    configure_threads()?;
    match cli.command {
        Command::Sample2d(args) => cmd_sample2d(&args).map(|_| ExitCode::SUCCESS),
        Command::Sample3d(args) => cmd_sample3d(&args).map(|_| ExitCode::SUCCESS),
        Command::Mu(args) => cmd_mu(&args).map(|_| ExitCode::SUCCESS),
        Command::Verify(args) => cmd_verify(&args),
    }
}

fn configure_threads() -> Result<()> {
    let Ok(value) = std::env::var(THREADS_ENV) else {
        return Ok(());
    };
    let threads: usize = value
        .trim()
        .parse()
        .with_context(|| format!("{THREADS_ENV}={value:?} is not a count"))?;
    if threads == 0 {
        bail!("{THREADS_ENV} must be at least 1");
    }
    // A second call in the same process (tests) finds the pool already built.
    let _ = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global();
    Ok(())
}

fn resolve_seed(seed: Option<u64>) -> u64 {
    seed.unwrap_or_else(|| {
        let s = rand::rng().random();
        eprintln!("seed: {s}");
        s
    })
}

/// Print to stdout; a closed pipe (`| head`) is not an error.
fn print_stdout(text: &str) -> Result<()> {
    use std::io::Write;
    let mut out = std::io::stdout().lock();
    match writeln!(out, "{text}").and_then(|_| out.flush()) {
        Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(e.into()),
        _ => Ok(()),
    }
}

fn sibling(out: Option<&Path>, seed: u64, ext: &str) -> PathBuf {
    match out {
        Some(p) => p.with_extension(ext),
        None => PathBuf::from(format!("polymer-{seed}.{ext}")),
    }
}

fn write_outputs(
    output: &OutputArgs,
    seed: u64,
    json: &str,
    svg: impl FnOnce() -> String,
    csv: impl FnOnce() -> String,
) -> Result<()> {
    match &output.out {
        Some(p) => fs::write(p, json).with_context(|| format!("writing {}", p.display()))?,
        None => print_stdout(json)?,
    }
    if let Some(path) = &output.svg {
        let p = path
            .clone()
            .unwrap_or_else(|| sibling(output.out.as_deref(), seed, "svg"));
        fs::write(&p, svg()).with_context(|| format!("writing {}", p.display()))?;
        eprintln!("wrote {}", p.display());
    }
    if let Some(path) = &output.csv {
        let p = path
            .clone()
            .unwrap_or_else(|| sibling(output.out.as_deref(), seed, "csv"));
        fs::write(&p, csv()).with_context(|| format!("writing {}", p.display()))?;
        eprintln!("wrote {}", p.display());
    }
    Ok(())
}

pub fn cmd_sample2d(args: &Sample2dArgs) -> Result<()> {
    let seed = resolve_seed(args.output.seed);
    let mut rng = seeded(seed);
    let polymer = if let Some(path) = &args.graph {
        let text =
            fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        let graph = WeightedGraph::parse_edge_list(&text)
            .with_context(|| format!("parsing {}", path.display()))?;
        let order: Vec<usize> = match &args.order {
            Some(o) => o
                .iter()
                .map(|&v| v.checked_sub(1).context("labels start at 1"))
                .collect::<Result<_>>()?,
            None => (0..graph.n()).collect(),
        };
        sample_gpolymer(&graph, &order, &mut rng)?
    } else {
        let radii = match (&args.radii, args.n) {
            (Some(r), _) => r.clone(),
            (None, Some(n)) => vec![args.radius; n],
            (None, None) => bail!("give --n, --radii or --graph"),
        };
        sample_polymer_2d(&radii, &mut rng)?
    };
    let json = polymer2d_to_json(&polymer, Some(seed))?;
    write_outputs(
        &args.output,
        seed,
        &json,
        || render_polymer_2d(&polymer, &RenderOptions::default()),
        || polymer2d_to_csv(&polymer),
    )
}

fn read_matrix(path: &Path, n: usize) -> Result<Vec<Vec<f64>>> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let rows: Vec<Vec<f64>> = text
        .lines()
        .filter(|l| !l.trim().is_empty())
        .map(|l| {
            l.split_whitespace()
                .map(|v| {
                    v.parse::<f64>()
                        .with_context(|| format!("bad number {v:?}"))
                })
                .collect()
        })
        .collect::<Result<_>>()?;
    if rows.len() != n || rows.iter().any(|r| r.len() != n) {
        bail!("{} must hold a {n} x {n} matrix", path.display());
    }
    Ok(rows)
}

pub fn cmd_sample3d(args: &Sample3dArgs) -> Result<()> {
    let seed = resolve_seed(args.output.seed);
    let beta = match (&args.axes, &args.beta_matrix) {
        (Some(a), _) => BetaWeights::PerLabelAxes(a.clone()),
        (None, Some(p)) => BetaWeights::PerPair(read_matrix(p, args.n)?),
        (None, None) => BetaWeights::Uniform,
    };
    let polymer = sample_polymer_3d(args.n, &beta, &mut seeded(seed))?;
    let json = polymer3d_to_json(&polymer, Some(seed))?;
    write_outputs(
        &args.output,
        seed,
        &json,
        || render_polymer_3d(&polymer, &RenderOptions::default()),
        || polymer3d_to_csv(&polymer),
    )
}

/// A parsed `mu` argument.
#[derive(Clone, Debug, PartialEq)]
pub enum GraphSpec {
    Complete(usize),
    Cycle(usize),
    Path(usize),
    Bipartite(usize, usize),
    File(PathBuf),
}

impl GraphSpec {
    pub fn parse(s: &str) -> Result<Self> {
        let num = |v: &str| {
            v.trim()
                .parse::<usize>()
                .with_context(|| format!("bad size {v:?} in {s:?}"))
        };
        Ok(match s.split_once(':') {
            Some(("Kn", v)) => GraphSpec::Complete(num(v)?),
            Some(("Cn", v)) => {
                let m = num(v)?;
                if m < 3 {
                    bail!("a cycle needs at least 3 vertices");
                }
                GraphSpec::Cycle(m)
            }
            Some(("Pn", v)) => GraphSpec::Path(num(v)?),
            Some(("Kmn", v)) => {
                let (a, b) = v
                    .split_once(',')
                    .with_context(|| format!("expected Kmn:m,n, got {s:?}"))?;
                GraphSpec::Bipartite(num(a)?, num(b)?)
            }
            Some((family, _)) if !Path::new(s).exists() => {
                bail!("unknown family {family:?}; use Kn, Cn, Pn or Kmn")
            }
            _ => GraphSpec::File(PathBuf::from(s)),
        })
    }

    pub fn name(&self) -> String {
        match self {
            GraphSpec::Complete(n) => format!("K_{n}"),
            GraphSpec::Cycle(n) => format!("C_{n}"),
            GraphSpec::Path(n) => format!("P_{n}"),
            GraphSpec::Bipartite(m, n) => format!("K_{{{m},{n}}}"),
            GraphSpec::File(p) => p.display().to_string(),
        }
    }

    pub fn graph(&self) -> Result<WeightedGraph> {
        Ok(match self {
            GraphSpec::Complete(n) => WeightedGraph::complete(*n, 1.0),
            GraphSpec::Cycle(n) => WeightedGraph::cycle(*n, 1.0),
            GraphSpec::Path(n) => WeightedGraph::path(*n, 1.0),
            GraphSpec::Bipartite(m, n) => WeightedGraph::complete_bipartite(*m, *n, 1.0),
            GraphSpec::File(p) => {
                let text =
                    fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?;
                WeightedGraph::parse_edge_list(&text)
                    .with_context(|| format!("parsing {}", p.display()))?
            }
        })
    }
}

/// `mu` by every applicable method, as `(method, value or reason skipped)`.
pub fn mu_report(spec: &GraphSpec) -> Result<Vec<(String, Result<u64, String>)>> {
    let g = spec.graph()?;
    let mut rows = vec![
        (
            "safe-trees".to_string(),
            mu_safe_trees(&g, &EdgeOrder::identity(g.edge_count())).map(|m| m.value),
        ),
        ("tutte".to_string(), tutte_mu(&g).map(|m| m.value)),
    ];
    if g.edge_count() <= MAX_SUBGRAPH_EDGES {
        rows.push((
            "subgraph-sum".to_string(),
            mu_subgraph_sum(&g).map(|m| m.value),
        ));
    }
    if let GraphSpec::Bipartite(m, n) = spec {
        rows.push(("bipartite-series".to_string(), mu_bipartite(*m, *n)));
    }
    Ok(rows
        .into_iter()
        .map(|(k, v)| (k, v.map_err(|e| e.to_string())))
        .collect())
}

pub fn cmd_mu(args: &MuArgs) -> Result<()> {
    let spec = GraphSpec::parse(&args.graph)?;
    let rows = mu_report(&spec)?;
    let values: Vec<u64> = rows
        .iter()
        .filter_map(|(_, v)| v.as_ref().ok().copied())
        .collect();
    let Some(&mu) = values.first() else {
        bail!(
            "no method could evaluate mu: {}",
            rows.iter()
                .map(|(k, v)| format!("{k}: {v:?}"))
                .collect::<Vec<_>>()
                .join("; ")
        );
    };
    let agree = values.iter().all(|&v| v == mu);
    if args.json {
        let methods: serde_json::Map<String, serde_json::Value> = rows
            .iter()
            .map(|(k, v)| {
                (
                    k.clone(),
                    v.as_ref().map_or_else(
                        |e| serde_json::json!({ "error": e }),
                        |x| serde_json::json!(x),
                    ),
                )
            })
            .collect();
        println!(
            "{}",
            serde_json::json!({ "graph": spec.name(), "mu": mu, "agree": agree, "methods": methods })
        );
    } else {
        println!("{mu}");
        eprintln!("mu({}):", spec.name());
        for (k, v) in &rows {
            match v {
                Ok(x) => eprintln!("  {k:<17}{x}"),
                Err(e) => eprintln!("  {k:<17}failed: {e}"),
            }
        }
    }
    if !agree {
        bail!("methods disagree");
    }
    Ok(())
}

pub fn cmd_verify(args: &VerifyArgs) -> Result<ExitCode> {
    let suite: Suite = args.suite.parse()?;
    let seed = resolve_seed(args.seed);
    let opts = SuiteOptions {
        n: args.n,
        trials: args.trials,
        seed,
        quick: args.quick,
    };
    let outcomes = run_suite(suite, &opts)?;
    for o in &outcomes {
        println!(
            "{} [{}] {}: {}",
            if o.passed { "PASS" } else { "FAIL" },
            o.suite,
            o.name,
            o.summary
        );
    }
    let failed = outcomes.iter().filter(|o| !o.passed).count();
    println!("{} checks, {failed} failed (seed {seed})", outcomes.len());
    if let Some(path) = &args.json {
        let doc = serde_json::json!({ "suite": suite.name(), "seed": seed, "quick": args.quick, "checks": outcomes });
        fs::write(path, serde_json::to_string_pretty(&doc)?)
            .with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    })
}
